//! Seeded generators of random groups, systems and dual pairs.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::group::{inverse_dft, FiniteAbelianGroup, GroupFunction, Subgroup};
use crate::oracle;
use crate::rational::{self, Rational};
use crate::system::{GaborSystem, Generator, GtiSystem, Layer};

/// Random group of order at most `max_order` (counting measure or a small rational weight).
pub fn group<R: Rng>(rng: &mut R, max_order: usize) -> FiniteAbelianGroup {
    loop {
        let k = rng.gen_range(1..=3);
        let mut factors = Vec::with_capacity(k);
        let mut order = 1usize;
        for _ in 0..k {
            let room = max_order / order;
            if room < 2 {
                break;
            }
            let d = rng.gen_range(2..=room.min(16));
            factors.push(d as u64);
            order *= d;
        }
        if factors.is_empty() {
            continue;
        }
        let weight = if rng.gen_bool(0.75) {
            rational::int(1)
        } else {
            [
                rational::ratio(1, 2),
                rational::int(2),
                rational::ratio(3, 4),
            ]
            .choose(rng)
            .unwrap()
            .clone()
        };
        return FiniteAbelianGroup::new(&factors, weight).expect("factors are positive");
    }
}

pub fn subgroup<R: Rng>(rng: &mut R, group: &FiniteAbelianGroup) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..group.order())).collect();
    group.subgroup_from_indices(&gens)
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn function<R: Rng>(rng: &mut R, group: &FiniteAbelianGroup) -> GroupFunction {
    let values = (0..group.order()).map(|_| complex(rng)).collect();
    GroupFunction::new(group.clone(), values).expect("length matches the group")
}

pub fn weight<R: Rng>(rng: &mut R) -> Rational {
    [
        rational::int(1),
        rational::ratio(1, 2),
        rational::int(2),
        rational::ratio(1, 3),
    ]
    .choose(rng)
    .unwrap()
    .clone()
}

/// Random weights for `count` generators.
fn weights<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    (0..count).map(|_| weight(rng)).collect()
}

/// Generic system: up to `max_layers` layers, up to `max_gens` random generators each.
pub fn system<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    max_layers: usize,
    max_gens: usize,
) -> GtiSystem {
    let nl = rng.gen_range(1..=max_layers);
    let layers = (0..nl)
        .map(|_| {
            let gamma = subgroup(rng, group);
            let ng = rng.gen_range(1..=max_gens);
            let gens = (0..ng)
                .map(|_| Generator::new(function(rng, group), weight(rng)).unwrap())
                .collect();
            Layer::new(gamma, gens).unwrap()
        })
        .collect();
    GtiSystem::new(group.clone(), layers).unwrap()
}

/// Same layers and weights as `sys`, fresh random generators.
pub fn partner<R: Rng>(rng: &mut R, sys: &GtiSystem) -> GtiSystem {
    sys.map_generators_mut(|f| function(rng, f.group()))
}

/// Fourier-side layout of a "painless" system: per layer, transforms supported on
/// a transversal of `Ghat / Gamma_j^perp`, plus a final layer with `Gamma = G` whose
/// transforms have modulus at least 1/2 everywhere.
struct Painless {
    group: FiniteAbelianGroup,
    layers: Vec<PainlessLayer>,
}

/// Subgroup plus weighted Fourier-side generator values.
type PainlessLayer = (Subgroup, Vec<(Rational, Vec<Complex64>)>);

fn painless<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    max_layers: usize,
    max_gens: usize,
) -> Painless {
    let dual = group.dual();
    let mut layers = Vec::new();
    let extra = rng.gen_range(0..max_layers.max(1));
    for _ in 0..extra {
        let gamma = subgroup(rng, group);
        let perp = gamma.annihilator();
        let labels = perp.coset_labels();
        let ng = rng.gen_range(1..=max_gens);
        let gens = (0..ng)
            .map(|_| {
                let mut chosen = vec![usize::MAX; perp.index()];
                let mut order: Vec<usize> = (0..dual.order()).collect();
                order.shuffle(rng);
                for w in order {
                    if chosen[labels[w]] == usize::MAX && rng.gen_bool(0.7) {
                        chosen[labels[w]] = w;
                    }
                }
                let mut hat = vec![Complex64::new(0.0, 0.0); dual.order()];
                for &w in chosen.iter().filter(|&&w| w != usize::MAX) {
                    hat[w] = complex(rng);
                }
                (weight(rng), hat)
            })
            .collect();
        layers.push((gamma, gens));
    }
    let ng = rng.gen_range(1..=max_gens);
    let gens = (0..ng)
        .map(|p| {
            let hat = (0..dual.order())
                .map(|_| {
                    let r = if p == 0 {
                        rng.gen_range(0.5..1.5)
                    } else {
                        rng.gen_range(0.0..1.0)
                    };
                    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect();
            (weights(rng, 1).pop().unwrap(), hat)
        })
        .collect();
    layers.push((group.whole(), gens));
    layers.shuffle(rng);
    Painless {
        group: group.clone(),
        layers,
    }
}

impl Painless {
    fn calderon(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.group.order()];
        for (_, gens) in &self.layers {
            for (w, hat) in gens {
                let wp = rational::to_f64(w);
                for (ci, v) in c.iter_mut().zip(hat) {
                    *ci += wp * v.norm_sqr();
                }
            }
        }
        c
    }

    fn build(&self, transform: impl Fn(&[Complex64]) -> Vec<Complex64>) -> GtiSystem {
        let dual = self.group.dual();
        let layers = self
            .layers
            .iter()
            .map(|(gamma, gens)| {
                let gens = gens
                    .iter()
                    .map(|(w, hat)| {
                        let f = GroupFunction::new(dual.clone(), transform(hat)).unwrap();
                        Generator::new(inverse_dft(&f), w.clone()).unwrap()
                    })
                    .collect();
                Layer::new(gamma.clone(), gens).unwrap()
            })
            .collect();
        GtiSystem::new(self.group.clone(), layers).unwrap()
    }
}

/// Dual pair `(g, h)` with `h^ = g^ / C`, `C` the Calderon sum of `g`.
pub fn painless_dual_pair<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    max_layers: usize,
    max_gens: usize,
) -> (GtiSystem, GtiSystem) {
    let p = painless(rng, group, max_layers, max_gens);
    let c = p.calderon();
    let g = p.build(|h| h.to_vec());
    let h = p.build(|h| h.iter().zip(&c).map(|(v, ci)| v / ci).collect());
    (g, h)
}

/// Parseval system with transforms `g^ / sqrt(C)`.
pub fn painless_parseval<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    max_layers: usize,
    max_gens: usize,
) -> GtiSystem {
    let p = painless(rng, group, max_layers, max_gens);
    let c = p.calderon();
    p.build(|h| h.iter().zip(&c).map(|(v, ci)| v / ci.sqrt()).collect())
}

fn apply(m: &DMatrix<Complex64>, f: &GroupFunction) -> GroupFunction {
    let v = nalgebra::DVector::from_column_slice(f.values());
    GroupFunction::new(f.group().clone(), (m * v).iter().copied().collect()).unwrap()
}

/// Translation invariant system (one subgroup for all layers) and its canonical dual `S^+ g`.
pub fn ti_canonical_pair<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    max_layers: usize,
    max_gens: usize,
) -> Result<(GtiSystem, GtiSystem)> {
    let gamma = subgroup(rng, group);
    let nl = rng.gen_range(1..=max_layers);
    let layers = (0..nl)
        .map(|_| {
            let ng = rng.gen_range(1..=max_gens);
            let gens = (0..ng)
                .map(|_| Generator::new(function(rng, group), weight(rng)).unwrap())
                .collect();
            Layer::new(gamma.clone(), gens).unwrap()
        })
        .collect();
    let sys = GtiSystem::new(group.clone(), layers)?;
    let s = oracle::frame_operator(&sys, &sys)?;
    let pinv = oracle::hermitian_pseudo_inverse(&s, 1e-10);
    let dual = sys.map_generators(|g| apply(&pinv, g));
    Ok((sys, dual))
}

/// Adds `eps` times a random function to one generator of `sys`.
pub fn perturb<R: Rng>(rng: &mut R, sys: &GtiSystem, eps: f64) -> GtiSystem {
    let total = sys.generator_count();
    if total == 0 {
        return sys.clone();
    }
    let target = rng.gen_range(0..total);
    let noise = function(rng, sys.group()).scaled(Complex64::new(eps, 0.0));
    let counter = std::cell::Cell::new(0usize);
    sys.map_generators(|g| {
        let i = counter.get();
        counter.set(i + 1);
        if i == target {
            g.add(&noise).unwrap()
        } else {
            g.clone()
        }
    })
}

/// Random Gabor system whose synthesis window is the canonical dual `S^+ g`.
pub fn gabor_canonical<R: Rng>(rng: &mut R, group: &FiniteAbelianGroup) -> Result<GaborSystem> {
    let lambda = subgroup(rng, group);
    let gamma = subgroup(rng, &group.dual());
    let g = function(rng, group);
    let sys = GaborSystem::new(group.clone(), lambda, gamma, g.clone(), None)?;
    let s = oracle::frame_operator_gabor(&sys)?;
    let pinv = oracle::hermitian_pseudo_inverse(&s, 1e-10);
    sys.with_h(apply(&pinv, &g))
}

/// Random window pair on `C^d` with `h` the canonical dual of `g` for lattice `(a, b)`.
pub fn finite_gabor_pair<R: Rng>(
    rng: &mut R,
    d: usize,
    a: usize,
    b: usize,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let g: Vec<Complex64> = (0..d).map(|_| complex(rng)).collect();
    let h = oracle::finite_gabor_canonical_dual(&g, a, b)?;
    Ok((g, h))
}
