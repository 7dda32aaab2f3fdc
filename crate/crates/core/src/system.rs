//! GTI and Gabor systems on finite groups.

use num::complex::Complex64;
use num::Signed;

use crate::error::{GtiError, Result};
use crate::group::{dft, FiniteAbelianGroup, GroupElement, GroupFunction, Subgroup};
use crate::rational::{self, Rational};

/// `(T_a f)(x) = f(x - a)`.
pub fn translate(f: &GroupFunction, a: &GroupElement) -> Result<GroupFunction> {
    Ok(f.translated(f.group().index_of(a)?))
}

/// `(E_chi f)(x) = chi(x) f(x)`.
pub fn modulate(f: &GroupFunction, chi: &GroupElement) -> Result<GroupFunction> {
    Ok(f.modulated(f.group().index_of(chi)?))
}

/// Generator `g_p` with its point mass `w_p` in `mu_{P_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub function: GroupFunction,
    pub weight: Rational,
}

impl Generator {
    pub fn new(function: GroupFunction, weight: Rational) -> Result<Self> {
        if !weight.is_positive() {
            return Err(GtiError::invalid("generator weights must be positive"));
        }
        Ok(Generator { function, weight })
    }

    pub fn unit(function: GroupFunction) -> Self {
        Generator {
            function,
            weight: rational::int(1),
        }
    }

    pub fn weight_f64(&self) -> f64 {
        rational::to_f64(&self.weight)
    }
}

/// Translation subgroup `Gamma_j` with its generators.
#[derive(Clone, Debug)]
pub struct Layer {
    gamma: Subgroup,
    perp: Subgroup,
    generators: Vec<Generator>,
}

impl Layer {
    pub fn new(gamma: Subgroup, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.function.group() != gamma.parent() {
                return Err(GtiError::shape(
                    "generator does not live on the layer's group",
                ));
            }
        }
        let perp = gamma.annihilator();
        Ok(Layer {
            gamma,
            perp,
            generators,
        })
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    /// `Gamma_j^perp` with counting measure.
    pub fn perp(&self) -> &Subgroup {
        &self.perp
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `s(Gamma_j) = w_G [G : Gamma_j]`.
    pub fn lattice_size(&self) -> Rational {
        self.gamma.lattice_size()
    }
}

/// `union_j { T_gamma g_p : gamma in Gamma_j, p in P_j }`.
#[derive(Clone, Debug)]
pub struct GtiSystem {
    group: FiniteAbelianGroup,
    layers: Vec<Layer>,
}

impl GtiSystem {
    pub fn new(group: FiniteAbelianGroup, layers: Vec<Layer>) -> Result<Self> {
        for l in &layers {
            if l.gamma.parent() != &group {
                return Err(GtiError::shape("layer subgroup lives on a different group"));
            }
        }
        Ok(GtiSystem { group, layers })
    }

    pub fn empty(group: FiniteAbelianGroup) -> Self {
        GtiSystem {
            group,
            layers: Vec::new(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn generator_count(&self) -> usize {
        self.layers.iter().map(|l| l.generators.len()).sum()
    }

    /// Multiplies every generator by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        self.map_generators(|g| g.scaled(c))
    }

    /// Applies `f` to every generator function, keeping weights and layers.
    pub fn map_generators(&self, f: impl Fn(&GroupFunction) -> GroupFunction) -> Self {
        self.map_generators_mut(f)
    }

    /// Like [`GtiSystem::map_generators`], visiting generators in layer order.
    pub fn map_generators_mut(&self, mut f: impl FnMut(&GroupFunction) -> GroupFunction) -> Self {
        let layers = self
            .layers
            .iter()
            .map(|l| Layer {
                gamma: l.gamma.clone(),
                perp: l.perp.clone(),
                generators: l
                    .generators
                    .iter()
                    .map(|g| Generator {
                        function: f(&g.function),
                        weight: g.weight.clone(),
                    })
                    .collect(),
            })
            .collect();
        GtiSystem {
            group: self.group.clone(),
            layers,
        }
    }

    /// Concatenates the layers of two systems on the same group.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(GtiError::shape("systems live on different groups"));
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Ok(GtiSystem {
            group: self.group.clone(),
            layers,
        })
    }

    /// Checks that `other` can serve as the synthesis system of a dual pair:
    /// same group, same `Gamma_j` and the same generator weights per layer.
    pub fn check_pairable(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(GtiError::shape("systems live on different groups"));
        }
        if self.layers.len() != other.layers.len() {
            return Err(GtiError::shape(format!(
                "layer counts differ ({} vs {})",
                self.layers.len(),
                other.layers.len()
            )));
        }
        for (j, (a, b)) in self.layers.iter().zip(&other.layers).enumerate() {
            if a.gamma != b.gamma {
                return Err(GtiError::shape(format!(
                    "translation subgroups differ in layer {j}"
                )));
            }
            if a.generators.len() != b.generators.len() {
                return Err(GtiError::shape(format!(
                    "generator counts differ in layer {j}"
                )));
            }
            if a.generators
                .iter()
                .zip(&b.generators)
                .any(|(x, y)| x.weight != y.weight)
            {
                return Err(GtiError::shape(format!(
                    "generator weights differ in layer {j}"
                )));
            }
        }
        Ok(())
    }

    /// Fourier transforms of all generators, `[layer][generator]`.
    pub fn fourier(&self) -> Vec<Vec<GroupFunction>> {
        self.layers
            .iter()
            .map(|l| l.generators.iter().map(|g| dft(&g.function)).collect())
            .collect()
    }

    /// Sorted union of the annihilators `Gamma_j^perp`, as dual indices; always contains 0.
    pub fn alpha_union(&self) -> Vec<usize> {
        let mut member = vec![false; self.group.order()];
        member[0] = true;
        for l in &self.layers {
            for &a in l.perp.elements() {
                member[a] = true;
            }
        }
        (0..self.group.order()).filter(|&a| member[a]).collect()
    }
}

/// Gabor system `{E_gamma T_lambda g}` with `Lambda` in `G` and `Gamma` in the dual.
#[derive(Clone, Debug)]
pub struct GaborSystem {
    group: FiniteAbelianGroup,
    lambda: Subgroup,
    gamma: Subgroup,
    g: GroupFunction,
    h: Option<GroupFunction>,
}

/// Which unitary image of a Gabor system to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Translations along `Lambda`, generators `E_gamma g`.
    Time,
    /// Fourier side: translations along `Gamma` in the dual, generators `E_{-lambda} g^`.
    Frequency,
}

impl GaborSystem {
    pub fn new(
        group: FiniteAbelianGroup,
        lambda: Subgroup,
        gamma: Subgroup,
        g: GroupFunction,
        h: Option<GroupFunction>,
    ) -> Result<Self> {
        if lambda.parent() != &group {
            return Err(GtiError::shape("Lambda must be a subgroup of G"));
        }
        if gamma.parent() != &group.dual() {
            return Err(GtiError::shape(
                "Gamma must be a subgroup of the dual group",
            ));
        }
        if g.group() != &group || h.as_ref().is_some_and(|h| h.group() != &group) {
            return Err(GtiError::shape("windows must live on G"));
        }
        Ok(GaborSystem {
            group,
            lambda,
            gamma,
            g,
            h,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn lambda(&self) -> &Subgroup {
        &self.lambda
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    pub fn g(&self) -> &GroupFunction {
        &self.g
    }

    /// Synthesis window; defaults to `g`.
    pub fn h(&self) -> &GroupFunction {
        self.h.as_ref().unwrap_or(&self.g)
    }

    pub fn with_h(&self, h: GroupFunction) -> Result<Self> {
        Self::new(
            self.group.clone(),
            self.lambda.clone(),
            self.gamma.clone(),
            self.g.clone(),
            Some(h),
        )
    }

    /// `w_Lambda = w_G [G : Lambda]`.
    pub fn lambda_weight(&self) -> Rational {
        self.lambda.lattice_size()
    }

    /// `w_Gamma = w_Ghat [Ghat : Gamma]`.
    pub fn gamma_weight(&self) -> Rational {
        self.gamma.lattice_size()
    }

    /// Raw atoms `E_gamma T_lambda g`, `E_gamma T_lambda h` with common weight `w_Lambda w_Gamma`.
    pub fn atoms(&self) -> (Vec<GroupFunction>, Vec<GroupFunction>, f64) {
        let mut ga = Vec::new();
        let mut ha = Vec::new();
        for &l in self.lambda.elements() {
            let tg = self.g.translated(l);
            let th = self.h().translated(l);
            for &c in self.gamma.elements() {
                ga.push(tg.modulated(c));
                ha.push(th.modulated(c));
            }
        }
        let w = rational::to_f64(&(self.lambda_weight() * self.gamma_weight()));
        (ga, ha, w)
    }
}

/// Unitary image of a Gabor pair as a pair of single-layer TI systems.
pub fn gabor_to_ti(sys: &GaborSystem, route: Route) -> Result<(GtiSystem, GtiSystem)> {
    match route {
        Route::Time => {
            let w = sys.gamma_weight();
            let build = |win: &GroupFunction| -> Result<GtiSystem> {
                let gens = sys
                    .gamma
                    .elements()
                    .iter()
                    .map(|&c| Generator::new(win.modulated(c), w.clone()))
                    .collect::<Result<Vec<_>>>()?;
                GtiSystem::new(
                    sys.group.clone(),
                    vec![Layer::new(sys.lambda.clone(), gens)?],
                )
            };
            Ok((build(&sys.g)?, build(sys.h())?))
        }
        Route::Frequency => {
            let dual = sys.group.dual();
            let w = sys.lambda_weight();
            let build = |win: &GroupFunction| -> Result<GtiSystem> {
                let hat = dft(win);
                let gens = sys
                    .lambda
                    .elements()
                    .iter()
                    .map(|&l| Generator::new(hat.modulated(sys.group.neg(l)), w.clone()))
                    .collect::<Result<Vec<_>>>()?;
                GtiSystem::new(dual.clone(), vec![Layer::new(sys.gamma.clone(), gens)?])
            };
            Ok((build(&sys.g)?, build(sys.h())?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_fn(g: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> GroupFunction {
        crate::random::function(rng, g)
    }

    #[test]
    fn translate_and_modulate_basics() {
        let g = FiniteAbelianGroup::cyclic_product(&[4]).unwrap();
        let d0 = GroupFunction::delta(&g, 0);
        let zero = GroupElement::new(vec![0]);
        let one = GroupElement::new(vec![1]);
        assert_eq!(translate(&d0, &zero).unwrap(), d0);
        assert_eq!(translate(&d0, &one).unwrap(), GroupFunction::delta(&g, 1));
        assert_eq!(modulate(&d0, &zero).unwrap(), d0);
        assert_eq!(modulate(&d0, &one).unwrap(), d0);
        assert!(translate(&d0, &GroupElement::new(vec![4])).is_err());
    }

    #[test]
    fn commutation_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = FiniteAbelianGroup::cyclic_product(&[2, 6]).unwrap();
        for _ in 0..20 {
            let f = random_fn(&g, &mut rng);
            let a = rng.gen_range(0..g.order());
            let chi = rng.gen_range(0..g.order());
            let lhs = f.modulated(chi).translated(a);
            let rhs = f
                .translated(a)
                .modulated(chi)
                .scaled(g.character(a, chi).conj());
            assert!(lhs.max_abs_diff(&rhs) < 1e-13);
            assert!((f.translated(a).norm() - f.norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn pairing_checks() {
        let g = FiniteAbelianGroup::cyclic_product(&[6]).unwrap();
        let f = GroupFunction::delta(&g, 0);
        let a = GtiSystem::new(
            g.clone(),
            vec![Layer::new(
                g.subgroup_from_indices(&[2]),
                vec![Generator::unit(f.clone())],
            )
            .unwrap()],
        )
        .unwrap();
        let b = GtiSystem::new(
            g.clone(),
            vec![Layer::new(
                g.subgroup_from_indices(&[3]),
                vec![Generator::unit(f.clone())],
            )
            .unwrap()],
        )
        .unwrap();
        assert!(a.check_pairable(&a).is_ok());
        assert!(a.check_pairable(&b).is_err());
        assert_eq!(a.alpha_union(), vec![0, 3]);
    }
}
