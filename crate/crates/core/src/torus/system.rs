//! Layered systems on `l^2(Z)`, described on the Fourier side (the torus).
//!
//! Layer `j` translates along `m_j Z`, so `Gamma_j^perp = (1/m_j) Z cap [0, 1)`,
//! a set of `m_j` points carrying counting measure; the torus carries Lebesgue measure.

use num::{One, Signed, Zero};
use serde::Serialize;

use super::exact::{Amp, ExactComplex};
use super::profile::{Domain, RationalStepProfile, StepFunction};
use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

/// Largest annihilator, tiling resolution or interval count enumerated point by point.
pub const MAX_ENUMERATION: u128 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum TorusGenerator {
    /// One generator pair given by its transforms.
    Explicit {
        g: RationalStepProfile,
        h: RationalStepProfile,
        weight: Rational,
    },
    /// `r` generator pairs with transforms `g 1_{[p/r, (p+1)/r)}` and `h 1_{[p/r, (p+1)/r)}`.
    Tiling {
        resolution: u128,
        g: Amp,
        h: Amp,
        weight: Rational,
    },
}

impl TorusGenerator {
    fn weight(&self) -> &Rational {
        match self {
            TorusGenerator::Explicit { weight, .. } | TorusGenerator::Tiling { weight, .. } => {
                weight
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusLayer {
    /// `m_j` with `Gamma_j = m_j Z`.
    pub step: u128,
    pub generators: Vec<TorusGenerator>,
}

impl TorusLayer {
    /// `alpha in Gamma_j^perp`, i.e. `alpha m_j` is an integer.
    pub fn contains(&self, alpha: &Rational) -> bool {
        (alpha * rational::from_u128(self.step)).is_integer()
    }
}

/// Finitely many layers plus an optional bound on everything left out.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSystem {
    layers: Vec<TorusLayer>,
    tail_bound: Option<Rational>,
}

impl TorusSystem {
    pub fn new(layers: Vec<TorusLayer>) -> Result<Self> {
        for l in &layers {
            if l.step == 0 {
                return Err(GtiError::invalid("layer step must be positive"));
            }
            for g in &l.generators {
                if !g.weight().is_positive() {
                    return Err(GtiError::invalid("generator weights must be positive"));
                }
                match g {
                    TorusGenerator::Explicit { g, h, .. } => {
                        if g.domain() != Domain::Torus || h.domain() != Domain::Torus {
                            return Err(GtiError::invalid("layer profiles must live on the torus"));
                        }
                    }
                    TorusGenerator::Tiling { resolution, .. } => {
                        if *resolution == 0 {
                            return Err(GtiError::invalid("tiling resolution must be positive"));
                        }
                    }
                }
            }
        }
        Ok(TorusSystem {
            layers,
            tail_bound: None,
        })
    }

    /// Declares that the omitted layers change any `t_alpha` by at most `bound`.
    pub fn with_tail_bound(mut self, bound: Rational) -> Self {
        self.tail_bound = Some(bound);
        self
    }

    pub fn layers(&self) -> &[TorusLayer] {
        &self.layers
    }

    pub fn tail_bound(&self) -> Option<&Rational> {
        self.tail_bound.as_ref()
    }

    /// The same analysing generators paired with themselves.
    pub fn parseval(&self) -> Self {
        let layers = self
            .layers
            .iter()
            .map(|l| TorusLayer {
                step: l.step,
                generators: l
                    .generators
                    .iter()
                    .map(|g| match g {
                        TorusGenerator::Explicit { g, weight, .. } => TorusGenerator::Explicit {
                            g: g.clone(),
                            h: g.clone(),
                            weight: weight.clone(),
                        },
                        TorusGenerator::Tiling {
                            resolution,
                            g,
                            weight,
                            ..
                        } => TorusGenerator::Tiling {
                            resolution: *resolution,
                            g: g.clone(),
                            h: g.clone(),
                            weight: weight.clone(),
                        },
                    })
                    .collect(),
            })
            .collect();
        TorusSystem {
            layers,
            tail_bound: self.tail_bound.clone(),
        }
    }

    /// The first `j` layers; the tail bound no longer applies and is dropped.
    pub fn truncated(&self, j: usize) -> Self {
        if j >= self.layers.len() {
            return self.clone();
        }
        TorusSystem {
            layers: self.layers[..j].to_vec(),
            tail_bound: None,
        }
    }
}

fn torus() -> (Rational, Rational) {
    (Rational::zero(), Rational::one())
}

fn shifted_breakpoints(p: &RationalStepProfile, alpha: &Rational) -> Vec<Rational> {
    p.breakpoints()
        .iter()
        .map(|b| rational::frac(&(b - alpha)))
        .collect()
}

fn check_enumerable(n: u128, what: &str) -> Result<()> {
    if n > MAX_ENUMERATION {
        Err(GtiError::TruncationRequired(format!(
            "{what} has {n} points; at most {MAX_ENUMERATION} are enumerated"
        )))
    } else {
        Ok(())
    }
}

fn tile_of(x: &Rational, r: u128) -> Rational {
    (rational::frac(x) * rational::from_u128(r)).floor()
}

fn tiling_breakpoints(r: u128, alpha: &Rational) -> Vec<Rational> {
    (0..r)
        .flat_map(|p| {
            let b = Rational::new((p as i64).into(), (r as i64).into());
            [b.clone(), rational::frac(&(b - alpha))]
        })
        .collect()
}

/// Pointwise evaluator with the breakpoints it needs.
struct Contribution<'a> {
    breakpoints: Vec<Rational>,
    f: Box<dyn Fn(&Rational) -> ExactComplex + 'a>,
}

/// Exact `t_alpha` on the torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusTAlpha {
    #[serde(with = "rational::serde_string")]
    pub alpha: Rational,
    pub layers_used: usize,
    pub j_max: usize,
    pub function: StepFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<String>,
}

/// `t_alpha(omega) = sum_{j: alpha in Gamma_j^perp} sum_p w_p conj(g_p(omega)) h_p(omega + alpha)`
/// as an exact step function on `[0, 1)`.
pub fn talpha_torus(sys: &TorusSystem, alpha: &Rational) -> Result<TorusTAlpha> {
    if alpha.is_negative() || alpha >= &Rational::one() {
        return Err(GtiError::invalid("alpha must lie in [0, 1)"));
    }
    let used: Vec<&TorusLayer> = sys.layers.iter().filter(|l| l.contains(alpha)).collect();
    if used.is_empty() && !sys.layers.is_empty() {
        return Err(GtiError::invalid(format!(
            "alpha = {} is not in any annihilator",
            rational::format(alpha)
        )));
    }
    let mut constant = ExactComplex::zero();
    let mut parts: Vec<Contribution> = Vec::new();
    for layer in &used {
        for gen in &layer.generators {
            match gen {
                TorusGenerator::Tiling {
                    resolution,
                    g,
                    h,
                    weight,
                } => {
                    let r = *resolution;
                    if (alpha * rational::from_u128(r)).is_integer() {
                        // omega and omega + alpha share a tile only when alpha = 0.
                        if alpha.is_zero() {
                            constant += &g.conj_mul(h).scale(weight);
                        }
                        continue;
                    }
                    check_enumerable(r, "tiling")?;
                    let value = g.conj_mul(h).scale(weight);
                    let a = alpha.clone();
                    parts.push(Contribution {
                        breakpoints: tiling_breakpoints(r, alpha),
                        f: Box::new(move |w| {
                            if tile_of(w, r) == tile_of(&(w + &a), r) {
                                value.clone()
                            } else {
                                ExactComplex::zero()
                            }
                        }),
                    });
                }
                TorusGenerator::Explicit { g, h, weight } => {
                    let mut breakpoints = g.breakpoints();
                    breakpoints.extend(shifted_breakpoints(h, alpha));
                    let a = alpha.clone();
                    parts.push(Contribution {
                        breakpoints,
                        f: Box::new(move |w| {
                            g.value_at(w).conj_mul(&h.value_at(&(w + &a))).scale(weight)
                        }),
                    });
                }
            }
        }
    }
    let (lo, hi) = torus();
    let function = StepFunction::sweep(
        &[(lo, hi)],
        parts.iter().flat_map(|c| c.breakpoints.iter().cloned()),
        |w| {
            let mut acc = constant.clone();
            for c in &parts {
                acc += &(c.f)(w);
            }
            acc
        },
    );
    Ok(TorusTAlpha {
        alpha: alpha.clone(),
        layers_used: used.len(),
        j_max: sys.layers.len(),
        function,
        tail_bound: sys.tail_bound.as_ref().map(rational::format),
    })
}

/// Subset of the torus given as half-open rational intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSet {
    intervals: Vec<(Rational, Rational)>,
}

impl TorusSet {
    pub fn whole() -> Self {
        TorusSet {
            intervals: vec![torus()],
        }
    }

    pub fn new(mut intervals: Vec<(Rational, Rational)>) -> Result<Self> {
        intervals.retain(|(a, b)| a < b);
        intervals.sort();
        for (a, b) in &intervals {
            if a.is_negative() || b > &Rational::one() {
                return Err(GtiError::invalid("K must lie in [0, 1)"));
            }
        }
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(GtiError::invalid("K intervals overlap"));
            }
        }
        if intervals.len() as u128 > MAX_ENUMERATION {
            return Err(GtiError::invalid("too many K intervals"));
        }
        Ok(TorusSet { intervals })
    }

    pub fn is_whole(&self) -> bool {
        self.measure() == Rational::one()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let x = rational::frac(x);
        self.intervals.iter().any(|(a, b)| a <= &x && &x < b)
    }

    pub fn measure(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, (a, b)| acc + (b - a))
    }

    fn breakpoints(&self, alpha: &Rational) -> Vec<Rational> {
        self.intervals
            .iter()
            .flat_map(|(a, b)| {
                [
                    a.clone(),
                    b.clone(),
                    rational::frac(&(a - alpha)),
                    rational::frac(&(b - alpha)),
                ]
            })
            .collect()
    }
}

/// Exact per-layer terms of a summability condition.
#[derive(Clone, Debug, Serialize)]
pub struct ExactSeries {
    pub condition: String,
    pub terms: Vec<ExactComplex>,
    pub partial_sums: Vec<ExactComplex>,
    pub divergence_flag: bool,
}

impl ExactSeries {
    fn from_terms(condition: &str, terms: Vec<ExactComplex>) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc = ExactComplex::zero();
        for t in &terms {
            acc += t;
            partial_sums.push(acc.clone());
        }
        let peak = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        let divergence_flag = terms.len() >= 2
            && peak > 0.0
            && terms[terms.len() - 1].norm() > crate::report::DEFAULT_DECAY_THRESHOLD * peak;
        ExactSeries {
            condition: condition.to_string(),
            terms,
            partial_sums,
            divergence_flag,
        }
    }

    pub fn total(&self) -> ExactComplex {
        self.partial_sums
            .last()
            .cloned()
            .unwrap_or_else(ExactComplex::zero)
    }
}

/// `int_K |profile|^2`, or `int_{K cap (K - alpha)} |g(w)| |h(w + alpha)|` when `h` is given.
fn integral_on(
    set: &TorusSet,
    alpha: &Rational,
    g: &RationalStepProfile,
    h: Option<&RationalStepProfile>,
) -> ExactComplex {
    let mut bps = set.breakpoints(alpha);
    bps.extend(g.breakpoints());
    if let Some(h) = h {
        bps.extend(shifted_breakpoints(h, alpha));
    }
    StepFunction::sweep(&[torus()], bps, |w| {
        let wa = w + alpha;
        if !(set.contains(w) && set.contains(&wa)) {
            return ExactComplex::zero();
        }
        match h {
            None => g.value_at(w).norm_sqr(),
            Some(h) => g.value_at(w).abs_mul(&h.value_at(&wa)),
        }
    })
    .integral()
}

fn alphas(step: u128) -> Result<Vec<Rational>> {
    check_enumerable(step, "annihilator")?;
    Ok((0..step)
        .map(|k| Rational::new((k as i64).into(), (step as i64).into()))
        .collect())
}

/// `sum_{alpha in (1/m) Z cap [0,1)} max(0, 1/r - ||alpha||)`: total self-overlap of `r` tiles.
fn tiling_overlap_sum(m: u128, r: u128) -> Rational {
    if r == 1 {
        return rational::from_u128(m);
    }
    let rr = rational::from_u128(r);
    let mm = rational::from_u128(m);
    // k ranges over |k| < m / r.
    let kmax = (mm.clone() / rr.clone()).ceil() - Rational::one();
    let inv_r = rr.recip();
    &inv_r + rational::int(2) * &kmax * &inv_r - &kmax * (&kmax + Rational::one()) / mm
}

/// LIC terms on `K`: `sum_p w_p sum_{alpha} int_{K cap (K - alpha)} |g_p|^2` per layer.
pub fn lic_torus(sys: &TorusSystem, k: &TorusSet) -> Result<ExactSeries> {
    let whole = k.is_whole();
    let mut terms = Vec::new();
    for layer in &sys.layers {
        let mut term = ExactComplex::zero();
        for gen in &layer.generators {
            match gen {
                TorusGenerator::Tiling { g, weight, .. } => {
                    // sum_p |g|^2 1_p = |g|^2 on the whole torus.
                    let meas = if whole {
                        rational::from_u128(layer.step)
                    } else {
                        alphas(layer.step)?
                            .iter()
                            .map(|a| overlap_measure(k, a))
                            .fold(Rational::zero(), |acc, x| acc + x)
                    };
                    term += &g.norm_sqr().scale(&(meas * weight));
                }
                TorusGenerator::Explicit { g, weight, .. } => {
                    let part = if whole {
                        integral_on(k, &Rational::zero(), g, None)
                            .scale(&rational::from_u128(layer.step))
                    } else {
                        let mut acc = ExactComplex::zero();
                        for a in alphas(layer.step)? {
                            acc += &integral_on(k, &a, g, None);
                        }
                        acc
                    };
                    term += &part.scale(weight);
                }
            }
        }
        terms.push(term);
    }
    Ok(ExactSeries::from_terms("lic", terms))
}

fn overlap_measure(k: &TorusSet, alpha: &Rational) -> Rational {
    StepFunction::sweep(&[torus()], k.breakpoints(alpha), |w| {
        if k.contains(w) && k.contains(&(w + alpha)) {
            ExactComplex::rational(Rational::one())
        } else {
            ExactComplex::zero()
        }
    })
    .integral()
    .rational
}

/// Dual alpha-LIC terms on `K`: `sum_p w_p sum_alpha int_{K cap (K - alpha)} |g_p(w) h_p(w + alpha)|`.
pub fn alpha_lic_torus(sys: &TorusSystem, k: &TorusSet) -> Result<ExactSeries> {
    let whole = k.is_whole();
    let mut terms = Vec::new();
    for layer in &sys.layers {
        let mut term = ExactComplex::zero();
        for gen in &layer.generators {
            match gen {
                TorusGenerator::Tiling {
                    resolution,
                    g,
                    h,
                    weight,
                } => {
                    let r = *resolution;
                    if whole {
                        let s = tiling_overlap_sum(layer.step, r) * rational::from_u128(r);
                        term += &g.abs_mul(h).scale(&(s * weight));
                    } else {
                        check_enumerable(r, "tiling")?;
                        let c = g.abs_mul(h).scale(weight);
                        for a in alphas(layer.step)? {
                            let mut bps = k.breakpoints(&a);
                            bps.extend(tiling_breakpoints(r, &a));
                            let f = StepFunction::sweep(&[torus()], bps, |w| {
                                let wa = w + &a;
                                if k.contains(w)
                                    && k.contains(&wa)
                                    && tile_of(w, r) == tile_of(&wa, r)
                                {
                                    c.clone()
                                } else {
                                    ExactComplex::zero()
                                }
                            });
                            term += &f.integral();
                        }
                    }
                }
                TorusGenerator::Explicit { g, h, weight } => {
                    let mut acc = ExactComplex::zero();
                    for a in alphas(layer.step)? {
                        acc += &integral_on(k, &a, g, Some(h));
                    }
                    term += &acc.scale(weight);
                }
            }
        }
        terms.push(term);
    }
    Ok(ExactSeries::from_terms("alpha-lic", terms))
}

/// CC estimates with exact values where possible.
#[derive(Clone, Debug, Serialize)]
pub struct TorusCcBounds {
    pub lower: ExactComplex,
    pub upper: ExactComplex,
}

/// `B = sup_w sum_j sum_p w_p sum_alpha |g(w) g(w + alpha)|`, `A = inf_w (diagonal - off-diagonal)`,
/// computed on the analysing side.
pub fn cc_torus(sys: &TorusSystem) -> Result<TorusCcBounds> {
    let mut constant = ExactComplex::zero();
    let mut diag: Vec<Contribution> = Vec::new();
    let mut off: Vec<Contribution> = Vec::new();
    for layer in &sys.layers {
        let m = layer.step;
        for gen in &layer.generators {
            match gen {
                TorusGenerator::Tiling {
                    resolution,
                    g,
                    weight,
                    ..
                } => {
                    let r = *resolution;
                    constant += &g.norm_sqr().scale(weight);
                    if m <= r {
                        // Points of one tile are closer than 1/m: no off-diagonal overlap.
                        continue;
                    }
                    check_enumerable(r, "tiling")?;
                    let c = g.norm_sqr().scale(weight);
                    for a in alphas(m)?.into_iter().skip(1) {
                        let c = c.clone();
                        off.push(Contribution {
                            breakpoints: tiling_breakpoints(r, &a),
                            f: Box::new(move |w| {
                                if tile_of(w, r) == tile_of(&(w + &a), r) {
                                    c.clone()
                                } else {
                                    ExactComplex::zero()
                                }
                            }),
                        });
                    }
                }
                TorusGenerator::Explicit { g, weight, .. } => {
                    diag.push(Contribution {
                        breakpoints: g.breakpoints(),
                        f: Box::new(move |w| g.value_at(w).norm_sqr().scale(weight)),
                    });
                    for a in alphas(m)?.into_iter().skip(1) {
                        let mut bps = g.breakpoints();
                        bps.extend(shifted_breakpoints(g, &a));
                        off.push(Contribution {
                            breakpoints: bps,
                            f: Box::new(move |w| {
                                g.value_at(w).abs_mul(&g.value_at(&(w + &a))).scale(weight)
                            }),
                        });
                    }
                }
            }
        }
    }
    let bps: Vec<Rational> = diag
        .iter()
        .chain(&off)
        .flat_map(|c| c.breakpoints.iter().cloned())
        .collect();
    let eval = |parts: &[Contribution], w: &Rational| {
        let mut acc = ExactComplex::zero();
        for c in parts {
            acc += &(c.f)(w);
        }
        acc
    };
    let upper = StepFunction::sweep(&[torus()], bps.clone(), |w| {
        let mut v = constant.clone();
        v += &eval(&diag, w);
        v += &eval(&off, w);
        v
    });
    let lower = StepFunction::sweep(&[torus()], bps, |w| {
        let mut v = constant.clone();
        v += &eval(&diag, w);
        let o = eval(&off, w);
        v.rational -= &o.rational;
        v.float -= o.float;
        v
    });
    let pick = |f: &StepFunction, max: bool| {
        f.cells
            .iter()
            .map(|c| c.value.clone())
            .reduce(|a, b| {
                let (x, y) = (a.value().re, b.value().re);
                if (max && y > x) || (!max && y < x) {
                    b
                } else {
                    a
                }
            })
            .unwrap_or_else(ExactComplex::zero)
    };
    Ok(TorusCcBounds {
        upper: pick(&upper, true),
        lower: pick(&lower, false),
    })
}

/// Residual of one `t_alpha` equation on the torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusAlphaResidual {
    #[serde(with = "rational::serde_string")]
    pub alpha: Rational,
    pub residual: f64,
    pub exact_match: bool,
}

/// All `t_alpha` equations of a finite layer list.
#[derive(Clone, Debug, Serialize)]
pub struct TorusTAlphaReport {
    pub condition: String,
    pub alphas: Vec<TorusAlphaResidual>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<String>,
}

/// Checks `t_alpha = delta_{alpha,0}` for every `alpha` in the union of the annihilators.
pub fn verify_torus_talpha(sys: &TorusSystem, tol: f64) -> Result<TorusTAlphaReport> {
    let mut all: Vec<Rational> = vec![Rational::zero()];
    for layer in &sys.layers {
        all.extend(alphas(layer.step)?);
    }
    all.sort();
    all.dedup();
    if all.len() as u128 > MAX_ENUMERATION {
        return Err(GtiError::TruncationRequired(format!(
            "{} values of alpha exceed the enumeration limit {MAX_ENUMERATION}",
            all.len()
        )));
    }
    let mut rows = Vec::with_capacity(all.len());
    for alpha in all {
        let target = if alpha.is_zero() {
            Rational::one()
        } else {
            Rational::zero()
        };
        let t = talpha_torus(sys, &alpha)?;
        rows.push(TorusAlphaResidual {
            residual: t.function.max_deviation(&target),
            exact_match: t.function.is_exactly(&target),
            alpha,
        });
    }
    let max_residual = crate::report::max_residual(rows.iter().map(|r| r.residual));
    Ok(TorusTAlphaReport {
        condition: "torus-talpha".into(),
        alphas: rows,
        max_residual,
        tolerance: tol,
        pass: crate::report::passes(max_residual, tol),
        tail_bound: sys.tail_bound.as_ref().map(rational::format),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational::ratio(n, d)
    }

    #[test]
    fn overlap_sum_matches_enumeration() {
        for m in 1..20u128 {
            for r in 1..20u128 {
                let direct = (0..m).fold(Rational::zero(), |acc, k| {
                    let a = q(k as i64, m as i64);
                    let dist = if a > q(1, 2) { Rational::one() - &a } else { a };
                    let v = if r == 1 {
                        Rational::one()
                    } else {
                        q(1, r as i64) - dist
                    };
                    if v.is_positive() {
                        acc + v
                    } else {
                        acc
                    }
                });
                assert_eq!(tiling_overlap_sum(m, r), direct, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn tiling_expanded_matches_closed_form() {
        // A tiling and its explicit expansion give the same t_alpha, LIC and CC.
        let r = 3u128;
        let amp = Amp::Sqrt(q(1, 3));
        let tiling = TorusSystem::new(vec![TorusLayer {
            step: 6,
            generators: vec![TorusGenerator::Tiling {
                resolution: r,
                g: amp.clone(),
                h: amp.clone(),
                weight: q(1, 1),
            }],
        }])
        .unwrap();
        let explicit = TorusSystem::new(vec![TorusLayer {
            step: 6,
            generators: (0..3)
                .map(|p| {
                    let prof = RationalStepProfile::indicator(
                        Domain::Torus,
                        q(p, 3),
                        q(p + 1, 3),
                        amp.clone(),
                    )
                    .unwrap();
                    TorusGenerator::Explicit {
                        g: prof.clone(),
                        h: prof,
                        weight: q(1, 1),
                    }
                })
                .collect(),
        }])
        .unwrap();
        for k in 0..6 {
            let a = q(k, 6);
            let x = talpha_torus(&tiling, &a).unwrap().function;
            let y = talpha_torus(&explicit, &a).unwrap().function;
            assert_eq!(x, y, "alpha = {a}");
        }
        let whole = TorusSet::whole();
        assert_eq!(
            alpha_lic_torus(&tiling, &whole).unwrap().total(),
            alpha_lic_torus(&explicit, &whole).unwrap().total()
        );
        assert_eq!(
            lic_torus(&tiling, &whole).unwrap().total(),
            lic_torus(&explicit, &whole).unwrap().total()
        );
        let half = TorusSet::new(vec![(q(0, 1), q(1, 2))]).unwrap();
        assert_eq!(
            alpha_lic_torus(&tiling, &half).unwrap().total(),
            alpha_lic_torus(&explicit, &half).unwrap().total()
        );
        assert_eq!(
            lic_torus(&tiling, &half).unwrap().total(),
            lic_torus(&explicit, &half).unwrap().total()
        );
        let a = cc_torus(&tiling).unwrap();
        let b = cc_torus(&explicit).unwrap();
        assert_eq!(a.upper.value(), b.upper.value());
        assert_eq!(a.lower.value(), b.lower.value());
    }

    #[test]
    fn alpha_outside_annihilators() {
        let sys = TorusSystem::new(vec![TorusLayer {
            step: 4,
            generators: vec![],
        }])
        .unwrap();
        assert!(talpha_torus(&sys, &q(1, 3)).is_err());
        assert!(talpha_torus(&sys, &q(1, 1)).is_err());
        let empty = TorusSystem::new(vec![]).unwrap();
        assert!(talpha_torus(&empty, &q(0, 1))
            .unwrap()
            .function
            .is_exactly(&Rational::zero()));
    }
}
