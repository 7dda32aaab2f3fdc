//! Gabor duality on the real line for compactly supported step windows.

use num::{Signed, Zero};
use serde::Serialize;

use super::exact::ExactComplex;
use super::profile::{Domain, RationalStepProfile, StepFunction};
use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

/// Most `alpha` or `lambda` values enumerated.
const MAX_TERMS: i64 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct JanssenAlpha {
    #[serde(with = "rational::serde_string")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_string")]
    pub target: Rational,
    /// `sum_lambda conj g(x - lambda) h(x - lambda + alpha)` on `[0, a)`.
    pub function: StepFunction,
    pub residual: f64,
    pub exact_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JanssenReport {
    #[serde(with = "rational::serde_string")]
    pub a: Rational,
    #[serde(with = "rational::serde_string")]
    pub b: Rational,
    pub alphas: Vec<JanssenAlpha>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// For `alpha in (1/b) Z`: `sum_{lambda in aZ} conj g(x - lambda) h(x - lambda + alpha) = delta_{alpha,0} / a`
/// on `x in [0, a)`. Only `alpha` in the support difference set can be nonzero; all of them are checked.
pub fn janssen_check(
    g: &RationalStepProfile,
    h: &RationalStepProfile,
    a: &Rational,
    b: &Rational,
    tol: f64,
) -> Result<JanssenReport> {
    if g.domain() != Domain::Real || h.domain() != Domain::Real {
        return Err(GtiError::invalid("windows must live on the real line"));
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(GtiError::invalid("a and b must be positive"));
    }
    let target0 = a.recip();
    let mut alphas = vec![Rational::zero()];
    if let (Some((glo, ghi)), Some((hlo, hhi))) = (g.support(), h.support()) {
        let kmin = ((&hlo - &ghi) * b).floor();
        let kmax = ((&hhi - &glo) * b).ceil();
        let count = rational::to_f64(&(&kmax - &kmin));
        if count > MAX_TERMS as f64 {
            return Err(GtiError::invalid(
                "support difference set is too large to enumerate",
            ));
        }
        let mut k = kmin;
        while k <= kmax {
            if !k.is_zero() {
                alphas.push(&k / b);
            }
            k += rational::int(1);
        }
    }
    alphas.sort();
    let lambdas: Vec<Rational> = match g.support() {
        Some((glo, ghi)) => {
            let nmin = (-&ghi / a).floor();
            let nmax = ((a - &glo) / a).ceil();
            if rational::to_f64(&(&nmax - &nmin)) > MAX_TERMS as f64 {
                return Err(GtiError::invalid("too many translates meet [0, a)"));
            }
            let mut v = Vec::new();
            let mut n = nmin;
            while n <= nmax {
                v.push(&n * a);
                n += rational::int(1);
            }
            v
        }
        None => Vec::new(),
    };
    let interval = [(Rational::zero(), a.clone())];
    let mut out = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let mut bps = Vec::new();
        for l in &lambdas {
            bps.extend(g.breakpoints().iter().map(|x| x + l));
            bps.extend(h.breakpoints().iter().map(|x| x + l - &alpha));
        }
        let function = StepFunction::sweep(&interval, bps, |x| {
            let mut acc = ExactComplex::zero();
            for l in &lambdas {
                let y = x - l;
                let gv = g.value_at(&y);
                if gv.is_zero() {
                    continue;
                }
                acc += &gv.conj_mul(&h.value_at(&(&y + &alpha)));
            }
            acc
        });
        let target = if alpha.is_zero() {
            target0.clone()
        } else {
            Rational::zero()
        };
        let residual = function.max_deviation(&target);
        let exact_match = function.is_exactly(&target);
        out.push(JanssenAlpha {
            alpha,
            target,
            function,
            residual,
            exact_match,
        });
    }
    let max_residual = crate::report::max_residual(out.iter().map(|x| x.residual));
    Ok(JanssenReport {
        a: a.clone(),
        b: b.clone(),
        alphas: out,
        max_residual,
        tolerance: tol,
        pass: crate::report::passes(max_residual, tol),
    })
}
