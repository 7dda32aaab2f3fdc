//! Dyadic wavelet systems on the real line with step-function transforms.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::Serialize;

use super::exact::ExactComplex;
use super::profile::{Domain, RationalStepProfile, StepFunction};
use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

fn pow2(j: i32) -> Rational {
    let p = num::pow(BigInt::from(2), j.unsigned_abs() as usize);
    if j >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Smallest `j` with `2^j >= x`, for `x > 0`.
fn ceil_log2(x: &Rational) -> i32 {
    let mut j = 0;
    while pow2(j) < *x {
        j += 1;
    }
    while pow2(j - 1) >= *x {
        j -= 1;
    }
    j
}

/// Largest `j` with `2^j <= x`, for `x > 0`.
fn floor_log2(x: &Rational) -> i32 {
    let mut j = 0;
    while pow2(j) > *x {
        j -= 1;
    }
    while pow2(j + 1) <= *x {
        j += 1;
    }
    j
}

fn two_adic_valuation(mut a: i64) -> i32 {
    let mut v = 0;
    while a % 2 == 0 {
        a /= 2;
        v += 1;
    }
    v
}

/// `(r, R)` with the support inside `r <= |xi| <= R`; `r = 0` when a piece touches 0.
fn radial_support(p: &RationalStepProfile) -> Option<(Rational, Rational)> {
    let mut r: Option<Rational> = None;
    let mut big = Rational::zero();
    for piece in p.pieces() {
        let (lo, hi) = (&piece.lo, &piece.hi);
        let inner = if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
            Rational::zero()
        } else if lo.is_positive() {
            lo.clone()
        } else {
            hi.abs()
        };
        big = big.max(lo.abs()).max(hi.abs());
        r = Some(match r {
            Some(cur) => cur.min(inner),
            None => inner,
        });
    }
    r.map(|r| (r, big))
}

#[derive(Clone, Debug, Serialize)]
pub struct WaveletTAlpha {
    pub alpha: i64,
    pub j_min: i32,
    pub j_max: i32,
    pub function: StepFunction,
    /// Bound on the contribution of dilations left out of `[j_min, j_max]`.
    pub tail_bound: f64,
}

/// `t_alpha(omega) = sum_{j: alpha in 2^j Z} psi^(2^{-j} omega) conj(phi^(2^{-j}(omega + alpha)))`
/// on the window, exactly.
pub fn wavelet_talpha_dyadic(
    psi: &RationalStepProfile,
    phi: &RationalStepProfile,
    alpha: i64,
    window: &[(Rational, Rational)],
    j_range: Option<(i32, i32)>,
) -> Result<WaveletTAlpha> {
    if psi.domain() != Domain::Real || phi.domain() != Domain::Real {
        return Err(GtiError::invalid(
            "wavelet profiles must live on the real line",
        ));
    }
    if window.iter().any(|(a, b)| a >= b) {
        return Err(GtiError::invalid("window intervals must be nonempty"));
    }
    if let Some((a, b)) = j_range {
        if a > b {
            return Err(GtiError::invalid("j range is empty"));
        }
    }
    let Some((r, big_r)) = radial_support(psi) else {
        let function = StepFunction::sweep(window, [], |_| ExactComplex::zero());
        let (j_min, j_max) = j_range.unwrap_or((0, -1));
        return Ok(WaveletTAlpha {
            alpha,
            j_min,
            j_max,
            function,
            tail_bound: 0.0,
        });
    };
    let touches_zero = window
        .iter()
        .any(|(a, b)| !a.is_positive() && !b.is_negative());
    let (wl, wh) = window
        .iter()
        .fold((None::<Rational>, Rational::zero()), |(lo, hi), (a, b)| {
            let inner = a.abs().min(b.abs());
            let outer = a.abs().max(b.abs());
            (
                Some(lo.map_or(inner.clone(), |l| l.min(inner))),
                hi.max(outer),
            )
        });
    let wl = wl.unwrap_or_else(Rational::zero);
    let natural_lo = (!touches_zero && wl.is_positive()).then(|| floor_log2(&(&wl / &big_r)) - 1);
    let natural_hi = r.is_positive().then(|| ceil_log2(&(&wh / &r)) + 1);
    let alpha_cap = (alpha != 0).then(|| two_adic_valuation(alpha));
    let (j_min, j_max, tail_bound) = match (j_range, natural_lo, natural_hi) {
        (None, Some(lo), Some(hi)) => (lo, hi, 0.0),
        (None, _, _) => {
            return Err(GtiError::TruncationRequired(
                "infinitely many dilations meet the window; give an explicit j range".into(),
            ))
        }
        (Some((a, b)), lo, hi) => {
            let covers = lo.is_some_and(|lo| a <= lo) && hi.is_some_and(|hi| b >= hi);
            let tail = if covers {
                0.0
            } else if r.is_positive() {
                let span = floor_log2(&(&big_r / &r)) as f64 + 2.0;
                span * psi.sup_abs() * phi.sup_abs()
            } else {
                f64::INFINITY
            };
            (a, b, tail)
        }
    };
    let j_max = match alpha_cap {
        Some(v) => j_max.min(v),
        None => j_max,
    };
    let alpha_q = rational::int(alpha);
    let js: Vec<(Rational, Rational)> = (j_min..=j_max).map(|j| (pow2(j), pow2(-j))).collect();
    let mut bps = Vec::new();
    for (s, _) in &js {
        bps.extend(psi.breakpoints().iter().map(|x| x * s));
        bps.extend(phi.breakpoints().iter().map(|x| x * s - &alpha_q));
    }
    let function = StepFunction::sweep(window, bps, |w| {
        let mut acc = ExactComplex::zero();
        let wa = w + &alpha_q;
        for (_, inv) in &js {
            let p = psi.value_at(&(w * inv));
            if p.is_zero() {
                continue;
            }
            acc += &phi.value_at(&(&wa * inv)).conj_mul(&p);
        }
        acc
    });
    Ok(WaveletTAlpha {
        alpha,
        j_min,
        j_max,
        function,
        tail_bound,
    })
}

/// `int_{R \ 0} |psi^(a xi)|^2 da / |a|` for both signs of `xi`.
#[derive(Clone, Debug, Serialize)]
pub struct CalderonContinuous {
    /// `int_{u > 0} |psi^(u)|^2 du / u`.
    pub positive_u: f64,
    /// `int_{u < 0} |psi^(u)|^2 du / |u|`.
    pub negative_u: f64,
    pub xi_positive: f64,
    pub xi_negative: f64,
    pub min: f64,
    pub max: f64,
}

impl CalderonContinuous {
    /// Largest deviation of either side from 1.
    pub fn deviation_from_one(&self) -> f64 {
        (self.min - 1.0).abs().max((self.max - 1.0).abs())
    }
}

/// Closed form `sum_i |c_i|^2 ln(hi_i / lo_i)` of the continuous Calderon integral.
///
/// Since `a` ranges over all of `R \ 0`, the substitution `u = a xi` gives the
/// same value for every `xi != 0`; both sides are reported.
pub fn calderon_continuous(psi: &RationalStepProfile) -> Result<CalderonContinuous> {
    if psi.domain() != Domain::Real {
        return Err(GtiError::invalid("profile must live on the real line"));
    }
    let mut pos = 0.0;
    let mut neg = 0.0;
    for p in psi.pieces() {
        let c2 = p.value.norm_sqr().value().re;
        if p.lo.is_positive() {
            pos += c2 * rational::to_f64(&(&p.hi / &p.lo)).ln();
        } else if p.hi.is_negative() {
            neg += c2 * rational::to_f64(&(&p.lo / &p.hi)).ln();
        } else {
            return Err(GtiError::invalid(
                "a piece touches 0: the Calderon integral diverges or depends on xi",
            ));
        }
    }
    let total = pos + neg;
    Ok(CalderonContinuous {
        positive_u: pos,
        negative_u: neg,
        xi_positive: total,
        xi_negative: total,
        min: total,
        max: total,
    })
}
