//! Layered systems on `l^2(Z)` with closed-form behaviour.

use num::{One, Zero};
use serde::Serialize;

use super::exact::{Amp, ExactComplex, PhaseSum};
use super::profile::{Domain, Piece, RationalStepProfile};
use super::system::{
    alpha_lic_torus, cc_torus, lic_torus, talpha_torus, ExactSeries, TorusCcBounds, TorusGenerator,
    TorusLayer, TorusSet, TorusSystem, TorusTAlpha,
};
use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

fn power(n: u64, j: u32) -> Result<u128> {
    (n as u128)
        .checked_pow(j)
        .ok_or_else(|| GtiError::invalid("N^j overflows"))
}

/// Layer `j = 1..=j_max` translates along `N^j Z` and tiles the torus with `N^j`
/// indicators of height `sqrt((N - 1) / N^j)`. The tail bound is `N^{-j_max}`.
pub fn layered_tiling_torus(n: u64, j_max: u32) -> Result<TorusSystem> {
    if n < 2 {
        return Err(GtiError::invalid("N must be at least 2"));
    }
    let mut layers = Vec::with_capacity(j_max as usize);
    for j in 1..=j_max {
        let nj = power(n, j)?;
        let amp = Amp::Sqrt(rational::int(n as i64 - 1) / rational::from_u128(nj));
        layers.push(TorusLayer {
            step: nj,
            generators: vec![TorusGenerator::Tiling {
                resolution: nj,
                g: amp.clone(),
                h: amp,
                weight: Rational::one(),
            }],
        });
    }
    Ok(TorusSystem::new(layers)?.with_tail_bound(rational::inv_pow(n, j_max)))
}

#[derive(Clone, Debug, Serialize)]
pub struct LayeredTilingReport {
    pub n: u64,
    pub j_max: u32,
    pub lic: ExactSeries,
    pub alpha_lic: ExactSeries,
    pub cc: TorusCcBounds,
    pub t0: TorusTAlpha,
    pub t_alpha: Vec<TorusTAlpha>,
    /// `1 - N^{-j_max}`.
    #[serde(with = "rational::serde_string")]
    pub expected_partial: Rational,
    #[serde(with = "rational::serde_string")]
    pub tail_bound: Rational,
    pub lic_terms_constant: bool,
    pub alpha_lic_exact: bool,
    pub cc_exact: bool,
    pub t0_exact: bool,
    pub t_alpha_zero: bool,
    pub pass: bool,
}

/// LIC, alpha-LIC, CC and `t_alpha` of [`layered_tiling_torus`], checked against the closed forms.
pub fn repro_layered_tiling(n: u64, j_max: u32) -> Result<LayeredTilingReport> {
    let sys = layered_tiling_torus(n, j_max)?;
    let whole = TorusSet::whole();
    let lic = lic_torus(&sys, &whole)?;
    let alpha_lic = alpha_lic_torus(&sys, &whole)?;
    let cc = cc_torus(&sys)?;
    let t0 = talpha_torus(&sys, &Rational::zero())?;
    let mut t_alpha = Vec::new();
    for j in 1..=j_max.min(3) {
        let nj = power(n, j)?;
        for k in [1u128, nj - 1] {
            let alpha = rational::from_u128(k) / rational::from_u128(nj);
            if t_alpha.iter().all(|t: &TorusTAlpha| t.alpha != alpha) {
                t_alpha.push(talpha_torus(&sys, &alpha)?);
            }
        }
    }
    let expected = Rational::one() - rational::inv_pow(n, j_max);
    let nm1 = rational::int(n as i64 - 1);
    let lic_terms_constant = lic.terms.iter().all(|t| t.is_exact() && t.rational == nm1);
    let total = alpha_lic.total();
    let alpha_lic_exact = total.is_exact() && total.rational == expected;
    let cc_exact = [&cc.lower, &cc.upper]
        .iter()
        .all(|b| b.is_exact() && b.rational == expected);
    let t0_exact = t0.function.is_exactly(&expected);
    let t_alpha_zero = t_alpha
        .iter()
        .all(|t| t.function.is_exactly(&Rational::zero()));
    let pass = lic_terms_constant && alpha_lic_exact && cc_exact && t0_exact && t_alpha_zero;
    Ok(LayeredTilingReport {
        n,
        j_max,
        lic,
        alpha_lic,
        cc,
        t0,
        t_alpha,
        tail_bound: rational::inv_pow(n, j_max),
        expected_partial: expected,
        lic_terms_constant,
        alpha_lic_exact,
        cc_exact,
        t0_exact,
        t_alpha_zero,
        pass,
    })
}

/// `tau_j = 2^{j-1} - 1`.
pub fn reordered_onb_shift(j: u32) -> i128 {
    (1i128 << (j - 1)) - 1
}

/// The `j >= 1` with `m = tau_j mod 2^j`; `m = -1` lies in no class.
pub fn reordered_onb_layer(m: i64) -> Option<u32> {
    let v = m.checked_add(1)?;
    (v != 0).then(|| v.trailing_zeros() + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReorderedOnbReport {
    pub n: u64,
    pub k: i64,
    pub j_star: u32,
    #[serde(with = "rational::serde_string")]
    pub alpha: Rational,
    pub value: ExactComplex,
    #[serde(with = "rational::serde_string")]
    pub expected: Rational,
    pub residual: f64,
    /// True when the value is the expected rational with no rounding at all.
    pub exact: bool,
    /// `t_alpha` equals `delta_{alpha,0}`.
    pub characterization_holds: bool,
}

/// `t_alpha` of the layered system `g_j = N^{-j/2} 1_{tau_j}`, `Gamma_j = N^j Z`, in closed form.
///
/// `alpha = k / N^{j*}`; `k = 0` means `alpha = 0`. For `N = 2` a nonzero `k` must be odd.
/// Beyond `alpha = 0` only `N = 2` has an explicit shift sequence.
pub fn repro_reordered_onb(n: u64, k: i64, j_star: u32) -> Result<ReorderedOnbReport> {
    if n < 2 {
        return Err(GtiError::invalid("N must be at least 2"));
    }
    let n_q = rational::int(n as i64);
    if k == 0 {
        // sum_{j >= 1} N^{-j} = 1 / (N - 1).
        let value = (n_q - Rational::one()).recip();
        let expected = Rational::one();
        let residual = rational::to_f64(&(&value - &expected)).abs();
        return Ok(ReorderedOnbReport {
            n,
            k,
            j_star,
            alpha: Rational::zero(),
            characterization_holds: value == expected,
            value: ExactComplex::rational(value),
            expected,
            residual,
            exact: true,
        });
    }
    if n != 2 {
        return Err(GtiError::invalid(
            "for N >= 3 only alpha = 0 has a closed form; the shift sequence is not explicit",
        ));
    }
    if !(1..=62).contains(&j_star) {
        return Err(GtiError::invalid("j* must lie in 1..=62"));
    }
    if k % 2 == 0 {
        return Err(GtiError::invalid(
            "k must be odd so that alpha has exact level j*",
        ));
    }
    let modulus = 1i128 << j_star;
    let k_red = (k as i128).rem_euclid(modulus);
    let alpha = Rational::new(k_red.into(), modulus.into());
    let scale = rational::inv_pow(2, j_star);
    // Layers j >= j* contain alpha. Term j is 2^{-j} e(-tau_j alpha); for j > j* the phase
    // is the constant -tau_{j*+1} alpha mod 1, and those terms sum to 2^{-j*}.
    let mut sum = PhaseSum::new();
    let tau = |j: u32| Rational::from_integer(reordered_onb_shift(j).into());
    sum.add(&scale, &-(tau(j_star) * &alpha));
    sum.add(&scale, &-(tau(j_star + 1) * &alpha));
    let value = match sum.as_rational() {
        Some(q) => ExactComplex::rational(q),
        None => ExactComplex::float(sum.value()),
    };
    let residual = value.norm();
    let exact = sum.is_exact_zero();
    Ok(ReorderedOnbReport {
        n,
        k,
        j_star,
        alpha,
        value,
        expected: Rational::zero(),
        residual,
        exact,
        characterization_holds: exact,
    })
}

/// Shannon wavelet transform: `1` on `[-1, -1/2) u [1/2, 1)`.
pub fn shannon_profile() -> RationalStepProfile {
    let one = Amp::rational(&Rational::one());
    RationalStepProfile::new(
        Domain::Real,
        vec![
            Piece {
                lo: rational::int(-1),
                hi: rational::ratio(-1, 2),
                value: one.clone(),
            },
            Piece {
                lo: rational::ratio(1, 2),
                hi: rational::int(1),
                value: one,
            },
        ],
    )
    .expect("valid profile")
}

/// `|psi|^2 = 1 / (2 ln 2)` on `[-2, -1) u [1, 2)`; its continuous Calderon integral is 1.
pub fn log_normalized_profile() -> RationalStepProfile {
    let c = num::complex::Complex64::new((0.5 / std::f64::consts::LN_2).sqrt(), 0.0);
    RationalStepProfile::new(
        Domain::Real,
        vec![
            Piece {
                lo: rational::int(-2),
                hi: rational::int(-1),
                value: Amp::Complex(c),
            },
            Piece {
                lo: rational::int(1),
                hi: rational::int(2),
                value: Amp::Complex(c),
            },
        ],
    )
    .expect("valid profile")
}

/// `1_{[0, 1)}` on the real line.
pub fn unit_box() -> RationalStepProfile {
    RationalStepProfile::indicator(
        Domain::Real,
        Rational::zero(),
        Rational::one(),
        Amp::rational(&Rational::one()),
    )
    .expect("valid profile")
}
