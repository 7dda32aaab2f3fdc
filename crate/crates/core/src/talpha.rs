//! The characterizing equations
//! `t_alpha(omega) = sum_{j: alpha in Gamma_j^perp} sum_p w_p conj(g_p^(omega)) h_p^(omega + alpha) = delta_{alpha,0}`
//! and their Gabor specializations.

use num::complex::Complex64;
use serde::Serialize;

use crate::conditions;
use crate::error::{GtiError, Result};
use crate::group::{dft, FiniteAbelianGroup, GroupElement};
use crate::oracle;
use crate::par::{self, Execution};
use crate::rational;
use crate::report::{TAlphaEntry, TAlphaReport, Verdict};
use crate::system::{GaborSystem, GtiSystem};

struct LayerHat {
    perp: Vec<bool>,
    gens: Vec<(f64, Vec<Complex64>, Vec<Complex64>)>,
}

/// Fourier data of a pair of systems, ready for repeated `t_alpha` evaluation.
pub struct TAlphaEngine {
    dual: FiniteAbelianGroup,
    layers: Vec<LayerHat>,
    alphas: Vec<usize>,
}

impl TAlphaEngine {
    pub fn new(sys_g: &GtiSystem, sys_h: &GtiSystem) -> Result<Self> {
        sys_g.check_pairable(sys_h)?;
        let dual = sys_g.group().dual();
        let layers = sys_g
            .layers()
            .iter()
            .zip(sys_h.layers())
            .map(|(lg, lh)| {
                let mut perp = vec![false; dual.order()];
                for &a in lg.perp().elements() {
                    perp[a] = true;
                }
                let gens = lg
                    .generators()
                    .iter()
                    .zip(lh.generators())
                    .map(|(g, h)| {
                        (
                            g.weight_f64(),
                            dft(&g.function).into_values(),
                            dft(&h.function).into_values(),
                        )
                    })
                    .collect();
                LayerHat { perp, gens }
            })
            .collect();
        Ok(TAlphaEngine {
            dual,
            layers,
            alphas: sys_g.alpha_union(),
        })
    }

    pub fn dual(&self) -> &FiniteAbelianGroup {
        &self.dual
    }

    /// Sorted `union_j Gamma_j^perp`, as dual indices.
    pub fn alphas(&self) -> &[usize] {
        &self.alphas
    }

    pub fn eval(&self, alpha: &GroupElement, omega: &GroupElement) -> Result<Complex64> {
        let a = self.dual.index_of(alpha)?;
        let w = self.dual.index_of(omega)?;
        if self.alphas.binary_search(&a).is_err() {
            return Err(GtiError::invalid(format!(
                "alpha = {alpha} is not in the union of the annihilators"
            )));
        }
        Ok(self.eval_unchecked(a, w))
    }

    pub fn eval_unchecked(&self, a: usize, w: usize) -> Complex64 {
        let wa = self.dual.add(w, a);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in &self.layers {
            if !l.perp[a] {
                continue;
            }
            for (wp, gh, hh) in &l.gens {
                acc += gh[w].conj() * hh[wa] * *wp;
            }
        }
        acc
    }

    fn table(&self, condition: &str, tol: f64, exec: Execution) -> TAlphaReport {
        let n = self.dual.order();
        let rows = par::map(exec, &self.alphas, |&a| {
            let target = if a == 0 { 1.0 } else { 0.0 };
            let alpha = self.dual.element(a);
            (0..n)
                .map(|w| {
                    let t = self.eval_unchecked(a, w);
                    TAlphaEntry {
                        alpha: alpha.clone(),
                        omega: self.dual.element(w),
                        re: t.re,
                        im: t.im,
                        target,
                        residual: (t - target).norm(),
                    }
                })
                .collect::<Vec<_>>()
        });
        TAlphaReport::from_entries(condition, rows.into_iter().flatten().collect(), tol)
    }
}

/// Single value `t_alpha(omega)`.
pub fn talpha(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    alpha: &GroupElement,
    omega: &GroupElement,
) -> Result<Complex64> {
    TAlphaEngine::new(sys_g, sys_h)?.eval(alpha, omega)
}

/// Dual-frame verdict from the t_alpha-equations.
pub fn verify_dual_talpha(sys_g: &GtiSystem, sys_h: &GtiSystem, tol: f64) -> Result<TAlphaReport> {
    verify_dual_talpha_with(sys_g, sys_h, tol, Execution::auto())
}

pub fn verify_dual_talpha_with(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    tol: f64,
    exec: Execution,
) -> Result<TAlphaReport> {
    let engine = TAlphaEngine::new(sys_g, sys_h)?;
    let mut rep = engine.table("dual-talpha", tol, exec);
    rep.lic_total = Some(conditions::lic_discrete_sum(sys_g).total);
    Ok(rep)
}

/// Parseval verdict: the dual-frame equations with `h = g`.
pub fn verify_parseval_talpha(sys: &GtiSystem, tol: f64) -> Result<TAlphaReport> {
    verify_parseval_talpha_with(sys, tol, Execution::auto())
}

pub fn verify_parseval_talpha_with(
    sys: &GtiSystem,
    tol: f64,
    exec: Execution,
) -> Result<TAlphaReport> {
    let engine = TAlphaEngine::new(sys, sys)?;
    let mut rep = engine.table("parseval-talpha", tol, exec);
    rep.lic_total = Some(conditions::lic_discrete_sum(sys).total);
    Ok(rep)
}

/// Time side: `w_Lambda sum_lambda conj g(x - lambda) h(x - lambda + alpha) = delta_{alpha,0}`
/// for `alpha in Gamma^perp` (a subgroup of `G`) and `x in G`.
pub fn gabor_dual_time(sys: &GaborSystem, tol: f64) -> Result<TAlphaReport> {
    let group = sys.group();
    let perp = sys.gamma().annihilator();
    let wl = rational::to_f64(&sys.lambda_weight());
    let g = sys.g().values();
    let h = sys.h().values();
    let rows = par::map(Execution::auto(), perp.elements(), |&a| {
        let target = if a == 0 { 1.0 } else { 0.0 };
        (0..group.order())
            .map(|x| {
                let s: Complex64 = sys
                    .lambda()
                    .elements()
                    .iter()
                    .map(|&l| {
                        let y = group.sub(x, l);
                        g[y].conj() * h[group.add(y, a)]
                    })
                    .sum::<Complex64>()
                    * wl;
                TAlphaEntry {
                    alpha: group.element(a),
                    omega: group.element(x),
                    re: s.re,
                    im: s.im,
                    target,
                    residual: (s - target).norm(),
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(TAlphaReport::from_entries(
        "gabor-time",
        rows.into_iter().flatten().collect(),
        tol,
    ))
}

/// Frequency side: `w_Gamma sum_gamma conj g^(omega + gamma) h^(omega + gamma + beta) = delta_{beta,0}`
/// for `beta in Lambda^perp` and `omega` in the dual.
pub fn gabor_dual_freq(sys: &GaborSystem, tol: f64) -> Result<TAlphaReport> {
    let dual = sys.group().dual();
    let perp = sys.lambda().annihilator();
    let wgam = rational::to_f64(&sys.gamma_weight());
    let gh = dft(sys.g());
    let hh = dft(sys.h());
    let rows = par::map(Execution::auto(), perp.elements(), |&b| {
        let target = if b == 0 { 1.0 } else { 0.0 };
        (0..dual.order())
            .map(|w| {
                let s: Complex64 = sys
                    .gamma()
                    .elements()
                    .iter()
                    .map(|&c| {
                        let y = dual.add(w, c);
                        gh.value(y).conj() * hh.value(dual.add(y, b))
                    })
                    .sum::<Complex64>()
                    * wgam;
                TAlphaEntry {
                    alpha: dual.element(b),
                    omega: dual.element(w),
                    re: s.re,
                    im: s.im,
                    target,
                    residual: (s - target).norm(),
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(TAlphaReport::from_entries(
        "gabor-freq",
        rows.into_iter().flatten().collect(),
        tol,
    ))
}

/// Both routes for a window pair on `C^d`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteGaborReport {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    /// Entries indexed by `alpha = (n)` and `omega = (x)`.
    pub characterization: TAlphaReport,
    pub bruteforce: Verdict,
    pub pass: bool,
}

/// `sum_{k < N} conj g(x - nM - ka) h(x - ka) = delta_{n,0} / M` for `x < a`, `n < b`,
/// with `N = d / a`, `M = d / b`, plus the brute-force reproducing-formula verdict.
pub fn finite_gabor_check(
    g: &[Complex64],
    h: &[Complex64],
    a: usize,
    b: usize,
    tol: f64,
) -> Result<FiniteGaborReport> {
    let d = g.len();
    oracle::check_finite_gabor(d, h.len(), a, b)?;
    let (nn, mm) = (d / a, d / b);
    let mut entries = Vec::with_capacity(a * b);
    for n in 0..b {
        let target = if n == 0 { 1.0 / mm as f64 } else { 0.0 };
        for x in 0..a {
            let s: Complex64 = (0..nn)
                .map(|k| {
                    let xg = (x + 2 * d - (n * mm) % d - (k * a) % d) % d;
                    let xh = (x + d - (k * a) % d) % d;
                    g[xg].conj() * h[xh]
                })
                .sum();
            entries.push(TAlphaEntry {
                alpha: GroupElement::new(vec![n as u64]),
                omega: GroupElement::new(vec![x as u64]),
                re: s.re,
                im: s.im,
                target,
                residual: (s - target).norm(),
            });
        }
    }
    let characterization = TAlphaReport::from_entries("finite-gabor", entries, tol);
    let m = oracle::finite_gabor_frame_operator(g, h, a, b)?;
    let bruteforce = Verdict::new(
        "finite-gabor-bruteforce",
        oracle::max_entry_deviation_from_identity(&m),
        tol,
    );
    Ok(FiniteGaborReport {
        d,
        a,
        b,
        pass: characterization.pass,
        characterization,
        bruteforce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn onb_passes_and_doubling_fails() {
        let g = FiniteAbelianGroup::cyclic_product(&[2, 3]).unwrap();
        let onb = families::standard_onb(&g);
        let r = verify_dual_talpha(&onb, &onb, 1e-10).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_residual, 0.0);
        let two = onb.scaled(Complex64::new(2.0, 0.0));
        let r = verify_dual_talpha(&onb, &two, 1e-10).unwrap();
        assert!(!r.pass);
        assert!((r.max_residual - 1.0).abs() < 1e-14);
        let worst = r.worst().unwrap();
        assert_eq!(worst.alpha, GroupElement::new(vec![0]));
    }

    #[test]
    fn alpha_outside_union_is_rejected() {
        let g = FiniteAbelianGroup::cyclic_product(&[4]).unwrap();
        let onb = families::standard_onb(&g);
        let e = |v| GroupElement::new(vec![v]);
        assert!(talpha(&onb, &onb, &e(1), &e(0)).is_err());
        assert_eq!(
            talpha(&onb, &onb, &e(0), &e(2)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn finite_gabor_h_zero() {
        let g = vec![Complex64::new(1.0, 0.0); 12];
        let h = vec![Complex64::new(0.0, 0.0); 12];
        let r = finite_gabor_check(&g, &h, 3, 4, 1e-10).unwrap();
        assert!(!r.pass);
        assert!((r.characterization.max_residual - 1.0 / 3.0).abs() < 1e-15);
        assert!(finite_gabor_check(&g, &h, 5, 4, 1e-10).is_err());
    }

    #[test]
    fn finite_gabor_delta_window() {
        // d = 4, a = b = 1: N = M = 4, g = h = delta/2 gives 1/4 at n = 0.
        let mut g = vec![Complex64::new(0.0, 0.0); 4];
        g[0] = Complex64::new(0.5, 0.0);
        let r = finite_gabor_check(&g, &g, 1, 1, 1e-12).unwrap();
        assert!(r.pass && r.bruteforce.pass);
    }
}
