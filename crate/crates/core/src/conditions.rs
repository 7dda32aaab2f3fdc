//! Calderon sums, CC frame-bound estimates and the local integrability sums.

use serde::Serialize;

use crate::error::{GtiError, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupFunction};
use crate::par::{self, Execution};
use crate::report::{ConditionReport, DEFAULT_DECAY_THRESHOLD};
use crate::system::GtiSystem;

/// `sum_j sum_p w_p |g_p^(omega)|^2`.
pub fn calderon_sum(sys: &GtiSystem, omega: &GroupElement) -> Result<f64> {
    let w = sys.group().dual().index_of(omega)?;
    Ok(calderon_profile(sys)[w])
}

/// Calderon sum at every point of the dual, in canonical order.
pub fn calderon_profile(sys: &GtiSystem) -> Vec<f64> {
    let mut out = vec![0.0; sys.group().order()];
    for (layer, hats) in sys.layers().iter().zip(sys.fourier()) {
        for (g, hat) in layer.generators().iter().zip(&hats) {
            let wp = g.weight_f64();
            for (o, v) in out.iter_mut().zip(hat.values()) {
                *o += wp * v.norm_sqr();
            }
        }
    }
    out
}

/// Frame-bound estimates from the absolutely convergent double sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CcBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `B = max_omega sum_j sum_p w_p sum_{alpha in Gamma_j^perp} |g^(omega) g^(omega + alpha)|`,
/// `A = min_omega (calderon(omega) - off-diagonal part)`.
pub fn cc_bounds(sys: &GtiSystem) -> CcBounds {
    cc_bounds_with(sys, Execution::auto())
}

pub fn cc_bounds_with(sys: &GtiSystem, exec: Execution) -> CcBounds {
    let dual = sys.group().dual();
    let hats = sys.fourier();
    let per_omega = par::map_range(exec, dual.order(), |w| {
        let mut diag = 0.0;
        let mut off = 0.0;
        for (layer, lh) in sys.layers().iter().zip(&hats) {
            for (g, hat) in layer.generators().iter().zip(lh) {
                let wp = g.weight_f64();
                let gw = hat.value(w).norm();
                if gw == 0.0 {
                    continue;
                }
                for &a in layer.perp().elements() {
                    let term = wp * gw * hat.value(dual.add(w, a)).norm();
                    if a == 0 {
                        diag += term;
                    } else {
                        off += term;
                    }
                }
            }
        }
        (diag + off, diag - off)
    });
    if per_omega.is_empty() {
        return CcBounds {
            lower: 0.0,
            upper: 0.0,
        };
    }
    CcBounds {
        upper: per_omega
            .iter()
            .map(|p| p.0)
            .fold(f64::NEG_INFINITY, f64::max),
        lower: per_omega.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
    }
}

/// Discrete-group LIC: per-layer terms `sum_p w_p |Gamma_j^perp| ||g_p||^2`.
pub fn lic_discrete_sum(sys: &GtiSystem) -> ConditionReport {
    lic_discrete_sum_with(sys, DEFAULT_DECAY_THRESHOLD)
}

pub fn lic_discrete_sum_with(sys: &GtiSystem, decay_threshold: f64) -> ConditionReport {
    let terms = sys
        .layers()
        .iter()
        .map(|l| {
            let perp = l.perp().order() as f64;
            l.generators()
                .iter()
                .map(|g| g.weight_f64() * perp * g.function.norm_sq())
                .sum()
        })
        .collect();
    ConditionReport::from_terms("lic-discrete", terms, decay_threshold)
}

/// Membership mask of a subset `K` of the dual group.
pub fn subset_mask(dual: &FiniteAbelianGroup, k: &[GroupElement]) -> Result<Vec<bool>> {
    let mut mask = vec![false; dual.order()];
    for e in k {
        mask[dual.index_of(e)?] = true;
    }
    Ok(mask)
}

fn layer_terms(
    sys_g: &GtiSystem,
    hats_g: &[Vec<GroupFunction>],
    hats_h: &[Vec<GroupFunction>],
    mask: &[bool],
    squared: bool,
    exec: Execution,
) -> Vec<f64> {
    let dual = sys_g.group().dual();
    let wd = dual.weight_f64();
    let idx: Vec<usize> = (0..sys_g.layers().len()).collect();
    par::map(exec, &idx, |&j| {
        let layer = &sys_g.layers()[j];
        let mut total = 0.0;
        for (p, g) in layer.generators().iter().enumerate() {
            let gh = &hats_g[j][p];
            let hh = &hats_h[j][p];
            let mut s = 0.0;
            for &a in layer.perp().elements() {
                for w in 0..dual.order() {
                    let wa = dual.add(w, a);
                    if !(mask[w] && mask[wa]) {
                        continue;
                    }
                    s += if squared {
                        gh.value(w).norm_sqr()
                    } else {
                        gh.value(w).norm() * hh.value(wa).norm()
                    };
                }
            }
            total += g.weight_f64() * s * wd;
        }
        total
    })
}

/// Dual alpha-LIC on `K`: per-layer terms
/// `sum_p w_p sum_{alpha in Gamma_j^perp} sum_{omega in K, omega + alpha in K} w_Ghat |g^(omega) h^(omega + alpha)|`.
pub fn dual_alpha_lic_terms(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    k: &[GroupElement],
) -> Result<ConditionReport> {
    sys_g.check_pairable(sys_h)?;
    let mask = subset_mask(&sys_g.group().dual(), k)?;
    let terms = layer_terms(
        sys_g,
        &sys_g.fourier(),
        &sys_h.fourier(),
        &mask,
        false,
        Execution::auto(),
    );
    Ok(ConditionReport::from_terms(
        "dual-alpha-lic",
        terms,
        DEFAULT_DECAY_THRESHOLD,
    ))
}

/// LIC on `K`: per-layer terms with `|g^(omega)|^2` over `omega in K, omega + alpha in K`.
pub fn lic_terms(sys: &GtiSystem, k: &[GroupElement]) -> Result<ConditionReport> {
    let mask = subset_mask(&sys.group().dual(), k)?;
    let hats = sys.fourier();
    let terms = layer_terms(sys, &hats, &hats, &mask, true, Execution::auto());
    Ok(ConditionReport::from_terms(
        "lic",
        terms,
        DEFAULT_DECAY_THRESHOLD,
    ))
}

/// Every element of the dual, for `K = Ghat`.
pub fn whole_dual(sys: &GtiSystem) -> Vec<GroupElement> {
    sys.group().dual().elements().collect()
}

/// All condition checks of one system, bundled.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionBundle {
    pub calderon: ConditionReport,
    pub calderon_min: f64,
    pub calderon_max: f64,
    pub cc: CcBounds,
    pub lic_discrete: ConditionReport,
    pub lic: ConditionReport,
    pub alpha_lic: ConditionReport,
    pub k_size: usize,
}

/// Runs every condition on `sys`, with `K` defaulting to the whole dual.
/// `j_max` truncates the layer list.
pub fn bundle(
    sys: &GtiSystem,
    k: Option<&[GroupElement]>,
    j_max: Option<usize>,
) -> Result<ConditionBundle> {
    let sys = match j_max {
        Some(j) if j < sys.layers().len() => {
            GtiSystem::new(sys.group().clone(), sys.layers()[..j].to_vec())?
        }
        _ => sys.clone(),
    };
    let all = whole_dual(&sys);
    let k = k.unwrap_or(&all);
    if k.iter().any(|e| e.coords().len() != sys.group().rank()) {
        return Err(GtiError::invalid("K contains elements of the wrong rank"));
    }
    let profile = calderon_profile(&sys);
    let dual = sys.group().dual();
    let mut calderon = ConditionReport::from_terms("calderon", Vec::new(), DEFAULT_DECAY_THRESHOLD);
    calderon.value_at = Some(
        profile
            .iter()
            .enumerate()
            .map(|(w, &v)| (dual.element(w), v))
            .collect(),
    );
    let calderon_min = profile.iter().copied().fold(f64::INFINITY, f64::min);
    let calderon_max = profile.iter().copied().fold(0.0, f64::max);
    Ok(ConditionBundle {
        calderon,
        calderon_min: if profile.is_empty() {
            0.0
        } else {
            calderon_min
        },
        calderon_max,
        cc: cc_bounds(&sys),
        lic_discrete: lic_discrete_sum(&sys),
        lic: lic_terms(&sys, k)?,
        alpha_lic: dual_alpha_lic_terms(&sys, &sys, k)?,
        k_size: k.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn onb_calderon_is_one() {
        let g = FiniteAbelianGroup::cyclic_product(&[6]).unwrap();
        let onb = families::standard_onb(&g);
        assert!(calderon_profile(&onb)
            .iter()
            .all(|v| (v - 1.0).abs() < 1e-14));
        let two = onb.union(&onb).unwrap();
        assert!(calderon_profile(&two)
            .iter()
            .all(|v| (v - 2.0).abs() < 1e-14));
        let cc = cc_bounds(&onb);
        assert!((cc.lower - 1.0).abs() < 1e-14 && (cc.upper - 1.0).abs() < 1e-14);
    }

    #[test]
    fn empty_k_gives_zero_terms() {
        let g = FiniteAbelianGroup::cyclic_product(&[6]).unwrap();
        let onb = families::standard_onb(&g);
        let r = dual_alpha_lic_terms(&onb, &onb, &[]).unwrap();
        assert_eq!(r.total, 0.0);
        let l = lic_discrete_sum(&onb);
        assert_eq!(l.terms.len(), 1);
        assert!(!l.divergence_flag);
    }
}
