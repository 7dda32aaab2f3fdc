//! Dense frame operators and the identities they satisfy.
//!
//! Matrices act on coefficient vectors in canonical element order:
//! `(S f)(x) = sum_y M[x, y] f(y)`, with the point mass `w_G` folded into `M`.

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::Serialize;

use crate::error::{GtiError, Result};
use crate::group::{dft, FiniteAbelianGroup, GroupElement, GroupFunction, Subgroup};
use crate::par::{self, Execution};
use crate::rational;
use crate::report::{FrameBounds, Verdict};
use crate::system::{GaborSystem, GtiSystem};
use crate::talpha::TAlphaEngine;

/// Default limit on `|G|` for dense assembly.
pub const DEFAULT_CAP: usize = 4096;

/// Orders up to which the spectral norm of `S - I` is also reported.
pub const SPECTRAL_NORM_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub cap: usize,
    pub exec: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_CAP,
            exec: Execution::auto(),
        }
    }
}

fn check_cap(group: &FiniteAbelianGroup, cap: usize) -> Result<()> {
    if group.order() > cap {
        Err(GtiError::TooLarge {
            order: group.order(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Mixed frame operator `S f = sum_j sum_p w_p s(Gamma_j) sum_gamma <f, T_gamma g_p> T_gamma h_p`.
pub fn frame_operator(sys_g: &GtiSystem, sys_h: &GtiSystem) -> Result<DMatrix<Complex64>> {
    frame_operator_with(sys_g, sys_h, OracleOptions::default())
}

pub fn frame_operator_with(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    opts: OracleOptions,
) -> Result<DMatrix<Complex64>> {
    sys_g.check_pairable(sys_h)?;
    let group = sys_g.group();
    check_cap(group, opts.cap)?;
    let n = group.order();
    let wg = group.weight_f64();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (lg, lh) in sys_g.layers().iter().zip(sys_h.layers()) {
        let gamma = lg.gamma();
        let reps = gamma.coset_representatives();
        let s = rational::to_f64(&lg.lattice_size());
        for (gg, gh) in lg.generators().iter().zip(lh.generators()) {
            let c = Complex64::new(gg.weight_f64() * s * wg, 0.0);
            let g = gg.function.values();
            let h = gh.function.values();
            // Columns at coset representatives; the rest follows from
            // M[x + gamma, y + gamma] = M[x, y].
            let cols: Vec<Vec<Complex64>> = par::map(opts.exec, &reps, |&r| {
                let conj_g: Vec<(usize, Complex64)> = gamma
                    .elements()
                    .iter()
                    .map(|&e| (e, g[group.sub(r, e)].conj()))
                    .collect();
                (0..n)
                    .map(|x| {
                        conj_g
                            .iter()
                            .map(|&(e, cg)| h[group.sub(x, e)] * cg)
                            .sum::<Complex64>()
                            * c
                    })
                    .collect()
            });
            for (&r, col) in reps.iter().zip(&cols) {
                for &e in gamma.elements() {
                    let y = group.add(r, e);
                    for (x, v) in col.iter().enumerate() {
                        m[(group.add(x, e), y)] += v;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Frame operator of the raw Gabor family `{E_gamma T_lambda g}` against `h`.
pub fn frame_operator_gabor(sys: &GaborSystem) -> Result<DMatrix<Complex64>> {
    check_cap(sys.group(), DEFAULT_CAP)?;
    let n = sys.group().order();
    let (ga, ha, w) = sys.atoms();
    let c = w * sys.group().weight_f64();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (a, b) in ga.iter().zip(&ha) {
        for y in 0..n {
            let cy = a.value(y).conj() * c;
            if cy == Complex64::new(0.0, 0.0) {
                continue;
            }
            for x in 0..n {
                m[(x, y)] += b.value(x) * cy;
            }
        }
    }
    Ok(m)
}

/// Extreme eigenvalues of a Hermitian matrix.
pub fn hermitian_extremes(m: &DMatrix<Complex64>) -> FrameBounds {
    if m.nrows() == 0 {
        return FrameBounds {
            lower: 0.0,
            upper: 0.0,
        };
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let lower = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let upper = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    FrameBounds { lower, upper }
}

/// Moore-Penrose inverse of a Hermitian matrix; eigenvalues below `rel_tol * max |lambda|` count as zero.
pub fn hermitian_pseudo_inverse(m: &DMatrix<Complex64>, rel_tol: f64) -> DMatrix<Complex64> {
    let n = m.nrows();
    if n == 0 {
        return m.clone();
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let peak = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    let inv = eig.eigenvalues.map(|l| {
        if l.abs() > rel_tol * peak {
            Complex64::new(1.0 / l, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&inv) * v.adjoint()
}

/// Optimal frame bounds: extreme eigenvalues of the frame operator.
pub fn frame_bounds_bruteforce(sys: &GtiSystem) -> Result<FrameBounds> {
    Ok(hermitian_extremes(&frame_operator(sys, sys)?))
}

pub fn max_entry_deviation_from_identity(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let target = if i == j { 1.0 } else { 0.0 };
            let r = (m[(i, j)] - target).norm();
            if r.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(r);
        }
    }
    worst
}

pub fn spectral_norm_deviation(m: &DMatrix<Complex64>) -> f64 {
    let d = m - DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
    // sqrt of the top eigenvalue of D* D; avoids the complex SVD.
    let gram = d.adjoint() * &d;
    hermitian_extremes(&gram).upper.max(0.0).sqrt()
}

#[derive(Clone, Debug, Serialize)]
struct DualDetails {
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral_norm: Option<f64>,
}

fn identity_verdict(condition: &str, m: &DMatrix<Complex64>, tol: f64) -> Verdict {
    let residual = max_entry_deviation_from_identity(m);
    let spectral = (m.nrows() <= SPECTRAL_NORM_LIMIT).then(|| spectral_norm_deviation(m));
    Verdict::new(condition, residual, tol).with_details(&DualDetails {
        order: m.nrows(),
        spectral_norm: spectral,
    })
}

/// Passes iff `max |S - I| <= tol` for the mixed frame operator.
pub fn is_dual_bruteforce(sys_g: &GtiSystem, sys_h: &GtiSystem, tol: f64) -> Result<Verdict> {
    let m = frame_operator(sys_g, sys_h)?;
    Ok(identity_verdict("dual-bruteforce", &m, tol))
}

pub fn is_dual_bruteforce_with(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    tol: f64,
    opts: OracleOptions,
) -> Result<Verdict> {
    let m = frame_operator_with(sys_g, sys_h, opts)?;
    Ok(identity_verdict("dual-bruteforce", &m, tol))
}

/// Brute-force duality of the raw Gabor family.
pub fn is_dual_gabor_bruteforce(sys: &GaborSystem, tol: f64) -> Result<Verdict> {
    let m = frame_operator_gabor(sys)?;
    Ok(identity_verdict("gabor-bruteforce", &m, tol))
}

/// `| sum_{h in H} w_H <f1, T_h phi><T_h psi, f2>
///    - sum_omega w_Ghat sum_{alpha in H^perp} f1^(w) conj f2^(w+a) conj phi^(w) psi^(w+a) |`.
pub fn fiber_identity_residual(
    group: &FiniteAbelianGroup,
    h: &Subgroup,
    f1: &GroupFunction,
    f2: &GroupFunction,
    phi: &GroupFunction,
    psi: &GroupFunction,
) -> Result<f64> {
    if !group.same_shape(h.parent()) || [f1, f2, phi, psi].iter().any(|f| f.group() != group) {
        return Err(GtiError::shape("all inputs must live on the same group"));
    }
    let wh = rational::to_f64(&h.lattice_size());
    let lhs: Complex64 = h
        .elements()
        .iter()
        .map(|&e| f1.inner(&phi.translated(e)) * psi.translated(e).inner(f2))
        .sum::<Complex64>()
        * wh;
    let (a1, a2, ap, aq) = (dft(f1), dft(f2), dft(phi), dft(psi));
    let dual = a1.group().clone();
    let perp = h.annihilator();
    let mut rhs = Complex64::new(0.0, 0.0);
    for w in 0..dual.order() {
        let base = a1.value(w) * ap.value(w).conj();
        if base == Complex64::new(0.0, 0.0) {
            continue;
        }
        for &a in perp.elements() {
            let wa = dual.add(w, a);
            rhs += base * a2.value(wa).conj() * aq.value(wa);
        }
    }
    rhs *= dual.weight_f64();
    Ok((lhs - rhs).norm())
}

/// `w_f(x) = sum_j sum_p w_p s(Gamma_j) sum_gamma <T_x f, T_gamma g_p><T_gamma h_p, T_x f>`.
pub fn wf_value(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    f: &GroupFunction,
    x: usize,
) -> Result<Complex64> {
    sys_g.check_pairable(sys_h)?;
    let tf = f.translated(x);
    let mut total = Complex64::new(0.0, 0.0);
    for (lg, lh) in sys_g.layers().iter().zip(sys_h.layers()) {
        let s = rational::to_f64(&lg.lattice_size());
        for (gg, gh) in lg.generators().iter().zip(lh.generators()) {
            let part: Complex64 = lg
                .gamma()
                .elements()
                .iter()
                .map(|&e| {
                    tf.inner(&gg.function.translated(e)) * gh.function.translated(e).inner(&tf)
                })
                .sum();
            total += part * s * gg.weight_f64();
        }
    }
    Ok(total)
}

/// `| w_f(x) - sum_{alpha} alpha(x) w^(alpha) |`, with
/// `w^(alpha) = w_Ghat sum_omega f^(omega) conj f^(omega + alpha) t_alpha(omega)`.
pub fn wf_series_residual(
    sys_g: &GtiSystem,
    sys_h: &GtiSystem,
    f: &GroupFunction,
    x: &GroupElement,
) -> Result<f64> {
    let group = sys_g.group();
    if f.group() != group {
        return Err(GtiError::shape("f must live on the system's group"));
    }
    let xi = group.index_of(x)?;
    let direct = wf_value(sys_g, sys_h, f, xi)?;
    let engine = TAlphaEngine::new(sys_g, sys_h)?;
    let fhat = dft(f);
    let dual = fhat.group();
    let mut series = Complex64::new(0.0, 0.0);
    for &a in engine.alphas() {
        let coeff: Complex64 = (0..dual.order())
            .map(|w| {
                fhat.value(w) * fhat.value(dual.add(w, a)).conj() * engine.eval_unchecked(a, w)
            })
            .sum::<Complex64>()
            * dual.weight_f64();
        series += group.character(xi, a) * coeff;
    }
    Ok((direct - series).norm())
}

/// Frame operator of `{E_{mb} T_{na} g}` against `h` on `C^d`, plain inner product.
pub fn finite_gabor_frame_operator(
    g: &[Complex64],
    h: &[Complex64],
    a: usize,
    b: usize,
) -> Result<DMatrix<Complex64>> {
    let d = g.len();
    check_finite_gabor(d, h.len(), a, b)?;
    let (nn, mm) = (d / a, d / b);
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    let root = |k: usize| crate::group::unit_root(k as u128, d as u128);
    for mi in 0..mm {
        for ni in 0..nn {
            let atom_g: Vec<Complex64> = (0..d)
                .map(|x| root(mi * b * x % d) * g[(x + d - ni * a % d) % d])
                .collect();
            let atom_h: Vec<Complex64> = (0..d)
                .map(|x| root(mi * b * x % d) * h[(x + d - ni * a % d) % d])
                .collect();
            for y in 0..d {
                let cy = atom_g[y].conj();
                for x in 0..d {
                    m[(x, y)] += atom_h[x] * cy;
                }
            }
        }
    }
    Ok(m)
}

pub(crate) fn check_finite_gabor(d: usize, dh: usize, a: usize, b: usize) -> Result<()> {
    if d == 0 || dh != d {
        return Err(GtiError::shape(
            "windows must be nonempty and of equal length",
        ));
    }
    if a == 0 || b == 0 || !d.is_multiple_of(a) || !d.is_multiple_of(b) {
        return Err(GtiError::invalid(format!(
            "a = {a} and b = {b} must divide d = {d}"
        )));
    }
    Ok(())
}

/// Canonical dual window `S_g^+ g` via the pseudo-inverse of the frame operator.
pub fn finite_gabor_canonical_dual(g: &[Complex64], a: usize, b: usize) -> Result<Vec<Complex64>> {
    let s = finite_gabor_frame_operator(g, g, a, b)?;
    let pinv = hermitian_pseudo_inverse(&s, 1e-12);
    let gv = nalgebra::DVector::from_column_slice(g);
    Ok((pinv * gv).iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::system::{Generator, Layer};

    #[test]
    fn onb_operator_is_scaled_identity() {
        for w in [rational::int(1), rational::ratio(1, 3)] {
            let g = FiniteAbelianGroup::new(&[2, 4], w.clone()).unwrap();
            let onb = families::standard_onb(&g);
            let m = frame_operator(&onb, &onb).unwrap();
            let wg = rational::to_f64(&w);
            let b = hermitian_extremes(&m);
            assert!((b.lower - wg).abs() < 1e-12 && (b.upper - wg).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_gamma_reading_of_onb() {
        // Basis {delta_x} as one layer with Gamma = {0}, generator weights 1/|G|.
        let g = FiniteAbelianGroup::cyclic_product(&[6]).unwrap();
        let gens = (0..6)
            .map(|x| Generator::new(GroupFunction::delta(&g, x), rational::ratio(1, 6)).unwrap())
            .collect();
        let sys = GtiSystem::new(
            g.clone(),
            vec![Layer::new(g.trivial_subgroup(), gens).unwrap()],
        )
        .unwrap();
        let m = frame_operator(&sys, &sys).unwrap();
        assert!(max_entry_deviation_from_identity(&m) < 1e-14);
    }

    #[test]
    fn matches_literal_double_sum() {
        let g = FiniteAbelianGroup::new(&[6], rational::ratio(1, 2)).unwrap();
        let f = GroupFunction::from_fn(&g, |x| Complex64::new(x as f64, 1.0 - x as f64 * 0.3));
        let k = GroupFunction::from_fn(&g, |x| Complex64::new(0.5, x as f64));
        let gamma = g.subgroup_from_indices(&[2]);
        let w = rational::ratio(3, 2);
        let sg = GtiSystem::new(
            g.clone(),
            vec![Layer::new(
                gamma.clone(),
                vec![Generator::new(f.clone(), w.clone()).unwrap()],
            )
            .unwrap()],
        )
        .unwrap();
        let sh = GtiSystem::new(
            g.clone(),
            vec![Layer::new(
                gamma.clone(),
                vec![Generator::new(k.clone(), w.clone()).unwrap()],
            )
            .unwrap()],
        )
        .unwrap();
        let m = frame_operator(&sg, &sh).unwrap();
        let s = rational::to_f64(&gamma.lattice_size()) * 1.5;
        for y in 0..6 {
            let e = GroupFunction::delta(&g, y);
            let mut col = GroupFunction::zeros(&g);
            for &c in gamma.elements() {
                let coeff = e.inner(&f.translated(c)) * s;
                col = col.add(&k.translated(c).scaled(coeff)).unwrap();
            }
            for x in 0..6 {
                assert!((m[(x, y)] - col.value(x)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn finite_gabor_dual_reproduces() {
        let g: Vec<Complex64> = (0..12)
            .map(|x| Complex64::new(1.0 + (x as f64).sin(), 0.2 * x as f64))
            .collect();
        let h = finite_gabor_canonical_dual(&g, 3, 4).unwrap();
        let m = finite_gabor_frame_operator(&g, &h, 3, 4).unwrap();
        assert!(max_entry_deviation_from_identity(&m) < 1e-10);
        assert!(finite_gabor_frame_operator(&g, &h, 5, 4).is_err());
    }
}
