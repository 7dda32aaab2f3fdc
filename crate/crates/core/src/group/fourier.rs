use num::complex::Complex64;

use super::{FiniteAbelianGroup, GroupFunction, Subgroup};
use crate::error::{GtiError, Result};

/// Separable transform `F(w) = weight * sum_x f(x) omega(x)^sign`, result on the dual.
fn transform(f: &GroupFunction, conjugate: bool) -> GroupFunction {
    let g = f.group();
    let l = g.exponent();
    let mut cur = f.values().to_vec();
    let mut line = Vec::new();
    for (axis, &d) in g.factors().iter().enumerate() {
        let stride = g.strides()[axis];
        let step = l / d;
        let d = d as usize;
        for base in 0..g.order() {
            if !(base / stride).is_multiple_of(d) {
                continue;
            }
            line.clear();
            line.extend((0..d).map(|n| cur[base + n * stride]));
            for k in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (n, v) in line.iter().enumerate() {
                    let e = ((k * n) % d) as u64 * step;
                    let e = if conjugate { (l - e) % l } else { e };
                    acc += v * g.root(e);
                }
                cur[base + k * stride] = acc;
            }
        }
    }
    let w = g.weight_f64();
    for v in cur.iter_mut() {
        *v *= w;
    }
    GroupFunction::from_vec_unchecked(g.dual(), cur)
}

/// `f^(omega) = w_G sum_x f(x) conj(omega(x))`.
pub fn dft(f: &GroupFunction) -> GroupFunction {
    transform(f, true)
}

/// Inverse of [`dft`]: input lives on the dual, uses the dual weight.
pub fn inverse_dft(fhat: &GroupFunction) -> GroupFunction {
    transform(fhat, false)
}

/// Residual of Weil's formula with the quotient weight `w_G / w_H`:
/// `| int_G f - sum_{cosets} w_{G/H} sum_{h in H} w_H f(x + h) |`.
pub fn weil_check(group: &FiniteAbelianGroup, h: &Subgroup, f: &GroupFunction) -> Result<f64> {
    if !group.same_shape(h.parent()) || !group.same_shape(f.group()) {
        return Err(GtiError::shape(
            "group, subgroup and function must share the group",
        ));
    }
    let wg = group.weight_f64();
    let wh = h.haar_weight_f64();
    let wq = wg / wh;
    let lhs: Complex64 = f.values().iter().sum::<Complex64>() * wg;
    let mut rhs = Complex64::new(0.0, 0.0);
    for x in h.coset_representatives() {
        let inner: Complex64 = h.elements().iter().map(|&e| f.value(group.add(x, e))).sum();
        rhs += inner * wh * wq;
    }
    Ok((lhs - rhs).norm())
}

/// Weil's formula on the Fourier side for `H^perp` (counting measure):
/// `| int_Ghat f^ - sum_{cosets of H^perp} w_Ghat sum_{alpha} f^(omega + alpha) |`.
pub fn weil_check_dual(group: &FiniteAbelianGroup, h: &Subgroup, f: &GroupFunction) -> Result<f64> {
    if !group.same_shape(h.parent()) || !group.same_shape(f.group()) {
        return Err(GtiError::shape(
            "group, subgroup and function must share the group",
        ));
    }
    let fhat = dft(&f.reweighted(group)?);
    let dual = fhat.group();
    let perp = h.annihilator();
    let wd = dual.weight_f64();
    let lhs: Complex64 = fhat.values().iter().sum::<Complex64>() * wd;
    let mut rhs = Complex64::new(0.0, 0.0);
    for w in perp.coset_representatives() {
        let inner: Complex64 = perp
            .elements()
            .iter()
            .map(|&a| fhat.value(dual.add(w, a)))
            .sum();
        rhs += inner * wd;
    }
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn naive_dft(f: &GroupFunction) -> Vec<Complex64> {
        let g = f.group();
        (0..g.order())
            .map(|w| {
                (0..g.order())
                    .map(|x| f.value(x) * g.character(x, w).conj())
                    .sum::<Complex64>()
                    * g.weight_f64()
            })
            .collect()
    }

    fn random_fn(g: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> GroupFunction {
        crate::random::function(rng, g)
    }

    #[test]
    fn delta_and_constant() {
        let g = FiniteAbelianGroup::cyclic_product(&[4]).unwrap();
        let d = dft(&GroupFunction::delta(&g, 0));
        assert!(d.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        let c = dft(&GroupFunction::constant(&g, Complex64::new(1.0, 0.0)));
        assert_eq!(c.value(0), Complex64::new(4.0, 0.0));
        assert!(c.values()[1..].iter().all(|v| v.norm() < 1e-15));
        let back = inverse_dft(&c);
        assert!(back.values().iter().all(|v| (v - 1.0).norm() < 1e-15));
    }

    #[test]
    fn matches_naive_sum_and_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for factors in [&[12u64][..], &[2, 6], &[2, 2, 4], &[3, 3]] {
            let g = FiniteAbelianGroup::new(factors, rational::ratio(2, 3)).unwrap();
            let f = random_fn(&g, &mut rng);
            let fast = dft(&f);
            for (a, b) in fast.values().iter().zip(naive_dft(&f)) {
                assert!((a - b).norm() < 1e-12);
            }
            let back = inverse_dft(&fast);
            assert!(back.max_abs_diff(&f) < 1e-12 * f.max_abs().max(1.0));
            assert_eq!(back.group(), &g);
            assert!((fast.norm_sq() - f.norm_sq()).abs() < 1e-12 * f.norm_sq());
        }
    }

    #[test]
    fn weil_examples() {
        let g = FiniteAbelianGroup::cyclic_product(&[12]).unwrap();
        let h = g.subgroup_from_indices(&[6]);
        let one = GroupFunction::constant(&g, Complex64::new(1.0, 0.0));
        assert!(weil_check(&g, &h, &one).unwrap() < 1e-12);
        assert!(weil_check(&g, &h, &GroupFunction::delta(&g, 5)).unwrap() < 1e-12);
        let g2 = FiniteAbelianGroup::cyclic_product(&[2, 4]).unwrap();
        let h2 = g2.subgroup(&[g2.reduce(&[1, 2]).unwrap()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_fn(&g2, &mut rng);
        assert!(weil_check(&g2, &h2, &f).unwrap() < 1e-12 * f.l1_norm());
        assert!(weil_check_dual(&g2, &h2, &f).unwrap() < 1e-12 * f.l1_norm().max(1.0));
    }
}
