//! Finite abelian groups in invariant-factor form, their duals, subgroups,
//! annihilators and functions on them.
//!
//! Elements are indexed row-major over their coordinates. The dual group
//! shares the invariant factors; the character `omega` acts by
//! `omega(x) = exp(2 pi i sum_k omega_k x_k / d_k)`, which makes the
//! double dual canonically equal to the group itself.

mod fourier;
mod function;
mod smith;

use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

pub use fourier::{dft, inverse_dft, weil_check, weil_check_dual};
pub use function::GroupFunction;
pub use smith::{invariant_factors_from_relations, normalize_factors, smith_diagonal};

/// Hard limit on the number of enumerated elements.
pub const MAX_ENUMERATED_ORDER: usize = 1 << 22;

/// `exp(2 pi i k / n)`, exact at multiples of a quarter turn.
pub fn unit_root(k: u128, n: u128) -> Complex64 {
    assert!(n > 0, "unit_root with n = 0");
    let k = k % n;
    match k.checked_mul(4) {
        Some(four_k) => {
            let q = (four_k + n / 2) / n;
            let r = four_k as i128 - (q * n) as i128;
            let (s, c) = (std::f64::consts::FRAC_PI_2 * (r as f64 / n as f64)).sin_cos();
            let base = Complex64::new(c, s);
            match q % 4 {
                0 => base,
                1 => Complex64::new(-base.im, base.re),
                2 => -base,
                _ => Complex64::new(base.im, -base.re),
            }
        }
        None => {
            let t = std::f64::consts::TAU * (k as f64 / n as f64);
            Complex64::new(t.cos(), t.sin())
        }
    }
}

/// `exp(2 pi i theta)` for a rational `theta`, reduced mod 1 exactly first.
pub fn unit_root_rational(theta: &Rational) -> Complex64 {
    let f = rational::frac(theta);
    match (f.numer().to_u128(), f.denom().to_u128()) {
        (Some(k), Some(n)) => unit_root(k, n),
        _ => {
            let t = std::f64::consts::TAU * rational::to_f64(&f);
            Complex64::new(t.cos(), t.sin())
        }
    }
}

/// Element of a finite abelian group (or of its dual), as reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{d_1} x ... x Z_{d_k}` with `d_i | d_{i+1}` and point mass `weight`.
#[derive(Clone)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    weight: Rational,
    order: usize,
    exponent: u64,
    strides: Vec<usize>,
    roots: Arc<[Complex64]>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAbelianGroup")
            .field("factors", &self.factors)
            .field("weight", &rational::format(&self.weight))
            .finish()
    }
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.weight == other.weight
    }
}

impl FiniteAbelianGroup {
    /// Builds a group from arbitrary cyclic orders, normalizing to invariant factors.
    pub fn new(factors: &[u64], weight: Rational) -> Result<Self> {
        if !weight.is_positive() {
            return Err(GtiError::invalid("haar weight must be positive"));
        }
        let factors = normalize_factors(factors)?;
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .filter(|&o| o <= MAX_ENUMERATED_ORDER)
            .ok_or(GtiError::TooLarge {
                order: usize::MAX,
                cap: MAX_ENUMERATED_ORDER,
            })?;
        let exponent = factors.last().copied().unwrap_or(1);
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let roots: Arc<[Complex64]> = (0..exponent)
            .map(|k| unit_root(k as u128, exponent as u128))
            .collect();
        Ok(FiniteAbelianGroup {
            factors,
            weight,
            order,
            exponent,
            strides,
            roots,
        })
    }

    /// Group with counting measure.
    pub fn cyclic_product(factors: &[u64]) -> Result<Self> {
        Self::new(factors, Rational::one())
    }

    /// Group from a relation presentation `Z^rank / rows(relations)`.
    pub fn from_relations(relations: &[Vec<i64>], rank: usize, weight: Rational) -> Result<Self> {
        let f = invariant_factors_from_relations(relations, rank)?;
        Self::new(&f, weight)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        rational::to_f64(&self.weight)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the element orders (the largest factor).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Point mass of the dual measure, `1 / (w_G |G|)`.
    pub fn dual_weight(&self) -> Rational {
        (self.weight.clone() * rational::int(self.order as i64)).recip()
    }

    pub fn dual(&self) -> Self {
        FiniteAbelianGroup {
            weight: self.dual_weight(),
            ..self.clone()
        }
    }

    /// Same group with a different point mass.
    pub fn with_weight(&self, weight: Rational) -> Result<Self> {
        if !weight.is_positive() {
            return Err(GtiError::invalid("haar weight must be positive"));
        }
        Ok(FiniteAbelianGroup {
            weight,
            ..self.clone()
        })
    }

    /// Same underlying group (ignores weights).
    pub fn same_shape(&self, other: &Self) -> bool {
        self.factors == other.factors
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn coords(&self, idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| ((idx / s) as u64) % d)
            .collect()
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement::new(self.coords(idx))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    /// Index of an element; coordinates must already be reduced.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        if x.coords.len() != self.factors.len() {
            return Err(GtiError::invalid(format!(
                "element {x} has {} coordinates, group has rank {}",
                x.coords.len(),
                self.factors.len()
            )));
        }
        let mut idx = 0usize;
        for ((&c, &d), &s) in x.coords.iter().zip(&self.factors).zip(&self.strides) {
            if c >= d {
                return Err(GtiError::invalid(format!(
                    "element {x} does not lie in the group with factors {:?}",
                    self.factors
                )));
            }
            idx += c as usize * s;
        }
        Ok(idx)
    }

    /// Reduces arbitrary integer coordinates modulo the factors.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(GtiError::invalid(
                "coordinate count differs from group rank",
            ));
        }
        Ok(GroupElement::new(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut idx = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) as u64 % d;
            let y = (b / s) as u64 % d;
            idx += ((x + y) % d) as usize * s;
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut idx = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) as u64 % d;
            idx += ((d - x) % d) as usize * s;
        }
        idx
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `n * a`.
    pub fn mul(&self, n: u64, a: usize) -> usize {
        let mut idx = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) as u64 % d;
            idx += ((x as u128 * n as u128) % d as u128) as usize * s;
        }
        idx
    }

    /// Exponent `k` with `omega(x) = exp(2 pi i k / exponent)`.
    pub fn pairing(&self, x: usize, omega: usize) -> u64 {
        let l = self.exponent;
        let mut k: u128 = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let xi = (x / s) as u64 % d;
            let wi = (omega / s) as u64 % d;
            k += (xi as u128 * wi as u128 % d as u128) * (l / d) as u128;
        }
        (k % l as u128) as u64
    }

    /// `omega(x)`.
    pub fn character(&self, x: usize, omega: usize) -> Complex64 {
        self.roots[self.pairing(x, omega) as usize]
    }

    /// `exp(2 pi i k / exponent)`.
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.exponent) as usize]
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_elements(self.clone(), (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_elements(self.clone(), vec![0])
    }

    /// Smallest subgroup containing `gens`, with the lattice-size weight.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_from_indices(&idx))
    }

    pub fn subgroup_from_indices(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0usize];
        for &g in gens {
            let multiples = self.cyclic_multiples(g);
            let mut next = Vec::with_capacity(elements.len() * multiples.len());
            for &e in &elements {
                for &m in &multiples {
                    let s = self.add(e, m);
                    if !member[s] {
                        member[s] = true;
                        next.push(s);
                    }
                }
            }
            elements.extend(next);
        }
        elements.sort_unstable();
        let mut sub = Subgroup::from_sorted_elements(self.clone(), elements);
        sub.generators = gens.iter().copied().filter(|&g| g != 0).collect();
        sub
    }

    fn cyclic_multiples(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        let mut cur = g;
        while cur != 0 {
            out.push(cur);
            cur = self.add(cur, g);
        }
        out
    }

    /// Order of the element `g`.
    pub fn element_order(&self, g: usize) -> usize {
        self.cyclic_multiples(g).len()
    }
}

/// Subgroup with its enumerated elements and its own point mass.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    generators: Vec<usize>,
    elements: Vec<usize>,
    haar_weight: Rational,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_shape(&other.parent) && self.elements == other.elements
    }
}

impl Subgroup {
    /// Wraps a sorted, closed element list; generators are chosen greedily.
    fn from_sorted_elements(parent: FiniteAbelianGroup, elements: Vec<usize>) -> Self {
        let haar_weight = parent.weight.clone()
            * Rational::new((parent.order as i64).into(), (elements.len() as i64).into());
        let mut member = vec![false; parent.order];
        member[0] = true;
        let mut span = vec![0usize];
        let mut generators = Vec::new();
        for &e in &elements {
            if member[e] {
                continue;
            }
            generators.push(e);
            let multiples = parent.cyclic_multiples(e);
            let mut next = Vec::new();
            for &s in &span {
                for &m in &multiples {
                    let t = parent.add(s, m);
                    if !member[t] {
                        member[t] = true;
                        next.push(t);
                    }
                }
            }
            span.extend(next);
        }
        Subgroup {
            parent,
            generators,
            elements,
            haar_weight,
        }
    }

    /// Subgroup from an explicit element list; fails unless it is closed.
    pub fn from_elements(parent: &FiniteAbelianGroup, elements: &[usize]) -> Result<Self> {
        let mut member = vec![false; parent.order];
        for &e in elements {
            if e >= parent.order {
                return Err(GtiError::invalid("element index outside the group"));
            }
            member[e] = true;
        }
        if !member[0] {
            return Err(GtiError::invalid(
                "element set does not contain the identity",
            ));
        }
        let list: Vec<usize> = (0..parent.order).filter(|&i| member[i]).collect();
        for &a in &list {
            for &b in &list {
                if !member[parent.sub(a, b)] {
                    return Err(GtiError::invalid(
                        "element set is not closed under subtraction",
                    ));
                }
            }
        }
        Ok(Self::from_sorted_elements(parent.clone(), list))
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generators
            .iter()
            .map(|&g| self.parent.element(g))
            .collect()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.parent.order / self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn haar_weight(&self) -> &Rational {
        &self.haar_weight
    }

    pub fn haar_weight_f64(&self) -> f64 {
        rational::to_f64(&self.haar_weight)
    }

    /// Same subgroup, different point mass.
    pub fn with_haar_weight(mut self, w: Rational) -> Self {
        self.haar_weight = w;
        self
    }

    /// Lattice size `s(H)`: measure of a fundamental domain, `w_G [G:H]`.
    pub fn lattice_size(&self) -> Rational {
        self.parent.weight.clone() * rational::int(self.index() as i64)
    }

    /// `H^perp` inside the dual group, with counting measure.
    pub fn annihilator(&self) -> Subgroup {
        let dual = self.parent.dual();
        let elements: Vec<usize> = (0..dual.order)
            .filter(|&w| {
                self.generators
                    .iter()
                    .all(|&x| self.parent.pairing(x, w) == 0)
            })
            .collect();
        Subgroup::from_sorted_elements(dual, elements).with_haar_weight(Rational::one())
    }

    /// Representatives of the cosets `x + H`, first element of each coset in index order.
    pub fn coset_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.parent.order];
        let mut reps = Vec::with_capacity(self.index());
        for x in 0..self.parent.order {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                seen[self.parent.add(x, h)] = true;
            }
        }
        reps
    }

    /// Coset label of every element: position of its representative.
    pub fn coset_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.parent.order];
        let mut next = 0;
        for x in 0..self.parent.order {
            if label[x] != usize::MAX {
                continue;
            }
            for &h in &self.elements {
                label[self.parent.add(x, h)] = next;
            }
            next += 1;
        }
        label
    }

    /// True when the point mass follows the lattice-size rule.
    pub fn has_lattice_weight(&self) -> bool {
        self.haar_weight.clone() * rational::int(self.order() as i64)
            == self.parent.weight.clone() * rational::int(self.parent.order as i64)
            || self.haar_weight.is_zero()
    }
}

/// `H^perp` in the dual of `group`, counting measure.
pub fn annihilator(group: &FiniteAbelianGroup, subgroup: &Subgroup) -> Result<Subgroup> {
    if !group.same_shape(&subgroup.parent) {
        return Err(GtiError::shape("subgroup belongs to a different group"));
    }
    Ok(subgroup.annihilator())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic_product(&[n]).unwrap()
    }

    #[test]
    fn construction() {
        let t = FiniteAbelianGroup::cyclic_product(&[1]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.factors().is_empty());
        let g = FiniteAbelianGroup::cyclic_product(&[2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.dual_weight(), rational::ratio(1, 8));
        assert_eq!(g.dual().dual(), g);
        assert_eq!(z(12).order(), 12);
        assert!(FiniteAbelianGroup::cyclic_product(&[0]).is_err());
        assert!(FiniteAbelianGroup::new(&[3], rational::int(0)).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let g = FiniteAbelianGroup::cyclic_product(&[2, 6, 3]).unwrap();
        assert_eq!(g.factors(), &[6, 6]);
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element(i)).unwrap(), i);
            assert_eq!(g.add(i, g.neg(i)), 0);
        }
        assert!(g.index_of(&GroupElement::new(vec![6, 0])).is_err());
        assert!(g.index_of(&GroupElement::new(vec![1])).is_err());
    }

    #[test]
    fn subgroup_closure() {
        let g = z(12);
        let h = g.subgroup(&[GroupElement::new(vec![3])]).unwrap();
        assert_eq!(h.elements(), &[0, 3, 6, 9]);
        assert_eq!(h.haar_weight(), &rational::int(3));
        assert_eq!(g.subgroup(&[]).unwrap().elements(), &[0]);
        assert_eq!(
            g.subgroup(&[GroupElement::new(vec![1])]).unwrap().order(),
            12
        );
        let two = g
            .subgroup(&[GroupElement::new(vec![4]), GroupElement::new(vec![6])])
            .unwrap();
        assert_eq!(two.elements(), &[0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn annihilators() {
        let g = z(12);
        let h = g.subgroup(&[GroupElement::new(vec![3])]).unwrap();
        let a = annihilator(&g, &h).unwrap();
        assert_eq!(a.elements(), &[0, 4, 8]);
        assert_eq!(a.haar_weight(), &Rational::one());
        assert_eq!(g.whole().annihilator().elements(), &[0]);
        assert_eq!(g.trivial_subgroup().annihilator().order(), 12);
    }

    #[test]
    fn double_annihilator_and_orders() {
        let g = FiniteAbelianGroup::cyclic_product(&[2, 4, 4]).unwrap();
        for a in 0..g.order() {
            for b in (0..g.order()).step_by(5) {
                let h = g.subgroup_from_indices(&[a, b]);
                let perp = h.annihilator();
                assert_eq!(h.order() * perp.order(), g.order());
                assert_eq!(perp.annihilator().elements(), h.elements());
                assert!(h.has_lattice_weight());
            }
        }
    }

    #[test]
    fn from_elements_checks_closure() {
        let g = z(6);
        assert!(Subgroup::from_elements(&g, &[0, 2, 4]).is_ok());
        assert!(Subgroup::from_elements(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, &[2, 4]).is_err());
        let h = Subgroup::from_elements(&g, &[0, 3]).unwrap();
        assert_eq!(h.generator_indices(), &[3]);
    }

    #[test]
    fn cosets() {
        let g = z(12);
        let h = g.subgroup_from_indices(&[4]);
        assert_eq!(h.coset_representatives(), vec![0, 1, 2, 3]);
        let labels = h.coset_labels();
        assert_eq!(labels[5], 1);
        assert_eq!(labels[11], 3);
    }

    #[test]
    fn roots_are_exact_at_quarters() {
        assert_eq!(unit_root(0, 4), Complex64::new(1.0, 0.0));
        assert_eq!(unit_root(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(2, 4), Complex64::new(-1.0, 0.0));
        assert_eq!(unit_root(3, 4), Complex64::new(0.0, -1.0));
        assert_eq!(unit_root(6, 12), Complex64::new(-1.0, 0.0));
        let w = unit_root(1, 6);
        assert!((w - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let q = unit_root_rational(&rational::ratio(-3, 4));
        assert_eq!(q, Complex64::new(0.0, 1.0));
    }

    #[test]
    fn characters_are_homomorphisms() {
        let g = FiniteAbelianGroup::cyclic_product(&[2, 6]).unwrap();
        for x in 0..g.order() {
            for y in 0..g.order() {
                for w in 0..g.order() {
                    let lhs = g.character(g.add(x, y), w);
                    let rhs = g.character(x, w) * g.character(y, w);
                    assert!((lhs - rhs).norm() < 1e-14);
                }
                assert_eq!(g.pairing(x, y), g.pairing(y, x));
            }
        }
    }
}
