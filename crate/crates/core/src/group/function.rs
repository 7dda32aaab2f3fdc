use num::complex::Complex64;

use super::FiniteAbelianGroup;
use crate::error::{GtiError, Result};

/// Complex function on a finite group, values in canonical element order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(GtiError::shape(format!(
                "function has {} values, group has order {}",
                values.len(),
                group.order()
            )));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(GtiError::invalid("function values must be finite"));
        }
        Ok(GroupFunction { group, values })
    }

    pub(crate) fn from_vec_unchecked(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), group.order());
        GroupFunction { group, values }
    }

    pub fn zeros(group: &FiniteAbelianGroup) -> Self {
        Self::constant(group, Complex64::new(0.0, 0.0))
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        GroupFunction {
            group: group.clone(),
            values: vec![c; group.order()],
        }
    }

    /// Indicator of the element with index `idx`.
    pub fn delta(group: &FiniteAbelianGroup, idx: usize) -> Self {
        let mut f = Self::zeros(group);
        f.values[idx] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(usize) -> Complex64) -> Self {
        GroupFunction {
            group: group.clone(),
            values: (0..group.order()).map(f).collect(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn value(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    /// Same values viewed on a group with the same factors but another weight.
    pub fn reweighted(&self, group: &FiniteAbelianGroup) -> Result<Self> {
        if !self.group.same_shape(group) {
            return Err(GtiError::shape("groups differ"));
        }
        Ok(GroupFunction {
            group: group.clone(),
            values: self.values.clone(),
        })
    }

    /// `<f, g> = w_G sum_x f(x) conj(g(x))`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        s * self.group.weight_f64()
    }

    pub fn norm_sq(&self) -> f64 {
        self.group.weight_f64() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `w_G sum_x |f(x)|`.
    pub fn l1_norm(&self) -> f64 {
        self.group.weight_f64() * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(GroupFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(GroupFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group.same_shape(&other.group) {
            Ok(())
        } else {
            Err(GtiError::shape("functions live on different groups"))
        }
    }

    /// `(T_a f)(x) = f(x - a)`.
    pub fn translated(&self, a: usize) -> Self {
        let g = &self.group;
        GroupFunction {
            group: g.clone(),
            values: (0..g.order()).map(|x| self.values[g.sub(x, a)]).collect(),
        }
    }

    /// `(E_chi f)(x) = chi(x) f(x)`, `chi` an index into the dual.
    pub fn modulated(&self, chi: usize) -> Self {
        let g = &self.group;
        GroupFunction {
            group: g.clone(),
            values: (0..g.order())
                .map(|x| g.character(x, chi) * self.values[x])
                .collect(),
        }
    }
}
