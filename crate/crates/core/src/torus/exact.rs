//! Values that stay exact when the arithmetic allows it.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use num::complex::Complex64;
use num::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::group::unit_root_rational;
use crate::rational::{self, Rational};

/// Value of a profile piece: either `sqrt(q)` for a nonnegative rational `q`,
/// or a plain complex float.
#[derive(Clone, Debug, PartialEq)]
pub enum Amp {
    Sqrt(Rational),
    Complex(Complex64),
}

impl Amp {
    pub fn zero() -> Self {
        Amp::Sqrt(Rational::zero())
    }

    /// Exact real value `q`; negative values fall back to floats.
    pub fn rational(q: &Rational) -> Self {
        if q.is_negative() {
            Amp::Complex(Complex64::new(rational::to_f64(q), 0.0))
        } else {
            Amp::Sqrt(q * q)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Amp::Sqrt(q) => q.is_zero(),
            Amp::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Amp::Sqrt(q) => Complex64::new(rational::to_f64(q).sqrt(), 0.0),
            Amp::Complex(c) => *c,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// `conj(self) * other`.
    pub fn conj_mul(&self, other: &Amp) -> ExactComplex {
        match (self, other) {
            (Amp::Sqrt(p), Amp::Sqrt(q)) => sqrt_product(p, q),
            _ => ExactComplex::float(self.to_complex().conj() * other.to_complex()),
        }
    }

    /// `|self| |other|`.
    pub fn abs_mul(&self, other: &Amp) -> ExactComplex {
        match (self, other) {
            (Amp::Sqrt(p), Amp::Sqrt(q)) => sqrt_product(p, q),
            _ => ExactComplex::float(Complex64::new(self.abs() * other.abs(), 0.0)),
        }
    }

    /// `|self|^2`.
    pub fn norm_sqr(&self) -> ExactComplex {
        match self {
            Amp::Sqrt(q) => ExactComplex::rational(q.clone()),
            Amp::Complex(c) => ExactComplex::float(Complex64::new(c.norm_sqr(), 0.0)),
        }
    }
}

fn sqrt_product(p: &Rational, q: &Rational) -> ExactComplex {
    let pq = p * q;
    match rational::exact_sqrt(&pq) {
        Some(r) => ExactComplex::rational(r),
        None => ExactComplex::float(Complex64::new(rational::to_f64(&pq).sqrt(), 0.0)),
    }
}

/// `rational + float`; the float part is exactly zero while everything stayed exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactComplex {
    pub rational: Rational,
    pub float: Complex64,
}

impl ExactComplex {
    pub fn zero() -> Self {
        ExactComplex {
            rational: Rational::zero(),
            float: Complex64::new(0.0, 0.0),
        }
    }

    pub fn rational(q: Rational) -> Self {
        ExactComplex {
            rational: q,
            float: Complex64::new(0.0, 0.0),
        }
    }

    pub fn float(c: Complex64) -> Self {
        ExactComplex {
            rational: Rational::zero(),
            float: c,
        }
    }

    pub fn value(&self) -> Complex64 {
        self.float + rational::to_f64(&self.rational)
    }

    pub fn is_exact(&self) -> bool {
        self.float.re == 0.0 && self.float.im == 0.0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.rational.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExactComplex {
            rational: &self.rational * q,
            float: self.float * rational::to_f64(q),
        }
    }

    pub fn sub_rational(&self, q: &Rational) -> Self {
        ExactComplex {
            rational: &self.rational - q,
            float: self.float,
        }
    }

    pub fn norm(&self) -> f64 {
        self.value().norm()
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.rational += &rhs.rational;
        self.float += rhs.float;
    }
}

#[derive(Serialize)]
struct ExactRepr {
    re: f64,
    im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.value();
        ExactRepr {
            re: v.re,
            im: v.im,
            exact: self.is_exact().then(|| rational::format(&self.rational)),
        }
        .serialize(s)
    }
}

/// `sum_k c_k exp(2 pi i theta_k)` with rational `c_k`, `theta_k`, grouped exactly.
///
/// Phases are reduced mod 1 and folded into `[0, 1/2)` using
/// `exp(2 pi i (theta + 1/2)) = -exp(2 pi i theta)`, so cancellations are exact.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseSum {
    terms: BTreeMap<Rational, Rational>,
}

impl PhaseSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coeff: &Rational, theta: &Rational) {
        let half = rational::ratio(1, 2);
        let mut t = rational::frac(theta);
        let mut c = coeff.clone();
        if t >= half {
            t -= &half;
            c = -c;
        }
        let key = t.clone();
        let e = self.terms.entry(t).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact value when every surviving phase is `0`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    pub fn value(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(t, c)| unit_root_rational(t) * rational::to_f64(c))
            .sum()
    }
}
