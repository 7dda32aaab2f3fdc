//! Piecewise-constant functions with exact rational breakpoints.

use std::collections::BTreeSet;

use num::{One, Signed};
use serde::Serialize;

use super::exact::{Amp, ExactComplex};
use crate::error::{GtiError, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `[0, 1)` with addition mod 1.
    Torus,
    /// The real line; profiles have compact support.
    Real,
}

/// `value` on `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub value: Amp,
}

/// Step function, zero outside its pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalStepProfile {
    domain: Domain,
    pieces: Vec<Piece>,
}

impl RationalStepProfile {
    /// Sorts the pieces and checks that they are nonempty, disjoint and (on the torus) inside `[0, 1)`.
    pub fn new(domain: Domain, mut pieces: Vec<Piece>) -> Result<Self> {
        pieces.retain(|p| !p.value.is_zero());
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        for p in &pieces {
            if p.lo >= p.hi {
                return Err(GtiError::invalid(format!(
                    "empty piece [{}, {})",
                    rational::format(&p.lo),
                    rational::format(&p.hi)
                )));
            }
            if domain == Domain::Torus && (p.lo.is_negative() || p.hi > Rational::one()) {
                return Err(GtiError::invalid("torus pieces must lie in [0, 1)"));
            }
            if let Amp::Complex(c) = &p.value {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(GtiError::invalid("piece values must be finite"));
                }
            }
        }
        for w in pieces.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(GtiError::invalid("pieces overlap"));
            }
        }
        Ok(RationalStepProfile { domain, pieces })
    }

    pub fn zero(domain: Domain) -> Self {
        RationalStepProfile {
            domain,
            pieces: Vec::new(),
        }
    }

    /// `value` on `[lo, hi)`.
    pub fn indicator(domain: Domain, lo: Rational, hi: Rational, value: Amp) -> Result<Self> {
        Self::new(domain, vec![Piece { lo, hi, value }])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Value at `x` (reduced mod 1 on the torus).
    pub fn value_at(&self, x: &Rational) -> Amp {
        let x = match self.domain {
            Domain::Torus => rational::frac(x),
            Domain::Real => x.clone(),
        };
        let i = self.pieces.partition_point(|p| p.lo <= x);
        if i > 0 && x < self.pieces[i - 1].hi {
            self.pieces[i - 1].value.clone()
        } else {
            Amp::zero()
        }
    }

    /// All piece endpoints, sorted.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .pieces
            .iter()
            .flat_map(|p| [p.lo.clone(), p.hi.clone()])
            .collect();
        v.dedup();
        v
    }

    /// Smallest interval containing the support, if nonzero.
    pub fn support(&self) -> Option<(Rational, Rational)> {
        Some((
            self.pieces.first()?.lo.clone(),
            self.pieces.last()?.hi.clone(),
        ))
    }

    pub fn sup_abs(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.value.abs())
            .fold(0.0, f64::max)
    }

    /// Same function with every piece split at the given points.
    pub fn refined(&self, points: &[Rational]) -> Self {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let mut cuts: Vec<Rational> = points
                .iter()
                .filter(|c| **c > p.lo && **c < p.hi)
                .cloned()
                .collect();
            cuts.sort();
            cuts.dedup();
            let mut lo = p.lo.clone();
            for c in cuts {
                pieces.push(Piece {
                    lo: lo.clone(),
                    hi: c.clone(),
                    value: p.value.clone(),
                });
                lo = c;
            }
            pieces.push(Piece {
                lo,
                hi: p.hi.clone(),
                value: p.value.clone(),
            });
        }
        RationalStepProfile {
            domain: self.domain,
            pieces,
        }
    }
}

/// Result of an exact evaluation: values on consecutive half-open cells.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StepFunction {
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    #[serde(with = "rational::serde_string")]
    pub lo: Rational,
    #[serde(with = "rational::serde_string")]
    pub hi: Rational,
    pub value: ExactComplex,
}

impl StepFunction {
    /// Evaluates `f` at the midpoint of every cell cut out of `[lo, hi)` by `breakpoints`,
    /// then merges neighbouring cells with identical values.
    pub fn sweep(
        intervals: &[(Rational, Rational)],
        breakpoints: impl IntoIterator<Item = Rational>,
        f: impl Fn(&Rational) -> ExactComplex,
    ) -> StepFunction {
        let all: BTreeSet<Rational> = breakpoints.into_iter().collect();
        let mut cells: Vec<Cell> = Vec::new();
        for (lo, hi) in intervals {
            let mut edges = vec![lo.clone()];
            edges.extend(
                all.range(lo.clone()..hi.clone())
                    .filter(|b| *b > lo)
                    .cloned(),
            );
            edges.push(hi.clone());
            for w in edges.windows(2) {
                let mid = (&w[0] + &w[1]) / rational::int(2);
                let value = f(&mid);
                match cells.last_mut() {
                    Some(last) if last.hi == w[0] && last.value == value => last.hi = w[1].clone(),
                    _ => cells.push(Cell {
                        lo: w[0].clone(),
                        hi: w[1].clone(),
                        value,
                    }),
                }
            }
        }
        StepFunction { cells }
    }

    pub fn constant(lo: Rational, hi: Rational, value: ExactComplex) -> StepFunction {
        StepFunction {
            cells: vec![Cell { lo, hi, value }],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| c.value.norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `target`.
    pub fn max_deviation(&self, target: &Rational) -> f64 {
        self.cells
            .iter()
            .map(|c| c.value.sub_rational(target).norm())
            .fold(0.0, f64::max)
    }

    /// True when every cell is exactly the rational `q`.
    pub fn is_exactly(&self, q: &Rational) -> bool {
        self.cells
            .iter()
            .all(|c| c.value.is_exact() && &c.value.rational == q)
    }

    pub fn value_at(&self, x: &Rational) -> Option<&ExactComplex> {
        self.cells
            .iter()
            .find(|c| &c.lo <= x && x < &c.hi)
            .map(|c| &c.value)
    }

    pub fn is_exact(&self) -> bool {
        self.cells.iter().all(|c| c.value.is_exact())
    }

    /// Sum of cell values weighted by cell length, exact where possible.
    pub fn integral(&self) -> ExactComplex {
        let mut acc = ExactComplex::zero();
        for c in &self.cells {
            acc += &c.value.scale(&(&c.hi - &c.lo));
        }
        acc
    }
}
