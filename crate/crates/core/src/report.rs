//! Result types shared by the oracle, the t_alpha engine and the condition checks.

use serde::{Deserialize, Serialize};

use crate::group::GroupElement;

/// A checked condition: `pass` iff `max_residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub condition: String,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Verdict {
    pub fn new(condition: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Verdict {
            condition: condition.into(),
            pass: passes(max_residual, tolerance),
            max_residual,
            tolerance,
            details: None,
        }
    }

    pub fn with_details<T: Serialize>(mut self, details: &T) -> Self {
        self.details = serde_json::to_value(details).ok();
        self
    }
}

/// NaN residuals never pass.
pub fn passes(residual: f64, tol: f64) -> bool {
    residual <= tol
}

/// Optimal frame bounds of a finite system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_parseval(&self, tol: f64) -> bool {
        (self.lower - 1.0).abs() <= tol && (self.upper - 1.0).abs() <= tol
    }

    pub fn is_frame(&self, tol: f64) -> bool {
        self.lower > tol
    }
}

/// One cell of a residual table.
///
/// For t_alpha reports `alpha` and `omega` are dual-group elements; for the
/// time-side Gabor condition they are `alpha` in `Gamma^perp` and `x` in `G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TAlphaEntry {
    pub alpha: GroupElement,
    pub omega: GroupElement,
    pub re: f64,
    pub im: f64,
    pub target: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TAlphaReport {
    pub condition: String,
    pub entries: Vec<TAlphaEntry>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Total of the discrete LIC sum of the analysing system, when recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lic_total: Option<f64>,
    /// Number of entries before any top-k truncation.
    pub table_size: usize,
}

impl TAlphaReport {
    pub fn from_entries(
        condition: impl Into<String>,
        entries: Vec<TAlphaEntry>,
        tolerance: f64,
    ) -> Self {
        let max_residual = max_residual(entries.iter().map(|e| e.residual));
        TAlphaReport {
            condition: condition.into(),
            table_size: entries.len(),
            entries,
            max_residual,
            tolerance,
            pass: passes(max_residual, tolerance),
            lic_total: None,
        }
    }

    /// Entry with the largest residual (first one in table order on ties).
    pub fn worst(&self) -> Option<&TAlphaEntry> {
        self.entries
            .iter()
            .fold(None, |best: Option<&TAlphaEntry>, e| match best {
                Some(b)
                    if e.residual.partial_cmp(&b.residual) != Some(std::cmp::Ordering::Greater) =>
                {
                    Some(b)
                }
                _ => Some(e),
            })
    }

    /// Keeps the `k` largest residuals, ordered by decreasing residual.
    pub fn top_k(&self, k: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| b.residual.total_cmp(&a.residual));
        entries.truncate(k);
        TAlphaReport {
            entries,
            ..self.clone()
        }
    }

    pub fn verdict(&self) -> Verdict {
        let mut v = Verdict::new(self.condition.clone(), self.max_residual, self.tolerance);
        v.pass = self.pass;
        v
    }
}

/// Maximum that propagates NaN.
pub fn max_residual(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, r| {
        if r.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(r)
        }
    })
}

/// Per-layer term sequence of a summability condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub total: f64,
    pub divergence_flag: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_terms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_partial_sums: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_at: Option<Vec<(GroupElement, f64)>>,
}

/// Terms are flagged as non-decaying when there are at least two of them and
/// the last exceeds this fraction of the largest.
pub const DEFAULT_DECAY_THRESHOLD: f64 = 1e-3;

impl ConditionReport {
    pub fn from_terms(condition: impl Into<String>, terms: Vec<f64>, decay_threshold: f64) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc = 0.0;
        for t in &terms {
            acc += t;
            partial_sums.push(acc);
        }
        let peak = terms.iter().copied().fold(0.0, f64::max);
        let divergence_flag =
            terms.len() >= 2 && peak > 0.0 && terms[terms.len() - 1] > decay_threshold * peak;
        ConditionReport {
            condition: condition.into(),
            terms,
            partial_sums,
            total: acc,
            divergence_flag,
            exact_terms: None,
            exact_partial_sums: None,
            value_at: None,
        }
    }
}
