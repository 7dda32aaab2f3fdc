//! Many independent verifications at once, parallel across systems.

use serde::Serialize;

use crate::error::Result;
use crate::oracle::{self, OracleOptions};
use crate::par::{self, Execution};
use crate::system::GtiSystem;
use crate::talpha;

/// Both verdicts for one dual pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Agreement {
    pub talpha_pass: bool,
    pub talpha_residual: f64,
    pub brute_pass: bool,
    pub brute_residual: f64,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.talpha_pass == self.brute_pass
    }
}

/// Runs the t_alpha test and the brute-force test on every pair.
/// Work inside a pair is sequential; pairs are distributed by `exec`.
pub fn dual_agreement(
    pairs: &[(GtiSystem, GtiSystem)],
    tol: f64,
    exec: Execution,
) -> Result<Vec<Agreement>> {
    let inner = OracleOptions {
        exec: Execution::Sequential,
        ..OracleOptions::default()
    };
    par::map(exec, pairs, |(g, h)| {
        let t = talpha::verify_dual_talpha_with(g, h, tol, Execution::Sequential)?;
        let b = oracle::is_dual_bruteforce_with(g, h, tol, inner)?;
        Ok(Agreement {
            talpha_pass: t.pass,
            talpha_residual: t.max_residual,
            brute_pass: b.pass,
            brute_residual: b.max_residual,
        })
    })
    .into_iter()
    .collect()
}
