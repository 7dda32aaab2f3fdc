//! Verification of dual and Parseval frame properties for generalized
//! translation invariant (GTI) systems.
//!
//! The crate works on two levels:
//!
//! * finite abelian groups, where everything can be enumerated: frame
//!   operators are assembled densely ([`oracle`]) and compared against the
//!   characterizing `t_alpha`-equations ([`talpha`]) and the sufficient
//!   conditions of [`conditions`];
//! * the torus and the real line, where generators are step functions with
//!   rational breakpoints and sums are evaluated exactly ([`torus`]).
//!
//! Data-parallel loops (layers, `(alpha, omega)` tables, batches of systems)
//! run on rayon when the `parallel` feature is enabled and fall back to
//! plain iterators otherwise; see [`par::Execution`].

pub mod batch;
pub mod conditions;
pub mod descriptor;
pub mod error;
pub mod families;
pub mod group;
pub mod oracle;
pub mod par;
pub mod random;
pub mod rational;
pub mod report;
pub mod system;
pub mod talpha;
pub mod torus;

pub use error::{GtiError, Result};
pub use group::{FiniteAbelianGroup, GroupElement, GroupFunction, Subgroup};
pub use num::complex::Complex64;
pub use rational::Rational;
pub use report::{FrameBounds, TAlphaReport, Verdict};
pub use system::{GaborSystem, Generator, GtiSystem, Layer};

/// Default verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Tolerance used for exact identities (Plancherel, Weil, fiber identities).
pub const IDENTITY_TOL: f64 = 1e-12;
