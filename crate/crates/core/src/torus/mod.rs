//! Exact evaluation for systems on `l^2(Z)` and on the real line.

mod exact;
mod examples;
mod janssen;
mod profile;
mod system;
mod wavelet;

pub use exact::{Amp, ExactComplex, PhaseSum};
pub use examples::{
    layered_tiling_torus, log_normalized_profile, reordered_onb_layer, reordered_onb_shift,
    repro_layered_tiling, repro_reordered_onb, shannon_profile, unit_box, LayeredTilingReport,
    ReorderedOnbReport,
};
pub use janssen::{janssen_check, JanssenAlpha, JanssenReport};
pub use profile::{Cell, Domain, Piece, RationalStepProfile, StepFunction};
pub use system::{
    alpha_lic_torus, cc_torus, lic_torus, talpha_torus, verify_torus_talpha, ExactSeries,
    TorusAlphaResidual, TorusCcBounds, TorusGenerator, TorusLayer, TorusSet, TorusSystem,
    TorusTAlpha, TorusTAlphaReport, MAX_ENUMERATION,
};
pub use wavelet::{calderon_continuous, wavelet_talpha_dyadic, CalderonContinuous, WaveletTAlpha};
