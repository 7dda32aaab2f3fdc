//! Named systems used by the examples, the CLI and the tests.

use num::complex::Complex64;
use num::One;

use crate::error::{GtiError, Result};
use crate::group::{inverse_dft, FiniteAbelianGroup, GroupFunction};
use crate::rational::{self, Rational};
use crate::system::{Generator, GtiSystem, Layer};

/// `{T_gamma delta_0 / sqrt(w_G)}_{gamma in G}`: frame operator `w_G I`.
pub fn standard_onb(group: &FiniteAbelianGroup) -> GtiSystem {
    let g =
        GroupFunction::delta(group, 0).scaled(Complex64::new(1.0 / group.weight_f64().sqrt(), 0.0));
    let layer =
        Layer::new(group.whole(), vec![Generator::unit(g)]).expect("generator lives on the group");
    GtiSystem::new(group.clone(), vec![layer]).expect("layer lives on the group")
}

/// The characters `omega / (w_G |G|)` with trivial translations: a Parseval frame.
pub fn fourier_parseval(group: &FiniteAbelianGroup) -> GtiSystem {
    let scale = 1.0 / (group.weight_f64() * group.order() as f64);
    let gens = (0..group.order())
        .map(|w| {
            Generator::unit(GroupFunction::from_fn(group, |x| {
                group.character(x, w) * scale
            }))
        })
        .collect();
    let layer = Layer::new(group.trivial_subgroup(), gens).expect("generators live on the group");
    GtiSystem::new(group.clone(), vec![layer]).expect("layer lives on the group")
}

/// Finite analogue of the layered dual tiling on `Z_{N^J}`.
///
/// Layer `j = 1..=J` translates along `N^j Z_{N^J}` and has `N^j` generators whose
/// transforms equal `sqrt((N - 1) N^{-j})` on the tile `[p N^{J-j}, (p + 1) N^{J-j})`.
/// The system is tight with bound `1 - N^{-J}`.
pub fn layered_tiling_finite(n: u64, j_max: u32) -> Result<GtiSystem> {
    if n < 2 {
        return Err(GtiError::invalid("N must be at least 2"));
    }
    let order = n
        .checked_pow(j_max)
        .filter(|&o| o as usize <= crate::oracle::DEFAULT_CAP)
        .ok_or(GtiError::TooLarge {
            order: usize::MAX,
            cap: crate::oracle::DEFAULT_CAP,
        })?;
    let group = FiniteAbelianGroup::new(&[order], Rational::one())?;
    let dual = group.dual();
    let mut layers = Vec::new();
    for j in 1..=j_max {
        let nj = n.pow(j);
        let tile = order / nj;
        let gamma = group.subgroup_from_indices(&[(nj % order) as usize]);
        let amp = ((n - 1) as f64 / nj as f64).sqrt();
        let gens = (0..nj)
            .map(|p| {
                let lo = (p * tile) as usize;
                let hi = ((p + 1) * tile) as usize;
                let hat = GroupFunction::from_fn(&dual, |w| {
                    if (lo..hi).contains(&w) {
                        Complex64::new(amp, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                Generator::unit(inverse_dft(&hat))
            })
            .collect();
        layers.push(Layer::new(gamma, gens)?);
    }
    GtiSystem::new(group, layers)
}

/// Closed-form frame bound of [`layered_tiling_finite`]: `1 - N^{-J}`.
pub fn layered_tiling_finite_bound(n: u64, j_max: u32) -> Rational {
    Rational::one() - rational::inv_pow(n, j_max)
}
