//! Initial states of the two-pass down-conversion source.
//!
//! The pair creation operator is
//!
//! ```text
//! K⁺(r, φ) = (a†1H b†1H + a†1V b†1V) + r·e^{iφ} (a†2H b†2H + a†2V b†2V)
//! ```
//!
//! and the emitted `n`-pair component is `K⁺(r, φ)ⁿ |0⟩`, normalized. The
//! coupling strength and the absolute emission probabilities are not modeled:
//! every downstream quantity is conditioned on the photon number.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{check_range, Error, Result};
use crate::fock::{Mode, PureState, Spatial, SpatialMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    /// Pairs from the two crystal passes in coherent superposition.
    SpatiallyEntangled,
    /// One Bell pair in the upper modes and one in the lower modes.
    TwoIndependentPairs,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SourceParams {
    /// Amplitude of the lower-mode pair relative to the upper one, in `[0, 1]`.
    pub r: f64,
    /// Phase of the lower-mode pair, in `[0, 2π)`.
    pub phi: f64,
    /// Number of pairs, 1 or 2.
    pub pairs: u32,
    pub kind: SourceKind,
}

impl SourceParams {
    pub fn spatially_entangled(r: f64, phi: f64, pairs: u32) -> Result<Self> {
        let params = SourceParams {
            r,
            phi,
            pairs,
            kind: SourceKind::SpatiallyEntangled,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn independent_pairs() -> Self {
        SourceParams {
            r: 1.0,
            phi: 0.0,
            pairs: 2,
            kind: SourceKind::TwoIndependentPairs,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_range("r", self.r, 0.0, 1.0, "[0, 1]")?;
        check_phi(self.phi)?;
        match (self.kind, self.pairs) {
            (SourceKind::SpatiallyEntangled, 1 | 2) => Ok(()),
            (SourceKind::TwoIndependentPairs, 2) => Ok(()),
            (kind, pairs) => Err(Error::InvalidParams(format!(
                "{pairs} pairs not supported for {kind:?}"
            ))),
        }
    }

    /// Builds the normalized source state for these parameters.
    pub fn emit(&self) -> Result<PureState> {
        match self.kind {
            SourceKind::SpatiallyEntangled => k_plus_state(self),
            SourceKind::TwoIndependentPairs => {
                self.validate()?;
                Ok(independent_pairs_state())
            }
        }
    }
}

pub(crate) fn check_phi(phi: f64) -> Result<f64> {
    if phi.is_finite() && (0.0..TAU).contains(&phi) {
        Ok(phi)
    } else {
        Err(Error::OutOfRange {
            name: "phi",
            value: phi,
            range: "[0, 2π)",
        })
    }
}

/// `a†_xH b†_xH + a†_xV b†_xV` for one spatial level, scaled by `weight`.
fn bell_pair_terms(spatial: Spatial, weight: Complex64) -> [(Mode, Mode, Complex64); 2] {
    let a = SpatialMode::new(crate::fock::Side::Alice, spatial);
    let b = SpatialMode::new(crate::fock::Side::Bob, spatial);
    [(a.h(), b.h(), weight), (a.v(), b.v(), weight)]
}

fn apply_pair_creation(state: &PureState, terms: &[(Mode, Mode, Complex64)]) -> PureState {
    terms
        .iter()
        .map(|&(a, b, w)| state.create(a).create(b).scaled(w))
        .reduce(|x, y| x.add(&y).expect("same sector"))
        .unwrap_or_else(|| PureState::zero(state.photons() + 2))
}

/// Normalized `K⁺(r, φ)^pairs |0⟩`.
pub fn k_plus_state(params: &SourceParams) -> Result<PureState> {
    if params.kind != SourceKind::SpatiallyEntangled {
        return Err(Error::InvalidParams(
            "k_plus_state needs a spatially entangled source".into(),
        ));
    }
    params.validate()?;
    let lower = Complex64::from_polar(params.r, params.phi);
    let mut terms = Vec::with_capacity(4);
    terms.extend(bell_pair_terms(Spatial::Upper, Complex64::new(1.0, 0.0)));
    terms.extend(bell_pair_terms(Spatial::Lower, lower));

    let mut state = PureState::vacuum();
    for _ in 0..params.pairs {
        state = apply_pair_creation(&state, &terms);
    }
    state.normalized()
}

/// Normalized `(a†1H b†1H + a†1V b†1V)(a†2H b†2H + a†2V b†2V)|0⟩`.
pub fn independent_pairs_state() -> PureState {
    let one = Complex64::new(1.0, 0.0);
    let upper = apply_pair_creation(&PureState::vacuum(), &bell_pair_terms(Spatial::Upper, one));
    apply_pair_creation(&upper, &bell_pair_terms(Spatial::Lower, one))
        .normalized()
        .expect("nonzero by construction")
}
