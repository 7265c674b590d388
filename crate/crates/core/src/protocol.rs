//! End-to-end purification pipelines.
//!
//! Every pipeline has the same front end: source state, density operator,
//! `C_s` on Alice's spatial modes `a1` then `a2`, then both polarizing beam
//! splitters. They differ in what is post-selected and how the surviving
//! photons are scored:
//!
//! | protocol            | source                | selection            | reported            |
//! |---------------------|-----------------------|----------------------|---------------------|
//! | `TwoPhoton`         | `K⁺(r,φ)|0⟩`          | both up ∪ both down  | branch-weighted `F` |
//! | `FourPhoton`        | `K⁺(r,φ)²|0⟩`         | one photon per mode  | `F` of both pairs   |
//! | `IndependentPairs`  | two Bell pairs        | one photon per mode  | `F` of the kept pair|
//!
//! For independent pairs the four-mode event leaves a four-photon GHZ-type
//! state; the lower pair is measured in the ±45° basis and the upper pair is
//! phase-corrected on odd parity, as in the recurrence protocol it emulates.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    fidelity, postselect, reduce_to_pair, SelectionPattern, TwoQubitState, MIN_PROBABILITY,
};
use crate::channel::ChannelParams;
use crate::error::{check_range, Error, Result};
use crate::fock::{DensityOperator, Polarization, PureState, Spatial, SpatialMode};
use crate::optics::{apply_both_pbs, rotate_polarization_density};
use crate::source::{check_phi, independent_pairs_state, k_plus_state, SourceParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolKind {
    TwoPhoton,
    FourPhoton,
    IndependentPairs,
}

impl std::fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProtocolKind::TwoPhoton => "two-photon",
            ProtocolKind::FourPhoton => "four-photon",
            ProtocolKind::IndependentPairs => "independent-pairs",
        })
    }
}

/// Echo of the inputs of one run. `r` and `phi` are absent for the
/// independent-pairs source, which does not use them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunParams {
    pub protocol: ProtocolKind,
    pub r: Option<f64>,
    pub phi: Option<f64>,
    pub s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProtocolResult {
    pub s: f64,
    /// Polarization fidelity of a single transmitted pair, `(1 + 3s)/4`.
    pub f_in: f64,
    pub p_success: f64,
    pub f_upper: Option<f64>,
    pub f_lower: Option<f64>,
    pub params: RunParams,
}

/// Fidelity of one Bell pair after `C_s` on one photon.
pub fn input_fidelity(s: f64) -> f64 {
    (1.0 + 3.0 * s) / 4.0
}

/// Source state → density operator → `C_s` on `a1` and `a2`.
pub fn transmit(source: &PureState, s: f64) -> Result<DensityOperator> {
    let channel = ChannelParams::alice_side(s)?;
    Ok(channel.apply(&DensityOperator::from_pure(source)?))
}

/// Outcome of a pipeline after the beam splitters.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub p_success: f64,
    pub f_upper: Option<f64>,
    pub f_lower: Option<f64>,
}

/// Four-mode selection, then the fidelity of the `a1-b1` and `a2-b2` pairs.
pub fn four_photon_outcome(after_pbs: &DensityOperator) -> Result<Outcome> {
    let sel = postselect(after_pbs, &SelectionPattern::four_mode())?;
    let Some(cond) = sel.conditional else {
        return Ok(Outcome {
            p_success: sel.probability,
            f_upper: None,
            f_lower: None,
        });
    };
    let upper = fidelity(&reduce_to_pair(&cond, Spatial::Upper, Spatial::Upper)?);
    let lower = fidelity(&reduce_to_pair(&cond, Spatial::Lower, Spatial::Lower)?);
    Ok(Outcome {
        p_success: sel.probability,
        f_upper: Some(upper),
        f_lower: Some(lower),
    })
}

/// Both-up ∪ both-down selection. Each branch is scored on its own pair and
/// the two fidelities are mixed with their conditional weights.
pub fn two_photon_outcome(after_pbs: &DensityOperator) -> Result<Outcome> {
    let up = SelectionPattern::both_up();
    let down = SelectionPattern::both_down();
    let sel = postselect(after_pbs, &up.union(&down))?;
    let Some(cond) = sel.conditional else {
        return Ok(Outcome {
            p_success: sel.probability,
            f_upper: None,
            f_lower: None,
        });
    };
    let mut weight = 0.0;
    let mut weighted = 0.0;
    for (pattern, level) in [(up, Spatial::Upper), (down, Spatial::Lower)] {
        let branch = postselect(&cond, &pattern)?;
        if let Some(c) = branch.conditional {
            weight += branch.probability;
            weighted += branch.probability * fidelity(&reduce_to_pair(&c, level, level)?);
        }
    }
    Ok(Outcome {
        p_success: sel.probability,
        f_upper: Some(weighted / weight),
        f_lower: None,
    })
}

/// Measures the `a2`/`b2` photons of a four-mode conditional state in the
/// ±45° basis and returns the phase-corrected `a1-b1` pair, averaged over
/// outcomes.
pub fn measure_out_lower_pair(four_mode: &DensityOperator) -> Result<TwoQubitState> {
    let rotated = rotate_polarization_density(
        &rotate_polarization_density(four_mode, SpatialMode::A2),
        SpatialMode::B2,
    );
    let mut parts = Vec::with_capacity(4);
    for pa in [Polarization::H, Polarization::V] {
        for pb in [Polarization::H, Polarization::V] {
            let branch = rotated.project(|k| {
                k.get(SpatialMode::A2.mode(pa)) == 1 && k.get(SpatialMode::B2.mode(pb)) == 1
            });
            let w = branch.trace();
            if w <= MIN_PROBABILITY {
                continue;
            }
            let pair = reduce_to_pair(&branch, Spatial::Upper, Spatial::Upper)?;
            let corrected = if pa == pb {
                pair
            } else {
                pair.phase_flip_alice()
            };
            parts.push((w, corrected));
        }
    }
    if parts.is_empty() {
        return Err(Error::ZeroState);
    }
    Ok(TwoQubitState::mix(&parts))
}

pub fn independent_pairs_outcome(after_pbs: &DensityOperator) -> Result<Outcome> {
    let sel = postselect(after_pbs, &SelectionPattern::four_mode())?;
    let f_upper = match sel.conditional {
        Some(cond) => Some(fidelity(&measure_out_lower_pair(&cond)?)),
        None => None,
    };
    Ok(Outcome {
        p_success: sel.probability,
        f_upper,
        f_lower: None,
    })
}

/// The normalized four-mode component of the ideal independent-pairs state
/// after the beam splitters, `(|HHHH⟩ + |VVVV⟩)/√2`.
pub fn independent_pairs_four_mode_state() -> Result<PureState> {
    let pattern = SelectionPattern::four_mode();
    apply_both_pbs(&independent_pairs_state())
        .filter(|k| pattern.matches(k))
        .normalized()
}

fn finish(
    protocol: ProtocolKind,
    r: Option<f64>,
    phi: Option<f64>,
    s: f64,
    outcome: Outcome,
) -> ProtocolResult {
    ProtocolResult {
        s,
        f_in: input_fidelity(s),
        p_success: outcome.p_success,
        f_upper: outcome.f_upper,
        f_lower: outcome.f_lower,
        params: RunParams {
            protocol,
            r,
            phi,
            s,
        },
    }
}

pub fn run_four_photon(r: f64, phi: f64, s: f64) -> Result<ProtocolResult> {
    let source = k_plus_state(&SourceParams::spatially_entangled(r, phi, 2)?)?;
    let rho = apply_both_pbs(&transmit(&source, s)?);
    Ok(finish(
        ProtocolKind::FourPhoton,
        Some(r),
        Some(phi),
        s,
        four_photon_outcome(&rho)?,
    ))
}

pub fn run_two_photon(r: f64, phi: f64, s: f64) -> Result<ProtocolResult> {
    let source = k_plus_state(&SourceParams::spatially_entangled(r, phi, 1)?)?;
    let rho = apply_both_pbs(&transmit(&source, s)?);
    Ok(finish(
        ProtocolKind::TwoPhoton,
        Some(r),
        Some(phi),
        s,
        two_photon_outcome(&rho)?,
    ))
}

pub fn run_independent_pairs(s: f64) -> Result<ProtocolResult> {
    let rho = apply_both_pbs(&transmit(&independent_pairs_state(), s)?);
    Ok(finish(
        ProtocolKind::IndependentPairs,
        None,
        None,
        s,
        independent_pairs_outcome(&rho)?,
    ))
}

pub fn run(protocol: ProtocolKind, r: f64, phi: f64, s: f64) -> Result<ProtocolResult> {
    match protocol {
        ProtocolKind::TwoPhoton => run_two_photon(r, phi, s),
        ProtocolKind::FourPhoton => run_four_photon(r, phi, s),
        ProtocolKind::IndependentPairs => run_independent_pairs(s),
    }
}

/// One round of the two-pair recurrence for Werner-form inputs:
///
/// ```text
/// F' = (F² + ((1−F)/3)²) / (F² + 2F(1−F)/3 + 5((1−F)/3)²)
/// ```
pub fn bennett_reference(f: f64) -> Result<f64> {
    check_range("f", f, 0.25, 1.0, "[1/4, 1]")?;
    let e = (1.0 - f) / 3.0;
    Ok((f * f + e * e) / (f * f + 2.0 * f * e + 5.0 * e * e))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub protocol: ProtocolKind,
    pub r: f64,
    pub phi: f64,
    /// Strictly increasing values of `s` in `[0, 1]`.
    pub grid: Vec<f64>,
}

impl SweepSpec {
    pub fn new(protocol: ProtocolKind, r: f64, phi: f64, grid: Vec<f64>) -> Result<Self> {
        let spec = SweepSpec {
            protocol,
            r,
            phi,
            grid,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("r", self.r, 0.0, 1.0, "[0, 1]")?;
        check_phi(self.phi)?;
        if self.grid.is_empty() {
            return Err(Error::InvalidParams("empty s grid".into()));
        }
        for &s in &self.grid {
            check_range("s", s, 0.0, 1.0, "[0, 1]")?;
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(
                "s grid must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

/// `steps` evenly spaced points from `s_min` to `s_max`, both included.
pub fn uniform_grid(s_min: f64, s_max: f64, steps: usize) -> Result<Vec<f64>> {
    check_range("s-min", s_min, 0.0, 1.0, "[0, 1]")?;
    check_range("s-max", s_max, 0.0, 1.0, "[0, 1]")?;
    if steps < 2 {
        return Err(Error::InvalidParams("steps must be at least 2".into()));
    }
    if s_min >= s_max {
        return Err(Error::InvalidParams("s-min must be below s-max".into()));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                s_max
            } else {
                s_min + (s_max - s_min) * (i as f64) / last
            }
        })
        .collect())
}

/// Runs the protocol at every grid point. Points are evaluated in parallel;
/// the result order follows the grid.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<ProtocolResult>> {
    spec.validate()?;
    spec.grid
        .par_iter()
        .map(|&s| run(spec.protocol, spec.r, spec.phi, s))
        .collect()
}
