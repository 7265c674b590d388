//! Polarization depolarization of a single spatial mode.
//!
//! The channel acts on the `(n_H, n_V)` occupation pair of one spatial mode
//! and never changes its photon number. Written entrywise on a density
//! operator:
//!
//! - an entry whose ket and bra differ on the target pair is set to zero
//!   (this includes coherences between different photon numbers);
//! - an entry diagonal on the target pair with `n = n_H + n_V` photons is
//!   replaced by `1/(n+1) Σ_k |k, n−k⟩⟨k, n−k|` on the target, tensored with
//!   the untouched remainder.
//!
//! `C_s` applies that map with probability `1 − s`.

use crate::error::{check_range, Error, Result};
use crate::fock::{DensityOperator, PureState, SpatialMode};

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelParams {
    /// Probability that the polarization passes undisturbed.
    pub s: f64,
    pub targets: Vec<SpatialMode>,
}

impl ChannelParams {
    pub fn new(s: f64, targets: Vec<SpatialMode>) -> Result<Self> {
        check_range("s", s, 0.0, 1.0, "[0, 1]")?;
        if targets.is_empty() {
            return Err(Error::InvalidParams("no channel targets".into()));
        }
        for (i, t) in targets.iter().enumerate() {
            if targets[..i].contains(t) {
                return Err(Error::InvalidParams(format!(
                    "duplicate channel target {t}"
                )));
            }
        }
        Ok(ChannelParams { s, targets })
    }

    /// The same `C_s` on both of Alice's spatial modes.
    pub fn alice_side(s: f64) -> Result<Self> {
        Self::new(s, vec![SpatialMode::A1, SpatialMode::A2])
    }

    /// Applies `C_s` on each target in order.
    pub fn apply(&self, rho: &DensityOperator) -> DensityOperator {
        self.targets.iter().fold(rho.clone(), |acc, &t| {
            depolarize_partial(&acc, t, self.s).expect("s validated on construction")
        })
    }
}

pub fn depolarize_full(rho: &DensityOperator, target: SpatialMode) -> DensityOperator {
    let (h, v) = (target.h(), target.v());
    rho.map_entries(|ket, bra, value| {
        let pair = ket.polarization_pair(target);
        if pair == bra.polarization_pair(target) {
            let n = pair.0 + pair.1;
            let weight = value / (n as f64 + 1.0);
            (0..=n)
                .map(|k| {
                    (
                        (ket.with(h, k).with(v, n - k), bra.with(h, k).with(v, n - k)),
                        weight,
                    )
                })
                .collect()
        } else {
            Vec::new()
        }
    })
}

pub fn depolarize_partial(
    rho: &DensityOperator,
    target: SpatialMode,
    s: f64,
) -> Result<DensityOperator> {
    check_range("s", s, 0.0, 1.0, "[0, 1]")?;
    if s == 1.0 {
        return Ok(rho.clone());
    }
    Ok(rho
        .scaled(s)
        .add(&depolarize_full(rho, target).scaled(1.0 - s)))
}

/// Exchanges the H and V occupations of `target` in every ket.
pub fn inject_bitflip(state: &PureState, target: SpatialMode) -> PureState {
    let (h, v) = (target.h(), target.v());
    state.map_kets(|k| k.with(h, k.get(v)).with(v, k.get(h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockBasis, Mode, ModeSet};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn projector(ket: FockBasis) -> DensityOperator {
        DensityOperator::from_entries(ModeSet::ALL, [((ket, ket), one())])
    }

    fn ket(modes: &[Mode]) -> FockBasis {
        FockBasis::from_modes(modes)
    }

    #[test]
    fn vacuum_component_is_unchanged() {
        let rho = projector(FockBasis::VACUUM);
        assert_eq!(depolarize_full(&rho, SpatialMode::A1), rho);
    }

    #[test]
    fn one_photon_component_rule() {
        let rho = projector(ket(&[Mode::A1H]));
        let out = depolarize_full(&rho, SpatialMode::A1);
        assert_eq!(out.len(), 2);
        for k in [ket(&[Mode::A1H]), ket(&[Mode::A1V])] {
            assert_abs_diff_eq!(out.entry(&k, &k).re, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn two_photon_component_rule() {
        let rho = projector(ket(&[Mode::A1H, Mode::A1H]));
        let out = depolarize_full(&rho, SpatialMode::A1);
        assert_eq!(out.len(), 3);
        for k in [
            ket(&[Mode::A1H, Mode::A1H]),
            ket(&[Mode::A1H, Mode::A1V]),
            ket(&[Mode::A1V, Mode::A1V]),
        ] {
            assert_abs_diff_eq!(out.entry(&k, &k).re, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn remainder_is_carried_along() {
        // |1_a1H 1_b1V⟩⟨1_a1H 1_b1V| keeps the b1V photon on both sides
        let k = ket(&[Mode::A1H, Mode::B1V]);
        let out = depolarize_full(&projector(k), SpatialMode::A1);
        let flipped = ket(&[Mode::A1V, Mode::B1V]);
        assert_abs_diff_eq!(out.entry(&flipped, &flipped).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn off_diagonal_entries_vanish_including_photon_number_coherence() {
        let a = ket(&[Mode::A1H, Mode::B1H]);
        let b = ket(&[Mode::A2H, Mode::B2H]);
        let c = ket(&[Mode::A1V, Mode::B1H]);
        let rho = DensityOperator::from_entries(
            ModeSet::ALL,
            [
                ((a, b), one()),
                ((b, a), one()),
                ((a, c), one()),
                ((c, a), one()),
            ],
        );
        assert!(depolarize_full(&rho, SpatialMode::A1).is_empty());
    }

    #[test]
    fn partial_endpoints() {
        let psi = PureState::vacuum().create(Mode::A1H).create(Mode::B1H);
        let rho = DensityOperator::from_pure(&psi).unwrap();
        assert_eq!(depolarize_partial(&rho, SpatialMode::A1, 1.0).unwrap(), rho);
        let full = depolarize_full(&rho, SpatialMode::A1);
        assert!(
            depolarize_partial(&rho, SpatialMode::A1, 0.0)
                .unwrap()
                .max_abs_diff(&full)
                < 1e-15
        );
        assert!(depolarize_partial(&rho, SpatialMode::A1, 1.2).is_err());
        assert!(depolarize_partial(&rho, SpatialMode::A1, -0.2).is_err());
    }

    #[test]
    fn bitflip_examples() {
        let psi = PureState::vacuum().create(Mode::A1H);
        let flipped = inject_bitflip(&psi, SpatialMode::A1);
        assert_eq!(flipped, PureState::vacuum().create(Mode::A1V));
        assert_eq!(inject_bitflip(&flipped, SpatialMode::A1), psi);
    }

    #[test]
    fn channel_params_validation() {
        assert!(ChannelParams::new(0.5, vec![]).is_err());
        assert!(ChannelParams::new(0.5, vec![SpatialMode::A1, SpatialMode::A1]).is_err());
        assert!(ChannelParams::new(1.5, vec![SpatialMode::A1]).is_err());
        assert!(ChannelParams::alice_side(0.3).is_ok());
    }
}
