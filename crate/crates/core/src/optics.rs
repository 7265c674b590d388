//! Lossless linear optics on the eight modes.
//!
//! A polarizing beam splitter on one side transmits H and reflects V. With the
//! output ports named after the input spatial modes, that is the mode
//! permutation `x1H ↔ x2H` with the V modes untouched.
//!
//! The polarization rotation is the self-inverse Hadamard-type map
//! `a†H → (a†H + a†V)/√2`, `a†V → (a†H − a†V)/√2` on one spatial mode. It maps
//! a phase flip on the pair onto a bit flip, which the beam splitters can then
//! reject.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::fock::{DensityOperator, FockBasis, ModePermutation, PureState, Side, SpatialMode};

/// States that can be pushed through a mode relabeling.
pub trait ModeTransform: Sized {
    fn permute_modes(&self, perm: &ModePermutation) -> Self;
}

impl ModeTransform for PureState {
    fn permute_modes(&self, perm: &ModePermutation) -> Self {
        self.permuted(perm)
    }
}

impl ModeTransform for DensityOperator {
    fn permute_modes(&self, perm: &ModePermutation) -> Self {
        self.permuted(perm)
    }
}

pub fn pbs_permutation(side: Side) -> ModePermutation {
    let (upper, lower) = match side {
        Side::Alice => (SpatialMode::A1, SpatialMode::A2),
        Side::Bob => (SpatialMode::B1, SpatialMode::B2),
    };
    ModePermutation::swap(upper.h(), lower.h())
}

pub fn apply_pbs<T: ModeTransform>(state: &T, side: Side) -> T {
    state.permute_modes(&pbs_permutation(side))
}

/// Beam splitters on both sides.
pub fn apply_both_pbs<T: ModeTransform>(state: &T) -> T {
    apply_pbs(&apply_pbs(state, Side::Alice), Side::Bob)
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).map(f64::from).product()
}

fn rotate_ket(ket: &FockBasis, target: SpatialMode) -> PureState {
    let (h, v) = (target.h(), target.v());
    let (nh, nv) = ket.polarization_pair(target);
    let rest = ket.with(h, 0).with(v, 0);
    let norm = 1.0 / (factorial(nh) * factorial(nv)).sqrt();
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let to_h = [(h, s), (v, s)];
    let to_v = [(h, s), (v, -s)];
    let mut out = PureState::basis(rest).scaled(Complex64::new(norm, 0.0));
    for _ in 0..nh {
        out = out.apply_creation(&to_h);
    }
    for _ in 0..nv {
        out = out.apply_creation(&to_v);
    }
    out
}

pub fn rotate_polarization(state: &PureState, target: SpatialMode) -> PureState {
    state.linear_map(|k| rotate_ket(k, target))
}

/// The same rotation applied as `U ρ U†`.
pub fn rotate_polarization_density(rho: &DensityOperator, target: SpatialMode) -> DensityOperator {
    rho.conjugated(|k| rotate_ket(k, target))
}

fn phase_sign(ket: &FockBasis, target: SpatialMode) -> f64 {
    if ket.get(target.v()).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `a†V → −a†V` on `target` (a half-wave plate at 0°).
pub fn phase_flip(state: &PureState, target: SpatialMode) -> PureState {
    state.map_amplitudes(|k, a| a * phase_sign(k, target))
}

pub fn phase_flip_density(rho: &DensityOperator, target: SpatialMode) -> DensityOperator {
    rho.map_entries(|k, b, v| [((*k, *b), v * phase_sign(k, target) * phase_sign(b, target))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Mode;
    use crate::source::{k_plus_state, SourceParams};
    use approx::assert_abs_diff_eq;

    fn ket(modes: &[Mode]) -> FockBasis {
        FockBasis::from_modes(modes)
    }

    #[test]
    fn pbs_moves_horizontal_photons_between_levels() {
        let psi = PureState::basis(ket(&[Mode::A1H]));
        assert_eq!(
            apply_pbs(&psi, Side::Alice),
            PureState::basis(ket(&[Mode::A2H]))
        );
        let v = PureState::basis(ket(&[Mode::A1V]));
        assert_eq!(apply_pbs(&v, Side::Alice), v);
        assert_eq!(apply_pbs(&psi, Side::Bob), psi);
    }

    #[test]
    fn ideal_source_states_are_pbs_invariant() {
        for pairs in [1, 2] {
            let psi =
                k_plus_state(&SourceParams::spatially_entangled(1.0, 0.0, pairs).unwrap()).unwrap();
            let out = apply_both_pbs(&psi);
            assert_abs_diff_eq!(out.inner_product(&psi).unwrap().re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pbs_is_an_involution_and_sides_commute() {
        let psi = k_plus_state(&SourceParams::spatially_entangled(0.6, 1.0, 2).unwrap()).unwrap();
        assert_eq!(apply_pbs(&apply_pbs(&psi, Side::Alice), Side::Alice), psi);
        assert_eq!(
            apply_pbs(&apply_pbs(&psi, Side::Alice), Side::Bob),
            apply_pbs(&apply_pbs(&psi, Side::Bob), Side::Alice)
        );
    }

    #[test]
    fn rotation_of_single_photon() {
        let psi = PureState::basis(ket(&[Mode::A1H]));
        let out = rotate_polarization(&psi, SpatialMode::A1);
        assert_abs_diff_eq!(
            out.amplitude(&ket(&[Mode::A1H])).re,
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            out.amplitude(&ket(&[Mode::A1V])).re,
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn rotation_is_self_inverse_on_multiphoton_kets() {
        let psi = PureState::vacuum()
            .create(Mode::A1H)
            .create(Mode::A1H)
            .create(Mode::A1V)
            .create(Mode::B1H)
            .normalized()
            .unwrap();
        let once = rotate_polarization(&psi, SpatialMode::A1);
        assert_abs_diff_eq!(once.norm_sqr(), 1.0, epsilon = 1e-12);
        for (k, _) in once.iter() {
            assert_eq!(k.spatial_total(SpatialMode::A1), 3);
        }
        let twice = rotate_polarization(&once, SpatialMode::A1);
        assert_abs_diff_eq!(twice.inner_product(&psi).unwrap().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rotation_turns_phase_flip_into_bit_flip() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let phase_flipped = PureState::from_terms(
            2,
            [
                (ket(&[Mode::A1H, Mode::B1H]), h),
                (ket(&[Mode::A1V, Mode::B1V]), -h),
            ],
        )
        .unwrap();
        let rotated = rotate_polarization(
            &rotate_polarization(&phase_flipped, SpatialMode::A1),
            SpatialMode::B1,
        );
        let expected = PureState::from_terms(
            2,
            [
                (ket(&[Mode::A1H, Mode::B1V]), h),
                (ket(&[Mode::A1V, Mode::B1H]), h),
            ],
        )
        .unwrap();
        assert_abs_diff_eq!(
            rotated.inner_product(&expected).unwrap().re,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn density_rotation_matches_pure_rotation() {
        let psi = k_plus_state(&SourceParams::spatially_entangled(0.8, 0.4, 2).unwrap()).unwrap();
        let via_pure =
            DensityOperator::from_pure(&rotate_polarization(&psi, SpatialMode::B2)).unwrap();
        let via_rho = rotate_polarization_density(
            &DensityOperator::from_pure(&psi).unwrap(),
            SpatialMode::B2,
        );
        assert!(via_pure.max_abs_diff(&via_rho) < 1e-12);
    }

    #[test]
    fn phase_flip_signs() {
        let psi = PureState::basis(ket(&[Mode::A1V]));
        assert_eq!(
            phase_flip(&psi, SpatialMode::A1)
                .amplitude(&ket(&[Mode::A1V]))
                .re,
            -1.0
        );
        let two = PureState::basis(ket(&[Mode::A1V, Mode::A1V]));
        assert_eq!(phase_flip(&two, SpatialMode::A1), two);
        let rho = DensityOperator::from_pure(&psi).unwrap();
        assert_eq!(phase_flip_density(&rho, SpatialMode::A1), rho);
    }
}
