//! Detection-pattern post-selection and entanglement diagnostics.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{DensityOperator, FockBasis, ModeSet, PureState, Side, Spatial, SpatialMode};

/// Conditioning is skipped below this success probability.
pub const MIN_PROBABILITY: f64 = 1e-12;

const TRACE_TOLERANCE: f64 = 1e-10;

/// A set of allowed photon totals in the spatial modes `(a1, a2, b1, b2)`.
///
/// Only the spatial totals are inspected, not the polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionPattern {
    allowed: Vec<[u8; 4]>,
}

impl SelectionPattern {
    pub fn new(totals: [u8; 4]) -> Self {
        SelectionPattern {
            allowed: vec![totals],
        }
    }

    /// One photon in each of `a1, a2, b1, b2`.
    pub fn four_mode() -> Self {
        Self::new([1, 1, 1, 1])
    }

    /// One photon in `a1` and one in `b1`.
    pub fn both_up() -> Self {
        Self::new([1, 0, 1, 0])
    }

    /// One photon in `a2` and one in `b2`.
    pub fn both_down() -> Self {
        Self::new([0, 1, 0, 1])
    }

    pub fn union(&self, other: &SelectionPattern) -> Self {
        let mut allowed = self.allowed.clone();
        for t in &other.allowed {
            if !allowed.contains(t) {
                allowed.push(*t);
            }
        }
        SelectionPattern { allowed }
    }

    pub fn matches(&self, ket: &FockBasis) -> bool {
        self.allowed.contains(&ket.spatial_totals())
    }
}

impl fmt::Display for SelectionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .allowed
            .iter()
            .map(|t| format!("({},{},{},{})", t[0], t[1], t[2], t[3]))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub probability: f64,
    /// Renormalized conditional state; `None` when the pattern never fires.
    pub conditional: Option<DensityOperator>,
}

/// Conditions a unit-trace operator on a detection pattern.
pub fn postselect(rho: &DensityOperator, pattern: &SelectionPattern) -> Result<Selection> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::NotUnitTrace(tr));
    }
    let projected = rho.project(|k| pattern.matches(k));
    let probability = projected.trace().clamp(0.0, 1.0);
    let conditional = if probability > MIN_PROBABILITY {
        Some(projected.scaled(1.0 / projected.trace()))
    } else {
        None
    };
    Ok(Selection {
        probability,
        conditional,
    })
}

/// Polarization state of one photon on Alice's side and one on Bob's, over
/// the ordered basis `HH, HV, VH, VV`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    matrix: Matrix4<Complex64>,
}

impl TwoQubitState {
    pub fn from_matrix(matrix: Matrix4<Complex64>) -> Self {
        TwoQubitState { matrix }
    }

    pub fn from_amplitudes(amps: [Complex64; 4]) -> Self {
        let v = nalgebra::Vector4::from(amps);
        TwoQubitState {
            matrix: v * v.adjoint(),
        }
    }

    /// `(|HH⟩ + |VV⟩)/√2`.
    pub fn phi_plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::from_amplitudes([h, z, z, h])
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitState {
            matrix: Matrix4::identity() * Complex64::new(0.25, 0.0),
        }
    }

    /// `s·ψ⁺ + (1 − s)·1/4`.
    pub fn werner(s: f64) -> Self {
        TwoQubitState {
            matrix: Self::phi_plus().matrix * Complex64::new(s, 0.0)
                + Self::maximally_mixed().matrix * Complex64::new(1.0 - s, 0.0),
        }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// `σz` on Alice's qubit.
    pub fn phase_flip_alice(&self) -> Self {
        let z = Matrix4::from_diagonal(
            &nalgebra::Vector4::new(1.0, 1.0, -1.0, -1.0).map(|x| Complex64::new(x, 0.0)),
        );
        TwoQubitState {
            matrix: z * self.matrix * z,
        }
    }

    /// H ↔ V on both qubits.
    pub fn swap_polarizations(&self) -> Self {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(3 - i, 3 - j)] = self.matrix[(i, j)];
            }
        }
        TwoQubitState { matrix: m }
    }

    /// Convex combination `Σ wᵢ ρᵢ` (weights need not be normalized).
    pub fn mix(parts: &[(f64, TwoQubitState)]) -> Self {
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        let mut m = Matrix4::zeros();
        for (w, s) in parts {
            m += s.matrix * Complex64::new(w / total, 0.0);
        }
        TwoQubitState { matrix: m }
    }
}

/// Traces everything but the photons in `a{alice}` and `b{bob}` and reads
/// their polarizations as qubits. The result has unit trace.
pub fn reduce_to_pair(
    rho: &DensityOperator,
    alice: Spatial,
    bob: Spatial,
) -> Result<TwoQubitState> {
    let a = SpatialMode::new(Side::Alice, alice);
    let b = SpatialMode::new(Side::Bob, bob);
    let one_each = |k: &FockBasis| k.spatial_total(a) == 1 && k.spatial_total(b) == 1;
    let others = ModeSet::spatial(a).union(ModeSet::spatial(b)).complement();
    let qubit = |k: &FockBasis| 2 * k.get(a.v()) as usize + k.get(b.v()) as usize;

    let mut m = Matrix4::<Complex64>::zeros();
    for ((k, br), v) in rho.iter() {
        if !one_each(k) || !one_each(br) {
            return Err(Error::NotOnePhotonPerMode {
                alice: a.to_string(),
                bob: b.to_string(),
            });
        }
        if k.restrict(others) == br.restrict(others) {
            m[(qubit(k), qubit(br))] += v;
        }
    }
    let tr = m.trace().re;
    if tr <= 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(TwoQubitState {
        matrix: m / Complex64::new(tr, 0.0),
    })
}

/// `⟨ψ⁺|ρ|ψ⁺⟩` with `ψ⁺ = (|HH⟩ + |VV⟩)/√2`.
pub fn fidelity(rho: &TwoQubitState) -> f64 {
    let m = &rho.matrix;
    (0.5 * (m[(0, 0)] + m[(0, 3)] + m[(3, 0)] + m[(3, 3)]).re).clamp(0.0, 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Schmidt {
    /// Nonzero Schmidt coefficients, descending.
    pub coefficients: Vec<f64>,
    pub entropy_ebits: f64,
}

/// Shannon entropy in bits, with `0·log 0 = 0`.
pub fn entropy_bits(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    probabilities
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Schmidt decomposition of a normalized pure state across a bipartition of
/// the modes.
pub fn schmidt(state: &PureState, alice: ModeSet, bob: ModeSet) -> Result<Schmidt> {
    if !alice.is_disjoint(bob) || alice.union(bob) != ModeSet::ALL {
        return Err(Error::BadPartition);
    }
    let n2 = state.norm_sqr();
    if (n2 - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::NotNormalized(n2));
    }

    let mut rows: BTreeMap<FockBasis, usize> = BTreeMap::new();
    let mut cols: BTreeMap<FockBasis, usize> = BTreeMap::new();
    for (k, _) in state.iter() {
        let next = rows.len();
        rows.entry(k.restrict(alice)).or_insert(next);
        let next = cols.len();
        cols.entry(k.restrict(bob)).or_insert(next);
    }
    let mut m = DMatrix::<Complex64>::zeros(rows.len(), cols.len());
    for (k, amp) in state.iter() {
        m[(rows[&k.restrict(alice)], cols[&k.restrict(bob)])] += amp;
    }

    let mut coefficients: Vec<f64> = m
        .singular_values()
        .iter()
        .copied()
        .filter(|&s| s > 1e-12)
        .collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    let entropy_ebits = entropy_bits(coefficients.iter().map(|s| s * s));
    Ok(Schmidt {
        coefficients,
        entropy_ebits,
    })
}

/// Schmidt decomposition across Alice's and Bob's modes.
pub fn schmidt_alice_bob(state: &PureState) -> Result<Schmidt> {
    schmidt(state, ModeSet::alice(), ModeSet::bob())
}
