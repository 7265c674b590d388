//! Exact bosonic state algebra over the eight optical modes.
//!
//! Basis kets are occupation-number vectors in the fixed mode order
//! `a1H a1V a2H a2V b1H b1V b2H b2V`. Pure states and density operators are
//! sparse maps keyed by those kets. Ordered maps are used throughout so that
//! iteration order, and therefore every floating-point sum, is reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitudes and matrix entries with modulus below this are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

pub const NUM_MODES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Alice,
    Bob,
}

/// Which pass of the pump created the pair: upper (`1`) or lower (`2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spatial {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    H,
    V,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::Alice => 0,
            Side::Bob => 1,
        }
    }
}

impl Spatial {
    fn index(self) -> usize {
        match self {
            Spatial::Upper => 0,
            Spatial::Lower => 1,
        }
    }

    pub fn other(self) -> Spatial {
        match self {
            Spatial::Upper => Spatial::Lower,
            Spatial::Lower => Spatial::Upper,
        }
    }
}

impl Polarization {
    fn index(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }
}

/// A spatial mode (`a1`, `a2`, `b1` or `b2`) carrying an H and a V mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpatialMode {
    pub side: Side,
    pub spatial: Spatial,
}

impl SpatialMode {
    pub const A1: SpatialMode = SpatialMode::new(Side::Alice, Spatial::Upper);
    pub const A2: SpatialMode = SpatialMode::new(Side::Alice, Spatial::Lower);
    pub const B1: SpatialMode = SpatialMode::new(Side::Bob, Spatial::Upper);
    pub const B2: SpatialMode = SpatialMode::new(Side::Bob, Spatial::Lower);

    /// Detector order used for selection patterns: `a1, a2, b1, b2`.
    pub const ALL: [SpatialMode; 4] = [Self::A1, Self::A2, Self::B1, Self::B2];

    pub const fn new(side: Side, spatial: Spatial) -> Self {
        SpatialMode { side, spatial }
    }

    pub const fn mode(self, pol: Polarization) -> Mode {
        Mode {
            side: self.side,
            spatial: self.spatial,
            pol,
        }
    }

    pub const fn h(self) -> Mode {
        self.mode(Polarization::H)
    }

    pub const fn v(self) -> Mode {
        self.mode(Polarization::V)
    }

    /// Position in [`SpatialMode::ALL`].
    pub fn index(self) -> usize {
        self.side.index() * 2 + self.spatial.index()
    }
}

impl fmt::Display for SpatialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Alice => 'a',
            Side::Bob => 'b',
        };
        let spatial = match self.spatial {
            Spatial::Upper => '1',
            Spatial::Lower => '2',
        };
        write!(f, "{side}{spatial}")
    }
}

/// One of the eight optical modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub side: Side,
    pub spatial: Spatial,
    pub pol: Polarization,
}

impl Mode {
    pub const A1H: Mode = SpatialMode::A1.h();
    pub const A1V: Mode = SpatialMode::A1.v();
    pub const A2H: Mode = SpatialMode::A2.h();
    pub const A2V: Mode = SpatialMode::A2.v();
    pub const B1H: Mode = SpatialMode::B1.h();
    pub const B1V: Mode = SpatialMode::B1.v();
    pub const B2H: Mode = SpatialMode::B2.h();
    pub const B2V: Mode = SpatialMode::B2.v();

    /// Canonical order; a ket's occupation vector is indexed by it.
    pub const ALL: [Mode; NUM_MODES] = [
        Self::A1H,
        Self::A1V,
        Self::A2H,
        Self::A2V,
        Self::B1H,
        Self::B1V,
        Self::B2H,
        Self::B2V,
    ];

    pub fn index(self) -> usize {
        self.side.index() * 4 + self.spatial.index() * 2 + self.pol.index()
    }

    pub fn from_index(i: usize) -> Mode {
        Self::ALL[i]
    }

    pub fn spatial_mode(self) -> SpatialMode {
        SpatialMode::new(self.side, self.spatial)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pol = match self.pol {
            Polarization::H => 'H',
            Polarization::V => 'V',
        };
        write!(f, "{}{pol}", self.spatial_mode())
    }
}

/// A subset of the eight modes, stored as a bitmask over [`Mode::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeSet(u8);

impl ModeSet {
    pub const EMPTY: ModeSet = ModeSet(0);
    pub const ALL: ModeSet = ModeSet(0xff);

    pub fn alice() -> ModeSet {
        Mode::ALL
            .iter()
            .filter(|m| m.side == Side::Alice)
            .copied()
            .collect()
    }

    pub fn bob() -> ModeSet {
        Self::alice().complement()
    }

    pub fn spatial(sm: SpatialMode) -> ModeSet {
        [sm.h(), sm.v()].into_iter().collect()
    }

    pub fn contains(self, mode: Mode) -> bool {
        self.0 & (1 << mode.index()) != 0
    }

    pub fn insert(&mut self, mode: Mode) {
        self.0 |= 1 << mode.index();
    }

    pub fn complement(self) -> ModeSet {
        ModeSet(!self.0)
    }

    pub fn union(self, other: ModeSet) -> ModeSet {
        ModeSet(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: ModeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Mode> {
        Mode::ALL.into_iter().filter(move |m| self.contains(*m))
    }
}

impl FromIterator<Mode> for ModeSet {
    fn from_iter<I: IntoIterator<Item = Mode>>(iter: I) -> Self {
        let mut set = ModeSet::EMPTY;
        for m in iter {
            set.insert(m);
        }
        set
    }
}

/// A relabeling of modes: a photon in mode `i` moves to mode `target[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModePermutation([usize; NUM_MODES]);

impl ModePermutation {
    pub fn identity() -> Self {
        ModePermutation([0, 1, 2, 3, 4, 5, 6, 7])
    }

    /// Exchanges two modes.
    pub fn swap(a: Mode, b: Mode) -> Self {
        let mut p = Self::identity();
        p.0.swap(a.index(), b.index());
        p
    }

    /// `self` first, then `next`.
    pub fn then(self, next: ModePermutation) -> Self {
        let mut out = [0; NUM_MODES];
        for (i, o) in out.iter_mut().enumerate() {
            *o = next.0[self.0[i]];
        }
        ModePermutation(out)
    }

    pub fn target(&self, mode: Mode) -> Mode {
        Mode::from_index(self.0[mode.index()])
    }
}

/// An occupation-number basis ket over the eight modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockBasis([u8; NUM_MODES]);

impl FockBasis {
    pub const VACUUM: FockBasis = FockBasis([0; NUM_MODES]);

    pub fn new(occupations: [u8; NUM_MODES]) -> Self {
        FockBasis(occupations)
    }

    /// One photon in each listed mode (repeats raise the occupation).
    pub fn from_modes(modes: &[Mode]) -> Self {
        let mut occ = [0; NUM_MODES];
        for m in modes {
            occ[m.index()] += 1;
        }
        FockBasis(occ)
    }

    pub fn occupations(&self) -> [u8; NUM_MODES] {
        self.0
    }

    pub fn get(&self, mode: Mode) -> u8 {
        self.0[mode.index()]
    }

    pub fn with(mut self, mode: Mode, n: u8) -> Self {
        self.0[mode.index()] = n;
        self
    }

    pub fn photons(&self) -> u32 {
        self.0.iter().map(|&n| n as u32).sum()
    }

    /// `(n_H, n_V)` of a spatial mode.
    pub fn polarization_pair(&self, sm: SpatialMode) -> (u8, u8) {
        (self.get(sm.h()), self.get(sm.v()))
    }

    pub fn spatial_total(&self, sm: SpatialMode) -> u8 {
        self.get(sm.h()) + self.get(sm.v())
    }

    /// Photon totals in `a1, a2, b1, b2`.
    pub fn spatial_totals(&self) -> [u8; 4] {
        SpatialMode::ALL.map(|sm| self.spatial_total(sm))
    }

    /// Zeroes every mode outside `keep`.
    pub fn restrict(&self, keep: ModeSet) -> FockBasis {
        let mut occ = self.0;
        for m in keep.complement().iter() {
            occ[m.index()] = 0;
        }
        FockBasis(occ)
    }

    pub fn permuted(&self, perm: &ModePermutation) -> FockBasis {
        let mut occ = [0; NUM_MODES];
        for m in Mode::ALL {
            occ[perm.target(m).index()] = self.get(m);
        }
        FockBasis(occ)
    }
}

impl fmt::Display for FockBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::VACUUM {
            return f.write_str("vac");
        }
        let mut first = true;
        for m in Mode::ALL {
            let n = self.get(m);
            if n == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if n == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}^{n}")?;
            }
        }
        Ok(())
    }
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Complex64>) {
    map.retain(|_, v| v.norm() >= PRUNE_THRESHOLD);
}

/// A (not necessarily normalized) pure state of fixed total photon number.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    photons: u32,
    amps: BTreeMap<FockBasis, Complex64>,
}

impl PureState {
    pub fn vacuum() -> Self {
        Self::basis(FockBasis::VACUUM)
    }

    pub fn zero(photons: u32) -> Self {
        PureState {
            photons,
            amps: BTreeMap::new(),
        }
    }

    pub fn basis(ket: FockBasis) -> Self {
        PureState {
            photons: ket.photons(),
            amps: BTreeMap::from([(ket, Complex64::new(1.0, 0.0))]),
        }
    }

    /// Sums repeated kets. Every ket must carry `photons` photons.
    pub fn from_terms<I>(photons: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FockBasis, Complex64)>,
    {
        let mut amps = BTreeMap::new();
        for (ket, amp) in terms {
            if ket.photons() != photons {
                return Err(Error::SectorMismatch {
                    left: photons,
                    right: ket.photons(),
                });
            }
            *amps.entry(ket).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        prune(&mut amps);
        Ok(PureState { photons, amps })
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitude(&self, ket: &FockBasis) -> Complex64 {
        self.amps.get(ket).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockBasis, &Complex64)> {
        self.amps.iter()
    }

    /// Applies `a†_mode`: `|..n..⟩ → √(n+1) |..n+1..⟩`.
    pub fn create(&self, mode: Mode) -> PureState {
        self.apply_creation(&[(mode, Complex64::new(1.0, 0.0))])
    }

    /// Applies the linear combination `Σ c_m a†_m` of creation operators.
    pub fn apply_creation(&self, combo: &[(Mode, Complex64)]) -> PureState {
        let mut amps = BTreeMap::new();
        for (ket, amp) in &self.amps {
            for &(mode, c) in combo {
                let n = ket.get(mode);
                let raised = ket.with(mode, n + 1);
                let factor = ((n as f64) + 1.0).sqrt();
                *amps.entry(raised).or_insert(Complex64::new(0.0, 0.0)) += amp * c * factor;
            }
        }
        prune(&mut amps);
        PureState {
            photons: self.photons + 1,
            amps,
        }
    }

    pub fn scaled(&self, c: Complex64) -> PureState {
        let mut amps: BTreeMap<_, _> = self.amps.iter().map(|(k, v)| (*k, v * c)).collect();
        prune(&mut amps);
        PureState {
            photons: self.photons,
            amps,
        }
    }

    pub fn add(&self, other: &PureState) -> Result<PureState> {
        self.check_sector(other)?;
        let mut amps = self.amps.clone();
        for (k, v) in &other.amps {
            *amps.entry(*k).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        prune(&mut amps);
        Ok(PureState {
            photons: self.photons,
            amps,
        })
    }

    fn check_sector(&self, other: &PureState) -> Result<()> {
        if self.photons == other.photons {
            Ok(())
        } else {
            Err(Error::SectorMismatch {
                left: self.photons,
                right: other.photons,
            })
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &PureState) -> Result<Complex64> {
        self.check_sector(other)?;
        Ok(self
            .amps
            .iter()
            .filter_map(|(k, x)| other.amps.get(k).map(|y| x.conj() * y))
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<PureState> {
        let n2 = self.norm_sqr();
        if n2 <= 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(self.scaled(Complex64::new(1.0 / n2.sqrt(), 0.0)))
    }

    pub fn permuted(&self, perm: &ModePermutation) -> PureState {
        PureState {
            photons: self.photons,
            amps: self
                .amps
                .iter()
                .map(|(k, v)| (k.permuted(perm), *v))
                .collect(),
        }
    }

    /// Applies a photon-number-preserving bijection on kets.
    pub fn map_kets(&self, f: impl Fn(&FockBasis) -> FockBasis) -> PureState {
        PureState {
            photons: self.photons,
            amps: self.amps.iter().map(|(k, v)| (f(k), *v)).collect(),
        }
    }

    /// Multiplies each amplitude by a ket-dependent phase.
    pub fn map_amplitudes(&self, f: impl Fn(&FockBasis, Complex64) -> Complex64) -> PureState {
        let mut amps: BTreeMap<_, _> = self.amps.iter().map(|(k, v)| (*k, f(k, *v))).collect();
        prune(&mut amps);
        PureState {
            photons: self.photons,
            amps,
        }
    }

    /// Keeps only kets satisfying `pred` (an unnormalized projection).
    pub fn filter(&self, pred: impl Fn(&FockBasis) -> bool) -> PureState {
        PureState {
            photons: self.photons,
            amps: self
                .amps
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// Linear extension of a map from basis kets to states.
    pub fn linear_map(&self, f: impl Fn(&FockBasis) -> PureState) -> PureState {
        let mut amps = BTreeMap::new();
        let mut photons = self.photons;
        for (ket, amp) in &self.amps {
            let image = f(ket);
            photons = image.photons;
            for (k, v) in image.amps {
                *amps.entry(k).or_insert(Complex64::new(0.0, 0.0)) += amp * v;
            }
        }
        prune(&mut amps);
        PureState { photons, amps }
    }
}

/// Standard bosonic creation operator `a†_mode`.
pub fn create(mode: Mode, state: &PureState) -> PureState {
    state.create(mode)
}

pub fn inner_product(x: &PureState, y: &PureState) -> Result<Complex64> {
    x.inner_product(y)
}

pub fn to_density(state: &PureState) -> Result<DensityOperator> {
    DensityOperator::from_pure(state)
}

pub fn partial_trace(rho: &DensityOperator, keep: ModeSet) -> DensityOperator {
    rho.partial_trace(keep)
}

/// A Hermitian operator on the Fock space of a subset of the modes.
///
/// Conditional (post-selected but not renormalized) states are represented
/// with trace below one. Reduced operators produced by [`partial_trace`] need
/// not have a fixed photon number, so the sector is derived on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    modes: ModeSet,
    entries: BTreeMap<(FockBasis, FockBasis), Complex64>,
}

impl DensityOperator {
    pub fn zero(modes: ModeSet) -> Self {
        DensityOperator {
            modes,
            entries: BTreeMap::new(),
        }
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        let n2 = state.norm_sqr();
        if n2 <= 0.0 {
            return Err(Error::ZeroState);
        }
        let mut entries = BTreeMap::new();
        for (k, x) in &state.amps {
            for (b, y) in &state.amps {
                entries.insert((*k, *b), x * y.conj() / n2);
            }
        }
        prune(&mut entries);
        Ok(DensityOperator {
            modes: ModeSet::ALL,
            entries,
        })
    }

    pub fn from_entries<I>(modes: ModeSet, entries: I) -> Self
    where
        I: IntoIterator<Item = ((FockBasis, FockBasis), Complex64)>,
    {
        let mut map = BTreeMap::new();
        for (key, v) in entries {
            *map.entry(key).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        prune(&mut map);
        DensityOperator {
            modes,
            entries: map,
        }
    }

    /// The modes this operator acts on.
    pub fn modes(&self) -> ModeSet {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, ket: &FockBasis, bra: &FockBasis) -> Complex64 {
        self.entries.get(&(*ket, *bra)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(FockBasis, FockBasis), &Complex64)> {
        self.entries.iter()
    }

    pub fn trace(&self) -> f64 {
        self.entries
            .iter()
            .filter(|((k, b), _)| k == b)
            .fold(0.0, |acc, (_, v)| acc + v.re)
    }

    /// The common photon number of every ket and bra, if there is one.
    pub fn sector(&self) -> Option<u32> {
        let mut kets = self
            .entries
            .keys()
            .flat_map(|(k, b)| [k.photons(), b.photons()]);
        let first = kets.next()?;
        kets.all(|n| n == first).then_some(first)
    }

    pub fn scaled(&self, c: f64) -> DensityOperator {
        Self::from_entries(self.modes, self.entries.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &DensityOperator) -> DensityOperator {
        Self::from_entries(
            self.modes.union(other.modes),
            self.entries
                .iter()
                .chain(other.entries.iter())
                .map(|(k, v)| (*k, *v)),
        )
    }

    /// Renormalizes to unit trace.
    pub fn normalized(&self) -> Result<DensityOperator> {
        let t = self.trace();
        if t <= 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(self.scaled(1.0 / t))
    }

    /// Traces out every mode not in `keep`.
    pub fn partial_trace(&self, keep: ModeSet) -> DensityOperator {
        let traced = keep.complement();
        Self::from_entries(
            self.modes & keep,
            self.entries
                .iter()
                .filter(|((k, b), _)| k.restrict(traced) == b.restrict(traced))
                .map(|((k, b), v)| ((k.restrict(keep), b.restrict(keep)), *v)),
        )
    }

    pub fn permuted(&self, perm: &ModePermutation) -> DensityOperator {
        DensityOperator {
            modes: self.modes,
            entries: self
                .entries
                .iter()
                .map(|((k, b), v)| ((k.permuted(perm), b.permuted(perm)), *v))
                .collect(),
        }
    }

    /// `ρ → U ρ U†` where `U` is given by its action on basis kets.
    pub fn conjugated(&self, u: impl Fn(&FockBasis) -> PureState) -> DensityOperator {
        let mut cache: BTreeMap<FockBasis, PureState> = BTreeMap::new();
        for (k, b) in self.entries.keys() {
            cache.entry(*k).or_insert_with(|| u(k));
            cache.entry(*b).or_insert_with(|| u(b));
        }
        let mut out = BTreeMap::new();
        for ((k, b), v) in &self.entries {
            for (k2, x) in &cache[k].amps {
                for (b2, y) in &cache[b].amps {
                    *out.entry((*k2, *b2)).or_insert(Complex64::new(0.0, 0.0)) += v * x * y.conj();
                }
            }
        }
        prune(&mut out);
        DensityOperator {
            modes: self.modes,
            entries: out,
        }
    }

    /// Keeps entries whose ket and bra both satisfy `pred` (`P ρ P`).
    pub fn project(&self, pred: impl Fn(&FockBasis) -> bool) -> DensityOperator {
        DensityOperator {
            modes: self.modes,
            entries: self
                .entries
                .iter()
                .filter(|((k, b), _)| pred(k) && pred(b))
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// Entry-wise rewrite; the closure may return any number of images.
    pub fn map_entries<I>(
        &self,
        f: impl Fn(&FockBasis, &FockBasis, Complex64) -> I,
    ) -> DensityOperator
    where
        I: IntoIterator<Item = ((FockBasis, FockBasis), Complex64)>,
    {
        Self::from_entries(
            self.modes,
            self.entries.iter().flat_map(|((k, b), v)| f(k, b, *v)),
        )
    }

    /// `⟨ψ|ρ|ψ⟩` (real part).
    pub fn expectation(&self, psi: &PureState) -> f64 {
        self.entries
            .iter()
            .map(|((k, b), v)| psi.amplitude(k).conj() * v * psi.amplitude(b))
            .sum::<Complex64>()
            .re
    }

    /// Sorted union of all kets and bras in the support.
    pub fn support(&self) -> Vec<FockBasis> {
        let set: BTreeSet<FockBasis> = self.entries.keys().flat_map(|(k, b)| [*k, *b]).collect();
        set.into_iter().collect()
    }

    /// Dense matrix over [`DensityOperator::support`].
    pub fn to_dense(&self) -> (Vec<FockBasis>, DMatrix<Complex64>) {
        let basis = self.support();
        let index: BTreeMap<FockBasis, usize> =
            basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut m = DMatrix::zeros(basis.len(), basis.len());
        for ((k, b), v) in &self.entries {
            m[(index[k], index[b])] = *v;
        }
        (basis, m)
    }

    /// Eigenvalues of the Hermitian part, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (basis, m) = self.to_dense();
        if basis.is_empty() {
            return Vec::new();
        }
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().last().copied().unwrap_or(0.0)
    }

    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|((k, b), v)| (v - self.entry(b, k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        let keys: BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .map(|(k, b)| (self.entry(k, b) - other.entry(k, b)).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::BitAnd for ModeSet {
    type Output = ModeSet;

    fn bitand(self, rhs: ModeSet) -> ModeSet {
        ModeSet(self.0 & rhs.0)
    }
}
