//! Second-quantized simulation of polarization entanglement purification
//! driven by a two-pass parametric down-conversion source.
//!
//! The source fires a pump pulse through a crystal twice, so photon pairs are
//! created either into the upper spatial modes `a1`/`b1` or into the lower
//! modes `a2`/`b2` with a fixed relative amplitude `r·e^{iφ}`. Each pair is also
//! polarization entangled. Alice and Bob each combine their two spatial modes
//! on a polarizing beam splitter and post-select on the spatial distribution
//! of the detected photons, which removes bit-flip errors introduced on the
//! way to Alice.
//!
//! Everything is exact linear algebra over the eight optical modes
//! `a1H a1V a2H a2V b1H b1V b2H b2V` at fixed total photon number:
//!
//! - [`fock`]: basis kets, sparse pure states and density operators.
//! - [`source`]: the 2- and 4-photon source states and the two-independent-pairs
//!   reference state.
//! - [`channel`]: the photon-number-preserving polarization depolarizer.
//! - [`optics`]: polarizing beam splitters and polarization rotations.
//! - [`analysis`]: post-selection, two-qubit reduction, fidelity and Schmidt
//!   diagnostics.
//! - [`protocol`]: the end-to-end purification pipelines and sweeps.
//! - [`cli`]: the `run` / `sweep` / `state` command surface.

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod fock;
pub mod optics;
pub mod protocol;
pub mod source;

pub use error::{Error, Result};
pub use fock::{DensityOperator, FockBasis, Mode, PureState, Side, Spatial, SpatialMode};
pub use protocol::{ProtocolKind, ProtocolResult, SweepSpec};
pub use source::{SourceKind, SourceParams};
