//! Exact homological algebra over ℤ, 𝔽_p and their finite group rings:
//! truncated free resolutions, stabilization, and explicit certified chain
//! homotopy equivalences between stabilized resolutions of the same module.

pub mod chain;
pub mod cli;
pub mod error;
pub mod format;
pub mod linalg;
pub mod matrix;
pub mod resolution;
pub mod ring;
pub mod stabilize;

pub use chain::{ChainComplex, ChainHomotopy, ChainMap, Failure, HomotopyEquivalence, Validation};
pub use error::{Error, Result};
pub use linalg::ModuleInvariants;
pub use matrix::Matrix;
pub use resolution::{ModulePresentation, Orientation, TruncatedResolution};
pub use ring::{BaseRing, Elem, GroupTable, Ring};
pub use stabilize::{EquivalenceCertificate, Side, StabilizerLadder};
