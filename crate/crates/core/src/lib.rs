//! Kazhdan-Lusztig polynomials for the extended affine symmetric group and
//! the canonical bases of the level-one q-deformed Fock space.

pub mod affine;
pub mod error;
pub mod fock;
pub mod kl;
pub mod llt;
pub mod partition;
pub mod qlaurent;
pub mod verify;

pub use affine::{AffinePerm, MinMode, PointR};
pub use error::{Error, Result};
pub use fock::{Engine, FockMatrix, FockVector};
pub use kl::KlTable;
pub use partition::Partition;
pub use qlaurent::LaurentPoly;
