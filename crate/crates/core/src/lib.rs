//! Finite near-rings, their modules, and prime / classical prime R-ideals.
//!
//! Structures are given by Cayley tables over indices `0..n` with 0 the
//! additive identity. Everything is immutable after validation and every
//! analysis is an exhaustive sweep over enumerated substructures.

pub mod annihilator;
pub mod catalog;
pub mod characterize;
pub mod io;
pub mod msystem;
pub mod nearfield;
pub mod ops;
pub mod prime;
pub mod report;
pub mod set;
pub mod structure;
pub mod substructure;

#[cfg(test)]
pub(crate) mod fixtures;

pub use set::ElementSet;
pub use structure::{
    AdditiveGroup, FiniteModule, FiniteNearRing, ModuleTables, RingAction, RingTables, Strictness, ValidationError,
};
pub use substructure::SubstructureKind;
