//! Supersymmetric partner Hamiltonians generated by point canonical
//! transformations.
//!
//! The crate builds the coordinate maps, superpotentials and partner
//! potentials for two concrete families (a harmonic-oscillator seed mapped by
//! a square-root transformation, and an oscillator with an energy-dependent
//! linear force), and carries an independent finite-difference eigensolver
//! to check every spectral statement numerically.
//!
//! Units: `ħ = 1`; defaults `m = ω = 1`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod function;
pub mod jet;
pub mod models;
pub mod numerics;
pub mod pct;
pub mod specfun;
pub mod susy;

pub use function::{Interval, RealFunction};
pub use jet::Jet;
pub use numerics::{EigenResult, GridFunction, RealGrid, TridiagonalOperator};
pub use pct::{CoordinateMap, PctKind};
pub use susy::{PartnerPair, Superpotential};
