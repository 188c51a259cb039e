//! Exact machinery for S-characters of finite groups.
//!
//! An S-character is a virtual character that contains the trivial character
//! exactly once and takes non-negative real values. The S-characters of a
//! group `G` are the lattice points of a simplex `S(G)` cut out by the real
//! character table; this crate builds that simplex and enumerates its lattice
//! points with exact arithmetic over real cyclotomic fields.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! drivers and the command-line tool live in the `schar` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ball;
pub mod chartab;
pub mod cyclo;
mod error;
pub mod lattice;
pub mod linalg;
pub mod schar;
pub mod scpoly;

pub use chartab::{CharacterTable, ConjugacyClass, RealCharacterTable, ValidationReport, Violation};
pub use cyclo::{Cyclotomic, Rational, RationalTests, Sign};
pub use error::{Error, Result};
pub use lattice::{ConstraintSystem, EnumerateOptions, Enumerator};
pub use schar::{FusionMap, SCharacter, SearchOptions, SearchReport};
pub use scpoly::{Polarity, SSimplex};
