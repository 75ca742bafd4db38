//! Exact computation with translation unitaries, multiplication isometries and
//! coset projections attached to concrete commutative rings.
//!
//! The layers build on each other: [`rings`] supplies element arithmetic,
//! [`ideals`] and [`cosets`] the set combinatorics, [`star_algebra`] the
//! spanning *-algebra with its evaluation oracle, and [`simplicity`],
//! [`spectra`] and [`semigroups`] the higher-level procedures.

pub mod cosets;
pub mod error;
pub mod ideals;
pub mod lattice;
pub mod poly;
pub mod rings;
pub mod scalar;
pub mod semigroups;
pub mod simplicity;
pub mod spectra;
pub mod star_algebra;

pub use error::{Error, Result};
pub use rings::{ArithOp, Elem, Ring, RingDescriptor};
