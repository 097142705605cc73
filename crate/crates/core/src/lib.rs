//! Exact computation in Hecke algebras with character twists: root data and
//! Weyl groups, torsion characters, the canonical basis and its two-sided
//! cells, the Grothendieck-group model, and the duality operators.

pub mod chars;
pub mod duality;
pub mod error;
pub mod grothendieck;
pub mod hecke;
pub mod klcells;
pub mod laurent;
pub mod rootsys;
pub mod suites;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use rootsys::{GenSet, RootDatum, WeylElement, WeylGroup};
