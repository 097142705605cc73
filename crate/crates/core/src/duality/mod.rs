//! The duality involution, the operators `delta_J` and `delta`, the twisted
//! commutator space, and the facet identity.

mod commutator;
mod facets;
mod ops;

pub use commutator::{verify_duality, CommutatorSpace, DualityReport, DualityRow};
pub use facets::{facet_identity_check, Extended, FacetComplex, FacetReport, FacetRow};
pub use ops::{delta, delta_j, eps_orbits, theta, twist_sign};
