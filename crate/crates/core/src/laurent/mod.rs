//! Exact scalars: Laurent polynomials over the integers and fraction-free
//! linear algebra on vectors of them.

mod linalg;
mod poly;

pub use linalg::{membership, rank, Echelon};
pub use poly::{LaurentPoly, NotDivisible, ParsePolyError};
