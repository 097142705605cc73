//! Kazhdan-Lusztig polynomials, the canonical basis, structure constants and
//! two-sided cells.

mod cbasis;
mod cells;
mod kl;

pub use cbasis::CanonicalBasis;
pub use cells::{cells_of, twist_cells, CellPartition, Preorder};
pub use kl::KlTable;
