//! The algebra `H_n` on the basis `T_w 1_lambda`, and its crossed product
//! with the twist `Theta` given by conjugation with `T_D`.

mod context;
mod elt;
mod text;

pub use context::AlgebraContext;
pub use elt::{BasisKey, HeckeElt};
pub use text::TermRecord;

#[cfg(test)]
mod tests;
