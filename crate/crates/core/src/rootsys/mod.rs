//! Root data, Weyl groups and their reflection subgroups.

mod cartan;
mod datum;
mod subgroup;
mod weyl;

pub use cartan::{CartanType, Family};
pub use datum::{RootDatum, ROOT_BOUND};
pub use subgroup::ReflectionSubgroup;
pub use weyl::{GenSet, WeylElement, WeylGroup, GROUP_BOUND};
