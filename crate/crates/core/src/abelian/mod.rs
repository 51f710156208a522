//! Finitely generated abelian groups `Z^r x Z/n1 x ... x Z/nk`.

mod group;
pub mod lattice;
mod parse;
mod subgroup;

pub use group::{Elem, Group, GroupDesc, Order};
pub use subgroup::{closure, Quotient, SubgroupDesc};
