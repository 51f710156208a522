//! Exact algorithms for group-labelled graphs: vertex-arboricity with
//! respect to a value set, extraction of long cycles and subdivisions with
//! prescribed values, extremal constructions, and certificate checking.

pub mod abelian;
pub mod arboricity;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod extraction;
pub mod graph;

pub use abelian::{Elem, Group, Order, SubgroupDesc};
pub use error::{ArbError, ExtractError, GraphError, GroupError, ParseError};
pub use graph::{CycleCert, LGraph, PartitionCert, SubdivCert, ValueSet, Violation};
