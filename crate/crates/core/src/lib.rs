//! Clusters, least common ancestors and transit functions on DAGs.
//!
//! The crate checks the lca-type properties of DAGs, the axioms of set
//! systems and of k-ary transit functions, builds Hasse diagrams, and
//! cross-validates the known relationships between all of these over
//! enumerated small instances ([`validate`]).

pub mod bitset;
pub mod check;
pub mod dag;
pub mod error;
pub mod hasse;
pub mod lca;
pub mod limits;
pub mod report;
pub mod set_system;
pub mod subsets;
pub mod text;
pub mod transit;
pub mod validate;

pub use bitset::{BitSet, LeafSet, VertexSet};
pub use check::{check_dag, check_sets, check_transit};
pub use dag::{Dag, Lca, Vertex};
pub use error::{Error, Result};
pub use hasse::{build_hasse, HasseDiagram};
pub use report::{Property, PropertyReport, Span, Witness};
pub use set_system::{overlaps, GroundSet, SetSystem};
pub use text::{
    emit_dag, emit_set_system, emit_transit, parse_dag, parse_set_system, parse_transit, ParseError,
};
pub use transit::TransitFunction;
