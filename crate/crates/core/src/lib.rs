//! Enriched structures on graphs, their fans, tropical moduli cells and toric equations.
//!
//! Everything is exact: cones and fans use arbitrary-precision integers and
//! rationals, and every enumeration is exhaustive at small scale.

pub mod cone;
pub mod corpus;
pub mod enriched;
pub mod error;
pub mod fan;
pub mod graph;
pub mod io;
pub mod label;
pub mod linalg;
pub mod moduli;
pub mod oracle;
pub mod preorder;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Bond, EdgePermutation, MultiGraph, WeightedGraph};
pub use label::{EdgeLabel, EdgeSet, VertexId, VertexSet};
pub use preorder::{Preorder, QuotientPoset};
pub use enriched::{EnrichedGraph, Specialization};
