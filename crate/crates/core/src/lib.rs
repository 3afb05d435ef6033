//! Small separations in vertex-transitive graphs: boundaries, tubes, cyclic
//! systems of imprimitivity, voltage covers, and checkers for the
//! quantitative bounds that tie them together.

pub mod bounds;
pub mod covers;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod par;
pub mod ringstruct;
pub mod symmetry;
pub mod treewidth;
pub mod tubes;
pub mod uncrossing;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
