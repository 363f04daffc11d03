//! Exact cycle search, constructive path lemmas, stability decompositions and
//! Ramsey-type colouring checks for small dense graphs.

pub mod bounds;
pub mod census;
pub mod coloring;
pub mod cycles;
pub mod format;
pub mod graph;
pub mod named;
pub mod paths;
pub mod ramsey;
pub mod rational;
pub mod report;
pub mod stability;
pub mod vertex_set;

pub use coloring::{Color, TwoColoring};
pub use cycles::{Deadline, SpectrumReport};
pub use graph::{Bipartition, Graph, GraphError};
pub use rational::{Check, Expr, Rational, Relation};
pub use report::{CheckReport, NamedCheck};
pub use vertex_set::VertexSet;
