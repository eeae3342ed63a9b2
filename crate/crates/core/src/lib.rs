pub mod bounds;
pub mod cli;
pub mod composition;
pub mod decomposition;
pub mod embedding;
pub mod error;
pub mod extremal;
pub mod generate;
pub mod game;
pub mod graph;

pub use error::{Budget, HatError, Result};
pub use graph::{Graph, VertexPartition};
