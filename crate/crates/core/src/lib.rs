pub mod alliance;
pub mod bench;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod reduction;
pub mod solve;
pub mod witness;

pub use alliance::{is_global_offensive_r_alliance, is_offensive_r_alliance, AllianceReport};
pub use error::{Error, Result};
pub use graph::{generate, Family, Graph, VertexSet};
