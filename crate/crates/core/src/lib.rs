//! Weighted graph centers on special graph classes: local search in graph powers,
//! halfspace cutting on cube-free median graphs, and brute-force oracles.

pub mod biphelly;
pub mod cb;
pub mod cli;
pub mod bridged;
pub mod descent;
pub mod error;
pub mod gen;
pub mod median;
pub mod graph;
pub mod oracle;
pub mod outergate;
pub mod profile;
pub mod radius;
pub mod recognize;
pub mod rmq;

pub use error::{Error, Result};
pub use graph::Graph;
pub use profile::Profile;
pub use recognize::Class;
