//! Heat kernel pagerank and local graph clustering.
//!
//! * [`graph`]: immutable graphs, volumes, boundaries and Cheeger ratios.
//! * [`hkpr`]: exact and sampled heat kernel pagerank, personalized PageRank.
//! * [`sweep`]: probability-per-degree sweeps and the clustering algorithm.
//! * [`spectral`]: Dirichlet eigenvalues of vertex subsets.
//! * [`gen`]: seeded random graph models.
//! * [`metrics`]: errors between exact and approximate vectors and rankings.

pub mod error;
pub mod gen;
pub mod graph;
pub mod hkpr;
pub mod metrics;
pub mod rng;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
