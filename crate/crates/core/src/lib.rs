//! Differentially private counting and bottleneck queries over the shortest
//! paths of a graph.
//!
//! Edge weights are public and fix a unique shortest path between every
//! pair of vertices. Edge attributes are private. The crate releases, for
//! all pairs at once, noisy attribute sums ([`canon::canon_apsd`],
//! [`sssp::sssp_asrq`]) or noisy path minima
//! ([`bottleneck::bottleneck_release`]), together with exact oracles, graph
//! generators and an error-scaling harness.

pub mod bottleneck;
pub mod canon;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod mechanisms;
pub mod oracle;
pub mod release;
pub mod sssp;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, HubSet, PathIndex, SpTree};
pub use mechanisms::{NoiseRng, PrivacyBudget};
pub use release::{CountRelease, PairTable, PairValues, ReleaseRule};
