//! The localization game on oriented digraphs.
//!
//! Cops probe a set of vertices each round and learn the distance from every
//! probe to an invisible robber, who then moves along an out-arc or stays put.
//! This crate computes the localization number `ζ(G)` exactly on small digraphs
//! (a least-fixpoint solver over candidate sets), the metric dimension `β(G)`,
//! several upper and lower bounds, and provides executable cop strategies.

pub mod decomposition;
pub mod digraph;
pub mod distance;
pub mod experiment;
pub mod families;
pub mod game;
pub mod hypergraph;
pub mod lp;
pub mod report;
mod par;
pub mod resolve;
pub mod strategies;
pub mod structure;
pub mod tournament;
pub mod verify;
mod vertex_set;

pub use digraph::{Digraph, GraphError};
pub use distance::{all_pairs_distances, Distance, DistanceMatrix};
pub use par::is_parallel;
pub use vertex_set::VertexSet;
