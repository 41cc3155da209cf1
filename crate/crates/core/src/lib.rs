//! Exact eccentricity-based invariants on trees, edge-grafting rewrites,
//! named extremal families and isomorph-free enumeration of free trees.

pub mod enumeration;
pub mod families;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod parameters;
pub mod rational;
pub mod transforms;

pub use enumeration::{canonical_code, free_trees, is_isomorphic, CanonicalCode, FreeTrees};
pub use graph::{bfs_distances, diametral_path, eccentricity_profile, EccentricityProfile, GraphError, Tree, Vertex};
pub use invariants::{all_invariants, compute_invariant, ree, InvariantError, InvariantKind};
pub use parameters::{bipartition_sizes, domination_number, matching_number, pendant_count, ParamClass};
pub use rational::ExactRational;
