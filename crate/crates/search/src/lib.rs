//! Isomorph-free exhaustive generation of graphs under degree, common
//! neighbour and clique constraints.
//!
//! Graphs are built one vertex at a time: each vertex in turn receives all
//! of its missing neighbours, with one neighbour set kept per orbit of the
//! symmetries of the partial graph. Partial graphs are deduplicated by
//! canonical form after every step.

pub mod checkpoint;
pub mod engine;
pub mod error;
pub mod lemma51;
pub mod partial;
pub mod small;
pub mod strict;

pub use checkpoint::Checkpoint;
pub use engine::{extend_vertex, SearchOptions, SearchOutcome, SearchStats};
pub use error::SearchError;
pub use lemma51::{lemma51_pipeline, lemma51_seeds, Lemma51Report, SeedReport};
pub use partial::{Frame, PartialGraph, Rule};
pub use small::{
    enumerate_by_degree_sequence, enumerate_regular_diamondfree, gamma1, triangle_partition,
};
pub use strict::{exhaustive_strict_search, resume_strict_search, strict_skeletons};
