//! Rubbling and pebbling on simple connected graphs.
//!
//! A pebbling move takes two pebbles from a vertex and puts one on a
//! neighbor; a strict rubbling move takes one pebble from each of two
//! neighbors of a vertex and puts one on that vertex. This crate decides
//! which vertices a distribution can reach, with replayable certificates,
//! and computes the rubbling number, optimal rubbling number and pebbling
//! number of small graphs by exhaustive search.

pub mod engine;
pub mod family;
pub mod graph;
pub mod reductions;
pub mod solver;

pub use engine::{
    is_reachable, Certificate, Distribution, EngineError, MoveMultiset, MoveSet, PebbleFunction,
    RubblingMove,
};
pub use family::Family;
pub use graph::{parse_edge_list, Arm, Graph, GraphError, Thread};
