//! Move semantics, transition digraphs and the reachability decision.

mod digraph;
mod moves;
mod oracle;
mod pebbles;
mod reach;

use thiserror::Error;

pub use digraph::{effect, is_balanced, order_executable, untangle, Balance, TransitionDigraph};
pub use moves::{execute, parse_moves, render_moves, Execution, MoveMultiset, RubblingMove};
pub use oracle::{reachability_oracle, ORACLE_MAX_PEBBLES, ORACLE_MAX_VERTICES};
pub use pebbles::{delta, Distribution, HalfInt, PebbleFunction};
pub use reach::{
    check_certificate, is_reachable, Certificate, MoveSet, ReachStats, Reachability, Reacher,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid move {mv}: {reason}")]
    InvalidMove { mv: RubblingMove, reason: String },
    #[error("pebble count overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} vertex counts, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("move multiset has a cyclic transition digraph")]
    Cyclic,
    #[error("move multiset is not balanced at vertex {vertex}")]
    Unbalanced { vertex: usize },
    #[error("instance too large: {0}")]
    TooLarge(String),
}
