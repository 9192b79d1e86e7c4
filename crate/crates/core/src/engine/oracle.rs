//! Second-opinion reachability: search for an acyclic move multiset that is
//! balanced with the distribution and leaves a pebble on the target.
//! Exponential; meant for tiny instances in tests.

use super::digraph::TransitionDigraph;
use super::moves::{MoveMultiset, RubblingMove};
use super::pebbles::Distribution;
use super::reach::MoveSet;
use super::EngineError;
use crate::graph::Graph;

pub const ORACLE_MAX_PEBBLES: u64 = 6;
pub const ORACLE_MAX_VERTICES: usize = 6;

/// Enumerates multisets of at most `|p| - 1` moves (a multiset of size `k`
/// leaves `|p| - k` pebbles) and reports whether one of them is acyclic,
/// balanced with `p` and puts a pebble on `target`.
pub fn reachability_oracle(
    graph: &Graph,
    p: &Distribution,
    target: usize,
    mode: MoveSet,
) -> Result<bool, EngineError> {
    let n = graph.vertex_count();
    if p.len() != n {
        return Err(EngineError::LengthMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if target >= n {
        return Err(EngineError::VertexOutOfRange(target));
    }
    if p.size() > ORACLE_MAX_PEBBLES || n > ORACLE_MAX_VERTICES {
        return Err(EngineError::TooLarge(format!(
            "oracle handles at most {ORACLE_MAX_PEBBLES} pebbles on {ORACLE_MAX_VERTICES} vertices"
        )));
    }
    let moves: Vec<RubblingMove> = RubblingMove::all(graph)
        .into_iter()
        .filter(|m| mode.allows(m))
        .collect();
    let mut search = MultisetSearch {
        moves: &moves,
        pebbles: p.0.iter().map(|&c| c as i64).collect(),
        target,
        budget: p.size().saturating_sub(1) as usize,
        in_degree: vec![0; n],
        out_degree: vec![0; n],
        chosen: Vec::new(),
    };
    Ok(search.run(0))
}

struct MultisetSearch<'a> {
    moves: &'a [RubblingMove],
    pebbles: Vec<i64>,
    target: usize,
    budget: usize,
    in_degree: Vec<i64>,
    out_degree: Vec<i64>,
    chosen: Vec<RubblingMove>,
}

impl MultisetSearch<'_> {
    // twice the effect at v
    fn doubled_effect(&self, v: usize) -> i64 {
        2 * self.pebbles[v] + self.in_degree[v] - 2 * self.out_degree[v]
    }

    fn accepts(&self) -> bool {
        if self.doubled_effect(self.target) < 2 {
            return false;
        }
        if (0..self.pebbles.len()).any(|v| self.doubled_effect(v) < 0) {
            return false;
        }
        let multiset: MoveMultiset = self.chosen.iter().copied().collect();
        TransitionDigraph::new(self.pebbles.len(), &multiset).is_acyclic()
    }

    fn run(&mut self, first: usize) -> bool {
        if self.accepts() {
            return true;
        }
        if self.chosen.len() == self.budget {
            return false;
        }
        let remaining_after = (self.budget - self.chosen.len() - 1) as i64;
        for idx in first..self.moves.len() {
            let m = self.moves[idx];
            let (v, w) = m.sources();
            self.out_degree[v] += 1;
            self.out_degree[w] += 1;
            self.in_degree[m.target()] += 2;
            self.chosen.push(m);
            // later moves can add at most 2 * remaining_after to any in-degree
            let feasible = [v, w]
                .iter()
                .all(|&x| self.doubled_effect(x) + 2 * remaining_after >= 0);
            if feasible && self.run(idx) {
                return true;
            }
            self.chosen.pop();
            self.out_degree[v] -= 1;
            self.out_degree[w] -= 1;
            self.in_degree[m.target()] -= 2;
        }
        false
    }
}
