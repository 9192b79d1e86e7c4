//! Transition digraphs of move multisets, the degree form of a multiset's
//! effect, untangling and executable ordering.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::moves::{MoveMultiset, RubblingMove};
use super::pebbles::{Distribution, PebbleFunction};
use super::EngineError;

/// Directed multigraph with arrows `(v,u)` and `(w,u)` for each move
/// `(v,w->u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionDigraph {
    vertex_count: usize,
    arrows: BTreeMap<(usize, usize), u64>,
    in_degree: Vec<u64>,
    out_degree: Vec<u64>,
}

impl TransitionDigraph {
    /// Builds the digraph on vertices `0..vertex_count`. The vertex set grows
    /// if a move mentions a larger index.
    pub fn new(vertex_count: usize, moves: &MoveMultiset) -> Self {
        let n = moves
            .iter()
            .map(|(m, _)| m.sources().1.max(m.target()) + 1)
            .max()
            .unwrap_or(0)
            .max(vertex_count);
        let mut digraph = TransitionDigraph {
            vertex_count: n,
            arrows: BTreeMap::new(),
            in_degree: vec![0; n],
            out_degree: vec![0; n],
        };
        for (m, count) in moves.iter() {
            let (v, w) = m.sources();
            let u = m.target();
            for source in [v, w] {
                *digraph.arrows.entry((source, u)).or_insert(0) += count;
                digraph.out_degree[source] += count;
            }
            digraph.in_degree[u] += 2 * count;
        }
        digraph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Arrows with multiplicity, in ascending `(tail, head)` order.
    pub fn arrows(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.arrows.iter().map(|(k, c)| (*k, *c))
    }

    pub fn arrow_count(&self) -> u64 {
        self.arrows.values().sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        self.in_degree.get(v).copied().unwrap_or(0)
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.out_degree.get(v).copied().unwrap_or(0)
    }

    /// Some directed cycle, as the vertex list `c_0, ..., c_k` with arrows
    /// `c_i -> c_{i+1}` and `c_k -> c_0`. Depth-first search visits vertices
    /// and successors in ascending order, so the answer is deterministic.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut successors = vec![Vec::new(); n];
        for &(tail, head) in self.arrows.keys() {
            successors[tail].push(head);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            state[root] = 1;
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                if let Some(&w) = successors[v].get(top.1) {
                    top.1 += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => {
                            let start = stack.iter().position(|&(x, _)| x == w).unwrap_or(0);
                            return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Graphviz rendering; parallel arrows are repeated.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph T {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(out, "  {v};");
        }
        for ((tail, head), count) in self.arrows() {
            for _ in 0..count {
                let _ = writeln!(out, "  {tail} -> {head};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `p_S(v) = p(v) + d^-(v)/2 - d^+(v)` for every vertex.
pub fn effect(p: &PebbleFunction, moves: &MoveMultiset) -> Result<PebbleFunction, EngineError> {
    let t = TransitionDigraph::new(p.len(), moves);
    if t.vertex_count() > p.len() {
        return Err(EngineError::LengthMismatch {
            expected: t.vertex_count(),
            found: p.len(),
        });
    }
    let to_i64 = |x: u64| i64::try_from(x).map_err(|_| EngineError::Overflow);
    p.0.iter()
        .enumerate()
        .map(|(v, &c)| {
            // in-degrees are always even
            c.checked_add(to_i64(t.in_degree(v) / 2)?)
                .and_then(|x| x.checked_sub(to_i64(t.out_degree(v)).ok()?))
                .ok_or(EngineError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()
        .map(PebbleFunction)
}

/// Per-vertex balance of a multiset against a pebble function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balance {
    pub balanced: bool,
    /// The effect `p_S`; negative entries mark unbalanced vertices.
    pub slack: PebbleFunction,
}

impl Balance {
    pub fn unbalanced_vertices(&self) -> Vec<usize> {
        (0..self.slack.len())
            .filter(|&v| self.slack[v] < 0)
            .collect()
    }
}

pub fn is_balanced(p: &PebbleFunction, moves: &MoveMultiset) -> Result<Balance, EngineError> {
    let slack = effect(p, moves)?;
    Ok(Balance {
        balanced: slack.is_nonnegative(),
        slack,
    })
}

/// Repeatedly deletes the moves owning the arrows of a directed cycle until
/// the transition digraph is acyclic. The result is a sub-multiset whose
/// effect dominates the input's effect pointwise.
pub fn untangle(moves: &MoveMultiset) -> MoveMultiset {
    let mut rest = moves.clone();
    loop {
        let t = TransitionDigraph::new(0, &rest);
        let Some(cycle) = t.find_cycle() else {
            return rest;
        };
        for (i, &tail) in cycle.iter().enumerate() {
            let head = cycle[(i + 1) % cycle.len()];
            let owner = rest
                .iter()
                .map(|(m, _)| m)
                .find(|m| m.target() == head && m.takes_from(tail))
                .expect("every arrow belongs to a move");
            rest.remove_one(&owner);
        }
    }
}

/// Orders an acyclic multiset balanced with `p` into a sequence executable
/// from `p`, always taking the smallest move whose sources have no incoming
/// arrows among the moves still unplaced.
pub fn order_executable(
    p: &Distribution,
    moves: &MoveMultiset,
) -> Result<Vec<RubblingMove>, EngineError> {
    let t = TransitionDigraph::new(p.len(), moves);
    if t.vertex_count() > p.len() {
        return Err(EngineError::LengthMismatch {
            expected: t.vertex_count(),
            found: p.len(),
        });
    }
    if !t.is_acyclic() {
        return Err(EngineError::Cyclic);
    }
    let balance = is_balanced(&p.to_function()?, moves)?;
    if let Some(&vertex) = balance.unbalanced_vertices().first() {
        return Err(EngineError::Unbalanced { vertex });
    }
    let mut in_degree: Vec<u64> = (0..t.vertex_count()).map(|v| t.in_degree(v)).collect();
    let mut rest = moves.clone();
    let mut order = Vec::with_capacity(moves.len() as usize);
    while !rest.is_empty() {
        let next = rest
            .iter()
            .map(|(m, _)| m)
            .find(|m| {
                let (v, w) = m.sources();
                in_degree[v] == 0 && in_degree[w] == 0
            })
            .ok_or(EngineError::Cyclic)?;
        rest.remove_one(&next);
        in_degree[next.target()] -= 2;
        order.push(next);
    }
    Ok(order)
}
