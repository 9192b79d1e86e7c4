//! Reachability by memoized depth-first search over distributions.
//!
//! Every move lowers the pebble total by one, so the search depth is
//! bounded by the size of the start distribution and the memo can be keyed
//! by the distribution vector alone. A [`Reacher`] keeps its memo across
//! queries for the same target, which is what the solvers rely on.

use rustc_hash::FxHashMap;

use super::digraph::{order_executable, untangle, TransitionDigraph};
use super::moves::{execute, MoveMultiset, RubblingMove};
use super::pebbles::Distribution;
use super::EngineError;
use crate::graph::Graph;

/// Which moves are allowed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MoveSet {
    /// Pebbling and strict rubbling moves.
    #[default]
    Rubbling,
    /// Pebbling moves only.
    Pebbling,
}

impl MoveSet {
    pub fn allows(self, m: &RubblingMove) -> bool {
        self == MoveSet::Rubbling || m.is_pebbling()
    }
}

/// An executable move sequence delivering a pebble to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub start: Distribution,
    pub target: usize,
    pub moves: Vec<RubblingMove>,
    /// Claims the transition digraph of `moves` has no directed cycle.
    pub acyclic: bool,
}

impl Certificate {
    /// One `(v,w->u)` line per move.
    pub fn render(&self) -> String {
        super::moves::render_moves(&self.moves)
    }
}

/// Replays a certificate: every move must be valid on `graph`, the
/// sequence executable from the start distribution, and the target must
/// end with a pebble. Certificates flagged acyclic must also have an
/// acyclic transition digraph, and in particular no move `(v,a->u)`
/// followed later by a move `(u,b->v)`.
pub fn check_certificate(graph: &Graph, cert: &Certificate) -> bool {
    if cert.start.len() != graph.vertex_count() || cert.target >= graph.vertex_count() {
        return false;
    }
    if cert.moves.iter().any(|m| m.validate(graph).is_err()) {
        return false;
    }
    let Ok(run) = execute(&cert.start, &cert.moves) else {
        return false;
    };
    if !run.executable || run.result[cert.target] < 1 {
        return false;
    }
    if cert.acyclic {
        let multiset: MoveMultiset = cert.moves.iter().copied().collect();
        if !TransitionDigraph::new(graph.vertex_count(), &multiset).is_acyclic() {
            return false;
        }
        for (i, first) in cert.moves.iter().enumerate() {
            for later in &cert.moves[i + 1..] {
                let u = first.target();
                if later.takes_from(u) && first.takes_from(later.target()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Answer of [`is_reachable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    pub reachable: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReachStats {
    /// Distinct distributions expanded.
    pub states: u64,
    pub cache_hits: u64,
}

/// Memoized reachability search for one target vertex.
pub struct Reacher<'g> {
    graph: &'g Graph,
    target: usize,
    mode: MoveSet,
    moves: Vec<RubblingMove>,
    memo: FxHashMap<Box<[u64]>, bool>,
    stats: ReachStats,
}

impl<'g> Reacher<'g> {
    pub fn new(graph: &'g Graph, target: usize, mode: MoveSet) -> Self {
        assert!(
            target < graph.vertex_count(),
            "target {target} out of range"
        );
        let dist = graph.distances_from(target);
        let mut moves: Vec<RubblingMove> = RubblingMove::all(graph)
            .into_iter()
            .filter(|m| mode.allows(m))
            .collect();
        // moves landing closer to the target are tried first
        moves.sort_by_key(|m| (dist[m.target()], *m));
        Reacher {
            graph,
            target,
            mode,
            moves,
            memo: FxHashMap::default(),
            stats: ReachStats::default(),
        }
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn stats(&self) -> ReachStats {
        self.stats
    }

    fn check_len(&self, p: &Distribution) -> Result<(), EngineError> {
        if p.len() != self.graph.vertex_count() {
            return Err(EngineError::LengthMismatch {
                expected: self.graph.vertex_count(),
                found: p.len(),
            });
        }
        Ok(())
    }

    /// Decides whether the target is reachable from `p`.
    pub fn reachable(&mut self, p: &Distribution) -> Result<bool, EngineError> {
        self.check_len(p)?;
        let mut state = p.0.clone();
        Ok(self.search(&mut state))
    }

    /// Like [`Reacher::reachable`], also returning an acyclic certificate.
    pub fn certify(&mut self, p: &Distribution) -> Result<Option<Certificate>, EngineError> {
        self.check_len(p)?;
        let mut state = p.0.clone();
        if !self.search(&mut state) {
            return Ok(None);
        }
        let mut found = Vec::new();
        while state[self.target] == 0 {
            let next = match self.finishing_move(&state) {
                Some(m) => m,
                None => self
                    .moves
                    .clone()
                    .into_iter()
                    .find(|m| {
                        if !executable(&state, m) {
                            return false;
                        }
                        apply(&mut state, m);
                        let ok = self.search(&mut state);
                        undo(&mut state, m);
                        ok
                    })
                    .expect("a reachable state has a reachable successor"),
            };
            apply(&mut state, &next);
            found.push(next);
        }
        // untangling keeps the target covered and makes the sequence acyclic
        let untangled = untangle(&found.iter().copied().collect());
        let moves = order_executable(p, &untangled)?;
        Ok(Some(Certificate {
            start: p.clone(),
            target: self.target,
            moves,
            acyclic: true,
        }))
    }

    // A single move that puts a pebble on the target, if one is executable.
    fn finishing_move(&self, state: &[u64]) -> Option<RubblingMove> {
        let nbrs = self.graph.neighbors(self.target);
        if let Some(&v) = nbrs.iter().find(|&&v| state[v] >= 2) {
            return Some(RubblingMove::pebbling(v, self.target));
        }
        if self.mode == MoveSet::Rubbling {
            let mut loaded = nbrs.iter().filter(|&&v| state[v] >= 1);
            if let (Some(&v), Some(&w)) = (loaded.next(), loaded.next()) {
                return Some(RubblingMove::new(v, w, self.target));
            }
        }
        None
    }

    fn search(&mut self, state: &mut Vec<u64>) -> bool {
        if state[self.target] >= 1 || self.finishing_move(state).is_some() {
            return true;
        }
        if let Some(&known) = self.memo.get(state.as_slice()) {
            self.stats.cache_hits += 1;
            return known;
        }
        self.stats.states += 1;
        let mut found = false;
        for i in 0..self.moves.len() {
            let m = self.moves[i];
            if !executable(state, &m) {
                continue;
            }
            apply(state, &m);
            found = self.search(state);
            undo(state, &m);
            if found {
                break;
            }
        }
        self.memo.insert(state.clone().into_boxed_slice(), found);
        found
    }
}

fn executable(state: &[u64], m: &RubblingMove) -> bool {
    let (v, w) = m.sources();
    if v == w {
        state[v] >= 2
    } else {
        state[v] >= 1 && state[w] >= 1
    }
}

fn apply(state: &mut [u64], m: &RubblingMove) {
    let (v, w) = m.sources();
    state[v] -= 1;
    state[w] -= 1;
    state[m.target()] += 1;
}

fn undo(state: &mut [u64], m: &RubblingMove) {
    let (v, w) = m.sources();
    state[v] += 1;
    state[w] += 1;
    state[m.target()] -= 1;
}

/// Decides reachability of `target` from `p` with a fresh memo; a positive
/// answer carries an acyclic certificate.
pub fn is_reachable(
    graph: &Graph,
    p: &Distribution,
    target: usize,
    mode: MoveSet,
) -> Result<Reachability, EngineError> {
    if target >= graph.vertex_count() {
        return Err(EngineError::VertexOutOfRange(target));
    }
    let certificate = Reacher::new(graph, target, mode).certify(p)?;
    Ok(Reachability {
        reachable: certificate.is_some(),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;

    fn g(s: &str) -> Graph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    fn reach(graph: &Graph, p: &[u64], target: usize) -> Reachability {
        is_reachable(graph, &Distribution(p.to_vec()), target, MoveSet::Rubbling).unwrap()
    }

    #[test]
    fn pebble_on_target_needs_no_moves() {
        let r = reach(&g("cycle:3"), &[1, 0, 0], 0);
        assert!(r.reachable);
        assert!(r.certificate.unwrap().moves.is_empty());
    }

    #[test]
    fn path_four() {
        let p4 = g("path:4");
        let r = reach(&p4, &[0, 0, 0, 8], 0);
        assert!(r.reachable);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.moves.len(), 7);
        assert!(check_certificate(&p4, &cert));
        assert!(!reach(&p4, &[0, 0, 0, 7], 0).reachable);
    }

    #[test]
    fn strict_move_matters() {
        let star = g("caterpillar:2");
        // leaves 1 and 2 around center 0
        assert!(reach(&star, &[0, 1, 1], 0).reachable);
        let pebbling =
            is_reachable(&star, &Distribution(vec![0, 1, 1]), 0, MoveSet::Pebbling).unwrap();
        assert!(!pebbling.reachable);
    }

    #[test]
    fn petersen_three_one() {
        // some 3+1 split on two adjacent vertices misses some vertex
        let pet = g("petersen");
        let mut found = false;
        for &(a, b) in pet.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let mut p = vec![0; 10];
                p[x] = 3;
                p[y] = 1;
                if (0..10).any(|t| !reach(&pet, &p, t).reachable) {
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn certificate_checks() {
        let p3 = g("path:3");
        let cert = reach(&p3, &[0, 0, 4], 0).certificate.unwrap();
        assert!(check_certificate(&p3, &cert));
        for skip in 0..cert.moves.len() {
            let mut broken = cert.clone();
            broken.moves.remove(skip);
            assert!(!check_certificate(&p3, &broken));
        }
        let empty = Certificate {
            start: Distribution(vec![0, 1, 0]),
            target: 0,
            moves: vec![],
            acyclic: true,
        };
        assert!(!check_certificate(&p3, &empty));
        // executable but flip-flopping: (1,1->0) then (0,2->1)
        let flip = Certificate {
            start: Distribution(vec![1, 2, 1]),
            target: 1,
            moves: vec![RubblingMove::pebbling(1, 0), RubblingMove::new(0, 2, 1)],
            acyclic: true,
        };
        assert!(!check_certificate(&p3, &flip));
        assert!(check_certificate(
            &p3,
            &Certificate {
                acyclic: false,
                ..flip
            }
        ));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let p3 = g("path:3");
        assert!(is_reachable(&p3, &Distribution(vec![1, 1]), 0, MoveSet::Rubbling).is_err());
        assert!(is_reachable(&p3, &Distribution(vec![1, 1, 1]), 3, MoveSet::Rubbling).is_err());
    }

    #[test]
    fn memo_is_reused() {
        let c7 = g("cycle:7");
        let mut r = Reacher::new(&c7, 0, MoveSet::Rubbling);
        let p = Distribution(vec![0, 0, 0, 4, 4, 0, 0]);
        let first = r.reachable(&p).unwrap();
        let states = r.stats().states;
        assert_eq!(r.reachable(&p).unwrap(), first);
        assert_eq!(r.stats().states, states);
        assert!(r.stats().cache_hits > 0);
    }
}
