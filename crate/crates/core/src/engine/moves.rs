use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::pebbles::{Distribution, PebbleFunction};
use super::EngineError;
use crate::graph::Graph;

/// A rubbling move `(v, w -> u)`: a pebbling move when `v == w`, a strict
/// rubbling move otherwise. Sources are stored with `v <= w`, so
/// `(v,w->u)` and `(w,v->u)` compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RubblingMove {
    v: usize,
    w: usize,
    u: usize,
}

impl RubblingMove {
    pub fn new(v: usize, w: usize, u: usize) -> Self {
        RubblingMove {
            v: v.min(w),
            w: v.max(w),
            u,
        }
    }

    /// The pebbling move `(v, v -> u)`.
    pub fn pebbling(v: usize, u: usize) -> Self {
        RubblingMove { v, w: v, u }
    }

    pub fn sources(&self) -> (usize, usize) {
        (self.v, self.w)
    }

    pub fn target(&self) -> usize {
        self.u
    }

    pub fn is_pebbling(&self) -> bool {
        self.v == self.w
    }

    /// True when `x` is one of the move's sources.
    pub fn takes_from(&self, x: usize) -> bool {
        self.v == x || self.w == x
    }

    pub fn validate(&self, graph: &Graph) -> Result<(), EngineError> {
        let n = graph.vertex_count();
        let invalid = |reason: &str| {
            Err(EngineError::InvalidMove {
                mv: *self,
                reason: reason.to_string(),
            })
        };
        if self.u >= n || self.w >= n {
            return invalid("vertex out of range");
        }
        if !graph.has_edge(self.v, self.u) {
            return invalid("first source is not adjacent to the target");
        }
        if !graph.has_edge(self.w, self.u) {
            return invalid("second source is not adjacent to the target");
        }
        Ok(())
    }

    /// Applies the move to a copy of `p`; the result may be negative.
    pub fn apply(&self, p: &PebbleFunction) -> Result<PebbleFunction, EngineError> {
        let mut out = p.clone();
        self.apply_in_place(&mut out.0)?;
        Ok(out)
    }

    pub(crate) fn apply_in_place(&self, counts: &mut [i64]) -> Result<(), EngineError> {
        let sub = |c: &mut i64| -> Result<(), EngineError> {
            *c = c.checked_sub(1).ok_or(EngineError::Overflow)?;
            Ok(())
        };
        sub(&mut counts[self.v])?;
        sub(&mut counts[self.w])?;
        counts[self.u] = counts[self.u].checked_add(1).ok_or(EngineError::Overflow)?;
        Ok(())
    }

    /// Every valid move on `graph`, pebbling moves included, in ascending order.
    pub fn all(graph: &Graph) -> Vec<RubblingMove> {
        let mut moves = Vec::new();
        for u in 0..graph.vertex_count() {
            let nbrs = graph.neighbors(u);
            for (i, &v) in nbrs.iter().enumerate() {
                for &w in &nbrs[i..] {
                    moves.push(RubblingMove::new(v, w, u));
                }
            }
        }
        moves.sort_unstable();
        moves
    }
}

impl fmt::Display for RubblingMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}->{})", self.v, self.w, self.u)
    }
}

impl FromStr for RubblingMove {
    type Err = EngineError;

    /// Parses `(v,w->u)`; whitespace around tokens is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || EngineError::Parse(format!("expected a move like (0,1->2), found {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (sources, target) = inner.split_once("->").ok_or_else(err)?;
        let (v, w) = sources.split_once(',').ok_or_else(err)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
        Ok(RubblingMove::new(num(v)?, num(w)?, num(target)?))
    }
}

/// Parses one move per line; blank lines and `#` comments are skipped.
pub fn parse_moves(text: &str) -> Result<Vec<RubblingMove>, EngineError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse::<RubblingMove>()
                .map_err(|e| EngineError::Parse(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// Renders moves one per line in the `(v,w->u)` format.
pub fn render_moves(moves: &[RubblingMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// A multiset of rubbling moves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveMultiset {
    counts: BTreeMap<RubblingMove, u64>,
}

impl MoveMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m: RubblingMove) {
        self.insert_n(m, 1);
    }

    pub fn insert_n(&mut self, m: RubblingMove, n: u64) {
        if n > 0 {
            *self.counts.entry(m).or_insert(0) += n;
        }
    }

    /// Removes one copy of `m`; returns false when `m` is absent.
    pub fn remove_one(&mut self, m: &RubblingMove) -> bool {
        match self.counts.get_mut(m) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(m);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, m: &RubblingMove) -> u64 {
        self.counts.get(m).copied().unwrap_or(0)
    }

    /// Total number of moves, counting multiplicity.
    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct moves with their multiplicities, in ascending move order.
    pub fn iter(&self) -> impl Iterator<Item = (RubblingMove, u64)> + '_ {
        self.counts.iter().map(|(m, c)| (*m, *c))
    }

    /// Every copy of every move, in ascending move order.
    pub fn to_sequence(&self) -> Vec<RubblingMove> {
        self.iter()
            .flat_map(|(m, c)| std::iter::repeat_n(m, c as usize))
            .collect()
    }

    pub fn is_submultiset_of(&self, other: &MoveMultiset) -> bool {
        self.iter().all(|(m, c)| other.multiplicity(&m) >= c)
    }

    pub fn validate(&self, graph: &Graph) -> Result<(), EngineError> {
        self.counts.keys().try_for_each(|m| m.validate(graph))
    }
}

impl FromIterator<RubblingMove> for MoveMultiset {
    fn from_iter<I: IntoIterator<Item = RubblingMove>>(iter: I) -> Self {
        let mut s = MoveMultiset::new();
        for m in iter {
            s.insert(m);
        }
        s
    }
}

/// Outcome of replaying a move sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    /// Result of applying every move, executable or not.
    pub result: PebbleFunction,
    /// True iff no prefix drives a count negative.
    pub executable: bool,
    /// Index of the first move that left a negative count.
    pub first_violation: Option<usize>,
}

/// Replays `moves` from `start`.
pub fn execute(start: &Distribution, moves: &[RubblingMove]) -> Result<Execution, EngineError> {
    let mut p = start.to_function()?;
    let mut first_violation = None;
    for (i, m) in moves.iter().enumerate() {
        let (v, w) = m.sources();
        if m.target().max(w) >= p.len() {
            return Err(EngineError::LengthMismatch {
                expected: m.target().max(w) + 1,
                found: p.len(),
            });
        }
        m.apply_in_place(&mut p.0)?;
        if first_violation.is_none() && (p[v] < 0 || p[w] < 0) {
            first_violation = Some(i);
        }
    }
    Ok(Execution {
        result: p,
        executable: first_violation.is_none(),
        first_violation,
    })
}
