//! Reachability-preserving redistributions (rolling moves) and the
//! squished restriction on distribution enumeration.
//!
//! Positions along an arm or path are 0-based: position `0` is `v_1`.

use thiserror::Error;

use crate::engine::Distribution;
use crate::graph::{Arm, Graph};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RollError {
    #[error("distribution has {found} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not an arm: {0}")]
    NotAnArm(String),
    #[error("not a path with degree-2 interior: {0}")]
    NotAPath(String),
    #[error("source position {position} is out of range for a path of {len} vertices")]
    BadPosition { position: usize, len: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RollKind {
    Single,
    Double,
}

/// A rolling move on a concrete path, with the position of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RollingMove {
    pub kind: RollKind,
    pub path: Vec<usize>,
    pub source: usize,
}

impl RollingMove {
    pub fn apply(&self, graph: &Graph, p: &Distribution) -> Result<Distribution, RollError> {
        match self.kind {
            RollKind::Single => single_roll(graph, p, &Arm(self.path.clone()), self.source),
            RollKind::Double => double_roll(graph, p, &self.path, self.source),
        }
    }
}

fn check_len(graph: &Graph, p: &Distribution) -> Result<(), RollError> {
    if p.len() != graph.vertex_count() {
        return Err(RollError::LengthMismatch {
            expected: graph.vertex_count(),
            found: p.len(),
        });
    }
    Ok(())
}

/// Moves one pebble from `arm[source]` to the arm's last vertex.
///
/// Requires `p(v_n) = 0`, at least one pebble on each of `v_1..v_{n-1}`
/// and at least two on the source.
pub fn single_roll(
    graph: &Graph,
    p: &Distribution,
    arm: &Arm,
    source: usize,
) -> Result<Distribution, RollError> {
    check_len(graph, p)?;
    let path = arm.vertices();
    if !arm.is_valid_in(graph) {
        return Err(RollError::NotAnArm(format!("{path:?}")));
    }
    let last = path.len() - 1;
    if source >= last {
        return Err(RollError::BadPosition {
            position: source,
            len: path.len(),
        });
    }
    if p[path[last]] != 0 {
        return Err(RollError::Precondition(format!(
            "last arm vertex {} must be empty",
            path[last]
        )));
    }
    if let Some(&v) = path[..last].iter().find(|&&v| p[v] == 0) {
        return Err(RollError::Precondition(format!("arm vertex {v} is empty")));
    }
    if p[path[source]] < 2 {
        return Err(RollError::Precondition(format!(
            "source vertex {} holds fewer than two pebbles",
            path[source]
        )));
    }
    let mut q = p.clone();
    q.0[path[source]] -= 1;
    q.0[path[last]] = 1;
    Ok(q)
}

fn is_double_path(graph: &Graph, path: &[usize]) -> bool {
    path.len() >= 3
        && graph.is_path(path)
        && path[1..path.len() - 1]
            .iter()
            .all(|&v| graph.degree(v) == 2)
}

/// Moves two pebbles from `path[source]`, one to each end of the path.
///
/// Requires both ends empty, at least one pebble on every interior vertex
/// and at least two on the (interior) source.
pub fn double_roll(
    graph: &Graph,
    p: &Distribution,
    path: &[usize],
    source: usize,
) -> Result<Distribution, RollError> {
    check_len(graph, p)?;
    if !is_double_path(graph, path) {
        return Err(RollError::NotAPath(format!("{path:?}")));
    }
    let last = path.len() - 1;
    if source == 0 || source >= last {
        return Err(RollError::BadPosition {
            position: source,
            len: path.len(),
        });
    }
    for end in [path[0], path[last]] {
        if p[end] != 0 {
            return Err(RollError::Precondition(format!(
                "end vertex {end} must be empty"
            )));
        }
    }
    if let Some(&v) = path[1..last].iter().find(|&&v| p[v] == 0) {
        return Err(RollError::Precondition(format!(
            "interior vertex {v} is empty"
        )));
    }
    if p[path[source]] < 2 {
        return Err(RollError::Precondition(format!(
            "source vertex {} holds fewer than two pebbles",
            path[source]
        )));
    }
    let mut q = p.clone();
    q.0[path[source]] -= 2;
    q.0[path[0]] = 1;
    q.0[path[last]] = 1;
    Ok(q)
}

/// Every legal rolling move on `p`: single rolls first (arms in
/// [`Graph::find_arms`] order, sources by position), then double rolls
/// (sources by ascending vertex index).
pub fn available_rolls(graph: &Graph, p: &Distribution) -> Vec<RollingMove> {
    let mut rolls = Vec::new();
    for arm in graph.find_arms() {
        let path = arm.vertices();
        // the only candidate end is the first empty vertex along the arm
        let Some(k) = path.iter().position(|&v| p[v] == 0) else {
            continue;
        };
        if k == 0 {
            continue;
        }
        for i in 0..k {
            if p[path[i]] >= 2 {
                rolls.push(RollingMove {
                    kind: RollKind::Single,
                    path: path[..=k].to_vec(),
                    source: i,
                });
            }
        }
    }
    for x in 0..graph.vertex_count() {
        if p[x] < 2 || graph.degree(x) != 2 {
            continue;
        }
        if let Some((path, source)) = double_path_through(graph, p, x) {
            rolls.push(RollingMove {
                kind: RollKind::Double,
                path,
                source,
            });
        }
    }
    rolls
}

// The path for a double roll sourced at x: the run of loaded degree-2
// vertices through x, closed by an empty vertex at each end.
fn double_path_through(graph: &Graph, p: &Distribution, x: usize) -> Option<(Vec<usize>, usize)> {
    let nbrs = graph.neighbors(x);
    let walk = |first: usize| -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut prev = x;
        let mut cur = first;
        loop {
            if cur == x {
                return None;
            }
            out.push(cur);
            if p[cur] == 0 {
                return Some(out);
            }
            if graph.degree(cur) != 2 {
                return None;
            }
            let next = graph.neighbors(cur).iter().copied().find(|&w| w != prev)?;
            prev = cur;
            cur = next;
        }
    };
    let left = walk(nbrs[0])?;
    let right = walk(nbrs[1])?;
    if left.last() == right.last() || left.iter().any(|v| right.contains(v)) {
        return None;
    }
    let mut path: Vec<usize> = left.into_iter().rev().collect();
    let source = path.len();
    path.push(x);
    path.extend(right);
    Some((path, source))
}

/// Applies the first available rolling move (see [`available_rolls`]) until
/// none is left. Each roll lowers the number of pebbles stacked above one
/// per vertex, so the loop terminates.
pub fn normalize_by_rolling(graph: &Graph, p: &Distribution) -> Result<Distribution, RollError> {
    check_len(graph, p)?;
    let mut cur = p.clone();
    while let Some(roll) = available_rolls(graph, &cur).into_iter().next() {
        cur = roll.apply(graph, &cur)?;
    }
    Ok(cur)
}

/// All compositions of `size` into `parts` nonnegative parts, in ascending
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u64>>,
}

impl Compositions {
    pub fn new(parts: usize, size: u64) -> Self {
        let current = match parts {
            0 if size > 0 => None,
            0 => Some(Vec::new()),
            _ => {
                let mut first = vec![0; parts];
                first[parts - 1] = size;
                Some(first)
            }
        };
        Compositions { current }
    }

    /// Number of compositions, `C(size + parts - 1, parts - 1)`, saturating.
    pub fn count(parts: usize, size: u64) -> u64 {
        if parts == 0 {
            return u64::from(size == 0);
        }
        binomial(size + parts as u64 - 1, parts as u64 - 1)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

impl Iterator for Compositions {
    type Item = Distribution;

    fn next(&mut self) -> Option<Distribution> {
        let cur = self.current.take()?;
        let n = cur.len();
        let mut next = cur.clone();
        // rightmost position (before the last) with something after it
        let mut tail = 0;
        let mut advanced = false;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += next[i + 1];
            if tail > 0 {
                next[i] += 1;
                for x in &mut next[i + 1..] {
                    *x = 0;
                }
                next[n - 1] = tail - 1;
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(Distribution(cur))
    }
}

/// True when the pebbles on `thread` sit on one vertex or on two adjacent
/// vertices of it.
pub fn is_squished_on(p: &Distribution, thread: &[usize]) -> bool {
    let loaded: Vec<usize> = (0..thread.len()).filter(|&i| p[thread[i]] > 0).collect();
    match loaded.as_slice() {
        [] | [_] => true,
        [a, b] => b - a == 1,
        _ => false,
    }
}

/// Size-`size` distributions squished on every maximal thread avoiding
/// `target`, in ascending lexicographic order. Vertices on no such thread
/// are unrestricted.
pub fn enumerate_squished(
    graph: &Graph,
    target: usize,
    size: u64,
) -> impl Iterator<Item = Distribution> {
    let threads: Vec<Vec<usize>> = graph
        .threads_avoiding(target)
        .into_iter()
        .filter(|t| t.vertices().len() > 2)
        .map(|t| t.0)
        .collect();
    Compositions::new(graph.vertex_count(), size)
        .filter(move |p| threads.iter().all(|t| is_squished_on(p, t)))
}
