//! Rubbling number, optimal rubbling number and pebbling number by
//! exhaustive search.
//!
//! Both searches walk sizes upward and, at each size, scan distributions in
//! ascending lexicographic order. Candidates are split into contiguous
//! ranges, one per worker; every worker owns its reachability memos, and
//! the reported witness is always the lexicographically least one, so the
//! answer does not depend on scheduling.

mod closed_form;
mod verify;

use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::engine::{Distribution, EngineError, MoveSet, Reacher};
use crate::graph::Graph;
use crate::reductions::{enumerate_squished, Compositions};

pub use closed_form::{
    closed_form, odd_cycle_bounds, odd_cycle_extremal_pair, odd_cycle_rho, Invariant,
    OddCycleBoundCheck,
};
pub use verify::{
    expand_family_range, verify_family, RowStatus, VerifyReport, VerifyRow, DESK_BUDGET,
};

/// Hard ceiling on the candidates enumerated at a single size.
pub const MAX_LEVEL_CANDIDATES: u64 = 50_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("no answer up to the cap {cap}")]
    CapExceeded { cap: u64, witness: Option<Witness> },
    #[error("cap {cap} is below the lower bound {lower}")]
    CapBelowLowerBound { cap: u64, lower: u64 },
    #[error("diameter {0} is too large for 2^diameter to fit in 64 bits")]
    DiameterTooLarge(usize),
    #[error("over budget: {0}")]
    Budget(String),
    #[error("invalid arguments: {0}")]
    Precondition(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: MoveSet,
    /// Largest size tried; defaults per search.
    pub cap: Option<u64>,
    /// Restrict the rubbling-number scan to squished distributions.
    pub squish: bool,
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: MoveSet::Rubbling,
            cap: None,
            squish: true,
            workers: 1,
        }
    }
}

impl SolveOptions {
    pub fn pebbling() -> Self {
        SolveOptions {
            mode: MoveSet::Pebbling,
            ..Self::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `target` is not reachable from `distribution`.
    Unreachable {
        target: usize,
        distribution: Distribution,
    },
    /// Every vertex is reachable from `distribution`.
    Universal { distribution: Distribution },
}

impl Witness {
    pub fn distribution(&self) -> &Distribution {
        match self {
            Witness::Unreachable { distribution, .. } | Witness::Universal { distribution } => {
                distribution
            }
        }
    }

    pub fn target(&self) -> Option<usize> {
        match self {
            Witness::Unreachable { target, .. } => Some(*target),
            Witness::Universal { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub distributions: u64,
    pub states: u64,
    pub cache_hits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    pub witness: Option<Witness>,
    pub stats: SolveStats,
}

/// `2^diameter`, a lower bound on the rubbling number.
pub fn lower_bound_diameter(graph: &Graph) -> Result<u64, SolveError> {
    let d = graph.diameter();
    if d >= 63 {
        return Err(SolveError::DiameterTooLarge(d));
    }
    Ok(1u64 << d)
}

/// Default cap for [`rubbling_number`]: `2^diameter + 8`.
pub fn default_rho_cap(graph: &Graph) -> Result<u64, SolveError> {
    Ok(lower_bound_diameter(graph)? + 8)
}

fn level_candidates(
    graph: &Graph,
    size: u64,
    squish_for: Option<usize>,
) -> Result<Vec<Distribution>, SolveError> {
    let count = Compositions::count(graph.vertex_count(), size);
    if count > MAX_LEVEL_CANDIDATES {
        return Err(SolveError::Budget(format!(
            "{count} distributions of size {size} on {} vertices",
            graph.vertex_count()
        )));
    }
    Ok(match squish_for {
        Some(t) => enumerate_squished(graph, t, size)
            .filter(|p| p[t] == 0)
            .collect(),
        None => Compositions::new(graph.vertex_count(), size).collect(),
    })
}

// Index of the first item satisfying `hit`, scanning contiguous ranges in
// parallel with one state per worker. Workers abandon their range once an
// earlier hit is known.
fn first_hit<W, F>(
    items: &[Distribution],
    states: &mut [W],
    hit: F,
) -> Result<(Option<usize>, u64), SolveError>
where
    W: Send,
    F: Fn(&mut W, &Distribution) -> Result<bool, SolveError> + Sync,
{
    let best = AtomicUsize::new(usize::MAX);
    let chunk = items.len().div_ceil(states.len()).max(1);
    let scan = |state: &mut W, offset: usize, range: &[Distribution]| -> Result<u64, SolveError> {
        let mut examined = 0;
        for (i, p) in range.iter().enumerate() {
            let idx = offset + i;
            if idx > best.load(Ordering::Relaxed) {
                break;
            }
            examined += 1;
            if hit(state, p)? {
                best.fetch_min(idx, Ordering::Relaxed);
                break;
            }
        }
        Ok(examined)
    };
    let examined = if states.len() == 1 {
        scan(&mut states[0], 0, items)?
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = states
                .iter_mut()
                .zip(items.chunks(chunk))
                .enumerate()
                .map(|(k, (state, range))| {
                    let scan = &scan;
                    s.spawn(move || scan(state, k * chunk, range))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("solver worker panicked"))
                .sum::<Result<u64, SolveError>>()
        })?
    };
    let idx = best.into_inner();
    Ok(((idx != usize::MAX).then_some(idx), examined))
}

fn collect_stats(pools: &[Vec<Reacher<'_>>], distributions: u64) -> SolveStats {
    let mut stats = SolveStats {
        distributions,
        ..SolveStats::default()
    };
    for r in pools.iter().flatten() {
        stats.states += r.stats().states;
        stats.cache_hits += r.stats().cache_hits;
    }
    stats
}

fn worker_pools<'g>(
    graph: &'g Graph,
    targets: &[usize],
    opts: &SolveOptions,
) -> Vec<Vec<Reacher<'g>>> {
    (0..opts.workers.max(1))
        .map(|_| {
            targets
                .iter()
                .map(|&t| Reacher::new(graph, t, opts.mode))
                .collect()
        })
        .collect()
}

/// Least `m` such that every vertex is reachable from every distribution
/// of size `m` (the pebbling number in [`MoveSet::Pebbling`] mode), with
/// the least failing `(target, distribution)` of size `m - 1`.
///
/// Only sizes from `2^diameter` upward are scanned, and only exact sizes:
/// adding pebbles never makes a vertex unreachable. Vertex-transitive
/// families are checked at vertex 0 only.
pub fn rubbling_number(graph: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let lower = lower_bound_diameter(graph)?;
    let cap = match opts.cap {
        Some(c) => c,
        None => default_rho_cap(graph)?,
    };
    if cap < lower {
        return Err(SolveError::CapBelowLowerBound { cap, lower });
    }
    let targets: Vec<usize> = if graph.is_vertex_transitive() {
        vec![0]
    } else {
        (0..graph.vertex_count()).collect()
    };
    // the squishing restriction is only established for rubbling moves
    let squish = opts.squish && opts.mode == MoveSet::Rubbling;
    let mut pools = worker_pools(graph, &targets, opts);
    let mut examined = 0;

    let mut find_failure =
        |size: u64, pools: &mut Vec<Vec<Reacher<'_>>>| -> Result<Option<Witness>, SolveError> {
            for (slot, &target) in targets.iter().enumerate() {
                let candidates = level_candidates(graph, size, squish.then_some(target))?;
                let candidates: Vec<Distribution> = if squish {
                    candidates
                } else {
                    candidates.into_iter().filter(|p| p[target] == 0).collect()
                };
                let mut reachers: Vec<&mut Reacher<'_>> =
                    pools.iter_mut().map(|pool| &mut pool[slot]).collect();
                let (hit, n) = first_hit(&candidates, &mut reachers, |r, p| Ok(!r.reachable(p)?))?;
                examined += n;
                if let Some(idx) = hit {
                    return Ok(Some(Witness::Unreachable {
                        target,
                        distribution: candidates[idx].clone(),
                    }));
                }
            }
            Ok(None)
        };

    let mut last_failure = None;
    for size in lower..=cap {
        match find_failure(size, &mut pools)? {
            Some(w) => last_failure = Some(w),
            None => {
                let witness = match (size > lower, size) {
                    (true, _) => last_failure,
                    (false, 0) => None,
                    (false, _) => find_failure(size - 1, &mut pools)?,
                };
                return Ok(SolveResult {
                    value: size,
                    witness,
                    stats: collect_stats(&pools, examined),
                });
            }
        }
    }
    Err(SolveError::CapExceeded {
        cap,
        witness: last_failure,
    })
}

/// Least `m` admitting a size-`m` distribution from which every vertex is
/// reachable, with the lexicographically least such distribution. The cap
/// defaults to the vertex count, which always suffices.
pub fn optimal_rubbling_number(
    graph: &Graph,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let n = graph.vertex_count();
    let cap = opts.cap.unwrap_or(n as u64);
    if cap < 1 {
        return Err(SolveError::Precondition("cap must be at least 1".into()));
    }
    let targets: Vec<usize> = (0..n).collect();
    let mut pools = worker_pools(graph, &targets, opts);
    let mut examined = 0;
    for size in 1..=cap {
        let candidates = level_candidates(graph, size, None)?;
        let (hit, count) = first_hit(&candidates, &mut pools, |pool, p| {
            for r in pool.iter_mut() {
                if !r.reachable(p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        examined += count;
        if let Some(idx) = hit {
            return Ok(SolveResult {
                value: size,
                witness: Some(Witness::Universal {
                    distribution: candidates[idx].clone(),
                }),
                stats: collect_stats(&pools, examined),
            });
        }
    }
    Err(SolveError::CapExceeded { cap, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_reachable;
    use crate::family::Family;

    fn g(s: &str) -> Graph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    fn rho(s: &str) -> SolveResult {
        rubbling_number(&g(s), &SolveOptions::default()).unwrap()
    }

    fn rho_opt(s: &str) -> SolveResult {
        optimal_rubbling_number(&g(s), &SolveOptions::default()).unwrap()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_diameter(&g("path:5")).unwrap(), 16);
        assert_eq!(lower_bound_diameter(&g("petersen")).unwrap(), 4);
        assert_eq!(lower_bound_diameter(&g("complete:5")).unwrap(), 2);
        assert_eq!(lower_bound_diameter(&g("path:1")).unwrap(), 1);
        let long = g("path:64");
        assert_eq!(
            lower_bound_diameter(&long),
            Err(SolveError::DiameterTooLarge(63))
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho("path:4").value, 8);
        assert_eq!(rho("cycle:5").value, 5);
        let pet = rho("petersen");
        assert_eq!(pet.value, 5);
        let w = pet.witness.unwrap();
        assert_eq!(w.distribution().size(), 4);
    }

    #[test]
    fn rho_witness_replays() {
        for s in ["path:3", "cycle:5", "wheel:4", "kbipartite:2,3"] {
            let graph = g(s);
            let res = rubbling_number(&graph, &SolveOptions::default()).unwrap();
            let Some(Witness::Unreachable {
                target,
                distribution,
            }) = res.witness
            else {
                panic!("{s}: missing witness");
            };
            assert_eq!(distribution.size(), res.value - 1);
            assert!(
                !is_reachable(&graph, &distribution, target, MoveSet::Rubbling)
                    .unwrap()
                    .reachable
            );
        }
    }

    #[test]
    fn single_vertex() {
        let res = rho("path:1");
        assert_eq!(res.value, 1);
        assert_eq!(
            res.witness,
            Some(Witness::Unreachable {
                target: 0,
                distribution: Distribution(vec![0])
            })
        );
        assert_eq!(rho_opt("path:1").value, 1);
    }

    #[test]
    fn rho_opt_examples() {
        let p5 = rho_opt("path:5");
        assert_eq!(p5.value, 3);
        assert_eq!(rho_opt("cycle:7").value, 4);
        assert_eq!(rho_opt("kbipartite:3,3").value, 3);
        let graph = g("path:5");
        let dist = p5.witness.unwrap().distribution().clone();
        for t in 0..5 {
            assert!(
                is_reachable(&graph, &dist, t, MoveSet::Rubbling)
                    .unwrap()
                    .reachable
            );
        }
    }

    #[test]
    fn pebbling_mode() {
        let res = rubbling_number(&g("path:4"), &SolveOptions::pebbling()).unwrap();
        assert_eq!(res.value, 8);
        // the star K_{1,3}: rubbling 4, pebbling needs more
        let star = g("caterpillar:3");
        let rho = rubbling_number(&star, &SolveOptions::default())
            .unwrap()
            .value;
        let pi = rubbling_number(&star, &SolveOptions::pebbling())
            .unwrap()
            .value;
        assert_eq!(rho, 4);
        assert_eq!(pi, 5);
    }

    #[test]
    fn cap_errors() {
        let opts = SolveOptions {
            cap: Some(6),
            ..SolveOptions::default()
        };
        match rubbling_number(&g("path:4"), &opts) {
            Err(SolveError::CapBelowLowerBound { cap: 6, lower: 8 }) => {}
            other => panic!("{other:?}"),
        }
        let opts = SolveOptions {
            cap: Some(4),
            ..SolveOptions::default()
        };
        match rubbling_number(&g("cycle:5"), &opts) {
            Err(SolveError::CapExceeded {
                cap: 4,
                witness: Some(w),
            }) => {
                assert_eq!(w.distribution().size(), 4)
            }
            other => panic!("{other:?}"),
        }
        let opts = SolveOptions {
            cap: Some(2),
            ..SolveOptions::default()
        };
        assert!(matches!(
            optimal_rubbling_number(&g("path:6"), &opts),
            Err(SolveError::CapExceeded { cap: 2, .. })
        ));
    }

    #[test]
    fn workers_do_not_change_answers() {
        for s in ["cycle:6", "wheel:5", "path:4"] {
            let one = rubbling_number(&g(s), &SolveOptions::default()).unwrap();
            let four = rubbling_number(&g(s), &SolveOptions::default().with_workers(4)).unwrap();
            assert_eq!(one.value, four.value);
            assert_eq!(one.witness, four.witness);
            let one = optimal_rubbling_number(&g(s), &SolveOptions::default()).unwrap();
            let three =
                optimal_rubbling_number(&g(s), &SolveOptions::default().with_workers(3)).unwrap();
            assert_eq!(one.witness, three.witness);
        }
    }
}
