//! Named graph families and their canonical labelings.
//!
//! | family | DSL | labeling |
//! |---|---|---|
//! | path `P_n` | `path:N` | consecutive indices `0..n` |
//! | cycle `C_n` | `cycle:N` | consecutive indices, `n-1 ~ 0` |
//! | complete `K_n` | `complete:N` | `0..n` |
//! | wheel `W_n` | `wheel:N` | hub `0`, rim cycle `1..=n` |
//! | complete bipartite `K_{m,n}` | `kbipartite:M,N` | part A `0..m`, part B `m..m+n` |
//! | hypercube `Q^n` | `hypercube:N` | index = bit string, edges flip one bit |
//! | Petersen | `petersen` | outer cycle `0..5`, inner `5..10` with `5+i ~ 5+(i+2)%5`, spokes `i ~ i+5` |
//! | caterpillar | `caterpillar:L1,...,Ls` | spine `0..s`, then legs grouped by spine vertex |

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Wheel with `n` spikes: a hub joined to every vertex of `C_n`.
    Wheel(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Petersen,
    /// Leg counts per spine vertex, in spine order.
    Caterpillar(Vec<usize>),
}

/// Family metadata attached to generated graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub family: Family,
    pub vertex_transitive: bool,
    pub labeling: &'static str,
}

impl Family {
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |what: String| Err(GraphError::InvalidParameter(what));
        match self {
            Family::Path(0) => bad("path needs n >= 1, got 0".into()),
            Family::Cycle(n) if *n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            Family::Complete(0) => bad("complete needs n >= 1, got 0".into()),
            Family::Wheel(n) if *n < 3 => bad(format!("wheel needs n >= 3 spikes, got {n}")),
            Family::CompleteBipartite(m, n) if *m == 0 || *n == 0 => {
                bad(format!("kbipartite needs m, n >= 1, got {m},{n}"))
            }
            Family::Hypercube(0) => bad("hypercube needs n >= 1, got 0".into()),
            Family::Hypercube(n) if *n > 20 => bad(format!("hypercube dimension {n} is too large")),
            Family::Caterpillar(legs) if legs.is_empty() => {
                bad("caterpillar needs at least one spine vertex".into())
            }
            _ => Ok(()),
        }
    }

    pub fn vertex_transitive(&self) -> bool {
        matches!(
            self,
            Family::Complete(_) | Family::Cycle(_) | Family::Hypercube(_) | Family::Petersen
        )
    }

    fn labeling(&self) -> &'static str {
        match self {
            Family::Path(_) => "consecutive indices",
            Family::Cycle(_) => "consecutive indices, last adjacent to 0",
            Family::Complete(_) => "all pairs",
            Family::Wheel(_) => "hub 0, rim 1..=n in cyclic order",
            Family::CompleteBipartite(..) => "part A first, then part B",
            Family::Hypercube(_) => "index is the bit string",
            Family::Petersen => "outer cycle 0..5, inner pentagram 5..10, spokes i~i+5",
            Family::Caterpillar(_) => "spine first, then legs grouped by spine vertex",
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let (n, edges) = match self {
            Family::Path(n) => (*n, (1..*n).map(|i| (i - 1, i)).collect()),
            Family::Cycle(n) => (*n, (0..*n).map(|i| (i, (i + 1) % n)).collect()),
            Family::Complete(n) => {
                let mut edges = Vec::new();
                for u in 0..*n {
                    for v in u + 1..*n {
                        edges.push((u, v));
                    }
                }
                (*n, edges)
            }
            Family::Wheel(n) => {
                let mut edges: Vec<_> = (1..=*n).map(|i| (0, i)).collect();
                edges.extend((1..=*n).map(|i| (i, i % n + 1)));
                (n + 1, edges)
            }
            Family::CompleteBipartite(a, b) => {
                let mut edges = Vec::new();
                for u in 0..*a {
                    for v in *a..a + b {
                        edges.push((u, v));
                    }
                }
                (a + b, edges)
            }
            Family::Hypercube(d) => {
                let n = 1usize << d;
                let mut edges = Vec::new();
                for u in 0..n {
                    for bit in 0..*d {
                        let v = u ^ (1 << bit);
                        if u < v {
                            edges.push((u, v));
                        }
                    }
                }
                (n, edges)
            }
            Family::Petersen => {
                let mut edges = Vec::new();
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                    edges.push((i, i + 5));
                }
                (10, edges)
            }
            Family::Caterpillar(legs) => {
                let spine = legs.len();
                let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
                let mut next = spine;
                for (s, &count) in legs.iter().enumerate() {
                    for _ in 0..count {
                        edges.push((s, next));
                        next += 1;
                    }
                }
                (next, edges)
            }
        };
        Ok(Graph::new(n, &edges)?.with_family(FamilyTag {
            family: self.clone(),
            vertex_transitive: self.vertex_transitive(),
            labeling: self.labeling(),
        }))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Wheel(n) => write!(f, "wheel:{n}"),
            Family::CompleteBipartite(m, n) => write!(f, "kbipartite:{m},{n}"),
            Family::Hypercube(n) => write!(f, "hypercube:{n}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Caterpillar(legs) => {
                let legs: Vec<String> = legs.iter().map(usize::to_string).collect();
                write!(f, "caterpillar:{}", legs.join(","))
            }
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, params) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let numbers = || -> Result<Vec<usize>, GraphError> {
            let p = params.ok_or_else(|| {
                GraphError::InvalidParameter(format!("{kind} needs parameters, e.g. {kind}:4"))
            })?;
            p.split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        GraphError::InvalidParameter(format!("{t:?} is not a nonnegative integer"))
                    })
                })
                .collect()
        };
        let single = || -> Result<usize, GraphError> {
            match numbers()?.as_slice() {
                [n] => Ok(*n),
                other => Err(GraphError::InvalidParameter(format!(
                    "{kind} takes one parameter, got {}",
                    other.len()
                ))),
            }
        };
        let family = match kind {
            "path" => Family::Path(single()?),
            "cycle" => Family::Cycle(single()?),
            "complete" => Family::Complete(single()?),
            "wheel" => Family::Wheel(single()?),
            "hypercube" => Family::Hypercube(single()?),
            "kbipartite" => match numbers()?.as_slice() {
                [m, n] => Family::CompleteBipartite(*m, *n),
                other => {
                    return Err(GraphError::InvalidParameter(format!(
                        "kbipartite takes two parameters, got {}",
                        other.len()
                    )))
                }
            },
            "petersen" if params.is_none() => Family::Petersen,
            "petersen" => {
                return Err(GraphError::InvalidParameter(
                    "petersen takes no parameters".into(),
                ))
            }
            "caterpillar" => Family::Caterpillar(numbers()?),
            other => {
                return Err(GraphError::InvalidParameter(format!(
                    "unknown family {other:?}"
                )))
            }
        };
        family.validate()?;
        Ok(family)
    }
}
