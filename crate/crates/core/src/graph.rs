//! Simple connected undirected graphs on dense vertex indices.
//!
//! Every [`Graph`] is validated on construction: no loops, no duplicate
//! edges, every endpoint in range, one connected component. Values are
//! immutable afterwards and can be shared freely between solver workers.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::family::FamilyTag;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {0} is not reachable from vertex 0")]
    Disconnected(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
}

/// A simple connected undirected graph.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    family: Option<FamilyTag>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Edges are unordered; `(u, v)` and
    /// `(v, u)` name the same edge and listing both is a duplicate.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut matrix = vec![false; vertex_count * vertex_count];
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexOutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if matrix[u * vertex_count + v] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            matrix[u * vertex_count + v] = true;
            matrix[v * vertex_count + u] = true;
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push((u.min(v), u.max(v)));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        normalized.sort_unstable();
        let graph = Graph {
            vertex_count,
            edges: normalized,
            adjacency,
            matrix,
            family: None,
        };
        let dist = graph.distances_from(0);
        if let Some(unreached) = dist.iter().position(Option::is_none) {
            return Err(GraphError::Disconnected(unreached));
        }
        Ok(graph)
    }

    pub(crate) fn with_family(mut self, tag: FamilyTag) -> Self {
        self.family = Some(tag);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && v < self.vertex_count && self.matrix[u * self.vertex_count + v]
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    /// True only when the generating family is known to be vertex-transitive.
    pub fn is_vertex_transitive(&self) -> bool {
        self.family.as_ref().is_some_and(|f| f.vertex_transitive)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Maximum shortest-path length over all vertex pairs.
    pub fn diameter(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| {
                self.distances_from(v)
                    .into_iter()
                    .map(|d| d.unwrap_or(0))
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Renders the graph in the edge-list text format accepted by
    /// [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// All maximal threads, i.e. maximal paths whose vertices all have degree 2.
    ///
    /// A graph in which every vertex has degree 2 is a cycle; it is reported
    /// through [`ThreadScan::cycle`] instead of as a thread.
    pub fn find_threads(&self) -> ThreadScan {
        if (0..self.vertex_count).all(|v| self.degree(v) == 2) {
            return ThreadScan {
                threads: Vec::new(),
                cycle: Some(self.cycle_order()),
            };
        }
        ThreadScan {
            threads: self.degree_two_runs(None),
            cycle: None,
        }
    }

    /// Maximal threads that avoid `excluded`. On a cycle graph this yields the
    /// single path left after deleting `excluded`.
    pub fn threads_avoiding(&self, excluded: usize) -> Vec<Thread> {
        self.degree_two_runs(Some(excluded))
    }

    fn cycle_order(&self) -> Vec<usize> {
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = self.adjacency[0][0];
        while cur != 0 {
            order.push(cur);
            let next = if self.adjacency[cur][0] == prev {
                self.adjacency[cur][1]
            } else {
                self.adjacency[cur][0]
            };
            prev = cur;
            cur = next;
        }
        order
    }

    // Components of the subgraph induced on degree-2 vertices (minus
    // `excluded`), each laid out as a path starting at its lower end.
    fn degree_two_runs(&self, excluded: Option<usize>) -> Vec<Thread> {
        let member = |v: usize| self.degree(v) == 2 && Some(v) != excluded;
        let member_degree = |v: usize| self.adjacency[v].iter().filter(|&&w| member(w)).count();
        let mut seen = vec![false; self.vertex_count];
        let mut threads = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] || !member(start) || member_degree(start) > 1 {
                continue;
            }
            let mut path = vec![start];
            seen[start] = true;
            let mut cur = start;
            while let Some(w) = self.adjacency[cur]
                .iter()
                .copied()
                .find(|&w| member(w) && !seen[w])
            {
                seen[w] = true;
                path.push(w);
                cur = w;
            }
            threads.push(Thread(path));
        }
        threads
    }

    /// Every maximal arm: a leaf followed by its chain of degree-2 vertices,
    /// ending at the first vertex whose degree is not 2. A path graph yields
    /// the whole path once from each end.
    pub fn find_arms(&self) -> Vec<Arm> {
        let mut arms = Vec::new();
        for leaf in 0..self.vertex_count {
            if self.degree(leaf) != 1 {
                continue;
            }
            let mut path = vec![leaf];
            let mut prev = leaf;
            let mut cur = self.adjacency[leaf][0];
            loop {
                path.push(cur);
                if self.degree(cur) != 2 {
                    break;
                }
                let next = if self.adjacency[cur][0] == prev {
                    self.adjacency[cur][1]
                } else {
                    self.adjacency[cur][0]
                };
                prev = cur;
                cur = next;
            }
            arms.push(Arm(path));
        }
        arms
    }

    /// Checks that `path` lists distinct, consecutively adjacent vertices.
    pub fn is_path(&self, path: &[usize]) -> bool {
        let mut seen = vec![false; self.vertex_count];
        for &v in path {
            if v >= self.vertex_count || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Some(tag) => write!(f, "{}", tag.family),
            None => write!(
                f,
                "graph({} vertices, {} edges)",
                self.vertex_count,
                self.edges.len()
            ),
        }
    }
}

/// Result of [`Graph::find_threads`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadScan {
    pub threads: Vec<Thread>,
    /// Set when every vertex has degree 2; holds the vertices in cyclic order.
    pub cycle: Option<Vec<usize>>,
}

/// A path of degree-2 vertices, listed end to end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread(pub Vec<usize>);

impl Thread {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

/// A path `v_1, ..., v_n` with `deg(v_1) = 1` and `deg(v_2..v_{n-1}) = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arm(pub Vec<usize>);

impl Arm {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Validates the arm conditions against `graph`.
    pub fn is_valid_in(&self, graph: &Graph) -> bool {
        let path = &self.0;
        if path.len() < 2 || !graph.is_path(path) || graph.degree(path[0]) != 1 {
            return false;
        }
        path[1..path.len() - 1]
            .iter()
            .all(|&v| graph.degree(v) == 2)
    }
}

/// Parses the edge-list text format: the first non-comment line holds the
/// vertex count, each further line holds one edge `u v`. Lines starting with
/// `#` and blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut vertex_count = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("expected a vertex index, found {tok:?}"),
            })
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (vertex_count, fields.as_slice()) {
            (None, [n]) => vertex_count = Some(parse(n)?),
            (None, _) => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: "expected the vertex count".into(),
                })
            }
            (Some(_), [u, v]) => edges.push((parse(u)?, parse(v)?)),
            (Some(_), _) => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("expected an edge \"u v\", found {line:?}"),
                })
            }
        }
    }
    let n = vertex_count.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    Graph::new(n, &edges)
}
