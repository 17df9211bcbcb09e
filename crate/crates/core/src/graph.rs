//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built; edits go through [`Graph::rewired`],
//! which returns a fresh value.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use crate::error::GraphError;

pub type Vertex = usize;

/// Unordered edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub(crate) fn norm_edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse; self-loops
    /// and out-of-range endpoints are rejected with the offending pair.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                let bad = if u >= n { u } else { v };
                return Err(GraphError::EndpointOutOfRange { u, v, bad, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    fn insert(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn erase(&mut self, u: Vertex, v: Vertex) -> bool {
        let a = self.adj[u].remove(&v);
        let b = self.adj[v].remove(&u);
        a && b
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range((u + 1)..).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence(self.adj.iter().map(BTreeSet::len).collect())
    }

    /// True iff every pair of `set` is adjacent. Empty and singleton sets are
    /// cliques.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && self.adj[u].contains(&v))
        })
    }

    /// Connected components of `G - removed`, each sorted, listed in order of
    /// their smallest vertex.
    pub fn components(&self, removed: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &r in removed {
            if r < n {
                seen[r] = true;
            }
        }
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(&BTreeSet::new()).len() <= 1
    }

    /// Induced subgraph on `V - removed`, relabeled contiguously in increasing
    /// order of the surviving ids.
    pub fn induced_delete(&self, removed: &BTreeSet<Vertex>) -> InducedSubgraph {
        let n = self.n();
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::with_capacity(n);
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut graph = Graph::empty(new_to_old.len());
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (old_to_new[u], old_to_new[v]) {
                graph.insert(a, b);
            }
        }
        InducedSubgraph {
            graph,
            old_to_new,
            new_to_old,
        }
    }

    /// Induced subgraph on `keep` (ids relabeled in increasing order).
    pub fn induced_on(&self, keep: &BTreeSet<Vertex>) -> InducedSubgraph {
        let removed: BTreeSet<Vertex> = (0..self.n()).filter(|v| !keep.contains(v)).collect();
        self.induced_delete(&removed)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    /// Applies an edit batch: every edge in `remove` must exist and every edge
    /// in `add` must be absent (after removals). Returns `None` otherwise.
    pub fn rewired(&self, remove: &[Edge], add: &[Edge]) -> Option<Graph> {
        let mut g = self.clone();
        for &(u, v) in remove {
            if u >= g.n() || v >= g.n() || !g.erase(u, v) {
                return None;
            }
        }
        for &(u, v) in add {
            if u >= g.n() || v >= g.n() || u == v || g.has_edge(u, v) {
                return None;
            }
            g.insert(u, v);
        }
        Some(g)
    }

    /// Adds one vertex adjacent to `attach`.
    pub fn with_new_vertex(&self, attach: &[Vertex]) -> Graph {
        let mut g = self.clone();
        let v = g.adj.len();
        g.adj.push(BTreeSet::new());
        for &u in attach {
            g.insert(u, v);
        }
        g
    }
}

/// Result of [`Graph::induced_delete`]: the subgraph plus both id maps.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

/// Degrees indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Degrees sorted in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut d = self.0.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl Deref for DegreeSequence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
