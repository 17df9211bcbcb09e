//! k-trees: construction, recognition and structural decomposition.
//!
//! A k-tree starts from the clique `K_k` and grows by adding a vertex joined to
//! an existing k-clique. Recognition runs the growth backwards: peel off
//! k-simplicial vertices (degree k, clique neighborhood) until `K_k` is left.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::KTreeError;
use crate::graph::{Graph, Vertex};

/// Vertex removal sequence plus the terminal `K_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    /// The `n - k` eliminated vertices, first removed first.
    pub order: Vec<Vertex>,
    /// The k vertices left at the end.
    pub residue: Vec<Vertex>,
}

impl EliminationOrder {
    /// Replays the removals on `g`: every vertex must have exactly `k` live
    /// neighbors forming a clique when it is removed, and the residue must be a
    /// k-clique covering what is left.
    pub fn is_valid_for(&self, g: &Graph, k: usize) -> bool {
        let n = g.n();
        if self.order.len() + self.residue.len() != n || self.residue.len() != k {
            return false;
        }
        let mut alive = vec![true; n];
        for &v in &self.order {
            if v >= n || !alive[v] {
                return false;
            }
            if !is_simplicial_in(g, v, k, &alive) {
                return false;
            }
            alive[v] = false;
        }
        let left: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        let mut res = self.residue.clone();
        res.sort_unstable();
        left == res && g.is_clique(&left)
    }

    /// Position of every vertex in the order; residue vertices come last.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().chain(self.residue.iter()).enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// A graph certified as a k-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTree {
    graph: Graph,
    k: usize,
    elim: EliminationOrder,
}

impl KTree {
    /// Wraps `graph` after checking `elim` by replay.
    pub fn from_parts(graph: Graph, k: usize, elim: EliminationOrder) -> Result<Self, KTreeError> {
        if k == 0 {
            return Err(KTreeError::ZeroK);
        }
        if !elim.is_valid_for(&graph, k) {
            return Err(KTreeError::NotAKTree {
                k,
                residue_vertices: graph.n(),
            });
        }
        Ok(KTree { graph, k, elim })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn elimination(&self) -> &EliminationOrder {
        &self.elim
    }
}

impl fmt::Display for KTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-tree on {} vertices", self.k, self.n())
    }
}

/// `C(k, 2) + k (n - k)`.
pub fn ktree_edge_count(k: usize, n: usize) -> usize {
    k * (k.saturating_sub(1)) / 2 + k * n.saturating_sub(k)
}

fn check_kn(k: usize, n: usize) -> Result<(), KTreeError> {
    if k == 0 {
        return Err(KTreeError::ZeroK);
    }
    if n < k {
        return Err(KTreeError::TooFewVertices { k, n });
    }
    Ok(())
}

/// Builds from an attachment schedule: vertex `k + i` joins `attach[i]`.
fn from_schedule(k: usize, attach: &[Vec<Vertex>]) -> KTree {
    let n = k + attach.len();
    let mut edges = Vec::with_capacity(ktree_edge_count(k, n));
    for u in 0..k {
        for v in (u + 1)..k {
            edges.push((u, v));
        }
    }
    for (i, clique) in attach.iter().enumerate() {
        edges.extend(clique.iter().map(|&u| (u, k + i)));
    }
    let graph = Graph::from_edges(n, &edges).expect("schedule uses valid ids");
    let elim = EliminationOrder {
        order: (k..n).rev().collect(),
        residue: (0..k).collect(),
    };
    debug_assert!(elim.is_valid_for(&graph, k));
    KTree { graph, k, elim }
}

/// The k-star: every vertex beyond the base clique `{0..k-1}` is joined to the
/// whole base.
pub fn gen_kstar(k: usize, n: usize) -> Result<KTree, KTreeError> {
    check_kn(k, n)?;
    let base: Vec<Vertex> = (0..k).collect();
    Ok(from_schedule(k, &vec![base; n - k]))
}

/// The k-path: vertex `i >= k` is joined to the k vertices preceding it.
pub fn gen_kpath(k: usize, n: usize) -> Result<KTree, KTreeError> {
    check_kn(k, n)?;
    let attach: Vec<Vec<Vertex>> = (k..n).map(|i| ((i - k)..i).collect()).collect();
    Ok(from_schedule(k, &attach))
}

/// `K_k`, the smallest k-tree.
pub fn base_clique(k: usize) -> Result<KTree, KTreeError> {
    gen_kpath(k, k)
}

/// Adds a vertex (id `n`) joined to the k-clique `clique`.
pub fn attach_vertex(t: &KTree, clique: &[Vertex]) -> Result<KTree, KTreeError> {
    let mut c = clique.to_vec();
    c.sort_unstable();
    c.dedup();
    let ok = c.len() == t.k && c.iter().all(|&v| v < t.n()) && t.graph.is_clique(&c);
    if !ok {
        return Err(KTreeError::NotAClique {
            set: clique.to_vec(),
            k: t.k,
        });
    }
    let graph = t.graph.with_new_vertex(&c);
    let mut order = Vec::with_capacity(t.elim.order.len() + 1);
    order.push(t.n());
    order.extend_from_slice(&t.elim.order);
    Ok(KTree {
        graph,
        k: t.k,
        elim: EliminationOrder {
            order,
            residue: t.elim.residue.clone(),
        },
    })
}

/// Random k-tree by random growth: each new vertex joins a k-clique drawn
/// uniformly from the registry of all k-cliques built so far. This samples
/// construction sequences, not unlabeled k-trees uniformly.
pub fn gen_random(k: usize, n: usize, seed: u64) -> Result<KTree, KTreeError> {
    check_kn(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut registry: Vec<Vec<Vertex>> = vec![(0..k).collect()];
    let mut attach = Vec::with_capacity(n - k);
    for v in k..n {
        let c = registry[rng.gen_range(0..registry.len())].clone();
        for i in 0..k {
            let mut fresh = c.clone();
            fresh[i] = v;
            fresh.sort_unstable();
            registry.push(fresh);
        }
        attach.push(c);
    }
    Ok(from_schedule(k, &attach))
}

fn is_simplicial_in(g: &Graph, v: Vertex, k: usize, alive: &[bool]) -> bool {
    let nb: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
    nb.len() == k && g.is_clique(&nb)
}

/// True iff `v` has degree `k` and a clique neighborhood.
pub fn is_k_simplicial(g: &Graph, v: Vertex, k: usize) -> bool {
    g.degree(v) == k && g.is_clique(&g.neighbors(v).iter().copied().collect::<Vec<_>>())
}

/// All k-simplicial vertices of `g`, with no special cases for small graphs.
pub fn simplicial_vertices(g: &Graph, k: usize) -> BTreeSet<Vertex> {
    (0..g.n()).filter(|&v| is_k_simplicial(g, v, k)).collect()
}

/// Why a graph is not a k-tree: the part greedy elimination could not reduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionFailure {
    pub k: usize,
    /// Original ids of the irreducible vertices.
    pub residue_vertices: Vec<Vertex>,
    /// Induced subgraph on those vertices, relabeled in increasing order.
    pub residue: Graph,
}

impl From<RecognitionFailure> for KTreeError {
    fn from(f: RecognitionFailure) -> Self {
        KTreeError::NotAKTree {
            k: f.k,
            residue_vertices: f.residue_vertices.len(),
        }
    }
}

/// Greedy recognition, always removing the smallest-id k-simplicial vertex.
/// For k-trees any greedy choice reaches `K_k`, so a stuck state proves the
/// graph is not a k-tree.
pub fn recognize(g: &Graph, k: usize) -> Result<KTree, RecognitionFailure> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n.saturating_sub(k));
    let mut live = n;
    if k > 0 && n >= k {
        while live > k {
            let next = (0..n).find(|&v| alive[v] && is_simplicial_in(g, v, k, &alive));
            match next {
                Some(v) => {
                    alive[v] = false;
                    order.push(v);
                    live -= 1;
                }
                None => break,
            }
        }
    }
    let left: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    if k > 0 && left.len() == k && g.is_clique(&left) {
        Ok(KTree {
            graph: g.clone(),
            k,
            elim: EliminationOrder {
                order,
                residue: left,
            },
        })
    } else {
        let keep: BTreeSet<Vertex> = left.iter().copied().collect();
        Err(RecognitionFailure {
            k,
            residue: g.induced_on(&keep).graph,
            residue_vertices: left,
        })
    }
}

/// How to read the simplicial set of `K_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CliqueConvention {
    /// Every vertex of `K_{k+1}` is simplicial (what the degree test says).
    #[default]
    AllVertices,
    /// A single vertex (the smallest id) stands for the whole clique.
    SingleVertex,
}

/// Iterated simplicial layers: `layers[0]` is the simplicial set of the
/// graph, `layers[i+1]` that of the graph with earlier layers removed.
/// `K_k` contributes no layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialLayers {
    pub layers: Vec<BTreeSet<Vertex>>,
    /// Vertices left after the last layer (a k-clique, or empty when the last
    /// step peeled a whole `K_{k+1}`).
    pub terminal: BTreeSet<Vertex>,
    pub convention: CliqueConvention,
}

impl SimplicialLayers {
    /// Layer `i` counted from 1, or the empty set.
    pub fn layer(&self, i: usize) -> BTreeSet<Vertex> {
        i.checked_sub(1)
            .and_then(|j| self.layers.get(j))
            .cloned()
            .unwrap_or_default()
    }
}

fn simplicial_set(g: &Graph, k: usize, alive: &[bool], convention: CliqueConvention) -> BTreeSet<Vertex> {
    let live: Vec<Vertex> = (0..g.n()).filter(|&v| alive[v]).collect();
    if live.len() <= k {
        return BTreeSet::new();
    }
    if live.len() == k + 1 && convention == CliqueConvention::SingleVertex {
        return live.into_iter().take(1).collect();
    }
    live.into_iter().filter(|&v| is_simplicial_in(g, v, k, alive)).collect()
}

pub fn simplicial_layers(t: &KTree, convention: CliqueConvention) -> SimplicialLayers {
    let g = &t.graph;
    let mut alive = vec![true; g.n()];
    let mut layers = Vec::new();
    loop {
        let layer = simplicial_set(g, t.k, &alive, convention);
        if layer.is_empty() {
            break;
        }
        for &v in &layer {
            alive[v] = false;
        }
        layers.push(layer);
    }
    SimplicialLayers {
        layers,
        terminal: (0..g.n()).filter(|&v| alive[v]).collect(),
        convention,
    }
}

/// The first simplicial layer under the default convention.
pub fn first_layer(t: &KTree) -> BTreeSet<Vertex> {
    simplicial_set(&t.graph, t.k, &vec![true; t.n()], CliqueConvention::AllVertices)
}

/// Every k-clique of `g`, each sorted, in lexicographic order.
pub fn k_cliques(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    fn extend(g: &Graph, k: usize, cur: &mut Vec<Vertex>, cands: &[Vertex], out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if cands.len() - i < k - cur.len() {
                break;
            }
            let next: Vec<Vertex> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            cur.push(v);
            extend(g, k, cur, &next, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    extend(g, k, &mut Vec::with_capacity(k), &all, &mut out);
    out
}

/// A k-clique whose removal disconnects the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutClique {
    pub clique: Vec<Vertex>,
    pub components: Vec<Vec<Vertex>>,
}

impl CutClique {
    /// Number of components of `G - clique`.
    pub fn w(&self) -> usize {
        self.components.len()
    }
}

/// All k-cliques `S` with `w(G - S) >= 2`.
pub fn cut_kcliques(t: &KTree) -> Vec<CutClique> {
    k_cliques(&t.graph, t.k)
        .into_iter()
        .filter_map(|clique| {
            let removed: BTreeSet<Vertex> = clique.iter().copied().collect();
            let components = t.graph.components(&removed);
            (components.len() >= 2).then_some(CutClique { clique, components })
        })
        .collect()
}

/// A cut k-clique together with one branch holding exactly one simplicial
/// vertex of the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperPendant {
    pub cut_clique: Vec<Vertex>,
    pub branch: Vec<Vertex>,
    pub simplicial_tip: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PendantDecomposition {
    /// No k-clique splits the graph into three or more parts; the graph is a
    /// single hyper pendant.
    WholeGraph,
    Pendants(Vec<HyperPendant>),
}

/// Branches of `cut` holding exactly one vertex of `tips`.
pub(crate) fn pendants_at(cut: &CutClique, tips: &BTreeSet<Vertex>) -> Vec<HyperPendant> {
    cut.components
        .iter()
        .filter_map(|comp| {
            let mut hits = comp.iter().filter(|v| tips.contains(v));
            match (hits.next(), hits.next()) {
                (Some(&tip), None) => Some(HyperPendant {
                    cut_clique: cut.clique.clone(),
                    branch: comp.clone(),
                    simplicial_tip: tip,
                }),
                _ => None,
            }
        })
        .collect()
}

pub fn hyper_pendant_decomposition(t: &KTree) -> PendantDecomposition {
    let tips = first_layer(t);
    let branching: Vec<CutClique> = cut_kcliques(t).into_iter().filter(|c| c.w() >= 3).collect();
    if branching.is_empty() {
        return PendantDecomposition::WholeGraph;
    }
    PendantDecomposition::Pendants(branching.iter().flat_map(|c| pendants_at(c, &tips)).collect())
}

/// Eliminates `branch` from `G[clique ∪ branch]` while keeping `clique`,
/// smallest simplicial id first. `None` if the branch cannot be peeled down to
/// the clique.
pub fn pendant_elimination(g: &Graph, k: usize, clique: &[Vertex], branch: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut alive = vec![false; g.n()];
    for &v in clique.iter().chain(branch) {
        alive[v] = true;
    }
    let mut rest: BTreeSet<Vertex> = branch.iter().copied().collect();
    let mut order = Vec::with_capacity(branch.len());
    while !rest.is_empty() {
        let v = *rest.iter().find(|&&v| is_simplicial_in(g, v, k, &alive))?;
        alive[v] = false;
        rest.remove(&v);
        order.push(v);
    }
    Some(order)
}

/// True iff removing `order` from `G[clique ∪ order]` one by one is a
/// simplicial elimination that leaves `clique`.
pub fn is_pendant_elimination(g: &Graph, k: usize, clique: &[Vertex], order: &[Vertex]) -> bool {
    let mut alive = vec![false; g.n()];
    for &v in clique.iter().chain(order) {
        alive[v] = true;
    }
    for &v in order {
        if !is_simplicial_in(g, v, k, &alive) {
            return false;
        }
        alive[v] = false;
    }
    g.is_clique(clique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    fn degrees(t: &KTree) -> Vec<usize> {
        t.graph().degree_sequence().0
    }

    /// triangle {0,1,2} with apexes 3, 4, 5 on its three edges
    pub(crate) fn three_apex() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)],
        )
        .unwrap()
    }

    #[test]
    fn kstar_examples() {
        assert_eq!(degrees(&gen_kstar(1, 5).unwrap()), vec![4, 1, 1, 1, 1]);
        assert_eq!(degrees(&gen_kstar(2, 5).unwrap()), vec![4, 4, 2, 2, 2]);
        assert_eq!(gen_kstar(3, 3).unwrap().graph(), &Graph::complete(3));
        assert_eq!(gen_kstar(3, 2), Err(KTreeError::TooFewVertices { k: 3, n: 2 }));
    }

    #[test]
    fn kpath_examples() {
        assert_eq!(degrees(&gen_kpath(2, 6).unwrap()), vec![2, 3, 4, 4, 3, 2]);
        assert_eq!(degrees(&gen_kpath(2, 4).unwrap()), vec![2, 3, 3, 2]);
        for k in 1..5 {
            assert_eq!(gen_kpath(k, k + 1).unwrap().graph(), &Graph::complete(k + 1));
        }
        assert!(gen_kpath(0, 3).is_err());
    }

    #[test]
    fn attach_examples() {
        let k2 = base_clique(2).unwrap();
        let k3 = attach_vertex(&k2, &[0, 1]).unwrap();
        assert_eq!(k3.graph(), &Graph::complete(3));
        let t = attach_vertex(&k3, &[1, 2]).unwrap();
        let t = attach_vertex(&t, &[1, 3]).unwrap();
        let mut ds = degrees(&t);
        ds.sort_unstable();
        assert_eq!(ds, vec![2, 2, 3, 3, 4]);
        assert!(are_isomorphic(t.graph(), gen_kpath(2, 5).unwrap().graph()).unwrap());
        assert!(t.elimination().is_valid_for(t.graph(), 2));
        // 0 and 3 are not adjacent
        assert!(matches!(attach_vertex(&t, &[0, 3]), Err(KTreeError::NotAClique { .. })));
        assert!(attach_vertex(&t, &[0, 1, 2]).is_err());
    }

    #[test]
    fn random_examples() {
        assert_eq!(gen_random(2, 3, 99).unwrap().graph(), &Graph::complete(3));
        let a = gen_random(2, 50, 7).unwrap();
        let b = gen_random(2, 50, 7).unwrap();
        assert_eq!(a.graph().edges(), b.graph().edges());
        let t = gen_random(3, 10, 1).unwrap();
        assert_eq!(t.graph().edge_count(), 24);
        assert!(recognize(t.graph(), 3).is_ok());
    }

    #[test]
    fn recognition() {
        assert!(recognize(gen_kpath(3, 7).unwrap().graph(), 3).is_ok());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let fail = recognize(&c4, 2).unwrap_err();
        assert_eq!(fail.residue_vertices, vec![0, 1, 2, 3]);
        let fail = recognize(&Graph::complete(4), 2).unwrap_err();
        assert_eq!(fail.residue, Graph::complete(4));
        // wrong k
        assert!(recognize(gen_kpath(2, 6).unwrap().graph(), 3).is_err());
        assert!(recognize(&Graph::complete(3), 0).is_err());
        let ok = recognize(gen_kstar(2, 6).unwrap().graph(), 2).unwrap();
        // once three leaves are gone, vertex 0 is simplicial in the K_3 that remains
        assert_eq!(ok.elimination().order, vec![2, 3, 4, 0]);
        assert_eq!(ok.elimination().residue, vec![1, 5]);
    }

    #[test]
    fn disconnected_is_rejected() {
        // two disjoint triangles have the right local structure but no K_2 residue
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(recognize(&g, 2).is_err());
    }

    #[test]
    fn layer_examples() {
        let s = simplicial_layers(&gen_kstar(2, 5).unwrap(), CliqueConvention::AllVertices);
        assert_eq!(s.layers, vec![set(&[2, 3, 4])]);
        assert_eq!(s.layer(2), set(&[]));
        let p = simplicial_layers(&gen_kpath(2, 6).unwrap(), CliqueConvention::AllVertices);
        assert_eq!(p.layer(1), set(&[0, 5]));
        assert_eq!(p.layer(2), set(&[1, 4]));
        assert_eq!(p.terminal, set(&[2, 3]));
        let kk = simplicial_layers(&base_clique(3).unwrap(), CliqueConvention::AllVertices);
        assert!(kk.layers.is_empty());
    }

    #[test]
    fn clique_conventions() {
        let k4 = gen_kpath(3, 4).unwrap();
        let all = simplicial_layers(&k4, CliqueConvention::AllVertices);
        assert_eq!(all.layers, vec![set(&[0, 1, 2, 3])]);
        assert!(all.terminal.is_empty());
        let one = simplicial_layers(&k4, CliqueConvention::SingleVertex);
        assert_eq!(one.layers, vec![set(&[0])]);
        assert_eq!(one.terminal, set(&[1, 2, 3]));
    }

    #[test]
    fn cut_examples() {
        let cuts = cut_kcliques(&gen_kstar(2, 6).unwrap());
        let base = cuts.iter().find(|c| c.clique == vec![0, 1]).unwrap();
        assert_eq!(base.w(), 4);
        assert!(cut_kcliques(&gen_kpath(3, 4).unwrap()).is_empty());
        let cuts = cut_kcliques(&gen_kpath(2, 5).unwrap());
        let mid = cuts.iter().find(|c| c.clique == vec![1, 2]).unwrap();
        assert_eq!(mid.w(), 2);
    }

    #[test]
    fn pendant_examples() {
        assert_eq!(
            hyper_pendant_decomposition(&gen_kpath(3, 8).unwrap()),
            PendantDecomposition::WholeGraph
        );
        match hyper_pendant_decomposition(&gen_kstar(2, 6).unwrap()) {
            PendantDecomposition::Pendants(ps) => {
                assert_eq!(ps.len(), 4);
                for (p, tip) in ps.iter().zip(2..) {
                    assert_eq!(p.cut_clique, vec![0, 1]);
                    assert_eq!(p.branch, vec![tip]);
                    assert_eq!(p.simplicial_tip, tip);
                }
            }
            other => panic!("{other:?}"),
        }
        // three apexes on a triangle: no 2-clique separates three parts
        let t = recognize(&three_apex(), 2).unwrap();
        assert_eq!(hyper_pendant_decomposition(&t), PendantDecomposition::WholeGraph);
        let g = three_apex();
        let comps = g.components(&set(&[0, 1, 2]));
        assert_eq!(comps.len(), 3);
    }

    #[test]
    fn pendant_elimination_keeps_clique() {
        let t = gen_kpath(2, 6).unwrap();
        let order = pendant_elimination(t.graph(), 2, &[0, 1], &[2, 3, 4, 5]).unwrap();
        assert_eq!(order, vec![5, 4, 3, 2]);
        assert!(is_pendant_elimination(t.graph(), 2, &[0, 1], &order));
        assert!(!is_pendant_elimination(t.graph(), 2, &[0, 1], &[2, 3, 4, 5]));
    }
}
