//! Canonical labeling for small graphs.
//!
//! The canonical form is the lexicographically least upper-triangular adjacency
//! string over all vertex orders that respect an invariant ordered partition
//! (degree classes refined by neighbor colors). Bits are read column by column,
//! `(0,1), (0,2), (1,2), (0,3), ...`, so a partial order fixes a prefix of the
//! string and the search can prune on it. Worst case is exponential; callers
//! are held to a vertex-count bound.

use std::fmt;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

/// Default vertex-count bound for canonicalization.
pub const DEFAULT_CANON_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A canonical form together with the vertex order that realizes it:
/// `order[p]` is the original vertex placed at canonical position `p`.
#[derive(Clone, Debug)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    pub order: Vec<Vertex>,
}

impl CanonicalLabeling {
    /// The input graph relabeled so that `order[p]` becomes `p`.
    pub fn relabel(&self, g: &Graph) -> Graph {
        let mut perm = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            perm[v] = p;
        }
        g.permuted(&perm)
    }
}

struct Matrix {
    n: usize,
    cells: Vec<bool>,
}

impl Matrix {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut cells = vec![false; n * n];
        for (u, v) in g.edges() {
            cells[u * n + v] = true;
            cells[v * n + u] = true;
        }
        Matrix { n, cells }
    }

    #[inline]
    fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.cells[u * self.n + v]
    }

    fn twins(&self, u: Vertex, w: Vertex) -> bool {
        (0..self.n)
            .filter(|&x| x != u && x != w)
            .all(|x| self.adj(u, x) == self.adj(w, x))
    }
}

/// Invariant ordered partition: start from degree classes, split by the
/// multiset of neighbor colors until stable. Colors are ranked by their
/// signatures, so the cell order does not depend on the input labeling.
pub(crate) fn refined_partition(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&color);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut ranked = sigs.clone();
        ranked.sort();
        ranked.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| ranked.binary_search(s).expect("signature present"))
            .collect();
        let next_classes = ranked.len();
        color = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

fn count_distinct(xs: &[usize]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    m: &'a Matrix,
    slot_cell: Vec<usize>,
    cells: Vec<Vec<Vertex>>,
    used: Vec<bool>,
    order: Vec<Vertex>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<Vertex>)>,
}

impl Search<'_> {
    /// `equal` is true while the current prefix matches the best string so
    /// far. Returns true if the best string was replaced below this node.
    fn descend(&mut self, mut equal: bool) -> bool {
        let depth = self.order.len();
        if depth == self.m.n {
            let replace = match &self.best {
                None => true,
                Some(_) => !equal,
            };
            if replace {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return replace;
        }
        let cell = self.slot_cell[depth];
        let candidates: Vec<Vertex> = self.cells[cell]
            .iter()
            .copied()
            .filter(|&v| !self.used[v])
            .collect();
        let col_start = self.bits.len();
        let mut tried: Vec<Vertex> = Vec::new();
        let mut updated = false;
        for w in candidates {
            if tried.iter().any(|&u| self.m.twins(u, w)) {
                continue;
            }
            tried.push(w);
            for &u in &self.order {
                self.bits.push(self.m.adj(u, w));
            }
            let mut child_equal = false;
            let mut prune = false;
            if equal {
                if let Some((best, _)) = &self.best {
                    match self.bits[col_start..].cmp(&best[col_start..col_start + depth]) {
                        std::cmp::Ordering::Greater => prune = true,
                        std::cmp::Ordering::Equal => child_equal = true,
                        std::cmp::Ordering::Less => {}
                    }
                }
            }
            if !prune {
                self.used[w] = true;
                self.order.push(w);
                if self.descend(child_equal) {
                    updated = true;
                    equal = true;
                }
                self.order.pop();
                self.used[w] = false;
            }
            self.bits.truncate(col_start);
        }
        updated
    }
}

/// Canonical labeling under an explicit vertex-count bound.
pub fn canonical_labeling_with_bound(
    g: &Graph,
    bound: usize,
) -> Result<CanonicalLabeling, GraphError> {
    let n = g.n();
    if n > bound {
        return Err(GraphError::CanonBound { n, bound });
    }
    let m = Matrix::new(g);
    let cells = refined_partition(g);
    let slot_cell = cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat_n(i, c.len()))
        .collect();
    let mut search = Search {
        m: &m,
        slot_cell,
        cells,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.descend(false);
    let (bits, order) = search.best.expect("at least one ordering exists");
    Ok(CanonicalLabeling {
        form: CanonicalForm { n, bits },
        order,
    })
}

pub fn canonical_labeling(g: &Graph) -> Result<CanonicalLabeling, GraphError> {
    canonical_labeling_with_bound(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_with_bound(g: &Graph, bound: usize) -> Result<CanonicalForm, GraphError> {
    Ok(canonical_labeling_with_bound(g, bound)?.form)
}

/// Canonical form under [`DEFAULT_CANON_BOUND`].
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    canonical_form_with_bound(g, DEFAULT_CANON_BOUND)
}

pub fn are_isomorphic_with_bound(g: &Graph, h: &Graph, bound: usize) -> Result<bool, GraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        // still enforce the bound so callers see a consistent refusal
        for x in [g, h] {
            if x.n() > bound {
                return Err(GraphError::CanonBound { n: x.n(), bound });
            }
        }
        return Ok(false);
    }
    if g.degree_sequence().sorted_desc() != h.degree_sequence().sorted_desc() {
        if g.n() > bound {
            return Err(GraphError::CanonBound { n: g.n(), bound });
        }
        return Ok(false);
    }
    Ok(canonical_form_with_bound(g, bound)? == canonical_form_with_bound(h, bound)?)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    are_isomorphic_with_bound(g, h, DEFAULT_CANON_BOUND)
}

/// Order of the automorphism group, by backtracking over the refined
/// partition. Twin vertices give identical subtrees, so their counts are
/// computed once.
pub fn automorphism_count(g: &Graph) -> u128 {
    let m = Matrix::new(g);
    let cells = refined_partition(g);
    let mut cell_of = vec![0; g.n()];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            cell_of[v] = i;
        }
    }
    let domain: Vec<Vertex> = cells.iter().flatten().copied().collect();
    let mut image = vec![usize::MAX; g.n()];
    let mut used = vec![false; g.n()];
    count_extensions(&m, &cells, &cell_of, &domain, 0, &mut image, &mut used)
}

fn count_extensions(
    m: &Matrix,
    cells: &[Vec<Vertex>],
    cell_of: &[usize],
    domain: &[Vertex],
    depth: usize,
    image: &mut [Vertex],
    used: &mut [bool],
) -> u128 {
    if depth == domain.len() {
        return 1;
    }
    let v = domain[depth];
    let mut total = 0u128;
    let mut done: Vec<(Vertex, u128)> = Vec::new();
    for &w in &cells[cell_of[v]] {
        if used[w] {
            continue;
        }
        let consistent = domain[..depth]
            .iter()
            .all(|&u| m.adj(u, v) == m.adj(image[u], w));
        if !consistent {
            continue;
        }
        if let Some(&(_, c)) = done.iter().find(|(u, _)| m.twins(*u, w)) {
            total += c;
            continue;
        }
        used[w] = true;
        image[v] = w;
        let c = count_extensions(m, cells, cell_of, domain, depth + 1, image, used);
        image[v] = usize::MAX;
        used[w] = false;
        done.push((w, c));
        total += c;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5_2() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn s23() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn triangle_labelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 1), (0, 2), (1, 0)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn two_tree_by_apexes_matches_kpath() {
        // triangle {0,1,2}, apex 3 on {1,2}, apex 4 on {1,3}
        let built =
            Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 1), (3, 2), (4, 1), (4, 3)]).unwrap();
        assert!(are_isomorphic(&built, &p5_2()).unwrap());
        assert!(!are_isomorphic(&p5_2(), &s23()).unwrap());
        assert_ne!(canonical_form(&p5_2()).unwrap(), canonical_form(&s23()).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let g = Graph::empty(11);
        assert_eq!(
            canonical_form(&g),
            Err(GraphError::CanonBound { n: 11, bound: 10 })
        );
        assert!(canonical_form_with_bound(&g, 11).is_ok());
    }

    #[test]
    fn relabel_realizes_form() {
        let lab = canonical_labeling(&p5_2()).unwrap();
        let canon = lab.relabel(&p5_2());
        assert_eq!(canonical_labeling(&canon).unwrap().form, lab.form);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphism_count(&Graph::complete(4)), 24);
        assert_eq!(automorphism_count(&p5_2()), 2);
        // swap the base pair and permute three leaves
        assert_eq!(automorphism_count(&s23()), 12);
        assert_eq!(automorphism_count(&Graph::empty(3)), 6);
    }
}
