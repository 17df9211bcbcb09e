//! Exhaustive census of k-trees on a fixed vertex count.
//!
//! Two labeled methods serve as oracles for each other: growth from every seed
//! clique with labeled dedup, and a brute-force scan over all edge sets of the
//! right size. Classes are formed by canonical form. A third method grows
//! isomorphism classes directly and counts labeled members by orbit size,
//! which reaches sizes the labeled methods cannot.

use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{automorphism_count, canonical_labeling_with_bound, CanonicalForm, DEFAULT_CANON_BOUND};
use crate::error::{EnumerateError, GraphError, KTreeError};
use crate::graph::{norm_edge, Edge, Graph, Vertex};
use crate::indices::{compare_values, index_value, IndexMode, IndexParams, IndexValue};
use crate::ktree::{gen_kpath, gen_kstar, k_cliques, ktree_edge_count, recognize, KTree};
use crate::scalar::Scalar;

/// Largest labeled census the growth method will hold.
pub const DEFAULT_LABELED_BOUND: usize = 1_000_000;
/// Largest number of candidate edge sets the filter method will scan.
pub const DEFAULT_FILTER_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Growth,
    Filter,
    /// Growth over isomorphism classes, labeled count by orbit counting.
    UnlabeledGrowth,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Growth => "growth",
            Method::Filter => "filter",
            Method::UnlabeledGrowth => "unlabeled-growth",
        })
    }
}

/// One isomorphism class, stored under its canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub tree: KTree,
    pub form: CanonicalForm,
    /// Labeled k-trees on `{0..n-1}` in this class.
    pub labeled_members: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub k: usize,
    pub n: usize,
    pub method: Method,
    pub labeled_count: u128,
    /// Set once classes have been formed.
    pub unlabeled_count: Option<usize>,
    /// Every labeled k-tree, for the labeled methods; sorted by edge list.
    pub labeled: Vec<KTree>,
    /// One record per class, ordered by canonical form.
    pub representatives: Vec<ClassRecord>,
    /// Vertex-count bound used for canonical labeling.
    pub canon_bound: usize,
}

fn check_kn(k: usize, n: usize) -> Result<(), EnumerateError> {
    if k == 0 {
        return Err(KTreeError::ZeroK.into());
    }
    if n < k {
        return Err(KTreeError::TooFewVertices { k, n }.into());
    }
    Ok(())
}

fn labeled_report(k: usize, n: usize, method: Method, graphs: Vec<Graph>) -> EnumerationReport {
    let mut labeled: Vec<KTree> = graphs
        .into_iter()
        .map(|g| recognize(&g, k).expect("census members are k-trees"))
        .collect();
    labeled.sort_by_key(|t| t.graph().edges());
    EnumerationReport {
        k,
        n,
        method,
        labeled_count: labeled.len() as u128,
        unlabeled_count: None,
        labeled,
        representatives: Vec::new(),
        canon_bound: DEFAULT_CANON_BOUND,
    }
}

pub fn enumerate_labeled_growth(k: usize, n: usize) -> Result<EnumerationReport, EnumerateError> {
    enumerate_labeled_growth_with_bound(k, n, DEFAULT_LABELED_BOUND)
}

/// All labeled k-trees on `{0..n-1}`: grow from every k-subset as seed clique
/// by attaching unused vertices to existing k-cliques, deduplicating each
/// level on (vertex set, edge set).
pub fn enumerate_labeled_growth_with_bound(k: usize, n: usize, bound: usize) -> Result<EnumerationReport, EnumerateError> {
    check_kn(k, n)?;
    if n > 64 {
        return Err(EnumerateError::LabeledBound { bound });
    }
    let mut level: BTreeMap<(u64, Vec<Edge>), Vec<Vec<Vertex>>> = BTreeMap::new();
    for seed in k_cliques(&Graph::complete(n), k) {
        let mask = seed.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut edges = Vec::new();
        for (i, &a) in seed.iter().enumerate() {
            for &b in &seed[i + 1..] {
                edges.push(norm_edge(a, b));
            }
        }
        level.insert((mask, edges), vec![seed]);
    }
    for _ in k..n {
        if level.len() > bound {
            return Err(EnumerateError::LabeledBound { bound });
        }
        let mut next: BTreeMap<(u64, Vec<Edge>), Vec<Vec<Vertex>>> = BTreeMap::new();
        // each entry keeps the k-cliques available for attachment
        for ((mask, edges), cliques) in &level {
            for v in (0..n).filter(|&v| mask & (1 << v) == 0) {
                for c in cliques {
                    let mut e = edges.clone();
                    e.extend(c.iter().map(|&x| norm_edge(x, v)));
                    e.sort_unstable();
                    let key = (mask | 1 << v, e);
                    if next.contains_key(&key) {
                        continue;
                    }
                    let mut cl = cliques.clone();
                    for i in 0..k {
                        let mut fresh = c.clone();
                        fresh[i] = v;
                        fresh.sort_unstable();
                        cl.push(fresh);
                    }
                    next.insert(key, cl);
                    if next.len() > bound {
                        return Err(EnumerateError::LabeledBound { bound });
                    }
                }
            }
        }
        level = next;
    }
    let graphs = level
        .into_keys()
        .map(|(_, edges)| Graph::from_edges(n, &edges))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(labeled_report(k, n, Method::Growth, graphs))
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn enumerate_labeled_filter(k: usize, n: usize) -> Result<EnumerationReport, EnumerateError> {
    enumerate_labeled_filter_with_budget(k, n, DEFAULT_FILTER_BUDGET)
}

/// All labeled k-trees on `{0..n-1}` by scanning every graph with the k-tree
/// edge count and keeping those that [`recognize`] accepts.
pub fn enumerate_labeled_filter_with_budget(
    k: usize,
    n: usize,
    budget: u128,
) -> Result<EnumerationReport, EnumerateError> {
    check_kn(k, n)?;
    let pairs: Vec<Edge> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let m = ktree_edge_count(k, n);
    let needed = binomial(pairs.len() as u128, m as u128);
    if needed > budget {
        return Err(EnumerateError::FilterBudget { needed, budget });
    }
    let mut found = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    let total = pairs.len();
    loop {
        let edges: Vec<Edge> = idx.iter().map(|&i| pairs[i]).collect();
        let g = Graph::from_edges(n, &edges)?;
        if (0..n).all(|v| g.degree(v) >= k.min(n - 1)) && recognize(&g, k).is_ok() {
            found.push(g);
        }
        // next combination in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| idx[i] != i + total - m) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(labeled_report(k, n, Method::Filter, found))
}

fn canonical_tree(g: &Graph, k: usize, bound: usize) -> Result<(CanonicalForm, KTree), EnumerateError> {
    let lab = canonical_labeling_with_bound(g, bound)?;
    let relabeled = lab.relabel(g);
    let t = recognize(&relabeled, k).map_err(KTreeError::from)?;
    Ok((lab.form, t))
}

/// Groups the labeled members of `report` into isomorphism classes by
/// canonical form.
pub fn unlabeled_representatives(report: &EnumerationReport) -> Result<EnumerationReport, EnumerateError> {
    let mut classes: BTreeMap<CanonicalForm, ClassRecord> = BTreeMap::new();
    for t in &report.labeled {
        let (form, tree) = canonical_tree(t.graph(), report.k, report.canon_bound)?;
        classes
            .entry(form.clone())
            .or_insert(ClassRecord { tree, form, labeled_members: 0 })
            .labeled_members += 1;
    }
    let representatives: Vec<ClassRecord> = classes.into_values().collect();
    Ok(EnumerationReport {
        unlabeled_count: Some(representatives.len()),
        representatives,
        ..report.clone()
    })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn enumerate_unlabeled(k: usize, n: usize) -> Result<EnumerationReport, EnumerateError> {
    enumerate_unlabeled_with_bound(k, n, DEFAULT_CANON_BOUND)
}

/// Isomorphism classes of k-trees on `n` vertices, grown class by class:
/// every representative on `j` vertices is extended at each k-clique and the
/// results are deduplicated by canonical form. The labeled count is the sum
/// of `n! / |Aut|` over classes.
pub fn enumerate_unlabeled_with_bound(k: usize, n: usize, bound: usize) -> Result<EnumerationReport, EnumerateError> {
    check_kn(k, n)?;
    if n > bound {
        return Err(GraphError::CanonBound { n, bound }.into());
    }
    let mut level: BTreeMap<CanonicalForm, KTree> = BTreeMap::new();
    let (form, t) = canonical_tree(&Graph::complete(k), k, bound)?;
    level.insert(form, t);
    for _ in k..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for c in k_cliques(t.graph(), k) {
                let g = t.graph().with_new_vertex(&c);
                let (form, tree) = canonical_tree(&g, k, bound)?;
                next.entry(form).or_insert(tree);
            }
        }
        level = next;
    }
    let representatives: Vec<ClassRecord> = level
        .into_iter()
        .map(|(form, tree)| {
            let labeled_members = factorial(n) / automorphism_count(tree.graph());
            ClassRecord { tree, form, labeled_members }
        })
        .collect();
    Ok(EnumerationReport {
        k,
        n,
        method: Method::UnlabeledGrowth,
        labeled_count: representatives.iter().map(|r| r.labeled_members).sum(),
        unlabeled_count: Some(representatives.len()),
        labeled: Vec::new(),
        representatives,
        canon_bound: bound,
    })
}

impl EnumerationReport {
    /// Census export: one line per graph, `n k | u-v,u-v,...`. Labeled
    /// members when present, otherwise the class representatives.
    pub fn census_lines(&self) -> Vec<String> {
        let line = |t: &KTree| {
            let es: Vec<String> = t.graph().edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("{} {} | {}", self.n, self.k, es.join(","))
        };
        if self.labeled.is_empty() {
            self.representatives.iter().map(|r| line(&r.tree)).collect()
        } else {
            self.labeled.iter().map(line).collect()
        }
    }

    /// Index of the class isomorphic to `t`, if any.
    pub fn class_of(&self, t: &KTree) -> Result<Option<usize>, EnumerateError> {
        let lab = canonical_labeling_with_bound(t.graph(), self.canon_bound)?;
        Ok(self.representatives.iter().position(|r| r.form == lab.form))
    }
}

/// Per-class values of one index over a census, with its extremes.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalScan<F> {
    pub params: IndexParams<F>,
    /// Value of every class, in representative order.
    pub values: Vec<IndexValue<F>>,
    /// Classes attaining the minimum (more than one means a tie).
    pub argmin: Vec<usize>,
    pub argmax: Vec<usize>,
    pub star_class: Option<usize>,
    pub path_class: Option<usize>,
}

impl<F: Scalar> ExtremalScan<F> {
    pub fn min_value(&self) -> &IndexValue<F> {
        &self.values[self.argmin[0]]
    }

    pub fn max_value(&self) -> &IndexValue<F> {
        &self.values[self.argmax[0]]
    }

    pub fn min_unique(&self) -> bool {
        self.argmin.len() == 1
    }

    pub fn max_unique(&self) -> bool {
        self.argmax.len() == 1
    }
}

/// Evaluates `params` on every class of `report` (which must carry
/// representatives) and locates the extremes and the star and path classes.
pub fn extremal_scan<F: Scalar>(
    report: &EnumerationReport,
    params: IndexParams<F>,
) -> Result<ExtremalScan<F>, EnumerateError> {
    let values: Vec<IndexValue<F>> = report
        .representatives
        .iter()
        .map(|r| index_value(r.tree.graph(), params, IndexMode::Both).expect("k-tree degrees are positive"))
        .collect();
    let extreme = |want: std::cmp::Ordering| {
        let mut best: Vec<usize> = Vec::new();
        for i in 0..values.len() {
            match best.first().map(|&b| compare_values(&values[i], &values[b])) {
                None => best = vec![i],
                Some(o) if o == want => best = vec![i],
                Some(std::cmp::Ordering::Equal) => best.push(i),
                Some(_) => {}
            }
        }
        best
    };
    let (k, n) = (report.k, report.n);
    let star_class = if n > k { report.class_of(&gen_kstar(k, n)?)? } else { None };
    let path_class = report.class_of(&gen_kpath(k, n)?)?;
    Ok(ExtremalScan {
        params,
        argmin: extreme(std::cmp::Ordering::Less),
        argmax: extreme(std::cmp::Ordering::Greater),
        values,
        star_class,
        path_class,
    })
}
