//! Candidate generation for both directions.
//!
//! Candidates are built from the local structure, then rewired, revalidated as
//! k-trees and kept only if the degree shifts move both indices the right way.
//! Rejected candidates are logged at debug level with their certificate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::debug;

use super::{rewire_checked, Direction, MoveDetail, MoveKind, RewireMove};
use crate::graph::{norm_edge, Edge, Graph, Vertex};
use crate::ktree::{
    cut_kcliques, first_layer, pendant_elimination, simplicial_layers, CliqueConvention, CutClique, KTree,
};

/// A vertex set that moves its edge to `from` over to `to`.
fn transfer(kind: MoveKind, detail: MoveDetail, movers: &[Vertex], from: Vertex, to: Vertex) -> RewireMove {
    let m = movers.len() as isize;
    RewireMove {
        kind,
        detail,
        remove: movers.iter().map(|&w| norm_edge(w, from)).collect(),
        add: movers.iter().map(|&w| norm_edge(w, to)).collect(),
        shifts: vec![(from, -m), (to, m)],
    }
}

/// Vertex `v` drops its neighborhood `from` for the clique `to`.
fn relocate(kind: MoveKind, detail: MoveDetail, v: Vertex, from: &[Vertex], to: &[Vertex]) -> RewireMove {
    let mut shift: BTreeMap<Vertex, isize> = BTreeMap::new();
    for &f in from {
        *shift.entry(f).or_default() -= 1;
    }
    for &x in to {
        *shift.entry(x).or_default() += 1;
    }
    RewireMove {
        kind,
        detail,
        remove: from.iter().filter(|f| !to.contains(f)).map(|&f| norm_edge(v, f)).collect(),
        add: to.iter().filter(|x| !from.contains(x)).map(|&x| norm_edge(v, x)).collect(),
        shifts: shift.into_iter().filter(|&(_, d)| d != 0).collect(),
    }
}

fn toward_star_candidates(t: &KTree) -> Vec<RewireMove> {
    let g = t.graph();
    let k = t.k();
    let layers = simplicial_layers(t, CliqueConvention::AllVertices);
    let s1 = layers.layer(1);
    let mut out = Vec::new();
    for u in layers.layer(2) {
        let leaves: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|v| s1.contains(v)).collect();
        if leaves.is_empty() {
            continue;
        }
        let rest: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|v| !s1.contains(v)).collect();
        if rest.len() != k {
            continue;
        }
        let s = leaves.len();
        let residual = t.n() - s == k + 1;
        if residual {
            let min_deg = rest.iter().map(|&x| g.degree(x)).min().expect("k >= 1");
            for &x in rest.iter().filter(|&&x| g.degree(x) == min_deg) {
                for &leaf in leaves.iter().filter(|&&l| g.has_edge(l, x)) {
                    let Some(&y) = rest.iter().find(|&&y| !g.has_edge(leaf, y)) else {
                        continue;
                    };
                    let detail = MoveDetail::ResidualShift { anchor: u, leaf, from: x, to: y, leaves: s };
                    out.push(transfer(MoveKind::LeafShift, detail, &[leaf], x, y));
                }
            }
        } else {
            for &v in &rest {
                let on_v = leaves.iter().filter(|&&l| g.has_edge(l, v)).count();
                if g.degree(v) - on_v < k + 1 {
                    continue;
                }
                let moved: Vec<Vertex> = leaves.iter().copied().filter(|&l| !g.has_edge(l, v)).collect();
                if moved.is_empty() {
                    continue;
                }
                let detail = MoveDetail::Reattach { anchor: u, target: v, moved: moved.clone(), leaves: s };
                out.push(transfer(MoveKind::LeafShift, detail, &moved, u, v));
            }
        }
    }
    out
}

/// Straightening candidates for the branch `branch` of `cut` whose only leaf
/// is `tip`.
fn straighten_candidates(g: &Graph, k: usize, cut: &[Vertex], branch: &[Vertex], tip: Vertex, out: &mut Vec<RewireMove>) {
    let Some(order) = pendant_elimination(g, k, cut, branch) else {
        return;
    };
    let p = order.len();
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let later = |i: usize, v: Vertex| pos.get(&v).is_some_and(|&j| j > i) || cut.contains(&v);
    // Walk back from the cut to the first vertex that breaks the k-path shape.
    for s in (0..p).rev() {
        let u_s = order[s];
        let tail = &order[s + 1..];
        let need: Vec<Vertex> = tail.iter().copied().take(k).collect();
        let forward: BTreeSet<Vertex> = g.neighbors(u_s).iter().copied().filter(|&v| later(s, v)).collect();
        let missing: Vec<Vertex> = need.iter().copied().filter(|v| !forward.contains(v)).collect();
        if missing.is_empty() {
            continue;
        }
        let extra: Vec<Vertex> = forward.iter().copied().filter(|v| !need.contains(v)).collect();
        for &z in &extra {
            for &u_t in &missing {
                let earlier_on_z: Vec<Vertex> = order[..s]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(w, z) && !g.has_edge(w, u_t))
                    .collect();
                // only the vertices whose clique would break, transitively
                let mut closure = vec![u_s];
                for i in (0..s).rev() {
                    let w = order[i];
                    if !g.has_edge(w, z) || g.has_edge(w, u_t) {
                        continue;
                    }
                    let hits = g.neighbors(w).iter().any(|&x| later(i, x) && closure.contains(&x));
                    if hits {
                        closure.push(w);
                    }
                }
                let mut variants = vec![closure[1..].to_vec(), earlier_on_z];
                variants.dedup();
                for mut followers in variants {
                    followers.sort_unstable();
                    let mut movers = vec![u_s];
                    movers.extend(&followers);
                    let detail = MoveDetail::Straighten {
                        cut: cut.to_vec(),
                        tip,
                        pivot: u_s,
                        pivot_pos: s + 1,
                        skipped: u_t,
                        skipped_pos: pos.get(&u_t).map(|&j| j + 1),
                        overloaded: z,
                        followers,
                        branch_len: p,
                    };
                    out.push(transfer(MoveKind::PendantStraighten, detail, &movers, z, u_t));
                }
            }
        }
        break;
    }
}

fn merge_candidates(g: &Graph, k: usize, cut: &CutClique, tips: &BTreeSet<Vertex>, out: &mut Vec<RewireMove>) {
    let comps = &cut.components;
    let s = &cut.clique;
    for (i, c1) in comps.iter().enumerate() {
        for (j, c2) in comps.iter().enumerate() {
            if i == j {
                continue;
            }
            // rehang the part of c1 that leans on x_t onto a vertex of c2
            for &x_t in s {
                let moved: Vec<Vertex> = c1.iter().copied().filter(|&w| g.has_edge(w, x_t)).collect();
                if moved.is_empty() {
                    continue;
                }
                for &b in c2 {
                    if !s.iter().all(|&x| x == x_t || g.has_edge(b, x)) {
                        continue;
                    }
                    let detail = MoveDetail::Rehang {
                        cut: s.clone(),
                        source: x_t,
                        target: b,
                        moved: moved.clone(),
                        source_branch_len: c1.len(),
                        target_branch_len: c2.len(),
                    };
                    out.push(transfer(MoveKind::BranchMerge, detail, &moved, x_t, b));
                }
            }
            // move a leaf of c2 to the far end of c1
            for &tip in c2.iter().filter(|v| tips.contains(v)) {
                let from: Vec<Vertex> = g.neighbors(tip).iter().copied().collect();
                for &u1 in c1.iter().filter(|v| tips.contains(v)) {
                    for &r in g.neighbors(u1) {
                        let mut to: Vec<Vertex> = g.neighbors(u1).iter().copied().filter(|&x| x != r).collect();
                        to.push(u1);
                        to.sort_unstable();
                        if to.len() != k || to.contains(&tip) {
                            continue;
                        }
                        let detail = MoveDetail::Relink {
                            cut: s.clone(),
                            tip,
                            from: from.clone(),
                            to: to.clone(),
                            tip_branch_len: c2.len(),
                            target_branch_len: c1.len(),
                        };
                        out.push(relocate(MoveKind::BranchMerge, detail, tip, &from, &to));
                    }
                }
            }
        }
    }
}

/// Leaf `a` leaves its clique and hangs on a k-clique at leaf `b`: `b`
/// together with all but one of its neighbors. When the two neighborhoods
/// differ in one vertex this is a single edge swap.
fn leaf_relink_candidates(g: &Graph, tips: &BTreeSet<Vertex>, out: &mut Vec<RewireMove>) {
    for &a in tips {
        let from: Vec<Vertex> = g.neighbors(a).iter().copied().collect();
        for &b in tips {
            if a == b || g.has_edge(a, b) {
                continue;
            }
            for &r in g.neighbors(b) {
                let mut to: Vec<Vertex> = g.neighbors(b).iter().copied().filter(|&x| x != r).collect();
                to.push(b);
                to.sort_unstable();
                let detail = MoveDetail::LeafRelink { leaf: a, anchor: b, from: from.clone(), to: to.clone() };
                out.push(relocate(MoveKind::BranchMerge, detail, a, &from, &to));
            }
        }
    }
}

fn toward_path_candidates(t: &KTree) -> Vec<RewireMove> {
    let g = t.graph();
    let k = t.k();
    let tips = first_layer(t);
    let mut out = Vec::new();
    for cut in cut_kcliques(t) {
        for comp in &cut.components {
            let mut hits = comp.iter().filter(|v| tips.contains(v));
            if let (Some(&tip), None) = (hits.next(), hits.next()) {
                straighten_candidates(g, k, &cut.clique, comp, tip, &mut out);
            }
        }
        if cut.w() >= 3 {
            merge_candidates(g, k, &cut, &tips, &mut out);
        }
    }
    leaf_relink_candidates(g, &tips, &mut out);
    out
}

/// Sum of distances over all vertex pairs. Index-neutral relinks are only
/// taken when they raise it, which bounds their number.
pub fn wiener_index(g: &Graph) -> u64 {
    let n = g.n();
    let mut total = 0u64;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    total += dist[w] as u64;
                    queue.push_back(w);
                }
            }
        }
    }
    total / 2
}

fn signs(mv: &RewireMove, degrees: &[usize]) -> (f64, f64) {
    let d = mv.predicted_delta::<f64>(degrees, 1.0);
    (d.pi1c, d.pi2)
}

/// Every catalog move for `direction` that yields a valid k-tree and moves
/// the indices the right way: for `TowardStar` `Π1,c` falls and `Π2` rises;
/// for `TowardPath` the reverse, plus index-neutral leaf relocations that
/// raise [`wiener_index`]. Sorted by kind
/// and pivot vertices, without duplicate edge batches.
pub fn enumerate_moves(t: &KTree, direction: Direction) -> Vec<RewireMove> {
    let candidates = match direction {
        Direction::TowardStar => toward_star_candidates(t),
        Direction::TowardPath => toward_path_candidates(t),
    };
    let degrees = t.graph().degree_sequence();
    let spread = wiener_index(t.graph());
    let tol = 1e-9;
    let mut kept: Vec<RewireMove> = candidates
        .into_iter()
        .filter(|mv| {
            let (d1, d2) = signs(mv, &degrees);
            let ok = match direction {
                Direction::TowardStar => d1 < -tol && d2 > tol,
                Direction::TowardPath => {
                    (d1 > tol && d2 < -tol) || (mv.detail.relocates_leaf() && d1.abs() <= tol && d2.abs() <= tol)
                }
            };
            ok && match rewire_checked(t, mv) {
                Ok(next) => {
                    let neutral = d1.abs() <= tol && d2.abs() <= tol;
                    !neutral || wiener_index(next.graph()) > spread
                }
                Err(e) => {
                    debug!("discarding {} {}: {e}", mv.kind, mv.detail);
                    false
                }
            }
        })
        .collect();
    kept.sort_by_key(RewireMove::sort_key);
    let mut seen: BTreeSet<(Vec<Edge>, Vec<Edge>)> = BTreeSet::new();
    kept.retain(|mv| {
        let mut r = mv.remove.clone();
        let mut a = mv.add.clone();
        r.sort_unstable();
        a.sort_unstable();
        seen.insert((r, a))
    });
    kept
}
