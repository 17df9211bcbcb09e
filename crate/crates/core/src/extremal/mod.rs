//! Rewiring moves that push a k-tree toward the k-star or the k-path, the two
//! monotone ratio functions that make those moves work, and a local search
//! driven by them.
//!
//! Every move relocates attachment edges: a batch of vertices drops an edge to
//! one vertex and gains an edge to another. The index change depends only on
//! the degrees of the vertices whose degree shifts, which is what
//! [`RewireMove::predicted_delta`] evaluates; [`apply_move`] recomputes the
//! change from scratch so the two can be compared.

mod catalog;
mod search;
mod verify;

use std::fmt;

use log::debug;

use crate::error::MoveError;
use crate::graph::{Edge, Vertex};
use crate::indices::{log_index, IndexFamily, IndexParams};
use crate::ktree::{recognize, KTree};
use crate::scalar::Scalar;

pub use catalog::{enumerate_moves, wiener_index};
pub use search::{classify_fixed_point, local_search, FixedPointClass, Goal, Objective, SearchReport, SearchStep};
pub use verify::{verify_extremal_theorems, verify_extremal_theorems_with_bound, TheoremCheck, VerificationReport};

/// `x / (x + m)`, strictly increasing in `x >= 0`.
pub fn f5_ratio<F: Scalar>(x: F, m: usize) -> F {
    x / (x + F::from_usize_lossy(m))
}

/// `ln(x^x / (x + m)^(x + m))` with `0^0 = 1`.
pub fn f6_ln<F: Scalar>(x: F, m: usize) -> F {
    let xlnx = |y: F| if y == F::zero() { F::zero() } else { y * y.ln() };
    xlnx(x) - xlnx(x + F::from_usize_lossy(m))
}

/// `x^x / (x + m)^(x + m)`, strictly decreasing in `x >= 0`. Evaluated in the
/// log domain.
pub fn f6_ratio<F: Scalar>(x: F, m: usize) -> F {
    f6_ln(x, m).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Moves leaves around a vertex of the second simplicial layer.
    LeafShift,
    /// Straightens a branch hanging off a cut clique into a k-path.
    PendantStraighten,
    /// Merges two branches of a cut clique with three or more branches.
    BranchMerge,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::LeafShift => "leaf_shift",
            MoveKind::PendantStraighten => "pendant_straighten",
            MoveKind::BranchMerge => "branch_merge",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Lowers `Π1,c` and raises `Π2`.
    TowardStar,
    /// Raises `Π1,c` and lowers `Π2`, or leaves both unchanged while merging
    /// branches.
    TowardPath,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::TowardStar => "toward_star",
            Direction::TowardPath => "toward_path",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "toward_star" | "star" => Ok(Direction::TowardStar),
            "toward_path" | "path" => Ok(Direction::TowardPath),
            other => Err(format!("unknown direction {other:?}")),
        }
    }
}

/// The vertices and counts that define a move. Field comments give the role
/// each one plays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveDetail {
    /// `anchor` and the rest of the graph form a `(k+1)`-clique once its leaves
    /// are removed. One `leaf` trades its edge to the low-degree `from` for an
    /// edge to `to`, the clique vertex it missed.
    ResidualShift {
        anchor: Vertex,
        leaf: Vertex,
        from: Vertex,
        to: Vertex,
        /// Number of leaves hanging on `anchor`.
        leaves: usize,
    },
    /// Leaves of `anchor` that miss `target` swap their edge to `anchor` for
    /// one to `target`.
    Reattach {
        anchor: Vertex,
        target: Vertex,
        moved: Vec<Vertex>,
        leaves: usize,
    },
    /// In the branch of `cut` whose only leaf is `tip`, `pivot` (at 1-based
    /// position `pivot_pos` of the branch elimination order, of `branch_len`)
    /// is attached to `overloaded` instead of the vertex `skipped` that a
    /// k-path would use. `pivot` and `followers` move that edge to `skipped`.
    Straighten {
        cut: Vec<Vertex>,
        tip: Vertex,
        pivot: Vertex,
        pivot_pos: usize,
        skipped: Vertex,
        skipped_pos: Option<usize>,
        overloaded: Vertex,
        followers: Vec<Vertex>,
        branch_len: usize,
    },
    /// The vertices of one branch adjacent to `source` in `cut` switch that
    /// edge to `target`, which sits in another branch.
    Rehang {
        cut: Vec<Vertex>,
        source: Vertex,
        target: Vertex,
        moved: Vec<Vertex>,
        source_branch_len: usize,
        target_branch_len: usize,
    },
    /// Leaf `tip` of one branch is detached from its clique `from` and hung on
    /// the clique `to` at the end of another branch.
    Relink {
        cut: Vec<Vertex>,
        tip: Vertex,
        from: Vec<Vertex>,
        to: Vec<Vertex>,
        tip_branch_len: usize,
        target_branch_len: usize,
    },
    /// Leaf `leaf` moves from its clique `from` to the clique `to` made of
    /// leaf `anchor` and all but one of its neighbors.
    LeafRelink {
        leaf: Vertex,
        anchor: Vertex,
        from: Vec<Vertex>,
        to: Vec<Vertex>,
    },
}

impl MoveDetail {
    /// Vertices in a fixed order, used to break ties between moves.
    pub fn pivot_vertices(&self) -> Vec<Vertex> {
        match self {
            MoveDetail::ResidualShift { anchor, leaf, from, to, .. } => vec![*anchor, *leaf, *from, *to],
            MoveDetail::Reattach { anchor, target, moved, .. } => {
                let mut v = vec![*anchor, *target];
                v.extend(moved);
                v
            }
            MoveDetail::Straighten { cut, pivot, skipped, overloaded, followers, .. } => {
                let mut v = vec![*pivot, *overloaded, *skipped];
                v.extend(followers);
                v.extend(cut);
                v
            }
            MoveDetail::Rehang { cut, source, target, moved, .. } => {
                let mut v = vec![*source, *target];
                v.extend(moved);
                v.extend(cut);
                v
            }
            MoveDetail::Relink { cut, tip, from, to, .. } => {
                let mut v = vec![*tip];
                v.extend(to);
                v.extend(from);
                v.extend(cut);
                v
            }
            MoveDetail::LeafRelink { leaf, anchor, from, to } => {
                let mut v = vec![*leaf, *anchor];
                v.extend(to);
                v.extend(from);
                v
            }
        }
    }

    /// A single leaf moved to a new clique; the only moves allowed to leave
    /// both indices unchanged.
    pub fn relocates_leaf(&self) -> bool {
        matches!(self, MoveDetail::Relink { .. } | MoveDetail::LeafRelink { .. })
    }
}

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MoveDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDetail::ResidualShift { anchor, leaf, from, to, leaves } => {
                write!(f, "residual anchor={anchor} leaf={leaf} from={from} to={to} leaves={leaves}")
            }
            MoveDetail::Reattach { anchor, target, moved, leaves } => write!(
                f,
                "reattach anchor={anchor} target={target} moved=[{}] leaves={leaves} shifted={}",
                join(moved),
                moved.len()
            ),
            MoveDetail::Straighten {
                cut,
                tip,
                pivot,
                pivot_pos,
                skipped,
                skipped_pos,
                overloaded,
                followers,
                branch_len,
            } => {
                let t = skipped_pos.map_or("cut".to_string(), |t| t.to_string());
                write!(
                    f,
                    "straighten cut=[{}] tip={tip} pivot={pivot} pos={pivot_pos} skipped={skipped} skipped_pos={t} \
                     overloaded={overloaded} followers=[{}] branch_len={branch_len}",
                    join(cut),
                    join(followers)
                )
            }
            MoveDetail::Rehang { cut, source, target, moved, source_branch_len, target_branch_len } => write!(
                f,
                "rehang cut=[{}] source={source} target={target} moved=[{}] source_len={source_branch_len} \
                 target_len={target_branch_len}",
                join(cut),
                join(moved)
            ),
            MoveDetail::Relink { cut, tip, from, to, tip_branch_len, target_branch_len } => write!(
                f,
                "relink cut=[{}] tip={tip} from=[{}] to=[{}] tip_len={tip_branch_len} target_len={target_branch_len}",
                join(cut),
                join(from),
                join(to)
            ),
            MoveDetail::LeafRelink { leaf, anchor, from, to } => write!(
                f,
                "leaf_relink leaf={leaf} anchor={anchor} from=[{}] to=[{}]",
                join(from),
                join(to)
            ),
        }
    }
}

/// An edge batch rewrite of a k-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewireMove {
    pub kind: MoveKind,
    pub detail: MoveDetail,
    pub remove: Vec<Edge>,
    pub add: Vec<Edge>,
    /// Degree change of every vertex whose degree changes, derived from the
    /// construction rather than from the edge lists.
    pub shifts: Vec<(Vertex, isize)>,
}

/// Signed change of the natural log of `Π1,c` and of `Π2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoveDelta<F> {
    pub pi1c: F,
    pub pi2: F,
}

impl<F: Scalar> MoveDelta<F> {
    /// The component for `family`; `pi1c` must have been computed with the
    /// matching exponent.
    pub fn for_family(&self, family: IndexFamily) -> F {
        match family {
            IndexFamily::Pi2 => self.pi2,
            IndexFamily::Pi1c | IndexFamily::Nk => self.pi1c,
        }
    }

    pub fn is_neutral(&self) -> bool {
        self.pi1c.abs() <= F::compare_tolerance() && self.pi2.abs() <= F::compare_tolerance()
    }
}

impl RewireMove {
    /// Tie-break key: kind first, then the pivot vertices.
    pub fn sort_key(&self) -> (MoveKind, Vec<Vertex>) {
        (self.kind, self.detail.pivot_vertices())
    }

    /// Index change predicted from the degree shifts alone:
    /// `c·Σ ln((d+δ)/d)` for `Π1,c` and `Σ [(d+δ)ln(d+δ) − d ln d]` for `Π2`.
    pub fn predicted_delta<F: Scalar>(&self, degrees: &[usize], c: F) -> MoveDelta<F> {
        let mut pi1 = F::zero();
        let mut pi2 = F::zero();
        for &(v, delta) in &self.shifts {
            let d = degrees[v];
            let e = (d as isize + delta) as usize;
            let (fd, fe) = (F::from_usize_lossy(d), F::from_usize_lossy(e));
            pi1 = pi1 + c * (fe.ln() - fd.ln());
            pi2 = pi2 + fe * fe.ln() - fd * fd.ln();
        }
        MoveDelta { pi1c: pi1, pi2 }
    }

    pub fn to_trace_line<F: Scalar>(&self, delta: &MoveDelta<F>) -> String {
        format!(
            "{} {} | remove [{}] add [{}] | dln_pi1c={:+.12} dln_pi2={:+.12}",
            self.kind,
            self.detail,
            edges_str(&self.remove),
            edges_str(&self.add),
            delta.pi1c,
            delta.pi2
        )
    }
}

fn edges_str(es: &[Edge]) -> String {
    es.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(",")
}

/// Rewrites the edges and revalidates the result. A failed validation is
/// returned with the irreducible residue as certificate.
pub(crate) fn rewire_checked(t: &KTree, mv: &RewireMove) -> Result<KTree, MoveError> {
    let g = t
        .graph()
        .rewired(&mv.remove, &mv.add)
        .ok_or_else(|| MoveError::Inapplicable(format!("{} {}", mv.kind, mv.detail)))?;
    recognize(&g, t.k()).map_err(|f| MoveError::Rejected {
        k: f.k,
        residue_vertices: f.residue_vertices.len(),
        residue_edges: f.residue.edges(),
    })
}

/// Applies `mv` and reports the index change computed from the full degree
/// sequences before and after.
pub fn apply_move<F: Scalar>(t: &KTree, mv: &RewireMove, c: F) -> Result<(KTree, MoveDelta<F>), MoveError> {
    let next = rewire_checked(t, mv).inspect_err(|e| debug!("move rejected: {} {}: {e}", mv.kind, mv.detail))?;
    let before = t.graph().degree_sequence();
    let after = next.graph().degree_sequence();
    let p1 = IndexParams { family: IndexFamily::Pi1c, c };
    let p2 = IndexParams::<F>::pi2();
    let l = |d: &[usize], p| log_index(d, p).expect("k-tree degrees are positive");
    let delta = MoveDelta {
        pi1c: l(&after, p1) - l(&before, p1),
        pi2: l(&after, p2) - l(&before, p2),
    };
    Ok((next, delta))
}
