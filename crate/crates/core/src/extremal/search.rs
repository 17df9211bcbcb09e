use std::fmt;

use super::{apply_move, enumerate_moves, Direction, MoveDelta, RewireMove};
use crate::canon::{are_isomorphic_with_bound, DEFAULT_CANON_BOUND};
use crate::indices::{log_index, IndexFamily, IndexParams};
use crate::ktree::{gen_kpath, gen_kstar, KTree};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    Minimize,
    Maximize,
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Goal::Minimize => "min",
            Goal::Maximize => "max",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Objective<F> {
    pub params: IndexParams<F>,
    pub goal: Goal,
}

impl<F: Scalar> Objective<F> {
    pub fn new(params: IndexParams<F>, goal: Goal) -> Self {
        Objective { params, goal }
    }

    /// Which move family improves this objective.
    pub fn direction(&self) -> Direction {
        let pi1_like = self.params.family != IndexFamily::Pi2;
        match (pi1_like, self.goal) {
            (true, Goal::Minimize) | (false, Goal::Maximize) => Direction::TowardStar,
            _ => Direction::TowardPath,
        }
    }

    /// Gain in the objective (positive is better) for a log-index change.
    fn gain(&self, delta: &MoveDelta<F>) -> F {
        let d = delta.for_family(self.params.family);
        match self.goal {
            Goal::Minimize => -d,
            Goal::Maximize => d,
        }
    }

    fn value(&self, t: &KTree) -> F {
        log_index(&t.graph().degree_sequence(), self.params).expect("k-tree degrees are positive")
    }
}

impl<F: Scalar> fmt::Display for Objective<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.goal, self.params.family)?;
        if self.params.family == IndexFamily::Pi1c {
            write!(f, " c={}", self.params.c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedPointClass {
    Star,
    Path,
    Other,
}

impl fmt::Display for FixedPointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedPointClass::Star => "star",
            FixedPointClass::Path => "path",
            FixedPointClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchStep<F> {
    pub mv: RewireMove,
    /// Natural log of the objective index before and after the move.
    pub before: F,
    pub after: F,
    /// Change of both indices recomputed from the rewired graph.
    pub delta: MoveDelta<F>,
    /// Change predicted from the degree shifts.
    pub predicted: MoveDelta<F>,
    /// Index-neutral leaf relocation, taken to raise the Wiener index.
    pub neutral: bool,
}

impl<F: Scalar> SearchStep<F> {
    /// Largest absolute gap between the recomputed and the predicted change.
    pub fn ratio_error(&self) -> F {
        (self.delta.pi1c - self.predicted.pi1c)
            .abs()
            .max((self.delta.pi2 - self.predicted.pi2).abs())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport<F> {
    pub start: KTree,
    pub objective: Objective<F>,
    pub steps: Vec<SearchStep<F>>,
    pub fixed_point: KTree,
    pub fixed_point_class: FixedPointClass,
}

impl<F: Scalar> SearchReport<F> {
    /// Line-oriented trace: one line per move, then the fixed-point class.
    pub fn to_trace(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let tag = if s.neutral { " neutral" } else { "" };
            out.push_str(&format!("step {}{tag}: {}\n", i + 1, s.mv.to_trace_line(&s.delta)));
        }
        out.push_str(&format!(
            "fixed point: {} after {} moves ({}, ln index {:.12})\n",
            self.fixed_point_class,
            self.steps.len(),
            self.objective,
            self.objective.value(&self.fixed_point)
        ));
        out
    }
}

/// Isomorphism test against the k-star and k-path of the same size. When the
/// two coincide (`n <= k + 2`) the class named by `prefer` is reported.
pub fn classify_fixed_point(t: &KTree, prefer: Direction) -> FixedPointClass {
    let (k, n) = (t.k(), t.n());
    let bound = n.max(DEFAULT_CANON_BOUND);
    let star = gen_kstar(k, n).expect("valid k-tree");
    let path = gen_kpath(k, n).expect("valid k-tree");
    let iso = |h: &KTree| are_isomorphic_with_bound(t.graph(), h.graph(), bound).expect("bound covers n");
    let order = match prefer {
        Direction::TowardStar => [(&star, FixedPointClass::Star), (&path, FixedPointClass::Path)],
        Direction::TowardPath => [(&path, FixedPointClass::Path), (&star, FixedPointClass::Star)],
    };
    let found = order.into_iter().find(|(h, _)| iso(h)).map(|(_, c)| c);
    found.unwrap_or(FixedPointClass::Other)
}

/// Repeatedly takes the catalog move with the largest gain, ties going to the
/// least (kind, pivots). When nothing improves, the first index-neutral leaf
/// relocation that raises [`super::wiener_index`] is taken; otherwise the search
/// stops. Improving steps change the objective strictly and neutral steps
/// raise a bounded integer, so the search terminates.
pub fn local_search<F: Scalar>(t: &KTree, objective: Objective<F>) -> SearchReport<F> {
    let direction = objective.direction();
    let c = objective.params.effective_c();
    let tol = F::compare_tolerance();
    let mut cur = t.clone();
    let mut steps = Vec::new();
    loop {
        let degrees = cur.graph().degree_sequence();
        let moves = enumerate_moves(&cur, direction);
        let mut best: Option<(F, &RewireMove, MoveDelta<F>)> = None;
        for mv in &moves {
            let predicted = mv.predicted_delta(&degrees, c);
            let gain = objective.gain(&predicted);
            if gain <= tol {
                continue;
            }
            if best.as_ref().is_none_or(|(g, _, _)| gain > *g + tol) {
                best = Some((gain, mv, predicted));
            }
        }
        let chosen = match best {
            Some((_, mv, predicted)) => Some((mv.clone(), predicted, false)),
            None => {
                // enumerate_moves only keeps neutral moves that raise the
                // Wiener index
                moves.iter().find_map(|mv| {
                    let predicted = mv.predicted_delta(&degrees, c);
                    predicted.is_neutral().then(|| (mv.clone(), predicted, true))
                })
            }
        };
        let Some((mv, predicted, neutral)) = chosen else {
            break;
        };
        let before = objective.value(&cur);
        let (next, delta) = apply_move(&cur, &mv, c).expect("enumerated moves are validated");
        let after = objective.value(&next);
        steps.push(SearchStep { mv, before, after, delta, predicted, neutral });
        cur = next;
    }
    let fixed_point_class = classify_fixed_point(&cur, direction);
    SearchReport {
        start: t.clone(),
        objective,
        steps,
        fixed_point: cur,
        fixed_point_class,
    }
}
