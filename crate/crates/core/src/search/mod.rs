//! Exact minimization over non-opposite cuts and terminal-face max-flow.

mod bnb;
pub mod enumerate;
mod flow;

use std::fmt;
use std::str::FromStr;

use crate::bounds::{theorem2_bound, Regime};
use crate::cuts::CutLabeling;
use crate::error::{Error, Result};
use crate::instances::{GapParams, WeightMap};
use crate::rational::Rational;

pub use enumerate::{enumerate_non_opposite, walk, LabelSpace, Walker};
pub use flow::{min_terminal_face_cut, terminal_face_flow, FlowCut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Exhaustive,
    BranchAndBound,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::BranchAndBound => "branch-and-bound",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" | "enumerate" => Ok(SearchMode::Exhaustive),
            "bnb" | "branch-and-bound" | "branch_and_bound" => Ok(SearchMode::BranchAndBound),
            _ => Err(Error::Parse(format!("unknown search mode {s:?}"))),
        }
    }
}

/// Work limit for a search. For exhaustive mode this counts labelings, for
/// branch-and-bound it counts search-tree nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_labelings: u128,
    pub mode: SearchMode,
}

impl SearchBudget {
    pub fn new(max_labelings: u128, mode: SearchMode) -> Result<Self> {
        if max_labelings == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        Ok(SearchBudget { max_labelings, mode })
    }

    pub fn exhaustive(max_labelings: u128) -> Self {
        SearchBudget { max_labelings: max_labelings.max(1), mode: SearchMode::Exhaustive }
    }

    pub fn branch_and_bound(max_nodes: u128) -> Self {
        SearchBudget { max_labelings: max_nodes.max(1), mode: SearchMode::BranchAndBound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub min_cost: Rational,
    pub argmin: CutLabeling,
    pub explored: u128,
    pub proven_optimal: bool,
}

/// Tracks the cut cost under single-node relabelings and the first minimizer.
struct CostWalker<'a> {
    g: &'a crate::lattice::SimplexGraph,
    w: &'a [i128],
    cost: i128,
    best: Option<(i128, u128, Vec<u8>)>,
    visited: u128,
}

impl<'a> CostWalker<'a> {
    fn new(g: &'a crate::lattice::SimplexGraph, w: &'a [i128]) -> Self {
        CostWalker { g, w, cost: 0, best: None, visited: 0 }
    }
}

impl Walker for CostWalker<'_> {
    fn reset(&mut self, labels: &[u8]) {
        self.cost = self
            .g
            .edges()
            .iter()
            .zip(self.w)
            .filter(|(e, _)| labels[e.u] != labels[e.v])
            .map(|(_, &w)| w)
            .sum();
    }

    fn relabel(&mut self, labels: &[u8], node: usize, new: u8) {
        let old = labels[node];
        for &(u, e) in self.g.neighbors(node) {
            let w = self.w[e];
            if w != 0 {
                let lu = labels[u];
                self.cost += w * (i128::from(lu != new) - i128::from(lu != old));
            }
        }
    }

    fn visit(&mut self, index: u128, labels: &[u8]) {
        self.visited += 1;
        if self.best.as_ref().map_or(true, |b| self.cost < b.0) {
            self.best = Some((self.cost, index, labels.to_vec()));
        }
    }
}

/// Exact minimum cut cost over all non-opposite cuts, single-threaded.
pub fn min_non_opposite_cost(w: &WeightMap, budget: SearchBudget) -> Result<SearchResult> {
    min_non_opposite_cost_threaded(w, budget, 1)
}

/// As [`min_non_opposite_cost`] with `threads` workers; the result does not
/// depend on the worker count.
pub fn min_non_opposite_cost_threaded(
    w: &WeightMap,
    budget: SearchBudget,
    threads: usize,
) -> Result<SearchResult> {
    let g = w.graph();
    if !(3..=4).contains(&g.k()) {
        return Err(Error::InvalidParameter("search supports k = 3 and k = 4".into()));
    }
    let scaled = w.scaled_integers()?;
    match budget.mode {
        SearchMode::Exhaustive => {
            let space = LabelSpace::non_opposite(g);
            let total = space.count();
            let run = total.min(budget.max_labelings);
            let parts = enumerate::walk_parallel(&space, run, threads, || CostWalker::new(g, &scaled.weights));
            let mut best: Option<(i128, u128, Vec<u8>)> = None;
            let mut explored = 0;
            for part in parts {
                explored += part.visited;
                if let Some(b) = part.best {
                    if best.as_ref().map_or(true, |cur| b.0 < cur.0) {
                        best = Some(b);
                    }
                }
            }
            let (cost, _, labels) = best.expect("at least one labeling");
            Ok(SearchResult {
                min_cost: scaled.to_rational(cost),
                argmin: CutLabeling::new(g.clone(), labels)?,
                explored,
                proven_optimal: run == total,
            })
        }
        SearchMode::BranchAndBound => {
            let out = bnb::search(g, &scaled.weights, budget.max_labelings, threads);
            Ok(SearchResult {
                min_cost: scaled.to_rational(out.cost),
                argmin: CutLabeling::new(g.clone(), out.labels)?,
                explored: out.explored,
                proven_optimal: out.complete,
            })
        }
    }
}

/// Whether a proven minimum on `combine(params, n)` respects the closed-form
/// bound at that `n`.
pub fn verify_theorem2(params: &GapParams, result: &SearchResult) -> Result<bool> {
    let n = result.argmin.graph().n();
    let bound = theorem2_bound(params, Regime::Finite(n))?;
    Ok(result.proven_optimal && result.min_cost >= bound.bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_amm_j, build_component, combine, Component};
    use crate::lattice::SimplexGraph;
    use crate::rational::{int, rat};
    use std::sync::Arc;

    const BIG: u128 = 1 << 40;

    fn both(w: &WeightMap) -> (SearchResult, SearchResult) {
        let a = min_non_opposite_cost(w, SearchBudget::exhaustive(BIG)).unwrap();
        let b = min_non_opposite_cost(w, SearchBudget::branch_and_bound(BIG)).unwrap();
        assert!(a.proven_optimal && b.proven_optimal);
        assert_eq!(a.min_cost, b.min_cost);
        assert_eq!(a.argmin.cost(w).unwrap(), a.min_cost);
        assert_eq!(b.argmin.cost(w).unwrap(), b.min_cost);
        assert!(a.argmin.is_non_opposite() && b.argmin.is_non_opposite());
        (a, b)
    }

    #[test]
    fn amm_j_at_three() {
        let j = build_amm_j(3).unwrap();
        let (a, _) = both(&j);
        assert_eq!(a.explored, 2916);
        assert!(a.min_cost >= rat(6, 5) - rat(1, 3));
        assert_eq!(a.min_cost, int(1));
    }

    #[test]
    fn i2_minimum_is_one() {
        let i2 = build_component(Component::I2, 2, None).unwrap();
        let (a, _) = both(&i2);
        assert_eq!(a.min_cost, int(1));
        assert_eq!(a.explored, 729);
    }

    #[test]
    fn modes_agree_on_components_and_mixtures() {
        // I1 needs 3 | n and I3 needs an integral c·n with c < 1/2, so on
        // Δ(4,2) only I2 and I4 exist.
        for m in [Component::I2, Component::I4] {
            both(&build_component(m, 2, None).unwrap());
        }
        let mixes = [
            [int(0), rat(1, 4), int(0), rat(3, 4)],
            [int(0), rat(1, 3), int(0), rat(2, 3)],
            [int(0), rat(9, 10), int(0), rat(1, 10)],
        ];
        for l in mixes {
            let p = GapParams::new(l, rat(1, 4)).unwrap();
            both(&combine(&p, 2).unwrap());
        }
    }

    #[test]
    fn zero_weights_give_zero() {
        let g = Arc::new(SimplexGraph::new(4, 2).unwrap());
        let w = WeightMap::zero(g, "zero");
        let (a, _) = both(&w);
        assert_eq!(a.min_cost, int(0));
    }

    #[test]
    fn exhaustive_budget_is_reported() {
        let j = build_amm_j(3).unwrap();
        let r = min_non_opposite_cost(&j, SearchBudget::exhaustive(10)).unwrap();
        assert!(!r.proven_optimal);
        assert_eq!(r.explored, 10);
        let r = min_non_opposite_cost(&j, SearchBudget::branch_and_bound(3)).unwrap();
        assert!(!r.proven_optimal);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let p = GapParams::new([rat(1, 2), rat(1, 4), int(0), rat(1, 4)], rat(1, 3)).unwrap();
        let w = combine(&p, 3).unwrap();
        let budget = SearchBudget::branch_and_bound(BIG);
        let one = min_non_opposite_cost_threaded(&w, budget, 1).unwrap();
        let four = min_non_opposite_cost_threaded(&w, budget, 4).unwrap();
        assert_eq!(one, four);
        let j = build_amm_j(3).unwrap();
        let e1 = min_non_opposite_cost_threaded(&j, SearchBudget::exhaustive(BIG), 1).unwrap();
        let e3 = min_non_opposite_cost_threaded(&j, SearchBudget::exhaustive(BIG), 3).unwrap();
        assert_eq!(e1, e3);
    }

    #[test]
    fn closed_form_bound_checks_at_n_two() {
        let p = GapParams::new([int(0), int(1), int(0), int(0)], rat(1, 4)).unwrap();
        let r = min_non_opposite_cost(&combine(&p, 2).unwrap(), SearchBudget::exhaustive(BIG)).unwrap();
        assert_eq!(r.min_cost, int(1));
        assert!(verify_theorem2(&p, &r).unwrap());
        let p = GapParams::new([int(0), int(0), int(0), int(1)], rat(1, 4)).unwrap();
        let r = min_non_opposite_cost(&combine(&p, 2).unwrap(), SearchBudget::exhaustive(BIG)).unwrap();
        assert!(verify_theorem2(&p, &r).unwrap());
    }
}
