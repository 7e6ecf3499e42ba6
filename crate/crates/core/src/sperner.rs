//! The hypergraph of upward unit sub-simplices and Sperner-type counting.

use num_traits::Zero;

use crate::cuts::CutLabeling;
use crate::error::{invalid, Result};
use crate::lattice::{binomial, enumerate_points, SimplexGraph};
use crate::rational::{int, rat, Rational};
use crate::search::enumerate::{walk_parallel, LabelSpace, Walker};

/// One hyperedge `{y + e_1, …, y + e_k}` per point `y` of Δ(k, n-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexHypergraph {
    pub k: usize,
    pub n: u32,
    pub hyperedges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl SimplexHypergraph {
    /// Hyperedge ids containing `node`.
    pub fn incident(&self, node: usize) -> &[usize] {
        &self.incidence[node]
    }

    /// Edge ids of the clique induced by each hyperedge.
    pub fn cliques(&self, g: &SimplexGraph) -> Vec<Vec<usize>> {
        self.hyperedges
            .iter()
            .map(|h| {
                let mut ids = Vec::new();
                for (a, &u) in h.iter().enumerate() {
                    for &v in &h[a + 1..] {
                        ids.push(g.edge_between(u, v).expect("hyperedge nodes are adjacent"));
                    }
                }
                ids.sort_unstable();
                ids
            })
            .collect()
    }
}

pub fn build_hypergraph(g: &SimplexGraph) -> SimplexHypergraph {
    let (k, n) = (g.k(), g.n());
    // Δ(k,0) is the single zero point, which has no support.
    let base: Vec<Vec<u32>> = if n <= 1 {
        vec![vec![0; k]]
    } else {
        enumerate_points(k, n - 1).expect("valid size").iter().map(|p| p.coords().to_vec()).collect()
    };
    let hyperedges: Vec<Vec<usize>> = base
        .iter()
        .map(|y| {
            (0..k)
                .map(|i| {
                    let mut c = y.clone();
                    c[i] += 1;
                    g.index_of(&c).expect("lifted point lies in the simplex")
                })
                .collect()
        })
        .collect();
    let mut incidence = vec![Vec::new(); g.node_count()];
    for (h, nodes) in hyperedges.iter().enumerate() {
        for &v in nodes {
            incidence[v].push(h);
        }
    }
    SimplexHypergraph { k, n, hyperedges, incidence }
}

fn is_mono(nodes: &[usize], labels: &[u8]) -> bool {
    nodes.iter().all(|&v| labels[v] == labels[nodes[0]])
}

pub fn count_monochromatic(h: &SimplexHypergraph, labels: &[u8]) -> usize {
    h.hyperedges.iter().filter(|e| is_mono(e, labels)).count()
}

/// Labels `1..=k` each drawn from the node's support.
pub fn is_admissible(g: &SimplexGraph, labels: &[u8]) -> bool {
    labels.len() == g.node_count()
        && labels.iter().zip(g.points()).all(|(&l, p)| l >= 1 && p.in_support(l as usize - 1))
}

pub fn inadmissible_count(g: &SimplexGraph, labels: &[u8]) -> usize {
    labels.iter().zip(g.points()).filter(|(&l, p)| l == 0 || !p.in_support(l as usize - 1)).count()
}

/// Upper bound `C(n+k-3, k-1)` on monochromatic hyperedges of an admissible labeling.
pub fn mv_bound(k: usize, n: u32) -> u128 {
    if n == 0 || k < 2 {
        return 0;
    }
    let top = u64::from(n) + k as u64;
    if top < 3 {
        return 0;
    }
    binomial(top - 3, k as u64 - 1)
}

fn factorial(m: u64) -> Rational {
    (1..=m).fold(int(1), |acc, i| acc * int(i as i64))
}

/// Lower bound `(1/(k-2)! - β)·(n+k-3)!/(n-1)!` on non-monochromatic
/// hyperedges when all inadmissible labels lie on one facet.
pub fn nonmon_bound(k: usize, n: u32, beta: &Rational) -> Result<Rational> {
    if k < 3 || n == 0 {
        return Err(invalid("nonmon_bound needs k ≥ 3 and n ≥ 1"));
    }
    let cap = factorial(k as u64 - 2).recip();
    if *beta < Rational::zero() || *beta > cap {
        return Err(invalid(format!("beta must lie in [0, {cap}], got {beta}")));
    }
    let n = u64::from(n);
    Ok((cap - beta) * factorial(n + k as u64 - 3) / factorial(n - 1))
}

/// `β = z · n!/(n+k-2)!` for `z` inadmissible nodes.
pub fn beta_from_count(k: usize, n: u32, z: usize) -> Rational {
    let n = u64::from(n);
    int(z as i64) * factorial(n) / factorial(n + k as u64 - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub max_monochromatic: usize,
    /// First maximizer in mixed-radix order.
    pub witness: Vec<u8>,
    pub explored: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRow {
    /// Number of inadmissibly labeled nodes.
    pub inadmissible: usize,
    pub labelings: u128,
    pub max_monochromatic: usize,
    pub min_nonmonochromatic: usize,
    pub bound: Rational,
    pub witness: Vec<u8>,
}

impl FaceRow {
    pub fn holds(&self) -> bool {
        int(self.min_nonmonochromatic as i64) >= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRestricted {
    pub rows: Vec<FaceRow>,
    pub explored: u128,
}

impl FaceRestricted {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(FaceRow::holds)
    }
}

/// Admissible labels off the facet `x_k = 0`, any label in `1..=k` on it.
pub fn face_restricted_space(g: &SimplexGraph) -> LabelSpace {
    let k = g.k();
    let choices = g
        .points()
        .iter()
        .map(|p| {
            if p.coord(k - 1) == 0 {
                (1..=k as u8).collect()
            } else {
                p.support().map(|i| i as u8 + 1).collect()
            }
        })
        .collect();
    LabelSpace::new(choices).expect("non-empty choices")
}

struct MonoWalker<'a> {
    g: &'a SimplexGraph,
    h: &'a SimplexHypergraph,
    mono: usize,
    bad: usize,
    /// Best per inadmissible count: (mono, labeling index, labels, count).
    best: Vec<Option<(usize, u128, Vec<u8>)>>,
    per_count: Vec<u128>,
    visited: u128,
}

impl Walker for MonoWalker<'_> {
    fn reset(&mut self, labels: &[u8]) {
        self.mono = count_monochromatic(self.h, labels);
        self.bad = inadmissible_count(self.g, labels);
    }

    fn relabel(&mut self, labels: &[u8], node: usize, new: u8) {
        let old = labels[node];
        for &e in self.h.incident(node) {
            let nodes = &self.h.hyperedges[e];
            let others = nodes.iter().filter(|&&u| u != node);
            let was = others.clone().all(|&u| labels[u] == old);
            let now = others.clone().all(|&u| labels[u] == new);
            self.mono = self.mono + usize::from(now) - usize::from(was);
        }
        let p = self.g.point(node);
        self.bad = self.bad + usize::from(!p.in_support(new as usize - 1))
            - usize::from(!p.in_support(old as usize - 1));
    }

    fn visit(&mut self, index: u128, labels: &[u8]) {
        self.visited += 1;
        self.per_count[self.bad] += 1;
        let slot = &mut self.best[self.bad];
        if slot.as_ref().map_or(true, |b| self.mono > b.0) {
            *slot = Some((self.mono, index, labels.to_vec()));
        }
    }
}

/// Best (count, index, labels) per slot, if any.
type Witness = Option<(usize, u128, Vec<u8>)>;

fn run_mono(
    g: &SimplexGraph,
    h: &SimplexHypergraph,
    space: &LabelSpace,
    budget: u128,
    threads: usize,
) -> Result<(Vec<Witness>, Vec<u128>, u128)> {
    let total = space.check_budget(budget)?;
    let slots = g.node_count() + 1;
    let parts = walk_parallel(space, total, threads, || MonoWalker {
        g,
        h,
        mono: 0,
        bad: 0,
        best: vec![None; slots],
        per_count: vec![0; slots],
        visited: 0,
    });
    let mut best: Vec<Option<(usize, u128, Vec<u8>)>> = vec![None; slots];
    let mut per_count = vec![0u128; slots];
    let mut explored = 0;
    for part in parts {
        explored += part.visited;
        for (z, b) in part.best.into_iter().enumerate() {
            per_count[z] += part.per_count[z];
            if let Some(b) = b {
                if best[z].as_ref().map_or(true, |cur| b.0 > cur.0) {
                    best[z] = Some(b);
                }
            }
        }
    }
    Ok((best, per_count, explored))
}

/// Maximum number of monochromatic hyperedges over all admissible labelings.
pub fn exhaustive_extremal(k: usize, n: u32, budget: u128, threads: usize) -> Result<Extremal> {
    let g = SimplexGraph::new(k, n)?;
    let h = build_hypergraph(&g);
    let space = LabelSpace::admissible(&g);
    let (best, _, explored) = run_mono(&g, &h, &space, budget, threads)?;
    let (max_monochromatic, _, witness) = best[0].clone().expect("admissible labelings exist");
    Ok(Extremal { max_monochromatic, witness, explored })
}

/// Per inadmissible count, the fewest non-monochromatic hyperedges over
/// labelings whose inadmissible labels all lie on the facet `x_k = 0`.
pub fn exhaustive_face_restricted(k: usize, n: u32, budget: u128, threads: usize) -> Result<FaceRestricted> {
    let g = SimplexGraph::new(k, n)?;
    let h = build_hypergraph(&g);
    let space = face_restricted_space(&g);
    let (best, per_count, explored) = run_mono(&g, &h, &space, budget, threads)?;
    let total_h = h.hyperedges.len();
    let mut rows = Vec::new();
    for (z, b) in best.into_iter().enumerate() {
        if let Some((mono, _, witness)) = b {
            rows.push(FaceRow {
                inadmissible: z,
                labelings: per_count[z],
                max_monochromatic: mono,
                min_nonmonochromatic: total_h - mono,
                bound: nonmon_bound(k, n, &beta_from_count(k, n, z))?,
                witness,
            });
        }
    }
    Ok(FaceRestricted { rows, explored })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma5Check {
    pub alpha: Rational,
    pub lower_bound: Rational,
    pub cut_size: usize,
    pub ok: bool,
}

/// Face nodes (`x_4 = 0`) labeled 1, 2 or 3.
fn face_count(p: &CutLabeling) -> usize {
    let g = p.graph();
    (0..g.node_count()).filter(|&v| g.point(v).coord(3) == 0 && p.label(v) <= 3).count()
}

/// `|δ(p)| ≥ 3αn(n+1)` with `α` the fraction of face nodes labeled 1..3.
pub fn lemma5_check(p: &CutLabeling) -> Result<Lemma5Check> {
    let g = p.graph();
    if g.k() != 4 {
        return Err(invalid("the cut-size bound is stated on Δ(4,n)"));
    }
    if !p.is_non_opposite() {
        return Err(invalid("cut is not non-opposite"));
    }
    let n = g.n() as i64;
    let alpha = rat(face_count(p) as i64, (n + 1) * (n + 2));
    let lower_bound = &alpha * int(3 * n * (n + 1));
    let cut_size = p.delta().len();
    let ok = int(cut_size as i64) >= lower_bound;
    Ok(Lemma5Check { alpha, lower_bound, cut_size, ok })
}

/// Each non-monochromatic hyperedge clique carries at least 3 cut edges.
pub fn hyperedges_cut_at_least_three(h: &SimplexHypergraph, cliques: &[Vec<usize>], p: &CutLabeling) -> bool {
    let g = p.graph();
    h.hyperedges.iter().zip(cliques).all(|(nodes, edges)| {
        let cut = edges.iter().filter(|&&id| {
            let e = g.edge(id);
            p.label(e.u) != p.label(e.v)
        });
        is_mono(nodes, p.labels()) || cut.count() >= 3
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSizeSweep {
    pub checked: u128,
    pub failures: u128,
    /// Smallest `|δ| - 3αn(n+1)` over all cuts.
    pub min_slack: Rational,
}

struct CutSizeWalker<'a> {
    g: &'a SimplexGraph,
    n: i64,
    cut: i64,
    face: i64,
    failures: u128,
    min_scaled: i64,
    checked: u128,
}

impl CutSizeWalker<'_> {
    fn on_face(&self, v: usize) -> bool {
        self.g.point(v).coord(3) == 0
    }
}

impl Walker for CutSizeWalker<'_> {
    fn reset(&mut self, labels: &[u8]) {
        self.cut = self.g.edges().iter().filter(|e| labels[e.u] != labels[e.v]).count() as i64;
        self.face = (0..labels.len()).filter(|&v| self.on_face(v) && labels[v] <= 3).count() as i64;
    }

    fn relabel(&mut self, labels: &[u8], node: usize, new: u8) {
        let old = labels[node];
        for &(u, _) in self.g.neighbors(node) {
            self.cut += i64::from(labels[u] != new) - i64::from(labels[u] != old);
        }
        if self.on_face(node) {
            self.face += i64::from(new <= 3) - i64::from(old <= 3);
        }
    }

    fn visit(&mut self, _: u128, _: &[u8]) {
        self.checked += 1;
        // (n+2)·(|δ| - 3αn(n+1)) = (n+2)|δ| - 3·face·n
        let scaled = (self.n + 2) * self.cut - 3 * self.face * self.n;
        if scaled < 0 {
            self.failures += 1;
        }
        self.min_scaled = self.min_scaled.min(scaled);
    }
}

/// Checks the cut-size bound on every non-opposite cut of Δ(4,n).
pub fn cut_size_sweep(n: u32, budget: u128, threads: usize) -> Result<CutSizeSweep> {
    let g = SimplexGraph::new(4, n)?;
    let space = LabelSpace::non_opposite(&g);
    let total = space.check_budget(budget)?;
    let parts = walk_parallel(&space, total, threads, || CutSizeWalker {
        g: &g,
        n: i64::from(n),
        cut: 0,
        face: 0,
        failures: 0,
        min_scaled: i64::MAX,
        checked: 0,
    });
    let mut out = CutSizeSweep { checked: 0, failures: 0, min_slack: int(i64::MAX) };
    let mut min_scaled = i64::MAX;
    for p in parts {
        out.checked += p.checked;
        out.failures += p.failures;
        min_scaled = min_scaled.min(p.min_scaled);
    }
    out.min_slack = rat(min_scaled, i64::from(n) + 2);
    Ok(out)
}
