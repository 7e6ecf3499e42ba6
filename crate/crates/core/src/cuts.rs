//! Cut labelings, cut-sets, costs and the named cuts.
//!
//! A cut on Δ(k,n) labels every node with a value in `1..=k+1` and pins
//! terminal `s_i` to `i`. The value `k+1` is the auxiliary label.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::instances::WeightMap;
use crate::lattice::SimplexGraph;
use crate::rational::{parse_rational, Rational};
use crate::regions::red_side;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutLabeling {
    graph: Arc<SimplexGraph>,
    labels: Vec<u8>,
}

/// Edge ids with differently labeled endpoints, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CutSet {
    pub edges: Vec<usize>,
}

impl CutSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether every edge of `self` is also in `other`.
    pub fn is_subset(&self, other: &CutSet) -> bool {
        self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }
}

impl CutLabeling {
    /// Checks the label range and the terminal pins.
    pub fn new(graph: Arc<SimplexGraph>, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != graph.node_count() {
            return Err(Error::InvalidLabeling(format!(
                "expected {} labels, got {}",
                graph.node_count(),
                labels.len()
            )));
        }
        let top = graph.k() as u8 + 1;
        if let Some((v, &l)) = labels.iter().enumerate().find(|(_, &l)| l == 0 || l > top) {
            return Err(Error::InvalidLabeling(format!("node {v} has label {l} outside 1..={top}")));
        }
        for (i, &t) in graph.terminals().iter().enumerate() {
            if labels[t] as usize != i + 1 {
                return Err(Error::InvalidLabeling(format!(
                    "terminal s{} must be labeled {}, found {}",
                    i + 1,
                    i + 1,
                    labels[t]
                )));
            }
        }
        Ok(CutLabeling { graph, labels })
    }

    /// Terminals pinned, every other node auxiliary.
    pub fn all_auxiliary(graph: Arc<SimplexGraph>) -> Self {
        let aux = graph.k() as u8 + 1;
        let mut labels = vec![aux; graph.node_count()];
        for (i, &t) in graph.terminals().iter().enumerate() {
            labels[t] = i as u8 + 1;
        }
        CutLabeling { graph, labels }
    }

    pub fn graph(&self) -> &Arc<SimplexGraph> {
        &self.graph
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> u8 {
        self.labels[node]
    }

    pub fn auxiliary(&self) -> u8 {
        self.graph.k() as u8 + 1
    }

    pub fn count_label(&self, label: u8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn delta(&self) -> CutSet {
        let edges = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.labels[e.u] != self.labels[e.v])
            .map(|(id, _)| id)
            .collect();
        CutSet { edges }
    }

    pub fn cost(&self, w: &WeightMap) -> Result<Rational> {
        check_same_graph(&self.graph, w.graph())?;
        let mut total = Rational::zero();
        for (id, weight) in w.iter() {
            let e = self.graph.edge(id);
            if self.labels[e.u] != self.labels[e.v] {
                total += weight;
            }
        }
        Ok(total)
    }

    /// Every node's label lies in its support or is auxiliary.
    pub fn is_non_opposite(&self) -> bool {
        let aux = self.auxiliary();
        self.labels
            .iter()
            .zip(self.graph.points())
            .all(|(&l, p)| l == aux || p.in_support(l as usize - 1))
    }

    /// Each of L_12, L_23, L_13 carries at least two cut edges.
    pub fn is_fragmenting(&self) -> bool {
        if self.graph.k() < 3 {
            return false;
        }
        [(0, 1), (1, 2), (0, 2)].iter().all(|&(i, j)| {
            let line = self.graph.boundary_line(i, j).expect("axes are in range");
            let cut = line
                .edges
                .iter()
                .filter(|&&id| {
                    let e = self.graph.edge(id);
                    self.labels[e.u] != self.labels[e.v]
                })
                .count();
            cut >= 2
        })
    }

    /// Restriction of a Δ(4,n) cut to the face `x_4 = 0`, with label 5
    /// becoming the face's auxiliary label 4.
    pub fn restrict_to_face(&self) -> Result<CutLabeling> {
        if self.graph.k() != 4 {
            return Err(invalid("face restriction is defined for cuts on Δ(4,n)"));
        }
        let (face, sub) = self.graph.face_graph(&[0, 1, 2])?;
        let mut labels = Vec::with_capacity(face.nodes.len());
        for &v in &face.nodes {
            labels.push(match self.labels[v] {
                4 => return Err(Error::NonRestrictable { node: v }),
                5 => 4,
                l => l,
            });
        }
        CutLabeling::new(Arc::new(sub), labels)
    }

    /// Relabels each node by the terminal reachable from it in the graph
    /// minus the cut-set, and by the auxiliary label if there is none.
    pub fn canonicalize_reachability(&self) -> CutLabeling {
        let g = &self.graph;
        let aux = self.auxiliary();
        let mut labels = vec![aux; g.node_count()];
        let mut seen = vec![false; g.node_count()];
        let mut queue = VecDeque::new();
        for (i, &t) in g.terminals().iter().enumerate() {
            let l = i as u8 + 1;
            seen[t] = true;
            labels[t] = l;
            queue.push_back(t);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in g.neighbors(v) {
                    if !seen[u] && self.labels[u] == self.labels[v] {
                        seen[u] = true;
                        labels[u] = l;
                        queue.push_back(u);
                    }
                }
            }
        }
        CutLabeling { graph: g.clone(), labels }
    }
}

pub(crate) fn check_same_graph(a: &SimplexGraph, b: &SimplexGraph) -> Result<()> {
    if a != b {
        return Err(Error::GraphMismatch {
            expected_k: a.k(),
            expected_n: a.n(),
            found_k: b.k(),
            found_n: b.n(),
        });
    }
    Ok(())
}

/// The fixed cuts used by the bounds and limitation arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedCut {
    /// On Δ(3,n): 1 where `x_1 ≥ 1/2`, else 2 where `x_2 ≥ 1/2`, else 3.
    Q0,
    /// On Δ(4,n): `Q0` on the face `x_4 = 0` and 4 elsewhere.
    PExt,
    /// On Δ(4,n): terminals pinned, everything else auxiliary.
    PPrime,
    /// On Δ(4,n): face caps `x_i ≥ 1 - c` labeled `i`, `e^4` labeled 4, rest 5.
    P3,
    /// On Δ(4,n): nodes within graph distance `α·n` of `s_1` labeled 1.
    Lemma5Tight(Rational),
}

impl NamedCut {
    pub fn dimension(&self) -> usize {
        match self {
            NamedCut::Q0 => 3,
            _ => 4,
        }
    }

    pub fn build(&self, n: u32, c: Option<&Rational>) -> Result<CutLabeling> {
        let g = Arc::new(SimplexGraph::new(self.dimension(), n)?);
        self.build_on(&g, c)
    }

    pub fn build_on(&self, g: &Arc<SimplexGraph>, c: Option<&Rational>) -> Result<CutLabeling> {
        if g.k() != self.dimension() {
            return Err(invalid(format!("cut {self} lives on Δ({},n)", self.dimension())));
        }
        let n = g.n();
        let labels: Vec<u8> = match self {
            NamedCut::Q0 => g.points().iter().map(|p| q0_label(p.coord(0), p.coord(1), n)).collect(),
            NamedCut::PExt => g
                .points()
                .iter()
                .map(|p| if p.coord(3) > 0 { 4 } else { q0_label(p.coord(0), p.coord(1), n) })
                .collect(),
            NamedCut::PPrime => return Ok(CutLabeling::all_auxiliary(g.clone())),
            NamedCut::P3 => {
                let c = c.ok_or_else(|| invalid("cut P3 requires c"))?;
                let side = red_side(c, n)?;
                g.points()
                    .iter()
                    .map(|p| {
                        if p.coord(3) == n {
                            return 4;
                        }
                        if p.coord(3) == 0 {
                            if let Some(i) = (0..3).find(|&i| p.coord(i) >= n - side) {
                                return i as u8 + 1;
                            }
                        }
                        5
                    })
                    .collect()
            }
            NamedCut::Lemma5Tight(alpha) => {
                let radius = tight_radius(alpha, n)?;
                g.points()
                    .iter()
                    .enumerate()
                    .map(|(v, p)| match g.terminal_axis(v) {
                        Some(i) => i as u8 + 1,
                        None if n - p.coord(0) <= radius => 1,
                        None => 5,
                    })
                    .collect()
            }
        };
        CutLabeling::new(g.clone(), labels)
    }
}

fn q0_label(x1: u32, x2: u32, n: u32) -> u8 {
    if 2 * x1 >= n {
        1
    } else if 2 * x2 >= n {
        2
    } else {
        3
    }
}

/// `α·n` as an integer radius, requiring `0 ≤ α < 1` and `α·n` integral.
fn tight_radius(alpha: &Rational, n: u32) -> Result<u32> {
    if alpha.is_negative() || *alpha >= Rational::from_integer(1.into()) {
        return Err(invalid(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    let r = alpha * Rational::from_integer(n.into());
    if !r.is_integer() {
        return Err(invalid(format!("alpha * n = {r} is not an integer")));
    }
    Ok(u32::try_from(r.to_integer()).expect("radius below n"))
}

impl fmt::Display for NamedCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCut::Q0 => f.write_str("Q0"),
            NamedCut::PExt => f.write_str("P_ext"),
            NamedCut::PPrime => f.write_str("P_prime"),
            NamedCut::P3 => f.write_str("P3"),
            NamedCut::Lemma5Tight(a) => write!(f, "Lemma5Tight({a})"),
        }
    }
}

impl FromStr for NamedCut {
    type Err = Error;

    /// Accepts `q0`, `p_ext`/`p1`, `p_prime`/`p2`, `p3` and
    /// `lemma5tight:<alpha>` (case-insensitive, `-` and `_` interchangeable).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace('-', "_");
        if let Some(rest) = lower.strip_prefix("lemma5tight").or_else(|| lower.strip_prefix("lemma5_tight")) {
            let arg = rest.trim_start_matches([':', '=', '(']).trim_end_matches(')');
            return Ok(NamedCut::Lemma5Tight(parse_rational(arg)?));
        }
        match lower.as_str() {
            "q0" => Ok(NamedCut::Q0),
            "p_ext" | "pext" | "p1" => Ok(NamedCut::PExt),
            "p_prime" | "pprime" | "p2" | "p'" => Ok(NamedCut::PPrime),
            "p3" => Ok(NamedCut::P3),
            _ => Err(Error::Parse(format!("unknown cut {s:?}"))),
        }
    }
}
