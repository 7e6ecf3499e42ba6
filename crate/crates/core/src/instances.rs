//! Weighted instances on the simplex graphs.
//!
//! `J` is the scaled three-terminal instance on Δ(3,n). The four components
//! `I1..I4` live on Δ(4,n): `J` on the face `x_4 = 0`, uniform weight on the
//! three face boundary lines, uniform weight on the red triangle perimeters,
//! and uniform weight on every edge. [`combine`] forms their convex
//! combination.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::SimplexGraph;
use crate::rational::{bigint_to_i128, common_denominator, format_ratio, int, rat, Rational};
use crate::regions::{red_regions, red_side};

/// Sparse exact edge weights over a simplex graph; absent edges weigh zero.
#[derive(Clone, Debug)]
pub struct WeightMap {
    graph: Arc<SimplexGraph>,
    weights: BTreeMap<usize, Rational>,
    tag: String,
}

impl PartialEq for WeightMap {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.weights == other.weights
    }
}

impl WeightMap {
    pub fn zero(graph: Arc<SimplexGraph>, tag: impl Into<String>) -> Self {
        WeightMap { graph, weights: BTreeMap::new(), tag: tag.into() }
    }

    /// Builds a map from `(edge id, weight)` pairs. Zero weights are dropped.
    pub fn from_weights(
        graph: Arc<SimplexGraph>,
        tag: impl Into<String>,
        weights: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self> {
        let mut map = WeightMap::zero(graph, tag);
        for (id, w) in weights {
            map.set(id, w)?;
        }
        Ok(map)
    }

    pub fn set(&mut self, edge: usize, w: Rational) -> Result<()> {
        if edge >= self.graph.edge_count() {
            return Err(invalid(format!("edge {edge} is not in the graph")));
        }
        if w.is_negative() {
            return Err(invalid(format!("negative weight {w} on edge {edge}")));
        }
        if w.is_zero() {
            self.weights.remove(&edge);
        } else {
            self.weights.insert(edge, w);
        }
        Ok(())
    }

    pub fn graph(&self) -> &Arc<SimplexGraph> {
        &self.graph
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    pub fn weight(&self, edge: usize) -> Rational {
        self.weights.get(&edge).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weight_ref(&self, edge: usize) -> Option<&Rational> {
        self.weights.get(&edge)
    }

    /// Non-zero `(edge id, weight)` pairs in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.weights.iter().map(|(&id, w)| (id, w))
    }

    /// Every edge with its weight, zeros included.
    pub fn dense(&self) -> Vec<Rational> {
        (0..self.graph.edge_count()).map(|id| self.weight(id)).collect()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// Weights scaled to a common integer denominator: `weights[e] / scale`.
    pub fn scaled_integers(&self) -> Result<ScaledWeights> {
        let scale = common_denominator(self.weights.values());
        let mut weights = vec![0i128; self.graph.edge_count()];
        let mut total: i128 = 0;
        for (&id, w) in &self.weights {
            let v = w.numer() * (&scale / w.denom());
            let v = bigint_to_i128(&v).ok_or(Error::ScaleOverflow)?;
            total = total.checked_add(v).ok_or(Error::ScaleOverflow)?;
            weights[id] = v;
        }
        Ok(ScaledWeights { weights, scale, total })
    }
}

/// Integer view of a [`WeightMap`] for fast exact search.
#[derive(Clone, Debug)]
pub struct ScaledWeights {
    pub weights: Vec<i128>,
    pub scale: BigInt,
    pub total: i128,
}

impl ScaledWeights {
    pub fn to_rational(&self, v: i128) -> Rational {
        Rational::new(BigInt::from(v), self.scale.clone())
    }
}

/// The four components of the convex combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    I1,
    I2,
    I3,
    I4,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::I1, Component::I2, Component::I3, Component::I4];
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Component::I1 => "I1",
            Component::I2 => "I2",
            Component::I3 => "I3",
            Component::I4 => "I4",
        };
        f.write_str(s)
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I1" => Ok(Component::I1),
            "I2" => Ok(Component::I2),
            "I3" => Ok(Component::I3),
            "I4" => Ok(Component::I4),
            _ => Err(Error::Parse(format!("unknown component {s:?}"))),
        }
    }
}

/// Multipliers of the convex combination and the red-triangle size `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapParams {
    pub lambda: [Rational; 4],
    pub c: Rational,
}

impl GapParams {
    pub fn new(lambda: [Rational; 4], c: Rational) -> Result<Self> {
        let p = GapParams { lambda, c };
        p.validate()?;
        Ok(p)
    }

    /// Reference multipliers and `c` with an asymptotic bound near 1.20016:
    /// λ = (0.751652, 0.147852, 0.000275, 0.100221), c = 0.074125.
    pub fn reference() -> Self {
        GapParams {
            lambda: [
                rat(751_652, 1_000_000),
                rat(147_852, 1_000_000),
                rat(275, 1_000_000),
                rat(100_221, 1_000_000),
            ],
            c: rat(74_125, 1_000_000),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.iter().any(|l| l.is_negative()) {
            return Err(invalid("multipliers must be non-negative"));
        }
        let sum = self.lambda.iter().fold(Rational::zero(), |a, l| a + l);
        if !sum.is_one() {
            return Err(Error::LambdaSimplex { sum: format_ratio(&sum) });
        }
        if !self.c.is_positive() || self.c >= rat(1, 2) {
            return Err(invalid(format!("c must lie in (0, 1/2), got {}", self.c)));
        }
        Ok(())
    }

    /// Same multipliers with `c` replaced (e.g. rounded to a multiple of 1/n).
    pub fn with_c(&self, c: Rational) -> Self {
        GapParams { lambda: self.lambda.clone(), c }
    }
}

fn divisible_by_three(n: u32) -> Result<()> {
    if n < 3 || n % 3 != 0 {
        return Err(invalid(format!("n must be a positive multiple of 3, got {n}")));
    }
    Ok(())
}

/// Weight of edge `id` of a Δ(3,n) graph in `J` (without the ρ factor).
fn amm_multiple(g: &SimplexGraph, id: usize) -> i64 {
    let n = g.n() as i64;
    let third = n / 3;
    let e = g.edge(id);
    let (a, b) = (g.point(e.u), g.point(e.v));
    // A boundary edge has a coordinate that is zero at both ends.
    if let Some(m) = (0..3).find(|&m| a.coord(m) == 0 && b.coord(m) == 0) {
        let i = (m + 1) % 3;
        // Position counted from the terminal on axis i, 1-based.
        let d = n - a.coord(i).min(b.coord(i)) as i64;
        let d = d.min(n + 1 - d);
        return (third - d + 1).max(1);
    }
    let (plus, minus) = g.edge_direction(id);
    let fixed = 3 - plus - minus;
    // Inside the closed corner triangle x_f ≥ 2/3, edges parallel to the
    // opposite side carry no weight.
    if 3 * a.coord(fixed) as i64 >= 2 * n {
        0
    } else {
        1
    }
}

/// The scaled three-terminal instance `J` on Δ(3,n), total weight exactly `n`.
pub fn build_amm_j(n: u32) -> Result<WeightMap> {
    divisible_by_three(n)?;
    let g = Arc::new(SimplexGraph::new(3, n)?);
    let rho = rat(3, 5 * n as i64);
    let weights: Vec<(usize, Rational)> =
        (0..g.edge_count()).map(|id| (id, &rho * int(amm_multiple(&g, id)))).collect();
    WeightMap::from_weights(g, "J", weights)
}

/// `ρ = 3/(5n)`, the unit weight of `J`.
pub fn amm_rho(n: u32) -> Rational {
    rat(3, 5 * n as i64)
}

/// Edge ids of the face boundary lines L_01, L_12, L_02.
fn face_boundary_edges(g: &SimplexGraph) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        out.extend(g.boundary_line(i, j)?.edges);
    }
    out.sort_unstable();
    Ok(out)
}

/// One component on a shared Δ(4,n) graph.
pub fn build_component_on(
    graph: &Arc<SimplexGraph>,
    which: Component,
    c: Option<&Rational>,
) -> Result<WeightMap> {
    let g = graph.as_ref();
    if g.k() != 4 {
        return Err(invalid("components are defined on Δ(4,n)"));
    }
    let n = g.n();
    let tag = which.to_string();
    match which {
        Component::I1 => {
            let j = build_amm_j(n)?;
            let (face, sub) = g.face_graph(&[0, 1, 2])?;
            let mut out = WeightMap::zero(graph.clone(), tag);
            for &id in &face.edges {
                let e = g.edge(id);
                let a = face.nodes.binary_search(&e.u).expect("face node");
                let b = face.nodes.binary_search(&e.v).expect("face node");
                let sub_id = sub.edge_between(a, b).expect("face edge");
                out.set(id, j.weight(sub_id))?;
            }
            Ok(out)
        }
        Component::I2 => {
            let w = rat(1, 3);
            let edges = face_boundary_edges(g)?;
            WeightMap::from_weights(graph.clone(), tag, edges.into_iter().map(|id| (id, w.clone())))
        }
        Component::I3 => {
            let c = c.ok_or_else(|| invalid("component I3 requires c"))?;
            let regions = red_regions(g, c)?;
            let w = (int(9) * c).recip();
            WeightMap::from_weights(
                graph.clone(),
                tag,
                regions.all_red_edges().into_iter().map(|id| (id, w.clone())),
            )
        }
        Component::I4 => {
            let w = rat(1, (n as i64) * (n as i64));
            WeightMap::from_weights(graph.clone(), tag, (0..g.edge_count()).map(|id| (id, w.clone())))
        }
    }
}

pub fn build_component(which: Component, n: u32, c: Option<&Rational>) -> Result<WeightMap> {
    let g = Arc::new(SimplexGraph::new(4, n)?);
    build_component_on(&g, which, c)
}

/// Edge-wise `Σ λ_m · I_m` on Δ(4,n). Components with zero multiplier are
/// skipped, so their preconditions (n divisible by 3 for I1, c·n integral
/// for I3) only apply when they contribute.
pub fn combine(params: &GapParams, n: u32) -> Result<WeightMap> {
    params.validate()?;
    let g = Arc::new(SimplexGraph::new(4, n)?);
    combine_on(&g, params)
}

pub fn combine_on(graph: &Arc<SimplexGraph>, params: &GapParams) -> Result<WeightMap> {
    params.validate()?;
    if !params.lambda[2].is_zero() {
        red_side(&params.c, graph.n())?;
    }
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (which, lambda) in Component::ALL.iter().zip(params.lambda.iter()) {
        if lambda.is_zero() {
            continue;
        }
        let part = build_component_on(graph, *which, Some(&params.c))?;
        for (id, w) in part.iter() {
            *acc.entry(id).or_insert_with(Rational::zero) += lambda * w;
        }
    }
    WeightMap::from_weights(graph.clone(), "combined", acc)
}

/// Closed-form total of each component: `n` for I1..I3, `n + 3 + 2/n` for I4.
pub fn component_total(which: Component, n: u32) -> Rational {
    let n = int(n as i64);
    match which {
        Component::I4 => &n + int(3) + int(2) / &n,
        _ => n,
    }
}

pub fn total_weight(w: &WeightMap) -> Rational {
    w.total_weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_and_totals_for_j() {
        assert_eq!(amm_rho(9), rat(1, 15));
        for n in [3u32, 6, 9, 12, 15, 30] {
            let j = build_amm_j(n).unwrap();
            assert_eq!(j.total_weight(), int(n as i64), "n = {n}");
        }
        assert!(build_amm_j(10).is_err());
        assert!(build_amm_j(0).is_err());
    }

    #[test]
    fn boundary_schedule_at_nine() {
        let j = build_amm_j(9).unwrap();
        let g = j.graph().clone();
        let line = g.boundary_line(0, 1).unwrap();
        let got: Vec<Rational> = line.edges.iter().map(|&id| j.weight(id)).collect();
        let rho = rat(1, 15);
        let expect: Vec<Rational> = [3, 2, 1, 1, 1, 1, 1, 2, 3].iter().map(|&m| &rho * int(m)).collect();
        assert_eq!(got, expect);
        assert_eq!(got[0], rat(1, 5));
    }

    #[test]
    fn zero_edges_are_corner_parallels() {
        let j = build_amm_j(9).unwrap();
        let g = j.graph();
        let zeros: Vec<usize> = (0..g.edge_count()).filter(|&id| j.weight(id).is_zero()).collect();
        // Rows x_i ∈ {6,7,8} of each corner carry 3 + 2 + 1 parallel edges.
        assert_eq!(zeros.len(), 18);
        assert_eq!(j.support_len(), 135 - 18);
    }

    #[test]
    fn j_is_label_symmetric() {
        let j = build_amm_j(12).unwrap();
        let g = j.graph();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for perm in perms {
            for id in 0..g.edge_count() {
                let e = g.edge(id);
                let map = |v: usize| {
                    let p = g.point(v);
                    let mut c = [0u32; 3];
                    for i in 0..3 {
                        c[perm[i]] = p.coord(i);
                    }
                    g.index_of(&c).unwrap()
                };
                let image = g.edge_between(map(e.u), map(e.v)).unwrap();
                assert_eq!(j.weight(id), j.weight(image));
            }
        }
    }

    #[test]
    fn component_totals() {
        for n in 2..=12u32 {
            assert_eq!(build_component(Component::I2, n, None).unwrap().total_weight(), int(n as i64));
            let i4 = build_component(Component::I4, n, None).unwrap();
            assert_eq!(i4.total_weight(), component_total(Component::I4, n));
        }
        let i3 = build_component(Component::I3, 8, Some(&rat(1, 4))).unwrap();
        assert_eq!(i3.total_weight(), int(8));
        assert_eq!(build_component(Component::I4, 2, None).unwrap().total_weight(), int(6));
        assert_eq!(build_component(Component::I4, 10, None).unwrap().total_weight(), rat(66, 5));
        let i1 = build_component(Component::I1, 9, None).unwrap();
        assert_eq!(i1.total_weight(), int(9));
        assert!(build_component(Component::I3, 8, None).is_err());
        assert!(build_component(Component::I1, 8, None).is_err());
        assert!(build_component(Component::I3, 8, Some(&rat(1, 3))).is_err());
    }

    #[test]
    fn i2_has_three_lines_of_thirds() {
        let i2 = build_component(Component::I2, 3, None).unwrap();
        assert_eq!(i2.support_len(), 9);
        assert!(i2.iter().all(|(_, w)| *w == rat(1, 3)));
    }

    #[test]
    fn combine_endpoints_and_validation() {
        let one = |m: usize| {
            let mut l: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
            l[m] = Rational::one();
            GapParams::new(l, rat(1, 3)).unwrap()
        };
        let i1 = build_component(Component::I1, 3, None).unwrap();
        assert_eq!(combine(&one(0), 3).unwrap(), i1);
        assert_eq!(combine(&one(3), 2).unwrap().total_weight(), int(6));

        let bad = GapParams { lambda: [rat(1, 2), rat(1, 2), rat(1, 2), int(0)], c: rat(1, 3) };
        assert!(matches!(combine(&bad, 3), Err(Error::LambdaSimplex { .. })));
    }

    #[test]
    fn reference_params_total_at_39() {
        let p = GapParams::reference();
        let n = 39u32;
        let p = p.with_c(rat(3, 39));
        let w = combine(&p, n).unwrap();
        let l4 = &p.lambda[3];
        let expect = int(39) + int(3) * l4 + int(2) * l4 / int(39);
        assert_eq!(w.total_weight(), expect);
    }

    #[test]
    fn scaled_integers_roundtrip() {
        let p = GapParams::reference().with_c(rat(1, 3));
        let w = combine(&p, 3).unwrap();
        let s = w.scaled_integers().unwrap();
        for id in 0..w.graph().edge_count() {
            assert_eq!(s.to_rational(s.weights[id]), w.weight(id));
        }
        assert_eq!(s.to_rational(s.total), w.total_weight());
    }
}
