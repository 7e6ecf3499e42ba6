//! The discretized simplex Δ(k,n) and its unit-distance graph.
//!
//! A point is stored as `k` non-negative integers summing to `n` (the simplex
//! coordinates scaled by `n`), so every geometric test is integer arithmetic.
//! Points are indexed in colexicographic order: `a < b` iff at the last
//! coordinate where they differ, `a` is smaller. This order is part of the
//! public contract and is what the instance file formats refer to.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A point of Δ(k,n) in scaled integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint {
    coords: Box<[u32]>,
}

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(invalid("a lattice point needs at least two coordinates"));
        }
        if coords.iter().all(|&c| c == 0) {
            return Err(invalid("a lattice point needs a non-empty support"));
        }
        Ok(LatticePoint { coords: coords.into_boxed_slice() })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    /// Sum of the coordinates, i.e. the discretization level `n`.
    pub fn level(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.coords.get(i).is_some_and(|&c| c > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.coords.iter().filter(|&&c| c > 0).count()
    }

    /// True iff every positive coordinate index is listed in `indices`.
    pub fn support_within(&self, indices: &[usize]) -> bool {
        self.support().all(|i| indices.contains(&i))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Binomial coefficient; panics on overflow of `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_arity(k: usize, n: u32) -> Result<()> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    Ok(())
}

/// All compositions of `n` into `k` non-negative parts, colexicographically.
pub fn enumerate_points(k: usize, n: u32) -> Result<Vec<LatticePoint>> {
    check_arity(k, n)?;
    let mut out = Vec::with_capacity(binomial(n as u64 + k as u64 - 1, k as u64 - 1) as usize);
    let mut buf = vec![0u32; k];
    colex_fill(k, n, &mut buf, &mut out);
    Ok(out)
}

fn colex_fill(len: usize, total: u32, buf: &mut [u32], out: &mut Vec<LatticePoint>) {
    if len == 1 {
        buf[0] = total;
        out.push(LatticePoint { coords: buf.to_vec().into_boxed_slice() });
        return;
    }
    for last in 0..=total {
        buf[len - 1] = last;
        colex_fill(len - 1, total - last, buf, out);
    }
    buf[len - 1] = 0;
}

/// Position of `coords` in the colexicographic order of Δ(k,n), where
/// `k = coords.len()` and `n` is their sum.
pub fn colex_rank(coords: &[u32]) -> usize {
    let mut rank: u128 = 0;
    let mut remaining: u64 = coords.iter().map(|&c| c as u64).sum();
    for p in (1..coords.len()).rev() {
        let x = coords[p] as u64;
        for v in 0..x {
            rank += binomial(remaining - v + p as u64 - 1, p as u64 - 1);
        }
        remaining -= x;
    }
    rank as usize
}

/// An unordered edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

/// A path of nodes together with the edges joining consecutive nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Induced subgraph on the nodes whose support lies inside `indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub indices: Vec<usize>,
    /// Parent node ids, in parent order.
    pub nodes: Vec<usize>,
    /// Parent edge ids, in parent order.
    pub edges: Vec<usize>,
}

/// The graph on Δ(k,n) with edges between points at L1 distance 2/n.
#[derive(Clone, Debug)]
pub struct SimplexGraph {
    k: usize,
    n: u32,
    points: Vec<LatticePoint>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    terminals: Vec<usize>,
}

impl PartialEq for SimplexGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n
    }
}

impl Eq for SimplexGraph {}

impl SimplexGraph {
    pub fn new(k: usize, n: u32) -> Result<Self> {
        let points = enumerate_points(k, n)?;
        let mut edges = Vec::new();
        let mut scratch = vec![0u32; k];
        for (idx, p) in points.iter().enumerate() {
            for j in p.support() {
                for i in 0..k {
                    if i == j {
                        continue;
                    }
                    scratch.copy_from_slice(p.coords());
                    scratch[i] += 1;
                    scratch[j] -= 1;
                    let other = colex_rank(&scratch);
                    if idx < other {
                        edges.push(Edge { u: idx, v: other });
                    }
                }
            }
        }
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); points.len()];
        for (id, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let terminals = (0..k)
            .map(|i| {
                let mut c = vec![0u32; k];
                c[i] = n;
                colex_rank(&c)
            })
            .collect();
        Ok(SimplexGraph { k, n, points, edges, adjacency, terminals })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, node: usize) -> &LatticePoint {
        &self.points[node]
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(neighbor, edge id)` pairs, sorted by neighbor.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Terminal node ids; `terminals()[i]` is the unit point along axis `i`.
    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn terminal(&self, i: usize) -> usize {
        self.terminals[i]
    }

    /// Which axis the node is the unit point of, if any.
    pub fn terminal_axis(&self, node: usize) -> Option<usize> {
        self.terminals.iter().position(|&t| t == node)
    }

    pub fn index_of(&self, coords: &[u32]) -> Option<usize> {
        if coords.len() != self.k || coords.iter().sum::<u32>() != self.n {
            return None;
        }
        Some(colex_rank(coords))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let list = self.adjacency.get(a)?;
        list.binary_search_by_key(&b, |&(nb, _)| nb).ok().map(|pos| list[pos].1)
    }

    /// Axes `(i, j)` with `point(v) - point(u) = e_i - e_j`.
    pub fn edge_direction(&self, id: usize) -> (usize, usize) {
        let e = self.edges[id];
        let (a, b) = (self.point(e.u), self.point(e.v));
        let mut plus = usize::MAX;
        let mut minus = usize::MAX;
        for i in 0..self.k {
            if b.coord(i) > a.coord(i) {
                plus = i;
            } else if b.coord(i) < a.coord(i) {
                minus = i;
            }
        }
        (plus, minus)
    }

    fn check_axis(&self, i: usize) -> Result<()> {
        if i >= self.k {
            return Err(invalid(format!("axis {i} out of range for k = {}", self.k)));
        }
        Ok(())
    }

    /// The boundary path V_ij / L_ij from the terminal on axis `i` to the one on `j`.
    pub fn boundary_line(&self, i: usize, j: usize) -> Result<Line> {
        self.check_axis(i)?;
        self.check_axis(j)?;
        if i == j {
            return Err(invalid("boundary line needs two distinct axes"));
        }
        let nodes: Vec<usize> = (0..=self.n)
            .rev()
            .map(|xi| {
                let mut c = vec![0u32; self.k];
                c[i] = xi;
                c[j] = self.n - xi;
                colex_rank(&c)
            })
            .collect();
        Ok(self.path_through(nodes))
    }

    fn path_through(&self, nodes: Vec<usize>) -> Line {
        let edges = nodes
            .windows(2)
            .map(|w| self.edge_between(w[0], w[1]).expect("consecutive line nodes are adjacent"))
            .collect();
        Line { nodes, edges }
    }

    /// Line of the face on axes {0,1,2} parallel to L_ij, where the third
    /// axis `m` has scaled coordinate `n - t`. `t = n` is the boundary itself
    /// and `t = 0` is the single corner opposite it. Nodes run from the `i`
    /// end to the `j` end.
    pub fn parallel_line(&self, i: usize, j: usize, t: u32) -> Result<Line> {
        if self.k < 3 {
            return Err(invalid("parallel lines need a face with three axes"));
        }
        if i >= 3 || j >= 3 || i == j {
            return Err(invalid("parallel line axes must be distinct and among the first three"));
        }
        if t > self.n {
            return Err(invalid(format!("line index t = {t} exceeds n = {}", self.n)));
        }
        let m = 3 - i - j;
        let nodes: Vec<usize> = (0..=t)
            .rev()
            .map(|xi| {
                let mut c = vec![0u32; self.k];
                c[m] = self.n - t;
                c[i] = xi;
                c[j] = t - xi;
                colex_rank(&c)
            })
            .collect();
        Ok(self.path_through(nodes))
    }

    /// Subgraph induced by the nodes whose support lies inside `indices`.
    pub fn face(&self, indices: &[usize]) -> Result<Face> {
        if indices.is_empty() {
            return Err(invalid("a face needs at least one axis"));
        }
        for &i in indices {
            self.check_axis(i)?;
        }
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let nodes: Vec<usize> =
            (0..self.node_count()).filter(|&v| self.points[v].support_within(&indices)).collect();
        let edges = (0..self.edge_count())
            .filter(|&id| {
                let e = self.edges[id];
                self.points[e.u].support_within(&indices) && self.points[e.v].support_within(&indices)
            })
            .collect();
        Ok(Face { indices, nodes, edges })
    }

    /// The face on `indices` as a standalone Δ(|indices|, n) graph.
    ///
    /// Colexicographic order is preserved by dropping zero coordinates, so
    /// the returned graph's node `p` is `face.nodes[p]` in `self`.
    pub fn face_graph(&self, indices: &[usize]) -> Result<(Face, SimplexGraph)> {
        let face = self.face(indices)?;
        let sub = SimplexGraph::new(face.indices.len(), self.n)?;
        Ok((face, sub))
    }

    pub fn is_face_node(&self, node: usize, indices: &[usize]) -> bool {
        self.points[node].support_within(indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_edges(points: &[LatticePoint]) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let l1: u32 = points[a]
                    .coords()
                    .iter()
                    .zip(points[b].coords())
                    .map(|(x, y)| x.abs_diff(*y))
                    .sum();
                if l1 == 2 {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        let pts = enumerate_points(2, 1).unwrap();
        let coords: Vec<_> = pts.iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(enumerate_points(4, 2).unwrap().len(), 10);
        assert_eq!(enumerate_points(3, 3).unwrap().len(), 10);
        assert!(enumerate_points(1, 3).is_err());
        assert!(enumerate_points(3, 0).is_err());
    }

    #[test]
    fn colex_order_and_rank_agree() {
        for k in 2..=5 {
            for n in 1..=6 {
                let pts = enumerate_points(k, n).unwrap();
                for w in pts.windows(2) {
                    let a = w[0].coords();
                    let b = w[1].coords();
                    let last = (0..k).rev().find(|&i| a[i] != b[i]).unwrap();
                    assert!(a[last] < b[last]);
                }
                for (idx, p) in pts.iter().enumerate() {
                    assert_eq!(colex_rank(p.coords()), idx);
                }
            }
        }
    }

    #[test]
    fn counts_match_closed_forms_and_pair_scan() {
        for k in 2..=4usize {
            for n in 1..=6u32 {
                let g = SimplexGraph::new(k, n).unwrap();
                let nk = n as u64 + k as u64;
                assert_eq!(g.node_count() as u128, binomial(nk - 1, k as u64 - 1));
                assert_eq!(
                    g.edge_count() as u128,
                    binomial(k as u64, 2) * binomial(nk - 2, k as u64 - 1)
                );
                let ours: BTreeSet<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
                assert_eq!(ours, brute_edges(g.points()));
            }
        }
    }

    #[test]
    fn edges_are_unit_moves() {
        let g = SimplexGraph::new(4, 3).unwrap();
        for id in 0..g.edge_count() {
            let (i, j) = g.edge_direction(id);
            assert_ne!(i, j);
            let e = g.edge(id);
            let mut c = g.point(e.u).coords().to_vec();
            c[i] += 1;
            c[j] -= 1;
            assert_eq!(c, g.point(e.v).coords());
        }
    }

    #[test]
    fn small_graph_examples() {
        let g = SimplexGraph::new(3, 2).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (6, 9));
        let g = SimplexGraph::new(4, 1).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (4, 6));
        assert_eq!(g.terminals().len(), 4);
        let g = SimplexGraph::new(4, 2).unwrap();
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn terminals_are_unit_points() {
        let g = SimplexGraph::new(4, 5).unwrap();
        for (i, &t) in g.terminals().iter().enumerate() {
            assert_eq!(g.point(t).coord(i), 5);
            assert_eq!(g.terminal_axis(t), Some(i));
        }
    }

    #[test]
    fn boundary_lines() {
        let g = SimplexGraph::new(4, 5).unwrap();
        let l = g.boundary_line(0, 1).unwrap();
        assert_eq!((l.nodes.len(), l.edges.len()), (6, 5));
        assert_eq!(l.nodes[0], g.terminal(0));
        assert_eq!(*l.nodes.last().unwrap(), g.terminal(1));
        assert!(g.boundary_line(2, 2).is_err());

        let g = SimplexGraph::new(3, 9).unwrap();
        let l = g.boundary_line(1, 2).unwrap();
        for &id in &l.edges {
            let e = g.edge(id);
            assert_eq!(g.point(e.u).coord(0), 0);
            assert_eq!(g.point(e.v).coord(0), 0);
        }

        let g = SimplexGraph::new(4, 2).unwrap();
        let mut all = BTreeSet::new();
        let mut total = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let l = g.boundary_line(i, j).unwrap();
                total += l.edges.len();
                all.extend(l.edges);
            }
        }
        assert_eq!(total, 12);
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn parallel_lines() {
        let g = SimplexGraph::new(3, 9).unwrap();
        assert_eq!(g.parallel_line(1, 2, 9).unwrap(), g.boundary_line(1, 2).unwrap());
        let corner = g.parallel_line(1, 2, 0).unwrap();
        assert_eq!(corner.nodes, vec![g.terminal(0)]);
        assert!(corner.edges.is_empty());
        let l = g.parallel_line(1, 2, 3).unwrap();
        assert_eq!((l.nodes.len(), l.edges.len()), (4, 3));
        for &v in &l.nodes {
            assert_eq!(g.point(v).coord(0), 6);
        }
        assert!(g.parallel_line(1, 2, 10).is_err());

        let g4 = SimplexGraph::new(4, 4).unwrap();
        for t in 0..=4 {
            let l = g4.parallel_line(0, 2, t).unwrap();
            assert_eq!(l.nodes.len() as u32, t + 1);
            assert!(l.nodes.iter().all(|&v| g4.point(v).coord(3) == 0));
        }
    }

    #[test]
    fn faces() {
        let g = SimplexGraph::new(4, 5).unwrap();
        let (face, sub) = g.face_graph(&[0, 1, 2]).unwrap();
        assert_eq!(face.nodes.len(), 6 * 7 / 2);
        assert_eq!(face.edges.len(), sub.edge_count());
        for (p, &v) in face.nodes.iter().enumerate() {
            assert_eq!(&g.point(v).coords()[..3], sub.point(p).coords());
        }
        for &id in &face.edges {
            let e = g.edge(id);
            let a = face.nodes.binary_search(&e.u).unwrap();
            let b = face.nodes.binary_search(&e.v).unwrap();
            assert!(sub.edge_between(a, b).is_some());
        }
        let whole = g.face(&[0, 1, 2, 3]).unwrap();
        assert_eq!(whole.nodes.len(), g.node_count());
        assert_eq!(whole.edges.len(), g.edge_count());
        let pair = g.face(&[0, 1]).unwrap();
        let line = g.boundary_line(0, 1).unwrap();
        let mut line_nodes = line.nodes.clone();
        line_nodes.sort_unstable();
        let mut line_edges = line.edges.clone();
        line_edges.sort_unstable();
        assert_eq!(pair.nodes, line_nodes);
        assert_eq!(pair.edges, line_edges);
        assert!(g.face(&[]).is_err());
    }

    #[test]
    fn deterministic_indexing() {
        let a = SimplexGraph::new(4, 4).unwrap();
        let b = SimplexGraph::new(4, 4).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.edges(), b.edges());
    }
}
