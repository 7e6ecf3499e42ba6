//! Red regions near the three face terminals.
//!
//! For a corner `i` of the face on axes {0,1,2} and a rational `c` with
//! `c·n` integral, the region is the small triangle `x_i ≥ 1 - c` of the face.
//! `U_i` is its inner side, `R_i` its perimeter nodes, `Closure(R_i)` the
//! whole closed triangle, and `Γ_i` the perimeter edges.

use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::lattice::SimplexGraph;
use crate::rational::{rat, Rational};

const FACE: [usize; 3] = [0, 1, 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedCorner {
    pub axis: usize,
    /// Face nodes with `x_i = 1 - c`.
    pub inner_side: Vec<usize>,
    /// Perimeter nodes of the corner triangle.
    pub red_nodes: Vec<usize>,
    /// All face nodes with `x_i ≥ 1 - c`.
    pub closure: Vec<usize>,
    /// Perimeter edges, forming a simple cycle through `red_nodes`.
    pub red_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedRegions {
    pub c: Rational,
    /// Side length of each corner triangle in lattice steps (`c·n`).
    pub side: u32,
    pub corners: [RedCorner; 3],
}

impl RedRegions {
    pub fn all_red_edges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.corners.iter().flat_map(|c| c.red_edges.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Validates `0 < c < 1/2` and returns `c·n` as an integer.
pub fn red_side(c: &Rational, n: u32) -> Result<u32> {
    if !c.is_positive() || *c >= rat(1, 2) {
        return Err(invalid(format!("c must lie in (0, 1/2), got {c}")));
    }
    let cn = c * Rational::from_integer(n.into());
    if !cn.denom().is_one() || cn.is_zero() {
        return Err(invalid(format!("c·n must be a positive integer, got {cn}")));
    }
    cn.numer().try_into().map_err(|_| invalid("c·n out of range"))
}

/// Builds the three red corners on the face `x_3 = 0` (or the whole graph for k = 3).
pub fn red_regions(g: &SimplexGraph, c: &Rational) -> Result<RedRegions> {
    if g.k() != 3 && g.k() != 4 {
        return Err(invalid("red regions are defined on Δ(3,n) or Δ(4,n)"));
    }
    let side = red_side(c, g.n())?;
    let n = g.n();
    let threshold = n - side;
    let corners = FACE.map(|i| {
        let on_face = |v: usize| g.point(v).support_within(&FACE);
        let closure: Vec<usize> =
            (0..g.node_count()).filter(|&v| on_face(v) && g.point(v).coord(i) >= threshold).collect();
        let inner_side: Vec<usize> =
            closure.iter().copied().filter(|&v| g.point(v).coord(i) == threshold).collect();
        // Perimeter: the inner side plus the two boundary segments through the corner.
        let on_side = |v: usize, j: usize| g.point(v).coord(j) == 0;
        let others: Vec<usize> = FACE.iter().copied().filter(|&j| j != i).collect();
        let red_nodes: Vec<usize> = closure
            .iter()
            .copied()
            .filter(|&v| g.point(v).coord(i) == threshold || others.iter().any(|&j| on_side(v, j)))
            .collect();
        // Both ends on one side of the triangle; excludes the chords that join
        // adjacent sides near each triangle corner.
        let same_side = |a: usize, b: usize| {
            (g.point(a).coord(i) == threshold && g.point(b).coord(i) == threshold)
                || others.iter().any(|&j| on_side(a, j) && on_side(b, j))
        };
        let red_edges: Vec<usize> = (0..g.edge_count())
            .filter(|&id| {
                let e = g.edge(id);
                red_nodes.binary_search(&e.u).is_ok()
                    && red_nodes.binary_search(&e.v).is_ok()
                    && same_side(e.u, e.v)
            })
            .collect();
        RedCorner { axis: i, inner_side, red_nodes, closure, red_edges }
    });
    Ok(RedRegions { c: c.clone(), side, corners })
}

/// True iff the edges form one simple cycle covering exactly `nodes`.
pub fn is_simple_cycle(g: &SimplexGraph, nodes: &[usize], edges: &[usize]) -> bool {
    if nodes.len() < 3 || nodes.len() != edges.len() {
        return false;
    }
    let pos = |v: usize| nodes.binary_search(&v).ok();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &id in edges {
        let e = g.edge(id);
        match (pos(e.u), pos(e.v)) {
            (Some(a), Some(b)) => {
                adj[a].push(b);
                adj[b].push(a);
            }
            _ => return false,
        }
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    let (mut prev, mut cur, mut steps) = (0usize, adj[0][0], 1usize);
    while cur != 0 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > nodes.len() {
            return false;
        }
    }
    steps == nodes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_by_quarter_example() {
        let g = SimplexGraph::new(4, 8).unwrap();
        let r = red_regions(&g, &rat(1, 4)).unwrap();
        assert_eq!(r.side, 2);
        for corner in &r.corners {
            assert_eq!(corner.red_edges.len(), 6);
            assert!(is_simple_cycle(&g, &corner.red_nodes, &corner.red_edges));
            for &v in corner.closure.iter() {
                assert_eq!(g.point(v).coord(3), 0);
            }
        }
        assert_eq!(r.all_red_edges().len(), 18);
        assert_eq!(r.corners[0].inner_side.len(), 3);
        let c1 = &r.corners[0].closure;
        assert!(r.corners[1].closure.iter().all(|v| c1.binary_search(v).is_err()));
    }

    #[test]
    fn total_red_edges_is_nine_cn() {
        for n in 2..=14u32 {
            for cn in 1..=n {
                let c = rat(cn as i64, n as i64);
                if c >= rat(1, 2) {
                    continue;
                }
                let g = SimplexGraph::new(4, n).unwrap();
                let r = red_regions(&g, &c).unwrap();
                assert_eq!(r.all_red_edges().len() as u32, 9 * cn, "n={n} cn={cn}");
                for corner in &r.corners {
                    assert!(is_simple_cycle(&g, &corner.red_nodes, &corner.red_edges));
                    let closure_size = ((cn + 1) * (cn + 2) / 2) as usize;
                    assert_eq!(corner.closure.len(), closure_size);
                }
                for a in 0..3 {
                    for b in a + 1..3 {
                        let na = &r.corners[a].red_nodes;
                        assert!(r.corners[b].red_nodes.iter().all(|v| na.binary_search(v).is_err()));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_c() {
        let g = SimplexGraph::new(4, 8).unwrap();
        assert!(red_regions(&g, &rat(1, 3)).is_err());
        assert!(red_regions(&g, &rat(1, 2)).is_err());
        assert!(red_regions(&g, &rat(0, 1)).is_err());
        assert!(red_regions(&g, &rat(-1, 8)).is_err());
        let g2 = SimplexGraph::new(2, 8).unwrap();
        assert!(red_regions(&g2, &rat(1, 4)).is_err());
    }
}
