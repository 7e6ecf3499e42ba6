//! Exact max-flow separating one terminal from the opposite face.

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::instances::WeightMap;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowCut {
    pub value: Rational,
    /// Nodes reachable from the terminal in the final residual graph.
    pub source_side: Vec<usize>,
    pub augmentations: usize,
}

struct Arc {
    to: usize,
    cap: i128,
}

/// Minimum weight of an edge set whose removal disconnects `s_i` (0-based
/// axis `i`) from every node with `x_i = 0`.
pub fn min_terminal_face_cut(w: &WeightMap, i: usize) -> Result<Rational> {
    Ok(terminal_face_flow(w, i)?.value)
}

/// Shortest-augmenting-path max-flow on integer-scaled weights. The face
/// nodes are joined to a super-sink by arcs of capacity `1 + total`.
pub fn terminal_face_flow(w: &WeightMap, i: usize) -> Result<FlowCut> {
    let g = w.graph();
    if i >= g.k() {
        return Err(invalid(format!("terminal index {i} out of range for k = {}", g.k())));
    }
    let scaled = w.scaled_integers()?;
    let sink = g.node_count();
    let source = g.terminal(i);
    let infinite = scaled.total + 1;

    let mut arcs: Vec<Arc> = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); sink + 1];
    let mut add = |a: usize, b: usize, ab: i128, ba: i128, arcs: &mut Vec<Arc>| {
        out[a].push(arcs.len());
        arcs.push(Arc { to: b, cap: ab });
        out[b].push(arcs.len());
        arcs.push(Arc { to: a, cap: ba });
    };
    for (id, e) in g.edges().iter().enumerate() {
        let c = scaled.weights[id];
        if c > 0 {
            add(e.u, e.v, c, c, &mut arcs);
        }
    }
    for v in 0..g.node_count() {
        if g.point(v).coord(i) == 0 {
            add(v, sink, infinite, 0, &mut arcs);
        }
    }

    let mut flow: i128 = 0;
    let mut augmentations = 0;
    let mut parent: Vec<Option<usize>> = vec![None; sink + 1];
    loop {
        parent.iter_mut().for_each(|p| *p = None);
        let mut seen = vec![false; sink + 1];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            if v == sink {
                break;
            }
            for &a in &out[v] {
                let to = arcs[a].to;
                if arcs[a].cap > 0 && !seen[to] {
                    seen[to] = true;
                    parent[to] = Some(a);
                    queue.push_back(to);
                }
            }
        }
        if !seen[sink] {
            let source_side = (0..sink).filter(|&v| seen[v]).collect();
            return Ok(FlowCut { value: scaled.to_rational(flow), source_side, augmentations });
        }
        let mut push = i128::MAX;
        let mut v = sink;
        while let Some(a) = parent[v] {
            push = push.min(arcs[a].cap);
            v = arcs[a ^ 1].to;
        }
        let mut v = sink;
        while let Some(a) = parent[v] {
            arcs[a].cap -= push;
            arcs[a ^ 1].cap += push;
            v = arcs[a ^ 1].to;
        }
        flow += push;
        augmentations += 1;
    }
}
