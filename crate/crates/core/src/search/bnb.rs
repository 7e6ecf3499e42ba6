//! Depth-first branch-and-bound over non-opposite cuts.
//!
//! Nodes are fixed in order of decreasing incident weight and labels are
//! tried in ascending order. The lower bound at a search node is the weight
//! of cut edges among already decided nodes.

use crate::lattice::SimplexGraph;

use super::enumerate::LabelSpace;

pub(super) struct Outcome {
    pub cost: i128,
    pub labels: Vec<u8>,
    pub explored: u128,
    pub complete: bool,
}

struct Task<'a> {
    g: &'a SimplexGraph,
    w: &'a [i128],
    space: &'a LabelSpace,
    order: &'a [usize],
    labels: Vec<u8>,
    decided: Vec<bool>,
    best: i128,
    best_labels: Vec<u8>,
    explored: u128,
    budget: u128,
    complete: bool,
}

impl Task<'_> {
    /// Weight added by giving `node` label `l` against decided neighbours.
    fn added(&self, node: usize, l: u8) -> i128 {
        self.g
            .neighbors(node)
            .iter()
            .filter(|&&(u, e)| self.decided[u] && self.w[e] != 0 && self.labels[u] != l)
            .map(|&(_, e)| self.w[e])
            .sum()
    }

    fn dfs(&mut self, depth: usize, partial: i128) {
        if partial >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = partial;
            self.best_labels.clone_from(&self.labels);
            return;
        }
        let node = self.order[depth];
        for &l in self.space.choices(node) {
            if self.explored >= self.budget {
                self.complete = false;
                return;
            }
            self.explored += 1;
            let next = partial + self.added(node, l);
            self.labels[node] = l;
            self.decided[node] = true;
            self.dfs(depth + 1, next);
            self.decided[node] = false;
        }
    }
}

pub(super) fn search(g: &SimplexGraph, w: &[i128], budget: u128, threads: usize) -> Outcome {
    let space = LabelSpace::non_opposite(g);
    let mut order: Vec<usize> = space.free_nodes().to_vec();
    let incident = |v: usize| -> i128 { g.neighbors(v).iter().map(|&(_, e)| w[e]).sum() };
    order.sort_by(|&a, &b| incident(b).cmp(&incident(a)).then(a.cmp(&b)));

    // Incumbent: every free node auxiliary.
    let start: Vec<u8> = (0..g.node_count()).map(|v| *space.choices(v).last().expect("non-empty")).collect();
    let start_cost: i128 = g.edges().iter().zip(w).filter(|(e, _)| start[e.u] != start[e.v]).map(|(_, &x)| x).sum();
    let mut decided = vec![true; g.node_count()];
    for &v in &order {
        decided[v] = false;
    }

    // Independent subtrees: every label combination of the first two nodes.
    let split = order.len().min(2);
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    for &v in &order[..split] {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| space.choices(v).iter().map(move |&l| [p.clone(), vec![l]].concat()))
            .collect();
    }
    let per_task = (budget / prefixes.len() as u128).max(1);

    let run = |prefix: &Vec<u8>| -> Outcome {
        let mut t = Task {
            g,
            w,
            space: &space,
            order: &order,
            labels: start.clone(),
            decided: decided.clone(),
            best: start_cost + 1,
            best_labels: start.clone(),
            explored: 0,
            budget: per_task,
            complete: true,
        };
        let mut partial = 0i128;
        // Cut edges between fixed nodes are always paid.
        for e in g.edges().iter().zip(w) {
            if t.decided[e.0.u] && t.decided[e.0.v] && start[e.0.u] != start[e.0.v] {
                partial += e.1;
            }
        }
        for (&v, &l) in order.iter().zip(prefix) {
            partial += t.added(v, l);
            t.labels[v] = l;
            t.decided[v] = true;
        }
        t.dfs(split, partial);
        Outcome { cost: t.best, labels: t.best_labels, explored: t.explored, complete: t.complete }
    };

    let outcomes: Vec<Outcome> = if threads <= 1 || prefixes.len() == 1 {
        prefixes.iter().map(run).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: std::sync::Mutex<Vec<Option<Outcome>>> =
            std::sync::Mutex::new((0..prefixes.len()).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..threads.min(prefixes.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some(p) = prefixes.get(i) else { break };
                    let out = run(p);
                    slots.lock().expect("worker panicked")[i] = Some(out);
                });
            }
        });
        slots.into_inner().expect("worker panicked").into_iter().map(|o| o.expect("task ran")).collect()
    };

    let mut best = Outcome { cost: start_cost, labels: start, explored: 0, complete: true };
    let mut explored = 0;
    let mut complete = true;
    let mut found = false;
    for o in outcomes {
        explored += o.explored;
        complete &= o.complete;
        if o.cost <= start_cost && (!found || o.cost < best.cost) {
            best.cost = o.cost;
            best.labels = o.labels;
            found = true;
        }
    }
    best.explored = explored;
    best.complete = complete;
    best
}
