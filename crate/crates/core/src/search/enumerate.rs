//! Mixed-radix walks over per-node label sets.
//!
//! Free nodes (those with more than one admissible label) are digits in
//! node-index order, the first free node being the least significant digit.
//! Consecutive labelings differ in one node most of the time, so visitors
//! keep incremental state through [`Walker::relabel`].

use crate::error::{Error, Result};
use crate::lattice::SimplexGraph;

/// Per-node admissible labels, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSpace {
    choices: Vec<Vec<u8>>,
    free: Vec<usize>,
}

impl LabelSpace {
    pub fn new(choices: Vec<Vec<u8>>) -> Result<Self> {
        if let Some(v) = choices.iter().position(|c| c.is_empty()) {
            return Err(Error::InvalidLabeling(format!("node {v} has no admissible label")));
        }
        let free = (0..choices.len()).filter(|&v| choices[v].len() > 1).collect();
        Ok(LabelSpace { choices, free })
    }

    /// Labels of non-opposite cuts: the support of each node plus `k+1`,
    /// terminals pinned.
    pub fn non_opposite(g: &SimplexGraph) -> Self {
        let aux = g.k() as u8 + 1;
        let choices = (0..g.node_count())
            .map(|v| match g.terminal_axis(v) {
                Some(i) => vec![i as u8 + 1],
                None => g.point(v).support().map(|i| i as u8 + 1).chain([aux]).collect(),
            })
            .collect();
        LabelSpace::new(choices).expect("every node has a label")
    }

    /// Sperner-admissible labelings: each node labeled from its support.
    pub fn admissible(g: &SimplexGraph) -> Self {
        let choices = g.points().iter().map(|p| p.support().map(|i| i as u8 + 1).collect()).collect();
        LabelSpace::new(choices).expect("supports are non-empty")
    }

    pub fn choices(&self, node: usize) -> &[u8] {
        &self.choices[node]
    }

    pub fn free_nodes(&self) -> &[usize] {
        &self.free
    }

    pub fn node_count(&self) -> usize {
        self.choices.len()
    }

    /// Number of labelings, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.free
            .iter()
            .try_fold(1u128, |acc, &v| acc.checked_mul(self.choices[v].len() as u128))
            .unwrap_or(u128::MAX)
    }

    /// The labeling at mixed-radix position `index`.
    pub fn decode(&self, mut index: u128) -> Vec<u8> {
        let mut labels: Vec<u8> = self.choices.iter().map(|c| c[0]).collect();
        for &v in &self.free {
            let r = self.choices[v].len() as u128;
            labels[v] = self.choices[v][(index % r) as usize];
            index /= r;
        }
        labels
    }

    pub fn check_budget(&self, budget: u128) -> Result<u128> {
        let needed = self.count();
        if needed > budget {
            return Err(Error::BudgetExhausted { needed, budget });
        }
        Ok(needed)
    }
}

/// Incremental state carried along a walk.
pub trait Walker {
    /// Called once with the first labeling of a range.
    fn reset(&mut self, labels: &[u8]);
    /// Called before `node` changes to `new`; `labels` still holds the old value.
    fn relabel(&mut self, labels: &[u8], node: usize, new: u8);
    fn visit(&mut self, index: u128, labels: &[u8]);
}

/// Visits positions `start..start + count` of `space` in order.
pub fn walk<W: Walker>(space: &LabelSpace, start: u128, count: u128, walker: &mut W) {
    if count == 0 {
        return;
    }
    let free = &space.free;
    let mut labels = space.decode(start);
    let mut digits: Vec<usize> = {
        let mut idx = start;
        free.iter()
            .map(|&v| {
                let r = space.choices[v].len() as u128;
                let d = (idx % r) as usize;
                idx /= r;
                d
            })
            .collect()
    };
    walker.reset(&labels);
    let mut index = start;
    let mut left = count;
    loop {
        walker.visit(index, &labels);
        left -= 1;
        if left == 0 {
            return;
        }
        index += 1;
        for (pos, &v) in free.iter().enumerate() {
            let opts = &space.choices[v];
            let next = if digits[pos] + 1 == opts.len() { 0 } else { digits[pos] + 1 };
            walker.relabel(&labels, v, opts[next]);
            labels[v] = opts[next];
            digits[pos] = next;
            if next != 0 {
                break;
            }
        }
    }
}

/// Splits `0..total` into at most `parts` contiguous ranges.
pub(crate) fn chunks(total: u128, parts: usize) -> Vec<(u128, u128)> {
    let parts = (parts.max(1) as u128).min(total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::new();
    let mut start = 0;
    for p in 0..parts {
        let len = base + u128::from(p < extra);
        if len > 0 {
            out.push((start, len));
        }
        start += len;
    }
    out
}

/// Runs one walker per chunk on up to `threads` workers; results come back
/// in chunk order.
pub(crate) fn walk_parallel<W, F>(space: &LabelSpace, total: u128, threads: usize, make: F) -> Vec<W>
where
    W: Walker + Send,
    F: Fn() -> W + Sync,
{
    let threads = threads.max(1);
    // Chunking is independent of the worker count so reductions stay identical.
    let ranges = chunks(total, 64);
    if threads == 1 || ranges.len() <= 1 {
        return ranges
            .iter()
            .map(|&(s, len)| {
                let mut w = make();
                walk(space, s, len, &mut w);
                w
            })
            .collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<W>> = (0..ranges.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(ranges.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(&(s, len)) = ranges.get(i) else { break };
                let mut w = make();
                walk(space, s, len, &mut w);
                results.lock().expect("worker panicked")[i] = Some(w);
            });
        }
    });
    slots.into_iter().map(|w| w.expect("every chunk ran")).collect()
}

/// Calls `visitor` on every non-opposite cut of `g` in mixed-radix order.
/// Returns the number of cuts visited.
pub fn enumerate_non_opposite(
    g: &SimplexGraph,
    budget: u128,
    mut visitor: impl FnMut(&[u8]),
) -> Result<u128> {
    let space = LabelSpace::non_opposite(g);
    let total = space.check_budget(budget)?;
    struct Plain<'a, F: FnMut(&[u8])>(&'a mut F);
    impl<F: FnMut(&[u8])> Walker for Plain<'_, F> {
        fn reset(&mut self, _: &[u8]) {}
        fn relabel(&mut self, _: &[u8], _: usize, _: u8) {}
        fn visit(&mut self, _: u128, labels: &[u8]) {
            (self.0)(labels)
        }
    }
    walk(&space, 0, total, &mut Plain(&mut visitor));
    Ok(total)
}
