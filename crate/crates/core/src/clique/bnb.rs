//! Branch and bound over bitset adjacency with greedy-coloring bounds.

use alloc::vec::Vec;

use super::{Meter, SearchBudget};
use crate::bitset::Bitset;

/// Guard band for weight comparisons during the weighted search.
pub const WEIGHT_EPS: f64 = 1e-12;

/// Positions of the best clique, whether the search finished, nodes used.
#[derive(Debug, Clone, PartialEq)]
pub struct BnbResult {
    pub clique: Vec<usize>,
    pub weight: f64,
    pub exhausted: bool,
    pub nodes: u64,
}

/// Greedy sequential coloring of `p` in increasing position order.
/// Fills `order` with vertices grouped by class and `class` with the
/// 1-based class of each entry. Vertices in classes `<= skip_below` are
/// omitted since they can never be branched on.
fn color_classes(adj: &[Bitset], p: &Bitset, skip_below: usize, order: &mut Vec<usize>, class: &mut Vec<usize>) {
    order.clear();
    class.clear();
    let mut uncolored = p.clone();
    let mut k = 0;
    while !uncolored.is_empty() {
        k += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncolored.remove(v);
            if k > skip_below {
                order.push(v);
                class.push(k);
            }
        }
    }
}

struct Unweighted<'a> {
    adj: &'a [Bitset],
    meter: Meter,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Unweighted<'_> {
    fn expand(&mut self, mut p: Bitset) {
        if self.meter.tick() {
            return;
        }
        let mut order = Vec::new();
        let mut class = Vec::new();
        let skip = self.best.len().saturating_sub(self.current.len());
        color_classes(self.adj, &p, skip, &mut order, &mut class);
        for i in (0..order.len()).rev() {
            if self.current.len() + class[i] <= self.best.len() || self.meter.stopped {
                return;
            }
            let v = order[i];
            let next = p.intersection(&self.adj[v]);
            self.current.push(v);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Maximum clique of the graph given by `adj` (symmetric, loop-free rows).
pub fn max_clique_in(adj: &[Bitset], budget: &SearchBudget) -> BnbResult {
    let n = adj.len();
    let mut s = Unweighted { adj, meter: budget.meter(), current: Vec::new(), best: Vec::new() };
    if n > 0 {
        s.expand(Bitset::full(n));
    }
    let mut clique = s.best;
    clique.sort_unstable();
    BnbResult {
        weight: clique.len() as f64,
        clique,
        exhausted: !s.meter.stopped,
        nodes: s.meter.nodes,
    }
}

struct Weighted<'a> {
    adj: &'a [Bitset],
    w: &'a [f64],
    meter: Meter,
    current: Vec<usize>,
    current_w: f64,
    best: Vec<usize>,
    best_w: f64,
}

impl Weighted<'_> {
    fn expand(&mut self, mut p: Bitset) {
        if self.meter.tick() {
            return;
        }
        let mut order = Vec::new();
        let mut class = Vec::new();
        color_classes(self.adj, &p, 0, &mut order, &mut class);
        // bound[i]: weight any clique inside order[..=i] can reach.
        let mut bound = Vec::with_capacity(order.len());
        let mut closed = 0.0;
        let mut open_max = 0.0f64;
        for i in 0..order.len() {
            if i > 0 && class[i] != class[i - 1] {
                closed += open_max;
                open_max = 0.0;
            }
            open_max = open_max.max(self.w[order[i]]);
            bound.push(closed + open_max);
        }
        for i in (0..order.len()).rev() {
            if self.current_w + bound[i] <= self.best_w + WEIGHT_EPS || self.meter.stopped {
                return;
            }
            let v = order[i];
            let next = p.intersection(&self.adj[v]);
            self.current.push(v);
            self.current_w += self.w[v];
            if self.current_w > self.best_w + WEIGHT_EPS {
                self.best = self.current.clone();
                self.best_w = self.current_w;
            }
            if !next.is_empty() {
                self.expand(next);
            }
            self.current_w -= self.w[v];
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Maximum-weight clique; weights must be finite and non-negative.
pub fn max_weight_clique_in(adj: &[Bitset], weights: &[f64], budget: &SearchBudget) -> BnbResult {
    let n = adj.len();
    let mut s = Weighted {
        adj,
        w: weights,
        meter: budget.meter(),
        current: Vec::new(),
        current_w: 0.0,
        best: Vec::new(),
        best_w: -1.0,
    };
    if n > 0 {
        s.expand(Bitset::full(n));
    }
    let mut clique = s.best;
    clique.sort_unstable();
    BnbResult {
        weight: s.best_w.max(0.0),
        clique,
        exhausted: !s.meter.stopped,
        nodes: s.meter.nodes,
    }
}

/// Calls `visit` on every clique of exactly `size` vertices, in
/// lexicographic order of positions.
pub fn all_cliques_of_size(adj: &[Bitset], size: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(adj: &[Bitset], size: usize, cur: &mut Vec<usize>, cand: Bitset, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        let need = size - cur.len();
        if cand.count() < need {
            return;
        }
        for v in cand.iter() {
            let mut next = cand.intersection(&adj[v]);
            next.retain_from(v + 1);
            cur.push(v);
            rec(adj, size, cur, next, visit);
            cur.pop();
        }
    }
    let n = adj.len();
    if size == 0 {
        visit(&[]);
        return;
    }
    if n == 0 {
        return;
    }
    rec(adj, size, &mut Vec::new(), Bitset::full(n), &mut visit);
}
