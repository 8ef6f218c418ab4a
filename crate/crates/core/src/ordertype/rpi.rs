//! Exhaustive computation of `R_pi(k; q)` for tiny parameters.
//!
//! For each `n`, colorings of `K_n` are enumerated edge by edge with
//! pruning: as soon as an edge completes a monochromatic type-`pi` clique
//! the branch is abandoned. Colorings are canonical up to permuting
//! colors: along one fixed row the colors appear in first-use order.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::clique::{find_type_clique, OrderType, SearchBudget, TypeOutcome};
use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::interval::VertexInterval;

/// Largest `n` the enumerator accepts.
pub const MAX_N: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumerationOrder {
    /// Vertices are added in increasing order; row of vertex 1 is canonical.
    Forward,
    /// Vertices are added in decreasing order; row of vertex `n` is canonical.
    Backward,
}

/// A slice of the canonical prefix space: prefixes of depth `depth` are
/// numbered in search order and this shard owns those congruent to `index`
/// modulo `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
    pub depth: usize,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1, depth: 0 };

    pub fn new(index: u64, count: u64, depth: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::domain(format!("shard {index} of {count} is invalid")));
        }
        Ok(Shard { index, count, depth })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A coloring of `K_n` on `[1, n]` with no monochromatic type-`pi` clique.
    /// `prefix` is the number of the prefix it was found under.
    Avoidable { witness: EdgeColoring, prefix: u64 },
    /// Every coloring (in this shard) contains one.
    Unavoidable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideRun {
    pub decision: Decision,
    pub nodes: u64,
}

struct Search<'a> {
    n: usize,
    q: u8,
    k: usize,
    ot: &'a OrderType,
    order: EnumerationOrder,
    edges: Vec<(usize, usize)>,
    /// Index into `edges` of the canonical-row edges, in assignment order.
    canonical: Vec<bool>,
    col: Vec<Vec<u8>>,
    nodes: u64,
    limit: u64,
    shard: Shard,
    prefix_counter: u64,
    found_prefix: u64,
    stopped: bool,
}

impl Search<'_> {
    fn edge_order(n: usize, order: EnumerationOrder) -> (Vec<(usize, usize)>, Vec<bool>) {
        let mut edges = Vec::new();
        let mut canon = Vec::new();
        match order {
            EnumerationOrder::Forward => {
                for v in 1..n {
                    for u in (0..v).rev() {
                        edges.push((u, v));
                        canon.push(u == 0);
                    }
                }
            }
            EnumerationOrder::Backward => {
                for u in (0..n.saturating_sub(1)).rev() {
                    for v in u + 1..n {
                        edges.push((u, v));
                        canon.push(v == n - 1);
                    }
                }
            }
        }
        (edges, canon)
    }

    /// Whether `(u, v)` just closed a monochromatic type-`pi` clique whose
    /// extreme vertices are `u` and `v`.
    fn closes(&self, u: usize, v: usize, c: u8) -> bool {
        let mut seq = vec![u];
        self.extend(&mut seq, v, c)
    }

    fn extend(&self, seq: &mut Vec<usize>, v: usize, c: u8) -> bool {
        if seq.len() == self.k - 1 {
            seq.push(v);
            let labels: Vec<i64> = seq.iter().map(|&x| x as i64).collect();
            let ok = self.ot.accepts(&labels);
            seq.pop();
            return ok;
        }
        let last = *seq.last().expect("nonempty");
        for x in last + 1..v {
            if self.col[x][v] == c && seq.iter().all(|&y| self.col[y][x] == c) {
                seq.push(x);
                let hit = self.extend(seq, v, c);
                seq.pop();
                if hit {
                    return true;
                }
            }
        }
        false
    }

    fn run(&mut self, depth: usize, canon_max: i16) -> bool {
        if depth == self.shard.depth && self.shard.count > 1 {
            let mine = self.prefix_counter % self.shard.count == self.shard.index;
            self.prefix_counter += 1;
            if !mine {
                return false;
            }
        }
        if depth == self.edges.len() {
            self.found_prefix = self.prefix_counter.saturating_sub(1);
            return true;
        }
        let (u, v) = self.edges[depth];
        let is_canon = self.canonical[depth];
        let top = if is_canon { (canon_max + 1).min(self.q as i16 - 1) as u8 } else { self.q - 1 };
        for c in 0..=top {
            if self.nodes >= self.limit {
                self.stopped = true;
                return false;
            }
            self.nodes += 1;
            self.col[u][v] = c;
            self.col[v][u] = c;
            if self.closes(u, v, c) {
                continue;
            }
            let next_max = if is_canon { canon_max.max(c as i16) } else { canon_max };
            if self.run(depth + 1, next_max) {
                return true;
            }
            if self.stopped {
                return false;
            }
        }
        false
    }
}

/// Decides whether some `q`-coloring of `K_n` avoids a monochromatic
/// type-`pi` clique, within `node_limit` edge assignments.
pub fn decide(
    n: usize,
    q: u32,
    pi: &OrderType,
    order: EnumerationOrder,
    node_limit: u64,
    shard: Shard,
) -> Result<DecideRun> {
    if q == 0 || q > 255 {
        return Err(Error::domain(format!("q = {q} must lie in 1..=255")));
    }
    if n == 0 || n > MAX_N {
        return Err(Error::domain(format!("n = {n} must lie in 1..={MAX_N}")));
    }
    let (edges, canonical) = Search::edge_order(n, order);
    let mut s = Search {
        n,
        q: q as u8,
        k: pi.k(),
        ot: pi,
        order,
        shard,
        edges,
        canonical,
        col: vec![vec![0; n]; n],
        nodes: 0,
        limit: node_limit,
        prefix_counter: 0,
        found_prefix: 0,
        stopped: false,
    };
    let found = s.run(0, -1);
    let decision = if found {
        let iv = VertexInterval::new(1, s.n as i64)?;
        let witness = EdgeColoring::from_fn(iv, q, |a, b| s.col[(a - 1) as usize][(b - 1) as usize] as Color)?;
        Decision::Avoidable { witness, prefix: if shard.count > 1 { s.found_prefix } else { 0 } }
    } else if s.stopped {
        Decision::Inconclusive
    } else {
        Decision::Unavoidable
    };
    let _ = s.order;
    Ok(DecideRun { decision, nodes: s.nodes })
}

/// Merges shard runs for one `n`: the witness under the smallest prefix
/// number wins, which is the one a single sequential run would return.
pub fn merge_shards(runs: Vec<DecideRun>) -> DecideRun {
    let nodes = runs.iter().map(|r| r.nodes).sum();
    let mut best: Option<(u64, EdgeColoring)> = None;
    let mut inconclusive = false;
    for r in runs {
        match r.decision {
            Decision::Avoidable { witness, prefix } => {
                if best.as_ref().is_none_or(|(p, _)| prefix < *p) {
                    best = Some((prefix, witness));
                }
            }
            Decision::Inconclusive => inconclusive = true,
            Decision::Unavoidable => {}
        }
    }
    let decision = match best {
        Some((prefix, witness)) if !inconclusive => Decision::Avoidable { witness, prefix },
        Some(_) | None if inconclusive => Decision::Inconclusive,
        Some((prefix, witness)) => Decision::Avoidable { witness, prefix },
        None => Decision::Unavoidable,
    };
    DecideRun { decision, nodes }
}

/// True when no color class of `c` has a type-`pi` clique.
pub fn avoids(c: &EdgeColoring, pi: &OrderType) -> Result<bool> {
    for color in 0..c.q() as Color {
        match find_type_clique(c, color, pi, &SearchBudget::unlimited())?.outcome {
            TypeOutcome::ProvedAbsent => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RpiResult {
    /// `R = value`; `witness` avoids on `value - 1` vertices (absent when
    /// `value = 1`).
    Exact { value: usize, witness: Option<EdgeColoring> },
    /// `R > exceeds`, shown by `witness` on `exceeds` vertices.
    LowerBound { exceeds: usize, witness: EdgeColoring },
    /// The budget ran out while deciding `n`.
    Inconclusive { n: usize, best_lower: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpiReport {
    pub result: RpiResult,
    /// `(n, avoidable)` for every `n` decided.
    pub decided: Vec<(usize, bool)>,
    pub nodes: u64,
}

/// Runs [`decide`] for `n = 1, 2, ...` up to `n_max` and stops at the first
/// `n` where avoidance is impossible. `decide_fn` lets callers substitute a
/// sharded or parallel decision with the same contract.
pub fn compute_r_pi_with(
    k: usize,
    q: u32,
    pi: &OrderType,
    n_max: usize,
    mut decide_fn: impl FnMut(usize) -> Result<DecideRun>,
) -> Result<RpiReport> {
    if k < 2 || pi.k() != k {
        return Err(Error::domain(format!("order type has k = {}, expected {k}", pi.k())));
    }
    if q == 0 {
        return Err(Error::domain("q must be positive"));
    }
    if n_max == 0 || n_max > MAX_N {
        return Err(Error::domain(format!("n_max = {n_max} must lie in 1..={MAX_N}")));
    }
    let mut decided = Vec::new();
    let mut nodes = 0;
    let mut last: Option<EdgeColoring> = None;
    for n in 1..=n_max {
        let run = decide_fn(n)?;
        nodes += run.nodes;
        match run.decision {
            Decision::Avoidable { witness, .. } => {
                if !avoids(&witness, pi)? {
                    return Err(Error::domain(format!("witness for n = {n} failed re-verification")));
                }
                decided.push((n, true));
                last = Some(witness);
            }
            Decision::Unavoidable => {
                decided.push((n, false));
                return Ok(RpiReport { result: RpiResult::Exact { value: n, witness: last }, decided, nodes });
            }
            Decision::Inconclusive => {
                let result = RpiResult::Inconclusive { n, best_lower: n - 1 };
                return Ok(RpiReport { result, decided, nodes });
            }
        }
    }
    let witness = last.expect("n_max >= 1");
    Ok(RpiReport { result: RpiResult::LowerBound { exceeds: n_max, witness }, decided, nodes })
}

/// Sequential [`compute_r_pi_with`] with a per-`n` node limit.
pub fn compute_r_pi(
    k: usize,
    q: u32,
    pi: &OrderType,
    n_max: usize,
    node_limit: u64,
    order: EnumerationOrder,
) -> Result<RpiReport> {
    compute_r_pi_with(k, q, pi, n_max, |n| decide(n, q, pi, order, node_limit, Shard::WHOLE))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ot(pi: &[usize]) -> OrderType {
        OrderType::new(pi.to_vec()).unwrap()
    }

    fn value(r: &RpiReport) -> usize {
        match r.result {
            RpiResult::Exact { value, .. } => value,
            ref other => panic!("{other:?}"),
        }
    }

    /// Brute force over every coloring, no canonical form.
    fn brute_avoidable(n: usize, q: u32, pi: &OrderType) -> bool {
        let m = n * (n - 1) / 2;
        let iv = VertexInterval::new(1, n as i64).unwrap();
        let total = (q as u64).pow(m as u32);
        (0..total).any(|mut code| {
            let colors: Vec<Color> = (0..m)
                .map(|_| {
                    let c = (code % q as u64) as Color;
                    code /= q as u64;
                    c
                })
                .collect();
            avoids(&EdgeColoring::new(iv, q, colors).unwrap(), pi).unwrap()
        })
    }

    #[test]
    fn k2_is_two() {
        for q in 1..=3 {
            let r = compute_r_pi(2, q, &ot(&[1]), 6, u64::MAX, EnumerationOrder::Forward).unwrap();
            assert_eq!(value(&r), 2);
        }
    }

    #[test]
    fn single_color_k3_is_four() {
        for pi in [[1, 2], [2, 1]] {
            for order in [EnumerationOrder::Forward, EnumerationOrder::Backward] {
                let r = compute_r_pi(3, 1, &ot(&pi), 6, u64::MAX, order).unwrap();
                assert_eq!(value(&r), 4);
                assert_eq!(r.decided, vec![(1, true), (2, true), (3, true), (4, false)]);
            }
        }
    }

    #[test]
    fn decisions_match_brute_force() {
        for pi in [[1, 2], [2, 1]] {
            for n in 1..=6 {
                let want = brute_avoidable(n, 2, &ot(&pi));
                for order in [EnumerationOrder::Forward, EnumerationOrder::Backward] {
                    let got = decide(n, 2, &ot(&pi), order, u64::MAX, Shard::WHOLE).unwrap();
                    assert_eq!(matches!(got.decision, Decision::Avoidable { .. }), want, "pi={pi:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn shards_reproduce_the_sequential_witness() {
        let pi = ot(&[2, 1]);
        for n in 3..=6 {
            let whole = decide(n, 2, &pi, EnumerationOrder::Forward, u64::MAX, Shard::WHOLE).unwrap();
            for count in [2, 3, 5] {
                let runs = (0..count)
                    .map(|i| decide(n, 2, &pi, EnumerationOrder::Forward, u64::MAX, Shard::new(i, count, 4).unwrap()).unwrap())
                    .collect();
                let merged = merge_shards(runs);
                match (&whole.decision, &merged.decision) {
                    (Decision::Avoidable { witness: a, .. }, Decision::Avoidable { witness: b, .. }) => assert_eq!(a, b),
                    (a, b) => assert_eq!(a, b),
                }
            }
        }
    }

    #[test]
    fn budget_gives_inconclusive() {
        let r = compute_r_pi(3, 2, &ot(&[1, 2]), 8, 3, EnumerationOrder::Forward).unwrap();
        assert!(matches!(r.result, RpiResult::Inconclusive { .. }));
        assert!(compute_r_pi(3, 2, &ot(&[1]), 8, 10, EnumerationOrder::Forward).is_err());
    }
}
