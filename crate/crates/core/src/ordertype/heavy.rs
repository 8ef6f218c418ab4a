//! Bounded refutation search for the heaviness property.
//!
//! Heaviness quantifies over every large dense `S' ⊆ S`, so it cannot be
//! certified by search. [`heavy_check`] only ever refutes: it generates
//! candidate `S'` and looks for one that contains no admissible separated
//! pair.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::separated::{find_separated_pair, is_separated, shrink};
use crate::bitset::Bitset;
use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::interval::VertexInterval;
use crate::rng::Rng;

/// Candidates up to this size are decided by enumerating every pair.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// `(alpha, beta, gamma, delta, p)`, all in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeavyParams {
    pub alpha: Ratio<u64>,
    pub beta: Ratio<u64>,
    pub gamma: Ratio<u64>,
    pub delta: Ratio<u64>,
    pub p: Ratio<u64>,
}

impl HeavyParams {
    pub fn new(alpha: Ratio<u64>, beta: Ratio<u64>, gamma: Ratio<u64>, delta: Ratio<u64>, p: Ratio<u64>) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta), ("p", p)] {
            if *v.numer() == 0 || v >= Ratio::from_integer(1) {
                return Err(Error::domain(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(HeavyParams { alpha, beta, gamma, delta, p })
    }
}

/// A simple graph on an interval of integer labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexInterval,
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn from_fn(vertices: VertexInterval, mut edge: impl FnMut(i64, i64) -> bool) -> Self {
        let n = vertices.size();
        let mut adj = alloc::vec![Bitset::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if edge(vertices.label(a), vertices.label(b)) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        Graph { vertices, adj }
    }

    /// The graph of one color class.
    pub fn from_coloring(coloring: &EdgeColoring, color: Color) -> Self {
        Graph { vertices: coloring.vertices(), adj: coloring.adjacency(color) }
    }

    pub fn random(vertices: VertexInterval, density: f64, rng: &mut Rng) -> Self {
        Self::from_fn(vertices, |_, _| rng.chance(density))
    }

    pub fn vertices(&self) -> VertexInterval {
        self.vertices
    }

    pub fn has_edge(&self, u: i64, v: i64) -> bool {
        match (self.vertices.index_of(u), self.vertices.index_of(v)) {
            (Ok(a), Ok(b)) => self.adj[a].contains(b),
            _ => false,
        }
    }

    pub fn cross_edges(&self, t1: &[i64], t2: &[i64]) -> u64 {
        t1.iter().map(|&u| t2.iter().filter(|&&v| self.has_edge(u, v)).count() as u64).sum()
    }

    fn has_edge_within(&self, s: &[i64]) -> bool {
        s.iter().enumerate().any(|(i, &u)| s[i + 1..].iter().any(|&v| self.has_edge(u, v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationReason {
    /// `S'` spans no edge, so every cross density is 0.
    NoEdges,
    /// Every separated pair inside `S'` was checked and none qualifies.
    ExhaustedPairs { pairs: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub s_prime: Vec<i64>,
    pub j_prime: VertexInterval,
    pub reason: RefutationReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeavyVerdict {
    Refuted(Refutation),
    /// `candidates` subsets met the premise; for `inconclusive` of them no
    /// qualifying pair was found but the search was not exhaustive.
    NoRefutationFound { candidates: u64, inconclusive: u64 },
}

/// Whether `(T1, T2)` qualifies for `S'` with density `d' = ns / nj`.
fn qualifies(g: &Graph, hp: &HeavyParams, t1: &[i64], t2: &[i64], ns: usize, nj: usize) -> bool {
    if t1.is_empty() || t2.is_empty() || !is_separated(t1, t2).unwrap_or(false) {
        return false;
    }
    let (ba, bb) = (*hp.beta.numer() as u128, *hp.beta.denom() as u128);
    let min_len = (ba * ns as u128).div_ceil(bb);
    let (aa, ab) = (*hp.alpha.numer() as u128, *hp.alpha.denom() as u128);
    for t in [t1, t2] {
        // Best container: the hull, stretched to the minimum length.
        let len = ((t[t.len() - 1] - t[0] + 1) as u128).max(min_len);
        if (t.len() as u128) * ab * (nj as u128) < aa * (ns as u128) * len {
            return false;
        }
    }
    let (pa, pb) = (*hp.p.numer() as u128, *hp.p.denom() as u128);
    g.cross_edges(t1, t2) as u128 * pb >= pa * (t1.len() * t2.len()) as u128
}

fn subset(s: &[i64], mask: u32) -> Vec<i64> {
    s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

enum Probe {
    Satisfied,
    Refuted(RefutationReason),
    Inconclusive,
}

fn probe(g: &Graph, hp: &HeavyParams, s: &[i64], j: VertexInterval) -> Probe {
    if !g.has_edge_within(s) {
        return Probe::Refuted(RefutationReason::NoEdges);
    }
    let (ns, nj) = (s.len(), j.size());
    if ns <= EXHAUSTIVE_LIMIT {
        let full = (1u32 << ns) - 1;
        let mut pairs = 0u64;
        for m1 in 1..=full {
            let top = 31 - m1.leading_zeros();
            // T2 lives strictly above max T1.
            let above = full & !((2u32 << top) - 1);
            let mut m2 = above;
            while m2 != 0 {
                pairs += 1;
                if qualifies(g, hp, &subset(s, m1), &subset(s, m2), ns, nj) {
                    return Probe::Satisfied;
                }
                m2 = (m2 - 1) & above;
            }
        }
        return Probe::Refuted(RefutationReason::ExhaustedPairs { pairs });
    }
    let hull = VertexInterval::new(s[0], s[ns - 1]).expect("sorted nonempty");
    for iv in [j, hull] {
        if let Ok(pair) = find_separated_pair(s, iv) {
            if qualifies(g, hp, &pair.t1, &pair.t2, ns, nj) {
                return Probe::Satisfied;
            }
        }
    }
    // Prefix against suffix of every length.
    for m in 1..=ns / 2 {
        if qualifies(g, hp, &s[..m], &s[ns - m..], ns, nj) {
            return Probe::Satisfied;
        }
    }
    Probe::Inconclusive
}

/// Generates candidates `S'` (S itself, its hull, shrink windows of
/// geometric sizes, the separated halves, then random windows and random
/// subsets), keeps those with `|S'| >= gamma |S|` and
/// `d_{J'}(S') >= delta d_J(S)`, and probes each one. At most
/// `witness_budget` candidates are examined.
pub fn heavy_check(
    g: &Graph,
    s: &[i64],
    j: VertexInterval,
    hp: &HeavyParams,
    witness_budget: u64,
    seed: u64,
) -> Result<HeavyVerdict> {
    if witness_budget == 0 {
        return Err(Error::domain("witness budget must be positive"));
    }
    if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("S must be nonempty and strictly increasing"));
    }
    if let Some(v) = s.iter().find(|&&v| !j.contains(v) || !g.vertices().contains(v)) {
        return Err(Error::domain(format!("vertex {v} is not in J ∩ V(G)")));
    }
    let (ns, nj) = (s.len() as u128, j.size() as u128);
    let (ga, gb) = (*hp.gamma.numer() as u128, *hp.gamma.denom() as u128);
    let (da, db) = (*hp.delta.numer() as u128, *hp.delta.denom() as u128);
    let premise = |sp: &[i64], jp: &VertexInterval| {
        let (m, l) = (sp.len() as u128, jp.size() as u128);
        !sp.is_empty() && m * gb >= ga * ns && m * db * nj >= da * ns * l
    };

    let mut fixed: Vec<(Vec<i64>, VertexInterval)> = alloc::vec![(s.to_vec(), j)];
    fixed.push((s.to_vec(), VertexInterval::new(s[0], s[s.len() - 1])?));
    let mut r = j.size();
    while r >= 2 {
        r /= 2;
        if let Ok(c) = shrink(s, j, r.max(1)) {
            fixed.push(c);
        }
    }
    if let Ok(pair) = find_separated_pair(s, j) {
        fixed.push((pair.t1, pair.i1));
        fixed.push((pair.t2, pair.i2));
    }

    let mut rng = Rng::new(seed);
    let random_candidate = |rng: &mut Rng| -> (Vec<i64>, VertexInterval) {
        if rng.chance(0.5) {
            let a = rng.range_i64(j.lo(), j.hi());
            let b = rng.range_i64(a, j.hi());
            let w = VertexInterval::new(a, b).expect("a <= b");
            (s.iter().copied().filter(|v| w.contains(*v)).collect(), w)
        } else {
            let keep = (ga * ns).div_ceil(gb).max(1) as usize;
            let size = keep + rng.below(s.len() - keep.min(s.len()) + 1);
            let mut idx: Vec<usize> = (0..s.len()).collect();
            rng.shuffle(&mut idx);
            let mut sub: Vec<i64> = idx[..size.min(s.len())].iter().map(|&i| s[i]).collect();
            sub.sort_unstable();
            let hull = VertexInterval::new(sub[0], sub[sub.len() - 1]).expect("nonempty");
            (sub, hull)
        }
    };

    let (mut candidates, mut inconclusive) = (0u64, 0u64);
    let mut examined = 0u64;
    let mut fixed = fixed.into_iter();
    while examined < witness_budget {
        examined += 1;
        let (sp, jp) = match fixed.next() {
            Some(c) => c,
            None => random_candidate(&mut rng),
        };
        if !premise(&sp, &jp) {
            continue;
        }
        candidates += 1;
        match probe(g, hp, &sp, jp) {
            Probe::Satisfied => {}
            Probe::Inconclusive => inconclusive += 1,
            Probe::Refuted(reason) => {
                return Ok(HeavyVerdict::Refuted(Refutation { s_prime: sp, j_prime: jp, reason }));
            }
        }
    }
    Ok(HeavyVerdict::NoRefutationFound { candidates, inconclusive })
}
