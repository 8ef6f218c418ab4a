//! Cliques whose consecutive differences follow a prescribed order type.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_color, Clique, Meter, SearchBudget};
use crate::bitset::Bitset;
use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};

/// A permutation `pi` of `1..=k-1`: the differences `d_i = a_{i+1} - a_i`
/// must satisfy `d_{pi(1)} > d_{pi(2)} > ... > d_{pi(k-1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderType {
    pi: Vec<usize>,
    /// `rank[i]` is the position (1 = largest) of difference `d_{i+1}`.
    rank: Vec<usize>,
}

impl OrderType {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let m = pi.len();
        if m == 0 {
            return Err(Error::domain("order type needs k >= 2"));
        }
        let mut rank = vec![0; m];
        for (pos, &p) in pi.iter().enumerate() {
            if p == 0 || p > m || rank[p - 1] != 0 {
                return Err(Error::domain(format!("{pi:?} is not a permutation of 1..={m}")));
            }
            rank[p - 1] = pos + 1;
        }
        Ok(OrderType { pi, rank })
    }

    /// `d_1 < d_2 < ... < d_{k-1}`.
    pub fn convex(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain("convex sequences need k >= 2"));
        }
        Self::new((1..k).rev().collect())
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// Difference ranks, `ranks()[i]` for `d_{i+1}`.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Number of clique vertices.
    pub fn k(&self) -> usize {
        self.pi.len() + 1
    }

    pub fn inverse(&self) -> OrderType {
        OrderType::new(self.rank.clone()).expect("inverse of a permutation")
    }

    /// Whether the strictly increasing sequence `a` has this order type.
    pub fn accepts(&self, a: &[i64]) -> bool {
        if a.len() != self.k() || a.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        self.pi.windows(2).all(|w| a[w[0]] - a[w[0] - 1] > a[w[1]] - a[w[1] - 1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeOutcome {
    Found(Clique),
    /// The search space was exhausted without a witness.
    ProvedAbsent,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeSearch {
    pub outcome: TypeOutcome,
    pub nodes: u64,
}

impl TypeSearch {
    pub fn witness(&self) -> Option<&Clique> {
        match &self.outcome {
            TypeOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

struct Dfs<'a> {
    adj: &'a [Bitset],
    rank: &'a [usize],
    n: usize,
    k: usize,
    /// Only the last two chosen vertices must be adjacent to the next one.
    square_path: bool,
    meter: Meter,
    chosen: Vec<usize>,
    diffs: Vec<usize>,
}

impl Dfs<'_> {
    /// Smallest admissible value of difference `m` given the known ones.
    fn lower(&self, m: usize) -> usize {
        let r = self.rank[m];
        let mut lb = self.k - r;
        for (i, &d) in self.diffs.iter().enumerate() {
            if self.rank[i] > r {
                lb = lb.max(d + self.rank[i] - r);
            }
        }
        lb
    }

    fn upper(&self, m: usize) -> usize {
        let r = self.rank[m];
        let mut ub = usize::MAX;
        for (i, &d) in self.diffs.iter().enumerate() {
            if self.rank[i] < r {
                ub = ub.min(d.saturating_sub(r - self.rank[i]));
            }
        }
        ub
    }

    /// Minimal span still needed by the unchosen differences.
    fn remaining_span(&self) -> usize {
        (self.diffs.len()..self.k - 1).map(|m| self.lower(m)).sum()
    }

    fn run(&mut self, cand: &Bitset) -> bool {
        if self.meter.tick() {
            return false;
        }
        let j = self.chosen.len();
        if j == self.k {
            return true;
        }
        if j == 0 {
            let tail = self.remaining_span();
            for v in cand.iter() {
                if v + tail >= self.n || self.meter.stopped {
                    break;
                }
                self.chosen.push(v);
                let next = self.adj[v].clone();
                if self.run(&next) {
                    return true;
                }
                self.chosen.pop();
            }
            return false;
        }
        if !self.square_path && cand.count() < self.k - j {
            return false;
        }
        let last = self.chosen[j - 1];
        let m = j - 1;
        let lo = last + self.lower(m);
        let hi = last.saturating_add(self.upper(m)).min(self.n - 1);
        if lo > hi {
            return false;
        }
        let mut window = cand.clone();
        window.retain_from(lo);
        for v in window.iter() {
            if v > hi || self.meter.stopped {
                break;
            }
            self.diffs.push(v - last);
            if v + self.remaining_span() < self.n {
                self.chosen.push(v);
                let next = if self.square_path {
                    self.adj[v].intersection(&self.adj[last])
                } else {
                    cand.intersection(&self.adj[v])
                };
                if self.run(&next) {
                    return true;
                }
                self.chosen.pop();
            }
            self.diffs.pop();
        }
        false
    }
}

fn search(
    coloring: &EdgeColoring,
    color: Color,
    order: &OrderType,
    square_path: bool,
    budget: &SearchBudget,
) -> Result<TypeSearch> {
    check_color(coloring, color)?;
    let n = coloring.order();
    let adj = coloring.adjacency(color);
    let mut dfs = Dfs {
        adj: &adj,
        rank: order.ranks(),
        n,
        k: order.k(),
        square_path,
        meter: budget.meter(),
        chosen: Vec::new(),
        diffs: Vec::new(),
    };
    let found = dfs.run(&Bitset::full(n));
    let outcome = if found {
        let vertices: Vec<i64> = dfs.chosen.iter().map(|&p| coloring.vertices().label(p)).collect();
        let mut clique = Clique::new(vertices, color);
        clique.diff_ranks = Some(order.ranks().to_vec());
        TypeOutcome::Found(clique)
    } else if dfs.meter.stopped {
        TypeOutcome::BudgetExhausted
    } else {
        TypeOutcome::ProvedAbsent
    };
    Ok(TypeSearch { outcome, nodes: dfs.meter.nodes })
}

/// Lexicographically first monochromatic clique of order type `order`.
pub fn find_type_clique(
    coloring: &EdgeColoring,
    color: Color,
    order: &OrderType,
    budget: &SearchBudget,
) -> Result<TypeSearch> {
    search(coloring, color, order, false, budget)
}

/// Monochromatic clique on `k` vertices with strictly increasing differences.
pub fn find_convex_clique(
    coloring: &EdgeColoring,
    color: Color,
    k: usize,
    budget: &SearchBudget,
) -> Result<TypeSearch> {
    search(coloring, color, &OrderType::convex(k)?, false, budget)
}

/// Convex sequence of `k` vertices whose pairs at index distance at most 2
/// all carry `color`.
pub fn find_square_path_convex(
    coloring: &EdgeColoring,
    color: Color,
    k: usize,
    budget: &SearchBudget,
) -> Result<TypeSearch> {
    search(coloring, color, &OrderType::convex(k)?, true, budget)
}

/// Checks the square-path condition and convexity of `vertices`.
pub fn is_square_path_convex(coloring: &EdgeColoring, color: Color, vertices: &[i64]) -> Result<bool> {
    if vertices.len() < 2 || !OrderType::convex(vertices.len())?.accepts(vertices) {
        return Ok(false);
    }
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len().min(i + 3) {
            if coloring.color(vertices[i], vertices[j])? != color {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
