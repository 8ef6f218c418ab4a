//! Exact clique search on single-color graphs of a coloring.
//!
//! All searches are deterministic: candidates are explored in increasing
//! label order and a budget cut-off is reported explicitly rather than
//! silently returning a non-optimal answer.

mod bnb;
mod hyper;
mod ordered;

use alloc::format;
use alloc::vec::Vec;

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};

pub use bnb::{
    all_cliques_of_size, max_clique_in, max_weight_clique_in, BnbResult, WEIGHT_EPS,
};
pub use hyper::{enumerate_mono_sets, MonoSets};
pub use ordered::{
    find_convex_clique, find_square_path_convex, find_type_clique, is_square_path_convex,
    OrderType, TypeOutcome, TypeSearch,
};

/// Limits on a search. A zero time limit or `None` clock disables the
/// wall-clock check; `clock` returns monotonic milliseconds.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit_ms: Option<u64>,
    pub clock: Option<fn() -> u64>,
}

impl SearchBudget {
    pub const fn unlimited() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit_ms: None, clock: None }
    }

    pub fn nodes(node_limit: u64) -> Result<Self> {
        if node_limit == 0 {
            return Err(Error::domain("node limit must be positive"));
        }
        Ok(SearchBudget { node_limit, time_limit_ms: None, clock: None })
    }

    pub fn with_time(mut self, time_limit_ms: u64, clock: fn() -> u64) -> Result<Self> {
        if time_limit_ms == 0 {
            return Err(Error::domain("time limit must be positive"));
        }
        self.time_limit_ms = Some(time_limit_ms);
        self.clock = Some(clock);
        Ok(self)
    }

    pub(crate) fn meter(&self) -> Meter {
        let deadline = match (self.time_limit_ms, self.clock) {
            (Some(ms), Some(clock)) => Some((clock() + ms, clock)),
            _ => None,
        };
        Meter { nodes: 0, limit: self.node_limit, deadline, stopped: false }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Node counter shared by the recursive searches.
#[derive(Debug)]
pub(crate) struct Meter {
    pub nodes: u64,
    limit: u64,
    deadline: Option<(u64, fn() -> u64)>,
    pub stopped: bool,
}

impl Meter {
    /// Counts one node; returns `true` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.stopped = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some((end, clock)) = self.deadline {
                if clock() >= end {
                    self.stopped = true;
                }
            }
        }
        self.stopped
    }
}

/// A monochromatic vertex set with optional metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Clique {
    pub vertices: Vec<i64>,
    pub color: Color,
    pub weight: Option<f64>,
    /// Rank of each consecutive difference, 1 = largest.
    pub diff_ranks: Option<Vec<usize>>,
}

impl Clique {
    pub fn new(vertices: Vec<i64>, color: Color) -> Self {
        Clique { vertices, color, weight: None, diff_ranks: None }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Re-checks that every internal pair carries `self.color`.
    pub fn verify(&self, coloring: &EdgeColoring) -> Result<bool> {
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(false);
        }
        Ok(coloring.is_monochromatic(&self.vertices)?.is_some_and(|m| m.admits(self.color)))
    }
}

/// Outcome of a maximum (weight) clique search.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueSearch {
    pub clique: Clique,
    /// `true` when the search space was exhausted, i.e. the clique is optimal.
    pub optimal: bool,
    pub nodes: u64,
}

fn check_color(coloring: &EdgeColoring, color: Color) -> Result<()> {
    if u32::from(color) >= coloring.q() {
        return Err(Error::domain(format!("color {color} not below q = {}", coloring.q())));
    }
    Ok(())
}

/// Maximum clique in the graph of edges colored `color`.
pub fn max_mono_clique(
    coloring: &EdgeColoring,
    color: Color,
    budget: &SearchBudget,
) -> Result<CliqueSearch> {
    check_color(coloring, color)?;
    let adj = coloring.adjacency(color);
    let r = max_clique_in(&adj, budget);
    let vertices = r.clique.iter().map(|&p| coloring.vertices().label(p)).collect();
    Ok(CliqueSearch { clique: Clique::new(vertices, color), optimal: r.exhausted, nodes: r.nodes })
}

/// Sum with Neumaier compensation, used for certificate weights.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Maximum total-weight clique in color `color`; `weights[p]` belongs to the
/// vertex at position `p` of the coloring's interval.
pub fn max_weight_mono_clique(
    coloring: &EdgeColoring,
    color: Color,
    weights: &[f64],
    budget: &SearchBudget,
) -> Result<CliqueSearch> {
    check_color(coloring, color)?;
    if weights.len() != coloring.order() {
        return Err(Error::domain(format!(
            "{} weights for {} vertices",
            weights.len(),
            coloring.order()
        )));
    }
    if let Some((p, w)) = weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::domain(format!(
            "weight {w} of vertex {} is negative or not finite",
            coloring.vertices().label(p)
        )));
    }
    let adj = coloring.adjacency(color);
    let r = max_weight_clique_in(&adj, weights, budget);
    let vertices: Vec<i64> = r.clique.iter().map(|&p| coloring.vertices().label(p)).collect();
    let mut clique = Clique::new(vertices, color);
    clique.weight = Some(compensated_sum(r.clique.iter().map(|&p| weights[p])));
    Ok(CliqueSearch { clique, optimal: r.exhausted, nodes: r.nodes })
}
