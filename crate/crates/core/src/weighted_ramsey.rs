//! Off-diagonal Erdős–Szekeres bounds and a constructive weighted Ramsey
//! solver.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::bitset::Bitset;
use crate::clique::{compensated_sum, max_mono_clique, Clique, SearchBudget, WEIGHT_EPS};
use crate::coloring::{EdgeColoring, BLUE, RED};
use crate::error::{Error, Result};

/// `C(s + t - 2, s - 1)`, an upper bound on `r(s, t)`.
pub fn erdos_szekeres_bound(s: u64, t: u64) -> Result<BigUint> {
    if s < 2 || t < 2 {
        return Err(Error::domain(format!("need s, t >= 2, got ({s}, {t})")));
    }
    Ok(binomial(s + t - 2, s - 1))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Outcome of testing the red/blue trade-off on one coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct EsReport {
    pub n: usize,
    pub red: Clique,
    pub blue: Clique,
    /// `a ln n`.
    pub red_needed: f64,
    /// `e^(1/(4a)) ln n`.
    pub blue_needed: f64,
    pub holds: bool,
    /// Both clique searches ran to completion.
    pub optimal: bool,
}

/// Finds the largest red and blue cliques and checks whether red reaches
/// `a ln n` or blue reaches `e^(1/(4a)) ln n`, for `0 < a <= 1/4`.
pub fn check_lemma_es(coloring: &EdgeColoring, a: Ratio<u64>, budget: &SearchBudget) -> Result<EsReport> {
    if *a.numer() == 0 || a > Ratio::new(1, 4) {
        return Err(Error::domain(format!("a must lie in (0, 1/4], got {a}")));
    }
    if coloring.q() != 2 {
        return Err(Error::domain("the trade-off is stated for 2-colorings"));
    }
    let n = coloring.order();
    let af = *a.numer() as f64 / *a.denom() as f64;
    let ln_n = libm::log(n as f64);
    let red = max_mono_clique(coloring, RED, budget)?;
    let blue = max_mono_clique(coloring, BLUE, budget)?;
    let red_needed = af * ln_n;
    let blue_needed = libm::exp(1.0 / (4.0 * af)) * ln_n;
    let holds = red.clique.order() as f64 >= red_needed || blue.clique.order() as f64 >= blue_needed;
    Ok(EsReport {
        n,
        optimal: red.optimal && blue.optimal,
        red: red.clique,
        blue: blue.clique,
        red_needed,
        blue_needed,
        holds,
    })
}

/// Red and blue weights per vertex position, with scale `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPair {
    pub r: Vec<f64>,
    pub b: Vec<f64>,
    pub c: f64,
}

impl WeightPair {
    /// Raises the larger weight of each vertex where needed so the balance
    /// rule holds.
    pub fn balanced(mut r: Vec<f64>, mut b: Vec<f64>, c: f64) -> Self {
        for (rv, bv) in r.iter_mut().zip(b.iter_mut()) {
            if *rv <= *bv {
                *bv = bv.max(c * libm::log(4.0 * c / *rv));
            } else {
                *rv = rv.max(c * libm::log(4.0 * c / *bv));
            }
        }
        WeightPair { r, b, c }
    }
}

/// A vertex whose weights break the balance rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub position: usize,
    pub r: f64,
    pub b: f64,
    /// The value the smaller-side partner should have reached.
    pub required: f64,
}

/// First position where `b < c ln(4c/r)` with `r <= b`, or the symmetric
/// condition, fails (with a `1e-12` guard).
pub fn check_balance(w: &WeightPair) -> Option<Violation> {
    let c = w.c;
    w.r.iter().zip(&w.b).enumerate().find_map(|(position, (&r, &b))| {
        let (small, large) = if r <= b { (r, b) } else { (b, r) };
        let required = c * libm::log(4.0 * c / small);
        (large + WEIGHT_EPS < required).then_some(Violation { position, r, b, required })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WrResult {
    pub red_clique: Clique,
    pub blue_clique: Clique,
    /// Red weight of the red clique plus blue weight of the blue clique.
    pub total: f64,
    /// Number of sub-problems solved.
    pub nodes: u64,
}

#[derive(Clone, Default)]
struct Sol {
    k: Vec<usize>,
    l: Vec<usize>,
    total: f64,
}

enum Frame {
    Enter(Bitset),
    Combine(usize),
}

/// Builds a red clique and a blue clique by splitting on the smallest
/// vertex: recurse into its red and blue neighborhoods and keep the best of
/// adding the vertex to the red side of the first, to the blue side of the
/// second, or taking it alone.
pub fn weighted_ramsey_solve(coloring: &EdgeColoring, w: &WeightPair) -> Result<WrResult> {
    if coloring.q() != 2 {
        return Err(Error::domain("the solver works on 2-colorings"));
    }
    let n = coloring.order();
    if w.r.len() != n || w.b.len() != n {
        return Err(Error::domain(format!("weights cover {} and {} vertices, need {n}", w.r.len(), w.b.len())));
    }
    if !(w.c > 0.0) || !w.c.is_finite() {
        return Err(Error::domain(format!("scale c must be positive, got {}", w.c)));
    }
    if let Some(p) = w.r.iter().chain(&w.b).position(|x| !(*x > 0.0) || !x.is_finite()) {
        let label = coloring.vertices().label(p % n);
        return Err(Error::domain(format!("weights of vertex {label} must be positive and finite")));
    }
    if let Some(v) = check_balance(w) {
        return Err(Error::precondition(format!(
            "vertex {} breaks the balance rule: r = {}, b = {}, needs {}",
            coloring.vertices().label(v.position),
            v.r,
            v.b,
            v.required
        )));
    }
    let red = coloring.adjacency(RED);
    let blue = coloring.adjacency(BLUE);
    let mut frames = Vec::from([Frame::Enter(Bitset::full(n))]);
    let mut results: Vec<Sol> = Vec::new();
    let mut nodes = 0u64;
    while let Some(f) = frames.pop() {
        match f {
            Frame::Enter(set) => {
                nodes += 1;
                match set.first() {
                    None => results.push(Sol::default()),
                    Some(v) => {
                        frames.push(Frame::Combine(v));
                        frames.push(Frame::Enter(set.intersection(&blue[v])));
                        frames.push(Frame::Enter(set.intersection(&red[v])));
                    }
                }
            }
            Frame::Combine(v) => {
                let from_blue = results.pop().expect("blue branch");
                let from_red = results.pop().expect("red branch");
                let mut best = Sol { k: Vec::from([v]), l: Vec::new(), total: w.r[v] };
                let mut consider = |s: Sol| {
                    if s.total > best.total + WEIGHT_EPS {
                        best = s;
                    }
                };
                consider(Sol { k: Vec::new(), l: Vec::from([v]), total: w.b[v] });
                let mut k = from_red.k.clone();
                k.push(v);
                consider(Sol { k, l: from_red.l.clone(), total: w.r[v] + from_red.total });
                let mut l = from_blue.l.clone();
                l.push(v);
                consider(Sol { k: from_blue.k.clone(), l, total: w.b[v] + from_blue.total });
                results.push(best);
            }
        }
    }
    let mut sol = results.pop().expect("root");
    sol.k.sort_unstable();
    sol.l.sort_unstable();
    let label = |p: &usize| coloring.vertices().label(*p);
    let mut red_clique = Clique::new(sol.k.iter().map(label).collect(), RED);
    red_clique.weight = Some(compensated_sum(sol.k.iter().map(|&p| w.r[p])));
    let mut blue_clique = Clique::new(sol.l.iter().map(label).collect(), BLUE);
    blue_clique.weight = Some(compensated_sum(sol.l.iter().map(|&p| w.b[p])));
    let total = red_clique.weight.unwrap_or(0.0) + blue_clique.weight.unwrap_or(0.0);
    Ok(WrResult { red_clique, blue_clique, total, nodes })
}
