//! Dependent random choice: find a large `U ⊆ V1` in which every `s`-subset
//! has at least `m` common neighbors in `V2`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::weighted_ramsey::binomial;

/// Default cap on the number of `s`-subsets one pass may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrcParams {
    /// Edge density threshold, `0 < p <= 1`.
    pub p: Ratio<u64>,
    pub s: u64,
    pub t: u64,
    pub m: u64,
    pub n1: u64,
    pub n2: u64,
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big_ratio(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl DrcParams {
    fn validate(&self) -> Result<()> {
        if *self.p.numer() == 0 || self.p > Ratio::from_integer(1) {
            return Err(Error::domain(format!("p must lie in (0, 1], got {}", self.p)));
        }
        if self.s == 0 || self.t == 0 || self.n1 == 0 || self.n2 == 0 {
            return Err(Error::domain("s, t, N1 and N2 must be positive"));
        }
        if self.t > 4096 {
            return Err(Error::domain(format!("t = {} is beyond desk scale", self.t)));
        }
        Ok(())
    }

    /// `C(N1, s) (m / N2)^t`.
    pub fn lhs(&self) -> BigRational {
        let c = BigRational::from_integer(BigInt::from(binomial(self.n1, self.s)));
        c * num_traits::pow(big(self.m) / big(self.n2), self.t as usize)
    }

    /// `p^t N1 / 2`.
    pub fn rhs(&self) -> BigRational {
        num_traits::pow(big_ratio(self.p), self.t as usize) * big(self.n1) / big(2)
    }

    /// Whether `|U| >= p^t N1 / 2`.
    pub fn large_enough(&self, u: usize) -> bool {
        big(u as u64) >= self.rhs()
    }
}

/// `C(N1, s) (m / N2)^t <= p^t N1 / 2`, decided exactly.
pub fn drc_feasible(params: &DrcParams) -> Result<bool> {
    params.validate()?;
    Ok(params.lhs() <= params.rhs())
}

/// Bipartite graph with sides `0..n1` and `0..n2`; `rows[v]` holds the
/// neighbors in `V2` of `v ∈ V1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n2: usize,
    rows: Vec<Bitset>,
}

impl BipartiteGraph {
    pub fn new(n2: usize, rows: Vec<Bitset>) -> Result<Self> {
        if rows.is_empty() || n2 == 0 {
            return Err(Error::domain("both sides must be nonempty"));
        }
        if let Some(v) = rows.iter().position(|r| r.capacity() != n2) {
            return Err(Error::domain(format!("row {v} has width {} instead of {n2}", rows[v].capacity())));
        }
        Ok(BipartiteGraph { n2, rows })
    }

    pub fn from_fn(n1: usize, n2: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let rows = (0..n1).map(|a| (0..n2).filter(|&b| edge(a, b)).fold(Bitset::new(n2), |mut r, b| {
            r.insert(b);
            r
        }));
        Self::new(n2, rows.collect())
    }

    /// Each edge present independently with probability `density`.
    pub fn random(n1: usize, n2: usize, density: f64, rng: &mut Rng) -> Result<Self> {
        Self::from_fn(n1, n2, |_, _| rng.chance(density))
    }

    pub fn n1(&self) -> usize {
        self.rows.len()
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn rows(&self) -> &[Bitset] {
        &self.rows
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|r| r.count() as u64).sum()
    }

    /// `edges >= p N1 N2`.
    pub fn density_at_least(&self, p: Ratio<u64>) -> bool {
        let lhs = BigUint::from(self.edge_count()) * *p.denom();
        lhs >= BigUint::from(*p.numer()) * self.n1() as u64 * self.n2 as u64
    }

    /// Common neighbors in `V2` of the `V1` vertices `set`.
    pub fn common(&self, set: &[usize]) -> Bitset {
        let mut acc = Bitset::full(self.n2);
        for &v in set {
            acc.intersect_with(&self.rows[v]);
        }
        acc
    }

    /// `V1` vertices adjacent to every member of the multiset `t ⊆ V2`.
    pub fn common_of_v2(&self, t: &[usize]) -> Vec<usize> {
        (0..self.n1()).filter(|&v| t.iter().all(|&x| self.rows[v].contains(x))).collect()
    }
}

/// Walks the `s`-subsets of `items` in lexicographic order, carrying the
/// common neighborhood. `visit` receives the subset and its common
/// neighborhood size; returning `true` deletes the last element from all
/// later subsets. `alive` filters deleted items.
fn walk_subsets(
    g: &BipartiteGraph,
    items: &[usize],
    s: usize,
    alive: &mut [bool],
    visit: &mut impl FnMut(&[usize], usize) -> bool,
) {
    fn rec(
        g: &BipartiteGraph,
        items: &[usize],
        s: usize,
        start: usize,
        cur: &mut Vec<usize>,
        common: &Bitset,
        alive: &mut [bool],
        visit: &mut impl FnMut(&[usize], usize) -> bool,
    ) {
        for i in start..items.len() {
            if items.len() - i < s - cur.len() {
                return;
            }
            if !alive[i] {
                continue;
            }
            let next = common.intersection(&g.rows[items[i]]);
            cur.push(items[i]);
            if cur.len() == s {
                if visit(cur, next.count()) {
                    alive[i] = false;
                }
            } else {
                rec(g, items, s, i + 1, cur, &next, alive, visit);
            }
            cur.pop();
        }
    }
    if s == 0 || s > items.len() {
        return;
    }
    rec(g, items, s, 0, &mut Vec::new(), &Bitset::full(g.n2), alive, visit);
}

fn check_budget(w: usize, s: u64, budget: u64) -> Result<()> {
    let need = binomial(w as u64, s);
    if need > BigUint::from(budget) {
        return Err(Error::Budget { required: need.to_string(), limit: budget.to_string() });
    }
    Ok(())
}

/// Exhaustive check that every `s`-subset of `u` has at least `m` common
/// neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrcCertificate {
    pub subsets_checked: u64,
    /// Smallest common neighborhood seen; `None` when `|U| < s`.
    pub min_common: Option<usize>,
    pub valid: bool,
}

pub fn verify_certificate(g: &BipartiteGraph, u: &[usize], s: u64, m: u64, budget: u64) -> Result<DrcCertificate> {
    check_budget(u.len(), s, budget)?;
    let mut alive = alloc::vec![true; u.len()];
    let mut checked = 0u64;
    let mut min_common: Option<usize> = None;
    walk_subsets(g, u, s as usize, &mut alive, &mut |_, c| {
        checked += 1;
        min_common = Some(min_common.map_or(c, |x| x.min(c)));
        false
    });
    let valid = min_common.is_none_or(|c| c as u64 >= m);
    Ok(DrcCertificate { subsets_checked: checked, min_common, valid })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrcOutcome {
    pub u: Vec<usize>,
    /// The sampled multiset, in sampling order.
    pub t: Vec<usize>,
    pub w: Vec<usize>,
    /// Zero-based attempt that succeeded.
    pub attempt: u64,
    pub certificate: DrcCertificate,
}

/// One attempt: sample `T`, take `W = N(T)`, delete the largest member of
/// every bad `s`-subset still present.
fn attempt(g: &BipartiteGraph, params: &DrcParams, rng: &mut Rng, budget: u64) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let t: Vec<usize> = (0..params.t).map(|_| rng.below(g.n2())).collect();
    let w = g.common_of_v2(&t);
    check_budget(w.len(), params.s, budget)?;
    let mut alive = alloc::vec![true; w.len()];
    let m = params.m as usize;
    walk_subsets(g, &w, params.s as usize, &mut alive, &mut |_, c| c < m);
    let u = w.iter().zip(&alive).filter(|(_, a)| **a).map(|(v, _)| *v).collect();
    Ok((t, w, u))
}

fn check_extract_pre(g: &BipartiteGraph, params: &DrcParams) -> Result<()> {
    params.validate()?;
    if params.n1 != g.n1() as u64 || params.n2 != g.n2() as u64 {
        return Err(Error::domain(format!(
            "parameters describe a {}x{} graph but the graph is {}x{}",
            params.n1,
            params.n2,
            g.n1(),
            g.n2()
        )));
    }
    if !g.density_at_least(params.p) {
        return Err(Error::precondition(format!(
            "{} edges is below p N1 N2 with p = {}",
            g.edge_count(),
            params.p
        )));
    }
    Ok(())
}

/// Tries attempts `0..max_retries` (attempt `i` draws from `rng.fork(i)`)
/// and returns the first `U` with `|U| >= p^t N1 / 2`, certified by a full
/// re-enumeration.
pub fn drc_extract(
    g: &BipartiteGraph,
    params: &DrcParams,
    rng: &Rng,
    max_retries: u64,
    budget: u64,
) -> Result<Option<DrcOutcome>> {
    check_extract_pre(g, params)?;
    if !drc_feasible(params)? {
        return Err(Error::precondition("C(N1, s) (m/N2)^t exceeds p^t N1 / 2"));
    }
    for i in 0..max_retries {
        let (t, w, u) = attempt(g, params, &mut rng.fork(i), budget)?;
        if params.large_enough(u.len()) {
            let certificate = verify_certificate(g, &u, params.s, params.m, budget)?;
            return Ok(Some(DrcOutcome { u, t, w, attempt: i, certificate }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationReport {
    /// `Σ_v (deg v / N2)^t`.
    pub exact: BigRational,
    /// `p^t N1`.
    pub jensen: BigRational,
    pub density_at_least_p: bool,
    pub jensen_holds: bool,
    /// `C(N1, s) (m / N2)^t`, an upper bound on `E[Y]`.
    pub bad_bound: BigRational,
    pub samples: u64,
    pub mean_x: f64,
    pub mean_y: f64,
}

impl ExpectationReport {
    pub fn mean_x_minus_y(&self) -> f64 {
        self.mean_x - self.mean_y
    }
}

/// Exact `E[X]` for `X = |N(T)|`, its convexity lower bound, and a sampled
/// estimate of `E[X - Y]` where `Y` counts bad `s`-subsets of `N(T)`.
pub fn drc_expectation_report(
    g: &BipartiteGraph,
    params: &DrcParams,
    samples: u64,
    rng: &Rng,
    budget: u64,
) -> Result<ExpectationReport> {
    params.validate()?;
    let t = params.t as usize;
    let n2 = big(g.n2() as u64);
    let exact = g
        .rows()
        .iter()
        .map(|r| num_traits::pow(big(r.count() as u64) / n2.clone(), t))
        .fold(BigRational::zero(), |a, b| a + b);
    let jensen = num_traits::pow(big_ratio(params.p), t) * big(g.n1() as u64);
    let density_at_least_p = g.density_at_least(params.p);
    let jensen_holds = exact >= jensen;
    let (mut sx, mut sy) = (0u64, 0u64);
    let m = params.m as usize;
    for i in 0..samples {
        let mut r = rng.fork(i);
        let tt: Vec<usize> = (0..params.t).map(|_| r.below(g.n2())).collect();
        let w = g.common_of_v2(&tt);
        check_budget(w.len(), params.s, budget)?;
        sx += w.len() as u64;
        let mut alive = alloc::vec![true; w.len()];
        walk_subsets(g, &w, params.s as usize, &mut alive, &mut |_, c| {
            if c < m {
                sy += 1;
            }
            false
        });
    }
    let denom = samples.max(1) as f64;
    Ok(ExpectationReport {
        exact,
        jensen,
        density_at_least_p,
        jensen_holds,
        bad_bound: params.lhs(),
        samples,
        mean_x: sx as f64 / denom,
        mean_y: sy as f64 / denom,
    })
}

/// Floating-point view of an exact rational, for display.
pub fn approx(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or_else(|| {
        let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
        if bits > 0 {
            f64::INFINITY
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn params(p: (u64, u64), s: u64, t: u64, m: u64, n1: u64, n2: u64) -> DrcParams {
        DrcParams { p: Ratio::new(p.0, p.1), s, t, m, n1, n2 }
    }

    /// Cross-multiplied integer form of the hypothesis:
    /// `2 C(N1,s) m^t den^t <= num^t N1 N2^t`.
    fn oracle(d: &DrcParams) -> bool {
        let c = binomial(d.n1, d.s);
        let t = d.t as u32;
        let lhs = BigUint::from(2u32) * c * BigUint::from(d.m).pow(t) * BigUint::from(*d.p.denom()).pow(t);
        let rhs = BigUint::from(*d.p.numer()).pow(t) * BigUint::from(d.n1) * BigUint::from(d.n2).pow(t);
        lhs <= rhs
    }

    #[test]
    fn feasibility_examples() {
        let d = params((1, 2), 2, 5, 2, 100, 100);
        assert!(drc_feasible(&d).unwrap());
        assert_eq!(d.lhs(), BigRational::new(4950.into(), 312_500_000.into()));
        assert_eq!(d.rhs(), BigRational::new(25.into(), 16.into()));
        assert!(!drc_feasible(&params((1, 2), 2, 3, 10, 10, 10)).unwrap());
        assert!(drc_feasible(&params((1, 1), 1, 1, 0, 7, 7)).unwrap());
        assert!(drc_feasible(&params((0, 1), 1, 1, 0, 7, 7)).is_err());
    }

    #[test]
    fn feasibility_matches_integer_oracle() {
        let mut rng = Rng::new(8);
        for _ in 0..300 {
            let den = 1 + rng.below(9) as u64;
            let d = params((1 + rng.below(den as usize) as u64, den), 1 + rng.below(4) as u64, 1 + rng.below(8) as u64,
                rng.below(70) as u64, 1 + rng.below(64) as u64, 1 + rng.below(64) as u64);
            assert_eq!(drc_feasible(&d).unwrap(), oracle(&d), "{d:?}");
        }
    }

    #[test]
    fn complete_graph_keeps_everything() {
        let g = BipartiteGraph::from_fn(8, 8, |_, _| true).unwrap();
        let d = params((1, 1), 2, 3, 1, 8, 8);
        let out = drc_extract(&g, &d, &Rng::new(1), 1, DEFAULT_ENUMERATION_BUDGET).unwrap().unwrap();
        assert_eq!(out.u, (0..8).collect::<Vec<_>>());
        assert_eq!(out.certificate.min_common, Some(8));
        let rep = drc_expectation_report(&g, &params((1, 1), 2, 3, 8, 8, 8), 10, &Rng::new(2), 1_000_000).unwrap();
        assert_eq!(rep.exact, big(8));
        assert_eq!(rep.exact, rep.jensen);
    }

    #[test]
    fn empty_graph_fails_density() {
        let g = BipartiteGraph::from_fn(8, 8, |_, _| false).unwrap();
        let err = drc_extract(&g, &params((1, 2), 1, 1, 0, 8, 8), &Rng::new(1), 3, 100).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn random_graph_extraction_certifies() {
        let mut rng = Rng::new(64);
        let g = BipartiteGraph::random(64, 64, 0.6, &mut rng).unwrap();
        let d = params((1, 2), 2, 4, 4, 64, 64);
        let out = drc_extract(&g, &d, &Rng::new(3), 20, DEFAULT_ENUMERATION_BUDGET).unwrap().unwrap();
        assert!(out.certificate.valid);
        assert!(d.large_enough(out.u.len()));
        // Every member of U is adjacent to all of T.
        for &v in &out.u {
            assert!(out.t.iter().all(|&x| g.rows()[v].contains(x)));
        }
        let again = drc_extract(&g, &d, &Rng::new(3), 20, DEFAULT_ENUMERATION_BUDGET).unwrap().unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn deletion_pass_leaves_no_bad_subset() {
        let mut rng = Rng::new(5);
        for i in 0..30 {
            let g = BipartiteGraph::random(20, 12, 0.5, &mut rng).unwrap();
            let d = params((1, 4), 1 + i % 3, 2, 3, 20, 12);
            let (_, w, u) = attempt(&g, &d, &mut rng.fork(i), 1_000_000).unwrap();
            assert!(u.iter().all(|v| w.contains(v)));
            assert!(verify_certificate(&g, &u, d.s, d.m, 1_000_000).unwrap().valid);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = BipartiteGraph::from_fn(40, 64, |_, _| true).unwrap();
        let d = params((1, 1), 5, 4, 1, 40, 64);
        assert!(matches!(drc_extract(&g, &d, &Rng::new(0), 1, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn jensen_holds_on_random_graphs() {
        let mut rng = Rng::new(55);
        for _ in 0..30 {
            let g = BipartiteGraph::random(30, 30, 0.55, &mut rng).unwrap();
            let d = params((1, 2), 1, 4, 1, 30, 30);
            let rep = drc_expectation_report(&g, &d, 5, &Rng::new(1), 1_000_000).unwrap();
            if rep.density_at_least_p {
                assert!(rep.jensen_holds);
            }
            assert!(rep.exact >= BigRational::from_integer(BigInt::from(30)) / big(16) || !rep.density_at_least_p);
        }
        let regular = BipartiteGraph::from_fn(6, 6, |a, b| (a + b) % 2 == 0).unwrap();
        let rep = drc_expectation_report(&regular, &params((1, 2), 1, 3, 1, 6, 6), 1, &Rng::new(1), 100).unwrap();
        assert_eq!(rep.exact, rep.jensen);
    }
}
