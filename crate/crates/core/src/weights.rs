//! Vertex weight functions, the brute-force `f(n)` oracle and exhaustive
//! verifiers for the hypergraph and second-difference colorings.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::clique::{all_cliques_of_size, compensated_sum, enumerate_mono_sets, SearchBudget};
use crate::coloring::{Color, EdgeColoring, MonoColor, RED};
use crate::constructions::{block_triple_coloring, monotone_diff_triple_coloring, second_diff_coloring, BlockSpec, RodlColoring};
use crate::error::{Error, Result};
use crate::interval::VertexInterval;
use crate::rng::Rng;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `1 / log2 v`.
    ReciprocalLog,
    /// `w_s(v) = 1 / prod_{j=1}^{s} log_(2j-1) v`.
    Iterated { s: u32 },
    /// `w_s(v) / (log_(2s-1) v)^eps`.
    IteratedEps { s: u32, eps: f64 },
    /// `values[i]` is the weight of `start + i`.
    Custom { start: i64, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    kind: WeightKind,
    domain_start: i64,
}

/// `log_(i) x`: `i`-fold base-2 logarithm.
pub fn iterated_log(x: f64, i: u32) -> f64 {
    (0..i).fold(x, |v, _| libm::log2(v))
}

/// Least integer `v` with `log_(level) v > 0`, i.e. `v > 2^2^...^0`.
fn iterated_log_start(level: u32) -> Result<i64> {
    let mut t: i64 = 0;
    for _ in 0..level {
        if t >= 62 {
            return Err(Error::Overflow(format!("log_({level}) is positive only beyond 2^{t}")));
        }
        t = 1i64 << t;
    }
    Ok((t + 1).max(2))
}

impl WeightSpec {
    pub fn w1() -> Self {
        WeightSpec { kind: WeightKind::ReciprocalLog, domain_start: 2 }
    }

    pub fn iterated(s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::domain("level s must be positive"));
        }
        Ok(WeightSpec { kind: WeightKind::Iterated { s }, domain_start: iterated_log_start(2 * s - 1)? })
    }

    pub fn iterated_eps(s: u32, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::domain(format!("eps = {eps} must be positive")));
        }
        let base = Self::iterated(s)?;
        Ok(WeightSpec { kind: WeightKind::IteratedEps { s, eps }, domain_start: base.domain_start })
    }

    pub fn custom(start: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("custom weight table is empty"));
        }
        if let Some((i, w)) = values.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::domain(format!("custom weight {w} at vertex {} is not positive", start + i as i64)));
        }
        Ok(WeightSpec { kind: WeightKind::Custom { start, values }, domain_start: start })
    }

    /// `w1`, `w2`, `ws:S`, `wps:S:EPS`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unknown weight spec {s:?}; expected w1, w2, ws:S or wps:S:EPS"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["w1"] => Ok(Self::w1()),
            ["w2"] => Self::iterated(2),
            ["ws", lvl] => Self::iterated(lvl.parse().map_err(|_| bad())?),
            ["wps", lvl, eps] => Self::iterated_eps(lvl.parse().map_err(|_| bad())?, eps.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn domain_start(&self) -> i64 {
        self.domain_start
    }

    pub fn name(&self) -> String {
        match &self.kind {
            WeightKind::ReciprocalLog => "w1".into(),
            WeightKind::Iterated { s } => format!("ws:{s}"),
            WeightKind::IteratedEps { s, eps } => format!("wps:{s}:{eps}"),
            WeightKind::Custom { start, values } => format!("custom:{start}+{}", values.len()),
        }
    }

    pub fn vertex_weight(&self, v: i64) -> Result<f64> {
        if v < self.domain_start {
            return Err(Error::domain(format!("vertex {v} is below the domain start {}", self.domain_start)));
        }
        let x = v as f64;
        let iterated = |s: u32| 1.0 / (1..=s).map(|j| iterated_log(x, 2 * j - 1)).product::<f64>();
        Ok(match &self.kind {
            WeightKind::ReciprocalLog => 1.0 / libm::log2(x),
            WeightKind::Iterated { s } => iterated(*s),
            WeightKind::IteratedEps { s, eps } => iterated(*s) / libm::pow(iterated_log(x, 2 * s - 1), *eps),
            WeightKind::Custom { start, values } => *values
                .get((v - start) as usize)
                .ok_or_else(|| Error::domain(format!("vertex {v} is beyond the custom table")))?,
        })
    }

    /// Weights of every vertex of `iv`, position by position.
    pub fn vector(&self, iv: VertexInterval) -> Result<Vec<f64>> {
        iv.iter().map(|v| self.vertex_weight(v)).collect()
    }

    /// Total weight, summed with compensation in increasing vertex order.
    pub fn weight(&self, s: &[i64]) -> Result<f64> {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        let ws = sorted.iter().map(|&v| self.vertex_weight(v)).collect::<Result<Vec<_>>>()?;
        Ok(compensated_sum(ws))
    }

    /// Exact `w1` weight when every vertex is a power of two.
    pub fn exact_w1(&self, s: &[i64]) -> Option<BigRational> {
        if self.kind != WeightKind::ReciprocalLog {
            return None;
        }
        s.iter().try_fold(BigRational::from_integer(BigInt::from(0)), |acc, &v| {
            (v >= 2 && (v as u64).is_power_of_two())
                .then(|| acc + BigRational::new(BigInt::from(1), BigInt::from(v.trailing_zeros())))
        })
    }
}

/// Default cap on the number of canonical colorings `f_exact` visits.
pub const DEFAULT_FEXACT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    /// Odometer over canonical colorings in edge order.
    Lexicographic,
    /// Depth-first over a seeded random edge order, pruning partial
    /// colorings that already reach the best value.
    Shuffled { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FExact {
    pub value: f64,
    pub witness: EdgeColoring,
    /// Vertices of a heaviest monochromatic clique in the witness.
    pub heaviest: Vec<i64>,
    pub colorings: u64,
}

struct Table {
    m: usize,
    edges: Vec<(usize, usize)>,
    /// Weight of every vertex subset, by bitmask.
    mask_weight: Vec<f64>,
}

impl Table {
    fn new(m: usize, w: &[f64]) -> Self {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                edges.push((a, b));
            }
        }
        let mask_weight = (0..1usize << m)
            .map(|mask| compensated_sum((0..m).filter(|i| mask >> i & 1 == 1).map(|i| w[i])))
            .collect();
        Table { m, edges, mask_weight }
    }

    /// Heaviest monochromatic clique among fully colored edges; `col[e]`
    /// is `None` while edge `e` is unassigned.
    fn heaviest(&self, col: &[Option<u8>], q: u8, mono: &mut [u8]) -> (f64, usize) {
        let m = self.m;
        let mut adj = vec![0u32; m * q as usize];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if let Some(c) = col[e] {
                adj[c as usize * m + a] |= 1 << b;
                adj[c as usize * m + b] |= 1 << a;
            }
        }
        // mono[mask] has bit c set when mask is a clique in color c.
        let all = (1u8 << q) - 1;
        mono[0] = all;
        let mut best = (0.0, 0);
        for mask in 1usize..1 << m {
            let top = usize::BITS - 1 - mask.leading_zeros();
            let rest = mask & !(1 << top);
            let mut bits = 0u8;
            if rest == 0 {
                bits = all;
            } else {
                for c in 0..q {
                    if mono[rest] >> c & 1 == 1 && adj[c as usize * m + top as usize] as usize & rest == rest {
                        bits |= 1 << c;
                    }
                }
            }
            mono[mask] = bits;
            if bits != 0 && self.mask_weight[mask] > best.0 {
                best = (self.mask_weight[mask], mask);
            }
        }
        best
    }
}

fn f_setup(n: i64, spec: &WeightSpec, q: u32, budget: u64) -> Result<(VertexInterval, Table)> {
    if q == 0 || q > 8 {
        return Err(Error::domain(format!("q = {q} must lie in 1..=8")));
    }
    if n < 2 {
        return Err(Error::domain(format!("need n >= 2, got {n}")));
    }
    let iv = VertexInterval::new(2, n)?;
    let m = iv.size();
    let edges = m * (m - 1) / 2;
    // Canonical colorings number about q^edges / q!.
    let factorial: f64 = (1..=q).map(f64::from).product();
    let required = libm::pow(q as f64, edges as f64) / factorial;
    if m > 20 || required > budget as f64 {
        return Err(Error::Budget { required: format!("{required:.3e} colorings"), limit: format!("{budget}") });
    }
    let w = spec.vector(iv)?;
    Ok((iv, Table::new(m, &w)))
}

fn witness_from(iv: VertexInterval, q: u32, table: &Table, col: &[Option<u8>]) -> Result<EdgeColoring> {
    let colors = col.iter().map(|c| c.unwrap_or(0) as Color).collect();
    let _ = table;
    EdgeColoring::new(iv, q, colors)
}

/// `min` over `q`-colorings of `[2, n]` of the heaviest monochromatic clique
/// (single vertices count). Colorings are visited up to a global
/// permutation of colors.
pub fn f_exact(n: i64, spec: &WeightSpec, q: u32, traversal: Traversal, budget: u64) -> Result<FExact> {
    let (iv, table) = f_setup(n, spec, q, budget)?;
    let qq = q as u8;
    let ne = table.edges.len();
    let mut mono = vec![0u8; 1 << table.m];
    let mut col: Vec<Option<u8>> = vec![None; ne];
    let mut best: Option<(f64, Vec<Option<u8>>, usize)> = None;
    let mut colorings = 0u64;
    match traversal {
        Traversal::Lexicographic => {
            let mut digits = vec![0u8; ne];
            loop {
                // Restricted growth: each edge uses at most one new color.
                let mut seen = 0u8;
                let canonical = digits.iter().all(|&d| {
                    let ok = d <= seen;
                    seen = seen.max(d + 1);
                    ok
                });
                if canonical {
                    colorings += 1;
                    for (c, &d) in col.iter_mut().zip(&digits) {
                        *c = Some(d);
                    }
                    let (w, mask) = table.heaviest(&col, qq, &mut mono);
                    if best.as_ref().is_none_or(|b| w < b.0) {
                        best = Some((w, col.clone(), mask));
                    }
                }
                let mut i = 0;
                while i < ne && digits[i] == qq - 1 {
                    digits[i] = 0;
                    i += 1;
                }
                if i == ne {
                    break;
                }
                digits[i] += 1;
            }
        }
        Traversal::Shuffled { seed } => {
            let mut order: Vec<usize> = (0..ne).collect();
            Rng::new(seed).shuffle(&mut order);
            struct Dfs<'a> {
                table: &'a Table,
                order: Vec<usize>,
                q: u8,
                col: Vec<Option<u8>>,
                mono: Vec<u8>,
                best: Option<(f64, Vec<Option<u8>>, usize)>,
                leaves: u64,
            }
            impl Dfs<'_> {
                fn go(&mut self, depth: usize, used: u8) {
                    let (w, mask) = self.table.heaviest(&self.col, self.q, &mut self.mono);
                    if self.best.as_ref().is_some_and(|b| w >= b.0) {
                        return;
                    }
                    if depth == self.order.len() {
                        self.leaves += 1;
                        self.best = Some((w, self.col.clone(), mask));
                        return;
                    }
                    let e = self.order[depth];
                    for c in 0..used.min(self.q - 1) + 1 {
                        self.col[e] = Some(c);
                        self.go(depth + 1, used.max(c + 1));
                    }
                    self.col[e] = None;
                }
            }
            let mut d = Dfs { table: &table, order, q: qq, col, mono, best: None, leaves: 0 };
            if ne == 0 {
                let (w, mask) = table.heaviest(&[], qq, &mut d.mono);
                d.best = Some((w, Vec::new(), mask));
                d.leaves = 1;
            } else {
                d.go(0, 0);
            }
            best = d.best;
            colorings = d.leaves;
        }
    }
    let (value, col, mask) = best.expect("at least one coloring");
    let witness = witness_from(iv, q, &table, &col)?;
    let heaviest = (0..table.m).filter(|i| mask >> i & 1 == 1).map(|i| iv.label(i)).collect();
    Ok(FExact { value, witness, heaviest, colorings })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub n: i64,
    /// Monochromatic sets (or cliques) inspected, by size.
    pub inspected: Vec<(usize, u64)>,
    pub violations: Vec<Vec<i64>>,
}

impl VerifyReport {
    pub fn total(&self) -> u64 {
        self.inspected.iter().map(|(_, c)| c).sum()
    }

    fn count(&mut self, size: usize) {
        match self.inspected.iter_mut().find(|(s, _)| *s == size) {
            Some((_, c)) => *c += 1,
            None => {
                self.inspected.push((size, 1));
                self.inspected.sort_unstable();
            }
        }
    }
}

/// Consecutive differences non-decreasing (red) or non-increasing (blue).
pub fn has_monotone_differences(a: &[i64], color: Color) -> bool {
    a.windows(3).all(|w| {
        let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
        if color == RED { d2 >= d1 } else { d2 <= d1 }
    })
}

/// Every monochromatic set of size `3..=max_size` of the difference
/// comparison triple coloring on `[1, n]`.
pub fn verify_monotone_diff_counterexample(n: i64, max_size: usize) -> Result<VerifyReport> {
    let tc = monotone_diff_triple_coloring(n)?;
    let mut report = VerifyReport { n, ..Default::default() };
    for (set, color) in enumerate_mono_sets(&tc, max_size)? {
        report.count(set.len());
        if !has_monotone_differences(&set, color) {
            report.violations.push(set);
        }
    }
    Ok(report)
}

/// `a_5 - a_3` is strictly the largest second difference and `a_4 - a_2`,
/// `a_6 - a_4` are strictly below the other three; all five distinct.
pub fn second_diff_pattern(a: &[i64]) -> bool {
    if a.len() != 7 {
        return false;
    }
    let s: Vec<i64> = (0..5).map(|i| a[i + 2] - a[i]).collect();
    let distinct = (0..5).all(|i| (i + 1..5).all(|j| s[i] != s[j]));
    distinct && s.iter().enumerate().all(|(i, &x)| i == 2 || s[2] > x) && [s[1], s[3]].iter().all(|&x| x < s[0] && x < s[4])
}

/// Every monochromatic 7-clique of the parity-log coloring on `[1, n]`
/// against [`second_diff_pattern`].
pub fn verify_second_diff_counterexample(n: i64) -> Result<VerifyReport> {
    let c = second_diff_coloring(n)?;
    let iv = c.vertices();
    let mut report = VerifyReport { n, ..Default::default() };
    for color in 0..c.q() as Color {
        let adj = c.adjacency(color);
        all_cliques_of_size(&adj, 7, |cl| {
            let a: Vec<i64> = cl.iter().map(|&p| iv.label(p)).collect();
            report.count(7);
            if second_diff_pattern(&a) {
                report.violations.push(a);
            }
        });
    }
    Ok(report)
}

/// At most one block holds two or more vertices of `set`.
pub fn satisfies_block_property(set: &[i64], block_of: &[usize], lo: i64) -> bool {
    let mut counts = vec![0usize; block_of.iter().max().map_or(0, |b| b + 1)];
    for &v in set {
        counts[block_of[(v - lo) as usize]] += 1;
    }
    counts.iter().filter(|&&c| c >= 2).count() <= 1
}

/// Checks the block property on every monochromatic set up to `max_size`
/// for `seeds` completions of the arbitrary parts (seed `spec.seed + i`).
pub fn verify_block_structure(spec: &BlockSpec, max_size: usize, seeds: u64) -> Result<VerifyReport> {
    let total: usize = spec.block_sizes.iter().sum();
    if total > 24 {
        return Err(Error::domain(format!("{total} vertices exceeds the 24-vertex limit")));
    }
    let block = spec.block_of();
    let mut report = VerifyReport { n: total as i64, ..Default::default() };
    for i in 0..seeds {
        let s = BlockSpec { seed: spec.seed.wrapping_add(i), ..spec.clone() };
        let tc = block_triple_coloring(&s)?;
        for (set, _) in enumerate_mono_sets(&tc, max_size)? {
            report.count(set.len());
            if !satisfies_block_property(&set, &block, 1) {
                report.violations.push(set);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorWeight {
    pub color: Color,
    pub weight: f64,
    pub clique: Vec<i64>,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RodlWeightReport {
    pub n: i64,
    pub per_color: Vec<ColorWeight>,
}

impl RodlWeightReport {
    pub fn max_weight(&self) -> f64 {
        self.per_color.iter().map(|c| c.weight).fold(0.0, f64::max)
    }

    pub fn all_optimal(&self) -> bool {
        self.per_color.iter().all(|c| c.optimal)
    }
}

/// Heaviest monochromatic clique of one color of a Rödl coloring.
pub fn rodl_color_weight(r: &RodlColoring, spec: &WeightSpec, color: Color, budget: &SearchBudget) -> Result<ColorWeight> {
    let w = spec.vector(r.coloring.vertices())?;
    let s = r.coloring.max_weight_mono_clique(color, &w, budget)?;
    let weight = spec.weight(&s.clique.vertices)?;
    Ok(ColorWeight { color, weight, clique: s.clique.vertices, optimal: s.optimal })
}

/// [`rodl_color_weight`] for every color.
pub fn rodl_weight_report(r: &RodlColoring, spec: &WeightSpec, budget: &SearchBudget) -> Result<RodlWeightReport> {
    let per_color = (0..r.coloring.q() as Color)
        .map(|c| rodl_color_weight(r, spec, c, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(RodlWeightReport { n: r.coloring.vertices().hi(), per_color })
}

/// Whether `set` is monochromatic in `c` and which colors admit it.
pub fn mono_color(c: &EdgeColoring, set: &[i64]) -> Result<Option<MonoColor>> {
    c.is_monochromatic(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{rodl_three_color, BaseColorer, InnerTripleColorer, RodlColoringSpec};

    #[test]
    fn w1_examples() {
        let w = WeightSpec::w1();
        assert_eq!(w.weight(&[2]).unwrap(), 1.0);
        assert_eq!(w.weight(&[2, 4, 16]).unwrap(), 1.75);
        assert_eq!(w.exact_w1(&[2, 4, 16]).unwrap(), BigRational::new(7.into(), 4.into()));
        assert!(w.exact_w1(&[3]).is_none());
        assert!(w.weight(&[1]).is_err());
    }

    #[test]
    fn iterated_domains() {
        assert_eq!(WeightSpec::iterated(1).unwrap().domain_start(), 2);
        assert_eq!(WeightSpec::iterated(2).unwrap().domain_start(), 5);
        assert_eq!(WeightSpec::iterated(3).unwrap().domain_start(), 65537);
        assert!(WeightSpec::iterated(4).is_err());
        for s in 1..=3 {
            let w = WeightSpec::iterated(s).unwrap();
            let v = w.domain_start();
            assert!(w.vertex_weight(v).unwrap() > 0.0);
            assert!(w.vertex_weight(v - 1).is_err());
        }
    }

    #[test]
    fn w2_at_two_to_sixteen() {
        // log2 65536 = 16 and log_(3) 65536 = log2 log2 16 = 2.
        let w = WeightSpec::parse("w2").unwrap();
        assert_eq!(w.weight(&[65536]).unwrap(), 0.03125);
        let wp = WeightSpec::parse("wps:1:1").unwrap();
        assert_eq!(wp.vertex_weight(4).unwrap(), 0.25);
        assert!(WeightSpec::parse("w9").is_err());
    }

    #[test]
    fn f_exact_small_values() {
        let w = WeightSpec::w1();
        for t in [Traversal::Lexicographic, Traversal::Shuffled { seed: 9 }] {
            assert_eq!(f_exact(2, &w, 2, t, DEFAULT_FEXACT_BUDGET).unwrap().value, 1.0);
            let f3 = f_exact(3, &w, 2, t, DEFAULT_FEXACT_BUDGET).unwrap();
            assert_eq!(f3.value, compensated_sum([1.0, 1.0 / libm::log2(3.0)]));
        }
    }

    #[test]
    fn f_exact_orders_agree_and_grow() {
        let w = WeightSpec::w1();
        let mut prev = 0.0;
        for n in 2..=7 {
            let a = f_exact(n, &w, 2, Traversal::Lexicographic, DEFAULT_FEXACT_BUDGET).unwrap();
            let b = f_exact(n, &w, 2, Traversal::Shuffled { seed: n as u64 }, DEFAULT_FEXACT_BUDGET).unwrap();
            assert_eq!(a.value, b.value, "n = {n}");
            assert!(a.value >= prev);
            prev = a.value;
            for f in [&a, &b] {
                // The reported clique is monochromatic in the witness and
                // no monochromatic clique is heavier.
                assert!(f.heaviest.len() <= 1 || f.witness.is_monochromatic(&f.heaviest).unwrap().is_some());
                assert_eq!(w.weight(&f.heaviest).unwrap(), f.value);
            }
        }
        assert!(matches!(f_exact(12, &w, 2, Traversal::Lexicographic, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn monotone_diff_verifier() {
        let tc = monotone_diff_triple_coloring(20).unwrap();
        assert_eq!(tc.is_monochromatic(&[1, 2, 4, 8]).unwrap(), Some(MonoColor::Color(RED)));
        assert!(has_monotone_differences(&[1, 2, 4, 8], RED));
        let r = verify_monotone_diff_counterexample(16, 5).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.total() > 0);
    }

    #[test]
    fn second_diff_pattern_semantics() {
        assert!(!second_diff_pattern(&[1, 2, 3, 4, 5, 6, 7]));
        // second differences 12, 10, 15, 11, 13
        let hit = [1, 10, 13, 20, 28, 31, 41];
        assert!(second_diff_pattern(&hit));
        let c = second_diff_coloring(41).unwrap();
        assert!(c.is_monochromatic(&hit).unwrap().is_none());
        // 12, 10, 15, 11, 12: a tie between the outer two fails
        assert!(!second_diff_pattern(&[1, 10, 13, 20, 28, 31, 40]));
        assert!(!second_diff_pattern(&hit[..6]));
    }

    #[test]
    fn second_diff_small_n_has_no_match() {
        let r = verify_second_diff_counterexample(24).unwrap();
        assert!(r.violations.is_empty());
    }

    #[test]
    fn block_verifier() {
        let spec = BlockSpec { block_sizes: vec![4, 8], inner_colorer: InnerTripleColorer::Random, seed: 1 };
        let r = verify_block_structure(&spec, 5, 3).unwrap();
        assert!(r.violations.is_empty());
        assert!(!satisfies_block_property(&[1, 2, 5, 6], &spec.block_of(), 1));
        assert!(satisfies_block_property(&[1, 5, 6, 7], &spec.block_of(), 1));
    }

    #[test]
    fn rodl_weights_small() {
        let spec = RodlColoringSpec::classical(256, BaseColorer::Paley, BaseColorer::Paley);
        let r = rodl_three_color(&spec).unwrap();
        let rep = rodl_weight_report(&r, &WeightSpec::w1(), &SearchBudget::unlimited()).unwrap();
        assert!(rep.all_optimal());
        assert!(rep.max_weight() < 6.0);
    }
}
