//! Explicit colorings: parity of the floor-log of differences, Rödl's
//! interval colorings, products, Paley colorings and the 3-uniform
//! difference and block colorings.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::coloring::{Color, EdgeColoring, TripleColoring, BLUE, GREEN, MAX_EXPLICIT_VERTICES, RED};
use crate::error::{Error, Result};
use crate::interval::VertexInterval;
use crate::rng::Rng;
use crate::structured::{BlowUp, Coloring};

/// `floor(log2(x))` for `x >= 1`.
pub fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// Edge `{i, j}` of `[1, n]` gets the parity of `floor(log2 |j - i|)`.
pub fn parity_log_coloring(n: i64) -> Result<EdgeColoring> {
    if n < 2 {
        return Err(Error::domain(format!("parity-log coloring needs n >= 2, got {n}")));
    }
    EdgeColoring::from_fn(VertexInterval::new(1, n)?, 2, |i, j| (floor_log2((j - i) as u64) % 2) as Color)
}

/// Same rule as [`parity_log_coloring`], under the name used for the
/// second-difference counterexample.
pub fn second_diff_coloring(n: i64) -> Result<EdgeColoring> {
    parity_log_coloring(n)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod 4)` with `p >= m`.
pub fn paley_prime(m: usize) -> u64 {
    let mut p = (m as u64).max(5);
    while !(p % 4 == 1 && is_prime(p)) {
        p += 1;
    }
    p
}

/// The Paley coloring on `m` vertices starting at `lo`: the first `m`
/// residues modulo [`paley_prime`]`(m)`, red when the difference is a
/// nonzero square.
pub fn paley_coloring(lo: i64, m: usize) -> Result<EdgeColoring> {
    let p = paley_prime(m);
    let mut square = vec![false; p as usize];
    for x in 1..p {
        square[(x * x % p) as usize] = true;
    }
    EdgeColoring::from_fn(VertexInterval::with_size(lo, m)?, 2, |i, j| {
        if square[((j - i) as u64 % p) as usize] {
            RED
        } else {
            BLUE
        }
    })
}

/// The 2-coloring of `K_5` on `[1, 5]` with red pentagon and blue pentagram.
pub fn pentagon() -> EdgeColoring {
    paley_coloring(1, 5).expect("five vertices")
}

/// How an interval (or the reduced top graph) of a Rödl coloring is colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseColorer {
    /// Independent fair coin per edge; interval `i` uses stream `i`.
    Random { seed: u64 },
    Paley,
    Constant(Color),
    ParityLog,
    /// Paley coloring when at most `leaf` vertices, otherwise a Paley
    /// coloring of blocks of at most `leaf` vertices, each block again
    /// colored by Paley.
    PaleyBlowUp { leaf: usize },
}

impl BaseColorer {
    /// A 2-coloring of `m` vertices labeled from `lo`; `stream` separates the
    /// random draws of different intervals.
    pub fn color(&self, lo: i64, m: usize, stream: u64) -> Result<Coloring> {
        let vertices = VertexInterval::with_size(lo, m)?;
        let explicit = |f: &mut dyn FnMut(i64, i64) -> Color| -> Result<Coloring> {
            if m > MAX_EXPLICIT_VERTICES {
                return Err(Error::domain(format!(
                    "{self:?} cannot color {m} vertices explicitly; use a blow-up colorer"
                )));
            }
            Ok(Coloring::Explicit(EdgeColoring::from_fn(vertices, 2, f)?))
        };
        match *self {
            BaseColorer::Random { seed } => {
                let mut rng = Rng::new(seed).fork(stream);
                explicit(&mut |_, _| rng.below(2) as Color)
            }
            BaseColorer::Constant(c) => {
                if c > BLUE {
                    return Err(Error::domain("base colorers are 2-colorings"));
                }
                explicit(&mut |_, _| c)
            }
            BaseColorer::ParityLog => explicit(&mut |i, j| (floor_log2((j - i) as u64) % 2) as Color),
            BaseColorer::Paley => {
                if m > MAX_EXPLICIT_VERTICES {
                    return explicit(&mut |_, _| RED);
                }
                Ok(Coloring::Explicit(paley_coloring(lo, m)?))
            }
            BaseColorer::PaleyBlowUp { leaf } => {
                if leaf == 0 {
                    return Err(Error::domain("leaf size must be positive"));
                }
                if m <= leaf {
                    return Ok(Coloring::Explicit(paley_coloring(lo, m)?));
                }
                let blocks = m.div_ceil(leaf);
                let size = m.div_ceil(blocks);
                let top = paley_coloring(0, blocks)?;
                let mut parts = Vec::with_capacity(blocks);
                let mut left = m;
                for b in 0..blocks {
                    let s = size.min(left - (blocks - b - 1));
                    parts.push(Coloring::Explicit(paley_coloring(0, s)?));
                    left -= s;
                }
                Ok(Coloring::BlowUp(Box::new(BlowUp::new(lo, 2, top, parts)?)))
            }
        }
    }
}

/// Parameters of Rödl's interval coloring of `[2, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RodlColoringSpec {
    pub n: i64,
    pub interval_colorer: BaseColorer,
    pub top_colorer: BaseColorer,
    /// Interval `i` is `[2^(a^(i-1)), 2^(a^i))`; `a = 2` is the classical choice.
    pub growth: Ratio<u64>,
}

impl RodlColoringSpec {
    pub fn classical(n: i64, interval_colorer: BaseColorer, top_colorer: BaseColorer) -> Self {
        RodlColoringSpec { n, interval_colorer, top_colorer, growth: Ratio::from_integer(2) }
    }
}

/// A Rödl coloring together with its interval cover.
#[derive(Debug, Clone, PartialEq)]
pub struct RodlColoring {
    pub coloring: Coloring,
    pub intervals: Vec<VertexInterval>,
}

/// Smallest integer `>= 2^(a^i)`, or `None` past `i64` range.
fn rodl_boundary(a: Ratio<u64>, i: u32) -> Option<i64> {
    if a.is_integer() {
        let e = a.to_integer().checked_pow(i)?;
        return if e < 63 { Some(1i64 << e) } else { None };
    }
    let x = libm::pow(*a.numer() as f64 / *a.denom() as f64, f64::from(i));
    if x >= 62.0 {
        return None;
    }
    Some(libm::ceil(libm::exp2(x)) as i64)
}

/// The interval cover of `[2, n]`: `t` is least with `2^(a^t) >= n`, and the
/// last interval is closed at `n`.
pub fn rodl_intervals(n: i64, a: Ratio<u64>) -> Result<Vec<VertexInterval>> {
    if n < 4 {
        return Err(Error::domain(format!("Rödl coloring needs n >= 4, got {n}")));
    }
    if a <= Ratio::from_integer(1) {
        return Err(Error::domain(format!("growth must exceed 1, got {a}")));
    }
    let mut out = Vec::new();
    let mut lo = 2i64;
    for i in 1u32.. {
        let b = rodl_boundary(a, i).unwrap_or(i64::MAX);
        if b >= n {
            out.push(VertexInterval::new(lo, n)?);
            break;
        }
        if b > lo {
            out.push(VertexInterval::new(lo, b - 1)?);
            lo = b;
        }
    }
    Ok(out)
}

fn rodl(spec: &RodlColoringSpec, three: bool) -> Result<RodlColoring> {
    let intervals = rodl_intervals(spec.n, spec.growth)?;
    let t = intervals.len();
    let (q, top) = if three {
        (3, EdgeColoring::constant(VertexInterval::with_size(0, t)?, 3, GREEN)?)
    } else {
        (2, spec.top_colorer.color(0, t, u64::MAX)?.to_explicit()?)
    };
    let parts = intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| spec.interval_colorer.color(iv.lo(), iv.size(), i as u64))
        .collect::<Result<Vec<_>>>()?;
    let coloring = Coloring::BlowUp(Box::new(BlowUp::new(2, q, top, parts)?));
    Ok(RodlColoring { coloring, intervals })
}

/// Rödl's 2-coloring: intervals colored by `interval_colorer`, edges between
/// intervals `i` and `j` colored like edge `{i, j}` of the top coloring.
pub fn rodl_coloring(spec: &RodlColoringSpec) -> Result<RodlColoring> {
    rodl(spec, false)
}

/// The 3-color variant: every edge between two intervals is green.
pub fn rodl_three_color(spec: &RodlColoringSpec) -> Result<RodlColoring> {
    rodl(spec, true)
}

/// The 4-coloring of `[1, m1*m2]` built from two 2-colorings: vertex `v`
/// stands for `(x, y)` with `v - 1 = (x - 1) * m2 + (y - 1)`; pairs with
/// different `x` get `c1(x1, x2)`, pairs with equal `x` get `2 + c2(y1, y2)`.
pub fn product_coloring(c1: &EdgeColoring, c2: &EdgeColoring) -> Result<EdgeColoring> {
    if c1.q() != 2 || c2.q() != 2 {
        return Err(Error::domain("product coloring needs two 2-colorings"));
    }
    let m2 = c2.order();
    let n = c1.order() * m2;
    EdgeColoring::from_fn(VertexInterval::with_size(1, n)?, 4, |i, j| {
        let (a, b) = ((i - 1) as usize, (j - 1) as usize);
        let (x1, y1, x2, y2) = (a / m2, a % m2, b / m2, b % m2);
        if x1 != x2 {
            c1.color_at(x1, x2)
        } else {
            2 + c2.color_at(y1, y2)
        }
    })
}

/// Triple `a1 < a2 < a3` of `[1, n]` is red iff `a3 - a2 >= a2 - a1`.
pub fn monotone_diff_triple_coloring(n: i64) -> Result<TripleColoring> {
    if n < 3 {
        return Err(Error::domain(format!("need n >= 3, got {n}")));
    }
    TripleColoring::from_fn(VertexInterval::new(1, n)?, 2, |a, b, c| if c - b >= b - a { RED } else { BLUE })
}

/// Colors of triples inside one block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerTripleColorer {
    Random,
    Constant(Color),
    MonotoneDiff,
}

/// Consecutive blocks `R_1, R_2, ...` of `[1, Σ sizes]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub block_sizes: Vec<usize>,
    pub inner_colorer: InnerTripleColorer,
    pub seed: u64,
}

impl BlockSpec {
    fn validate(&self) -> Result<()> {
        let s = &self.block_sizes;
        if s.len() < 2 {
            return Err(Error::domain("need at least two blocks"));
        }
        if s[0] == 0 || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!("block sizes {s:?} must be positive and strictly increasing")));
        }
        if let InnerTripleColorer::Constant(c) = self.inner_colorer {
            if c > BLUE {
                return Err(Error::domain("inner color must be red or blue"));
            }
        }
        Ok(())
    }

    /// Block index of every vertex, position by position.
    pub fn block_of(&self) -> Vec<usize> {
        self.block_sizes.iter().enumerate().flat_map(|(b, &s)| core::iter::repeat_n(b, s)).collect()
    }
}

/// Two vertices in a lower block and one in a higher block: red; one in a
/// lower block and two in a higher: blue. Triples inside a block follow the
/// inner colorer and triples meeting three blocks are seeded coin flips.
pub fn block_triple_coloring(spec: &BlockSpec) -> Result<TripleColoring> {
    spec.validate()?;
    let block = spec.block_of();
    let base = Rng::new(spec.seed);
    let mut inner_rng = base.fork(0);
    let mut cross_rng = base.fork(1);
    TripleColoring::from_fn(VertexInterval::with_size(1, block.len())?, 2, |a, b, c| {
        let (ba, bb, bc) = (block[(a - 1) as usize], block[(b - 1) as usize], block[(c - 1) as usize]);
        if ba == bb && bb == bc {
            match spec.inner_colorer {
                InnerTripleColorer::Random => inner_rng.below(2) as Color,
                InnerTripleColorer::Constant(col) => col,
                InnerTripleColorer::MonotoneDiff => {
                    if c - b >= b - a {
                        RED
                    } else {
                        BLUE
                    }
                }
            }
        } else if ba == bb {
            RED
        } else if bb == bc {
            BLUE
        } else {
            cross_rng.below(2) as Color
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::{enumerate_mono_sets, max_mono_clique, SearchBudget};
    use crate::coloring::MonoColor;
    use crate::rng::Rng;
    use proptest::prelude::{prop_assert_eq, prop_assume, proptest};

    fn f(i: i64, j: i64) -> u32 {
        floor_log2((j - i) as u64)
    }

    #[test]
    fn parity_log_values() {
        let c = parity_log_coloring(4).unwrap();
        assert_eq!(c.color(1, 2).unwrap(), 0);
        assert_eq!(c.color(1, 3).unwrap(), 1);
        assert!(c.color(1, 5).is_err());
        assert_eq!(parity_log_coloring(16).unwrap().color(2, 10).unwrap(), 1);
        assert_eq!(parity_log_coloring(16).unwrap().is_monochromatic(&[1, 2, 3]).unwrap(), None);
        assert!(parity_log_coloring(1).is_err());
        assert_eq!(second_diff_coloring(16).unwrap(), parity_log_coloring(16).unwrap());
    }

    #[test]
    fn floor_log_sandwich() {
        for i in 1..=128 {
            for j in i + 1..=128 {
                for h in j + 1..=128 {
                    let m = f(i, j).max(f(j, h));
                    assert!(m <= f(i, h) && f(i, h) <= m + 1);
                }
            }
        }
    }

    #[test]
    fn pentagon_and_its_square_have_no_mono_triangle() {
        let p = pentagon();
        for color in [RED, BLUE] {
            let r = max_mono_clique(&p, color, &SearchBudget::unlimited()).unwrap();
            assert_eq!(r.clique.order(), 2);
        }
        let sq = product_coloring(&p, &p).unwrap();
        assert_eq!(sq.order(), 25);
        let mut triples = 0;
        for a in 1..=25 {
            for b in a + 1..=25 {
                for c in b + 1..=25 {
                    triples += 1;
                    assert_eq!(sq.is_monochromatic(&[a, b, c]).unwrap(), None);
                }
            }
        }
        assert_eq!(triples, 2300);
    }

    #[test]
    fn product_with_trivial_factor() {
        let c1 = parity_log_coloring(6).unwrap();
        let one = EdgeColoring::constant(VertexInterval::new(1, 1).unwrap(), 2, RED).unwrap();
        let p = product_coloring(&c1, &one).unwrap();
        assert_eq!(p.colors(), c1.colors());

        let red2 = EdgeColoring::constant(VertexInterval::new(1, 2).unwrap(), 2, RED).unwrap();
        let p = product_coloring(&red2, &red2).unwrap();
        let r = max_mono_clique(&p, 0, &SearchBudget::unlimited()).unwrap();
        let ys: Vec<i64> = r.clique.vertices.iter().map(|v| (v - 1) % 2).collect();
        assert_eq!(r.clique.order(), 2);
        assert_ne!(r.clique.vertices[0], r.clique.vertices[1]);
        assert!(ys.len() == 2);
        assert!(product_coloring(&red2.clone().with_q(3).unwrap(), &red2).is_err());
    }

    #[test]
    fn product_clique_order_is_max_of_factors() {
        let mut rng = Rng::new(5);
        for m1 in 1..=5 {
            for m2 in 1..=5 {
                let mut gen = |m: usize| {
                    EdgeColoring::from_fn(VertexInterval::with_size(1, m).unwrap(), 2, |_, _| rng.below(2) as u8)
                        .unwrap()
                };
                let (c1, c2) = (gen(m1), gen(m2));
                let best = |c: &EdgeColoring| {
                    (0..c.q() as u8)
                        .map(|col| max_mono_clique(c, col, &SearchBudget::unlimited()).unwrap().clique.order())
                        .max()
                        .unwrap()
                };
                let p = product_coloring(&c1, &c2).unwrap();
                assert_eq!(best(&p), best(&c1).max(best(&c2)));
            }
        }
    }

    #[test]
    fn rodl_intervals_follow_the_doubling_rule() {
        let two = Ratio::from_integer(2);
        let iv = rodl_intervals(65536, two).unwrap();
        let bounds: Vec<(i64, i64)> = iv.iter().map(|i| (i.lo(), i.hi())).collect();
        assert_eq!(bounds, vec![(2, 3), (4, 15), (16, 255), (256, 65536)]);
        assert_eq!(rodl_intervals(16, two).unwrap().len(), 2);
        assert_eq!(rodl_intervals(4, two).unwrap().len(), 1);
        assert!(rodl_intervals(16, Ratio::from_integer(1)).is_err());
        let fine = rodl_intervals(65536, Ratio::new(3, 2)).unwrap();
        assert!(fine.len() > 4);
        assert_eq!(fine.last().unwrap().hi(), 65536);
    }

    #[test]
    fn rodl_cliques_across_intervals_follow_top() {
        let spec = RodlColoringSpec::classical(256, BaseColorer::Random { seed: 3 }, BaseColorer::Paley);
        let rc = rodl_coloring(&spec).unwrap();
        let flat = rc.coloring.to_explicit().unwrap();
        let Coloring::BlowUp(bu) = &rc.coloring else { panic!() };
        let which = |v: i64| rc.intervals.iter().position(|i| i.contains(v)).unwrap();
        let mut rng = Rng::new(1);
        for _ in 0..2000 {
            let size = 2 + rng.below(4);
            let mut s: Vec<i64> = (0..size).map(|_| rng.range_i64(2, 256)).collect();
            s.sort_unstable();
            s.dedup();
            if let Some(MonoColor::Color(c)) = flat.is_monochromatic(&s).unwrap() {
                let mut ids: Vec<usize> = s.iter().map(|&v| which(v)).collect();
                ids.dedup();
                for x in 0..ids.len() {
                    for y in x + 1..ids.len() {
                        assert_eq!(bu.top().color_at(ids[x], ids[y]), c);
                    }
                }
            }
        }
        let three = rodl_three_color(&spec).unwrap();
        for (a, b) in [(2, 4), (3, 200), (15, 255)] {
            assert_eq!(three.coloring.color(a, b).unwrap(), GREEN);
        }
        assert_ne!(three.coloring.color(16, 17).unwrap(), GREEN);
    }

    #[test]
    fn paley_blow_up_layout() {
        let c = BaseColorer::PaleyBlowUp { leaf: 10 }.color(100, 35, 0).unwrap();
        assert_eq!(c.order(), 35);
        let Coloring::BlowUp(bu) = &c else { panic!() };
        let sizes: Vec<usize> = bu.parts().iter().map(|p| p.order()).collect();
        assert_eq!(sizes, vec![9, 9, 9, 8]);
        assert_eq!(paley_prime(101), 101);
        assert_eq!(paley_prime(102), 109);
    }

    #[test]
    fn monotone_diff_examples() {
        let tc = monotone_diff_triple_coloring(8).unwrap();
        assert_eq!(tc.color(1, 2, 4).unwrap(), RED);
        assert_eq!(tc.color(1, 3, 4).unwrap(), BLUE);
        assert_eq!(tc.is_monochromatic(&[1, 2, 4, 8]).unwrap(), Some(MonoColor::Color(RED)));
    }

    #[test]
    fn consecutive_triples_agree_iff_monotone() {
        let n = 40;
        let tc = monotone_diff_triple_coloring(n).unwrap();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let same = tc.color(a, b, c).unwrap() == tc.color(b, c, d).unwrap();
                        let (x, y, z) = (b - a, c - b, d - c);
                        let monotone = (x <= y && y <= z) || (x > y && y > z);
                        assert_eq!(same, monotone, "{a} {b} {c} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn block_rule_examples() {
        let spec = BlockSpec { block_sizes: vec![4, 8], inner_colorer: InnerTripleColorer::Random, seed: 1 };
        let tc = block_triple_coloring(&spec).unwrap();
        assert_eq!(tc.color(1, 2, 5).unwrap(), RED);
        assert_eq!(tc.color(1, 5, 6).unwrap(), BLUE);
        assert!(block_triple_coloring(&BlockSpec { block_sizes: vec![4], ..spec.clone() }).is_err());
        assert!(block_triple_coloring(&BlockSpec { block_sizes: vec![4, 4], ..spec.clone() }).is_err());

        let three = BlockSpec { block_sizes: vec![2, 3, 4], inner_colorer: InnerTripleColorer::Random, seed: 9 };
        assert_eq!(block_triple_coloring(&three).unwrap(), block_triple_coloring(&three).unwrap());
    }

    #[test]
    fn block_cliques_have_no_two_two_split() {
        for seed in 0..4 {
            let spec = BlockSpec { block_sizes: vec![3, 5, 7], inner_colorer: InnerTripleColorer::Random, seed };
            let tc = block_triple_coloring(&spec).unwrap();
            let block = spec.block_of();
            for (set, _) in enumerate_mono_sets(&tc, 6).unwrap() {
                let mut per = [0usize; 3];
                for v in &set {
                    per[block[(*v - 1) as usize]] += 1;
                }
                assert!(per.iter().filter(|&&k| k >= 2).count() <= 1, "{set:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn parity_log_is_symmetric(n in 2i64..60, i in 1i64..60, j in 1i64..60) {
            prop_assume!(i <= n && j <= n && i != j);
            let c = parity_log_coloring(n).unwrap();
            prop_assert_eq!(c.color(i, j).unwrap(), c.color(j, i).unwrap());
            prop_assert_eq!(u32::from(c.color(i, j).unwrap()), f(i.min(j), i.max(j)) % 2);
        }
    }
}
