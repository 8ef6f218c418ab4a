//! Separated pairs and the two density-preserving interval procedures.

use alloc::format;
use alloc::vec::Vec;

use crate::density::density;
use crate::error::{Error, Result};
use crate::interval::VertexInterval;

/// `(T1, T2)` with containers `I1 ⊇ T1`, `I2 ⊇ T2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedPair {
    pub t1: Vec<i64>,
    pub i1: VertexInterval,
    pub t2: Vec<i64>,
    pub i2: VertexInterval,
}

fn bounds(t: &[i64]) -> Result<(i64, i64)> {
    let lo = t.iter().copied().min().ok_or_else(|| Error::domain("empty set"))?;
    let hi = t.iter().copied().max().expect("nonempty");
    Ok((lo, hi))
}

/// `min T2 - max T1` exceeds the diameter of both sets.
pub fn is_separated(t1: &[i64], t2: &[i64]) -> Result<bool> {
    let (a1, b1) = bounds(t1)?;
    let (a2, b2) = bounds(t2)?;
    if b1 >= a2 {
        return Err(Error::domain(format!("sets interleave: max T1 = {b1}, min T2 = {a2}")));
    }
    let gap = a2 - b1;
    Ok(gap > b1 - a1 && gap > b2 - a2)
}

fn check_sorted_inside(s: &[i64], i: &VertexInterval) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("vertex set must be strictly increasing"));
    }
    if let Some(v) = s.iter().find(|v| !i.contains(**v)) {
        return Err(Error::domain(format!("vertex {v} lies outside {i}")));
    }
    Ok(())
}

/// `|S ∩ [lo, hi]|` for sorted `S`.
fn count_in(s: &[i64], lo: i64, hi: i64) -> usize {
    s.partition_point(|&v| v <= hi) - s.partition_point(|&v| v < lo)
}

/// Splits `len` into three near-equal parts, sizes `(first, middle, last)`.
fn thirds(len: usize) -> (usize, usize, usize) {
    let (base, rem) = (len / 3, len % 3);
    (base + usize::from(rem == 2), base + usize::from(rem >= 1), base)
}

/// Trims sparse ends of `S` (density at most half of `d_I(S)`), splits the
/// hull of what remains into thirds and keeps the outer two. Every
/// guarantee (separation, `d_{I_j}(T_j) >= d_I(S)/2`, `12 |I_j| >= |S|`) is
/// re-checked exactly before returning.
pub fn find_separated_pair(s: &[i64], i: VertexInterval) -> Result<SeparatedPair> {
    check_sorted_inside(s, &i)?;
    if s.len() < 6 {
        return Err(Error::domain(format!("need |S| >= 6, got {}", s.len())));
    }
    let (a, b) = (i.lo(), i.hi());
    let (ns, ni) = (s.len() as u128, i.size() as u128);
    // S ∩ [x, y] has density <= d_I(S)/2 iff 2 |I| cnt <= |S| len.
    let sparse = |cnt: usize, len: i64| 2 * ni * cnt as u128 <= ns * len as u128;
    let i1 = (a..=b).rev().find(|&x| sparse(count_in(s, a, x), x - a + 1)).unwrap_or(a - 1);
    let i2 = (i1 + 1..=b).find(|&x| sparse(count_in(s, x, b), b - x + 1)).unwrap_or(b + 1);
    let core: Vec<i64> = s.iter().copied().filter(|&v| i1 < v && v < i2).collect();
    let (lo, hi) = bounds(&core).map_err(|_| Error::domain("trimming removed every vertex"))?;
    let (f, _, l) = thirds((hi - lo + 1) as usize);
    if f == 0 || l == 0 {
        return Err(Error::domain("surviving hull is too short to split"));
    }
    let i1v = VertexInterval::with_size(lo, f)?;
    let i2v = VertexInterval::new(hi - l as i64 + 1, hi)?;
    let pick = |iv: &VertexInterval| s.iter().copied().filter(|v| iv.contains(*v)).collect::<Vec<_>>();
    let pair = SeparatedPair { t1: pick(&i1v), i1: i1v, t2: pick(&i2v), i2: i2v };
    check_guarantees(s, &i, &pair)?;
    Ok(pair)
}

/// The four guarantees of a separated pair found inside `(S, I)`.
pub fn check_guarantees(s: &[i64], i: &VertexInterval, pair: &SeparatedPair) -> Result<()> {
    let d = density(s, i)?;
    let half = d / 2;
    if pair.t1.is_empty() || pair.t2.is_empty() || !is_separated(&pair.t1, &pair.t2)? {
        return Err(Error::domain("pair is not separated"));
    }
    for (t, iv) in [(&pair.t1, &pair.i1), (&pair.t2, &pair.i2)] {
        if density(t, iv)? < half {
            return Err(Error::domain(format!("density of {t:?} in {iv} is below d_I(S)/2")));
        }
        if 12 * iv.size() < s.len() {
            return Err(Error::domain(format!("{iv} is shorter than |S|/12")));
        }
        if t.iter().any(|v| s.binary_search(v).is_err()) {
            return Err(Error::domain("T is not a subset of S"));
        }
    }
    Ok(())
}

/// Covers `J` by `ceil(|J|/r)` windows of size `r` (the last one flush with
/// the right end) and returns the first window in which `S` has density at
/// least `d_J(S)/2`, with the part of `S` inside it.
pub fn shrink(s: &[i64], j: VertexInterval, r: usize) -> Result<(Vec<i64>, VertexInterval)> {
    check_sorted_inside(s, &j)?;
    if r == 0 || r > j.size() {
        return Err(Error::domain(format!("window size {r} must lie in 1..={}", j.size())));
    }
    let windows = j.size().div_ceil(r);
    let (ns, nj) = (s.len() as u128, j.size() as u128);
    for w in 0..windows {
        let start = if w + 1 == windows { j.hi() - r as i64 + 1 } else { j.lo() + (w * r) as i64 };
        let iv = VertexInterval::with_size(start, r)?;
        let cnt = count_in(s, iv.lo(), iv.hi());
        if 2 * nj * cnt as u128 >= ns * r as u128 {
            let sub = s.iter().copied().filter(|v| iv.contains(*v)).collect();
            return Ok((sub, iv));
        }
    }
    Err(Error::domain("no window reaches half the density"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::rng::Rng;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn iv(a: i64, b: i64) -> VertexInterval {
        VertexInterval::new(a, b).unwrap()
    }

    #[test]
    fn separation_examples() {
        assert!(is_separated(&[1, 2], &[10, 11]).unwrap());
        assert!(!is_separated(&[1, 5], &[8, 9]).unwrap());
        assert!(is_separated(&[3], &[4]).unwrap());
        assert!(is_separated(&[], &[4]).is_err());
        assert!(is_separated(&[1, 5], &[4, 9]).is_err());
    }

    #[test]
    fn full_block_trace() {
        let s: Vec<i64> = (0..12).collect();
        let p = find_separated_pair(&s, iv(0, 11)).unwrap();
        assert_eq!((p.i1, p.i2), (iv(0, 3), iv(8, 11)));
        assert_eq!(p.t1, vec![0, 1, 2, 3]);
        assert_eq!(p.t2, vec![8, 9, 10, 11]);
        assert!(find_separated_pair(&s[..5], iv(0, 11)).is_err());
    }

    #[test]
    fn thirds_are_balanced() {
        for len in 3..50 {
            let (a, b, c) = thirds(len);
            assert_eq!(a + b + c, len);
            assert!(a.max(b).max(c) - a.min(b).min(c) <= 1);
        }
    }

    #[test]
    fn shrink_examples() {
        let s: Vec<i64> = (0..10).collect();
        assert_eq!(shrink(&s, iv(0, 9), 5).unwrap().1, iv(0, 4));
        let (sub, w) = shrink(&[0, 9], iv(0, 9), 5).unwrap();
        assert_eq!((sub, w), (vec![0], iv(0, 4)));
        assert_eq!(shrink(&[2, 3], iv(0, 9), 10).unwrap(), (vec![2, 3], iv(0, 9)));
        assert!(shrink(&[2, 3], iv(0, 9), 11).is_err());
        // Last window is right-aligned: J = [0, 9], r = 4 gives [0,3], [4,7], [6,9].
        assert_eq!(shrink(&[9], iv(0, 9), 4).unwrap().1, iv(6, 9));
    }

    fn random_instance(rng: &mut Rng) -> (Vec<i64>, VertexInterval) {
        let size = 6 + rng.below(195);
        let lo = rng.range_i64(-50, 50);
        let len = size + rng.below(4 * size);
        let i = VertexInterval::with_size(lo, len).unwrap();
        let mut idx: Vec<usize> = (0..len).collect();
        rng.shuffle(&mut idx);
        let mut s: Vec<i64> = idx[..size].iter().map(|&p| i.label(p)).collect();
        s.sort_unstable();
        (s, i)
    }

    #[test]
    fn random_instances_meet_all_guarantees() {
        let mut rng = Rng::new(42);
        for _ in 0..300 {
            let (s, i) = random_instance(&mut rng);
            let p = find_separated_pair(&s, i).unwrap();
            check_guarantees(&s, &i, &p).unwrap();
            let r = 1 + rng.below(i.size());
            let (sub, w) = shrink(&s, i, r).unwrap();
            assert_eq!(w.size(), r);
            assert!(density(&sub, &w).unwrap() * 2 >= density(&s, &i).unwrap());
            assert!(Ratio::new(sub.len() as u64, 1) >= Ratio::new(0, 1));
        }
    }

    proptest! {
        #[test]
        fn shrink_keeps_half_density(mask in proptest::collection::vec(any::<bool>(), 1..80), r_frac in 0.0f64..1.0) {
            let j = VertexInterval::with_size(0, mask.len()).unwrap();
            let s: Vec<i64> = mask.iter().enumerate().filter(|(_, b)| **b).map(|(p, _)| p as i64).collect();
            let r = 1 + ((mask.len() - 1) as f64 * r_frac) as usize;
            let (sub, w) = shrink(&s, j, r).unwrap();
            prop_assert!(density(&sub, &w).unwrap() * 2 >= density(&s, &j).unwrap());
        }
    }
}
