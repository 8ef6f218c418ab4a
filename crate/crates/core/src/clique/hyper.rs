//! Monochromatic sets of a 3-uniform coloring.

use alloc::vec::Vec;

use crate::coloring::{Color, TripleColoring};
use crate::error::{Error, Result};

/// Depth-first stream of every monochromatic set of size `3..=max_size`,
/// in lexicographic order of positions.
pub struct MonoSets<'a> {
    tc: &'a TripleColoring,
    max_size: usize,
    stack: Vec<usize>,
    color: Option<Color>,
    next: usize,
}

impl MonoSets<'_> {
    fn fits(&self, v: usize) -> bool {
        let Some(c) = self.color else { return true };
        let s = &self.stack;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| self.tc.color_at(s[i], s[j], v) == c))
    }
}

impl Iterator for MonoSets<'_> {
    type Item = (Vec<i64>, Color);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.tc.order();
        loop {
            if self.stack.len() < self.max_size {
                if let Some(v) = (self.next..n).find(|&v| self.fits(v)) {
                    if self.stack.len() == 2 {
                        self.color = Some(self.tc.color_at(self.stack[0], self.stack[1], v));
                    }
                    self.stack.push(v);
                    self.next = v + 1;
                    if self.stack.len() >= 3 {
                        let labels = self.stack.iter().map(|&p| self.tc.vertices().label(p)).collect();
                        return Some((labels, self.color.expect("set color")));
                    }
                    continue;
                }
            }
            let u = self.stack.pop()?;
            if self.stack.len() < 3 {
                self.color = None;
            }
            self.next = u + 1;
        }
    }
}

pub fn enumerate_mono_sets(tc: &TripleColoring, max_size: usize) -> Result<MonoSets<'_>> {
    if max_size < 3 {
        return Err(Error::domain("monochromatic sets need max_size >= 3"));
    }
    Ok(MonoSets { tc, max_size, stack: Vec::new(), color: None, next: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::VertexInterval;
    use crate::rng::Rng;
    use crate::coloring::MonoColor;

    #[test]
    fn constant_coloring_emits_every_set() {
        let tc = TripleColoring::from_fn(VertexInterval::new(1, 5).unwrap(), 2, |_, _, _| 0).unwrap();
        assert_eq!(enumerate_mono_sets(&tc, 5).unwrap().count(), 10 + 5 + 1);
        assert!(enumerate_mono_sets(&tc, 2).is_err());
    }

    #[test]
    fn agrees_with_subset_filter() {
        for seed in 0..10 {
            let mut rng = Rng::new(seed);
            let tc = TripleColoring::from_fn(VertexInterval::new(0, 9).unwrap(), 2, |_, _, _| {
                (rng.unit() < 0.3) as u8
            })
            .unwrap();
            let got: Vec<_> = enumerate_mono_sets(&tc, 5).unwrap().collect();
            let mut want = Vec::new();
            for mask in 0u32..1 << 10 {
                let s: Vec<i64> = (0..10).filter(|i| mask >> i & 1 == 1).collect();
                if (3..=5).contains(&s.len()) {
                    if let Some(MonoColor::Color(c)) = tc.is_monochromatic(&s).unwrap() {
                        want.push((s, c));
                    }
                }
            }
            let mut got_sorted = got.clone();
            got_sorted.sort();
            want.sort();
            assert_eq!(got_sorted, want);
        }
    }
}
