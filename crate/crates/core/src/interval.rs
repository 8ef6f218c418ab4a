use core::fmt;

use crate::error::{Error, Result};

/// A contiguous, inclusive range of integer vertex labels `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexInterval {
    lo: i64,
    hi: i64,
}

impl VertexInterval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(alloc::format!("empty interval [{lo}, {hi}]")));
        }
        Ok(VertexInterval { lo, hi })
    }

    /// `[lo, lo + size - 1]`; `size` must be positive.
    pub fn with_size(lo: i64, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::domain("interval of size 0"));
        }
        Self::new(lo, lo + size as i64 - 1)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn size(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &VertexInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Zero-based position of `v`, or a domain error when `v` is outside.
    pub fn index_of(&self, v: i64) -> Result<usize> {
        if self.contains(v) {
            Ok((v - self.lo) as usize)
        } else {
            Err(Error::domain(alloc::format!("vertex {v} outside {self}")))
        }
    }

    pub fn label(&self, index: usize) -> i64 {
        self.lo + index as i64
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for VertexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reversed_bounds() {
        assert!(VertexInterval::new(3, 2).is_err());
        assert_eq!(VertexInterval::new(2, 2).unwrap().size(), 1);
    }

    #[test]
    fn index_round_trip() {
        let i = VertexInterval::new(-3, 4).unwrap();
        for v in i.iter() {
            assert_eq!(i.label(i.index_of(v).unwrap()), v);
        }
        assert!(i.index_of(5).is_err());
    }
}
