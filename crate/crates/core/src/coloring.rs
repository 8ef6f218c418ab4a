//! Edge and triple colorings of complete (hyper)graphs on a vertex interval.
//!
//! Colors are stored row-major in lexicographic order of the sorted pair
//! `(i, j)` (resp. triple `(i, j, k)`), which is also the order of the
//! `colors` array in the canonical file format.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::interval::VertexInterval;

pub type Color = u8;

pub const RED: Color = 0;
pub const BLUE: Color = 1;
pub const GREEN: Color = 2;

/// Largest vertex count an explicit [`EdgeColoring`] may have.
pub const MAX_EXPLICIT_VERTICES: usize = 1 << 14;

/// Result of a monochromaticity test on a set that has at least one pair or
/// none at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoColor {
    /// Fewer than two vertices (or three, for triples): every color fits.
    Any,
    Color(Color),
}

impl MonoColor {
    pub fn admits(self, c: Color) -> bool {
        match self {
            MonoColor::Any => true,
            MonoColor::Color(x) => x == c,
        }
    }
}

/// Position of the pair `a < b` (zero-based) among the `n(n-1)/2` pairs.
#[inline]
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn choose3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Position of the triple `a < b < c` (zero-based) in lexicographic order.
#[inline]
pub fn triple_index(n: usize, a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c && c < n);
    choose3(n) - choose3(n - a) + choose2(n - a - 1) - choose2(n - b) + (c - b - 1)
}

fn check_colors(q: u32, colors: &[Color]) -> Result<()> {
    if q == 0 || q > 256 {
        return Err(Error::domain(format!("number of colors must be in 1..=256, got {q}")));
    }
    if let Some((pos, c)) = colors.iter().enumerate().find(|(_, &c)| u32::from(c) >= q) {
        return Err(Error::domain(format!("entry {pos} has color {c} but q = {q}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    vertices: VertexInterval,
    q: u32,
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(vertices: VertexInterval, q: u32, colors: Vec<Color>) -> Result<Self> {
        let n = vertices.size();
        if colors.len() != choose2(n) {
            return Err(Error::domain(format!(
                "expected {} edge colors for {} vertices, got {}",
                choose2(n),
                n,
                colors.len()
            )));
        }
        check_colors(q, &colors)?;
        Ok(EdgeColoring { vertices, q, colors })
    }

    /// Builds a coloring from a rule on vertex labels `f(i, j)` with `i < j`.
    pub fn from_fn(
        vertices: VertexInterval,
        q: u32,
        mut f: impl FnMut(i64, i64) -> Color,
    ) -> Result<Self> {
        let n = vertices.size();
        if n > MAX_EXPLICIT_VERTICES {
            return Err(Error::domain(format!(
                "{n} vertices is too many for an explicit coloring (limit {MAX_EXPLICIT_VERTICES})"
            )));
        }
        let mut colors = Vec::with_capacity(choose2(n));
        for a in 0..n {
            for b in a + 1..n {
                colors.push(f(vertices.label(a), vertices.label(b)));
            }
        }
        check_colors(q, &colors)?;
        Ok(EdgeColoring { vertices, q, colors })
    }

    pub fn constant(vertices: VertexInterval, q: u32, color: Color) -> Result<Self> {
        Self::new(vertices, q, vec![color; choose2(vertices.size())])
    }

    pub fn vertices(&self) -> VertexInterval {
        self.vertices
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.vertices.size()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of the pair given by zero-based positions (`a != b`).
    #[inline]
    pub fn color_at(&self, a: usize, b: usize) -> Color {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.colors[pair_index(self.order(), a, b)]
    }

    /// Color of the edge `{i, j}`; symmetric in its arguments.
    pub fn color(&self, i: i64, j: i64) -> Result<Color> {
        if i == j {
            return Err(Error::domain(format!("loop at vertex {i} has no color")));
        }
        let a = self.vertices.index_of(i)?;
        let b = self.vertices.index_of(j)?;
        Ok(self.color_at(a, b))
    }

    /// Common color of all pairs of `vertices`, `Some(Any)` for sets with
    /// fewer than two elements, `None` if two pairs disagree.
    pub fn is_monochromatic(&self, vertices: &[i64]) -> Result<Option<MonoColor>> {
        let idx = self.positions(vertices)?;
        let mut seen: Option<Color> = None;
        for (x, &a) in idx.iter().enumerate() {
            for &b in &idx[x + 1..] {
                let c = self.color_at(a, b);
                match seen {
                    None => seen = Some(c),
                    Some(s) if s != c => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(Some(seen.map_or(MonoColor::Any, MonoColor::Color)))
    }

    fn positions(&self, vertices: &[i64]) -> Result<Vec<usize>> {
        let idx = vertices
            .iter()
            .map(|&v| self.vertices.index_of(v))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("repeated vertex"));
        }
        Ok(idx)
    }

    /// Adjacency rows (by position) of the graph formed by edges of `color`.
    pub fn adjacency(&self, color: Color) -> Vec<Bitset> {
        let n = self.order();
        let mut rows = vec![Bitset::new(n); n];
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.colors[k] == color {
                    rows[a].insert(b);
                    rows[b].insert(a);
                }
                k += 1;
            }
        }
        rows
    }

    /// The same coloring read on a sub-interval.
    pub fn restrict(&self, sub: VertexInterval) -> Result<Self> {
        if !self.vertices.contains_interval(&sub) {
            return Err(Error::domain(format!("{sub} is not inside {}", self.vertices)));
        }
        let off = (sub.lo() - self.vertices.lo()) as usize;
        let n = sub.size();
        let mut colors = Vec::with_capacity(choose2(n));
        for a in 0..n {
            for b in a + 1..n {
                colors.push(self.color_at(a + off, b + off));
            }
        }
        Ok(EdgeColoring { vertices: sub, q: self.q, colors })
    }

    /// Same colors on a shifted vertex interval of equal size.
    pub fn relabel(&self, lo: i64) -> Self {
        let vertices = VertexInterval::with_size(lo, self.order()).expect("nonempty");
        EdgeColoring { vertices, q: self.q, colors: self.colors.clone() }
    }

    /// Same colors viewed as a coloring with `q` colors (`q` must not shrink
    /// below a used color).
    pub fn with_q(mut self, q: u32) -> Result<Self> {
        check_colors(q, &self.colors)?;
        self.q = q;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleColoring {
    vertices: VertexInterval,
    q: u32,
    colors: Vec<Color>,
}

impl TripleColoring {
    pub fn new(vertices: VertexInterval, q: u32, colors: Vec<Color>) -> Result<Self> {
        let n = vertices.size();
        if colors.len() != choose3(n) {
            return Err(Error::domain(format!(
                "expected {} triple colors for {} vertices, got {}",
                choose3(n),
                n,
                colors.len()
            )));
        }
        check_colors(q, &colors)?;
        Ok(TripleColoring { vertices, q, colors })
    }

    /// Builds a coloring from a rule `f(i, j, k)` on labels with `i < j < k`.
    pub fn from_fn(
        vertices: VertexInterval,
        q: u32,
        mut f: impl FnMut(i64, i64, i64) -> Color,
    ) -> Result<Self> {
        let n = vertices.size();
        if n > 2048 {
            return Err(Error::domain(format!("{n} vertices is too many for a triple coloring")));
        }
        let mut colors = Vec::with_capacity(choose3(n));
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    colors.push(f(vertices.label(a), vertices.label(b), vertices.label(c)));
                }
            }
        }
        check_colors(q, &colors)?;
        Ok(TripleColoring { vertices, q, colors })
    }

    pub fn vertices(&self) -> VertexInterval {
        self.vertices
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.vertices.size()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of the triple at sorted zero-based positions `a < b < c`.
    #[inline]
    pub fn color_at(&self, a: usize, b: usize, c: usize) -> Color {
        self.colors[triple_index(self.order(), a, b, c)]
    }

    pub fn color(&self, i: i64, j: i64, k: i64) -> Result<Color> {
        let mut idx = [
            self.vertices.index_of(i)?,
            self.vertices.index_of(j)?,
            self.vertices.index_of(k)?,
        ];
        idx.sort_unstable();
        if idx[0] == idx[1] || idx[1] == idx[2] {
            return Err(Error::domain("triple with repeated vertex"));
        }
        Ok(self.color_at(idx[0], idx[1], idx[2]))
    }

    /// Common color of all triples inside `vertices`, `Some(Any)` for sets
    /// with fewer than three elements.
    pub fn is_monochromatic(&self, vertices: &[i64]) -> Result<Option<MonoColor>> {
        let mut idx = vertices
            .iter()
            .map(|&v| self.vertices.index_of(v))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("repeated vertex"));
        }
        let mut seen: Option<Color> = None;
        for x in 0..idx.len() {
            for y in x + 1..idx.len() {
                for z in y + 1..idx.len() {
                    let c = self.color_at(idx[x], idx[y], idx[z]);
                    match seen {
                        None => seen = Some(c),
                        Some(s) if s != c => return Ok(None),
                        _ => {}
                    }
                }
            }
        }
        Ok(Some(seen.map_or(MonoColor::Any, MonoColor::Color)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> VertexInterval {
        VertexInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 7;
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(pair_index(n, a, b), k);
                k += 1;
            }
        }
    }

    #[test]
    fn triple_index_is_lexicographic() {
        let n = 9;
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    assert_eq!(triple_index(n, a, b, c), k);
                    k += 1;
                }
            }
        }
        assert_eq!(k, choose3(n));
    }

    #[test]
    fn single_red_edge() {
        let c = EdgeColoring::new(iv(1, 2), 2, vec![RED]).unwrap();
        assert_eq!(c.color(1, 2).unwrap(), RED);
        assert_eq!(c.color(2, 1).unwrap(), RED);
    }

    #[test]
    fn edge_color_errors() {
        let c = EdgeColoring::constant(iv(1, 4), 2, RED).unwrap();
        assert!(c.color(2, 2).is_err());
        assert!(c.color(0, 2).is_err());
        assert!(c.color(1, 5).is_err());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(EdgeColoring::new(iv(1, 3), 2, vec![0, 1]).is_err());
        assert!(EdgeColoring::new(iv(1, 3), 2, vec![0, 1, 2]).is_err());
        assert!(TripleColoring::new(iv(1, 4), 2, vec![0; 3]).is_err());
    }

    #[test]
    fn monochromatic_cases() {
        let all_red = EdgeColoring::constant(iv(1, 5), 2, RED).unwrap();
        assert_eq!(all_red.is_monochromatic(&[1, 3, 5]).unwrap(), Some(MonoColor::Color(RED)));
        assert_eq!(all_red.is_monochromatic(&[4]).unwrap(), Some(MonoColor::Any));
        assert_eq!(all_red.is_monochromatic(&[]).unwrap(), Some(MonoColor::Any));
        assert!(all_red.is_monochromatic(&[1, 6]).is_err());

        let mixed = EdgeColoring::from_fn(iv(1, 3), 2, |i, j| {
            if (i, j) == (1, 3) {
                BLUE
            } else {
                RED
            }
        })
        .unwrap();
        assert_eq!(mixed.is_monochromatic(&[1, 2, 3]).unwrap(), None);
    }

    #[test]
    fn restrict_keeps_colors() {
        let c = EdgeColoring::from_fn(iv(1, 8), 3, |i, j| ((i * 7 + j) % 3) as Color).unwrap();
        let r = c.restrict(iv(3, 6)).unwrap();
        for i in 3..=6 {
            for j in i + 1..=6 {
                assert_eq!(r.color(i, j).unwrap(), c.color(i, j).unwrap());
            }
        }
    }

    #[test]
    fn triple_color_order_insensitive() {
        let t = TripleColoring::from_fn(iv(1, 6), 2, |a, b, c| ((a + b * c) % 2) as Color).unwrap();
        assert_eq!(t.color(5, 2, 3).unwrap(), t.color(2, 3, 5).unwrap());
        assert!(t.color(2, 2, 3).is_err());
    }
}
