//! Colorings too large to store pair by pair.
//!
//! A [`BlowUp`] replaces every vertex of a `top` coloring by a part; pairs
//! inside a part take the part's color, pairs across parts take the top
//! color of the two parts. A monochromatic clique of color `c` is then a
//! `c`-clique of parts in `top` together with a `c`-clique inside each
//! chosen part, so the heaviest one is found exactly by solving every part
//! first and then running a weighted search on `top`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::Bitset;
use crate::clique::{
    compensated_sum, max_clique_in, max_weight_clique_in, Clique, CliqueSearch, SearchBudget,
};
use crate::coloring::{Color, EdgeColoring, MonoColor, MAX_EXPLICIT_VERTICES};
use crate::error::{Error, Result};
use crate::interval::VertexInterval;

#[derive(Debug, Clone, PartialEq)]
pub enum Coloring {
    Explicit(EdgeColoring),
    BlowUp(Box<BlowUp>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowUp {
    vertices: VertexInterval,
    q: u32,
    top: EdgeColoring,
    parts: Vec<Coloring>,
    /// `offsets[p]` is the position of the first vertex of part `p`.
    offsets: Vec<usize>,
}

impl BlowUp {
    /// Parts are laid out left to right starting at label `lo`; their own
    /// vertex labels are ignored.
    pub fn new(lo: i64, q: u32, top: EdgeColoring, parts: Vec<Coloring>) -> Result<Self> {
        if parts.len() != top.order() {
            return Err(Error::domain(format!(
                "top coloring has {} vertices but {} parts were given",
                top.order(),
                parts.len()
            )));
        }
        if top.q() > q || parts.iter().any(|p| p.q() > q) {
            return Err(Error::domain(format!("a component uses more than {q} colors")));
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0usize;
        for p in &parts {
            offsets.push(total);
            total += p.order();
        }
        let vertices = VertexInterval::with_size(lo, total)?;
        Ok(BlowUp { vertices, q, top, parts, offsets })
    }

    pub fn top(&self) -> &EdgeColoring {
        &self.top
    }

    pub fn parts(&self) -> &[Coloring] {
        &self.parts
    }

    /// Vertex interval covered by part `p`.
    pub fn part_interval(&self, p: usize) -> VertexInterval {
        VertexInterval::with_size(self.vertices.label(self.offsets[p]), self.parts[p].order())
            .expect("nonempty part")
    }

    fn locate(&self, pos: usize) -> (usize, usize) {
        let p = self.offsets.partition_point(|&o| o <= pos) - 1;
        (p, pos - self.offsets[p])
    }
}

/// Best clique found inside one component, by position.
struct Partial {
    clique: Vec<usize>,
    weight: f64,
    exhausted: bool,
    nodes: u64,
}

fn adjacency_or_empty(c: &EdgeColoring, color: Color) -> Vec<Bitset> {
    if u32::from(color) < c.q() {
        c.adjacency(color)
    } else {
        vec![Bitset::new(c.order()); c.order()]
    }
}

impl Coloring {
    pub fn vertices(&self) -> VertexInterval {
        match self {
            Coloring::Explicit(c) => c.vertices(),
            Coloring::BlowUp(b) => b.vertices,
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            Coloring::Explicit(c) => c.q(),
            Coloring::BlowUp(b) => b.q,
        }
    }

    pub fn order(&self) -> usize {
        self.vertices().size()
    }

    /// Color of the pair at positions `a != b`.
    pub fn color_at(&self, a: usize, b: usize) -> Color {
        match self {
            Coloring::Explicit(c) => c.color_at(a, b),
            Coloring::BlowUp(bu) => {
                let (pa, ia) = bu.locate(a);
                let (pb, ib) = bu.locate(b);
                if pa == pb {
                    bu.parts[pa].color_at(ia, ib)
                } else {
                    bu.top.color_at(pa, pb)
                }
            }
        }
    }

    pub fn color(&self, i: i64, j: i64) -> Result<Color> {
        if i == j {
            return Err(Error::domain(format!("loop at vertex {i} has no color")));
        }
        let v = self.vertices();
        Ok(self.color_at(v.index_of(i)?, v.index_of(j)?))
    }

    pub fn is_monochromatic(&self, vertices: &[i64]) -> Result<Option<MonoColor>> {
        let v = self.vertices();
        let idx = vertices.iter().map(|&x| v.index_of(x)).collect::<Result<Vec<_>>>()?;
        let mut seen = None;
        for (x, &a) in idx.iter().enumerate() {
            for &b in &idx[x + 1..] {
                if a == b {
                    return Err(Error::domain("repeated vertex"));
                }
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

    /// Pair-by-pair copy; refuses above the explicit size limit.
    pub fn to_explicit(&self) -> Result<EdgeColoring> {
        match self {
            Coloring::Explicit(c) => Ok(c.clone()),
            Coloring::BlowUp(_) => {
                if self.order() > MAX_EXPLICIT_VERTICES {
                    return Err(Error::domain(format!(
                        "{} vertices is too many for an explicit coloring",
                        self.order()
                    )));
                }
                let lo = self.vertices().lo();
                EdgeColoring::from_fn(self.vertices(), self.q(), |i, j| {
                    self.color_at((i - lo) as usize, (j - lo) as usize)
                })
            }
        }
    }

    fn best(&self, color: Color, weights: Option<&[f64]>, budget: &SearchBudget) -> Partial {
        match self {
            Coloring::Explicit(c) => {
                let adj = adjacency_or_empty(c, color);
                let r = match weights {
                    Some(w) => max_weight_clique_in(&adj, w, budget),
                    None => max_clique_in(&adj, budget),
                };
                Partial { clique: r.clique, weight: r.weight, exhausted: r.exhausted, nodes: r.nodes }
            }
            Coloring::BlowUp(bu) => {
                let mut inner = Vec::with_capacity(bu.parts.len());
                let mut nodes = 0;
                let mut exhausted = true;
                for (p, part) in bu.parts.iter().enumerate() {
                    let w = weights.map(|w| &w[bu.offsets[p]..bu.offsets[p] + part.order()]);
                    let r = part.best(color, w, budget);
                    nodes += r.nodes;
                    exhausted &= r.exhausted;
                    inner.push(r);
                }
                let part_w: Vec<f64> = inner.iter().map(|r| r.weight).collect();
                let adj = adjacency_or_empty(&bu.top, color);
                let r = max_weight_clique_in(&adj, &part_w, budget);
                let mut clique = Vec::new();
                for &p in &r.clique {
                    clique.extend(inner[p].clique.iter().map(|&i| bu.offsets[p] + i));
                }
                Partial {
                    clique,
                    weight: r.weight,
                    exhausted: exhausted && r.exhausted,
                    nodes: nodes + r.nodes,
                }
            }
        }
    }

    /// Largest clique of `color`; exact when `optimal` is set.
    pub fn max_mono_clique(&self, color: Color, budget: &SearchBudget) -> Result<CliqueSearch> {
        self.check_color(color)?;
        let r = self.best(color, None, budget);
        let vertices = r.clique.iter().map(|&p| self.vertices().label(p)).collect();
        Ok(CliqueSearch { clique: Clique::new(vertices, color), optimal: r.exhausted, nodes: r.nodes })
    }

    /// Heaviest clique of `color` under per-position `weights`.
    pub fn max_weight_mono_clique(
        &self,
        color: Color,
        weights: &[f64],
        budget: &SearchBudget,
    ) -> Result<CliqueSearch> {
        self.check_color(color)?;
        if weights.len() != self.order() {
            return Err(Error::domain(format!("{} weights for {} vertices", weights.len(), self.order())));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::domain("weights must be finite and non-negative"));
        }
        let r = self.best(color, Some(weights), budget);
        let vertices = r.clique.iter().map(|&p| self.vertices().label(p)).collect();
        let mut clique = Clique::new(vertices, color);
        clique.weight = Some(compensated_sum(r.clique.iter().map(|&p| weights[p])));
        Ok(CliqueSearch { clique, optimal: r.exhausted, nodes: r.nodes })
    }

    fn check_color(&self, color: Color) -> Result<()> {
        if u32::from(color) >= self.q() {
            return Err(Error::domain(format!("color {color} not below q = {}", self.q())));
        }
        Ok(())
    }
}

impl From<EdgeColoring> for Coloring {
    fn from(c: EdgeColoring) -> Self {
        Coloring::Explicit(c)
    }
}
