//! File formats: colorings (canonical JSON and packed binary), bipartite
//! graphs, and per-vertex weight pairs.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ramsey_core::bitset::Bitset;
use ramsey_core::drc::BipartiteGraph;
use ramsey_core::weighted_ramsey::WeightPair;
use ramsey_core::{Color, EdgeColoring, TripleColoring, VertexInterval};
use serde::{Deserialize, Serialize};
use serde_json::Value;

const MAGIC: &[u8; 4] = b"RLCB";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringFile {
    Edge(EdgeColoring),
    Triple(TripleColoring),
}

impl ColoringFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ColoringFile::Edge(_) => "edge",
            ColoringFile::Triple(_) => "triple",
        }
    }

    fn parts(&self) -> (VertexInterval, u32, &[Color]) {
        match self {
            ColoringFile::Edge(c) => (c.vertices(), c.q(), c.colors()),
            ColoringFile::Triple(c) => (c.vertices(), c.q(), c.colors()),
        }
    }

    pub fn edge(self) -> Result<EdgeColoring> {
        match self {
            ColoringFile::Edge(c) => Ok(c),
            ColoringFile::Triple(_) => bail!("expected an edge coloring, found a triple coloring"),
        }
    }

    pub fn triple(self) -> Result<TripleColoring> {
        match self {
            ColoringFile::Triple(c) => Ok(c),
            ColoringFile::Edge(_) => bail!("expected a triple coloring, found an edge coloring"),
        }
    }

    /// Sorted keys, no whitespace.
    pub fn to_json(&self) -> String {
        let (iv, q, colors) = self.parts();
        let mut s = String::from("{\"colors\":[");
        for (i, c) in colors.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&c.to_string());
        }
        s.push_str(&format!("],\"hi\":{},\"kind\":\"{}\",\"lo\":{},\"q\":{}}}", iv.hi(), self.kind(), iv.lo(), q));
        s
    }

    /// Colors packed in `ceil(log2 q)` bits each, least significant first.
    pub fn to_binary(&self) -> Vec<u8> {
        let (iv, q, colors) = self.parts();
        let mut out = Vec::with_capacity(33 + colors.len() / 2);
        out.extend_from_slice(MAGIC);
        out.push(u8::from(matches!(self, ColoringFile::Triple(_))));
        out.extend_from_slice(&iv.lo().to_le_bytes());
        out.extend_from_slice(&iv.hi().to_le_bytes());
        out.extend_from_slice(&q.to_le_bytes());
        out.extend_from_slice(&(colors.len() as u64).to_le_bytes());
        let width = bit_width(q);
        let mut acc = 0u64;
        let mut filled = 0;
        for &c in colors {
            acc |= (c as u64) << filled;
            filled += width;
            while filled >= 8 {
                out.push(acc as u8);
                acc >>= 8;
                filled -= 8;
            }
        }
        if filled > 0 {
            out.push(acc as u8);
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 33 || &bytes[..4] != MAGIC {
            bail!("not a binary coloring file (bad magic or truncated header)");
        }
        let le8 = |at: usize| <[u8; 8]>::try_from(&bytes[at..at + 8]).expect("8 bytes");
        let triple = match bytes[4] {
            0 => false,
            1 => true,
            k => bail!("unknown coloring kind byte {k}"),
        };
        let lo = i64::from_le_bytes(le8(5));
        let hi = i64::from_le_bytes(le8(13));
        let q = u32::from_le_bytes(bytes[21..25].try_into().expect("4 bytes"));
        let count = u64::from_le_bytes(le8(25)) as usize;
        let width = bit_width(q);
        let body = &bytes[33..];
        if body.len() * 8 < count * width {
            bail!("binary coloring is truncated: {count} entries of {width} bits need more than {} bytes", body.len());
        }
        let colors: Vec<u64> = (0..count)
            .map(|i| {
                let mut v = 0u64;
                for b in 0..width {
                    let bit = i * width + b;
                    v |= ((body[bit / 8] >> (bit % 8)) & 1) as u64 * (1 << b);
                }
                v
            })
            .collect();
        build(triple, lo, hi, q, colors.into_iter().map(Ok).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).context("coloring file is not valid JSON")?;
        let obj = v.as_object().ok_or_else(|| anyhow!("coloring file must be a JSON object"))?;
        let int = |key: &str| -> Result<i64> {
            obj.get(key)
                .ok_or_else(|| anyhow!("missing key {key:?}"))?
                .as_i64()
                .ok_or_else(|| anyhow!("key {key:?} must be an integer"))
        };
        let triple = match obj.get("kind").and_then(Value::as_str) {
            Some("edge") => false,
            Some("triple") => true,
            other => bail!("key \"kind\" must be \"edge\" or \"triple\", got {other:?}"),
        };
        let (lo, hi, q) = (int("lo")?, int("hi")?, int("q")?);
        let q = u32::try_from(q).map_err(|_| anyhow!("q = {q} is out of range"))?;
        let raw = obj
            .get("colors")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("key \"colors\" must be an array"))?;
        let colors = raw
            .iter()
            .enumerate()
            .map(|(i, x)| x.as_u64().ok_or_else(|| format!("colors[{i}] = {x} is not a nonnegative integer")))
            .collect();
        build(triple, lo, hi, q, colors)
    }

    /// Reads JSON or, for `.bin` paths, the packed format.
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let parsed = if is_binary_path(path) {
            Self::from_binary(&bytes)
        } else {
            Self::from_json(std::str::from_utf8(&bytes).context("coloring file is not UTF-8")?)
        };
        parsed.with_context(|| format!("invalid coloring file {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let bytes = if is_binary_path(path) { self.to_binary() } else { self.to_json().into_bytes() };
        std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
    }
}

pub fn is_binary_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "bin")
}

fn bit_width(q: u32) -> usize {
    (32 - q.saturating_sub(1).leading_zeros()) as usize
}

/// Label tuple of the `idx`-th entry, for diagnostics.
fn entry_label(triple: bool, iv: VertexInterval, idx: usize) -> String {
    let n = iv.size();
    let mut seen = 0;
    for a in 0..n {
        for b in a + 1..n {
            if triple {
                let width = n - b - 1;
                if idx < seen + width {
                    let c = b + 1 + (idx - seen);
                    return format!("triple ({}, {}, {})", iv.label(a), iv.label(b), iv.label(c));
                }
                seen += width;
            } else {
                if idx == seen {
                    return format!("pair ({}, {})", iv.label(a), iv.label(b));
                }
                seen += 1;
            }
        }
    }
    "past the last entry".into()
}

fn build(triple: bool, lo: i64, hi: i64, q: u32, colors: Vec<std::result::Result<u64, String>>) -> Result<ColoringFile> {
    if q == 0 || q > 256 {
        bail!("q = {q} must lie in 1..=256");
    }
    let iv = VertexInterval::new(lo, hi).map_err(|e| anyhow!("bad vertex interval: {e}"))?;
    let n = iv.size() as u128;
    let expected = if triple { n * (n - 1) * (n.saturating_sub(2)) / 6 } else { n * (n - 1) / 2 };
    if colors.len() as u128 != expected {
        bail!("expected {expected} color entries for [{lo}, {hi}], got {}", colors.len());
    }
    let mut out = Vec::with_capacity(colors.len());
    for (i, c) in colors.into_iter().enumerate() {
        let c = c.map_err(|m| anyhow!("{m} ({})", entry_label(triple, iv, i)))?;
        if c >= q as u64 {
            bail!("colors[{i}] = {c} is not below q = {q} ({})", entry_label(triple, iv, i));
        }
        out.push(c as Color);
    }
    Ok(if triple {
        ColoringFile::Triple(TripleColoring::new(iv, q, out)?)
    } else {
        ColoringFile::Edge(EdgeColoring::new(iv, q, out)?)
    })
}

/// `{n1, n2, rows: [hex]}`; row `v` lists the `V2`-neighbors of `v` as a
/// little-endian bitmask, two hex digits per byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteFile {
    pub n1: usize,
    pub n2: usize,
    pub rows: Vec<String>,
}

impl BipartiteFile {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        let rows = g
            .rows()
            .iter()
            .map(|r| {
                let bytes: Vec<u8> = (0..g.n2().div_ceil(8))
                    .map(|i| (0..8).filter(|b| r.contains(i * 8 + b)).fold(0u8, |acc, b| acc | 1 << b))
                    .collect();
                hex::encode(bytes)
            })
            .collect();
        BipartiteFile { n1: g.n1(), n2: g.n2(), rows }
    }

    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        if self.rows.len() != self.n1 {
            bail!("{} rows given but n1 = {}", self.rows.len(), self.n1);
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, h)| {
                let bytes = hex::decode(h).map_err(|e| anyhow!("rows[{v}] is not hex: {e}"))?;
                if bytes.len() != self.n2.div_ceil(8) {
                    bail!("rows[{v}] has {} bytes, expected {}", bytes.len(), self.n2.div_ceil(8));
                }
                let mut row = Bitset::new(self.n2);
                for b in 0..bytes.len() * 8 {
                    if bytes[b / 8] >> (b % 8) & 1 == 1 {
                        if b >= self.n2 {
                            bail!("rows[{v}] sets bit {b} beyond n2 = {}", self.n2);
                        }
                        row.insert(b);
                    }
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BipartiteGraph::new(self.n2, rows)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RbEntry {
    pub r: f64,
    pub b: f64,
}

/// Weights file: JSON object mapping each vertex label to `{r, b}`.
pub fn read_weight_pair(path: &Path, iv: VertexInterval, c: f64) -> Result<WeightPair> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let map: BTreeMap<String, RbEntry> = serde_json::from_str(&text).context("weights file must map vertex -> {r, b}")?;
    let mut r = vec![None; iv.size()];
    let mut b = vec![0.0; iv.size()];
    for (k, e) in &map {
        let v: i64 = k.parse().map_err(|_| anyhow!("weights key {k:?} is not a vertex label"))?;
        let p = iv.index_of(v).map_err(|_| anyhow!("weights key {v} is outside [{}, {}]", iv.lo(), iv.hi()))?;
        r[p] = Some(e.r);
        b[p] = e.b;
    }
    let r = r
        .into_iter()
        .enumerate()
        .map(|(p, x)| x.ok_or_else(|| anyhow!("weights file has no entry for vertex {}", iv.label(p))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightPair { r, b, c })
}
