use alloc::format;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::interval::VertexInterval;

/// Exact density `|S| / |I|`.
pub type Density = Ratio<u64>;

/// Density of the vertex set `s` inside the interval `i`.
///
/// `s` must lie inside `i`; duplicates are not checked, callers pass sets.
pub fn density(s: &[i64], i: &VertexInterval) -> Result<Density> {
    if let Some(v) = s.iter().find(|&&v| !i.contains(v)) {
        return Err(Error::domain(format!("vertex {v} is outside {i}")));
    }
    Ok(Ratio::new(s.len() as u64, i.size() as u64))
}
