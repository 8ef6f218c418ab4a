//! Exact combinatorics for weighted and order-type Ramsey problems.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches a
//! file, a clock or a thread lives in the companion `ramsey-lab` crate.
//!
//! Vertices are `i64` labels drawn from a contiguous [`VertexInterval`];
//! colors are dense ids `0..q` with red = 0, blue = 1 (and green = 2 for the
//! three-color constructions).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod clique;
pub mod coloring;
pub mod constructions;
pub mod density;
pub mod drc;
mod error;
pub mod interval;
pub mod ordertype;
pub mod rng;
pub mod structured;
pub mod weighted_ramsey;
pub mod weights;

pub use coloring::{Color, EdgeColoring, MonoColor, TripleColoring, BLUE, GREEN, RED};
pub use density::{density, Density};
pub use error::{Error, Result};
pub use interval::VertexInterval;
pub use rng::Rng;
