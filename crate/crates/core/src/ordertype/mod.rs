//! Order-type machinery: separated pairs, banded cliques, the heaviness
//! property, the parameter cascade, and tiny-scale `R_pi(k; q)`.

pub mod cascade;
pub mod heavy;
pub mod rpi;
pub mod separated;
pub mod types;

pub use cascade::{cascade_params, Atom, CascadeParams, Monomial, Verdict};
pub use heavy::{heavy_check, Graph, HeavyParams, HeavyVerdict};
pub use rpi::{compute_r_pi, EnumerationOrder, RpiReport, RpiResult};
pub use separated::{find_separated_pair, is_separated, shrink, SeparatedPair};
pub use types::{is_type_clique, TypeSpec};
