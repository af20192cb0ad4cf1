//! Eventually periodic ray-sets and piecewise-affine partial bijections
//! over the counter-model's universe.

mod pbij;
mod phimap;
mod rayset;

pub use pbij::{make_paper_bijection, PartialBijection, Piece};
pub use phimap::{is_dyadic, map_point, pow2q, preimage, Parity, PhiMap};
pub use rayset::RaySet;
