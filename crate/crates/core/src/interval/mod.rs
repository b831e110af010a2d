//! Interval sets on the line and the cell-folding sets built from them.

mod endpoint;
mod fold;
mod set;

pub use endpoint::{format_rational, frac, parse_irrational, parse_rational, Endpoint, DEFAULT_PRECISION_BITS};
pub(crate) use endpoint::{pow2, rational_to_f64, round_to_bits};
pub use fold::{a_exact, a_geq, b_exact, fiber_pieces, fold_counts, grid_separation_ok, lift, FiberPiece, FoldCounts, FoldPiece};
pub use set::{Interval, IntervalSet};
