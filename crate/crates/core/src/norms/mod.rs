//! Discrete measure spaces, p-norms for `p` in `[1, inf]`, the
//! interpolation-exponent solver, and the interpolated norm bound.

pub mod bounds;
pub mod exponent;
pub mod report;
pub mod sequence;

pub use bounds::{
    bound_from_norms, bound_from_norms_closed, convex_holder_bound, holder_check,
    interpolation_exponents, InterpolationSplit,
};
pub use exponent::Exponent;
pub use report::BoundReport;
pub use sequence::{p_norm, Atom, WeightedSequence};
