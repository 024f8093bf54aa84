//! Verified numeric bounds built on norm interpolation.
//!
//! The crate provides a high-precision arithmetic substrate ([`numerics`]),
//! weighted sequences with p-norms and the interpolated norm bound
//! ([`norms`]), and the derived bound families: odd zeta values ([`zeta`]),
//! binomial moment sums ([`binomial`]), Gamma/Beta and Lp-integral bounds
//! ([`special`]), and product inequalities on the simplex ([`simplex`]).
//! Every bound is checked against an independent reference oracle and
//! reported as a [`norms::BoundReport`].

pub mod binomial;
pub mod error;
pub mod norms;
pub mod numerics;
pub mod simplex;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
pub use numerics::{Real, DEFAULT_PREC};
