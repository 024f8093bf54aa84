//! Hölder's inequality and the interpolated norm bound.
//!
//! For `1 <= l < s < m <= inf` the s-norm is controlled by the l- and
//! m-norms:
//!
//! ```text
//! ||f||_s^s <= ||f||_l^(l(m-s)/(m-l)) * ||f||_m^(m(s-l)/(m-l))
//! ```
//!
//! with the `m = inf` form `||f||_s^s <= ||f||_l^l * ||f||_inf^(s-l)`.
//! Exponent arithmetic is exact rational end to end; only norm evaluation
//! rounds.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::Real;

use super::exponent::Exponent;
use super::report::BoundReport;
use super::sequence::{p_norm, WeightedSequence};

/// The solved exponents of the interpolation split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationSplit {
    pub p: Exponent,
    pub q: Exponent,
    /// Power carried by `|f|^alpha` in the split `|f|^s = |f|^(alpha+beta)`;
    /// equals `exp_l` numerically.
    pub alpha: BigRational,
    pub beta: BigRational,
    /// Exponent on `||f||_l` in the bound: `l(m-s)/(m-l)`, or `l` at `m = inf`.
    pub exp_l: BigRational,
    /// Exponent on `||f||_m` (on `||f||_inf` when `m = inf`): `m(s-l)/(m-l)`,
    /// or `s - l` at `m = inf`.
    pub exp_m: BigRational,
}

fn require_order(
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
    allow_closed: bool,
) -> Result<(BigRational, BigRational)> {
    let lr = l
        .as_rational()
        .ok_or_else(|| Error::ExponentOrder(format!("l must be finite, got {l}")))?;
    let sr = s
        .as_rational()
        .ok_or_else(|| Error::ExponentOrder(format!("s must be finite, got {s}")))?;
    let ok = if allow_closed {
        l <= s && s <= m
    } else {
        l < s && s < m
    };
    if !ok || lr < &BigRational::one() {
        return Err(Error::ExponentOrder(format!("l={l}, s={s}, m={m}")));
    }
    Ok((lr.clone(), sr.clone()))
}

/// Solve for the Hölder pair `(p, q)` and the norm exponents given
/// `1 <= l < s < m <= inf` (`l`, `s` finite).
pub fn interpolation_exponents(
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
) -> Result<InterpolationSplit> {
    let (lr, sr) = require_order(l, s, m, false)?;
    match m {
        Exponent::Infinity => {
            // p = 1, q = inf: alpha = l, beta = s - l
            let alpha = lr.clone();
            let beta = &sr - &lr;
            Ok(InterpolationSplit {
                p: Exponent::one(),
                q: Exponent::Infinity,
                exp_l: alpha.clone(),
                exp_m: beta.clone(),
                alpha,
                beta,
            })
        }
        Exponent::Finite(mr) => {
            let p = (mr - &lr) / (mr - &sr);
            let q = (mr - &lr) / (&sr - &lr);
            let exp_l = &lr * (mr - &sr) / (mr - &lr);
            let exp_m = mr * (&sr - &lr) / (mr - &lr);
            // alpha = l/p, beta = m/q
            let alpha = &lr / &p;
            let beta = mr / &q;
            debug_assert_eq!(&alpha + &beta, sr);
            Ok(InterpolationSplit {
                p: Exponent::Finite(p),
                q: Exponent::Finite(q),
                alpha,
                beta,
                exp_l,
                exp_m,
            })
        }
    }
}

/// Check Hölder's inequality `||fg||_1 <= ||f||_p ||g||_q` on two sequences
/// sharing weights.
pub fn holder_check(
    f: &WeightedSequence,
    g: &WeightedSequence,
    p: &Exponent,
) -> Result<BoundReport> {
    if !f.same_weights(g) {
        return Err(Error::MismatchedSequences);
    }
    let product = f.pointwise_product(g)?;
    let lhs = p_norm(&product, &Exponent::one());
    let q = p.conjugate();
    let rhs = p_norm(f, p).mul(&p_norm(g, &q));
    let prec = f.prec().max(g.prec());
    Ok(BoundReport::verify(lhs, rhs, prec))
}

/// The interpolated bound applied to a sequence: `lhs = ||f||_s^s`,
/// `rhs` per the split. The theorem guarantees `holds`.
pub fn convex_holder_bound(
    f: &WeightedSequence,
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
) -> Result<BoundReport> {
    let split = interpolation_exponents(l, s, m)?;
    let lr = l.as_rational().expect("l finite checked");
    let sr = s.as_rational().expect("s finite checked");
    let lhs = f.powers_sum(sr);
    let rhs = match m {
        Exponent::Infinity => {
            // ||f||_l^l * ||f||_inf^(s-l)
            let sup = f.max_value();
            f.powers_sum(lr).mul(&sup.pow_rational(&split.exp_m))
        }
        Exponent::Finite(_) => {
            // (||f||_l^l)^(exp_l/l) * (||f||_m^m)^(exp_m/m)
            let el = &split.exp_l / lr;
            let em = &split.exp_m / m.as_rational().expect("finite");
            f.powers_sum(lr)
                .pow_rational(&el)
                .mul(&f.powers_sum(m.as_rational().unwrap()).pow_rational(&em))
        }
    };
    Ok(BoundReport::verify(lhs, rhs, f.prec()))
}

/// The bound evaluated from already-known norms instead of a sequence:
/// `norm_l^exp_l * norm_m^exp_m`. At `m = inf`, `norm_m` is the sup-norm.
pub fn bound_from_norms(
    norm_l: &Real,
    norm_m: &Real,
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
) -> Result<Real> {
    bound_from_norms_at(norm_l, norm_m, l, s, m, false)
}

/// Diagnostic variant permitting the closed endpoints `s = l` and `s = m`,
/// where the bound degenerates to `||f||_l^l` and `||f||_m^m`.
pub fn bound_from_norms_closed(
    norm_l: &Real,
    norm_m: &Real,
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
) -> Result<Real> {
    bound_from_norms_at(norm_l, norm_m, l, s, m, true)
}

fn bound_from_norms_at(
    norm_l: &Real,
    norm_m: &Real,
    l: &Exponent,
    s: &Exponent,
    m: &Exponent,
    allow_closed: bool,
) -> Result<Real> {
    if norm_l.is_negative() || norm_m.is_negative() {
        return Err(Error::InvalidArgument("norms must be nonnegative".into()));
    }
    let (lr, sr) = require_order(l, s, m, allow_closed)?;
    let (exp_l, exp_m) = match m {
        Exponent::Infinity => {
            let exp_m = &sr - &lr;
            (lr, exp_m)
        }
        Exponent::Finite(mr) => {
            let exp_l = &lr * (mr - &sr) / (mr - &lr);
            let exp_m = mr * (&sr - &lr) / (mr - &lr);
            (exp_l, exp_m)
        }
    };
    Ok(norm_l
        .pow_rational(&exp_l)
        .mul(&norm_m.pow_rational(&exp_m)))
}
