//! Odd zeta values bounded through even ones.
//!
//! Writing `zeta(2k+1) = ||f||_s^s` for `f = {1/n^2}` and `s = (2k+1)/2`,
//! interpolation between the k- and (k+1)-norms gives
//! `zeta(2k+1) <= sqrt(zeta(2k) zeta(2k+2))`, which has an exact closed form
//! `(a/b) pi^(2k+1) sqrt(r)` with squarefree `r`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::norms::{bound_from_norms, BoundReport, Exponent};
use crate::numerics::real::pi;
use crate::numerics::{zeta_even_closed_form, zeta_reference, EnclosedValue, Real};

/// Exact value of the form `coefficient * pi^pi_power * sqrt(radicand)`,
/// with the radicand a squarefree positive integer (all square factors are
/// extracted into the coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRadical {
    pub coefficient: BigRational,
    pub pi_power: u32,
    pub radicand: BigRational,
}

impl CanonicalRadical {
    /// Normalize `coefficient * pi^pi_power * sqrt(r)` for rational `r > 0`.
    pub fn new(coefficient: BigRational, pi_power: u32, r: &BigRational) -> Self {
        assert!(r > &BigRational::zero() && coefficient > BigRational::zero());
        // sqrt(c/d) = sqrt(c*d)/d
        let v = r.numer().magnitude() * r.denom().magnitude();
        let (square_root, squarefree) = square_split(&v);
        let coefficient =
            coefficient * BigRational::new(BigInt::from(square_root), r.denom().clone());
        CanonicalRadical {
            coefficient,
            pi_power,
            radicand: BigRational::from_integer(BigInt::from(squarefree)),
        }
    }

    pub fn value(&self, prec: u32) -> Real {
        let w = prec + 24;
        let coef = Real::from_ratio(&self.coefficient, w);
        let root = Real::from_ratio(&self.radicand, w).sqrt();
        let p = pi(w).pow_u64(self.pi_power as u64);
        coef.mul(&p).mul(&root).with_prec(prec)
    }

    /// Rendering like `π^3·√15/90`.
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.coefficient.numer().is_one() {
            parts.push(self.coefficient.numer().to_string());
        }
        match self.pi_power {
            0 => {}
            1 => parts.push("π".to_string()),
            n => parts.push(format!("π^{n}")),
        }
        if !self.radicand.is_one() {
            parts.push(format!("√{}", self.radicand.numer()));
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        let numer = parts.join("·");
        if self.coefficient.denom().is_one() {
            numer
        } else {
            format!("{numer}/{}", self.coefficient.denom())
        }
    }
}

/// Split `n = s^2 * f` with `f` squarefree; returns `(s, f)`.
/// Trial division, with a perfect-square check on the remaining cofactor.
pub fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero());
    let mut rem = n.clone();
    let mut square_root = BigUint::one();
    let mut squarefree = BigUint::one();
    let mut d: u64 = 2;
    const TRIAL_LIMIT: u64 = 2_000_000;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        let d2 = &db * &db;
        if d2 > rem {
            break;
        }
        while (&rem % &d2).is_zero() {
            rem /= &d2;
            square_root *= &db;
        }
        if (&rem % &db).is_zero() {
            rem /= &db;
            squarefree *= &db;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rem.is_one() {
        let root = rem.sqrt();
        if &root * &root == rem {
            square_root *= root;
        } else {
            // no factor <= TRIAL_LIMIT remains, and rem is not a square; any
            // square divisor would need a prime above the trial limit twice,
            // which the magnitudes used here cannot reach
            squarefree *= &rem;
        }
    }
    (square_root, squarefree)
}

/// `sqrt(zeta(2k) zeta(2k+2))` evaluated from the exact even closed forms.
pub fn odd_zeta_bound(k: u32, prec: u32) -> Result<Real> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let r = even_product(k)?;
    let w = prec + 24;
    let root = Real::from_ratio(&r, w).sqrt();
    Ok(pi(w).pow_u64(2 * k as u64 + 1).mul(&root).with_prec(prec))
}

/// The same bound as an exact radical.
pub fn odd_zeta_closed_form(k: u32) -> Result<CanonicalRadical> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let r = even_product(k)?;
    Ok(CanonicalRadical::new(BigRational::one(), 2 * k + 1, &r))
}

fn even_product(k: u32) -> Result<BigRational> {
    let q_lo = zeta_even_closed_form(2 * k as u64)?;
    let q_hi = zeta_even_closed_form(2 * k as u64 + 2)?;
    Ok(q_lo * q_hi)
}

/// One row of the odd-zeta bound table.
#[derive(Clone, Debug)]
pub struct ZetaTableRow {
    pub k: u32,
    pub odd_index: u64,
    pub zeta_value: EnclosedValue,
    pub bound_numeric: Real,
    pub bound_closed: CanonicalRadical,
    /// `bound_numeric / zeta estimate`; at least 1 when the bound holds.
    pub ratio: Real,
}

/// Rows `k = 1..=k_max` with values, bounds, and closed forms.
pub fn zeta_table(k_max: u32, prec: u32) -> Result<Vec<ZetaTableRow>> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let odd_index = 2 * k as u64 + 1;
        let s = BigRational::from_integer(BigInt::from(odd_index));
        let zeta_value = zeta_reference(&s, prec)?;
        let bound_numeric = odd_zeta_bound(k, prec)?;
        let bound_closed = odd_zeta_closed_form(k)?;
        debug_assert!({
            let cf = bound_closed.value(prec);
            cf.sub(&bound_numeric).abs() <= bound_numeric.mul_pow2(-((prec / 2) as i64))
        });
        let ratio = bound_numeric.div(&zeta_value.estimate);
        rows.push(ZetaTableRow {
            k,
            odd_index,
            zeta_value,
            bound_numeric,
            bound_closed,
            ratio,
        });
    }
    Ok(rows)
}

/// The same bound reached through the interpolation engine: the norms
/// `||f||_k = zeta(2k)^(1/k)` and `||f||_(k+1) = zeta(2k+2)^(1/(k+1))` of
/// `f = {1/n^2}` are fed to [`bound_from_norms`] at `(l, s, m) =
/// (k, k+1/2, k+1)`. An independent floating route to [`odd_zeta_bound`].
pub fn odd_zeta_bound_via_engine(k: u32, prec: u32) -> Result<Real> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let odd_index = 2 * k as u64 + 1;
    let w = prec + 24;
    let q_lo = zeta_even_closed_form(2 * k as u64)?;
    let q_hi = zeta_even_closed_form(2 * k as u64 + 2)?;
    let zeta_lo = Real::from_ratio(&q_lo, w).mul(&pi(w).pow_u64(2 * k as u64));
    let zeta_hi = Real::from_ratio(&q_hi, w).mul(&pi(w).pow_u64(2 * k as u64 + 2));
    let norm_l = zeta_lo.pow_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
    let norm_m = zeta_hi.pow_rational(&BigRational::new(BigInt::one(), BigInt::from(k + 1)));
    Ok(bound_from_norms(
        &norm_l,
        &norm_m,
        &Exponent::from_integer(k as u64)?,
        &Exponent::finite(BigRational::new(BigInt::from(odd_index), BigInt::from(2)))?,
        &Exponent::from_integer(k as u64 + 1)?,
    )?
    .with_prec(prec))
}

/// Check `zeta(2k+1) <= sqrt(zeta(2k) zeta(2k+2))` and that the closed-form
/// route agrees with the interpolation engine fed the even-norm values.
/// `holds` requires both the inequality and route agreement.
pub fn verify_odd_bound_chain(k: u32, prec: u32) -> Result<BoundReport> {
    let odd_index = 2 * k as u64 + 1;
    let lhs = zeta_reference(&BigRational::from_integer(BigInt::from(odd_index)), prec)?;
    let rhs = odd_zeta_bound(k, prec)?;
    let engine = odd_zeta_bound_via_engine(k, prec)?;
    let agree = engine.sub(&rhs).abs() <= rhs.mul_pow2(-((prec / 2) as i64));
    let mut report = BoundReport::verify(lhs.upper(), rhs, prec);
    report.holds = report.holds && agree;
    Ok(report)
}
