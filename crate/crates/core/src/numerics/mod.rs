//! High-precision and exact arithmetic substrate: big rationals, a
//! configurable-precision real type, pi, Bernoulli numbers, zeta reference
//! values with rigorous tails, adaptive quadrature, and Gamma references.

pub mod bernoulli;
pub mod enclosure;
pub mod gamma;
pub mod quad;
pub mod real;
pub mod zeta;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

pub use bernoulli::bernoulli_numbers;
pub use enclosure::EnclosedValue;
pub use gamma::gamma_reference;
pub use quad::integrate;
pub use real::{parse_decimal_rational, Real, DEFAULT_PREC};
pub use zeta::{zeta_even_closed_form, zeta_reference};

/// pi to `prec` bits; `|result - pi| <= 2^(-prec+2)`.
pub fn pi_value(prec: u32) -> Result<Real> {
    if prec < 32 {
        return Err(Error::PrecisionTooLow { got: prec, min: 32 });
    }
    Ok(real::pi(prec))
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn pi_value_matches_fixed_digits() {
        // 18 significant digits at 64 bits
        let p = pi_value(64).unwrap();
        assert_eq!(p.to_decimal(18), "3.14159265358979324");
        let err_cap = Real::pow2(-62, 64);
        let tight = pi_value(256).unwrap();
        assert!(p.sub(&tight).abs() < err_cap);
    }

    #[test]
    fn pi_precisions_agree() {
        let lo = pi_value(32).unwrap();
        let hi = pi_value(256).unwrap();
        assert!(lo.sub(&hi).abs() < Real::pow2(-30, 64));
    }

    #[test]
    fn pi_squared_over_six_matches_zeta_two() {
        let p = pi_value(256).unwrap();
        let lhs = p.mul(&p).div(&Real::from_u64(6, 256));
        let z2 = zeta_reference(&BigRational::from_integer(BigInt::from(2)), 256).unwrap();
        let diff = lhs.sub(&z2.estimate).abs();
        assert!(
            diff < z2.error_bound.add(&lhs.mul_pow2(-250)),
            "diff {diff}"
        );
    }

    #[test]
    fn pi_rejects_low_precision() {
        assert!(matches!(pi_value(16), Err(Error::PrecisionTooLow { .. })));
    }

    #[test]
    fn pi_against_independent_machin_formula() {
        // Gauss' three-term variant, evaluated with the same integer kernel
        // but algebraically distinct coefficients:
        // pi/4 = 12 arctan(1/18) + 8 arctan(1/57) - 5 arctan(1/239)
        let w: u64 = 300;
        let a18 = real::arctan_recip_scaled(18, w);
        let a57 = real::arctan_recip_scaled(57, w);
        let a239 = real::arctan_recip_scaled(239, w);
        let val = BigInt::from(a18) * 48 + BigInt::from(a57) * 32 - BigInt::from(a239) * 20;
        let oracle = Real::from_bigint(&val, 256).mul_pow2(-(w as i64));
        let p = pi_value(256).unwrap();
        assert!(p.sub(&oracle).abs() < Real::pow2(-250, 64));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(12), BigUint::from(479001600u64));
    }
}
