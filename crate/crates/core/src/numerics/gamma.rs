//! Gamma reference values from the defining integral.
//!
//! `Gamma(x)` is split as `int_0^T t^(x-1) e^-t dt` plus a tail. The
//! truncated integral is evaluated by the lower-incomplete-gamma power
//! series `T^x e^-T * sum_n T^n / (x (x+1) .. (x+n))`, whose truncation
//! error is a geometric tail; the integral tail beyond `T >= 2(x-1)` is
//! at most `2 T^(x-1) e^-T`. `T` starts at `max(40, 4x)` and doubles until
//! the tail bound meets the target.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

use super::enclosure::EnclosedValue;
use super::real::Real;

/// Enclosure of `Gamma(x)` for rational `x > 0`.
pub fn gamma_reference(x: &BigRational, prec: u32) -> Result<EnclosedValue> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "gamma argument must be positive, got {x}"
        )));
    }
    let w = prec + 48;
    let x_f = x.to_f64().unwrap_or(1.0);
    let mut t: u64 = 40f64.max(4.0 * x_f).ceil() as u64;
    loop {
        let (value, err) = lower_incomplete(x, t, w);
        // integral tail: 2 T^(x-1) e^-T for T >= 2(x-1)
        let t_real = Real::from_u64(t, w);
        let tail = t_real
            .pow_rational(&(x - BigRational::from_integer(1.into())))
            .mul(&Real::from_i64(-(t as i64), w).exp())
            .mul_pow2(1);
        let total_err = err.add(&tail).with_prec(64);
        let target = value.abs().mul_pow2(-(prec as i64) / 2 - 10);
        if total_err <= target || t > 1 << 20 {
            return Ok(EnclosedValue::new(value.with_prec(prec), total_err));
        }
        t *= 2;
    }
}

/// `int_0^T t^(x-1) e^-t dt` with a rigorous truncation bound.
fn lower_incomplete(x: &BigRational, t: u64, w: u32) -> (Real, Real) {
    let t_real = Real::from_u64(t, w);
    let x_real = Real::from_ratio(x, w);
    // series sum_n T^n / (x (x+1) ... (x+n)), n = 0, 1, ...
    let mut denom_shift = x_real.clone();
    let mut term = x_real.recip();
    let mut sum = term.clone();
    let one = Real::one(w);
    let mut tail_bound;
    loop {
        denom_shift = denom_shift.add(&one);
        term = term.mul(&t_real).div(&denom_shift);
        sum = sum.add(&term);
        let ratio_num = t as f64;
        let ratio_den = denom_shift.to_f64() + 1.0;
        if ratio_num < ratio_den / 2.0 {
            // remaining tail <= term * r / (1 - r), r = T/(x+n+1) < 1/2
            let r = ratio_num / ratio_den;
            tail_bound = term.abs().mul(&Real::from_f64(r / (1.0 - r) * 1.001, 64));
            if tail_bound < sum.abs().mul_pow2(-(w as i64) + 8) {
                break;
            }
        }
    }
    // prefactor T^x e^-T
    let prefactor = t_real
        .pow_rational(x)
        .mul(&Real::from_i64(-(t as i64), w).exp());
    let value = sum.mul(&prefactor);
    tail_bound = tail_bound.mul(&prefactor);
    // rounding slop: the series has O(T + w) operations
    let ops = (t + w as u64 + 64).ilog2() as i64 + 2;
    let slop = value.abs().mul_pow2(-(w as i64) + ops + 8);
    (value, tail_bound.abs().add(&slop))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::integrate;
    use crate::numerics::real::pi;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn integer_arguments_are_factorials() {
        let g5 = gamma_reference(&rat(5, 1), 256).unwrap();
        assert!(g5.contains(&Real::from_u64(24, 256)), "gamma(5) {g5}");
        let rel = g5.error_bound.div(&g5.estimate);
        assert!(rel.msb() < -120, "width 2^{}", rel.msb());
    }

    #[test]
    fn half_argument_is_sqrt_pi() {
        let g = gamma_reference(&rat(1, 2), 256).unwrap();
        let expect = pi(288).sqrt();
        assert!(
            g.widened(&expect.mul_pow2(-250)).contains(&expect),
            "gamma(1/2) {g}"
        );
    }

    #[test]
    fn gamma_two_point_five() {
        // Gamma(2.5) = (3/4) sqrt(pi)
        let g = gamma_reference(&rat(5, 2), 256).unwrap();
        let expect = pi(288)
            .sqrt()
            .mul(&Real::parse_decimal("0.75", 288).unwrap());
        assert!(
            g.widened(&expect.mul_pow2(-250)).contains(&expect),
            "gamma(2.5) {g}"
        );
        // frozen 14-digit value, cross-checked against the quadrature oracle below
        let frozen = Real::parse_decimal("1.3293403881791", 256).unwrap();
        assert!(g.estimate.sub(&frozen).abs() < Real::parse_decimal("1e-12", 64).unwrap());
    }

    #[test]
    fn quadrature_oracle_agrees() {
        // independent route: adaptive Simpson on t^(3/2) e^-t over [0, 40]
        let prec = 192;
        let f = |t: &Real| {
            if t.is_zero() {
                return Real::zero(prec);
            }
            t.mul(&t.sqrt()).mul(&t.neg().exp())
        };
        let tol = Real::parse_decimal("1e-9", 64).unwrap();
        let enc = integrate(&f, &Real::zero(prec), &Real::from_u64(40, prec), &tol, prec).unwrap();
        let g = gamma_reference(&rat(5, 2), 192).unwrap();
        let diff = enc.estimate.sub(&g.estimate).abs();
        assert!(
            diff < Real::parse_decimal("1e-8", 64).unwrap(),
            "difference {diff}"
        );
    }

    #[test]
    fn recurrence_holds_on_half_integers() {
        for k in 0..10u64 {
            let x = rat(3 + 2 * k as i64, 2); // 1.5, 2.5, ..., 10.5
            let gx = gamma_reference(&x, 192).unwrap();
            let gx1 =
                gamma_reference(&(x.clone() + BigRational::from_integer(1.into())), 192).unwrap();
            let shifted = gx.estimate.mul(&Real::from_ratio(&x, 208));
            let combined = gx1
                .error_bound
                .add(&gx.error_bound.mul(&Real::from_ratio(&x, 208)));
            let diff = gx1.estimate.sub(&shifted).abs();
            assert!(
                diff <= combined.add(&gx1.estimate.mul_pow2(-180)),
                "recurrence at {x}: diff {diff}"
            );
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(gamma_reference(&rat(0, 1), 128).is_err());
        assert!(gamma_reference(&rat(-3, 2), 128).is_err());
    }

    #[test]
    fn large_arguments_stay_accurate() {
        // Gamma(51) = 50!
        let mut fifty_fact = BigInt::from(1);
        for i in 2..=50u64 {
            fifty_fact *= BigInt::from(i);
        }
        let g = gamma_reference(&BigRational::from_integer(BigInt::from(51)), 256).unwrap();
        let exact = Real::from_bigint(&fifty_fact, 300);
        assert!(
            g.widened(&exact.mul_pow2(-240)).contains(&exact),
            "gamma(51)"
        );
    }
}
