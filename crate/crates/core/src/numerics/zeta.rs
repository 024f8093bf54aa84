//! Reference values of the zeta function.
//!
//! Even integer arguments have exact closed forms `zeta(2k) = q * pi^(2k)`
//! with rational `q` derived from Bernoulli numbers. General arguments are
//! enclosed by a partial sum plus Euler-Maclaurin tail corrections through
//! the `B_8` term; because all derivatives of `x^-s` have constant sign, the
//! first omitted correction term rigorously bounds the remainder.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

use super::bernoulli::bernoulli_upto;
use super::enclosure::EnclosedValue;
use super::real::Real;

/// Exact rational `q` with `zeta(two_k) = q * pi^two_k`.
pub fn zeta_even_closed_form(two_k: u64) -> Result<BigRational> {
    if two_k < 2 || !two_k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "closed forms exist for positive even arguments, got {two_k}"
        )));
    }
    let b = bernoulli_upto(two_k);
    let b2k = &b[two_k as usize];
    // q = (-1)^(k+1) * B_2k * 2^(2k-1) / (2k)!
    let k = two_k / 2;
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let mut fact = BigInt::one();
    for i in 2..=two_k {
        fact *= BigInt::from(i);
    }
    let q = b2k * BigRational::new(BigInt::from(sign) << (two_k - 1) as usize, fact);
    debug_assert!(q.is_positive());
    Ok(q)
}

/// Minimum distance of `s` from 1 for the tail bound to be accepted.
const MIN_S_GAP: (u64, u64) = (1, 1_000_000); // 1e-6

/// Enclosure of `zeta(s)` for rational `s > 1 + 1e-6`.
pub fn zeta_reference(s: &BigRational, prec: u32) -> Result<EnclosedValue> {
    let gap = s - BigRational::one();
    if gap <= BigRational::new(BigInt::from(MIN_S_GAP.0), BigInt::from(MIN_S_GAP.1)) {
        return Err(Error::TooCloseToOne(format!("{s}")));
    }
    let w = prec + 48;

    // Correction coefficients B_2j / (2j)! * (s)(s+1)..(s+2j-2), exact.
    let bern = bernoulli_upto(10);
    let mut coeffs: Vec<BigRational> = Vec::new(); // j = 1..=5; last is the omitted-term bound
    let mut poch = s.clone(); // (s)_1
    let mut fact = BigRational::from_integer(BigInt::from(2));
    for j in 1..=5u64 {
        if j > 1 {
            let a = 2 * j - 3;
            poch *= (s + BigRational::from_integer(BigInt::from(a)))
                * (s + BigRational::from_integer(BigInt::from(a + 1)));
            fact *= BigRational::from_integer(BigInt::from((2 * j - 1) * (2 * j)));
        }
        coeffs.push(&bern[(2 * j) as usize] / &fact * &poch);
    }

    // target width (log2); fixed-order corrections make very tight targets
    // expensive, so cap at 2^-140
    let target_log2: i64 = if s.is_integer() {
        -((prec as i64 - 16).min(140))
    } else {
        -60
    };

    let s_f = s.to_f64().unwrap_or(2.0);
    let omit_log2 = coeffs[4].to_f64().map(|c| c.abs().log2()).unwrap_or(0.0);
    let mut n: u64 = 16;
    while n < (1 << 20) {
        // first omitted term ~ |c5| * n^(-s-9)
        let err_log2 = omit_log2 - (s_f + 9.0) * (n as f64).log2();
        if err_log2 < target_log2 as f64 {
            break;
        }
        n *= 2;
    }

    let int_s = if s.is_integer() {
        s.numer().to_u64()
    } else {
        None
    };
    let mut sum = Real::zero(w);
    for i in 1..n {
        let term = match int_s {
            Some(k) => Real::from_u64(i, w).pow_u64(k).recip(),
            None => Real::from_u64(i, w).pow_rational(&-s.clone()),
        };
        sum = sum.add(&term);
    }

    let n_real = Real::from_u64(n, w);
    // integral term N^(1-s)/(s-1)
    let one_minus_s = BigRational::one() - s;
    let integral = n_real
        .pow_rational(&one_minus_s)
        .div(&Real::from_ratio(&gap, w));
    sum = sum.add(&integral);
    // + N^-s / 2
    let n_pow_neg_s = n_real.pow_rational(&-s.clone());
    sum = sum.add(&n_pow_neg_s.mul_pow2(-1));
    // + corrections c_j * N^(-s-2j+1), j = 1..4
    for (idx, c) in coeffs.iter().take(4).enumerate() {
        let j = idx as i64 + 1;
        let scale = n_real.pow_i64(-(2 * j - 1));
        let term = Real::from_ratio(c, w).mul(&n_pow_neg_s).mul(&scale);
        sum = sum.add(&term);
    }
    // rigorous remainder bound: |c_5| * N^(-s-9), plus rounding slop
    let tail = Real::from_ratio(&coeffs[4].abs(), w)
        .mul(&n_pow_neg_s)
        .mul(&n_real.pow_i64(-9));
    let slop = sum.abs().mul_pow2(-(w as i64) + n.ilog2() as i64 + 8);
    let err = tail.abs().add(&slop).with_prec(64);
    Ok(EnclosedValue::new(sum.with_prec(prec), err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::real::pi;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn closed_form_coefficients() {
        assert_eq!(zeta_even_closed_form(2).unwrap(), rat(1, 6));
        assert_eq!(zeta_even_closed_form(4).unwrap(), rat(1, 90));
        assert_eq!(zeta_even_closed_form(6).unwrap(), rat(1, 945));
        assert_eq!(zeta_even_closed_form(8).unwrap(), rat(1, 9450));
        assert_eq!(zeta_even_closed_form(10).unwrap(), rat(1, 93555));
        assert_eq!(zeta_even_closed_form(12).unwrap(), rat(691, 638512875));
    }

    #[test]
    fn closed_form_rejects_odd_or_zero() {
        assert!(zeta_even_closed_form(3).is_err());
        assert!(zeta_even_closed_form(0).is_err());
    }

    #[test]
    fn reference_matches_printed_values() {
        // zeta(3) and zeta(5) at 15 digits
        let z3 = zeta_reference(&rat(3, 1), 256).unwrap();
        let expect = Real::parse_decimal("1.20205690315959", 256).unwrap();
        assert!(z3.estimate.sub(&expect).abs() < Real::parse_decimal("1e-14", 64).unwrap());
        let z5 = zeta_reference(&rat(5, 1), 256).unwrap();
        let expect = Real::parse_decimal("1.03692775514337", 256).unwrap();
        assert!(z5.estimate.sub(&expect).abs() < Real::parse_decimal("1e-14", 64).unwrap());
    }

    #[test]
    fn reference_contains_closed_form_at_two() {
        let z2 = zeta_reference(&rat(2, 1), 256).unwrap();
        let exact = pi(288).pow_u64(2).div(&Real::from_u64(6, 288));
        assert!(
            z2.widened(&exact.abs().mul_pow2(-250)).contains(&exact),
            "pi^2/6 vs {z2}"
        );
    }

    #[test]
    fn reference_enclosure_is_tight() {
        let z3 = zeta_reference(&rat(3, 1), 256).unwrap();
        let rel = z3.error_bound.div(&z3.estimate);
        assert!(
            rel < Real::parse_decimal("1e-15", 64).unwrap(),
            "width {}",
            z3.error_bound
        );
    }

    #[test]
    fn reference_rejects_near_one() {
        assert!(zeta_reference(&rat(1, 1), 128).is_err());
        assert!(zeta_reference(&rat(10_000_001, 10_000_000), 128).is_err());
        assert!(zeta_reference(&rat(101, 100), 128).is_ok());
    }

    #[test]
    fn non_integer_argument() {
        let z = zeta_reference(&rat(5, 2), 192).unwrap();
        // zeta(2.5) = 1.3414872572509171...
        let expect = Real::parse_decimal("1.34148725725092", 192).unwrap();
        assert!(
            z.estimate.sub(&expect).abs() < Real::parse_decimal("2e-14", 64).unwrap(),
            "{z}"
        );
    }
}
