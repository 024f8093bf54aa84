//! Exact Bernoulli numbers via the defining sum recurrence,
//! `sum_{j=0}^{n} C(n+1, j) B_j = 0`, with the `B_1 = -1/2` convention.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `B_0 .. B_n_max` as exact rationals. `n_max` must be even (or 0).
pub fn bernoulli_numbers(n_max: u64) -> Result<Vec<BigRational>> {
    if !n_max.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "n_max must be even, got {n_max}"
        )));
    }
    Ok(bernoulli_upto(n_max))
}

pub(crate) fn bernoulli_upto(n_max: u64) -> Vec<BigRational> {
    let n = n_max as usize;
    let mut b = vec![BigRational::zero(); n + 1];
    b[0] = BigRational::one();
    if n >= 1 {
        b[1] = BigRational::new(BigInt::from(-1), BigInt::from(2));
    }
    for m in (2..=n).step_by(2) {
        // row of binomials C(m+1, j), built incrementally
        let mut binom = BigInt::one();
        let mut sum = BigRational::zero();
        for (j, b_j) in b.iter().enumerate().take(m) {
            if j > 0 {
                binom = &binom * BigInt::from((m + 2 - j) as u64) / BigInt::from(j as u64);
            }
            if !b_j.is_zero() {
                sum += BigRational::from_integer(binom.clone()) * b_j;
            }
        }
        b[m] = -sum / BigRational::from_integer(BigInt::from((m + 1) as u64));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_values() {
        let b = bernoulli_numbers(12).unwrap();
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert_eq!(b[10], rat(5, 66));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        let b = bernoulli_numbers(20).unwrap();
        for j in (3..=19).step_by(2) {
            assert!(b[j].is_zero(), "B_{j} = {}", b[j]);
        }
    }

    #[test]
    fn odd_n_max_rejected() {
        assert!(bernoulli_numbers(7).is_err());
    }

    #[test]
    fn denominators_satisfy_von_staudt_clausen() {
        // denominator of B_2k equals the product of primes p with (p-1) | 2k
        let b = bernoulli_numbers(30).unwrap();
        for k in 1..=15u64 {
            let n = 2 * k;
            let mut prod = BigInt::one();
            for p in 2..=(n + 1) {
                let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
                if is_prime && n % (p - 1) == 0 {
                    prod *= BigInt::from(p);
                }
            }
            let den = b[n as usize].denom().clone();
            assert_eq!(den, prod, "denominator of B_{n}");
        }
    }
}
