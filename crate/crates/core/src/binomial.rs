//! Binomial moment sums `sum_k C(N,k) k^s` — exact for integer `s` via
//! Stirling numbers, bounded for fractional `s` in `[1,2]` by interpolating
//! between the first two moment identities
//! `sum C(N,k) k = N 2^(N-1)` and `sum C(N,k) k^2 = 2^(N-2)(N + N^2)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::Real;

/// `C(n, k)` as an exact integer.
pub fn binomial_coefficient(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Stirling numbers of the second kind `S(s, j)` for `j = 0..=s`,
/// by the triangular recurrence. Computed per call; no shared state.
pub fn stirling2_row(s: u64) -> Vec<BigUint> {
    let s = s as usize;
    let mut row = vec![BigUint::zero(); s + 1];
    row[0] = BigUint::one();
    for n in 1..=s {
        // downward in j so the previous row is still available
        for j in (1..=n).rev() {
            let carry = row[j - 1].clone();
            row[j] = &row[j] * BigUint::from(j) + carry;
        }
        row[0] = BigUint::zero();
    }
    row
}

/// Exact `sum_{k=0}^{N} C(N,k) k^s` for integer `s >= 0`, via the Stirling
/// expansion `sum_j S(s,j) N!/(N-j)! 2^(N-j)`.
pub fn binomial_moment_exact(n: u64, s: u64) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let stirling = stirling2_row(s);
    let mut acc = BigUint::zero();
    let mut falling = BigUint::one(); // N (N-1) ... (N-j+1)
    for (j, s_val) in stirling.iter().enumerate() {
        let j = j as u64;
        if j > n {
            break;
        }
        if j > 0 {
            falling *= BigUint::from(n - j + 1);
        }
        if !s_val.is_zero() {
            acc += (s_val * &falling) << (n - j) as usize;
        }
    }
    Ok(acc)
}

/// Exponents of the three factors `N`, `N + N^2`, and `2` in the bound:
/// `(2 - s, s - 1, N - s)`, exact. Affine in `s`, which the log-linearity
/// property checks directly.
pub fn bound_exponents(n: u64, s: &BigRational) -> (BigRational, BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    let n_rat = BigRational::from_integer(BigInt::from(n));
    (&two - s, s - &one, &n_rat - s)
}

/// `N^(2-s) (N + N^2)^(s-1) 2^(N-s)` for rational `s` in `[1, 2]`.
/// Equals the exact moment at the endpoints.
pub fn binomial_moment_bound(n: u64, s: &BigRational, prec: u32) -> Result<Real> {
    if n < 1 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if s < &one || s > &two {
        return Err(Error::InvalidArgument(format!(
            "the bound covers 1 <= s <= 2 only, got s = {s}"
        )));
    }
    // exact endpoints
    if s == &one {
        return Ok(Real::from_biguint(BigUint::from(n), prec).mul_pow2(n as i64 - 1));
    }
    if s == &two {
        let m2 = BigUint::from(n) + BigUint::from(n) * BigUint::from(n);
        return Ok(Real::from_biguint(m2, prec).mul_pow2(n as i64 - 2));
    }
    let w = prec + 16;
    let (e_n, e_m, _) = bound_exponents(n, s);
    let base_n = Real::from_u64(n, w);
    let base_m = Real::from_u64(n + n * n, w);
    // 2^(N-s) as exact 2^(N-2) times 2^(2-s)
    let two_part = Real::from_u64(2, w)
        .pow_rational(&(&two - s))
        .mul_pow2(n as i64 - 2);
    Ok(base_n
        .pow_rational(&e_n)
        .mul(&base_m.pow_rational(&e_m))
        .mul(&two_part)
        .with_prec(prec))
}

/// Brute-force oracle: direct high-precision summation with exact binomial
/// coefficients. `N <= 10^4`.
pub fn binomial_moment_brute(n: u64, s: &BigRational, prec: u32) -> Result<Real> {
    if !(1..=10_000).contains(&n) {
        return Err(Error::InvalidArgument(format!("N = {n} outside 1..=10^4")));
    }
    if s < &BigRational::zero() {
        return Err(Error::InvalidArgument("s must be >= 0".into()));
    }
    let w = prec + 16;
    let mut acc = Real::zero(w);
    // k = 0 contributes only at s = 0 (0^0 = 1)
    if s.is_zero() {
        acc = Real::one(w);
    }
    let mut coeff = BigUint::one();
    for k in 1..=n {
        // C(N,k) from C(N,k-1)
        coeff = coeff * BigUint::from(n - k + 1) / BigUint::from(k);
        let term = Real::from_u64(k, w).pow_rational(s);
        acc = acc.add(&Real::from_biguint(coeff.clone(), w).mul(&term));
    }
    Ok(acc.with_prec(prec))
}
