//! Deterministic cross-module consistency checks.

use holder_core::norms::{bound_from_norms_closed, Exponent};
use holder_core::numerics::{
    gamma_reference, pi_value, zeta_even_closed_form, zeta_reference, Real,
};
use holder_core::special::gamma_upper_bound;
use holder_core::zeta::{odd_zeta_bound, zeta_table};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn even_zeta_enclosures_contain_closed_forms() {
    let prec = 256;
    let pi = pi_value(prec + 32).unwrap();
    for two_k in (2..=30u64).step_by(2) {
        let q = zeta_even_closed_form(two_k).unwrap();
        let exact = Real::from_ratio(&q, prec + 32).mul(&pi.pow_u64(two_k));
        let enc = zeta_reference(&BigRational::from_integer(BigInt::from(two_k)), prec).unwrap();
        // widen by the closed form's own evaluation rounding
        let slop = exact.abs().mul_pow2(-(prec as i64) - 16);
        assert!(enc.widened(&slop).contains(&exact), "2k = {two_k}: {enc}");
    }
}

#[test]
fn gamma_recurrence_across_enclosures() {
    for k in 0..10u64 {
        let x = rat(3 + 2 * k as i64, 2);
        let gx = gamma_reference(&x, 192).unwrap();
        let gx1 = gamma_reference(&(&x + BigRational::from_integer(BigInt::from(1))), 192).unwrap();
        let x_real = Real::from_ratio(&x, 208);
        let diff = gx1.estimate.sub(&gx.estimate.mul(&x_real)).abs();
        let allowed = gx1
            .error_bound
            .add(&gx.error_bound.mul(&x_real))
            .add(&gx1.estimate.abs().mul_pow2(-180));
        assert!(diff <= allowed, "x = {x}");
    }
}

#[test]
fn gamma_bound_equality_margin_at_integers() {
    for y in 2..=12u64 {
        let y_rat = BigRational::from_integer(BigInt::from(y));
        let (_, bound) = gamma_upper_bound(&y_rat, 256).unwrap();
        let reference =
            gamma_reference(&(&y_rat + BigRational::from_integer(BigInt::from(1))), 256).unwrap();
        let rel = bound
            .sub(&reference.estimate)
            .abs()
            .div(&reference.estimate);
        assert!(
            rel < Real::parse_decimal("1e-30", 64).unwrap(),
            "y = {y}: rel {}",
            rel.to_decimal(3)
        );
    }
}

#[test]
fn table_ratios_squeeze_between_neighbor_zetas() {
    let rows = zeta_table(8, 192).unwrap();
    for row in &rows {
        assert!(row.zeta_value.upper() <= row.bound_numeric, "k = {}", row.k);
        let upper_neighbor = zeta_reference(&rat(2 * row.k as i64, 1), 192).unwrap();
        assert!(row.bound_numeric <= upper_neighbor.upper(), "k = {}", row.k);
    }
}

#[test]
fn interpolated_bound_meets_endpoints() {
    // as s walks from l to m, the closed-endpoint diagnostic recovers the
    // endpoint norms and interior values stay between the endpoint products
    let prec = 160;
    let norm_l = Real::parse_decimal("1.7", prec).unwrap();
    let norm_m = Real::parse_decimal("1.1", prec).unwrap();
    let l = Exponent::from_integer(1).unwrap();
    let m = Exponent::from_integer(3).unwrap();
    let at_l = bound_from_norms_closed(&norm_l, &norm_m, &l, &l, &m).unwrap();
    assert_eq!(at_l, norm_l);
    let at_m = bound_from_norms_closed(&norm_l, &norm_m, &l, &m, &m).unwrap();
    let expect = norm_m.pow_u64(3);
    assert!(at_m.sub(&expect).abs().msb() < expect.msb() - 150);
    // log-linearity in s: value at the midpoint equals the geometric mean
    let mid = Exponent::from_integer(2).unwrap();
    let at_mid = bound_from_norms_closed(&norm_l, &norm_m, &l, &mid, &m).unwrap();
    let geo = at_l.mul(&at_m).sqrt();
    assert!(at_mid.sub(&geo).abs().msb() < geo.msb() - 150);
}

#[test]
fn odd_bound_is_strictly_above_reference() {
    for k in 1..=12u32 {
        let bound = odd_zeta_bound(k, 192).unwrap();
        let z = zeta_reference(&rat(2 * k as i64 + 1, 1), 192).unwrap();
        assert!(z.upper() < bound, "k = {k}");
    }
}

#[test]
fn pairwise_product_sum_capped_on_samples() {
    // e2 = sum_{i<j} a_i a_j = (1 - sum a_i^2)/2 never exceeds (n-1)/(2n),
    // with equality at the centroid
    use holder_core::simplex::{pairwise_sum_bound, SimplexPoint};
    use rand::{Rng, SeedableRng};
    let prec = 128;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
    for n in 3..=8usize {
        let cap = Real::from_ratio(&pairwise_sum_bound(n as u32).unwrap(), prec);
        let e2 = |p: &SimplexPoint| {
            let sum_sq = p
                .coords()
                .iter()
                .fold(Real::zero(prec), |acc, c| acc.add(&c.mul(c)));
            Real::one(prec).sub(&sum_sq).mul_pow2(-1)
        };
        for _ in 0..500 {
            let raw: Vec<Real> = (0..n)
                .map(|_| Real::from_f64(rng.random_range(0.001..1.0f64), prec))
                .collect();
            let p = SimplexPoint::normalized(&raw, prec).unwrap();
            assert!(e2(&p) <= cap.add(&cap.mul_pow2(-100)), "n = {n}");
        }
        let margin = cap.sub(&e2(&SimplexPoint::centroid(n, prec))).abs();
        assert!(
            margin < Real::parse_decimal("1e-6", 64).unwrap(),
            "centroid margin at n = {n}"
        );
    }
}
