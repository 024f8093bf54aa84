//! Gamma, Beta, and Lp-integral upper bounds via norm interpolation between
//! the two nearest integer exponents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::norms::BoundReport;
use crate::numerics::{factorial, gamma_reference, integrate, EnclosedValue, Real};

/// The integer bracket `l <= y < l + 1` used by the Gamma and Beta bounds.
/// Integer `y` sits in the equality regime `y = l`. The Beta bound brackets
/// its two arguments independently; the floor of their sum plays no role in
/// the final formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorBracket {
    pub y: BigRational,
    pub l: u64,
    pub m: u64,
}

impl FloorBracket {
    pub fn new(y: &BigRational) -> Result<Self> {
        if !y.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "floor bracket needs y > 0, got {y}"
            )));
        }
        let l =
            y.floor().numer().to_u64().ok_or_else(|| {
                Error::InvalidArgument(format!("floor of {y} does not fit in u64"))
            })?;
        if l < 1 {
            return Err(Error::InvalidArgument(format!("floor of {y} is below 1")));
        }
        Ok(FloorBracket {
            y: y.clone(),
            l,
            m: l + 1,
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.y.is_integer()
    }
}

/// `Gamma(y+1) <= l! (l+1)^(y-l)` for `y > 1`, with equality at integers.
pub fn gamma_upper_bound(y: &BigRational, prec: u32) -> Result<(FloorBracket, Real)> {
    if y <= &BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "the bound requires y > 1, got {y}"
        )));
    }
    let bracket = FloorBracket::new(y)?;
    let fact = Real::from_biguint(factorial(bracket.l), prec);
    let bound = if bracket.is_degenerate() {
        fact
    } else {
        let frac = y - BigRational::from_integer(BigInt::from(bracket.l));
        fact.mul(&Real::from_u64(bracket.l + 1, prec).pow_rational(&frac))
    };
    Ok((bracket, bound))
}

/// `B(x+1, y+1) <= l! m! (l+1)^(x-l) (m+1)^(y-m) / (l+m)!`
/// with `l = floor(x) >= 1`, `m = floor(y) >= 1`.
pub fn beta_upper_bound(x: &BigRational, y: &BigRational, prec: u32) -> Result<Real> {
    let bx = FloorBracket::new(x)?;
    let by = FloorBracket::new(y)?;
    let w = prec + 16;
    let num = factorial(bx.l) * factorial(by.l);
    let den = factorial(bx.l + by.l);
    let mut bound = Real::from_ratio(&BigRational::new(BigInt::from(num), BigInt::from(den)), w);
    if !bx.is_degenerate() {
        let frac = x - BigRational::from_integer(BigInt::from(bx.l));
        bound = bound.mul(&Real::from_u64(bx.l + 1, w).pow_rational(&frac));
    }
    if !by.is_degenerate() {
        let frac = y - BigRational::from_integer(BigInt::from(by.l));
        bound = bound.mul(&Real::from_u64(by.l + 1, w).pow_rational(&frac));
    }
    Ok(bound.with_prec(prec))
}

/// Reference enclosure for `B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y)`.
pub fn beta_reference(x: &BigRational, y: &BigRational, prec: u32) -> Result<EnclosedValue> {
    let gx = gamma_reference(x, prec)?;
    let gy = gamma_reference(y, prec)?;
    let gxy = gamma_reference(&(x + y), prec)?;
    let estimate = gx.estimate.mul(&gy.estimate).div(&gxy.estimate);
    let rel = gx
        .error_bound
        .div(&gx.estimate)
        .add(&gy.error_bound.div(&gy.estimate))
        .add(&gxy.error_bound.div(&gxy.estimate));
    let err = estimate
        .abs()
        .mul(&rel)
        .mul(&Real::from_u64(2, 64))
        .add(&estimate.abs().mul_pow2(-(prec as i64) + 8));
    Ok(EnclosedValue::new(estimate, err.with_prec(64)))
}

/// `int_a^b f^s <= (int f)^(2-s) (int f^2)^(s-1)` for `1 < s < 2` and
/// nonnegative `f`, each integral enclosed by quadrature at tolerance `tol`.
pub fn lp_integral_bound(
    f: &dyn Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    s: &BigRational,
    tol: &Real,
    prec: u32,
) -> Result<BoundReport> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if s <= &one || s >= &two {
        return Err(Error::ExponentOrder(format!("need 1 < s < 2, got {s}")));
    }
    let fs = |x: &Real| f(x).pow_rational(s);
    let f2 = |x: &Real| {
        let v = f(x);
        v.mul(&v)
    };
    let lhs = integrate(&fs, a, b, tol, prec)?;
    let i1 = integrate(f, a, b, tol, prec)?;
    let i2 = integrate(&f2, a, b, tol, prec)?;
    let rhs = i1
        .estimate
        .pow_rational(&(&two - s))
        .mul(&i2.estimate.pow_rational(&(s - &one)));
    // slack: the lhs enclosure width plus first-order propagation of the
    // integral enclosures through the rhs, plus the working tolerance
    let mut slack = rhs
        .abs()
        .max_value(lhs.estimate.abs())
        .mul_pow2(-((prec / 2) as i64));
    slack = slack.add(&lhs.error_bound);
    if !i1.estimate.is_zero() && !i2.estimate.is_zero() {
        let rel = i1
            .error_bound
            .div(&i1.estimate)
            .add(&i2.error_bound.div(&i2.estimate));
        slack = slack.add(&rhs.abs().mul(&rel).mul(&Real::from_u64(2, 64)));
    }
    Ok(BoundReport::verify_with_tolerance(
        lhs.estimate,
        rhs,
        slack,
        prec,
    ))
}

/// Named nonnegative test integrands for the Lp bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestFunction {
    Sin,
    X,
    XSquared,
    ExpNeg,
}

impl TestFunction {
    pub fn eval(&self, x: &Real) -> Real {
        match self {
            TestFunction::Sin => x.sin(),
            TestFunction::X => x.clone(),
            TestFunction::XSquared => x.mul(x),
            TestFunction::ExpNeg => x.neg().exp(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestFunction::Sin => "sin",
            TestFunction::X => "x",
            TestFunction::XSquared => "x^2",
            TestFunction::ExpNeg => "exp(-x)",
        }
    }
}

impl std::str::FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sin" => Ok(TestFunction::Sin),
            "x" => Ok(TestFunction::X),
            "x2" | "x^2" | "xsq" => Ok(TestFunction::XSquared),
            "exp-neg" | "exp(-x)" | "expneg" => Ok(TestFunction::ExpNeg),
            other => Err(Error::Parse(other.into())),
        }
    }
}

/// The sin bound over `[0, pi/2]` across a grid of exponents.
pub fn sin_power_table(s_grid: &[BigRational], tol: &Real, prec: u32) -> Result<Vec<BoundReport>> {
    let half_pi = crate::numerics::real::pi(prec).mul_pow2(-1);
    let f = |x: &Real| x.sin();
    s_grid
        .iter()
        .map(|s| lp_integral_bound(&f, &Real::zero(prec), &half_pi, s, tol, prec))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::real::pi;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn dec(s: &str) -> Real {
        Real::parse_decimal(s, 256).unwrap()
    }

    #[test]
    fn gamma_bound_equality_at_integers() {
        // integer y: the bound is Gamma(y+1) = y! itself
        let (bracket, bound) = gamma_upper_bound(&rat(2, 1), 192).unwrap();
        assert!(bracket.is_degenerate());
        assert_eq!(bound, Real::from_u64(2, 192));
        let (_, bound) = gamma_upper_bound(&rat(5, 1), 192).unwrap();
        assert_eq!(bound, Real::from_u64(120, 192));
    }

    #[test]
    fn gamma_bound_dominates_reference() {
        // y = 1.5: 1! * 2^0.5 vs Gamma(2.5)
        let (bracket, bound) = gamma_upper_bound(&rat(3, 2), 256).unwrap();
        assert_eq!((bracket.l, bracket.m), (1, 2));
        let expect = Real::from_u64(2, 256).sqrt();
        assert_eq!(bound, expect);
        let reference = gamma_reference(&rat(5, 2), 256).unwrap();
        assert!(reference.upper() <= bound);
        // y = 3.5: 3! * 4^0.5 = 12 vs Gamma(4.5) ~ 11.6317
        let (_, bound) = gamma_upper_bound(&rat(7, 2), 256).unwrap();
        let diff = bound.sub(&Real::from_u64(12, 256)).abs();
        assert!(diff.is_zero() || diff.msb() < -240);
        let reference = gamma_reference(&rat(9, 2), 256).unwrap();
        assert!(dec("11.631728396567").sub(&reference.estimate).abs() < dec("1e-12"));
        assert!(reference.upper() <= bound);
    }

    #[test]
    fn gamma_bound_rejects_y_at_most_one() {
        assert!(gamma_upper_bound(&rat(1, 1), 128).is_err());
        assert!(gamma_upper_bound(&rat(1, 2), 128).is_err());
    }

    #[test]
    fn gamma_bound_is_continuous_across_integers() {
        // left limit at y = l+1 equals the value of the next bracket
        for l in 2..=10u64 {
            // exact identity: l! (l+1)^1 = (l+1)!
            assert_eq!(
                factorial(l) * num_bigint::BigUint::from(l + 1),
                factorial(l + 1)
            );
            // numeric approach from the left
            let eps = rat(1, 1_000_000_000);
            let y = BigRational::from_integer(BigInt::from(l + 1)) - &eps;
            let (bracket, near) = gamma_upper_bound(&y, 192).unwrap();
            assert_eq!(bracket.l, l);
            let at = Real::from_biguint(factorial(l + 1), 192);
            let rel = near.sub(&at).abs().div(&at);
            // (l+1)^eps - 1 ~ eps ln(l+1)
            assert!(
                rel < dec("1e-8"),
                "jump at {}: {}",
                l + 1,
                rel.to_decimal(3)
            );
        }
    }

    #[test]
    fn beta_bound_integer_case() {
        // x = y = 1: 1!1!/2! = 1/2 >= B(2,2) = 1/6
        let bound = beta_upper_bound(&rat(1, 1), &rat(1, 1), 192).unwrap();
        assert_eq!(bound, Real::from_u64(2, 192).recip());
        let reference = beta_reference(&rat(2, 1), &rat(2, 1), 192).unwrap();
        let sixth = Real::from_u64(6, 192).recip();
        assert!(
            reference.contains(&sixth.with_prec(192))
                || reference.estimate.sub(&sixth).abs().msb() < -150
        );
        assert!(reference.upper() <= bound);
    }

    #[test]
    fn beta_bound_half_integer_cases() {
        // x = y = 1.5: (1 * 1 * sqrt2 * sqrt2) / 2 = 1
        let bound = beta_upper_bound(&rat(3, 2), &rat(3, 2), 256).unwrap();
        let err = bound.sub(&Real::one(256)).abs();
        assert!(err.is_zero() || err.msb() < -240, "bound {bound}");
        // reference B(2.5, 2.5) ~ 0.0736310778
        let reference = beta_reference(&rat(5, 2), &rat(5, 2), 256).unwrap();
        assert!(reference.estimate.sub(&dec("0.073631077818511")).abs() < dec("1e-12"));
        assert!(reference.upper() <= bound);

        // x = 2.5, y = 1.5: (2! 1! / 3!) 3^0.5 2^0.5 = sqrt(6)/3
        let bound = beta_upper_bound(&rat(5, 2), &rat(3, 2), 256).unwrap();
        let expect = Real::from_u64(6, 256).sqrt().div(&Real::from_u64(3, 256));
        let err = bound.sub(&expect).abs();
        assert!(err.msb() < expect.msb() - 240);
        assert!(bound.sub(&dec("0.81649658092773")).abs() < dec("1e-13"));
        let reference = beta_reference(&rat(7, 2), &rat(5, 2), 256).unwrap();
        assert!(reference.estimate.sub(&dec("0.036816")).abs() < dec("1e-6"));
        assert!(reference.upper() <= bound);
    }

    #[test]
    fn beta_bound_rejects_floor_below_one() {
        assert!(beta_upper_bound(&rat(1, 2), &rat(2, 1), 128).is_err());
        assert!(beta_upper_bound(&rat(2, 1), &rat(9, 10), 128).is_err());
    }

    #[test]
    fn sin_three_halves_reproduces_reference_pair() {
        let prec = 256;
        let half_pi = pi(prec).mul_pow2(-1);
        let f = |x: &Real| x.sin();
        let tol = dec("1e-13").with_prec(64);
        let report =
            lp_integral_bound(&f, &Real::zero(prec), &half_pi, &rat(3, 2), &tol, prec).unwrap();
        assert!(report.holds, "{report}");
        assert!(
            report.lhs.sub(&dec("0.87401918476404")).abs() < dec("2e-13"),
            "lhs {}",
            report.lhs
        );
        assert!(
            report.rhs.sub(&dec("0.88622692545276")).abs() < dec("2e-13"),
            "rhs {}",
            report.rhs
        );
        // rhs = sqrt(int sin * int sin^2) = sqrt(pi/4) = sqrt(pi)/2
        let expect = pi(prec).sqrt().mul_pow2(-1);
        assert!(report.rhs.sub(&expect).abs() < dec("1e-12"));
    }

    #[test]
    fn constant_integrand_is_equality() {
        let prec = 192;
        let c = Real::parse_decimal("0.8", prec).unwrap();
        let f = move |_: &Real| c.clone();
        let tol = dec("1e-20").with_prec(64);
        let report = lp_integral_bound(
            &f,
            &Real::zero(prec),
            &Real::one(prec),
            &rat(7, 5),
            &tol,
            prec,
        )
        .unwrap();
        assert!(report.holds);
        let gap = report.relative_gap();
        assert!(gap < dec("1e-18"), "gap {gap}");
    }

    #[test]
    fn linear_integrand_three_halves() {
        // f(x) = x on [0,1], s = 3/2: lhs = 2/5, rhs = sqrt(1/6)
        let prec = 192;
        let f = |x: &Real| x.clone();
        let tol = dec("1e-15").with_prec(64);
        let report = lp_integral_bound(
            &f,
            &Real::zero(prec),
            &Real::one(prec),
            &rat(3, 2),
            &tol,
            prec,
        )
        .unwrap();
        assert!(report.holds);
        let lhs_expect = Real::parse_decimal("0.4", prec).unwrap();
        assert!(report.lhs.sub(&lhs_expect).abs() < dec("1e-13"));
        let rhs_expect = Real::from_u64(6, prec).recip().sqrt();
        assert!(report.rhs.sub(&rhs_expect).abs() < dec("1e-13"));
    }

    #[test]
    fn lp_bound_rejects_endpoint_exponents() {
        let f = |x: &Real| x.clone();
        let tol = dec("1e-10").with_prec(64);
        for s in [rat(1, 1), rat(2, 1), rat(5, 2)] {
            assert!(
                lp_integral_bound(&f, &Real::zero(128), &Real::one(128), &s, &tol, 128).is_err()
            );
        }
    }

    #[test]
    fn sin_table_holds_across_grid() {
        let grid: Vec<BigRational> = vec![rat(101, 100), rat(3, 2), rat(19, 10)];
        let tol = dec("1e-10").with_prec(64);
        let rows = sin_power_table(&grid, &tol, 160).unwrap();
        for (row, s) in rows.iter().zip(&grid) {
            assert!(row.holds, "s={s}: {row}");
            assert!(row.margin.is_positive(), "margin at s={s}");
        }
        // near s = 1 both sides approach the integral of sin, i.e. 1
        assert!(rows[0].lhs.sub(&Real::one(160)).abs() < dec("0.02"));
        assert!(rows[0].rhs.sub(&Real::one(160)).abs() < dec("0.02"));
    }

    #[test]
    fn battery_of_smooth_integrands() {
        let prec = 160;
        let tol = dec("1e-9").with_prec(64);
        let fns = [
            TestFunction::Sin,
            TestFunction::X,
            TestFunction::XSquared,
            TestFunction::ExpNeg,
        ];
        for tf in fns {
            for num in [11i64, 15, 19] {
                let s = rat(num, 10);
                let f = move |x: &Real| tf.eval(x);
                let report =
                    lp_integral_bound(&f, &Real::zero(prec), &Real::one(prec), &s, &tol, prec)
                        .unwrap();
                assert!(report.holds, "{} at s={s}: {report}", tf.name());
            }
        }
    }

    #[test]
    fn test_function_parsing() {
        assert_eq!("sin".parse::<TestFunction>().unwrap(), TestFunction::Sin);
        assert_eq!(
            "x^2".parse::<TestFunction>().unwrap(),
            TestFunction::XSquared
        );
        assert!("tan".parse::<TestFunction>().is_err());
    }
}
