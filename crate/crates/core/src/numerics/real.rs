//! Arbitrary-precision binary floating point.
//!
//! A [`Real`] is `sign * mant * 2^exp` with the mantissa held to a per-value
//! precision of `prec` significant bits. Every operation rounds its result to
//! the larger precision of its operands using round-half-even, so a value
//! never silently drops below the precision it was created with. Rounding
//! error is at most 1 ulp per arithmetic operation and at most 2 ulp for the
//! transcendental functions (which run with internal guard bits).
//!
//! There are no NaNs or infinities: domain errors (division by zero, `ln` of
//! a non-positive value, roots of negatives) panic, and the operation layers
//! above validate their inputs first.

use std::cmp::Ordering;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default working precision in fractional bits.
pub const DEFAULT_PREC: u32 = 256;

/// Largest exponent-denominator routed through exact integer roots in
/// [`Real::pow_rational`]; larger denominators fall back to exp/ln.
const ROOT_DEN_MAX: u64 = 64;

#[derive(Clone, Debug)]
pub struct Real {
    sign: i8,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real {
            sign: 0,
            mant: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Real::from_u64(1, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Real::from_biguint(BigUint::from(v), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Real::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_biguint(v: BigUint, prec: u32) -> Self {
        let mut r = Real {
            sign: if v.is_zero() { 0 } else { 1 },
            mant: v,
            exp: 0,
            prec,
        };
        r.normalize();
        r
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let sign = match v.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        let mut r = Real {
            sign,
            mant: v.magnitude().clone(),
            exp: 0,
            prec,
        };
        r.normalize();
        r
    }

    /// Exact conversion; panics on NaN or infinite input.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "cannot convert {v} to Real");
        if v == 0.0 {
            return Real::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let mut r = Real {
            sign,
            mant: BigUint::from(mant),
            exp,
            prec,
        };
        r.normalize();
        r
    }

    /// `2^k`, exact.
    pub fn pow2(k: i64, prec: u32) -> Self {
        Real {
            sign: 1,
            mant: BigUint::one(),
            exp: k,
            prec,
        }
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let num = Real::from_bigint(r.numer(), prec);
        if r.denom().is_one() {
            return num;
        }
        let den = Real::from_bigint(r.denom(), prec);
        num.div(&den)
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> BigRational {
        if self.sign == 0 {
            return BigRational::zero();
        }
        let m = BigInt::from_biguint(
            if self.sign < 0 {
                Sign::Minus
            } else {
                Sign::Plus
            },
            self.mant.clone(),
        );
        if self.exp >= 0 {
            BigRational::from_integer(m << self.exp as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut r = self.clone();
        r.prec = prec;
        r.round();
        r
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.sign = 0;
            self.exp = 0;
            return;
        }
        self.round();
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    /// Round the mantissa to `self.prec` bits, half-even.
    fn round(&mut self) {
        let bits = self.mant.bits();
        if bits <= self.prec as u64 {
            return;
        }
        let drop = bits - self.prec as u64;
        let dropped = &self.mant & ((BigUint::one() << drop) - BigUint::one());
        self.mant >>= drop;
        self.exp += drop as i64;
        let half = BigUint::one() << (drop - 1);
        let round_up = match dropped.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.mant.is_odd(),
        };
        if round_up {
            self.mant += 1u32;
            // carry may push us to prec+1 bits (e.g. 0b111.. -> 0b1000..)
            if self.mant.bits() > self.prec as u64 {
                let tz = self.mant.trailing_zeros().unwrap_or(0);
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        if self.mant.is_zero() {
            self.sign = 0;
            self.exp = 0;
        }
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.sign = r.sign.abs();
        r
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.sign == 0 {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    /// Magnitude helper: position of the most significant bit, i.e.
    /// `floor(log2 |x|)`; `i64::MIN` for zero.
    pub fn msb(&self) -> i64 {
        if self.sign == 0 {
            return i64::MIN;
        }
        self.exp + self.mant.bits() as i64 - 1
    }

    pub fn add(&self, other: &Real) -> Self {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 {
            return other.with_prec(prec);
        }
        if other.sign == 0 {
            return self.with_prec(prec);
        }
        // If the operands' bit ranges are wildly disjoint, replace the small
        // one by a sticky crumb just below the big one's rounding range.
        let span_cap = prec as i64 + 96;
        let (a, b) = (self, other);
        let gap_ab = a.exp - (b.exp + b.mant.bits() as i64);
        let gap_ba = b.exp - (a.exp + a.mant.bits() as i64);
        let crumb;
        let (a, b) = if gap_ab > span_cap {
            crumb = Real {
                sign: b.sign,
                mant: BigUint::one(),
                exp: a.exp - span_cap,
                prec: b.prec,
            };
            (a, &crumb)
        } else if gap_ba > span_cap {
            crumb = Real {
                sign: a.sign,
                mant: BigUint::one(),
                exp: b.exp - span_cap,
                prec: a.prec,
            };
            (&crumb, b)
        } else {
            (a, b)
        };
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as u64;
        let mb = &b.mant << (b.exp - e) as u64;
        let (sign, mant) = if a.sign == b.sign {
            (a.sign, ma + mb)
        } else {
            match ma.cmp(&mb) {
                Ordering::Greater => (a.sign, ma - mb),
                Ordering::Less => (b.sign, mb - ma),
                Ordering::Equal => (0, BigUint::zero()),
            }
        };
        let mut r = Real {
            sign,
            mant,
            exp: e,
            prec,
        };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &Real) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Real) -> Self {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 || other.sign == 0 {
            return Real::zero(prec);
        }
        let mut r = Real {
            sign: self.sign * other.sign,
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec,
        };
        r.normalize();
        r
    }

    pub fn div(&self, other: &Real) -> Self {
        assert!(other.sign != 0, "division by zero");
        let prec = self.prec.max(other.prec);
        if self.sign == 0 {
            return Real::zero(prec);
        }
        // Scale the numerator so the quotient keeps prec + 8 bits, then let
        // a sticky bit stand in for any nonzero remainder.
        let want = prec as i64 + 8;
        let shift = (want + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let (mut q, r) = num.div_rem(&other.mant);
        if !r.is_zero() {
            q |= BigUint::one();
        }
        let mut out = Real {
            sign: self.sign * other.sign,
            mant: q,
            exp: self.exp - other.exp - shift as i64,
            prec,
        };
        out.normalize();
        out
    }

    pub fn recip(&self) -> Self {
        Real::one(self.prec).div(self)
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        if self.sign != other.sign {
            return self.sign.cmp(&other.sign);
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = {
            let top_a = self.msb();
            let top_b = other.msb();
            if top_a != top_b {
                top_a.cmp(&top_b)
            } else {
                let e = self.exp.min(other.exp);
                let ma = &self.mant << (self.exp - e) as u64;
                let mb = &other.mant << (other.exp - e) as u64;
                ma.cmp(&mb)
            }
        };
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    pub fn min_value(self, other: Real) -> Real {
        if self.cmp_value(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn max_value(self, other: Real) -> Real {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// Floor to an integer.
    pub fn floor_bigint(&self) -> BigInt {
        if self.sign == 0 {
            return BigInt::zero();
        }
        let mag = if self.exp >= 0 {
            BigInt::from_biguint(Sign::Plus, &self.mant << self.exp as u64)
        } else {
            BigInt::from_biguint(
                Sign::Plus,
                &self.mant >> (-self.exp).min(self.mant.bits() as i64 + 1) as u64,
            )
        };
        if self.sign > 0 {
            mag
        } else {
            // negative: floor moves away from zero when there is a fraction
            let exact =
                self.exp >= 0 || self.mant.trailing_zeros().unwrap_or(0) as i64 >= -self.exp;
            if exact {
                -mag
            } else {
                -mag - 1
            }
        }
    }

    pub fn is_integer(&self) -> bool {
        self.sign == 0 || self.exp >= 0
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let bits = self.mant.bits();
        let keep = 64.min(bits);
        let top: BigUint = &self.mant >> (bits - keep);
        let top = top.to_u64().unwrap() as f64;
        let scale = (self.exp + (bits - keep) as i64) as f64;
        self.sign as f64 * top * scale.exp2()
    }

    /// Integer power by squaring; intermediate rounding at guard precision.
    pub fn pow_u64(&self, mut k: u64) -> Self {
        let prec = self.prec;
        if k == 0 {
            return Real::one(prec);
        }
        let guard = prec + 32 + 2 * (64 - k.leading_zeros());
        let mut base = self.with_prec(guard);
        let mut acc = Real::one(guard);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.with_prec(prec)
    }

    pub fn pow_i64(&self, k: i64) -> Self {
        if k >= 0 {
            self.pow_u64(k as u64)
        } else {
            self.pow_u64(k.unsigned_abs()).recip()
        }
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Self {
        self.nth_root(2)
    }

    /// `x^(1/n)` for `x >= 0`, by exact integer root with a sticky bit.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1);
        assert!(self.sign >= 0, "root of a negative value");
        if self.sign == 0 || n == 1 {
            return self.clone();
        }
        let prec = self.prec;
        let want = (prec as u64 + 16) * n as u64;
        let bits = self.mant.bits();
        let mut t = want.saturating_sub(bits) as i64;
        // make (exp - t) divisible by n
        let rem = (self.exp - t).rem_euclid(n as i64);
        t += rem;
        let scaled = &self.mant << t as u64;
        let root = scaled.nth_root(n);
        let exact = num_traits::Pow::pow(&root, n) == scaled;
        let mut mant = root;
        if !exact {
            mant |= BigUint::one();
        }
        let mut r = Real {
            sign: 1,
            mant,
            exp: (self.exp - t) / n as i64,
            prec,
        };
        r.normalize();
        r
    }

    /// `x^(a/b)` for `x >= 0`. Small denominators go through exact integer
    /// roots; anything else uses `exp(r * ln x)` with guard bits.
    pub fn pow_rational(&self, r: &BigRational) -> Self {
        assert!(self.sign >= 0, "rational power of a negative value");
        let prec = self.prec;
        if r.is_zero() {
            return Real::one(prec);
        }
        if self.sign == 0 {
            assert!(r.is_positive(), "zero to a negative power");
            return Real::zero(prec);
        }
        if r.is_integer() {
            if let Some(k) = r.numer().to_i64() {
                return self.pow_i64(k);
            }
        }
        let num = r.numer();
        let den = r.denom();
        let small = den.to_u64().is_some_and(|d| d <= ROOT_DEN_MAX)
            && num
                .magnitude()
                .to_u64()
                .is_some_and(|a| a.saturating_mul(self.mant.bits()) <= 64 * (prec as u64 + 32));
        if small {
            let a = num.magnitude().to_u64().unwrap();
            let b = den.to_u64().unwrap() as u32;
            let guard = prec + 16;
            let powed = self.with_prec(guard).pow_u64(a);
            let rooted = powed.nth_root(b);
            let out = if num.is_negative() {
                rooted.recip()
            } else {
                rooted
            };
            return out.with_prec(prec);
        }
        let guard = prec + 48;
        let ln = self.with_prec(guard).ln();
        let arg = ln.mul(&Real::from_ratio(r, guard));
        arg.exp().with_prec(prec)
    }

    /// Natural logarithm; panics unless `self > 0`.
    pub fn ln(&self) -> Self {
        assert!(self.sign > 0, "ln of a non-positive value");
        let prec = self.prec;
        let w = prec + 48;
        // x = f * 2^k with f in [1, 2)
        let k = self.msb();
        let f = self.mul_pow2(-k).with_prec(w);
        // ln f = 2 atanh((f-1)/(f+1)), t in [0, 1/3)
        let one = Real::one(w);
        let t = f.sub(&one).div(&f.add(&one));
        let mut sum = t.clone();
        let t2 = t.mul(&t);
        let mut term = t.clone();
        let mut n = 1u64;
        let limit = -(w as i64);
        while !term.is_zero() {
            term = term.mul(&t2);
            n += 2;
            let contrib = term.div(&Real::from_u64(n, w));
            if contrib.is_zero() || contrib.msb() < sum.msb() + limit {
                break;
            }
            sum = sum.add(&contrib);
        }
        let ln_f = sum.mul_pow2(1);
        let out = if k == 0 {
            ln_f
        } else {
            ln_f.add(&Real::from_i64(k, w).mul(&ln2(w)))
        };
        out.with_prec(prec)
    }

    /// `e^self`.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.sign == 0 {
            return Real::one(prec);
        }
        let w = prec + 64;
        let x = self.with_prec(w);
        // x = k ln2 + r, |r| <= ln2/2
        let l2 = ln2(w);
        let k_real = x.div(&l2);
        let k = (k_real.to_f64()).round() as i64;
        let r = x.sub(&Real::from_i64(k, w).mul(&l2));
        // halve until |r'| < 2^-10, then Taylor and square back
        let j = if r.is_zero() {
            0
        } else {
            (r.msb() + 11).max(0) as u32
        };
        let r = r.mul_pow2(-(j as i64));
        let mut term = Real::one(w);
        let mut sum = Real::one(w);
        let mut n = 1u64;
        loop {
            term = term.mul(&r).div(&Real::from_u64(n, w));
            if term.is_zero() || term.msb() < sum.msb() - w as i64 - 8 {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        let mut out = sum;
        for _ in 0..j {
            out = out.mul(&out);
        }
        out.mul_pow2(k).with_prec(prec)
    }

    /// Sine, with argument reduction by pi/2; accurate for moderate |x|.
    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        let w = prec + 48;
        if self.sign == 0 {
            return (Real::zero(prec), Real::one(prec));
        }
        let half_pi = pi(w + 16).mul_pow2(-1);
        let x = self.with_prec(w);
        let q_real = x.div(&half_pi);
        let q = q_real.to_f64().round() as i64;
        let r = x.sub(&Real::from_i64(q, w + 16).mul(&half_pi)).with_prec(w);
        let (s, c) = sin_cos_series(&r, w);
        let out = match q.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        (out.0.with_prec(prec), out.1.with_prec(prec))
    }

    /// Decimal rendering at `digits` significant figures, round-half-even.
    /// Trailing fractional zeros are trimmed.
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.sign == 0 {
            return "0".to_string();
        }
        let neg = self.sign < 0;
        // estimate floor(log10 |x|)
        let top = self.msb();
        let mut d = (top as i128 * 30103 / 100000) as i64;
        if top < 0 {
            d -= 1;
        }
        let (digits_str, d) = loop {
            let i = self.scaled_decimal_int(digits as i64 - 1 - d);
            let s = i.to_string();
            let len = s.len() as i64;
            if len == digits as i64 {
                break (s, d);
            }
            d += len - digits as i64;
        };
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if (-4..=20).contains(&d) {
            if d >= 0 {
                let int_len = (d + 1) as usize;
                if int_len >= digits {
                    out.push_str(&digits_str);
                    for _ in 0..int_len - digits {
                        out.push('0');
                    }
                } else {
                    out.push_str(&digits_str[..int_len]);
                    let frac = digits_str[int_len..].trim_end_matches('0');
                    if !frac.is_empty() {
                        out.push('.');
                        out.push_str(frac);
                    }
                }
            } else {
                out.push_str("0.");
                for _ in 0..(-d - 1) {
                    out.push('0');
                }
                out.push_str(digits_str.trim_end_matches('0'));
            }
        } else {
            out.push_str(&digits_str[..1]);
            let frac = digits_str[1..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
            out.push('e');
            out.push_str(&d.to_string());
        }
        out
    }

    /// Round-half-even of `|self| * 10^t` to an integer.
    /// `|self| * 10^t = mant * 5^t * 2^(exp + t)`.
    fn scaled_decimal_int(&self, t: i64) -> BigUint {
        let shift = self.exp + t;
        if t >= 0 {
            let n = &self.mant * num_traits::Pow::pow(&BigUint::from(5u32), t as u64);
            if shift >= 0 {
                n << shift as u64
            } else {
                div_pow2_half_even(&n, (-shift) as u64)
            }
        } else {
            let d5 = num_traits::Pow::pow(&BigUint::from(5u32), (-t) as u64);
            if shift >= 0 {
                div_half_even(&(&self.mant << shift as u64), &d5)
            } else {
                div_half_even(&self.mant, &(d5 << (-shift) as u64))
            }
        }
    }

    /// Exact hexadecimal form `[-]0x<mant>p<exp>` (mantissa is odd).
    pub fn to_hex_exact(&self) -> String {
        if self.sign == 0 {
            return "0x0p0".to_string();
        }
        format!(
            "{}0x{:x}p{}",
            if self.sign < 0 { "-" } else { "" },
            self.mant,
            self.exp
        )
    }

    /// Parse a plain decimal literal (optionally signed, optional fraction
    /// and exponent) exactly, then round to `prec` bits.
    pub fn parse_decimal(s: &str, prec: u32) -> Option<Real> {
        let r = parse_decimal_rational(s)?;
        Some(Real::from_ratio(&r, prec))
    }
}

/// Exact rational value of a decimal literal like `-12.34e-5`.
pub fn parse_decimal_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (neg, rest) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mant_part, exp_part) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let (int_part, frac_part) = match mant_part.find('.') {
        Some(i) => (&mant_part[..i], &mant_part[i + 1..]),
        None => (mant_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    if neg {
        num = -num;
    }
    let mut scale: i64 = -(frac_part.len() as i64);
    if let Some(e) = exp_part {
        scale += e.parse::<i64>().ok()?;
    }
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::Pow::pow(&ten, scale as u64))
    } else {
        BigRational::new(num, num_traits::Pow::pow(&ten, (-scale) as u64))
    };
    Some(r)
}

fn div_half_even(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    let twice = &r << 1u32;
    match twice.cmp(d) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

fn div_pow2_half_even(n: &BigUint, k: u64) -> BigUint {
    let q: BigUint = n >> k;
    let dropped = n & ((BigUint::one() << k) - BigUint::one());
    let half = BigUint::one() << (k - 1);
    match dropped.cmp(&half) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

fn sin_cos_series(r: &Real, w: u32) -> (Real, Real) {
    if r.is_zero() {
        return (Real::zero(w), Real::one(w));
    }
    let r2 = r.mul(r).neg();
    // sin
    let mut sin = r.clone();
    let mut term = r.clone();
    let mut n = 1u64;
    loop {
        term = term.mul(&r2).div(&Real::from_u64((n + 1) * (n + 2), w));
        n += 2;
        if term.is_zero() || term.msb() < -(w as i64) - 8 {
            break;
        }
        sin = sin.add(&term);
    }
    // cos
    let mut cos = Real::one(w);
    let mut term = Real::one(w);
    let mut n = 0u64;
    loop {
        term = term.mul(&r2).div(&Real::from_u64((n + 1) * (n + 2), w));
        n += 2;
        if term.is_zero() || term.msb() < -(w as i64) - 8 {
            break;
        }
        cos = cos.add(&term);
    }
    (sin, cos)
}

// ---------------------------------------------------------------------------
// shared constants (per-precision cache)

struct ConstCache {
    pi: Vec<(u32, Real)>,
    ln2: Vec<(u32, Real)>,
}

static CONSTS: Mutex<ConstCache> = Mutex::new(ConstCache {
    pi: Vec::new(),
    ln2: Vec::new(),
});

fn cache_lookup(
    slot: fn(&mut ConstCache) -> &mut Vec<(u32, Real)>,
    prec: u32,
    compute: fn(u32) -> Real,
) -> Real {
    {
        let mut guard = CONSTS.lock().unwrap();
        let v = slot(&mut guard);
        if let Some((_, r)) = v.iter().find(|(p, _)| *p >= prec) {
            return r.with_prec(prec);
        }
    }
    let fresh = compute(prec);
    let mut guard = CONSTS.lock().unwrap();
    let v = slot(&mut guard);
    v.push((prec, fresh.clone()));
    v.sort_by_key(|(p, _)| *p);
    v.truncate(8);
    fresh
}

/// pi to `prec` bits (error below an ulp), Machin's two-arctan formula
/// evaluated in integer arithmetic.
pub fn pi(prec: u32) -> Real {
    cache_lookup(|c| &mut c.pi, prec, compute_pi)
}

fn compute_pi(prec: u32) -> Real {
    let w = prec as u64 + 32;
    let a5 = arctan_recip_scaled(5, w);
    let a239 = arctan_recip_scaled(239, w);
    let val = BigInt::from(a5) * 16 - BigInt::from(a239) * 4;
    let mut r = Real::from_bigint(&val, prec);
    r.exp -= w as i64;
    r.normalize();
    r
}

/// `arctan(1/x) * 2^w`, truncated-series integer evaluation.
pub(crate) fn arctan_recip_scaled(x: u64, w: u64) -> BigUint {
    let x2 = BigUint::from(x) * BigUint::from(x);
    let mut term = (BigUint::one() << w) / BigUint::from(x);
    let mut acc = BigInt::from(term.clone());
    let mut n = 1u64;
    let mut positive = true;
    loop {
        term /= &x2;
        n += 2;
        positive = !positive;
        if term.is_zero() {
            break;
        }
        let t = BigInt::from(&term / BigUint::from(n));
        if positive {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc.to_biguint().expect("arctan is positive")
}

/// ln 2 to `prec` bits.
pub fn ln2(prec: u32) -> Real {
    cache_lookup(|c| &mut c.ln2, prec, compute_ln2)
}

fn compute_ln2(prec: u32) -> Real {
    // ln 2 = 2 atanh(1/3): sum 2/(3^(2k+1) (2k+1))
    let w = prec as u64 + 32;
    let three2 = BigUint::from(9u32);
    let mut term = (BigUint::one() << w) / BigUint::from(3u32);
    let mut acc = term.clone();
    let mut n = 1u64;
    loop {
        term /= &three2;
        n += 2;
        if term.is_zero() {
            break;
        }
        acc += &term / BigUint::from(n);
    }
    let mut r = Real::from_biguint(acc << 1u32, prec);
    r.exp -= w as i64;
    r.normalize();
    r
}

// ---------------------------------------------------------------------------
// trait impls

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && self.exp == other.exp && self.mant == other.mant
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::$inner(self, rhs)
            }
        }
        impl std::ops::$trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_matches_exact_rationals() {
        let cases = [
            (3.5, 0.125),
            (1.0, 3.0),
            (-2.75, 0.001953125),
            (1e10, -3.0517578125e-5),
            (7.0, -7.0),
        ];
        for (a, b) in cases {
            let ra = Real::from_f64(a, 128);
            let rb = Real::from_f64(b, 128);
            let qa = BigRational::from_f64(a).unwrap();
            let qb = BigRational::from_f64(b).unwrap();
            assert_eq!(ra.add(&rb).to_rational(), &qa + &qb, "add {a} {b}");
            assert_eq!(ra.sub(&rb).to_rational(), &qa - &qb, "sub {a} {b}");
            assert_eq!(ra.mul(&rb).to_rational(), &qa * &qb, "mul {a} {b}");
        }
    }

    #[test]
    fn division_error_below_one_ulp() {
        let a = Real::from_u64(1, 128);
        let b = Real::from_u64(3, 128);
        let q = a.div(&b);
        let err = (q.to_rational() - rat(1, 3)).abs();
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << 129u32);
        assert!(err < ulp, "1/3 error {err}");
    }

    #[test]
    fn rounding_is_half_even() {
        // 0b1001 at prec 3: drop 1 bit, tie, keep even -> 0b100 << 1
        let v = Real::from_biguint(BigUint::from(0b1001u32), 3);
        assert_eq!(v.to_rational(), BigRational::from_integer(BigInt::from(8)));
        // 0b1011 at prec 3: tie, kept 0b101 odd -> round up to 0b110
        let v = Real::from_biguint(BigUint::from(0b1011u32), 3);
        assert_eq!(v.to_rational(), BigRational::from_integer(BigInt::from(12)));
    }

    #[test]
    fn sqrt_squares_back() {
        for v in [2u64, 3, 5, 10, 1 << 40] {
            let x = Real::from_u64(v, 192);
            let s = x.sqrt();
            let err = (s.mul(&s).to_rational() - BigRational::from_integer(BigInt::from(v))).abs();
            let bound = BigRational::new(BigInt::from(v), BigInt::one() << 180u32);
            assert!(err < bound, "sqrt({v})^2 error {err}");
        }
    }

    #[test]
    fn nth_root_of_power_is_identity() {
        let x = Real::from_u64(17, 192);
        for n in [2u32, 3, 5, 7] {
            let y = x.pow_u64(n as u64).nth_root(n);
            let err = y.sub(&x).abs();
            assert!(err.is_zero() || err.msb() < x.msb() - 180, "root {n}");
        }
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [0.5f64, 1.0, 2.0, 3.25, 100.0, 1e-6] {
            let x = Real::from_f64(v, 192);
            let y = x.ln().exp();
            let err = y.sub(&x).abs();
            assert!(
                err.is_zero() || err.msb() < x.msb() - 180,
                "exp(ln {v}) error 2^{}",
                err.msb()
            );
        }
    }

    #[test]
    fn exp_handles_large_negative() {
        let x = Real::from_i64(-200, 192);
        let y = x.exp();
        // e^-200 ~ 1.384e-87
        let expect = Real::parse_decimal("1.3838965267367376e-87", 192).unwrap();
        let rel = y.sub(&expect).abs().div(&expect);
        assert!(rel.msb() < -50);
    }

    #[test]
    fn pow_rational_routes_agree() {
        // the integer-root path and the exp/ln path must coincide
        let x = Real::parse_decimal("2.7182818", 224).unwrap();
        for (a, b) in [(1i64, 3i64), (5, 4), (-3, 2), (7, 5), (2, 7)] {
            let r = rat(a, b);
            let via_root = x.pow_rational(&r);
            let guard = x.with_prec(272);
            let via_exp = guard
                .ln()
                .mul(&Real::from_ratio(&r, 272))
                .exp()
                .with_prec(224);
            let err = via_root.sub(&via_exp).abs();
            assert!(
                err.is_zero() || err.msb() < via_exp.msb() - 216,
                "pow {a}/{b} differs 2^{}",
                err.msb()
            );
        }
    }

    #[test]
    fn sin_known_values() {
        let p = pi(192);
        // sin(pi/6) = 1/2
        let x = p.div(&Real::from_u64(6, 192));
        let half = Real::from_ratio(&rat(1, 2), 192);
        let err = x.sin().sub(&half).abs();
        assert!(err.msb() < -180);
        // sin(pi/2) = 1
        let x = p.mul_pow2(-1);
        let err = x.sin().sub(&Real::one(192)).abs();
        assert!(err.is_zero() || err.msb() < -180);
    }

    #[test]
    fn decimal_format_basics() {
        let x = Real::from_f64(0.5, 64);
        assert_eq!(x.to_decimal(15), "0.5");
        let x = Real::from_u64(5120, 64);
        assert_eq!(x.to_decimal(15), "5120");
        let x = Real::from_f64(-0.125, 64);
        assert_eq!(x.to_decimal(3), "-0.125");
        let x = Real::from_u64(999999, 64);
        assert_eq!(x.to_decimal(3), "1000000");
        let x = Real::parse_decimal("1.33429770234112", 128).unwrap();
        assert_eq!(x.to_decimal(15), "1.33429770234112");
    }

    #[test]
    fn decimal_format_half_even() {
        // 0.125 at 2 digits: 12|5 tie -> even -> 0.12
        let x = Real::from_f64(0.125, 64);
        assert_eq!(x.to_decimal(2), "0.12");
        // 0.375 at 2 digits: 37|5 tie -> 38
        let x = Real::from_f64(0.375, 64);
        assert_eq!(x.to_decimal(2), "0.38");
    }

    #[test]
    fn decimal_roundtrip_is_stable_at_15_digits() {
        for s in [
            "1.20205690315959",
            "0.87401918476404",
            "123456.789012345",
            "9.99999999999999e-10",
        ] {
            let x = Real::parse_decimal(s, 128).unwrap();
            let printed = x.to_decimal(15);
            let y = Real::parse_decimal(&printed, 128).unwrap();
            assert_eq!(printed, y.to_decimal(15), "unstable for {s}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", ".", "1.2.3", "abc", "1e", "--3"] {
            assert!(Real::parse_decimal(s, 64).is_none(), "{s:?} parsed");
        }
    }

    #[test]
    fn floor_and_integer_checks() {
        assert_eq!(Real::from_f64(2.5, 64).floor_bigint(), BigInt::from(2));
        assert_eq!(Real::from_f64(-2.5, 64).floor_bigint(), BigInt::from(-3));
        assert_eq!(Real::from_f64(3.0, 64).floor_bigint(), BigInt::from(3));
        assert!(Real::from_u64(7, 64).is_integer());
        assert!(!Real::from_f64(7.25, 64).is_integer());
    }

    #[test]
    fn hex_form_is_exact_and_canonical() {
        let x = Real::from_f64(-3.5, 64);
        assert_eq!(x.to_hex_exact(), "-0x7p-1");
        assert_eq!(Real::zero(64).to_hex_exact(), "0x0p0");
    }

    #[test]
    fn negligible_addends_round_away() {
        // operands with wildly disjoint bit ranges take the sticky-crumb
        // path; the result still rounds to the dominant operand
        let big = Real::from_u64(1, 128).mul_pow2(400);
        let small = Real::from_u64(1, 128).mul_pow2(-400);
        assert_eq!(big.add(&small), big);
        assert_eq!(big.sub(&small), big);
        assert_eq!(small.add(&big), big);
    }
}
