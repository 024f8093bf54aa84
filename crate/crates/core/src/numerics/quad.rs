//! Adaptive Simpson quadrature with an interval-halving error estimate.
//!
//! Each interval is accepted once `|S2 - S1|/15` falls below its share of the
//! tolerance; the reported error bound is the sum of accepted estimates times
//! a safety factor of 4. Smooth integrands only.

use crate::error::{Error, Result};

use super::enclosure::EnclosedValue;
use super::real::Real;

const MAX_DEPTH: u32 = 48;
const MAX_INTERVALS: u64 = 400_000;

struct Quad<'a> {
    f: &'a dyn Fn(&Real) -> Real,
    prec: u32,
    est: Real,
    err: Real,
    budget: u64,
    failed: bool,
}

/// Enclosure of the integral of `f` over `[a, b]` with error at most `tol`.
pub fn integrate(
    f: &dyn Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    tol: &Real,
    prec: u32,
) -> Result<EnclosedValue> {
    integrate_with_budget(f, a, b, tol, prec, MAX_INTERVALS)
}

pub(crate) fn integrate_with_budget(
    f: &dyn Fn(&Real) -> Real,
    a: &Real,
    b: &Real,
    tol: &Real,
    prec: u32,
    budget: u64,
) -> Result<EnclosedValue> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if a >= b {
        return Err(Error::InvalidArgument(
            "integration bounds must satisfy a < b".into(),
        ));
    }
    let mut q = Quad {
        f,
        prec,
        est: Real::zero(prec),
        err: Real::zero(prec),
        budget,
        failed: false,
    };
    let fa = (q.f)(a);
    let fb = (q.f)(b);
    let m = a.add(b).mul_pow2(-1);
    let fm = (q.f)(&m);
    let whole = simpson(a, b, &fa, &fm, &fb);
    q.recurse(a, &m, b, &fa, &fm, &fb, &whole, tol, MAX_DEPTH);
    let enclosure = EnclosedValue::new(q.est.clone(), q.err.mul_pow2(2));
    if q.failed {
        Err(Error::QuadratureNoConvergence { best: enclosure })
    } else {
        Ok(enclosure)
    }
}

fn simpson(a: &Real, b: &Real, fa: &Real, fm: &Real, fb: &Real) -> Real {
    let six = Real::from_u64(6, fa.prec().max(a.prec()));
    b.sub(a).mul(&fa.add(&fm.mul_pow2(2)).add(fb)).div(&six)
}

impl Quad<'_> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        a: &Real,
        m: &Real,
        b: &Real,
        fa: &Real,
        fm: &Real,
        fb: &Real,
        whole: &Real,
        tol: &Real,
        depth: u32,
    ) {
        let ml = a.add(m).mul_pow2(-1);
        let fml = (self.f)(&ml);
        let mr = m.add(b).mul_pow2(-1);
        let fmr = (self.f)(&mr);
        let left = simpson(a, m, fa, &fml, fm);
        let right = simpson(m, b, fm, &fmr, fb);
        let s2 = left.add(&right);
        let delta = s2.sub(whole);
        let est_err = delta.abs().div(&Real::from_u64(15, self.prec));
        self.budget = self.budget.saturating_sub(1);
        if est_err <= *tol || depth == 0 || self.budget == 0 {
            if est_err > *tol {
                self.failed = true;
            }
            // Richardson extrapolation of the accepted pair; the slop term
            // covers the arithmetic rounding inside the Simpson sums
            self.est = self
                .est
                .add(&s2)
                .add(&delta.div(&Real::from_u64(15, self.prec)));
            let slop = s2.abs().mul_pow2(-(self.prec as i64) + 6);
            self.err = self.err.add(&est_err).add(&slop);
            return;
        }
        let half_tol = tol.mul_pow2(-1);
        self.recurse(a, &ml, m, fa, &fml, fm, &left, &half_tol, depth - 1);
        self.recurse(m, &mr, b, fm, &fmr, fb, &right, &half_tol, depth - 1);
    }
}
