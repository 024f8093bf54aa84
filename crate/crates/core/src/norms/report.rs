use crate::numerics::Real;

/// Outcome of checking one inequality `lhs <= rhs` numerically.
///
/// `holds` is `lhs <= rhs + tolerance`; a violation beyond tolerance is
/// reported rather than raised so property suites can collect witnesses.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub lhs: Real,
    pub rhs: Real,
    /// `rhs - lhs`; negative when the inequality is violated.
    pub margin: Real,
    pub holds: bool,
    /// Absolute slack used in the comparison.
    pub tolerance: Real,
    /// Working precision the two sides were evaluated at.
    pub prec: u32,
}

impl BoundReport {
    /// Check at the default relative tolerance `2^(-prec/2)`.
    pub fn verify(lhs: Real, rhs: Real, prec: u32) -> Self {
        let scale = lhs.abs().max_value(rhs.abs());
        let tolerance = scale.mul_pow2(-((prec / 2) as i64));
        BoundReport::verify_with_tolerance(lhs, rhs, tolerance, prec)
    }

    pub fn verify_with_tolerance(lhs: Real, rhs: Real, tolerance: Real, prec: u32) -> Self {
        let margin = rhs.sub(&lhs);
        let holds = lhs <= rhs.add(&tolerance);
        BoundReport {
            lhs,
            rhs,
            margin,
            holds,
            tolerance,
            prec,
        }
    }

    /// Relative margin `|rhs - lhs| / max(|lhs|, |rhs|)`, 0 for two zeros.
    pub fn relative_gap(&self) -> Real {
        let scale = self.lhs.abs().max_value(self.rhs.abs());
        if scale.is_zero() {
            return Real::zero(self.prec);
        }
        self.margin.abs().div(&scale)
    }
}

impl std::fmt::Display for BoundReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "lhs={} rhs={} margin={} holds={}",
            self.lhs.to_decimal(17),
            self.rhs.to_decimal(17),
            self.margin.to_decimal(6),
            self.holds
        )
    }
}
