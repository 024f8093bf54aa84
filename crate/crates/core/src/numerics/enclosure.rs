use num_rational::BigRational;

use super::real::Real;

/// An estimate together with a rigorous absolute error bound: the true value
/// lies in `[estimate - error_bound, estimate + error_bound]`.
#[derive(Clone, Debug)]
pub struct EnclosedValue {
    pub estimate: Real,
    pub error_bound: Real,
}

impl EnclosedValue {
    pub fn new(estimate: Real, error_bound: Real) -> Self {
        assert!(!error_bound.is_negative(), "error bound must be >= 0");
        EnclosedValue {
            estimate,
            error_bound,
        }
    }

    pub fn exact(value: Real) -> Self {
        let prec = value.prec();
        EnclosedValue {
            estimate: value,
            error_bound: Real::zero(prec),
        }
    }

    pub fn lower(&self) -> Real {
        self.estimate.sub(&self.error_bound)
    }

    pub fn upper(&self) -> Real {
        self.estimate.add(&self.error_bound)
    }

    pub fn contains(&self, value: &Real) -> bool {
        let d = value.sub(&self.estimate).abs();
        d <= self.error_bound
    }

    pub fn contains_rational(&self, value: &BigRational) -> bool {
        self.contains(&Real::from_ratio(value, self.estimate.prec() + 16))
    }

    /// Enclosure widened by an extra absolute slop.
    pub fn widened(&self, slop: &Real) -> Self {
        EnclosedValue::new(self.estimate.clone(), self.error_bound.add(slop))
    }

    pub fn add(&self, other: &EnclosedValue) -> Self {
        EnclosedValue::new(
            self.estimate.add(&other.estimate),
            self.error_bound.add(&other.error_bound),
        )
    }

    /// True when the two enclosures admit a common value.
    pub fn overlaps(&self, other: &EnclosedValue) -> bool {
        let d = self.estimate.sub(&other.estimate).abs();
        d <= self.error_bound.add(&other.error_bound)
    }
}

impl std::fmt::Display for EnclosedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} ± {}",
            self.estimate.to_decimal(17),
            self.error_bound.to_decimal(3)
        )
    }
}
