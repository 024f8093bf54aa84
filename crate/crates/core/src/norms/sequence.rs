use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::Real;

use super::exponent::Exponent;

/// One atom of a discrete measure space: a nonnegative value carrying a
/// positive weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub value: Real,
    pub weight: Real,
}

/// A finite weighted sequence; the discrete measure space all norms are
/// taken over. May be empty (every norm is then 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSequence {
    atoms: Vec<Atom>,
    prec: u32,
}

impl WeightedSequence {
    /// Unit weights.
    pub fn from_values(values: &[Real], prec: u32) -> Result<Self> {
        let one = Real::one(prec);
        WeightedSequence::from_pairs(
            values.iter().map(|v| (v.clone(), one.clone())).collect(),
            prec,
        )
    }

    pub fn from_pairs(pairs: Vec<(Real, Real)>, prec: u32) -> Result<Self> {
        let mut atoms = Vec::with_capacity(pairs.len());
        for (value, weight) in pairs {
            if value.is_negative() {
                return Err(Error::InvalidArgument(format!("negative value {value}")));
            }
            if !weight.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "weight {weight} is not positive"
                )));
            }
            atoms.push(Atom {
                value: value.with_prec(prec),
                weight: weight.with_prec(prec),
            });
        }
        Ok(WeightedSequence { atoms, prec })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn same_weights(&self, other: &WeightedSequence) -> bool {
        self.len() == other.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| a.weight == b.weight)
    }

    /// `sum_i w_i v_i^s` — the s-th power of the s-norm, without the outer
    /// root. This is the form the interpolation bound is stated in.
    pub fn powers_sum(&self, s: &BigRational) -> Real {
        let mut acc = Real::zero(self.prec);
        for atom in &self.atoms {
            let p = atom.value.pow_rational(s);
            acc = acc.add(&atom.weight.mul(&p));
        }
        acc
    }

    /// Largest value; 0 for an empty sequence. Weights are irrelevant at
    /// `p = inf` (all weights are positive, so every atom is "seen").
    pub fn max_value(&self) -> Real {
        let mut best = Real::zero(self.prec);
        for atom in &self.atoms {
            if atom.value > best {
                best = atom.value.clone();
            }
        }
        best
    }

    /// Pointwise product against a sequence with identical weights.
    pub fn pointwise_product(&self, other: &WeightedSequence) -> Result<WeightedSequence> {
        if !self.same_weights(other) {
            return Err(Error::MismatchedSequences);
        }
        let prec = self.prec.max(other.prec);
        let pairs = self
            .atoms
            .iter()
            .zip(&other.atoms)
            .map(|(a, b)| (a.value.mul(&b.value), a.weight.clone()))
            .collect();
        WeightedSequence::from_pairs(pairs, prec)
    }
}

/// The p-norm of `f`: `(sum w_i v_i^p)^(1/p)` for finite `p`, the maximum
/// value at `p = inf`, and 0 for the empty sequence.
pub fn p_norm(f: &WeightedSequence, p: &Exponent) -> Real {
    match p {
        Exponent::Infinity => f.max_value(),
        Exponent::Finite(r) => {
            if f.is_empty() {
                return Real::zero(f.prec());
            }
            let sum = f.powers_sum(r);
            if r.is_one() {
                sum
            } else {
                sum.pow_rational(&r.recip())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn seq(values: &[f64], prec: u32) -> WeightedSequence {
        let v: Vec<Real> = values.iter().map(|x| Real::from_f64(*x, prec)).collect();
        WeightedSequence::from_values(&v, prec).unwrap()
    }

    #[test]
    fn three_four_five() {
        let f = seq(&[3.0, 4.0], 128);
        let n = p_norm(&f, &Exponent::from_integer(2).unwrap());
        let err = n.sub(&Real::from_u64(5, 128)).abs();
        assert!(err.is_zero() || err.msb() < -120, "norm {n}");
    }

    #[test]
    fn infinity_norm_is_max() {
        let f = seq(&[3.0, 4.0], 128);
        assert_eq!(p_norm(&f, &Exponent::Infinity), Real::from_u64(4, 128));
    }

    #[test]
    fn one_norm_of_thirds() {
        let ninth = Real::from_u64(9, 160).recip();
        let f = WeightedSequence::from_values(&[ninth.clone(), ninth.clone(), ninth], 160).unwrap();
        let n = p_norm(&f, &Exponent::one());
        let third = Real::from_u64(3, 160).recip();
        let err = n.sub(&third).abs();
        assert!(err.msb() < -150, "sum {n}");
    }

    #[test]
    fn empty_sequence_norms_are_zero() {
        let f = WeightedSequence::from_values(&[], 64).unwrap();
        assert!(p_norm(&f, &Exponent::one()).is_zero());
        assert!(p_norm(&f, &Exponent::Infinity).is_zero());
        assert!(p_norm(&f, &Exponent::finite(rat(3, 2)).unwrap()).is_zero());
    }

    #[test]
    fn invalid_atoms_rejected() {
        let bad = vec![(Real::from_i64(-1, 64), Real::one(64))];
        assert!(WeightedSequence::from_pairs(bad, 64).is_err());
        let bad = vec![(Real::one(64), Real::zero(64))];
        assert!(WeightedSequence::from_pairs(bad, 64).is_err());
    }

    #[test]
    fn weights_participate_in_finite_norms() {
        let pairs = vec![
            (Real::from_u64(2, 128), Real::from_u64(3, 128)),
            (Real::from_u64(1, 128), Real::from_u64(4, 128)),
        ];
        let f = WeightedSequence::from_pairs(pairs, 128).unwrap();
        // 3*2 + 4*1 = 10
        assert_eq!(p_norm(&f, &Exponent::one()), Real::from_u64(10, 128));
        // but the sup-norm ignores them
        assert_eq!(p_norm(&f, &Exponent::Infinity), Real::from_u64(2, 128));
    }
}
