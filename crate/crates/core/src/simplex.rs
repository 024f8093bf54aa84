//! Product inequalities on the open probability simplex.
//!
//! For positive coordinates summing to 1, the leave-one-out products
//! `g_k = prod_{i != k} a_i` satisfy `||g||_1 <= (n-1)/(2n)` and
//! `||g||_inf <= 1/4`; chaining Hölder steps with `q = m, m-1, ..., 1`
//! bounds `sum_k g_k^(1+1/m)` by `((n-1)/(2n)) (1/4)^(1/m)`. The general-n
//! display is unproved for `n > 3`, so the verifier treats it as a
//! conjecture to falsify and reports witnesses instead of asserting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::norms::{p_norm, BoundReport, Exponent, WeightedSequence};
use crate::numerics::Real;

/// A point of the open simplex: positive coordinates summing to 1 within
/// `2^(-prec/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexPoint {
    coords: Vec<Real>,
    prec: u32,
}

impl SimplexPoint {
    pub fn new(coords: Vec<Real>, prec: u32) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(
                "a simplex point needs at least 2 coordinates".into(),
            ));
        }
        let mut sum = Real::zero(prec);
        for c in &coords {
            if !c.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} is not positive"
                )));
            }
            sum = sum.add(c);
        }
        let gap = sum.sub(&Real::one(prec)).abs();
        if gap > Real::pow2(-((prec / 2) as i64), 64) {
            return Err(Error::InvalidArgument(format!(
                "coordinates sum to {sum}, not 1"
            )));
        }
        Ok(SimplexPoint {
            coords: coords.into_iter().map(|c| c.with_prec(prec)).collect(),
            prec,
        })
    }

    /// Scale arbitrary positive coordinates onto the simplex.
    pub fn normalized(raw: &[Real], prec: u32) -> Result<Self> {
        let mut sum = Real::zero(prec);
        for c in raw {
            if !c.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} is not positive"
                )));
            }
            sum = sum.add(c);
        }
        let coords = raw.iter().map(|c| c.with_prec(prec).div(&sum)).collect();
        SimplexPoint::new(coords, prec)
    }

    pub fn centroid(n: usize, prec: u32) -> Self {
        let c = Real::from_u64(n as u64, prec).recip();
        SimplexPoint {
            coords: vec![c; n],
            prec,
        }
    }

    pub fn coords(&self) -> &[Real] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }
}

/// Maximum of `sum_{i<j} a_i a_j` over the simplex: `(n-1)/(2n)`.
pub fn pairwise_sum_bound(n: u32) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be >= 2".into()));
    }
    Ok(BigRational::new(BigInt::from(n - 1), BigInt::from(2 * n)))
}

/// The leave-one-out products `g_k = prod_{i != k} a_i` with unit weights.
/// For `n = 3` these are the pairwise products `ab, bc, ca`.
pub fn leave_one_out_products(a: &SimplexPoint) -> WeightedSequence {
    let prec = a.prec();
    let n = a.len();
    let coords = a.coords();
    // prefix[k] = prod_{i<k}, suffix[k] = prod_{i>k}
    let mut prefix = vec![Real::one(prec); n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k].mul(&coords[k]);
    }
    let mut suffix = vec![Real::one(prec); n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1].mul(&coords[k]);
    }
    let values: Vec<Real> = (0..n).map(|k| prefix[k].mul(&suffix[k + 1])).collect();
    WeightedSequence::from_values(&values, prec).expect("products of positive coordinates")
}

/// `sum_k g_k^s` over the leave-one-out products.
pub fn dinu_lhs(a: &SimplexPoint, s: &BigRational) -> Real {
    leave_one_out_products(a).powers_sum(s)
}

/// `((n-1)/(2n)) * (1/4)^(1/m)`.
pub fn general_simplex_bound(n: u32, m_int: u32, prec: u32) -> Result<Real> {
    if n < 3 {
        return Err(Error::InvalidArgument("n must be >= 3".into()));
    }
    if m_int < 1 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let lead = Real::from_ratio(&pairwise_sum_bound(n)?, prec + 8);
    let quarter_root = Real::from_u64(4, prec + 8)
        .pow_rational(&BigRational::new(BigInt::from(-1), BigInt::from(m_int)));
    Ok(lead.mul(&quarter_root).with_prec(prec))
}

/// One Hölder application in the chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub step_index: u32,
    pub q: Exponent,
    pub p: Exponent,
    /// Back-substituted bound at this step's level:
    /// `||f||_1 ||f||_inf^(1/q)` up to rounding.
    pub intermediate_bound: Real,
}

/// The full chain for `s = 1 + 1/m`: steps apply `q = m, m-1, ..., 1`, and
/// back-substitution yields `final_bound = ||f||_1 ||f||_inf^(1/m)`.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub s: BigRational,
    pub m_int: u32,
    pub steps: Vec<ChainStep>,
    pub final_bound: Real,
}

/// Replay the chain on explicit norm values (caps or measured norms).
pub fn chain_from_norms(
    m_int: u32,
    norm_one: &Real,
    norm_sup: &Real,
    prec: u32,
) -> Result<ChainCertificate> {
    if m_int < 1 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let w = prec + 16;
    let norm_one = norm_one.with_prec(w);
    let norm_sup = norm_sup.with_prec(w);
    // ascending back-substitution: B_1 = ||f||_1 ||f||_inf,
    // B_q = B_(q-1)^((q-1)/q) * ||f||_1^(1/q)
    let mut levels = vec![norm_one.mul(&norm_sup)];
    for q in 2..=m_int as u64 {
        let prev = levels.last().unwrap();
        let shrink = prev.pow_rational(&BigRational::new(BigInt::from(q - 1), BigInt::from(q)));
        let boost = norm_one.pow_rational(&BigRational::new(BigInt::one(), BigInt::from(q)));
        levels.push(shrink.mul(&boost));
    }
    let steps = (1..=m_int)
        .map(|j| {
            let q_val = m_int - j + 1;
            let q = Exponent::from_integer(q_val as u64).expect("q >= 1");
            let p = q.conjugate();
            ChainStep {
                step_index: j,
                q,
                p,
                intermediate_bound: levels[q_val as usize - 1].with_prec(prec),
            }
        })
        .collect();
    Ok(ChainCertificate {
        s: BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(m_int)),
        m_int,
        steps,
        final_bound: levels[m_int as usize - 1].with_prec(prec),
    })
}

/// Replay the chain on a sequence, using its own 1- and sup-norms.
pub fn holder_chain(m_int: u32, f: &WeightedSequence, prec: u32) -> Result<ChainCertificate> {
    let norm_one = p_norm(f, &Exponent::one());
    let norm_sup = p_norm(f, &Exponent::Infinity);
    chain_from_norms(m_int, &norm_one, &norm_sup, prec)
}

/// Result of the sampling verifier for the general-n display.
#[derive(Clone, Debug)]
pub struct GeneralCheck {
    pub n: u32,
    pub m_int: u32,
    pub trials: u64,
    pub seed: u64,
    pub report: BoundReport,
    /// Argmax of the left side over everything evaluated.
    pub worst_point: SimplexPoint,
    /// Largest `||g||_1` seen; premise cap `(n-1)/(2n)`.
    pub max_norm_one: Real,
    /// Largest `||g||_inf` seen; premise cap `1/4`.
    pub max_norm_sup: Real,
    pub caps_hold: bool,
}

/// Maximize `sum_k g_k^(1+1/m)` over uniform simplex samples, a symmetric
/// grid, the centroid, and clamped edge midpoints; compare against
/// [`general_simplex_bound`]. Violations are reported, never raised.
pub fn verify_general_inequality(
    n: u32,
    m_int: u32,
    trials: u64,
    grid_depth: u32,
    seed: u64,
    prec: u32,
) -> Result<GeneralCheck> {
    if n < 3 {
        return Err(Error::InvalidArgument("n must be >= 3".into()));
    }
    if trials < 1 {
        return Err(Error::InvalidArgument(
            "at least one trial is required".into(),
        ));
    }
    let s = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(m_int));
    let bound = general_simplex_bound(n, m_int, prec)?;

    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(8) as u64;
    let workers = workers.min(trials);
    let best = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for shard in 0..workers {
            let share = trials / workers + u64::from(shard < trials % workers);
            let s = &s;
            handles.push(scope.spawn(move || sample_shard(n, s, share, seed, shard, prec)));
        }
        let mut best: Option<ShardBest> = None;
        for h in handles {
            let shard_best = h.join().expect("sampling worker panicked");
            best = Some(match best {
                None => shard_best,
                Some(cur) => cur.merge(shard_best),
            });
        }
        best.expect("at least one shard")
    });

    let mut best = best;
    // deterministic extra points: centroid, symmetric grid, edge midpoints
    let centroid = SimplexPoint::centroid(n as usize, prec);
    best.consider_point(&centroid, &s);
    for point in symmetric_grid(n, grid_depth, prec) {
        best.consider_point(&point, &s);
    }
    for point in clamped_edge_midpoints(n, prec) {
        best.consider_point(&point, &s);
    }
    // local coordinate ascent from the best point found
    let refined = refine_by_ascent(&best.point, &s, prec);
    best.consider_point(&refined, &s);

    let report = BoundReport::verify(best.value.clone(), bound.clone(), prec);
    let cap_one = Real::from_ratio(&pairwise_sum_bound(n)?, prec);
    let cap_sup = Real::from_u64(4, prec).recip();
    let tol = Real::pow2(-((prec / 2) as i64), 64);
    let caps_hold =
        best.max_norm_one <= cap_one.add(&tol) && best.max_norm_sup <= cap_sup.add(&tol);
    Ok(GeneralCheck {
        n,
        m_int,
        trials,
        seed,
        report,
        worst_point: best.point,
        max_norm_one: best.max_norm_one,
        max_norm_sup: best.max_norm_sup,
        caps_hold,
    })
}

struct ShardBest {
    value: Real,
    point: SimplexPoint,
    max_norm_one: Real,
    max_norm_sup: Real,
}

impl ShardBest {
    fn merge(self, other: ShardBest) -> ShardBest {
        // earlier shards win ties, keeping the merge order-independent
        let (value, point) = if other.value > self.value {
            (other.value, other.point)
        } else {
            (self.value, self.point)
        };
        ShardBest {
            value,
            point,
            max_norm_one: self.max_norm_one.max_value(other.max_norm_one),
            max_norm_sup: self.max_norm_sup.max_value(other.max_norm_sup),
        }
    }

    fn consider(&mut self, value: Real, point: &SimplexPoint, g: &WeightedSequence) {
        let norm_one = p_norm(g, &Exponent::one());
        let norm_sup = p_norm(g, &Exponent::Infinity);
        if norm_one > self.max_norm_one {
            self.max_norm_one = norm_one;
        }
        if norm_sup > self.max_norm_sup {
            self.max_norm_sup = norm_sup;
        }
        if value > self.value {
            self.value = value;
            self.point = point.clone();
        }
    }

    fn consider_point(&mut self, point: &SimplexPoint, s: &BigRational) {
        let g = leave_one_out_products(point);
        let value = g.powers_sum(s);
        self.consider(value, point, &g);
    }
}

fn sample_shard(
    n: u32,
    s: &BigRational,
    trials: u64,
    seed: u64,
    shard: u64,
    prec: u32,
) -> ShardBest {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(shard + 1);
    let clamp = 1e-12f64;
    let mut best = ShardBest {
        value: Real::zero(prec),
        point: SimplexPoint::centroid(n as usize, prec),
        max_norm_one: Real::zero(prec),
        max_norm_sup: Real::zero(prec),
    };
    let mut raw = vec![0f64; n as usize];
    for _ in 0..trials {
        for r in raw.iter_mut() {
            // exponential draws normalize to a uniform simplex sample
            let u: f64 = rng.random();
            *r = (-(1.0 - u).ln()).max(clamp);
        }
        let coords: Vec<Real> = raw.iter().map(|r| Real::from_f64(*r, prec)).collect();
        let point = SimplexPoint::normalized(&coords, prec).expect("positive draws");
        best.consider_point(&point, s);
    }
    best
}

/// All interior grid points with coordinates `i/depth`, `i >= 1`.
fn symmetric_grid(n: u32, depth: u32, prec: u32) -> Vec<SimplexPoint> {
    let mut out = Vec::new();
    if depth < n {
        return out;
    }
    let mut parts = vec![1u32; n as usize];
    compositions(depth, n, 0, &mut parts, &mut |parts| {
        let coords: Vec<Real> = parts
            .iter()
            .map(|i| Real::from_u64(*i as u64, prec).div(&Real::from_u64(depth as u64, prec)))
            .collect();
        if let Ok(p) = SimplexPoint::new(coords, prec) {
            out.push(p);
        }
    });
    out
}

fn compositions(
    total: u32,
    slots: u32,
    idx: usize,
    parts: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    let remaining_slots = slots as usize - idx - 1;
    if remaining_slots == 0 {
        let used: u32 = parts[..idx].iter().sum();
        if total > used {
            parts[idx] = total - used;
            emit(parts);
        }
        return;
    }
    let used: u32 = parts[..idx].iter().sum();
    let max_here = total - used - remaining_slots as u32;
    for v in 1..=max_here {
        parts[idx] = v;
        compositions(total, slots, idx + 1, parts, emit);
    }
}

/// Midpoints of simplex edges, pushed to the interior by the clamp.
fn clamped_edge_midpoints(n: u32, prec: u32) -> Vec<SimplexPoint> {
    let n = n as usize;
    let clamp = Real::parse_decimal("1e-12", prec).unwrap();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut coords = vec![clamp.clone(); n];
            let half = Real::one(prec)
                .sub(&clamp.mul(&Real::from_u64((n - 2) as u64, prec)))
                .mul_pow2(-1);
            coords[i] = half.clone();
            coords[j] = half.clone();
            if let Ok(p) = SimplexPoint::new(coords, prec) {
                out.push(p);
            }
        }
    }
    out
}

/// Coordinate ascent with shrinking step, 100 iterations.
fn refine_by_ascent(start: &SimplexPoint, s: &BigRational, prec: u32) -> SimplexPoint {
    let n = start.len();
    let mut current = start.clone();
    let mut value = dinu_lhs(&current, s);
    let mut step = Real::parse_decimal("0.25", prec).unwrap();
    let centroid = SimplexPoint::centroid(n, prec);
    for _ in 0..100 {
        let mut improved = false;
        let mut candidates: Vec<SimplexPoint> = Vec::with_capacity(n + 1);
        // toward each vertex and toward the centroid
        for target in 0..=n {
            let coords: Vec<Real> = (0..n)
                .map(|k| {
                    let base = current.coords()[k].mul(&Real::one(prec).sub(&step));
                    let pull = if target < n {
                        if k == target {
                            step.clone()
                        } else {
                            Real::zero(prec)
                        }
                    } else {
                        centroid.coords()[k].mul(&step)
                    };
                    base.add(&pull)
                })
                .collect();
            if let Ok(p) = SimplexPoint::new(coords, prec) {
                candidates.push(p);
            }
        }
        for cand in candidates {
            let v = dinu_lhs(&cand, s);
            if v > value {
                value = v;
                current = cand;
                improved = true;
            }
        }
        if !improved {
            step = step.mul_pow2(-1);
            if step.msb() < -(prec as i64) {
                break;
            }
        }
    }
    current
}
