//! Subcommand implementations. Each returns the process exit code:
//! 0 when every checked inequality holds, 1 when a violation was found.
//! Usage problems are reported as `Err` and exit with 2.

use holder_core::binomial::{binomial_moment_bound, binomial_moment_brute};
use holder_core::error::Error;
use holder_core::norms::{
    bound_from_norms, convex_holder_bound, holder_check, BoundReport, Exponent, WeightedSequence,
};
use holder_core::numerics::{gamma_reference, real::pi, Real};
use holder_core::simplex::{verify_general_inequality, GeneralCheck};
use holder_core::special::{
    beta_reference, beta_upper_bound, gamma_upper_bound, lp_integral_bound, TestFunction,
};
use holder_core::zeta::zeta_table;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};

use crate::render::{
    csv_table, fmt_real, markdown_table, print_reports, report_json, OutputFormat,
};

pub struct RunConfig {
    pub prec: u32,
    pub digits: u32,
    pub format: OutputFormat,
    pub seed: u64,
    pub trials: u64,
}

type CmdResult = Result<i32, Error>;

pub fn cmd_zeta_table(k_max: u32, cfg: &RunConfig) -> CmdResult {
    let rows = zeta_table(k_max, cfg.prec)?;
    let all_hold = rows.iter().all(|r| r.zeta_value.upper() <= r.bound_numeric);
    let d = cfg.digits;
    match cfg.format {
        OutputFormat::Markdown | OutputFormat::Csv => {
            let headers = ["2k+1", "zeta(2k+1)", "bound", "closed form", "ratio"];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.odd_index.to_string(),
                        fmt_real(&r.zeta_value.estimate, d),
                        fmt_real(&r.bound_numeric, d),
                        r.bound_closed.display(),
                        fmt_real(&r.ratio, d),
                    ]
                })
                .collect();
            if cfg.format == OutputFormat::Markdown {
                print!("{}", markdown_table(&headers, &body));
            } else {
                print!("{}", csv_table(&headers, &body));
            }
        }
        OutputFormat::Json => {
            let body: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "odd_index": r.odd_index,
                        "zeta": fmt_real(&r.zeta_value.estimate, d),
                        "zeta_hex": r.zeta_value.estimate.to_hex_exact(),
                        "zeta_error": fmt_real(&r.zeta_value.error_bound, 3),
                        "bound": fmt_real(&r.bound_numeric, d),
                        "bound_hex": r.bound_numeric.to_hex_exact(),
                        "ratio": fmt_real(&r.ratio, d),
                        "closed_form": {
                            "coef_num": r.bound_closed.coefficient.numer().to_string(),
                            "coef_den": r.bound_closed.coefficient.denom().to_string(),
                            "pi_power": r.bound_closed.pi_power,
                            "rad_num": r.bound_closed.radicand.numer().to_string(),
                            "rad_den": r.bound_closed.radicand.denom().to_string(),
                            "display": r.bound_closed.display(),
                        },
                    })
                })
                .collect();
            let doc = json!({
                "precision_bits": cfg.prec,
                "digits": d,
                "rows": body,
                "all_hold": all_hold,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
    Ok(if all_hold { 0 } else { 1 })
}

/// Randomized Hölder + interpolation fuzzing.
pub fn cmd_check_holder(max_len: usize, cfg: &RunConfig) -> CmdResult {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let prec = cfg.prec;
    let mut worst: Option<BoundReport> = None;
    let mut violations = 0u64;
    for _ in 0..cfg.trials {
        let len = rng.random_range(1..=max_len);
        let pairs: Vec<(Real, Real)> = (0..len)
            .map(|_| {
                (
                    Real::from_f64(rng.random_range(0.0..10.0), prec),
                    Real::from_f64(rng.random_range(0.001..5.0), prec),
                )
            })
            .collect();
        let f = WeightedSequence::from_pairs(pairs.clone(), prec)?;
        let g_pairs: Vec<(Real, Real)> = pairs
            .iter()
            .map(|(_, w)| (Real::from_f64(rng.random_range(0.0..10.0), prec), w.clone()))
            .collect();
        let g = WeightedSequence::from_pairs(g_pairs, prec)?;
        let p = random_exponent(&mut rng, true);
        let report = holder_check(&f, &g, &p)?;
        if !report.holds {
            violations += 1;
        }
        let (l, s, m) = random_triple(&mut rng);
        let interp = convex_holder_bound(&f, &l, &s, &m)?;
        if !interp.holds {
            violations += 1;
        }
        let keep = match &worst {
            None => true,
            Some(w) => interp.relative_gap() < w.relative_gap(),
        };
        if keep {
            worst = Some(interp);
        }
    }
    let worst = worst.expect("at least one trial");
    let label = format!(
        "holder-fuzz trials={} violations={}",
        cfg.trials, violations
    );
    print_reports(cfg.format, cfg.digits, &[(label, worst)]);
    Ok(if violations == 0 { 0 } else { 1 })
}

fn random_exponent(rng: &mut ChaCha12Rng, allow_inf: bool) -> Exponent {
    if allow_inf && rng.random_range(0..8u32) == 0 {
        return Exponent::Infinity;
    }
    let num = rng.random_range(0i64..=56);
    let den = rng.random_range(1i64..=8);
    Exponent::finite(
        BigRational::one() + BigRational::new(BigInt::from(num), BigInt::from(8 * den)),
    )
    .expect("at least one")
}

fn random_triple(rng: &mut ChaCha12Rng) -> (Exponent, Exponent, Exponent) {
    let l = BigRational::one()
        + BigRational::new(BigInt::from(rng.random_range(0i64..=24)), BigInt::from(8));
    let s = &l + BigRational::new(BigInt::from(rng.random_range(1i64..=16)), BigInt::from(16));
    let m_inf = rng.random_range(0..4u32) == 0;
    let m = &s + BigRational::new(BigInt::from(rng.random_range(1i64..=16)), BigInt::from(16));
    (
        Exponent::finite(l).expect("valid"),
        Exponent::finite(s).expect("valid"),
        if m_inf {
            Exponent::Infinity
        } else {
            Exponent::finite(m).expect("valid")
        },
    )
}

fn general_json(check: &GeneralCheck, digits: u32) -> Value {
    json!({
        "n": check.n,
        "m": check.m_int,
        "trials": check.trials,
        "seed": check.seed,
        "max_lhs": fmt_real(&check.report.lhs, digits),
        "max_lhs_hex": check.report.lhs.to_hex_exact(),
        "argmax": check.worst_point.coords().iter().map(|c| fmt_real(c, digits)).collect::<Vec<_>>(),
        "bound": fmt_real(&check.report.rhs, digits),
        "bound_hex": check.report.rhs.to_hex_exact(),
        "holds": check.report.holds,
        "premise_caps": {
            "norm_one_max": fmt_real(&check.max_norm_one, digits),
            "norm_sup_max": fmt_real(&check.max_norm_sup, digits),
            "hold": check.caps_hold,
        },
    })
}

fn print_general(check: &GeneralCheck, cfg: &RunConfig, extra: Option<(String, BoundReport)>) {
    match cfg.format {
        OutputFormat::Json => {
            let mut doc = general_json(check, cfg.digits);
            if let Some((label, report)) = &extra {
                doc.as_object_mut()
                    .expect("object")
                    .insert("classic_cap".into(), report_json(label, report, cfg.digits));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        _ => {
            let label = format!(
                "product-sum n={} m={} trials={} seed={}",
                check.n, check.m_int, check.trials, check.seed
            );
            let mut items = vec![(label, check.report.clone())];
            if let Some(pair) = extra {
                items.push(pair);
            }
            print_reports(cfg.format, cfg.digits, &items);
            if !check.caps_hold {
                eprintln!(
                    "premise caps violated: max ||g||_1 = {}, max ||g||_inf = {}",
                    fmt_real(&check.max_norm_one, cfg.digits),
                    fmt_real(&check.max_norm_sup, cfg.digits)
                );
            }
        }
    }
}

/// The order-3 product inequality at s = 5/4, with the classic 1/4 cap.
pub fn cmd_check_dinu(grid_depth: u32, cfg: &RunConfig) -> CmdResult {
    let check = verify_general_inequality(3, 4, cfg.trials, grid_depth, cfg.seed, cfg.prec)?;
    // sharp bound stays below the classic 1/4
    let quarter = Real::from_u64(4, cfg.prec).recip();
    let classic = BoundReport::verify(check.report.rhs.clone(), quarter, cfg.prec);
    let ok = check.report.holds && check.caps_hold && classic.holds;
    print_general(
        &check,
        cfg,
        Some(("sharp-bound-below-quarter".into(), classic)),
    );
    Ok(if ok { 0 } else { 1 })
}

pub fn cmd_check_general(n: u32, m_int: u32, grid_depth: u32, cfg: &RunConfig) -> CmdResult {
    let check = verify_general_inequality(n, m_int, cfg.trials, grid_depth, cfg.seed, cfg.prec)?;
    let ok = check.report.holds && check.caps_hold;
    print_general(&check, cfg, None);
    Ok(if ok { 0 } else { 1 })
}

pub fn cmd_check_binomial(n: u64, s: &BigRational, cfg: &RunConfig) -> CmdResult {
    let brute = binomial_moment_brute(n, s, cfg.prec)?;
    let bound = binomial_moment_bound(n, s, cfg.prec)?;
    let report = BoundReport::verify(brute, bound, cfg.prec);
    let ok = report.holds;
    let label = format!("binomial-moment N={n} s={s}");
    print_reports(cfg.format, cfg.digits, &[(label, report)]);
    Ok(if ok { 0 } else { 1 })
}

pub fn cmd_check_gamma(y: Option<BigRational>, samples: u64, cfg: &RunConfig) -> CmdResult {
    let mut items = Vec::new();
    let mut all_hold = true;
    match y {
        Some(y) => {
            let report = gamma_report(&y, cfg.prec)?;
            all_hold &= report.holds;
            items.push((format!("gamma y={y}"), report));
        }
        None => {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            let mut worst: Option<(BigRational, BoundReport)> = None;
            for _ in 0..samples {
                let y_f: f64 = rng.random_range(1.0001..50.0);
                let y = Real::from_f64(y_f, cfg.prec).to_rational();
                let report = gamma_report(&y, cfg.prec)?;
                all_hold &= report.holds;
                let keep = match &worst {
                    None => true,
                    Some((_, w)) => report.relative_gap() < w.relative_gap(),
                };
                if keep {
                    worst = Some((y, report));
                }
            }
            let (y, report) = worst.expect("samples >= 1");
            items.push((
                format!("gamma samples={samples} worst y={:.6}", rational_f64(&y)),
                report,
            ));
        }
    }
    print_reports(cfg.format, cfg.digits, &items);
    Ok(if all_hold { 0 } else { 1 })
}

fn gamma_report(y: &BigRational, prec: u32) -> Result<BoundReport, Error> {
    let (_, bound) = gamma_upper_bound(y, prec)?;
    let reference = gamma_reference(&(y + BigRational::one()), prec)?;
    Ok(BoundReport::verify(reference.upper(), bound, prec))
}

fn rational_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

pub fn cmd_check_beta(
    x: Option<BigRational>,
    y: Option<BigRational>,
    grid: bool,
    cfg: &RunConfig,
) -> CmdResult {
    let mut items = Vec::new();
    let mut all_hold = true;
    if grid {
        // 20 x 20 grid over [1, 6]^2
        let mut worst: Option<(String, BoundReport)> = None;
        for i in 0..20u32 {
            for j in 0..20u32 {
                let x =
                    BigRational::one() + BigRational::new(BigInt::from(5 * i), BigInt::from(19));
                let y =
                    BigRational::one() + BigRational::new(BigInt::from(5 * j), BigInt::from(19));
                let report = beta_report(&x, &y, cfg.prec)?;
                all_hold &= report.holds;
                let keep = match &worst {
                    None => true,
                    Some((_, w)) => report.relative_gap() < w.relative_gap(),
                };
                if keep {
                    worst = Some((format!("beta grid worst x={x} y={y}"), report));
                }
            }
        }
        items.push(worst.expect("grid nonempty"));
    } else {
        let x = x.ok_or_else(|| Error::InvalidArgument("--x is required without --grid".into()))?;
        let y = y.ok_or_else(|| Error::InvalidArgument("--y is required without --grid".into()))?;
        let report = beta_report(&x, &y, cfg.prec)?;
        all_hold &= report.holds;
        items.push((format!("beta x={x} y={y}"), report));
    }
    print_reports(cfg.format, cfg.digits, &items);
    Ok(if all_hold { 0 } else { 1 })
}

fn beta_report(x: &BigRational, y: &BigRational, prec: u32) -> Result<BoundReport, Error> {
    let bound = beta_upper_bound(x, y, prec)?;
    let one = BigRational::one();
    let reference = beta_reference(&(x + &one), &(y + &one), prec)?;
    Ok(BoundReport::verify(reference.upper(), bound, prec))
}

pub fn cmd_check_integral(
    f: TestFunction,
    s: &BigRational,
    a: Option<Real>,
    b: Option<Real>,
    tol: &Real,
    cfg: &RunConfig,
) -> CmdResult {
    let prec = cfg.prec;
    let lower = a.unwrap_or_else(|| Real::zero(prec));
    let upper = b.unwrap_or_else(|| match f {
        TestFunction::Sin => pi(prec).mul_pow2(-1),
        _ => Real::one(prec),
    });
    let func = move |x: &Real| f.eval(x);
    let report = lp_integral_bound(&func, &lower, &upper, s, tol, prec)?;
    let ok = report.holds;
    let label = format!("integral f={} s={s}", f.name());
    print_reports(cfg.format, cfg.digits, &[(label, report)]);
    Ok(if ok { 0 } else { 1 })
}

pub struct BoundArgs {
    pub l: Exponent,
    pub s: Exponent,
    pub m: Exponent,
    pub values: Option<String>,
    pub weights: Option<String>,
    pub norm_l: Option<String>,
    pub norm_m: Option<String>,
}

pub fn cmd_bound(args: &BoundArgs, cfg: &RunConfig) -> CmdResult {
    let prec = cfg.prec;
    if let (Some(nl), Some(nm)) = (&args.norm_l, &args.norm_m) {
        let norm_l = parse_real(nl, prec)?;
        let norm_m = parse_real(nm, prec)?;
        let rhs = bound_from_norms(&norm_l, &norm_m, &args.l, &args.s, &args.m)?;
        match cfg.format {
            OutputFormat::Json => {
                let doc = json!({
                    "bound": fmt_real(&rhs, cfg.digits),
                    "bound_hex": rhs.to_hex_exact(),
                    "l": args.l.to_string(),
                    "s": args.s.to_string(),
                    "m": args.m.to_string(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            }
            OutputFormat::Csv => {
                print!(
                    "{}",
                    csv_table(&["bound"], &[vec![fmt_real(&rhs, cfg.digits)]])
                );
            }
            OutputFormat::Markdown => {
                println!("bound = {}", fmt_real(&rhs, cfg.digits));
            }
        }
        return Ok(0);
    }
    let values = args.values.as_ref().ok_or_else(|| {
        Error::InvalidArgument("provide --values or both --norm-l/--norm-m".into())
    })?;
    let f = parse_sequence(values, args.weights.as_deref(), prec)?;
    let report = convex_holder_bound(&f, &args.l, &args.s, &args.m)?;
    let ok = report.holds;
    let label = format!(
        "bound l={} s={} m={} atoms={}",
        args.l,
        args.s,
        args.m,
        f.len()
    );
    print_reports(cfg.format, cfg.digits, &[(label, report)]);
    Ok(if ok { 0 } else { 1 })
}

fn parse_real(s: &str, prec: u32) -> Result<Real, Error> {
    Real::parse_decimal(s, prec).ok_or_else(|| Error::Parse(s.into()))
}

/// Inline comma-separated decimals, or `@path` with one value per line and
/// an optional `,weight` column.
pub fn parse_sequence(
    values: &str,
    weights: Option<&str>,
    prec: u32,
) -> Result<WeightedSequence, Error> {
    if let Some(path) = values.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (v, w) = match line.split_once(',') {
                Some((v, w)) => (parse_real(v, prec)?, parse_real(w, prec)?),
                None => (parse_real(line, prec)?, Real::one(prec)),
            };
            pairs.push((v, w));
        }
        return WeightedSequence::from_pairs(pairs, prec);
    }
    let vals: Vec<Real> = values
        .split(',')
        .map(|v| parse_real(v.trim(), prec))
        .collect::<Result<_, _>>()?;
    match weights {
        None => WeightedSequence::from_values(&vals, prec),
        Some(w) => {
            let ws: Vec<Real> = w
                .split(',')
                .map(|x| parse_real(x.trim(), prec))
                .collect::<Result<_, _>>()?;
            if ws.len() != vals.len() {
                return Err(Error::MismatchedSequences);
            }
            WeightedSequence::from_pairs(vals.into_iter().zip(ws).collect(), prec)
        }
    }
}
