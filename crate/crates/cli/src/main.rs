//! `holder` — verify norm-interpolation bounds from the command line.

mod commands;
mod render;

use clap::{Parser, Subcommand};
use holder_core::norms::Exponent;
use holder_core::numerics::Real;
use holder_core::special::TestFunction;
use num_rational::BigRational;

use commands::{BoundArgs, RunConfig};
use render::OutputFormat;

#[derive(Parser)]
#[command(
    name = "holder",
    version,
    about = "Verified p-norm interpolation bounds: zeta tables, product inequalities, binomial moments, Gamma/Beta"
)]
struct Cli {
    /// Working precision in fractional bits (>= 64)
    #[arg(long, global = true, env = "HOLDER_PRECISION_BITS")]
    precision_bits: Option<u32>,

    /// Significant digits printed (must stay below 0.3 * precision bits)
    #[arg(long, global = true, default_value_t = 15)]
    digits: u32,

    #[arg(long, global = true, value_enum, default_value = "markdown-table")]
    format: OutputFormat,

    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Sample count for randomized checks
    #[arg(long, global = true, default_value_t = 100_000)]
    trials: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of odd zeta values against their interpolation bounds
    ZetaTable {
        /// Rows k = 1..=k_max (bounding zeta(3) .. zeta(2k_max+1))
        #[arg(long)]
        k_max: u32,
    },
    /// Run a verification suite
    #[command(subcommand)]
    Check(CheckSubject),
    /// Evaluate the interpolated bound on explicit values or norms
    Bound {
        #[arg(long)]
        l: Exponent,
        #[arg(long)]
        s: Exponent,
        #[arg(long)]
        m: Exponent,
        /// Comma-separated values, or @path (one value per line, optional
        /// ",weight" column)
        #[arg(long)]
        values: Option<String>,
        /// Comma-separated weights matching --values
        #[arg(long)]
        weights: Option<String>,
        /// Known l-norm (skips sequence evaluation; prints the bound alone)
        #[arg(long)]
        norm_l: Option<String>,
        /// Known m-norm (sup-norm when m = inf)
        #[arg(long)]
        norm_m: Option<String>,
    },
}

#[derive(Subcommand)]
enum CheckSubject {
    /// Fuzz Hölder's inequality and the interpolated bound
    Holder {
        /// Largest sequence length generated
        #[arg(long, default_value_t = 50)]
        max_len: usize,
    },
    /// Product inequality on the 2-simplex at s = 5/4
    Dinu {
        #[arg(long, default_value_t = 12)]
        grid_depth: u32,
    },
    /// General product inequality on the (n-1)-simplex at s = 1 + 1/m
    General {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        grid_depth: u32,
    },
    /// Binomial moment sum against its interpolation bound
    Binomial {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        s: Exponent,
    },
    /// Gamma upper bound against the integral reference
    Gamma {
        /// Check one argument instead of a random battery
        #[arg(long)]
        y: Option<String>,
        /// Battery size when --y is absent
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
    /// Beta upper bound against the Gamma-quotient reference
    Beta {
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Check a 20x20 grid over [1,6]^2 instead of a single point
        #[arg(long)]
        grid: bool,
    },
    /// Lp integral bound for a named integrand (sin, x, x2, exp-neg)
    Integral {
        #[arg(long)]
        f: TestFunction,
        #[arg(long)]
        s: Exponent,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Quadrature tolerance
        #[arg(long, default_value = "1e-12")]
        tol: String,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let prec = cli.precision_bits.unwrap_or(holder_core::DEFAULT_PREC);
    if prec < 64 {
        eprintln!("error: precision must be at least 64 bits (got {prec})");
        return 2;
    }
    if cli.digits < 1 || cli.digits as u64 * 10 > prec as u64 * 3 {
        eprintln!(
            "error: {} digits cannot be carried by {prec} bits",
            cli.digits
        );
        return 2;
    }
    let cfg = RunConfig {
        prec,
        digits: cli.digits,
        format: cli.format,
        seed: cli.seed,
        trials: cli.trials.max(1),
    };
    let outcome = match &cli.command {
        Command::ZetaTable { k_max } => commands::cmd_zeta_table(*k_max, &cfg),
        Command::Check(subject) => match subject {
            CheckSubject::Holder { max_len } => commands::cmd_check_holder((*max_len).max(1), &cfg),
            CheckSubject::Dinu { grid_depth } => commands::cmd_check_dinu(*grid_depth, &cfg),
            CheckSubject::General { n, m, grid_depth } => {
                commands::cmd_check_general(*n, *m, *grid_depth, &cfg)
            }
            CheckSubject::Binomial { n, s } => match exponent_rational(s) {
                Ok(s) => commands::cmd_check_binomial(*n, &s, &cfg),
                Err(code) => return code,
            },
            CheckSubject::Gamma { y, samples } => {
                let y = match y.as_deref().map(parse_rational).transpose() {
                    Ok(y) => y,
                    Err(code) => return code,
                };
                commands::cmd_check_gamma(y, (*samples).max(1), &cfg)
            }
            CheckSubject::Beta { x, y, grid } => {
                let px = x.as_deref().map(parse_rational).transpose();
                let py = y.as_deref().map(parse_rational).transpose();
                match (px, py) {
                    (Ok(x), Ok(y)) => commands::cmd_check_beta(x, y, *grid, &cfg),
                    (Err(code), _) | (_, Err(code)) => return code,
                }
            }
            CheckSubject::Integral { f, s, a, b, tol } => {
                let s = match exponent_rational(s) {
                    Ok(s) => s,
                    Err(code) => return code,
                };
                let bounds = parse_interval(a.as_deref(), b.as_deref(), cfg.prec);
                let (a, b) = match bounds {
                    Ok(pair) => pair,
                    Err(code) => return code,
                };
                let tol = match Real::parse_decimal(tol, 64) {
                    Some(t) if t.is_positive() => t,
                    _ => {
                        eprintln!("error: invalid tolerance {tol:?}");
                        return 2;
                    }
                };
                commands::cmd_check_integral(*f, &s, a, b, &tol, &cfg)
            }
        },
        Command::Bound {
            l,
            s,
            m,
            values,
            weights,
            norm_l,
            norm_m,
        } => {
            let args = BoundArgs {
                l: l.clone(),
                s: s.clone(),
                m: m.clone(),
                values: values.clone(),
                weights: weights.clone(),
                norm_l: norm_l.clone(),
                norm_m: norm_m.clone(),
            };
            commands::cmd_bound(&args, &cfg)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn parse_interval(
    a: Option<&str>,
    b: Option<&str>,
    prec: u32,
) -> Result<(Option<Real>, Option<Real>), i32> {
    let parse = |v: Option<&str>| -> Result<Option<Real>, i32> {
        match v {
            None => Ok(None),
            Some(x) => Real::parse_decimal(x, prec).map(Some).ok_or_else(|| {
                eprintln!("error: could not parse interval bound {x:?}");
                2
            }),
        }
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_rational(s: &str) -> Result<BigRational, i32> {
    if let Some((num, den)) = s.split_once('/') {
        let bad = || {
            eprintln!("error: could not parse {s:?}");
            2
        };
        let n: num_bigint::BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = den.trim().parse().map_err(|_| bad())?;
        if d == 0.into() {
            eprintln!("error: zero denominator in {s:?}");
            return Err(2);
        }
        return Ok(BigRational::new(n, d));
    }
    holder_core::numerics::parse_decimal_rational(s).ok_or_else(|| {
        eprintln!("error: could not parse {s:?}");
        2
    })
}

fn exponent_rational(e: &Exponent) -> Result<BigRational, i32> {
    e.as_rational().cloned().ok_or_else(|| {
        eprintln!("error: this check needs a finite exponent");
        2
    })
}
