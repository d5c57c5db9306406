mod args;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use hlmax_core::exactnum::rational::{format_rational, int, Rational};
use hlmax_core::exactnum::{EnclosureReport, SurdValue};
use hlmax_core::experiments::{self, CounterexampleReport};
use hlmax_core::holder::{self, HolderNormReport};
use hlmax_core::io;
use hlmax_core::maximal1d::{self, RadialAverageProfile};
use hlmax_core::metricspace::{self, FiniteMetricMeasureSpace};
use serde::Serialize;

use args::{rational, AlphaSpec, FunctionArgs, GridSpec, IntRange};

const AFTER_HELP: &str = "\
Numbers are exact rationals written as integers, decimals or num/den
(e.g. 3, 0.25, -7/16). Rationals in output are always num/den.

Points on the line are in the same units as the function's period. Radii are
half-lengths of the averaging interval [x - r, x + r].

Exit status: 0 on success, 1 when a verified inequality fails, 2 on invalid
input (malformed files report the offending line and column).

Parallel work uses rayon; set RAYON_NUM_THREADS to fix the thread count.
Output does not depend on the thread count.";

#[derive(Parser, Debug)]
#[command(name = "hlmax", version, about = "Exact maximal functions and Hölder-norm experiments", after_help = AFTER_HELP)]
struct Cli {
    /// Bits of precision for certified enclosures of irrational quantities.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u32).range(53..=100_000))]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Mf on a uniform grid, written as CSV
    /// (x,value_p,value_q,value_s,value_float with value = p + q·√s).
    MaximalCurve {
        #[command(flatten)]
        function: FunctionArgs,
        /// Grid as start:end:count, endpoints included.
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Piecewise radial average profile of |f| at x, with its exact maximum, as JSON.
    ///
    /// Each piece is c_neg/r + c_zero + c_one·r on [r_lo, r_hi].
    AverageProfile {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
        /// Largest radius; defaults to one period.
        #[arg(long, value_parser = rational)]
        r_max: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid Hölder norm (sup + seminorm) of Mf or f, as JSON.
    HolderNorm {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        /// Exponent: a rational in [0, 1], `ramp`, `tent`, or a CSV file with
        /// one value per grid point.
        #[arg(long)]
        alpha: AlphaSpec,
        /// Which function to measure.
        #[arg(long, value_enum, default_value = "mf")]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest annular-decay constant K of a finite metric measure space, as JSON.
    AnnularDecay {
        /// Square distance matrix CSV, one row per line, no header.
        #[arg(long)]
        space: PathBuf,
        /// Mass CSV (one row, or one value per line); unit masses when omitted.
        #[arg(long)]
        masses: Option<PathBuf>,
        /// Exponent δ in (0, 1].
        #[arg(long, value_parser = rational, default_value = "1")]
        delta: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check of the Hölder-norm bound for Mf on the line, as JSON.
    VerifyTheorem1 {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the random functions, exponents and point pairs.
        #[arg(long)]
        seed: u64,
        /// Grid points per period.
        #[arg(long, default_value_t = 64)]
        grid_count: usize,
        /// Random point pairs per trial for the two-point inequality.
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Omit the per-trial records.
        #[arg(long)]
        summary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rate bound for Mf_k → Mf with f_k = f + shift_k, as JSON.
    VerifyContinuity {
        #[command(flatten)]
        function: FunctionArgs,
        /// Comma-separated shifts, e.g. 1,1/2,1/4.
        #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true, conflicts_with = "shift_count")]
        shifts: Vec<Rational>,
        /// Use the shifts 1/k for k = 1..=K.
        #[arg(long)]
        shift_count: Option<u64>,
        #[arg(long, value_parser = rational, default_value = "1")]
        alpha: Rational,
        #[arg(long, value_parser = rational, default_value = "1/2")]
        beta: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1:201")]
        grid: GridSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chain for f_n = |x| - 1/n at 1/2 and d_n = 1/2 - 1/(4n²).
    ///
    /// A single n gives JSON; a sweep gives CSV with one row per n.
    Counterexample {
        #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
        n: Option<u64>,
        /// Inclusive range a:b of n values.
        #[arg(long)]
        sweep: Option<IntRange>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares a radius search over several periods with the one-period maximum, as JSON.
    LemmaCheck {
        #[command(flatten)]
        function: FunctionArgs,
        /// Centre point; omit to draw random functions and points instead.
        #[arg(long, value_parser = rational, allow_hyphen_values = true, required_unless_present = "seed")]
        x: Option<Rational>,
        /// Seed for random instances.
        #[arg(long, conflicts_with = "x")]
        seed: Option<u64>,
        /// Number of random instances.
        #[arg(long, default_value_t = 10)]
        random: usize,
        /// Search radii up to (1 + periods_beyond)·period.
        #[arg(long, default_value_t = 4)]
        periods_beyond: u32,
        /// Radii sampled uniformly in (0, r_max].
        #[arg(long, default_value_t = 100_000)]
        grid_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Target {
    Mf,
    F,
}

enum Outcome {
    Ok,
    Violation(String),
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            file.write_all(text.as_bytes())?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    emit(out, &io::to_json_string(value)?)
}

fn surd_enclosure(v: &SurdValue, bits: u32) -> EnclosureReport {
    v.to_enclosure(bits).to_report()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ProfileOutput {
    profile: RadialAverageProfile,
    maximum: SurdValue,
    maximum_enclosure: EnclosureReport,
    argmax_radius: SurdValue,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HolderOutput {
    target: Target,
    alpha: String,
    grid_count: usize,
    report: HolderNormReport,
    /// Grid points of the witness pair.
    witness_points: Option<(String, String)>,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let bits = cli.precision_bits;
    match cli.command {
        Command::MaximalCurve { function, grid, out } => {
            let f = function.load()?;
            let rows = maximal1d::maximal_curve(&f, &grid.points());
            let mut buf = Vec::new();
            io::write_curve_csv(&mut buf, &rows)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
            Ok(Outcome::Ok)
        }
        Command::AverageProfile { function, x, r_max, out } => {
            let f = function.load()?;
            let r_max = r_max.unwrap_or_else(|| f.period().clone());
            let profile = maximal1d::average_profile(&f, &x, &r_max)?;
            let max = maximal1d::profile_max(&profile);
            let output = ProfileOutput {
                maximum_enclosure: surd_enclosure(&max.value, bits),
                maximum: max.value,
                argmax_radius: max.argmax_radius,
                profile,
            };
            emit_json(out.as_deref(), &output)?;
            Ok(Outcome::Ok)
        }
        Command::HolderNorm { function, grid, alpha, target, out } => {
            let f = function.load()?;
            let points = grid.points();
            let exponent = alpha.exponent(points.len())?;
            let values: Vec<f64> = match target {
                Target::Mf => maximal1d::maximal_curve(&f, &points).iter().map(|(_, v)| v.to_f64()).collect(),
                Target::F => points.iter().map(|x| hlmax_core::exactnum::rational::to_f64(&f.evaluate(x))).collect(),
            };
            let report = holder::holder_seminorm_line(&points, &values, &exponent)?;
            let witness_points = report
                .witness_pair
                .map(|(i, j)| (format_rational(&points[i]), format_rational(&points[j])));
            let output = HolderOutput {
                target,
                alpha: alpha.describe(),
                grid_count: points.len(),
                report,
                witness_points,
            };
            emit_json(out.as_deref(), &output)?;
            Ok(Outcome::Ok)
        }
        Command::AnnularDecay { space, masses, delta, out } => {
            let file = File::open(&space).with_context(|| format!("opening {}", space.display()))?;
            let distances = io::read_distance_matrix(file).with_context(|| space.display().to_string())?;
            let masses = match masses {
                Some(path) => {
                    let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
                    io::read_vector(file, &path.display().to_string())?
                }
                None => vec![int(1); distances.len()],
            };
            let space = FiniteMetricMeasureSpace::new(distances, masses)?;
            let report = metricspace::annular_decay_k_with_precision(&space, &delta, bits)?;
            emit_json(out.as_deref(), &report)?;
            Ok(Outcome::Ok)
        }
        Command::VerifyTheorem1 { trials, seed, grid_count, pairs, summary, out } => {
            let mut report = experiments::verify_theorem1_on_line(trials, seed, grid_count, pairs)?;
            if summary {
                report.trial_records.clear();
            }
            emit_json(out.as_deref(), &report)?;
            Ok(if report.passed {
                Outcome::Ok
            } else {
                Outcome::Violation(format!("{} violations", report.violations.len()))
            })
        }
        Command::VerifyContinuity { function, shifts, shift_count, alpha, beta, grid, out } => {
            let f = function.load()?;
            let shifts = match shift_count {
                Some(k) => (1..=k).map(|k| Rational::new(1.into(), k.into())).collect(),
                None => shifts,
            };
            if shifts.is_empty() {
                bail!("give --shifts or --shift-count");
            }
            let report = experiments::verify_theorem2_continuity(&f, &shifts, &alpha, &beta, &grid.points())?;
            emit_json(out.as_deref(), &report)?;
            Ok(if report.passed {
                Outcome::Ok
            } else {
                Outcome::Violation("rate bound fails for some shift".into())
            })
        }
        Command::Counterexample { n, sweep, out } => {
            if let Some(n) = n {
                let report = experiments::verify_counterexample_with_precision(n, bits)?;
                emit_json(out.as_deref(), &report)?;
                return Ok(counterexample_outcome(std::slice::from_ref(&report)));
            }
            let range = sweep.expect("clap requires --n or --sweep");
            let reports = (range.lo..=range.hi)
                .map(|n| experiments::verify_counterexample_with_precision(n, bits))
                .collect::<Result<Vec<_>, _>>()?;
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format_rational(&r.dn),
                        io::format_float(r.mfn_at_half.to_f64()),
                        io::format_float(r.mfn_at_dn.to_f64()),
                        r.inequality_holds.to_string(),
                        io::format_float(r.quotient),
                        io::format_float(r.norm_lower_bound),
                        r.norm_bound_holds.to_string(),
                    ]
                })
                .collect();
            let header = [
                "n",
                "dn",
                "mfn_at_half",
                "mfn_at_dn",
                "inequality_holds",
                "quotient",
                "norm_lower_bound",
                "norm_bound_holds",
            ];
            let mut buf = Vec::new();
            io::write_table_csv(&mut buf, &header, &rows)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
            Ok(counterexample_outcome(&reports))
        }
        Command::LemmaCheck { function, x, seed, random, periods_beyond, grid_count, out } => {
            let checks = match (x, seed) {
                (Some(x), _) => {
                    let f = function.load()?;
                    vec![experiments::verify_periodic_lemma(&f, &x, periods_beyond, grid_count)?]
                }
                (None, Some(seed)) => (0..random as u64)
                    .map(|i| {
                        let mut rng = experiments::trial_rng(seed, i);
                        let f = experiments::random_pwl(&mut rng);
                        let x = experiments::random_point(&mut rng, f.period());
                        experiments::verify_periodic_lemma(&f, &x, periods_beyond, grid_count)
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                (None, None) => bail!("give --x or --seed"),
            };
            emit_json(out.as_deref(), &checks)?;
            let failed = checks.iter().filter(|c| !c.holds).count();
            Ok(if failed == 0 {
                Outcome::Ok
            } else {
                Outcome::Violation(format!("{failed} of {} checks exceed the exact maximum", checks.len()))
            })
        }
    }
}

fn counterexample_outcome(reports: &[CounterexampleReport]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.inequality_holds || !r.norm_bound_holds)
        .map(|r| r.n.to_string())
        .collect();
    if bad.is_empty() {
        Outcome::Ok
    } else {
        Outcome::Violation(format!("chain fails for n = {}", bad.join(", ")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation(msg)) => {
            eprintln!("hlmax: violation: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            let mismatch = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<hlmax_core::Error>(), Some(hlmax_core::Error::ClosedFormMismatch(_))));
            eprintln!("hlmax: error: {e:#}");
            ExitCode::from(if mismatch { 1 } else { 2 })
        }
    }
}
