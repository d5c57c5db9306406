//! Reproduction harnesses: the hat-function counterexample, the one-period
//! reduction, the boundedness estimate on the line and the interpolation rate
//! bound. Every harness returns a serializable report; nothing panics on a
//! violated inequality, the report records it.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::enclosure::EnclosureReport;
use crate::exactnum::rational::{self, int, rat, Rational};
use crate::exactnum::SurdValue;
use crate::holder::{self, HolderNormReport, VariableExponent};
use crate::maximal1d;
use crate::pwl::PeriodicPiecewiseLinear;

/// Bits used for every enclosure feeding a float column of a report.
pub const REPORT_PRECISION_BITS: u32 = 200;

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    Ok(())
}

fn n_rational(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

/// `f_n = hat - 1/n`.
pub fn counterexample_sequence(n: u64) -> Result<PeriodicPiecewiseLinear> {
    check_n(n)?;
    Ok(PeriodicPiecewiseLinear::hat().affine_transform(&Rational::one(), &-n_rational(n).recip()))
}

/// `d_n = 1/2 - 1/(4n²)`.
pub fn d_n(n: u64) -> Rational {
    let n = n_rational(n);
    rat(1, 2) - (int(4) * &n * &n).recip()
}

/// `M(hat)` on `[0, 1]`: `2 - √(x² + 2)` up to `1/2`, `x` beyond.
pub fn mf_closed_form_on_unit(x: &Rational) -> Result<SurdValue> {
    if x.is_negative() || x > &Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "{} lies outside [0, 1]",
            rational::format_rational(x)
        )));
    }
    if x <= &rat(1, 2) {
        SurdValue::new(int(2), int(-1), x * x + int(2))
    } else {
        Ok(SurdValue::rational(x.clone()))
    }
}

/// `M(hat)` on all of ℝ, through evenness and 2-periodicity.
pub fn mf_closed_form(x: &Rational) -> SurdValue {
    let two = int(2);
    let mut y = x - (x / &two).floor() * &two;
    if y > Rational::one() {
        y = two - y;
    }
    mf_closed_form_on_unit(&y).expect("reduced into [0, 1]")
}

/// `M(f_n)(1/2) = 1 - √(1/4 + 1/n - 1/n²)`.
pub fn mfn_at_half_closed_form(n: u64) -> Result<SurdValue> {
    check_n(n)?;
    let inv = n_rational(n).recip();
    SurdValue::new(int(1), int(-1), rat(1, 4) + &inv - &inv * &inv)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CounterexampleReport {
    pub n: u64,
    #[serde(with = "rational::as_str")]
    pub dn: Rational,
    pub mf_at_half: SurdValue,
    pub mf_at_dn: SurdValue,
    pub mfn_at_half: SurdValue,
    pub mfn_at_dn: SurdValue,
    /// `Mf_n(d_n) ≤ Mf_n(1/2)`, decided exactly.
    pub inequality_holds: bool,
    /// `(Mf(d_n) - Mf(1/2)) / (1/2 - d_n)`.
    pub quotient: f64,
    pub quotient_enclosure: EnclosureReport,
    /// `|Mf_n(1/2) - Mf(1/2) - Mf_n(d_n) + Mf(d_n)| / (1/2 - d_n)`, from the
    /// single pair `(1/2, d_n)`.
    pub norm_lower_bound: f64,
    pub norm_lower_bound_enclosure: EnclosureReport,
    /// `norm_lower_bound ≥ 1/6`, decided from the enclosure.
    pub norm_bound_holds: bool,
    /// Engine value at `1/2` equals the closed form exactly.
    pub closed_form_agrees: bool,
}

/// Runs the counterexample chain for one `n` with the exact engine.
///
/// A disagreement between engine and closed form is an error, not a report.
pub fn verify_counterexample(n: u64) -> Result<CounterexampleReport> {
    verify_counterexample_with_precision(n, REPORT_PRECISION_BITS)
}

/// As [`verify_counterexample`] with `bits`-bit enclosures for the float fields.
pub fn verify_counterexample_with_precision(n: u64, bits: u32) -> Result<CounterexampleReport> {
    let f_n = counterexample_sequence(n)?;
    let hat = PeriodicPiecewiseLinear::hat();
    let half = rat(1, 2);
    let dn = d_n(n);

    let mf_at_half = maximal1d::maximal_function(&hat, &half);
    let mf_at_dn = maximal1d::maximal_function(&hat, &dn);
    let mfn_at_half = maximal1d::maximal_function(&f_n, &half);
    let mfn_at_dn = maximal1d::maximal_function(&f_n, &dn);

    let closed = mfn_at_half_closed_form(n)?;
    if mfn_at_half != closed {
        return Err(Error::ClosedFormMismatch(format!(
            "engine Mf_n(1/2) = {mfn_at_half}, closed form {closed} (n = {n})"
        )));
    }
    for (x, engine) in [(&half, &mf_at_half), (&dn, &mf_at_dn)] {
        let expected = mf_closed_form(x);
        if *engine != expected {
            return Err(Error::ClosedFormMismatch(format!(
                "engine Mf({}) = {engine}, closed form {expected}",
                rational::format_rational(x)
            )));
        }
    }

    let inequality_holds = mfn_at_dn <= mfn_at_half;
    let inv_gap = (&half - &dn).recip();
    let quotient = (mf_at_dn.to_enclosure(bits) - mf_at_half.to_enclosure(bits)).scale(&inv_gap);
    let bound = (mfn_at_half.to_enclosure(bits) - mf_at_half.to_enclosure(bits) - mfn_at_dn.to_enclosure(bits)
        + mf_at_dn.to_enclosure(bits))
    .abs()
    .scale(&inv_gap);
    let norm_bound_holds = bound.lo() >= &rat(1, 6);

    Ok(CounterexampleReport {
        n,
        dn,
        mf_at_half,
        mf_at_dn,
        mfn_at_half,
        mfn_at_dn,
        inequality_holds,
        quotient: quotient.mid_f64(),
        quotient_enclosure: quotient.to_report(),
        norm_lower_bound: bound.mid_f64(),
        norm_lower_bound_enclosure: bound.to_report(),
        norm_bound_holds,
        closed_form_agrees: true,
    })
}

/// Counterexample reports for every `n` in `ns`, order preserved.
pub fn counterexample_sweep(ns: &[u64]) -> Result<Vec<CounterexampleReport>> {
    ns.par_iter().map(|&n| verify_counterexample(n)).collect()
}

/// Smallest `n₀` in the sweep such that `holds` is true for every swept
/// `n ≥ n₀`; `None` if it fails at the largest `n`.
pub fn empirical_threshold<F>(reports: &[CounterexampleReport], holds: F) -> Option<u64>
where
    F: Fn(&CounterexampleReport) -> bool,
{
    let mut sorted: Vec<&CounterexampleReport> = reports.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let mut threshold = None;
    for r in sorted.iter().rev() {
        if !holds(r) {
            break;
        }
        threshold = Some(r.n);
    }
    threshold
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaCheck {
    #[serde(with = "rational::as_str")]
    pub x: Rational,
    #[serde(with = "rational::as_str")]
    pub period: Rational,
    pub periods_beyond: u32,
    pub grid_count: usize,
    pub exact: SurdValue,
    pub exact_float: f64,
    pub brute_force: f64,
    /// `brute_force - exact_float`; at most `1e-12` when the check holds.
    pub excess: f64,
    pub holds: bool,
}

pub const LEMMA_TOLERANCE: f64 = 1e-12;

/// Grid search over `[0, (1 + periods_beyond)·T]` against the exact
/// one-period maximum.
pub fn verify_periodic_lemma(
    f: &PeriodicPiecewiseLinear,
    x: &Rational,
    periods_beyond: u32,
    grid_count: usize,
) -> Result<LemmaCheck> {
    if periods_beyond < 1 {
        return Err(Error::InvalidArgument("periods_beyond must be at least 1".into()));
    }
    if grid_count < 100 {
        return Err(Error::InvalidArgument("grid_count must be at least 100".into()));
    }
    let exact = maximal1d::maximal_function(f, x);
    let r_max = f.period() * int(1 + i64::from(periods_beyond));
    let brute_force = maximal1d::maximal_function_brute_force(f, x, &r_max, grid_count)?;
    let exact_float = exact.to_f64();
    let excess = brute_force - exact_float;
    Ok(LemmaCheck {
        x: x.clone(),
        period: f.period().clone(),
        periods_beyond,
        grid_count,
        exact,
        exact_float,
        brute_force,
        excess,
        holds: excess <= LEMMA_TOLERANCE,
    })
}

/// Seeded generator for experiment inputs; `stream` separates trials.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random continuous periodic piecewise-linear function: period in
/// `{1, 2, 4}`, 2 to 8 breakpoints on the grid `j·T/16`, values `m/16` in
/// `[-1, 1]`.
pub fn random_pwl<R: Rng>(rng: &mut R) -> PeriodicPiecewiseLinear {
    let period = [1i64, 2, 4][rng.gen_range(0..3)];
    let count = rng.gen_range(2..=8);
    let mut slots: Vec<i64> = (0..16).collect();
    slots.shuffle(rng);
    let mut chosen: Vec<i64> = slots.into_iter().take(count).collect();
    chosen.sort_unstable();
    let points = chosen
        .into_iter()
        .map(|j| (rat(j * period, 16), rat(rng.gen_range(-16..=16), 16)))
        .collect();
    PeriodicPiecewiseLinear::new(int(period), points).expect("generated breakpoints are valid")
}

/// Random point `m/64` in `[-T, 2T)`.
pub fn random_point<R: Rng>(rng: &mut R, period: &Rational) -> Rational {
    let units = (period * int(64)).to_integer();
    let units: i64 = (&units).try_into().expect("small period");
    rat(rng.gen_range(-units..2 * units), 64)
}

/// `count` equispaced points `start + i·T/count` covering one period.
pub fn period_grid(f: &PeriodicPiecewiseLinear, count: usize) -> Vec<Rational> {
    let step = f.period() / Rational::from_integer(count.into());
    (0..count)
        .map(|i| f.window_start() + &step * Rational::from_integer(i.into()))
        .collect()
}

/// `count ≥ 2` points from `start` to `end` inclusive.
pub fn uniform_grid(start: &Rational, end: &Rational, count: usize) -> Result<Vec<Rational>> {
    if count < 2 {
        return Err(Error::InvalidArgument("grid count must be at least 2".into()));
    }
    if end < start {
        return Err(Error::InvalidArgument("grid end precedes its start".into()));
    }
    let step = (end - start) / Rational::from_integer((count - 1).into());
    Ok((0..count)
        .map(|i| start + &step * Rational::from_integer(i.into()))
        .collect())
}

fn sample_values(f: &PeriodicPiecewiseLinear, grid: &[Rational]) -> Vec<f64> {
    grid.iter().map(|x| rational::to_f64(&f.evaluate(x))).collect()
}

fn sample_maximal(f: &PeriodicPiecewiseLinear, grid: &[Rational]) -> Vec<f64> {
    maximal1d::maximal_curve(f, grid)
        .into_iter()
        .map(|(_, v)| v.to_f64())
        .collect()
}

/// `C₁` for the line with Lebesgue measure (`K = 1`, `δ = 1`).
pub const LINE_C1: f64 = 25.0;

/// Relative slack for float rounding in norm comparisons.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundViolation {
    pub trial: usize,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LineBoundTrial {
    pub trial: usize,
    pub function: crate::pwl::FunctionFile,
    pub f_norm: HolderNormReport,
    pub mf_norm: HolderNormReport,
    /// `gridNorm(Mf) / gridNorm(f)`.
    pub norm_ratio: f64,
    /// Exact `‖f‖_∞` over the whole line.
    pub f_sup: f64,
    /// Upper bound of `‖f‖_{C^{0,α}}` valid for any `α` with values in `[0, 1]`.
    pub f_norm_upper: f64,
    /// Largest `(Mf(x) - Mf(y)) / (f_norm_upper · min{a^α(x), a^α(y)})` seen.
    pub max_two_point_ratio: f64,
    pub pairs_checked: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LineBoundReport {
    pub seed: u64,
    pub trials: usize,
    pub grid_count: usize,
    pub pairs_per_trial: usize,
    pub c1: f64,
    pub max_norm_ratio: f64,
    pub max_two_point_ratio: f64,
    pub violations: Vec<BoundViolation>,
    pub passed: bool,
    pub trial_records: Vec<LineBoundTrial>,
}

/// Checks one instance on the given grid; the function is used as given.
pub fn check_line_bound_instance<R: Rng>(
    trial: usize,
    f: &PeriodicPiecewiseLinear,
    grid: &[Rational],
    alpha: &VariableExponent,
    pairs: usize,
    rng: &mut R,
) -> Result<(LineBoundTrial, Vec<BoundViolation>)> {
    let alpha_values = alpha.sampled(grid.len())?;
    let dist = holder::line_distances(grid)?;
    let f_values = sample_values(f, grid);
    let mf_values = sample_maximal(f, grid);
    let f_norm = holder::holder_seminorm(&f_values, &alpha_values, |i, j| dist[i][j])?;
    let mf_norm = holder::holder_seminorm(&mf_values, &alpha_values, |i, j| dist[i][j])?;
    let f_sup = rational::to_f64(&f.sup_norm());
    let lipschitz = rational::to_f64(&f.lipschitz_constant());
    let f_norm_upper = f_sup + lipschitz.max(2.0 * f_sup);

    let mut violations = Vec::new();
    let mut violate = |kind: &str, detail: String| {
        violations.push(BoundViolation {
            trial,
            kind: kind.to_string(),
            detail,
        })
    };
    let norm_ratio = if f_norm.norm > 0.0 {
        mf_norm.norm / f_norm.norm
    } else {
        0.0
    };
    if mf_norm.norm > LINE_C1 * f_norm.norm * (1.0 + NORM_TOLERANCE) {
        violate(
            "norm-bound",
            format!("gridNorm(Mf) = {} > 25 · {}", mf_norm.norm, f_norm.norm),
        );
    }
    if mf_norm.sup_norm > f_sup * (1.0 + NORM_TOLERANCE) {
        violate(
            "sup-contraction",
            format!("sup Mf = {} > sup |f| = {f_sup}", mf_norm.sup_norm),
        );
    }

    let n = grid.len();
    let mut max_two_point_ratio = 0.0f64;
    let mut pairs_checked = 0;
    if n >= 2 && f_norm_upper > 0.0 {
        for _ in 0..pairs {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let a = dist[i][j];
            let scale = a.powf(alpha_values[i]).min(a.powf(alpha_values[j]));
            let drop = mf_values[i] - mf_values[j];
            pairs_checked += 1;
            let ratio = drop / (f_norm_upper * scale);
            max_two_point_ratio = max_two_point_ratio.max(ratio);
            if ratio > LINE_C1 * (1.0 + NORM_TOLERANCE) {
                violate(
                    "two-point",
                    format!(
                        "Mf({}) = {} < Mf({}) - 25·{}·{scale}",
                        rational::format_rational(&grid[j]),
                        mf_values[j],
                        rational::format_rational(&grid[i]),
                        f_norm_upper
                    ),
                );
            }
        }
    }

    let record = LineBoundTrial {
        trial,
        function: f.to_json(),
        f_norm,
        mf_norm,
        norm_ratio,
        f_sup,
        f_norm_upper,
        max_two_point_ratio,
        pairs_checked,
    };
    Ok((record, violations))
}

/// Random trials on the line: each draws `f`, scales it to grid norm 1 and
/// draws `α(xᵢ) = m/64`.
pub fn verify_theorem1_on_line(trials: usize, seed: u64, grid_count: usize, pairs: usize) -> Result<LineBoundReport> {
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if grid_count < 2 {
        return Err(Error::InvalidArgument("grid count must be at least 2".into()));
    }
    let outcomes: Vec<Result<(LineBoundTrial, Vec<BoundViolation>)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let raw = random_pwl(&mut rng);
            let grid = period_grid(&raw, grid_count);
            let alpha = VariableExponent::per_point((0..grid_count).map(|_| rat(rng.gen_range(0..=64), 64)).collect())?;
            let alpha_values = alpha.sampled(grid_count)?;
            let dist = holder::line_distances(&grid)?;
            let norm = holder::holder_seminorm(&sample_values(&raw, &grid), &alpha_values, |i, j| dist[i][j])?.norm;
            let f = match rational::from_f64(1.0 / norm) {
                Some(scale) if norm > 0.0 => raw.affine_transform(&scale, &Rational::zero()),
                _ => raw,
            };
            check_line_bound_instance(trial, &f, &grid, &alpha, pairs, &mut rng)
        })
        .collect();
    let mut records = Vec::with_capacity(trials);
    let mut violations = Vec::new();
    for outcome in outcomes {
        let (record, mut v) = outcome?;
        records.push(record);
        violations.append(&mut v);
    }
    let max_norm_ratio = records.iter().fold(0.0f64, |m, r| m.max(r.norm_ratio));
    let max_two_point_ratio = records.iter().fold(0.0f64, |m, r| m.max(r.max_two_point_ratio));
    Ok(LineBoundReport {
        seed,
        trials,
        grid_count,
        pairs_per_trial: pairs,
        c1: LINE_C1,
        max_norm_ratio,
        max_two_point_ratio,
        passed: violations.is_empty(),
        violations,
        trial_records: records,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityRow {
    #[serde(with = "rational::as_str")]
    pub shift: Rational,
    /// Grid `C^{0,β}` seminorm of `Mf_k - Mf`.
    pub distance_beta: f64,
    /// Grid sup of `|Mf_k - Mf|`.
    pub sup_diff: f64,
    /// Grid `C^{0,α}` norm of `Mf_k`.
    pub mfk_alpha_norm: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityReport {
    #[serde(with = "rational::as_str")]
    pub alpha: Rational,
    #[serde(with = "rational::as_str")]
    pub beta: Rational,
    pub q: f64,
    /// `max(1, grid C^{0,α} norms of Mf and every Mf_k)`.
    pub n_bound: f64,
    pub grid_size: usize,
    pub rows: Vec<ContinuityRow>,
    pub all_bounds_hold: bool,
    /// `distance_beta` is non-increasing along the rows.
    pub distance_monotone: bool,
    /// Largest rise of `distance_beta` between consecutive rows, 0 when
    /// monotone. Grid sampling of a moving kink makes small rises possible.
    pub max_increase: f64,
    /// Every row satisfies the rate bound.
    pub passed: bool,
}

/// Rate-bound check for `f_k = f + shift_k` with constant exponents `β < α`.
pub fn verify_theorem2_continuity(
    f: &PeriodicPiecewiseLinear,
    shifts: &[Rational],
    alpha: &Rational,
    beta: &Rational,
    grid: &[Rational],
) -> Result<ContinuityReport> {
    if !alpha.is_positive() || alpha > &Rational::one() {
        return Err(Error::InvalidArgument("alpha must lie in (0, 1]".into()));
    }
    if beta.is_negative() || beta >= alpha {
        return Err(Error::InvalidArgument("beta must satisfy 0 <= beta < alpha".into()));
    }
    if grid.len() < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    let q = rational::to_f64(&(beta / alpha));
    let dist = holder::line_distances(grid)?;
    let d = |i: usize, j: usize| dist[i][j];
    let alpha_values = vec![rational::to_f64(alpha); grid.len()];
    let beta_values = vec![rational::to_f64(beta); grid.len()];

    let base = maximal1d::maximal_curve(f, grid);
    let base_values: Vec<f64> = base.iter().map(|(_, v)| v.to_f64()).collect();
    let base_norm = holder::holder_seminorm(&base_values, &alpha_values, d)?.norm;

    let mut partial = Vec::with_capacity(shifts.len());
    for shift in shifts {
        let f_k = f.affine_transform(&Rational::one(), shift);
        let curve = maximal1d::maximal_curve(&f_k, grid);
        let values: Vec<f64> = curve.iter().map(|(_, v)| v.to_f64()).collect();
        // Differences from exact values, so equal surds give exactly 0.
        let diff: Vec<f64> = curve
            .iter()
            .zip(&base)
            .map(|((_, a), (_, b))| match a.checked_sub(b) {
                Some(exact) => exact.to_f64(),
                None => (a.to_enclosure(REPORT_PRECISION_BITS) - b.to_enclosure(REPORT_PRECISION_BITS)).mid_f64(),
            })
            .collect();
        let distance = holder::holder_seminorm(&diff, &beta_values, d)?;
        let norm_k = holder::holder_seminorm(&values, &alpha_values, d)?.norm;
        partial.push((shift.clone(), distance.seminorm, distance.sup_norm, norm_k));
    }

    let n_bound = partial.iter().fold(base_norm.max(1.0), |m, row| m.max(row.3));
    let mut rows = Vec::with_capacity(partial.len());
    for (shift, distance_beta, sup_diff, mfk_alpha_norm) in partial {
        let bound = holder::continuity_rate_bound(n_bound, q, sup_diff)?;
        rows.push(ContinuityRow {
            shift,
            distance_beta,
            sup_diff,
            mfk_alpha_norm,
            bound,
            holds: distance_beta <= bound * (1.0 + NORM_TOLERANCE) + f64::EPSILON,
        });
    }
    let all_bounds_hold = rows.iter().all(|r| r.holds);
    let max_increase = rows
        .windows(2)
        .fold(0.0f64, |m, w| m.max(w[1].distance_beta - w[0].distance_beta));
    let distance_monotone = max_increase == 0.0;
    Ok(ContinuityReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        q,
        n_bound,
        grid_size: grid.len(),
        passed: all_bounds_hold,
        rows,
        all_bounds_hold,
        distance_monotone,
        max_increase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_examples() {
        let f10 = counterexample_sequence(10).unwrap();
        assert_eq!(f10.evaluate(&int(0)), rat(-1, 10));
        assert_eq!(f10.evaluate(&int(1)), rat(9, 10));
        assert_eq!(counterexample_sequence(4).unwrap().evaluate(&rat(1, 4)), int(0));
        assert_eq!(counterexample_sequence(3).unwrap().evaluate(&int(0)), rat(-1, 3));
        assert!(counterexample_sequence(2).is_err());
        assert_eq!(d_n(10), rat(199, 400));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mf_closed_form(&int(0)), SurdValue::new(int(2), int(-1), int(2)).unwrap());
        assert_eq!(mf_closed_form(&rat(1, 2)), SurdValue::rational(rat(1, 2)));
        assert_eq!(mf_closed_form(&int(1)), SurdValue::rational(int(1)));
        assert_eq!(mf_closed_form(&rat(-3, 4)), SurdValue::rational(rat(3, 4)));
        assert_eq!(mf_closed_form(&rat(9, 4)), mf_closed_form(&rat(1, 4)));
        assert!(mf_closed_form_on_unit(&rat(3, 2)).is_err());
        assert_eq!(
            mfn_at_half_closed_form(10).unwrap(),
            SurdValue::new(int(1), int(-1), rat(17, 50)).unwrap()
        );
        assert_eq!(
            mfn_at_half_closed_form(100).unwrap(),
            SurdValue::new(int(1), int(-1), rat(2599, 10000)).unwrap()
        );
        assert!(mfn_at_half_closed_form(2).is_err());
    }

    #[test]
    fn counterexample_at_hundred() {
        let r = verify_counterexample(100).unwrap();
        assert!(r.inequality_holds);
        assert!(r.norm_bound_holds);
        assert!((r.quotient - 1.0 / 3.0).abs() < 0.01);
        assert_eq!(r.mf_at_half, SurdValue::rational(rat(1, 2)));
    }

    #[test]
    fn threshold_scans_from_the_top() {
        let reports = counterexample_sweep(&[3, 4, 5, 6]).unwrap();
        assert_eq!(empirical_threshold(&reports, |_| true), Some(3));
        assert_eq!(empirical_threshold(&reports, |r| r.n != 4), Some(5));
        assert_eq!(empirical_threshold(&reports, |r| r.n != 6), None);
    }

    #[test]
    fn one_period_on_constant() {
        let one = PeriodicPiecewiseLinear::constant(int(1), int(1)).unwrap();
        let c = verify_periodic_lemma(&one, &rat(1, 3), 4, 100).unwrap();
        assert!(c.holds);
        assert_eq!(c.brute_force, 1.0);
        assert!(verify_periodic_lemma(&one, &rat(1, 3), 0, 100).is_err());
        assert!(verify_periodic_lemma(&one, &rat(1, 3), 1, 99).is_err());
    }

    #[test]
    fn random_generators_are_seeded() {
        let a = random_pwl(&mut trial_rng(7, 3));
        let b = random_pwl(&mut trial_rng(7, 3));
        assert_eq!(a, b);
        assert!(a.points().len() >= 2);
    }

    #[test]
    fn line_bound_trivial_cases() {
        let grid = uniform_grid(&int(0), &rat(63, 32), 64).unwrap();
        let hat = PeriodicPiecewiseLinear::hat();
        for alpha in [int(1), int(0)] {
            let a = VariableExponent::constant(alpha).unwrap();
            let (rec, v) = check_line_bound_instance(0, &hat, &grid, &a, 200, &mut trial_rng(1, 0)).unwrap();
            assert!(v.is_empty(), "{v:?}");
            assert!(rec.norm_ratio < 25.0);
        }
        let one = PeriodicPiecewiseLinear::constant(int(1), int(2)).unwrap();
        let a = VariableExponent::constant(rat(1, 2)).unwrap();
        let (rec, v) = check_line_bound_instance(0, &one, &grid, &a, 50, &mut trial_rng(1, 0)).unwrap();
        assert!(v.is_empty());
        assert_eq!(rec.norm_ratio, 1.0);
    }

    #[test]
    fn continuity_examples() {
        let hat = PeriodicPiecewiseLinear::hat();
        let grid = uniform_grid(&int(0), &int(1), 41).unwrap();
        let shifts: Vec<Rational> = (3..8).map(|k| -rat(1, k)).collect();
        let r = verify_theorem2_continuity(&hat, &shifts, &int(1), &rat(1, 2), &grid).unwrap();
        assert!(r.all_bounds_hold);
        let zeros = vec![Rational::zero(); 3];
        let z = verify_theorem2_continuity(&hat, &zeros, &int(1), &rat(1, 2), &grid).unwrap();
        assert!(z.rows.iter().all(|row| row.distance_beta == 0.0 && row.sup_diff == 0.0));
        assert!(verify_theorem2_continuity(&hat, &shifts, &int(1), &int(1), &grid).is_err());
    }
}
