//! Continuous periodic piecewise-linear functions with rational data.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, format_rational, int, parse_rational, Rational};

/// A continuous `T`-periodic function, affine between consecutive breakpoints.
///
/// Breakpoints are stored on the window `[t₀, t₀ + T)` where `t₀` is the
/// smallest breakpoint; the last segment wraps to `(t₀ + T, v₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPiecewiseLinear {
    period: Rational,
    points: Vec<(Rational, Rational)>,
    // ∫ from t₀ to tᵢ, and over one full period
    prefix: Vec<Rational>,
    period_integral: Rational,
}

/// Which one-sided piece to pick at a breakpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl PeriodicPiecewiseLinear {
    pub fn new(period: Rational, points: Vec<(Rational, Rational)>) -> Result<Self> {
        if !period.is_positive() {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument("at least one breakpoint is required".into()));
        }
        for pair in points.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "breakpoints must be strictly increasing ({} then {})",
                    format_rational(&pair[0].0),
                    format_rational(&pair[1].0)
                )));
            }
        }
        let end = &points[0].0 + &period;
        if points.last().unwrap().0 >= end {
            return Err(Error::InvalidArgument(
                "breakpoints must lie in one period window [t0, t0 + T)".into(),
            ));
        }
        let mut f = PeriodicPiecewiseLinear {
            period,
            points,
            prefix: Vec::new(),
            period_integral: Rational::zero(),
        };
        f.rebuild_prefix();
        Ok(f)
    }

    fn rebuild_prefix(&mut self) {
        let k = self.points.len();
        let mut prefix = Vec::with_capacity(k);
        let mut acc = Rational::zero();
        for i in 0..k {
            prefix.push(acc.clone());
            let (t0, v0, t1, v1) = self.segment(i);
            acc += (t1 - t0) * (v0 + v1) / int(2);
        }
        self.prefix = prefix;
        self.period_integral = acc;
    }

    /// The tent function: period 2, equal to `|x|` on `[-1, 1]`.
    pub fn hat() -> Self {
        Self::new(int(2), vec![(int(-1), int(1)), (int(0), int(0))]).expect("valid hat")
    }

    pub fn constant(value: Rational, period: Rational) -> Result<Self> {
        Self::new(period, vec![(Rational::zero(), value)])
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn window_start(&self) -> &Rational {
        &self.points[0].0
    }

    pub fn integral_over_period(&self) -> &Rational {
        &self.period_integral
    }

    /// Segment `i` as `(tᵢ, vᵢ, tᵢ₊₁, vᵢ₊₁)`, wrapping the last one.
    fn segment(&self, i: usize) -> (Rational, Rational, Rational, Rational) {
        let (t0, v0) = self.points[i].clone();
        let (t1, v1) = match self.points.get(i + 1) {
            Some(next) => next.clone(),
            None => (&self.points[0].0 + &self.period, self.points[0].1.clone()),
        };
        (t0, v0, t1, v1)
    }

    fn slope(&self, i: usize) -> Rational {
        let (t0, v0, t1, v1) = self.segment(i);
        (v1 - v0) / (t1 - t0)
    }

    /// `t = t₀ + n·T + u` with `u ∈ [t₀, t₀ + T)`; returns `(n, u)`.
    fn reduce(&self, t: &Rational) -> (BigInt, Rational) {
        let t0 = self.window_start();
        let n = ((t - t0) / &self.period).floor().to_integer();
        let u = t - &self.period * Rational::from_integer(n.clone());
        (n, u)
    }

    /// Index of the segment with `tᵢ <= u < tᵢ₊₁`, `u` already reduced.
    fn locate(&self, u: &Rational) -> usize {
        self.points.partition_point(|(t, _)| t <= u) - 1
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        let (_, u) = self.reduce(t);
        let i = self.locate(&u);
        let (t0, v0, t1, v1) = self.segment(i);
        &v0 + (&v1 - &v0) * (&u - &t0) / (t1 - t0)
    }

    /// Affine piece `τ ↦ slope·τ + intercept` valid just to the given side of `t`,
    /// in unreduced coordinates.
    pub fn piece_at(&self, t: &Rational, side: Side) -> (Rational, Rational) {
        let (n, u) = self.reduce(t);
        let mut i = self.locate(&u);
        let shift = &self.period * Rational::from_integer(n);
        let at_breakpoint = self.points[i].0 == u;
        let mut offset = shift;
        if side == Side::Left && at_breakpoint {
            if i == 0 {
                i = self.points.len() - 1;
                offset -= &self.period;
            } else {
                i -= 1;
            }
        }
        let slope = self.slope(i);
        let (ti, vi, _, _) = self.segment(i);
        // g(τ) = vᵢ + slope·(τ - offset - tᵢ)
        let intercept = vi - &slope * (ti + offset);
        (slope, intercept)
    }

    /// All breakpoints of the periodic extension inside `[lo, hi]`, ascending.
    pub fn breakpoints_in(&self, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        if lo > hi {
            return out;
        }
        let (mut n, _) = self.reduce(lo);
        loop {
            let base = &self.period * Rational::from_integer(n.clone());
            if &(self.window_start() + &base) > hi {
                break;
            }
            for (t, _) in &self.points {
                let shifted = t + &base;
                if &shifted >= lo && &shifted <= hi {
                    out.push(shifted);
                }
            }
            n += 1;
        }
        out
    }

    /// Antiderivative `Φ(t) = ∫_{t₀}^{t} f`.
    pub fn antiderivative(&self, t: &Rational) -> Rational {
        let (n, u) = self.reduce(t);
        let i = self.locate(&u);
        let (t0, v0, _, _) = self.segment(i);
        let h = &u - &t0;
        let slope = self.slope(i);
        Rational::from_integer(n) * &self.period_integral
            + &self.prefix[i]
            + &v0 * &h
            + slope * &h * &h / int(2)
    }

    /// Exact `∫_a^b f(t) dt` (oriented, so `a > b` gives the negated value).
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        self.antiderivative(b) - self.antiderivative(a)
    }

    /// `scale·f + shift`, same breakpoints.
    pub fn affine_transform(&self, scale: &Rational, shift: &Rational) -> Self {
        let points = self
            .points
            .iter()
            .map(|(t, v)| (t.clone(), scale * v + shift))
            .collect();
        Self::new(self.period.clone(), points).expect("affine image keeps breakpoints valid")
    }

    /// `|f|`, with every sign change of `f` inserted as a breakpoint.
    pub fn absolute(&self) -> Self {
        let mut points = Vec::with_capacity(self.points.len() * 2);
        for i in 0..self.points.len() {
            let (t0, v0, t1, v1) = self.segment(i);
            points.push((t0.clone(), v0.abs()));
            if (v0.is_positive() && v1.is_negative()) || (v0.is_negative() && v1.is_positive()) {
                let zero = &t0 + (&t1 - &t0) * &v0 / (&v0 - &v1);
                points.push((zero, Rational::zero()));
            }
        }
        Self::new(self.period.clone(), points).expect("zero crossings lie strictly inside segments")
    }

    /// Pointwise sum of two functions with the same period.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.period != other.period {
            return Err(Error::InvalidArgument("periods differ".into()));
        }
        let lo = self.window_start().clone();
        let hi = &lo + &self.period;
        let mut ts: Vec<Rational> = self.points.iter().map(|(t, _)| t.clone()).collect();
        for t in other.breakpoints_in(&lo, &hi) {
            if t < hi {
                ts.push(t);
            }
        }
        ts.sort();
        ts.dedup();
        let points = ts
            .into_iter()
            .map(|t| {
                let v = self.evaluate(&t) + other.evaluate(&t);
                (t, v)
            })
            .collect();
        Self::new(self.period.clone(), points)
    }

    /// `max |f|`, attained at a breakpoint.
    pub fn sup_norm(&self) -> Rational {
        self.points
            .iter()
            .map(|(_, v)| v.abs())
            .max()
            .expect("non-empty")
    }

    /// Largest segment slope in absolute value.
    pub fn lipschitz_constant(&self) -> Rational {
        (0..self.points.len())
            .map(|i| self.slope(i).abs())
            .max()
            .expect("non-empty")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.points.iter().all(|(_, v)| !v.is_negative())
    }

    pub fn to_json(&self) -> FunctionFile {
        FunctionFile {
            period: format_rational(&self.period),
            points: self
                .points
                .iter()
                .map(|(t, v)| [format_rational(t), format_rational(v)])
                .collect(),
        }
    }

    pub fn from_json(file: &FunctionFile) -> Result<Self> {
        let period = parse_rational(&file.period)?;
        let points = file
            .points
            .iter()
            .map(|[t, v]| Ok((parse_rational(t)?, parse_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(period, points)
    }
}

/// On-disk function format:
/// `{"period": "2/1", "points": [["-1/1","1/1"], ["0/1","0/1"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub period: String,
    pub points: Vec<[String; 2]>,
}

/// Float mirror of [`PeriodicPiecewiseLinear::evaluate`], for cross-checks.
pub fn evaluate_f64(f: &PeriodicPiecewiseLinear, t: f64) -> f64 {
    let period = rational::to_f64(f.period());
    let t0 = rational::to_f64(f.window_start());
    let u = t - period * ((t - t0) / period).floor();
    let pts: Vec<(f64, f64)> = f
        .points()
        .iter()
        .map(|(a, b)| (rational::to_f64(a), rational::to_f64(b)))
        .collect();
    let i = pts.partition_point(|(x, _)| *x <= u).saturating_sub(1);
    let (x0, y0) = pts[i];
    let (x1, y1) = pts.get(i + 1).copied().unwrap_or((pts[0].0 + period, pts[0].1));
    y0 + (y1 - y0) * (u - x0) / (x1 - x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn hat_values() {
        let hat = PeriodicPiecewiseLinear::hat();
        assert_eq!(hat.evaluate(&rat(1, 2)), rat(1, 2));
        assert_eq!(hat.evaluate(&rat(5, 2)), rat(1, 2));
        assert_eq!(hat.evaluate(&int(-1)), int(1));
        assert_eq!(hat.evaluate(&int(0)), int(0));
        assert_eq!(hat.evaluate(&int(1)), int(1));
        assert_eq!(hat.evaluate(&int(3)), int(1));
        assert_eq!(hat.evaluate(&rat(-7, 4)), rat(1, 4));
    }

    #[test]
    fn affine_examples() {
        let hat = PeriodicPiecewiseLinear::hat();
        let f10 = hat.affine_transform(&int(1), &rat(-1, 10));
        assert_eq!(f10.evaluate(&int(0)), rat(-1, 10));
        assert_eq!(hat.affine_transform(&int(1), &int(0)), hat);
        assert_eq!(hat.affine_transform(&int(-2), &int(1)).evaluate(&int(1)), int(-1));
    }

    #[test]
    fn absolute_examples() {
        let hat = PeriodicPiecewiseLinear::hat();
        assert_eq!(hat.absolute(), hat);
        let shifted = hat.affine_transform(&int(1), &rat(-1, 10)).absolute();
        let ts: Vec<_> = shifted.points().iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(ts, vec![int(-1), rat(-1, 10), int(0), rat(1, 10)]);
        assert_eq!(shifted.evaluate(&rat(1, 10)), int(0));
        assert_eq!(shifted.evaluate(&rat(-1, 10)), int(0));
        assert_eq!(shifted.evaluate(&int(0)), rat(1, 10));
        assert_eq!(hat.affine_transform(&int(-1), &int(0)).absolute(), hat);
    }

    #[test]
    fn zero_on_breakpoint_is_not_duplicated() {
        let f = PeriodicPiecewiseLinear::hat().affine_transform(&int(1), &int(-1));
        // zero exactly at the breakpoint -1
        let abs = f.absolute();
        assert_eq!(abs.points().len(), 2);
        assert!(abs.is_nonnegative());
    }

    #[test]
    fn integrate_examples() {
        let hat = PeriodicPiecewiseLinear::hat();
        assert_eq!(hat.integrate(&int(-1), &int(1)), int(1));
        assert_eq!(hat.integrate(&int(-3), &int(1)), int(2));
        assert_eq!(hat.integrate(&int(0), &rat(1, 2)), rat(1, 8));
        assert_eq!(hat.integrate(&rat(7, 3), &rat(7, 3)), int(0));
    }

    #[test]
    fn one_sided_pieces() {
        let hat = PeriodicPiecewiseLinear::hat();
        // right of 0: τ, left of 0: -τ
        assert_eq!(hat.piece_at(&int(0), Side::Right), (int(1), int(0)));
        assert_eq!(hat.piece_at(&int(0), Side::Left), (int(-1), int(0)));
        // right of -1 (window start): -τ ; left of -1: τ + 2
        assert_eq!(hat.piece_at(&int(-1), Side::Right), (int(-1), int(0)));
        assert_eq!(hat.piece_at(&int(-1), Side::Left), (int(1), int(2)));
        // around 3 (≡ 1): left τ - 2, right -τ + 4
        assert_eq!(hat.piece_at(&int(3), Side::Left), (int(1), int(-2)));
        assert_eq!(hat.piece_at(&int(3), Side::Right), (int(-1), int(4)));
    }

    #[test]
    fn breakpoints_window() {
        let hat = PeriodicPiecewiseLinear::hat();
        let bps = hat.breakpoints_in(&rat(-3, 2), &rat(5, 2));
        assert_eq!(bps, vec![int(-1), int(0), int(1), int(2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PeriodicPiecewiseLinear::new(int(0), vec![(int(0), int(0))]).is_err());
        assert!(PeriodicPiecewiseLinear::new(int(1), vec![]).is_err());
        assert!(PeriodicPiecewiseLinear::new(int(1), vec![(int(0), int(0)), (int(0), int(1))]).is_err());
        assert!(PeriodicPiecewiseLinear::new(int(1), vec![(int(0), int(0)), (int(1), int(1))]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let hat = PeriodicPiecewiseLinear::hat();
        let json = serde_json::to_string(&hat.to_json()).unwrap();
        assert_eq!(json, r#"{"period":"2/1","points":[["-1/1","1/1"],["0/1","0/1"]]}"#);
        let back: FunctionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(PeriodicPiecewiseLinear::from_json(&back).unwrap(), hat);
    }

    #[test]
    fn sum_merges_breakpoints() {
        let hat = PeriodicPiecewiseLinear::hat();
        let other = PeriodicPiecewiseLinear::new(int(2), vec![(rat(1, 2), int(1)), (rat(3, 2), int(-1))]).unwrap();
        let sum = hat.add(&other).unwrap();
        for t in [rat(0, 1), rat(1, 3), rat(5, 4), rat(-9, 7)] {
            assert_eq!(sum.evaluate(&t), hat.evaluate(&t) + other.evaluate(&t));
        }
    }
}
