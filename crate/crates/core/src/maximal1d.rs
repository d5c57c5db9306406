//! Exact maximal function of periodic piecewise-linear functions.
//!
//! For fixed `x`, the average `A(r) = (1/2r)∫_{x-r}^{x+r}|f|` is, between
//! consecutive radii where `x ± r` meets a breakpoint of `|f|`, of the form
//! `c₋₁/r + c₀ + c₁·r`. The supremum over `r` is therefore a maximum over
//! piece endpoints and the interior critical points `r* = √(c₋₁/c₁)` of the
//! concave pieces, and for a `T`-periodic `f` it suffices to search
//! `r ∈ [0, T]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, int, Rational};
use crate::exactnum::SurdValue;
use crate::pwl::{PeriodicPiecewiseLinear, Side};

/// `A(r) = c_neg/r + c_zero + c_one·r` on `[r_lo, r_hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfilePiece {
    #[serde(with = "rational::as_str")]
    pub r_lo: Rational,
    #[serde(with = "rational::as_str")]
    pub r_hi: Rational,
    #[serde(with = "rational::as_str")]
    pub c_neg: Rational,
    #[serde(with = "rational::as_str")]
    pub c_zero: Rational,
    #[serde(with = "rational::as_str")]
    pub c_one: Rational,
}

impl ProfilePiece {
    /// Value at `r`; `r = 0` is only meaningful when `c_neg = 0`.
    pub fn eval(&self, r: &Rational) -> Rational {
        if r.is_zero() {
            debug_assert!(self.c_neg.is_zero());
            return self.c_zero.clone();
        }
        &self.c_neg / r + &self.c_zero + &self.c_one * r
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational) {
        (&self.c_neg, &self.c_zero, &self.c_one)
    }

    /// Interior maximizer `(value, radius)` of a strictly concave piece, if it
    /// lies inside `[r_lo, r_hi]`.
    pub fn interior_max(&self) -> Option<(SurdValue, SurdValue)> {
        if !(self.c_neg.is_negative() && self.c_one.is_negative()) {
            return None;
        }
        let r_sq = &self.c_neg / &self.c_one;
        if r_sq < &self.r_lo * &self.r_lo || r_sq > &self.r_hi * &self.r_hi {
            return None;
        }
        let value = SurdValue::new(self.c_zero.clone(), int(-2), &self.c_neg * &self.c_one)
            .expect("product of two negatives is positive");
        let radius = SurdValue::sqrt(r_sq).expect("positive ratio");
        Some((value, radius))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RadialAverageProfile {
    #[serde(with = "rational::as_str")]
    pub center: Rational,
    pub pieces: Vec<ProfilePiece>,
    /// `|f(x)|`, the `r = 0` convention.
    #[serde(with = "rational::as_str")]
    pub value_at_zero: Rational,
}

impl RadialAverageProfile {
    pub fn r_max(&self) -> &Rational {
        &self.pieces.last().expect("non-empty profile").r_hi
    }

    /// Evaluates the profile at `0 <= r <= r_max`.
    pub fn eval(&self, r: &Rational) -> Option<Rational> {
        if r.is_zero() {
            return Some(self.value_at_zero.clone());
        }
        let idx = self.pieces.partition_point(|p| &p.r_hi < r);
        self.pieces.get(idx).map(|p| p.eval(r))
    }

    /// Merges neighbours with identical coefficients.
    pub fn merged(&self) -> RadialAverageProfile {
        let mut pieces: Vec<ProfilePiece> = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            match pieces.last_mut() {
                Some(last) if last.coefficients() == piece.coefficients() => {
                    last.r_hi = piece.r_hi.clone();
                }
                _ => pieces.push(piece.clone()),
            }
        }
        RadialAverageProfile {
            center: self.center.clone(),
            pieces,
            value_at_zero: self.value_at_zero.clone(),
        }
    }

    /// Checks tiling, continuity and non-negativity; returns a description
    /// of the first problem found.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let first = self.pieces.first().ok_or("empty profile")?;
        if !first.r_lo.is_zero() {
            return Err("first piece must start at r = 0".into());
        }
        if first.eval(&Rational::zero()) != self.value_at_zero {
            return Err("profile is discontinuous at r = 0".into());
        }
        for pair in self.pieces.windows(2) {
            if pair[0].r_hi != pair[1].r_lo {
                return Err("pieces do not tile".into());
            }
            if pair[0].eval(&pair[0].r_hi) != pair[1].eval(&pair[1].r_lo) {
                return Err(format!(
                    "profile is discontinuous at r = {}",
                    rational::format_rational(&pair[0].r_hi)
                ));
            }
        }
        for piece in &self.pieces {
            if piece.r_lo >= piece.r_hi {
                return Err("degenerate piece".into());
            }
            let lo_val = piece.eval(&piece.r_lo);
            let hi_val = piece.eval(&piece.r_hi);
            if lo_val.is_negative() || hi_val.is_negative() {
                return Err("negative average".into());
            }
            if piece.c_neg.is_positive() && piece.c_one.is_positive() {
                let r_sq = &piece.c_neg / &piece.c_one;
                if r_sq > &piece.r_lo * &piece.r_lo && r_sq < &piece.r_hi * &piece.r_hi {
                    let min = SurdValue::new(piece.c_zero.clone(), int(2), &piece.c_neg * &piece.c_one)
                        .expect("positive product");
                    if min.sign() < 0 {
                        return Err("negative average at interior minimum".into());
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of maximizing a profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileMaximum {
    pub value: SurdValue,
    /// Smallest radius attaining `value`.
    pub argmax_radius: SurdValue,
}

fn average_of_abs(abs_f: &PeriodicPiecewiseLinear, x: &Rational, r: &Rational) -> Rational {
    if r.is_zero() {
        return abs_f.evaluate(x);
    }
    abs_f.integrate(&(x - r), &(x + r)) / (r * int(2))
}

/// `⨍_{x-r}^{x+r} |f|`, with `|f(x)|` at `r = 0`.
pub fn average_at(f: &PeriodicPiecewiseLinear, x: &Rational, r: &Rational) -> Result<Rational> {
    if r.is_negative() {
        return Err(Error::InvalidArgument("radius must be non-negative".into()));
    }
    if r.is_zero() {
        return Ok(f.evaluate(x).abs());
    }
    Ok(average_of_abs(&f.absolute(), x, r))
}

fn profile_of_abs(abs_f: &PeriodicPiecewiseLinear, x: &Rational, r_max: &Rational) -> RadialAverageProfile {
    let mut radii = vec![Rational::zero(), r_max.clone()];
    for t in abs_f.breakpoints_in(&(x - r_max), x) {
        radii.push(x - t);
    }
    for t in abs_f.breakpoints_in(x, &(x + r_max)) {
        radii.push(t - x);
    }
    radii.retain(|r| !r.is_negative() && r <= r_max);
    radii.sort();
    radii.dedup();

    let pieces = radii
        .windows(2)
        .map(|w| {
            let (lo, hi) = (&w[0], &w[1]);
            let (a1, b1) = abs_f.piece_at(&(x + lo), Side::Right);
            let (a2, b2) = abs_f.piece_at(&(x - lo), Side::Left);
            let c_one = (&a1 - &a2) / int(4);
            let c_zero = ((&a1 + &a2) * x + b1 + b2) / int(2);
            let window = abs_f.integrate(&(x - lo), &(x + lo));
            let c_neg = window / int(2) - &c_zero * lo - &c_one * lo * lo;
            ProfilePiece {
                r_lo: lo.clone(),
                r_hi: hi.clone(),
                c_neg,
                c_zero,
                c_one,
            }
        })
        .collect();
    RadialAverageProfile {
        center: x.clone(),
        pieces,
        value_at_zero: abs_f.evaluate(x),
    }
    .merged()
}

/// Exact radial average profile of `|f|` around `x` on `(0, r_max]`.
pub fn average_profile(
    f: &PeriodicPiecewiseLinear,
    x: &Rational,
    r_max: &Rational,
) -> Result<RadialAverageProfile> {
    if !r_max.is_positive() {
        return Err(Error::InvalidArgument("r_max must be positive".into()));
    }
    Ok(profile_of_abs(&f.absolute(), x, r_max))
}

fn better(candidate: &(SurdValue, SurdValue), best: &(SurdValue, SurdValue)) -> bool {
    match candidate.0.compare(&best.0) {
        Ordering::Greater => true,
        Ordering::Equal => candidate.1.compare(&best.1) == Ordering::Less,
        Ordering::Less => false,
    }
}

/// Exact maximum of a profile over `[0, r_max]`.
pub fn profile_max(profile: &RadialAverageProfile) -> ProfileMaximum {
    let mut best = (
        SurdValue::rational(profile.value_at_zero.clone()),
        SurdValue::zero(),
    );
    for piece in &profile.pieces {
        // piece.r_lo is the previous piece's r_hi, except at 0 where the
        // value is value_at_zero; checking both endpoints keeps this local.
        for r in [&piece.r_lo, &piece.r_hi] {
            if r.is_zero() {
                continue;
            }
            let cand = (SurdValue::rational(piece.eval(r)), SurdValue::rational(r.clone()));
            if better(&cand, &best) {
                best = cand;
            }
        }
        if let Some(cand) = piece.interior_max() {
            if better(&cand, &best) {
                best = cand;
            }
        }
    }
    ProfileMaximum {
        value: best.0,
        argmax_radius: best.1,
    }
}

/// Exact `Mf(x)` together with the smallest maximizing radius in `[0, T]`.
pub fn maximal_function_with_radius(f: &PeriodicPiecewiseLinear, x: &Rational) -> ProfileMaximum {
    profile_max(&profile_of_abs(&f.absolute(), x, f.period()))
}

/// Exact `Mf(x)`.
pub fn maximal_function(f: &PeriodicPiecewiseLinear, x: &Rational) -> SurdValue {
    maximal_function_with_radius(f, x).value
}

/// `Mf` at every grid point, order preserved.
pub fn maximal_curve(f: &PeriodicPiecewiseLinear, grid: &[Rational]) -> Vec<(Rational, SurdValue)> {
    let abs_f = f.absolute();
    grid.par_iter()
        .map(|x| {
            let value = profile_max(&profile_of_abs(&abs_f, x, f.period())).value;
            (x.clone(), value)
        })
        .collect()
}

/// Antiderivative of `abs_f` at `x + j·h` for `j ∈ [0, count)` (`h` may be
/// negative), as integer numerators over one denominator per segment.
///
/// On a segment the antiderivative is quadratic in `j`, so each sample costs
/// a few integer products instead of a reduced rational evaluation.
fn antiderivative_samples(
    abs_f: &PeriodicPiecewiseLinear,
    x: &Rational,
    h: &Rational,
    count: usize,
) -> (Vec<BigInt>, Vec<usize>, Vec<BigInt>) {
    let reach = h * Rational::from_integer(BigInt::from(count - 1));
    let far = x + &reach;
    let (lo, hi) = if h.is_negative() { (far.clone(), x.clone()) } else { (x.clone(), far.clone()) };
    let mut bounds = vec![lo.clone()];
    bounds.extend(abs_f.breakpoints_in(&lo, &hi));
    bounds.push(hi);
    bounds.dedup();
    if h.is_negative() {
        bounds.reverse();
    }

    let mut numer = Vec::with_capacity(count);
    let mut seg_of = Vec::with_capacity(count);
    let mut denoms = Vec::new();
    let mut next_j = 0usize;
    for w in bounds.windows(2) {
        if next_j >= count {
            break;
        }
        let (p, q) = (&w[0], &w[1]);
        // last sample index inside this segment
        let steps = ((q - x) / h).floor().to_integer();
        let last = usize::try_from(steps).unwrap_or(count - 1).min(count - 1);
        if last < next_j {
            continue;
        }
        let side = if h.is_negative() { Side::Left } else { Side::Right };
        let (a, b) = abs_f.piece_at(p, side);
        let g_p = abs_f.antiderivative(p);
        // Φ(x + jh) = Φ(p) + a/2·(t² - p²) + b·(t - p), t = x + jh
        let c2 = &a / int(2) * h * h;
        let c1 = (&a * x + &b) * h;
        let c0 = &g_p + &a / int(2) * (x * x - p * p) + &b * (x - p);
        let den = c2.denom().lcm(c1.denom()).lcm(c0.denom());
        let scale = |c: &Rational| c.numer() * (&den / c.denom());
        let (n2, n1, n0) = (scale(&c2), scale(&c1), scale(&c0));
        let seg = denoms.len();
        denoms.push(den);
        for j in next_j..=last {
            let jb = BigInt::from(j);
            numer.push((&n2 * &jb + &n1) * &jb + &n0);
            seg_of.push(seg);
        }
        next_j = last + 1;
    }
    debug_assert_eq!(numer.len(), count);
    (numer, seg_of, denoms)
}

/// Grid search of `r ↦ ⨍_{x-r}^{x+r}|f|` over `gridCount` equispaced radii in
/// `[0, r_max]`. Each average is exact and rounded once, so the result is a
/// rounded lower bound for the supremum over `[0, r_max]`.
pub fn maximal_function_brute_force(
    f: &PeriodicPiecewiseLinear,
    x: &Rational,
    r_max: &Rational,
    grid_count: usize,
) -> Result<f64> {
    if !r_max.is_positive() {
        return Err(Error::InvalidArgument("r_max must be positive".into()));
    }
    if grid_count < 2 {
        return Err(Error::InvalidArgument("grid_count must be at least 2".into()));
    }
    let abs_f = f.absolute();
    let step = r_max / Rational::from_integer((grid_count - 1).into());
    let (right, right_seg, right_den) = antiderivative_samples(&abs_f, x, &step, grid_count);
    let (left, left_seg, left_den) = antiderivative_samples(&abs_f, x, &-&step, grid_count);
    let mut best = rational::to_f64(&abs_f.evaluate(x));
    for j in 1..grid_count {
        let (dr, dl) = (&right_den[right_seg[j]], &left_den[left_seg[j]]);
        // (R/dr - L/dl) / (2·j·step)
        let num = (&right[j] * dl - &left[j] * dr) * step.denom();
        let den = dr * dl * BigInt::from(2 * j) * step.numer();
        let avg = rational::to_f64(&Rational::new_raw(num, den));
        best = best.max(avg);
    }
    Ok(best)
}
