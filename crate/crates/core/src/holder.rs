//! Variable-exponent Hölder norms on sampled grids, the boundedness constant
//! `C₁ = max{7, 1 + 12K·2^δ}` and the interpolation rate bound.
//!
//! The seminorm is `sup_{x≠y} |f(x) - f(y)| / d(x,y)^{α(x)}`, exponent taken
//! at the first point; on finite samples it is a lower bound of the
//! continuum value.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::enclosure::{self, Enclosure, EnclosureReport};
use crate::exactnum::rational::{self, int, Rational};

/// Exponent function sampled on the same points as the function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableExponent {
    Constant(Rational),
    PerPoint(Vec<Rational>),
}

impl VariableExponent {
    pub fn constant(value: Rational) -> Result<Self> {
        let e = VariableExponent::Constant(value);
        e.validate()?;
        Ok(e)
    }

    pub fn per_point(values: Vec<Rational>) -> Result<Self> {
        let e = VariableExponent::PerPoint(values);
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: &Rational| !v.is_negative() && v <= &Rational::one();
        let valid = match self {
            VariableExponent::Constant(v) => ok(v),
            VariableExponent::PerPoint(vs) => vs.iter().all(ok),
        };
        if valid {
            Ok(())
        } else {
            Err(Error::InvalidArgument("exponents must lie in [0, 1]".into()))
        }
    }

    pub fn at(&self, i: usize) -> &Rational {
        match self {
            VariableExponent::Constant(v) => v,
            VariableExponent::PerPoint(vs) => &vs[i],
        }
    }

    /// Exponent values as floats for `n` sample points.
    pub fn sampled(&self, n: usize) -> Result<Vec<f64>> {
        if let VariableExponent::PerPoint(vs) = self {
            if vs.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} exponents for {n} sample points",
                    vs.len()
                )));
            }
        }
        Ok((0..n).map(|i| rational::to_f64(self.at(i))).collect())
    }

    /// Largest sampled exponent.
    pub fn sup(&self) -> Rational {
        match self {
            VariableExponent::Constant(v) => v.clone(),
            VariableExponent::PerPoint(vs) => vs.iter().max().cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            VariableExponent::Constant(v) => v.is_positive(),
            VariableExponent::PerPoint(vs) => vs.iter().all(|v| v.is_positive()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HolderNormReport {
    pub sup_norm: f64,
    pub seminorm: f64,
    pub norm: f64,
    /// Ordered pair of sample indices attaining the seminorm; the exponent
    /// is taken at the first.
    pub witness_pair: Option<(usize, usize)>,
    pub sample_count: usize,
}

#[derive(Clone, Copy, Debug)]
struct PairMax {
    ratio: f64,
    pair: Option<(usize, usize)>,
}

impl PairMax {
    const NONE: PairMax = PairMax {
        ratio: 0.0,
        pair: None,
    };

    // Larger ratio wins; on ties the lexicographically smaller pair.
    fn merge(self, other: PairMax) -> PairMax {
        match (self.pair, other.pair) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) => {
                if other.ratio > self.ratio || (other.ratio == self.ratio && b < a) {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Grid Hölder seminorm over all ordered pairs of distinct samples.
///
/// `distance(i, j)` must be positive for `i != j`.
pub fn holder_seminorm<D>(values: &[f64], alpha: &[f64], distance: D) -> Result<HolderNormReport>
where
    D: Fn(usize, usize) -> f64 + Sync,
{
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two sample points".into()));
    }
    if alpha.len() != n {
        return Err(Error::InvalidArgument("one exponent per sample point is required".into()));
    }
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = PairMax::NONE;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = distance(i, j);
                let ratio = (values[i] - values[j]).abs() / d.powf(alpha[i]);
                row = row.merge(PairMax {
                    ratio,
                    pair: Some((i, j)),
                });
            }
            row
        })
        .reduce(|| PairMax::NONE, PairMax::merge);
    let sup_norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(HolderNormReport {
        sup_norm,
        seminorm: best.ratio,
        norm: sup_norm + best.ratio,
        witness_pair: best.pair,
        sample_count: n,
    })
}

/// Pairwise `|xᵢ - xⱼ|` computed exactly then rounded, for samples on the line.
pub fn line_distances(points: &[Rational]) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|a| points.iter().map(|b| rational::to_f64(&(a - b).abs())).collect())
        .collect();
    for (i, row) in rows.iter().enumerate() {
        if row.iter().enumerate().any(|(j, d)| i != j && *d <= 0.0) {
            return Err(Error::InvalidArgument("sample points must be distinct".into()));
        }
    }
    Ok(rows)
}

/// Seminorm of samples on the line.
pub fn holder_seminorm_line(points: &[Rational], values: &[f64], alpha: &VariableExponent) -> Result<HolderNormReport> {
    if points.len() != values.len() {
        return Err(Error::InvalidArgument("one value per sample point is required".into()));
    }
    let alpha = alpha.sampled(points.len())?;
    let dist = line_distances(points)?;
    holder_seminorm(values, &alpha, |i, j| dist[i][j])
}

/// `C₁ = max{7, 1 + 12·K·2^δ}`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundednessConstant {
    #[serde(with = "rational::as_str")]
    pub k: Rational,
    #[serde(with = "rational::as_str")]
    pub delta: Rational,
    /// Present when `2^δ` is rational, in particular for `δ = 1`.
    #[serde(with = "rational::as_opt_str")]
    pub exact: Option<Rational>,
    /// Certified upper rounding.
    #[serde(with = "rational::as_str")]
    pub upper: Rational,
    pub enclosure: EnclosureReport,
    pub precision_bits: u32,
    pub expression: String,
}

impl BoundednessConstant {
    pub fn upper_f64(&self) -> f64 {
        rational::to_f64(&self.upper)
    }
}

pub const CONSTANT_PRECISION_BITS: u32 = 200;

pub fn theorem1_constant(k: &Rational, delta: &Rational) -> Result<BoundednessConstant> {
    if k < &Rational::one() {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    if !delta.is_positive() || delta > &Rational::one() {
        return Err(Error::InvalidArgument("delta must lie in (0, 1]".into()));
    }
    if u32::try_from(delta.denom()).is_err() {
        return Err(Error::InvalidArgument("delta has too large a denominator".into()));
    }
    let two_pow = enclosure::rational_power(&int(2), delta, CONSTANT_PRECISION_BITS);
    let branch = Enclosure::point(Rational::one()) + two_pow.scale(&(k * int(12)));
    let seven = Enclosure::point(int(7));
    let value = if branch.lo() >= seven.hi() {
        branch
    } else if branch.hi() <= seven.lo() {
        seven
    } else {
        Enclosure::new(seven.lo().clone(), branch.hi().clone())
    };
    let exact = value.is_point().then(|| value.lo().clone());
    Ok(BoundednessConstant {
        k: k.clone(),
        delta: delta.clone(),
        exact,
        upper: value.hi().clone(),
        enclosure: value.to_report(),
        precision_bits: CONSTANT_PRECISION_BITS,
        expression: format!(
            "max{{7, 1 + 12·{}·2^({})}}",
            rational::format_rational(k),
            rational::format_rational(delta)
        ),
    })
}

/// `(2N)^q · (2·supDiff)^(1-q)` with `q = sup β/α < 1`.
pub fn continuity_rate_bound(n: f64, q: f64, sup_diff: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidArgument(
            "sup β/α must lie in [0, 1) for the rate bound".into(),
        ));
    }
    if n < 0.0 || sup_diff < 0.0 || !n.is_finite() || !sup_diff.is_finite() {
        return Err(Error::InvalidArgument("N and supDiff must be finite and non-negative".into()));
    }
    Ok((2.0 * n).powf(q) * (2.0 * sup_diff).powf(1.0 - q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn identity_is_lipschitz_one() {
        let pts = vec![int(0), rat(1, 2), int(1)];
        let vals = vec![0.0, 0.5, 1.0];
        let one = VariableExponent::constant(int(1)).unwrap();
        let r = holder_seminorm_line(&pts, &vals, &one).unwrap();
        assert_eq!(r.seminorm, 1.0);
        assert_eq!(r.witness_pair, Some((0, 1)));
        assert_eq!(r.sup_norm, 1.0);
        assert_eq!(r.norm, 2.0);
    }

    #[test]
    fn constant_has_zero_seminorm() {
        let pts = vec![int(0), rat(1, 3), int(2)];
        let r = holder_seminorm_line(&pts, &[0.7; 3], &VariableExponent::constant(rat(1, 3)).unwrap()).unwrap();
        assert_eq!(r.seminorm, 0.0);
        assert_eq!(r.sup_norm, 0.7);
    }

    #[test]
    fn rejects_degenerate_input() {
        let a = VariableExponent::constant(int(1)).unwrap();
        assert!(holder_seminorm_line(&[int(0)], &[1.0], &a).is_err());
        assert!(holder_seminorm_line(&[int(0), int(0)], &[1.0, 2.0], &a).is_err());
        assert!(VariableExponent::constant(rat(3, 2)).is_err());
        assert!(VariableExponent::per_point(vec![int(0), int(-1)]).is_err());
        let short = VariableExponent::per_point(vec![int(0)]).unwrap();
        assert!(holder_seminorm_line(&[int(0), int(1)], &[1.0, 2.0], &short).is_err());
    }

    #[test]
    fn exponent_sits_at_first_point() {
        // d = 1/4, α = (1, 0): ratio with exponent at x₀ is 4·|Δ|, at x₁ it is |Δ|
        let pts = vec![int(0), rat(1, 4)];
        let alpha = VariableExponent::per_point(vec![int(1), int(0)]).unwrap();
        let r = holder_seminorm_line(&pts, &[0.0, 1.0], &alpha).unwrap();
        assert_eq!(r.seminorm, 4.0);
        assert_eq!(r.witness_pair, Some((0, 1)));
    }

    #[test]
    fn constant_examples() {
        let c = theorem1_constant(&int(1), &int(1)).unwrap();
        assert_eq!(c.exact, Some(int(25)));
        assert_eq!(theorem1_constant(&int(10), &int(1)).unwrap().exact, Some(int(241)));
        let half = theorem1_constant(&int(1), &rat(1, 2)).unwrap();
        assert!(half.exact.is_none());
        let expected = 1.0 + 12.0 * std::f64::consts::SQRT_2;
        assert!((half.enclosure.mid - expected).abs() < 1e-13);
        assert!(half.upper_f64() >= expected - 1e-13);
        assert!(theorem1_constant(&rat(1, 2), &int(1)).is_err());
        assert!(theorem1_constant(&int(1), &int(0)).is_err());
    }

    #[test]
    fn rate_examples() {
        assert_eq!(continuity_rate_bound(5.0, 0.0, 0.25).unwrap(), 0.5);
        let v = continuity_rate_bound(1.0, 0.5, 0.5).unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(continuity_rate_bound(3.0, 0.7, 0.0).unwrap(), 0.0);
        assert!(continuity_rate_bound(1.0, 1.0, 0.1).is_err());
    }
}
