//! Finite metric measure spaces: the discrete maximal operator and the best
//! annular-decay constant over ball-composition representatives.
//!
//! Balls are open, `B(x, r) = {y : d(x, y) < r}`, and the annulus is
//! `B(x, r) \ B(x, r(1 - ε))`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::enclosure::{self, Enclosure, EnclosureReport};
use crate::exactnum::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricMeasureSpace {
    distances: Vec<Vec<Rational>>,
    masses: Vec<Rational>,
}

impl FiniteMetricMeasureSpace {
    pub fn new(distances: Vec<Vec<Rational>>, masses: Vec<Rational>) -> Result<Self> {
        let n = masses.len();
        if n == 0 {
            return Err(Error::InvalidSpace("space has no points".into()));
        }
        if distances.len() != n || distances.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpace(format!(
                "distance matrix must be {n}×{n} to match {n} masses"
            )));
        }
        if let Some(i) = masses.iter().position(|m| !m.is_positive()) {
            return Err(Error::InvalidSpace(format!("mass of point {i} is not positive")));
        }
        for i in 0..n {
            if !distances[i][i].is_zero() {
                return Err(Error::InvalidSpace(format!("d({i},{i}) is not zero")));
            }
            for j in 0..n {
                if distances[i][j] != distances[j][i] {
                    return Err(Error::InvalidSpace(format!("d({i},{j}) != d({j},{i})")));
                }
                if i != j && !distances[i][j].is_positive() {
                    return Err(Error::InvalidSpace(format!("d({i},{j}) is not positive")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if distances[i][k] > &distances[i][j] + &distances[j][k] {
                        return Err(Error::InvalidSpace(format!(
                            "triangle inequality fails for ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricMeasureSpace { distances, masses })
    }

    /// Points on the line with `d(i, j) = |xᵢ - xⱼ|`.
    pub fn collinear(positions: &[Rational], masses: Vec<Rational>) -> Result<Self> {
        let distances = positions
            .iter()
            .map(|a| positions.iter().map(|b| (a - b).abs()).collect())
            .collect();
        Self::new(distances, masses)
    }

    /// `n` points at mutual distance 1 with unit masses.
    pub fn simplex(n: usize) -> Result<Self> {
        let distances = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(0) } else { int(1) }).collect())
            .collect();
        Self::new(distances, vec![int(1); n])
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> &Rational {
        &self.distances[i][j]
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.distances
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn diameter(&self) -> Rational {
        self.distances
            .iter()
            .flat_map(|row| row.iter())
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.iter().sum()
    }

    /// Distinct distances from `x`, ascending; the first is always 0.
    pub fn distinct_distances(&self, x: usize) -> Vec<Rational> {
        let mut ds = self.distances[x].clone();
        ds.sort();
        ds.dedup();
        ds
    }

    /// Representative radii, one per ball composition around `x`: midpoints
    /// between consecutive distinct distances, then `2 · diameter` (or 1 for a
    /// single point) for the whole space.
    pub fn representative_radii(&self, x: usize) -> Vec<Rational> {
        let ds = self.distinct_distances(x);
        let mut radii: Vec<Rational> = ds
            .windows(2)
            .map(|w| (&w[0] + &w[1]) / int(2))
            .collect();
        let diameter = self.diameter();
        radii.push(if diameter.is_zero() {
            Rational::one()
        } else {
            diameter * int(2)
        });
        radii
    }

    pub fn ball_measure(&self, x: usize, r: &Rational) -> Result<Rational> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument("ball radius must be positive".into()));
        }
        Ok(self.ball_mass(x, r))
    }

    fn ball_mass(&self, x: usize, r: &Rational) -> Rational {
        self.distances[x]
            .iter()
            .zip(&self.masses)
            .filter(|(d, _)| *d < r)
            .map(|(_, m)| m.clone())
            .sum()
    }

    /// Mass of `{y : lower <= d(x, y) < r}`.
    fn shell_mass(&self, x: usize, lower: &Rational, r: &Rational) -> Rational {
        self.distances[x]
            .iter()
            .zip(&self.masses)
            .filter(|(d, _)| *d >= lower && *d < r)
            .map(|(_, m)| m.clone())
            .sum()
    }

    pub fn check_function(&self, f: &[Rational]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "function has {} values for {} points",
                f.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `sup_{r>0} ⨍_{B(x,r)} |f|`: the balls are exactly the sets
    /// `{y : d(x,y) <= dᵢ}` over distinct distances `dᵢ` from `x`.
    pub fn discrete_maximal(&self, f: &[Rational], x: usize) -> Result<Rational> {
        self.check_function(f)?;
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.distances[x][a].cmp(&self.distances[x][b]));
        let mut mass = Rational::zero();
        let mut weighted = Rational::zero();
        let mut best: Option<Rational> = None;
        for (pos, &y) in order.iter().enumerate() {
            mass += &self.masses[y];
            weighted += f[y].abs() * &self.masses[y];
            let group_ends = order
                .get(pos + 1)
                .is_none_or(|&z| self.distances[x][z] != self.distances[x][y]);
            if group_ends {
                let avg = &weighted / &mass;
                if best.as_ref().is_none_or(|b| avg > *b) {
                    best = Some(avg);
                }
            }
        }
        Ok(best.expect("space is non-empty"))
    }

    /// Discrete maximal function at every point.
    pub fn discrete_maximal_all(&self, f: &[Rational]) -> Result<Vec<Rational>> {
        self.check_function(f)?;
        (0..self.len())
            .into_par_iter()
            .map(|x| self.discrete_maximal(f, x))
            .collect()
    }

    /// Best annular-decay constant over the representative critical set.
    pub fn annular_decay_k(&self, delta: &Rational) -> Result<AnnularDecayReport> {
        annular_decay_k(self, delta)
    }
}

/// One point of the critical set, ratio = `mass_ratio / ε^δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnulusWitness {
    pub x: usize,
    #[serde(with = "rational::as_str")]
    pub r: Rational,
    #[serde(with = "rational::as_str")]
    pub epsilon: Rational,
    /// `μ(annulus) / μ(B(x, r))`
    #[serde(with = "rational::as_str")]
    pub mass_ratio: Rational,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnularDecayReport {
    #[serde(with = "rational::as_str")]
    pub delta: Rational,
    /// Exact `K` when it is rational (always for `δ = 1`).
    #[serde(with = "rational::as_opt_str")]
    pub best_k: Option<Rational>,
    /// Certified enclosure of `K`.
    pub best_k_enclosure: EnclosureReport,
    #[serde(skip)]
    pub best_k_exact_enclosure: Enclosure,
    pub precision_bits: u32,
    /// `None` when `K` floors at 1.
    pub witness: Option<AnnulusWitness>,
    pub candidates_examined: usize,
    /// The supremum over all `r > 0`, `ε ∈ (0,1)` is finite only for a
    /// single-point space: shrinking annuli around any sphere of positive
    /// radius blow the ratio up.
    pub unrestricted_sup_finite: bool,
}

/// Ratio `m / ε^δ` for `δ = a/b`, compared via `m^b · ε'^a` against `m'^b · ε^a`.
fn ratio_cmp(m1: &Rational, e1: &Rational, m2: &Rational, e2: &Rational, delta: &Rational) -> Ordering {
    let a: u32 = delta.numer().try_into().expect("small exponent");
    let b: u32 = delta.denom().try_into().expect("small exponent");
    let lhs = rational::pow(m1, b) * rational::pow(e2, a);
    let rhs = rational::pow(m2, b) * rational::pow(e1, a);
    lhs.cmp(&rhs)
}

/// `m / ε^δ` as an exact rational when `ε^δ` is rational.
fn exact_ratio(m: &Rational, eps: &Rational, delta: &Rational, bits: u32) -> (Option<Rational>, Enclosure) {
    let power = enclosure::rational_power(eps, delta, bits);
    let enc = Enclosure::point(m.clone())
        .div(&power)
        .expect("ε^δ is positive");
    let exact = power.is_point().then(|| m / power.lo());
    (exact, enc)
}

pub const ANNULAR_PRECISION_BITS: u32 = 200;

pub fn annular_decay_k(space: &FiniteMetricMeasureSpace, delta: &Rational) -> Result<AnnularDecayReport> {
    annular_decay_k_with_precision(space, delta, ANNULAR_PRECISION_BITS)
}

/// As [`annular_decay_k`], enclosing `K` to `bits` bits when `ε^δ` is irrational.
pub fn annular_decay_k_with_precision(
    space: &FiniteMetricMeasureSpace,
    delta: &Rational,
    bits: u32,
) -> Result<AnnularDecayReport> {
    if !delta.is_positive() || delta > &Rational::one() {
        return Err(Error::InvalidArgument("delta must lie in (0, 1]".into()));
    }
    if u32::try_from(delta.denom()).is_err() || u32::try_from(delta.numer()).is_err() {
        return Err(Error::InvalidArgument("delta has too large a denominator".into()));
    }
    let per_point: Vec<(Option<AnnulusWitness>, usize)> = (0..space.len())
        .into_par_iter()
        .map(|x| {
            let mut best: Option<AnnulusWitness> = None;
            let mut examined = 0usize;
            for r in space.representative_radii(x) {
                let ball = space.ball_mass(x, &r);
                for d in space.distinct_distances(x) {
                    if !d.is_positive() || d >= r {
                        continue;
                    }
                    examined += 1;
                    let eps = Rational::one() - &d / &r;
                    let mass_ratio = space.shell_mass(x, &d, &r) / &ball;
                    let better = match &best {
                        None => true,
                        Some(w) => {
                            ratio_cmp(&mass_ratio, &eps, &w.mass_ratio, &w.epsilon, delta)
                                == Ordering::Greater
                        }
                    };
                    if better {
                        best = Some(AnnulusWitness {
                            x,
                            r: r.clone(),
                            epsilon: eps,
                            mass_ratio,
                        });
                    }
                }
            }
            (best, examined)
        })
        .collect();

    let one = Rational::one();
    let mut witness: Option<AnnulusWitness> = None;
    let mut examined = 0;
    for (candidate, count) in per_point {
        examined += count;
        let Some(c) = candidate else { continue };
        let (m, e) = witness
            .as_ref()
            .map(|w| (w.mass_ratio.clone(), w.epsilon.clone()))
            .unwrap_or((one.clone(), one.clone()));
        if ratio_cmp(&c.mass_ratio, &c.epsilon, &m, &e, delta) == Ordering::Greater {
            witness = Some(c);
        }
    }
    let (best_k, enc) = match &witness {
        Some(w) => exact_ratio(&w.mass_ratio, &w.epsilon, delta, bits),
        None => (Some(one.clone()), Enclosure::point(one)),
    };
    Ok(AnnularDecayReport {
        delta: delta.clone(),
        best_k,
        best_k_enclosure: enc.to_report(),
        best_k_exact_enclosure: enc,
        precision_bits: bits,
        witness,
        candidates_examined: examined,
        unrestricted_sup_finite: space.len() == 1,
    })
}

impl AnnulusWitness {
    /// Recomputes the ratio from the space, independent of the search.
    pub fn ratio_in(&self, space: &FiniteMetricMeasureSpace, delta: &Rational) -> (Option<Rational>, Enclosure) {
        let inner = &self.r * (Rational::one() - &self.epsilon);
        let ball = space.ball_mass(self.x, &self.r);
        let shell = space.shell_mass(self.x, &inner, &self.r);
        exact_ratio(&(shell / ball), &self.epsilon, delta, ANNULAR_PRECISION_BITS)
    }
}
