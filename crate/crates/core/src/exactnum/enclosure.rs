//! Closed intervals with exact rational endpoints.
//!
//! Radicals and rational powers are enclosed by integer roots of scaled
//! numerators, so every bound here is rigorous; nothing is rounded in
//! floating point until a caller asks for `f64` endpoints.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(rational::cmp(&lo, &hi).is_le(), "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn point(value: Rational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, value: &Rational) -> bool {
        rational::cmp(&self.lo, value).is_le() && rational::cmp(value, &self.hi).is_le()
    }

    /// `Some(ordering)` when the intervals are disjoint (or both the same point).
    pub fn certainly_cmp(&self, other: &Enclosure) -> Option<Ordering> {
        if rational::cmp(&self.hi, &other.lo).is_lt() {
            Some(Ordering::Less)
        } else if rational::cmp(&self.lo, &other.hi).is_gt() {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn lo_f64(&self) -> f64 {
        rational::to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rational::to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            let top = if rational::cmp(&-&self.lo, &self.hi).is_gt() {
                -&self.lo
            } else {
                self.hi.clone()
            };
            Enclosure::new(Rational::zero(), top)
        }
    }

    pub fn scale(&self, factor: &Rational) -> Enclosure {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if rational::cmp(&a, &b).is_le() {
            Enclosure::new(a, b)
        } else {
            Enclosure::new(b, a)
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Enclosure) -> Option<Enclosure> {
        if other.contains(&Rational::zero()) {
            return None;
        }
        let recip = Enclosure::new(other.hi.recip(), other.lo.recip());
        Some(self.clone() * recip)
    }

    /// Float view for reports.
    pub fn to_report(&self) -> EnclosureReport {
        EnclosureReport {
            lo: self.lo_f64(),
            hi: self.hi_f64(),
            mid: self.mid_f64(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct EnclosureReport {
    pub lo: f64,
    pub hi: f64,
    pub mid: f64,
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        Enclosure::new(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::new(-self.hi, -self.lo)
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min_by(|a, b| rational::cmp(a, b)).cloned().unwrap();
        let hi = products.iter().max_by(|a, b| rational::cmp(a, b)).cloned().unwrap();
        Enclosure::new(lo, hi)
    }
}

fn bit_len_ceil(value: &Rational) -> u32 {
    let magnitude = value.abs().ceil().to_integer();
    magnitude.bits() as u32
}

fn exact_root(x: &Rational, n: u32) -> Option<Rational> {
    let num = x.numer().nth_root(n);
    let den = x.denom().nth_root(n);
    let exact = num_traits::pow(num.clone(), n as usize) == *x.numer()
        && num_traits::pow(den.clone(), n as usize) == *x.denom();
    exact.then(|| Rational::new(num, den))
}

/// Encloses the principal `n`-th root of `x >= 0` with width at most `2^-k`.
pub fn nth_root(x: &Rational, n: u32, k: u32) -> Enclosure {
    assert!(!x.is_negative(), "root of a negative rational");
    assert!(n >= 1);
    if x.is_zero() {
        return Enclosure::point(Rational::zero());
    }
    if let Some(root) = exact_root(x, n) {
        return Enclosure::point(root);
    }
    let shift = u64::from(k) * u64::from(n);
    let floor = (x.numer() << shift) / x.denom();
    let root = floor.nth_root(n);
    let lo = dyadic(root.clone(), k);
    let hi = dyadic(root + BigInt::one(), k);
    Enclosure::new(lo, hi)
}

/// `m / 2^k` in lowest terms without a general gcd.
fn dyadic(m: BigInt, k: u32) -> Rational {
    let tz = m.trailing_zeros().unwrap_or(0).min(u64::from(k));
    Rational::new_raw(m >> tz, rational::two_pow(k - tz as u32))
}

pub fn sqrt(x: &Rational, k: u32) -> Enclosure {
    nth_root(x, 2, k)
}

/// Encloses `q * sqrt(s)` with width at most `2^-bits`.
pub fn scaled_sqrt(q: &Rational, s: &Rational, bits: u32) -> Enclosure {
    if q.is_zero() || s.is_zero() {
        return Enclosure::point(Rational::zero());
    }
    let k = bits + bit_len_ceil(q);
    sqrt(s, k).scale(q)
}

/// Encloses `x^(a/b)` for rational `x > 0` and a rational exponent `a/b >= 0`,
/// tightening until the relative width is at most `2^-bits`.
pub fn rational_power(x: &Rational, exponent: &Rational, bits: u32) -> Enclosure {
    assert!(x.is_positive(), "rational_power needs a positive base");
    assert!(!exponent.is_negative(), "rational_power needs a non-negative exponent");
    let a: u32 = exponent
        .numer()
        .try_into()
        .expect("exponent numerator too large");
    let b: u32 = exponent
        .denom()
        .try_into()
        .expect("exponent denominator too large");
    let base = rational::pow(x, a);
    if b == 1 {
        return Enclosure::point(base);
    }
    let mut k = bits + 2;
    loop {
        let enc = nth_root(&base, b, k);
        if enc.is_point() || enc.lo.is_positive() && enc.width() * rational::two_pow(bits) <= enc.lo {
            return enc;
        }
        k += bits.max(16);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn sqrt_two_bounds() {
        let e = sqrt(&int(2), 60);
        assert!(e.lo_f64() <= std::f64::consts::SQRT_2);
        assert!(e.hi_f64() >= std::f64::consts::SQRT_2);
        assert!(e.width() <= Rational::new(BigInt::one(), rational::two_pow(60)));
        // Squares of the bounds bracket 2.
        assert!(e.lo() * e.lo() < int(2));
        assert!(e.hi() * e.hi() > int(2));
    }

    #[test]
    fn perfect_roots_are_points() {
        assert_eq!(sqrt(&rat(9, 4), 20), Enclosure::point(rat(3, 2)));
        assert_eq!(nth_root(&rat(8, 27), 3, 20), Enclosure::point(rat(2, 3)));
    }

    #[test]
    fn rational_power_brackets() {
        let e = rational_power(&int(2), &rat(1, 2), 100);
        assert!(e.lo() * e.lo() < int(2) && e.hi() * e.hi() > int(2));
        let tiny = rational_power(&rat(1, 1_000_000), &rat(1, 3), 80);
        assert!(tiny.contains(&rat(1, 100)));
        assert!(tiny.is_point());
        let small = rational_power(&rat(1, 1_000_003), &rat(2, 3), 80);
        let approx = (1.0f64 / 1_000_003.0).powf(2.0 / 3.0);
        assert!((small.mid_f64() - approx).abs() < 1e-18);
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = Enclosure::new(int(1), int(2));
        let b = Enclosure::new(int(-3), int(1));
        assert_eq!(a.clone() * b.clone(), Enclosure::new(int(-6), int(2)));
        assert_eq!(a.clone() - b.clone(), Enclosure::new(int(0), int(5)));
        assert!(a.div(&b).is_none());
        assert_eq!(b.abs(), Enclosure::new(int(0), int(3)));
    }
}
