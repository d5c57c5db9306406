//! Single-radical quadratic surds `p + q·√s`.
//!
//! Signs and orderings are decided with rational arithmetic only. Comparing
//! two surds with different radicands reduces to the sign of
//! `P + q₁√s₁ + q₂√s₂`, which one round of squaring turns into the sign of a
//! single-radical surd.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::enclosure::{self, Enclosure};
use super::rational::{self, Rational};
use crate::error::Error;

/// Small primes used to pull square factors out of radicands. Squares of
/// larger primes stay inside the radical; equality is decided by value, so
/// this only affects presentation.
const SQUARE_SIEVE: &[u32] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// The number `p + q·√s` with rational `p`, `q` and `s >= 0`.
///
/// Canonical form keeps `s` a positive non-square integer free of small
/// square factors, or `q = s = 0` when the value is rational.
#[derive(Clone, Debug)]
pub struct SurdValue {
    p: Rational,
    q: Rational,
    s: Rational,
}

impl SurdValue {
    pub fn new(p: Rational, q: Rational, s: Rational) -> Result<Self, Error> {
        if s.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "negative radicand {}",
                rational::format_rational(&s)
            )));
        }
        Ok(Self::canonical(p, q, s))
    }

    pub fn rational(p: Rational) -> Self {
        SurdValue {
            p,
            q: Rational::zero(),
            s: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    /// `√s` for a rational `s >= 0`.
    pub fn sqrt(s: Rational) -> Result<Self, Error> {
        Self::new(Rational::zero(), Rational::one(), s)
    }

    fn canonical(p: Rational, q: Rational, s: Rational) -> Self {
        if q.is_zero() || s.is_zero() {
            return Self::rational(p);
        }
        // √(a/b) = √(ab) / b
        let (a, b) = (s.numer().clone(), s.denom().clone());
        let mut radicand: BigInt = a * &b;
        let mut coeff = q / Rational::from_integer(b);
        for &prime in SQUARE_SIEVE {
            let prime = BigInt::from(prime);
            let square = &prime * &prime;
            if square > radicand {
                break;
            }
            while (&radicand % &square).is_zero() {
                radicand /= &square;
                coeff *= Rational::from_integer(prime.clone());
            }
        }
        let root = radicand.sqrt();
        if &root * &root == radicand {
            radicand = BigInt::one();
            coeff *= Rational::from_integer(root);
        }
        if radicand.is_one() {
            return Self::rational(p + coeff);
        }
        SurdValue {
            p,
            q: coeff,
            s: Rational::from_integer(radicand),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    /// Re-canonicalizes; a no-op on values built through the public API.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.p.clone(), self.q.clone(), self.s.clone())
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn sign(&self) -> i32 {
        surd_sign(&self.p, &self.q, &self.s)
    }

    /// Exact three-way comparison, radicands may differ.
    pub fn compare(&self, other: &SurdValue) -> Ordering {
        let offset = &self.p - &other.p;
        let neg_q = -&other.q;
        let sign = two_radical_sign(&offset, &self.q, &self.s, &neg_q, &other.s);
        sign.cmp(&0)
    }

    /// Encloses the value with width at most `2^(4 - bits) · max(1, |v|)`.
    pub fn to_enclosure(&self, bits: u32) -> Enclosure {
        assert!(bits >= 1);
        let radical = enclosure::scaled_sqrt(&self.q, &self.s, bits);
        Enclosure::point(self.p.clone()) + radical
    }

    /// 53-bit midpoint, for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.to_enclosure(64).mid_f64()
    }

    pub fn abs(&self) -> SurdValue {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Sum of two surds when it stays single-radical.
    pub fn checked_add(&self, other: &SurdValue) -> Option<SurdValue> {
        if other.is_rational() {
            return Some(self.clone() + other.p.clone());
        }
        if self.is_rational() {
            return Some(other.clone() + self.p.clone());
        }
        (self.s == other.s).then(|| {
            Self::canonical(&self.p + &other.p, &self.q + &other.q, self.s.clone())
        })
    }

    pub fn checked_sub(&self, other: &SurdValue) -> Option<SurdValue> {
        self.checked_add(&-other.clone())
    }
}

fn sign_of(value: &Rational) -> i32 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `p + q·√s`, `s >= 0`, with no canonical-form requirement.
pub fn surd_sign(p: &Rational, q: &Rational, s: &Rational) -> i32 {
    let sp = sign_of(p);
    let sr = if s.is_zero() { 0 } else { sign_of(q) };
    if sr == 0 {
        return sp;
    }
    if sp == 0 || sp == sr {
        return sr;
    }
    // Opposite signs: the larger magnitude wins.
    let p2 = p * p;
    let r2 = q * q * s;
    match rational::cmp(&p2, &r2) {
        Ordering::Greater => sp,
        Ordering::Less => sr,
        Ordering::Equal => 0,
    }
}

/// Sign of `offset + q1·√s1 + q2·√s2`.
fn two_radical_sign(offset: &Rational, q1: &Rational, s1: &Rational, q2: &Rational, s2: &Rational) -> i32 {
    if s1 == s2 {
        return surd_sign(offset, &(q1 + q2), s1);
    }
    let a2 = q1 * q1 * s1;
    let b2 = q2 * q2 * s2;
    let sa = if s1.is_zero() { 0 } else { sign_of(q1) };
    let sb = if s2.is_zero() { 0 } else { sign_of(q2) };
    let su = if sa == 0 {
        sb
    } else if sb == 0 || sa == sb {
        sa
    } else {
        match rational::cmp(&a2, &b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    };
    let sp = sign_of(offset);
    if sp == 0 {
        return su;
    }
    if su == 0 || su == sp {
        return sp;
    }
    // |offset| vs |U|, U = q1√s1 + q2√s2:
    // offset² - U² = (offset² - a² - b²) - 2·q1·q2·√(s1·s2)
    let rest = offset * offset - &a2 - &b2;
    let cross = -(q1 * q2) * rational::int(2);
    match surd_sign(&rest, &cross, &(s1 * s2)) {
        1 => sp,
        -1 => su,
        _ => 0,
    }
}

impl PartialEq for SurdValue {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for SurdValue {}

impl PartialOrd for SurdValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for SurdValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Rational> for SurdValue {
    fn from(value: Rational) -> Self {
        SurdValue::rational(value)
    }
}

impl Add<Rational> for SurdValue {
    type Output = SurdValue;
    fn add(self, rhs: Rational) -> SurdValue {
        SurdValue {
            p: self.p + rhs,
            q: self.q,
            s: self.s,
        }
    }
}

impl Sub<Rational> for SurdValue {
    type Output = SurdValue;
    fn sub(self, rhs: Rational) -> SurdValue {
        self + (-rhs)
    }
}

impl Mul<Rational> for SurdValue {
    type Output = SurdValue;
    fn mul(self, rhs: Rational) -> SurdValue {
        SurdValue::canonical(self.p * &rhs, self.q * rhs, self.s)
    }
}

impl Neg for SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        SurdValue {
            p: -self.p,
            q: -self.q,
            s: self.s,
        }
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        let mag = self.q.abs();
        if self.p.is_zero() {
            if self.q.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{} {} ", self.p, sign)?;
        }
        if mag.is_one() {
            write!(f, "√{}", self.s)
        } else {
            write!(f, "{}·√{}", mag, self.s)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SurdWire {
    #[serde(with = "rational::as_str")]
    p: Rational,
    #[serde(with = "rational::as_str")]
    q: Rational,
    #[serde(with = "rational::as_str")]
    s: Rational,
}

impl Serialize for SurdValue {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SurdWire {
            p: self.p.clone(),
            q: self.q.clone(),
            s: self.s.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SurdValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = SurdWire::deserialize(de)?;
        SurdValue::new(wire.p, wire.q, wire.s).map_err(serde::de::Error::custom)
    }
}
