//! Number fields the geometry is generic over.
//!
//! Three carriers are provided:
//!
//! * [`Rational`]: exact arbitrary-precision fractions, used whenever every
//!   input is rational (convergents, integer matrices, the tangent chain).
//! * [`QSqrt2`]: exact elements `a + b√2` of the quadratic field ℚ(√2). The
//!   orthogonal and mixed chains are seeded with `√2`, and stay inside this
//!   field, so they can be checked exactly as well.
//! * `f64`: binary floating point with explicit tolerances, for random
//!   matrices, rendering and anything that needs general square roots.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Field operations plus the few extras the geometry needs.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Neg<Output = Self>
{
    /// True when arithmetic is exact and predicates test for exact zero.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Square root inside the field, `None` if it does not exist there.
    fn sqrt(&self) -> Option<Self>;

    /// Parses the form produced by `Display`.
    fn parse(s: &str) -> Option<Self>;

    /// Exact zero test for exact fields, `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else {
            None
        }
    }

    fn parse(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

fn exact_int_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt(&self) -> Option<Self> {
        let n = exact_int_sqrt(self.numer())?;
        let d = exact_int_sqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn parse(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Ok(q) = Rational::from_str(s) {
        return Some(q);
    }
    let (int, frac) = s.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let negative = int.starts_with('-');
    let int_part = if int.is_empty() || int == "-" || int == "+" {
        BigInt::zero()
    } else {
        BigInt::from_str(int).ok()?
    };
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let frac_part = BigInt::from_str(frac).ok()?;
    let magnitude = int_part.abs() * &scale + frac_part;
    let numer = if negative { -magnitude } else { magnitude };
    Some(Rational::new(numer, scale))
}

/// Element `a + b√2` of the quadratic field ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    /// The element `√2`.
    pub fn sqrt2() -> Self {
        QSqrt2 { a: Rational::zero(), b: Rational::one() }
    }

    pub fn rational(a: Rational) -> Self {
        QSqrt2 { a, b: Rational::zero() }
    }

    /// Galois conjugate `a − b√2`.
    pub fn conj(&self) -> Self {
        QSqrt2 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 2b²`; zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_i64(2) * &self.b * &self.b
    }

    fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = Rational::from_i64(2) * &self.b * &self.b;
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }
}

impl From<Rational> for QSqrt2 {
    fn from(a: Rational) -> Self {
        QSqrt2::rational(a)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => write!(f, "{}{}*sqrt2", self.a, Plus(&self.b)),
        }
    }
}

// `Ratio` does not honour the `+` flag, so format the sign by hand.
struct Plus<'a>(&'a Rational);

impl fmt::Display for Plus<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_negative() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "+{}", self.0)
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).sign())
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        let two = Rational::from_i64(2);
        QSqrt2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: QSqrt2) -> QSqrt2 {
        let n = o.norm();
        let num = self * o.conj();
        QSqrt2 { a: num.a / &n, b: num.b / n }
    }
}

/// Exact division leaves no remainder in a field.
impl Rem for QSqrt2 {
    type Output = QSqrt2;
    fn rem(self, o: QSqrt2) -> QSqrt2 {
        assert!(!o.is_zero(), "remainder by zero");
        QSqrt2::zero()
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2 { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::rational(Rational::one())
    }
}

impl Num for QSqrt2 {
    type FromStrRadixErr = Error;

    /// Accepts `a`, `b*sqrt2` or `a+b*sqrt2` with rational `a`, `b`.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self> {
        let bad = || Error::parse(1, format!("not an element of Q(sqrt2): {s}"));
        if radix != 10 {
            return Err(bad());
        }
        let s = s.trim();
        let Some(body) = s.strip_suffix("*sqrt2") else {
            return parse_rational(s).map(QSqrt2::rational).ok_or_else(bad);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&body[..i]).ok_or_else(bad)?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let b = parse_rational(b.strip_prefix('+').unwrap_or(b)).ok_or_else(bad)?;
        Ok(QSqrt2 { a, b })
    }
}

impl Signed for QSqrt2 {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            QSqrt2::zero()
        } else {
            self.clone() - other.clone()
        }
    }
    fn signum(&self) -> Self {
        match self.sign() {
            Ordering::Less => -QSqrt2::one(),
            Ordering::Equal => QSqrt2::zero(),
            Ordering::Greater => QSqrt2::one(),
        }
    }
    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl Scalar for QSqrt2 {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        QSqrt2::rational(Rational::from_i64(v))
    }

    fn from_rational(q: &Rational) -> Self {
        QSqrt2::rational(q.clone())
    }

    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    /// Solves `(x + y√2)² = a + b√2`, i.e. `x² + 2y² = a`, `2xy = b`.
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.b.is_zero() {
            if let Some(x) = Scalar::sqrt(&self.a) {
                return Some(QSqrt2::rational(x));
            }
            let half = &self.a / Rational::from_i64(2);
            return Scalar::sqrt(&half).map(|y| QSqrt2 { a: Rational::zero(), b: y });
        }
        let disc = Scalar::sqrt(&self.norm())?;
        let two = Rational::from_i64(2);
        for x2 in [(&self.a + &disc) / &two, (&self.a - &disc) / &two] {
            if let Some(x) = Scalar::sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let root = QSqrt2 { a: x, b: y };
                if root.clone() * root.clone() == *self {
                    return Some(root.abs());
                }
            }
        }
        None
    }

    fn parse(s: &str) -> Option<Self> {
        QSqrt2::from_str_radix(s, 10).ok()
    }
}
