//! 2×2 matrices over a [`Scalar`] field.

use std::fmt;
use std::ops::Mul;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Row-major `[[a, b], [c, d]]`, acting on the sphere by `z ↦ (az + b)/(cz + d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

/// Matrix of exact rationals, as produced by continued-fraction products.
pub type Mat2Q = Mat2<Rational>;

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(S::from_i64(a), S::from_i64(b), S::from_i64(c), S::from_i64(d))
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// `[[d, −b], [−c, a]]`, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.adjugate().scale(&(S::one() / det)))
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat2::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    /// Rescales to `det = ±1`. Fails when `√|det|` is not in the field.
    pub fn normalized(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let root = det
            .abs()
            .sqrt()
            .ok_or(Error::NotRepresentable("square root of the determinant"))?;
        Ok(self.scale(&(S::one() / root)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn to_f64(&self) -> Mat2<f64> {
        self.map(Scalar::to_f64)
    }

    /// First column `(a, c)`.
    pub fn first_column(&self) -> (&S, &S) {
        (&self.a, &self.c)
    }

    /// Second column `(b, d)`.
    pub fn second_column(&self) -> (&S, &S) {
        (&self.b, &self.d)
    }
}

impl Mat2<Rational> {
    /// Embeds an exact matrix into another field.
    pub fn convert<T: Scalar>(&self) -> Mat2<T> {
        self.map(T::from_rational)
    }
}

impl<S: Scalar> Mul for &Mat2<S> {
    type Output = Mat2<S>;

    fn mul(self, o: &Mat2<S>) -> Mat2<S> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }
}

impl<S: Scalar> Mul for Mat2<S> {
    type Output = Mat2<S>;

    fn mul(self, o: Mat2<S>) -> Mat2<S> {
        &self * &o
    }
}

impl<S: Scalar> One for Mat2<S> {
    fn one() -> Self {
        Mat2::identity()
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
