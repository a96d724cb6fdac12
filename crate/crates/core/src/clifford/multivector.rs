//! Dense multivectors of the Clifford algebra with `eᵢ² = −1`.
//!
//! Blades are indexed by bitmask: bit `i − 1` set means `eᵢ` is a factor,
//! factors in increasing order. So `0b101` is `e1e3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported number of generators.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<S> {
    dim: usize,
    coeffs: Vec<S>,
}

/// Sign of `e_A e_B` relative to the canonical blade `e_{A xor B}`.
fn blade_sign(a: usize, b: usize) -> bool {
    let mut swaps = 0;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    // each shared generator squares to −1
    (swaps + (a & b).count_ones()) % 2 == 1
}

fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        Ok(Multivector { dim, coeffs: vec![S::zero(); 1 << dim] })
    }

    pub fn scalar(dim: usize, s: S) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        x.coeffs[0] = s;
        Ok(x)
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, S::one())
    }

    /// The generator `eᵢ`, `1 ≤ i ≤ dim`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        if i == 0 || i > dim {
            return Err(Error::DimensionMismatch { left: dim, right: i });
        }
        x.coeffs[1 << (i - 1)] = S::one();
        Ok(x)
    }

    /// `Σ coords[i]·e_{i+1}`; missing trailing coordinates are zero.
    pub fn vector(dim: usize, coords: &[S]) -> Result<Self> {
        if coords.len() > dim {
            return Err(Error::DimensionMismatch { left: dim, right: coords.len() });
        }
        let mut x = Self::zero(dim)?;
        for (i, c) in coords.iter().enumerate() {
            x.coeffs[1 << i] = c.clone();
        }
        Ok(x)
    }

    pub fn vector_i64(dim: usize, coords: &[i64]) -> Result<Self> {
        let v: Vec<S> = coords.iter().map(|&c| S::from_i64(c)).collect();
        Self::vector(dim, &v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: usize) -> &S {
        &self.coeffs[mask]
    }

    pub fn set(&mut self, mask: usize, value: S) {
        self.coeffs[mask] = value;
    }

    /// Non-zero `(mask, coefficient)` pairs in canonical order.
    pub fn blades(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Geometric product.
    pub fn gp(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (a, x) in self.blades() {
            for (b, y) in other.blades() {
                let term = x.clone() * y.clone();
                let slot = &mut out[a ^ b];
                if blade_sign(a, b) {
                    *slot = slot.clone() - term;
                } else {
                    *slot = slot.clone() + term;
                }
            }
        }
        Ok(Multivector { dim: self.dim, coeffs: out })
    }

    fn map_blades(&self, f: impl Fn(usize, &S) -> S) -> Self {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().enumerate().map(|(m, c)| f(m, c)).collect() }
    }

    fn negate_grades(&self, negate: impl Fn(usize) -> bool) -> Self {
        self.map_blades(|m, c| if negate(grade_of(m)) { -c.clone() } else { c.clone() })
    }

    /// Reversion `a*`: fixes vectors, `(ab)* = b*a*`.
    pub fn reverse(&self) -> Self {
        self.negate_grades(|g| g % 4 == 2 || g % 4 == 3)
    }

    /// Conjugation `ā`: negates vectors, `(ab)‾ = b̄ā`.
    pub fn conjugate(&self) -> Self {
        self.negate_grades(|g| g % 4 == 1 || g % 4 == 2)
    }

    /// Grade involution: negates odd grades.
    pub fn involute(&self) -> Self {
        self.negate_grades(|g| g % 2 == 1)
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn grade(&self, g: usize) -> Self {
        self.map_blades(|m, c| if grade_of(m) == g { c.clone() } else { S::zero() })
    }

    /// Bitmask of the grades with a non-zero coefficient.
    pub fn grades(&self) -> u32 {
        self.blades().fold(0, |acc, (m, _)| acc | 1 << grade_of(m))
    }

    /// Grade 1 or zero.
    pub fn is_vector(&self) -> bool {
        self.grades() & !0b10 == 0
    }

    /// Grade 0 or zero.
    pub fn is_scalar(&self) -> bool {
        self.grades() & !0b1 == 0
    }

    /// Only even grades, or only odd grades.
    pub fn has_pure_parity(&self) -> bool {
        let g = self.grades();
        g & 0x55555555 == 0 || g & 0xAAAAAAAA == 0
    }

    /// Coefficients of `e₁ … e_dim`.
    pub fn vector_coords(&self) -> Vec<S> {
        (0..self.dim).map(|i| self.coeffs[1 << i].clone()).collect()
    }

    /// Coefficient of `eᵢ`.
    pub fn component(&self, i: usize) -> S {
        self.coeffs[1 << (i - 1)].clone()
    }

    /// Sum of squared coefficients; equals `aā` for products of vectors.
    pub fn norm_sq(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, c| acc + c.square())
    }

    /// Euclidean product of the vector parts.
    pub fn dot(&self, other: &Self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.coeffs[1 << i].clone() * other.coeffs[1 << i].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_blades(|_, c| c.clone() * s.clone())
    }

    /// `x⁻¹ = x̄/|x|²` for a non-zero vector.
    pub fn vector_inverse(&self) -> Result<Self> {
        if !self.is_vector() {
            return Err(Error::NotAVector);
        }
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.conjugate().scale(&(S::one() / n)))
    }

    /// `ā/(aā)` when `aā` is a non-zero real, as for products of vectors.
    pub fn versor_inverse(&self) -> Result<Self> {
        let conj = self.conjugate();
        let n = self.gp(&conj)?;
        if !n.is_scalar() {
            return Err(Error::InvalidVersorMatrix("entry is not a product of vectors".into()));
        }
        let n = n.scalar_part();
        if n.is_zero() {
            return Err(Error::PoleHit);
        }
        Ok(conj.scale(&(S::one() / n)))
    }

    /// Reflection `R` in the hyperplane `x_dim = 0`, extended as an
    /// automorphism: blades containing `e_dim` change sign.
    pub fn reflect_last(&self) -> Self {
        let top = 1 << (self.dim - 1);
        self.map_blades(|m, c| if m & top != 0 { -c.clone() } else { c.clone() })
    }

    /// True when no blade involves `e_dim`.
    pub fn avoids_last(&self) -> bool {
        let top = 1 << (self.dim - 1);
        self.blades().all(|(m, _)| m & top == 0)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        self.map(Scalar::to_f64)
    }

    /// Largest absolute coefficient, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Parses the `Display` form, e.g. `3*1+-1/2*e1e3`.
    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        let text = text.trim();
        if text == "0" {
            return Ok(x);
        }
        let bad = |msg: String| Error::parse(1, msg);
        for term in split_terms(text) {
            let (coeff, blade) = term
                .rsplit_once('*')
                .ok_or_else(|| bad(format!("term {term:?} is not `<coeff>*<blade>`")))?;
            let coeff = coeff.trim();
            let coeff = coeff.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coeff);
            let value = S::parse(coeff).ok_or_else(|| bad(format!("bad coefficient {coeff:?}")))?;
            let mask = parse_blade(blade.trim(), dim).ok_or_else(|| bad(format!("bad blade {blade:?}")))?;
            x.coeffs[mask] = x.coeffs[mask].clone() + value;
        }
        Ok(x)
    }
}

/// Splits at `+` signs outside parentheses.
fn split_terms(text: &str) -> Vec<&str> {
    let mut terms = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                terms.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    terms.push(&text[start..]);
    terms
}

fn parse_blade(s: &str, dim: usize) -> Option<usize> {
    if s == "1" {
        return Some(0);
    }
    let mut mask = 0usize;
    let mut last = 0;
    for part in s.split('e').skip(1) {
        let i: usize = part.parse().ok()?;
        if i <= last || i > dim {
            return None;
        }
        mask |= 1 << (i - 1);
        last = i;
    }
    (s.starts_with('e') && mask != 0).then_some(mask)
}

fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    /// `<coeff>*<blade>` terms joined by `+`; coefficients whose own
    /// notation contains `+` or `*` are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.blades() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let c = c.to_string();
            if c.contains('+') || c.contains('*') {
                write!(f, "({c})*{}", blade_name(mask))?;
            } else {
                write!(f, "{c}*{}", blade_name(mask))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    /// Panics when the dimensions differ.
    fn add(self, o: &Multivector<S>) -> Multivector<S> {
        self.check_dim(o).expect("multivector dimensions differ");
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    /// Panics when the dimensions differ.
    fn sub(self, o: &Multivector<S>) -> Multivector<S> {
        self.check_dim(o).expect("multivector dimensions differ");
        Multivector { dim: self.dim, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    /// Geometric product. Panics when the dimensions differ; use
    /// [`Multivector::gp`] for a checked version.
    fn mul(self, o: &Multivector<S>) -> Multivector<S> {
        self.gp(o).expect("multivector dimensions differ")
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map_blades(|_, c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, o: Multivector<S>) -> Multivector<S> {
                (&self).$method(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type Q = Rational;
    type Mv = Multivector<Q>;

    fn e(dim: usize, i: usize) -> Mv {
        Mv::basis(dim, i).unwrap()
    }

    fn s(dim: usize, v: i64) -> Mv {
        Mv::scalar(dim, Q::from_i64(v)).unwrap()
    }

    #[test]
    fn generator_relations() {
        assert_eq!(&e(2, 1) * &e(2, 1), s(2, -1));
        let e12 = &e(2, 1) * &e(2, 2);
        assert_eq!(e12.blades().map(|(m, c)| (m, c.clone())).collect::<Vec<_>>(), vec![(0b11, Q::from_i64(1))]);
        assert_eq!(&e(2, 2) * &e(2, 1), -&e12);
        let sum = &e(2, 1) + &e(2, 2);
        assert_eq!(&sum * &sum, s(2, -2));
        for dim in 1..=4 {
            for i in 1..=dim {
                for j in 1..=dim {
                    let ac = &(&e(dim, i) * &e(dim, j)) + &(&e(dim, j) * &e(dim, i));
                    assert_eq!(ac, s(dim, if i == j { -2 } else { 0 }));
                }
            }
        }
    }

    #[test]
    fn involutions() {
        let e12 = &e(2, 1) * &e(2, 2);
        assert_eq!(e12.reverse(), &e(2, 2) * &e(2, 1));
        assert_eq!(e12.reverse(), -&e12);
        assert_eq!(e(2, 1).conjugate(), -&e(2, 1));
        assert_eq!(e(2, 1).reverse(), e(2, 1));
        assert_eq!((&e(2, 1) * &(-&e(2, 1))).scalar_part(), Q::from_i64(1));
    }

    #[test]
    fn vector_inverses() {
        assert_eq!(e(3, 1).vector_inverse().unwrap(), -&e(3, 1));
        let x = Mv::vector_i64(3, &[0, 3]).unwrap();
        assert_eq!(x.vector_inverse().unwrap(), e(3, 2).scale(&Q::new((-1).into(), 3.into())));
        let x = &e(3, 1) + &e(3, 2);
        assert_eq!(x.vector_inverse().unwrap(), x.scale(&Q::new((-1).into(), 2.into())));
        assert_eq!(Mv::zero(3).unwrap().vector_inverse(), Err(Error::ZeroVector));
        assert_eq!(s(3, 2).vector_inverse(), Err(Error::NotAVector));
    }

    #[test]
    fn grade_projection_and_parity() {
        let x = &(&s(3, 2) + &e(3, 1)) + &(&e(3, 1) * &e(3, 3));
        assert_eq!(x.grade(1), e(3, 1));
        assert_eq!(x.grades(), 0b111);
        assert!(!x.has_pure_parity());
        assert!((&s(3, 2) + &(&e(3, 1) * &e(3, 3))).has_pure_parity());
        assert!(e(3, 2).is_vector() && !x.is_vector());
    }

    #[test]
    fn dimension_limits() {
        assert_eq!(Mv::zero(MAX_DIM + 1), Err(Error::DimensionTooLarge(MAX_DIM + 1)));
        assert_eq!(e(2, 1).gp(&e(3, 1)), Err(Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn text_format() {
        let x = &(&s(3, 3) + &e(3, 2).scale(&Q::new((-1).into(), 2.into()))) + &(&e(3, 1) * &e(3, 3));
        assert_eq!(x.to_string(), "3*1+-1/2*e2+1*e1e3");
        assert_eq!(Mv::parse(3, &x.to_string()).unwrap(), x);
        assert_eq!(Mv::zero(3).unwrap().to_string(), "0");
        assert_eq!(Mv::parse(3, "0").unwrap(), Mv::zero(3).unwrap());
        assert!(Mv::parse(3, "1*e4").is_err());
        assert!(Mv::parse(3, "1*e3e1").is_err());
        assert!(Mv::parse(3, "e1").is_err());
        use crate::scalar::QSqrt2;
        let r = Multivector::<QSqrt2>::vector(2, &[QSqrt2::new(Q::from_i64(1), Q::from_i64(2))]).unwrap();
        assert_eq!(r.to_string(), "(1+2*sqrt2)*e1");
        assert_eq!(Multivector::<QSqrt2>::parse(2, &r.to_string()).unwrap(), r);
    }

    fn multivector(dim: usize) -> impl Strategy<Value = Mv> {
        proptest::collection::vec(-4i64..=4, 1 << dim).prop_map(move |cs| {
            let mut x = Mv::zero(dim).unwrap();
            for (m, c) in cs.into_iter().enumerate() {
                x.set(m, Q::from_i64(c));
            }
            x
        })
    }

    proptest! {
        #[test]
        fn product_is_associative(a in multivector(3), b in multivector(3), c in multivector(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn involutions_are_anti_automorphisms(a in multivector(3), b in multivector(3)) {
            prop_assert_eq!((&a * &b).reverse(), &b.reverse() * &a.reverse());
            prop_assert_eq!((&a * &b).conjugate(), &b.conjugate() * &a.conjugate());
            prop_assert_eq!(a.reverse().reverse(), a.clone());
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }

        #[test]
        fn last_generator_anticommutes_with_lower_vectors(cs in proptest::collection::vec(-6i64..=6, 3)) {
            let x = Mv::vector_i64(4, &cs).unwrap();
            let top = e(4, 4);
            prop_assert_eq!(&top * &x, -&(&x * &top));
        }

        #[test]
        fn versor_identity_through_last_generator(vs in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..4)) {
            // e_{n+1} d̄ = d* e_{n+1} for any product d of vectors of R^n
            let d = vs.iter().fold(s(4, 1), |acc, v| &acc * &Mv::vector_i64(4, v).unwrap());
            let top = e(4, 4);
            prop_assert_eq!(&top * &d.conjugate(), &d.reverse() * &top);
        }

        #[test]
        fn reflection_is_an_automorphism(a in multivector(3), b in multivector(3)) {
            prop_assert_eq!((&a * &b).reflect_last(), &a.reflect_last() * &b.reflect_last());
        }

        #[test]
        fn text_round_trip(a in multivector(3)) {
            prop_assert_eq!(Mv::parse(3, &a.to_string()).unwrap(), a);
        }
    }
}
