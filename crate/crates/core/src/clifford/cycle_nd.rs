//! Spheres and hyperplanes of `R^{n+1}` as Clifford matrices
//! `[[l, m], [k, l̄]]` with locus `k|x|² − 2⟨l, x⟩ + m = 0`.

use std::fmt;

use super::multivector::Multivector;
use super::versor::VersorMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CycleND<S> {
    pub k: S,
    pub l: Multivector<S>,
    pub m: S,
}

/// Decoded geometry of an ND cycle.
#[derive(Clone, Debug, PartialEq)]
pub enum SphereShape<S> {
    Sphere { center: Multivector<S>, radius_sq: S },
    /// `⟨normal, x⟩ = offset`.
    Hyperplane { normal: Multivector<S>, offset: S },
}

impl<S: Scalar> CycleND<S> {
    pub fn new(k: S, l: Multivector<S>, m: S) -> Result<Self> {
        if !l.is_vector() {
            return Err(Error::NotAVector);
        }
        if k.is_zero() && m.is_zero() && l.is_zero() {
            return Err(Error::ZeroCycle);
        }
        Ok(CycleND { k, l, m })
    }

    /// The hyperplane `x_{n+1} = m/2`, i.e. `(0, e_{n+1}, m)`.
    pub fn horizontal(dim: usize, m: S) -> Result<Self> {
        CycleND::new(S::zero(), Multivector::basis(dim, dim)?, m)
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    /// `k|x|² − 2⟨l, x⟩ + m`.
    pub fn evaluate(&self, x: &Multivector<S>) -> S {
        self.k.clone() * x.norm_sq() - S::from_i64(2) * self.l.dot(x) + self.m.clone()
    }

    pub fn scale(&self, s: &S) -> Self {
        CycleND { k: self.k.clone() * s.clone(), l: self.l.scale(s), m: self.m.clone() * s.clone() }
    }

    /// Mirror image under `R`, reflection in `x_{n+1} = 0`.
    pub fn reflect(&self) -> Self {
        CycleND { k: self.k.clone(), l: self.l.reflect_last(), m: self.m.clone() }
    }

    /// `|l|² − km`; the squared radius times `k²`.
    pub fn norm(&self) -> S {
        self.l.norm_sq() - self.k.clone() * self.m.clone()
    }

    pub fn shape(&self) -> Result<SphereShape<S>> {
        if self.norm().is_negative() {
            return Err(Error::ImaginaryCycle);
        }
        if self.k.is_zero() {
            if self.l.is_zero() {
                return Err(Error::NotARealCycle);
            }
            let half = S::one() / S::from_i64(2);
            return Ok(SphereShape::Hyperplane { normal: self.l.clone(), offset: self.m.clone() * half });
        }
        let inv = S::one() / self.k.clone();
        Ok(SphereShape::Sphere { center: self.l.scale(&inv), radius_sq: self.norm() * inv.square() })
    }

    /// Tangent to `x_{n+1} = 0`: `Σ_{i≤n} lᵢ² = km`.
    pub fn is_horocycle(&self) -> bool {
        let top = self.l.component(self.dim());
        (self.norm() - top.square()).is_zero()
    }

    /// Foot of the centre on `x_{n+1} = 0` for a sphere.
    pub fn touch_point(&self) -> Option<Multivector<S>> {
        if self.k.is_zero() {
            return None;
        }
        let mut p = self.l.scale(&(S::one() / self.k.clone()));
        p.set(1 << (self.dim() - 1), S::zero());
        Some(p)
    }

    /// Coefficients `(k, l₁, …, l_dim, m)`.
    pub fn coefficients(&self) -> Vec<S> {
        let mut v = vec![self.k.clone()];
        v.extend(self.l.vector_coords());
        v.push(self.m.clone());
        v
    }

    /// All 2×2 minors of the coefficient pair vanish (relative `tol`).
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> bool {
        self.projective_residual(other) <= tol
    }

    /// Largest 2×2 minor of the coefficient pair, relative to the product
    /// of the largest coefficients. Zero iff the cycles coincide.
    pub fn projective_residual(&self, other: &Self) -> f64 {
        let a = self.coefficients();
        let b = other.coefficients();
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        let sa = a.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let sb = b.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                if !minor.is_zero() {
                    worst = worst.max(minor.to_f64().abs() / (sa * sb));
                }
            }
        }
        worst
    }

    pub fn to_matrix(&self) -> [Multivector<S>; 4] {
        let dim = self.dim();
        let s = |v: &S| Multivector::scalar(dim, v.clone()).expect("dimension already checked");
        [self.l.clone(), s(&self.m), s(&self.k), self.l.conjugate()]
    }

    /// Reads `[[l, m], [k, l̄]]`, checking the shape up to `tol` relative.
    pub fn from_matrix(entries: &[Multivector<S>; 4], tol: f64) -> Result<Self> {
        let [l, m, k, lbar] = entries;
        let scale = entries.iter().map(Multivector::max_abs).fold(1.0, f64::max);
        let t = tol * scale;
        let off_grade = |x: &Multivector<S>, g: usize| x.blades().any(|(mask, c)| mask.count_ones() as usize != g && !c.is_negligible(t));
        if off_grade(l, 1) || off_grade(m, 0) || off_grade(k, 0) {
            return Err(Error::InvalidVersorMatrix("image is not a cycle matrix".into()));
        }
        let l = l.grade(1);
        if (lbar - &l.conjugate()).blades().any(|(_, c)| !c.is_negligible(t)) {
            return Err(Error::InvalidVersorMatrix("image is not a cycle matrix".into()));
        }
        CycleND::new(k.scalar_part(), l, m.scalar_part())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> CycleND<T> {
        CycleND { k: f(&self.k), l: self.l.map(f), m: f(&self.m) }
    }

    pub fn to_f64(&self) -> CycleND<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<S: Scalar> fmt::Display for CycleND<S> {
    /// `(k, l, m)` with `l` in the multivector text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.l, self.m)
    }
}

/// The image `M·C·M*` with `M* = [[d̄, b̄], [c̄, ā]]`.
pub fn cycle_image_nd<S: Scalar>(mat: &VersorMatrix<S>, c: &CycleND<S>) -> Result<CycleND<S>> {
    if mat.dim() != c.dim() {
        return Err(Error::DimensionMismatch { left: mat.dim(), right: c.dim() });
    }
    let [l, m, k, lbar] = c.to_matrix();
    let cm = VersorMatrix::new(l, m, k, lbar)?;
    let img = mat.mul(&cm)?.mul(&mat.star())?;
    CycleND::from_matrix(&[img.a, img.b, img.c, img.d], 1e-10)
}

/// `Re tr(C·C̃) = k m̃ + m k̃ − 2⟨l, l̃⟩`. This is the negative of the planar
/// product; orthogonality is still its vanishing.
pub fn inner_product_nd<S: Scalar>(c1: &CycleND<S>, c2: &CycleND<S>) -> S {
    c1.k.clone() * c2.m.clone() + c1.m.clone() * c2.k.clone() - S::from_i64(2) * c1.l.dot(&c2.l)
}

/// Image of the hyperplane `(0, e_{n+1}, m)`:
/// `(m|c|², m·ac̄ + δe_{n+1}, m|a|²)`, a horocycle at `ac̄/|c|²` with
/// radius `|δ|/(m|c|²)`.
pub fn lemma4_horocycle<S: Scalar>(mat: &VersorMatrix<S>, m: &S) -> Result<CycleND<S>> {
    if mat.c.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    column_horocycle(mat, &mat.a, &mat.c, m)
}

/// Image of `(k, e_{n+1}, 0)`:
/// `(k|d|², k·bd̄ + δe_{n+1}, k|b|²)`, a horocycle at `bd̄/|d|²` with
/// radius `|δ|/(k|d|²)`.
pub fn lemma5_horocycle<S: Scalar>(mat: &VersorMatrix<S>, k: &S) -> Result<CycleND<S>> {
    if mat.d.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    column_horocycle(mat, &mat.b, &mat.d, k)
}

fn column_horocycle<S: Scalar>(mat: &VersorMatrix<S>, top: &Multivector<S>, bottom: &Multivector<S>, s: &S) -> Result<CycleND<S>> {
    let dim = mat.dim();
    let delta = mat.delta()?;
    let e = Multivector::basis(dim, dim)?;
    let l = &(top * &bottom.conjugate()).scale(s) + &e.scale(&delta);
    CycleND::new(bottom.norm_sq() * s.clone(), l.grade(1), top.norm_sq() * s.clone())
}

/// Same closed form as [`lemma4_horocycle`] but also for `c = 0`, where it
/// is the hyperplane `x_{n+1} = m/(2δ)` moved by `M`.
pub(crate) fn first_column_family<S: Scalar>(mat: &VersorMatrix<S>, m: &S) -> Result<CycleND<S>> {
    column_horocycle(mat, &mat.a, &mat.c, m)
}

/// Image of the hyperplane `(0, x + r·e_{n+1}, 0)` through the origin:
/// `(cxd̄ + dx̄c̄, axd̄ + bx̄c̄ + δr·e_{n+1}, axb̄ + bx̄ā)`.
pub fn lemma6_connecting<S: Scalar>(mat: &VersorMatrix<S>, x: &Multivector<S>, r: &S) -> Result<CycleND<S>> {
    if !x.is_vector() || !x.avoids_last() {
        return Err(Error::NotAVector);
    }
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dim = mat.dim();
    let delta = mat.delta()?;
    let e = Multivector::basis(dim, dim)?;
    let xb = x.conjugate();
    let (a, b, c, d) = (&mat.a, &mat.b, &mat.c, &mat.d);
    let k = &(&(c * x) * &d.conjugate()) + &(&(d * &xb) * &c.conjugate());
    let l = &(&(&(a * x) * &d.conjugate()) + &(&(b * &xb) * &c.conjugate())) + &e.scale(&(delta * r.clone()));
    let m = &(&(a * x) * &b.conjugate()) + &(&(b * &xb) * &a.conjugate());
    let t = 1e-10;
    let clean = |v: &Multivector<S>, g: u32| v.blades().all(|(mask, c)| mask.count_ones() == g || c.is_negligible(t * v.max_abs().max(1.0)));
    if !clean(&k, 0) || !clean(&l, 1) || !clean(&m, 0) {
        return Err(Error::InvalidVersorMatrix("matrix violates the Ahlfors conditions".into()));
    }
    CycleND::new(k.scalar_part(), l.grade(1), m.scalar_part())
}

/// The generator `x = c̄d` that puts the connecting cycle's centre in the
/// plane through both touch points, orthogonal to `x_{n+1} = 0`. `None`
/// when it vanishes or is not a vector.
pub fn adapted_generator<S: Scalar>(mat: &VersorMatrix<S>) -> Option<Multivector<S>> {
    let x = &mat.c.conjugate() * &mat.d;
    (x.is_vector() && !x.is_zero()).then_some(x)
}

/// Centre of [`lemma6_connecting`] for `x = c̄d`:
/// `½(ac̄/|c|² + bd̄/|d|²) + δr/(2|c|²|d|²)·e_{n+1}`.
pub fn lemma6_center<S: Scalar>(mat: &VersorMatrix<S>, r: &S) -> Result<Multivector<S>> {
    let (nc, nd) = (mat.c.norm_sq(), mat.d.norm_sq());
    if nc.is_zero() || nd.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    let dim = mat.dim();
    let delta = mat.delta()?;
    let two = S::from_i64(2);
    let p = (&mat.a * &mat.c.conjugate()).scale(&(S::one() / nc.clone()));
    let q = (&mat.b * &mat.d.conjugate()).scale(&(S::one() / nd.clone()));
    let e = Multivector::basis(dim, dim)?;
    let height = delta * r.clone() / (two.clone() * nc * nd);
    Ok(&(&p + &q).scale(&(S::one() / two)) + &e.scale(&height))
}
