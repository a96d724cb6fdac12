//! Cycles (circles and lines) in the plane and their Möbius action.
//!
//! A cycle is the projective quadruple `(k, l, n, m)` with locus
//!
//! ```text
//! k(u² + v²) − 2lu − 2nv + m = 0
//! ```
//!
//! and matrix `[[l + in, −m], [k, −l + in]]`. A real Möbius map `M` sends the
//! cycle with matrix `C` to the one with matrix `M C M⁻¹`. Representatives
//! are never rescaled behind the caller's back; every predicate here is
//! invariant under projective scaling.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Cycle2<S> {
    pub k: S,
    pub l: S,
    pub n: S,
    pub m: S,
}

impl<S: Scalar> Cycle2<S> {
    pub fn new(k: S, l: S, n: S, m: S) -> Result<Self> {
        if k.is_zero() && l.is_zero() && n.is_zero() && m.is_zero() {
            return Err(Error::ZeroCycle);
        }
        Ok(Cycle2 { k, l, n, m })
    }

    pub fn from_i64(k: i64, l: i64, n: i64, m: i64) -> Result<Self> {
        Cycle2::new(S::from_i64(k), S::from_i64(l), S::from_i64(n), S::from_i64(m))
    }

    /// The real line `v = 0`.
    pub fn real_axis() -> Self {
        Cycle2 { k: S::zero(), l: S::zero(), n: S::one(), m: S::zero() }
    }

    /// Horocycle touching the real line at `p` with radius `r`: `(1, p, r, p²)`.
    pub fn horocycle(p: S, r: S) -> Self {
        Cycle2 { k: S::one(), m: p.square(), l: p, n: r }
    }

    /// `l² + n² − km`, half the self inner product. Positive for real
    /// circles and lines, zero for point-cycles, negative when imaginary.
    pub fn norm(&self) -> S {
        self.l.square() + self.n.square() - self.k.clone() * self.m.clone()
    }

    pub fn is_line(&self) -> bool {
        self.k.is_zero()
    }

    pub fn is_point_cycle(&self) -> bool {
        self.norm().is_zero()
    }

    /// Left-hand side of the cycle equation at `(u, v)`.
    pub fn evaluate(&self, u: &S, v: &S) -> S {
        let two = S::from_i64(2);
        self.k.clone() * (u.square() + v.square()) - two.clone() * self.l.clone() * u.clone()
            - two * self.n.clone() * v.clone()
            + self.m.clone()
    }

    pub fn scale(&self, s: &S) -> Self {
        Cycle2 {
            k: self.k.clone() * s.clone(),
            l: self.l.clone() * s.clone(),
            n: self.n.clone() * s.clone(),
            m: self.m.clone() * s.clone(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Cycle2<T> {
        Cycle2 { k: f(&self.k), l: f(&self.l), n: f(&self.n), m: f(&self.m) }
    }

    pub fn to_f64(&self) -> Cycle2<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn coefficients(&self) -> [&S; 4] {
        [&self.k, &self.l, &self.n, &self.m]
    }

    /// Mirror image in the real axis, `(k, l, −n, m)`.
    pub fn reflect(&self) -> Self {
        Cycle2 { k: self.k.clone(), l: self.l.clone(), n: -self.n.clone(), m: self.m.clone() }
    }

    /// Same point of projective space: all 2×2 minors of the pair vanish.
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> bool {
        let a = self.coefficients();
        let b = other.coefficients();
        let scale = a.iter().chain(b.iter()).map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        (0..4).all(|i| {
            (i + 1..4).all(|j| {
                let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                minor.is_negligible(tol * scale * scale)
            })
        })
    }

    pub fn to_matrix(&self) -> CycleMat2<S> {
        let z = S::zero;
        CycleMat2([
            [Complex::new(self.l.clone(), self.n.clone()), Complex::new(-self.m.clone(), z())],
            [Complex::new(self.k.clone(), z()), Complex::new(-self.l.clone(), self.n.clone())],
        ])
    }

    /// Inverse of [`Cycle2::to_matrix`]. The diagonal must have the form
    /// `±l + in` and the anti-diagonal must be real, up to `tol` relative to
    /// the largest entry (exact in exact fields).
    pub fn from_matrix(mat: &CycleMat2<S>, tol: f64) -> Result<Self> {
        let [[p, q], [r, s]] = &mat.0;
        let scale = mat
            .0
            .iter()
            .flatten()
            .map(|z| z.re.to_f64().abs().max(z.im.to_f64().abs()))
            .fold(1.0, f64::max);
        let t = tol * scale;
        let ok = q.im.is_negligible(t)
            && r.im.is_negligible(t)
            && (p.re.clone() + s.re.clone()).is_negligible(t)
            && (p.im.clone() - s.im.clone()).is_negligible(t);
        if !ok {
            return Err(Error::NotACycleMatrix);
        }
        let half = S::one() / S::from_i64(2);
        Cycle2::new(
            r.re.clone(),
            (p.re.clone() - s.re.clone()) * half.clone(),
            (p.im.clone() + s.im.clone()) * half,
            -q.re.clone(),
        )
    }
}

impl Cycle2<crate::scalar::Rational> {
    pub fn convert<T: Scalar>(&self) -> Cycle2<T> {
        self.map(T::from_rational)
    }
}

impl<S: Scalar> fmt::Display for Cycle2<S> {
    /// `k l n m`, whitespace separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.k, self.l, self.n, self.m)
    }
}

impl<S: Scalar> std::str::FromStr for Cycle2<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(Error::parse(1, "a cycle needs four coefficients `k l n m`"));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(S::parse(p).ok_or_else(|| Error::parse(1, format!("bad coefficient {p:?}")))?);
        }
        let mut it = v.into_iter();
        let mut next = || it.next().expect("four coefficients");
        Cycle2::new(next(), next(), next(), next())
    }
}

/// Complex 2×2 matrix `[[l + in, −m], [k, −l + in]]` of a cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleMat2<S>(pub [[Complex<S>; 2]; 2]);

impl<S: Scalar> CycleMat2<S> {
    fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| {
            a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()
        };
        CycleMat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    fn trace(&self) -> Complex<S> {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    /// Entry-wise complex conjugate.
    fn conj(&self) -> Self {
        let c = |z: &Complex<S>| z.conj();
        CycleMat2([[c(&self.0[0][0]), c(&self.0[0][1])], [c(&self.0[1][0]), c(&self.0[1][1])]])
    }

    fn from_real(m: &Mat2<S>) -> Self {
        let r = |x: &S| Complex::new(x.clone(), S::zero());
        CycleMat2([[r(&m.a), r(&m.b)], [r(&m.c), r(&m.d)]])
    }
}

/// Point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum SpherePoint<S> {
    Finite(Complex<S>),
    Infinity,
}

impl<S: Scalar> SpherePoint<S> {
    pub fn real(x: S) -> Self {
        SpherePoint::Finite(Complex::new(x, S::zero()))
    }
}

/// `z ↦ (az + b)/(cz + d)` on the sphere: `∞ ↦ a/c` and `−d/c ↦ ∞`.
pub fn apply_moebius_point<S: Scalar>(mat: &Mat2<S>, z: &SpherePoint<S>) -> SpherePoint<S> {
    let cplx = |x: &S| Complex::new(x.clone(), S::zero());
    let (num, den) = match z {
        SpherePoint::Infinity => (cplx(&mat.a), cplx(&mat.c)),
        SpherePoint::Finite(z) => (
            cplx(&mat.a) * z.clone() + cplx(&mat.b),
            cplx(&mat.c) * z.clone() + cplx(&mat.d),
        ),
    };
    if den.is_zero() {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(num / den)
    }
}

/// Image of a cycle under `M` via `M C M⁻¹`. The projective scale is the
/// one the similarity produces; no renormalisation happens.
pub fn cycle_image<S: Scalar>(mat: &Mat2<S>, c: &Cycle2<S>) -> Result<Cycle2<S>> {
    let inv = mat.inverse()?;
    let m = CycleMat2::from_real(mat);
    let mi = CycleMat2::from_real(&inv);
    let image = m.mul(&c.to_matrix()).mul(&mi);
    // exact up to rounding, so only the float path needs slack
    Cycle2::from_matrix(&image, 1e-9)
}

/// Closed form of the invariant product `Re tr(C₁ · conj(C₂))`:
/// `2l₁l₂ + 2n₁n₂ − k₁m₂ − m₁k₂`.
pub fn inner_product<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>) -> S {
    let two = S::from_i64(2);
    two.clone() * c1.l.clone() * c2.l.clone() + two * c1.n.clone() * c2.n.clone()
        - c1.k.clone() * c2.m.clone()
        - c1.m.clone() * c2.k.clone()
}

/// `Re tr(C₁ · conj(C₂))` computed from the matrices themselves.
pub fn inner_product_trace<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>) -> S {
    c1.to_matrix().mul(&c2.to_matrix().conj()).trace().re
}

/// `|⟨c₁, c₂⟩| ≤ tol · √|⟨c₁,c₁⟩⟨c₂,c₂⟩|`; an exact zero test in exact fields.
pub fn is_orthogonal<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>, tol: f64) -> bool {
    let ip = inner_product(c1, c2);
    if S::EXACT {
        return ip.is_zero();
    }
    let scale = (inner_product(c1, c1) * inner_product(c2, c2)).to_f64().abs().sqrt();
    ip.to_f64().abs() <= tol * scale
}

/// Orthogonality residual normalised by the cycles' self products.
pub fn orthogonality_residual<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>) -> f64 {
    let ip = inner_product(c1, c2);
    if ip.is_zero() {
        return 0.0;
    }
    let scale = (inner_product(c1, c1) * inner_product(c2, c2)).to_f64().abs().sqrt();
    ip.to_f64().abs() / scale
}

fn real_norms<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>) -> Result<(S, S)> {
    let (q1, q2) = (c1.norm(), c2.norm());
    if !q1.is_positive() || !q2.is_positive() {
        return Err(Error::NotARealCycle);
    }
    Ok((q1, q2))
}

/// Residual of the external tangency condition
/// `(l+l̃)² + (n+ñ)² − (m+m̃)(k+k̃) = 0` after scaling both representatives
/// to `l² + n² − km = 1`.
///
/// In exact fields the square root is avoided: with the product
/// `p = ⟨c₁,c₂⟩` and norms `q₁, q₂` the condition reads `p = −2√(q₁q₂)`, so
/// for `p ≤ 0` the residual is `p²/(4q₁q₂) − 1`, exactly zero at tangency.
pub fn tangency_residual<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>) -> Result<f64> {
    let (q1, q2) = real_norms(c1, c2)?;
    let ip = inner_product(c1, c2);
    if S::EXACT && !ip.is_positive() {
        let four = S::from_i64(4);
        let qq = four * q1 * q2;
        return Ok(((ip.square() - qq.clone()) / qq).to_f64());
    }
    Ok(2.0 + ip.to_f64() / (q1.to_f64() * q2.to_f64()).sqrt())
}

/// External tangency test. Rejects point-cycles and imaginary cycles.
pub fn is_tangent<S: Scalar>(c1: &Cycle2<S>, c2: &Cycle2<S>, tol: f64) -> Result<bool> {
    let (q1, q2) = real_norms(c1, c2)?;
    if S::EXACT {
        let ip = inner_product(c1, c2);
        return Ok(!ip.is_positive() && ip.square() == S::from_i64(4) * q1 * q2);
    }
    Ok(tangency_residual(c1, c2)?.abs() <= tol)
}

pub fn reflect<S: Scalar>(c: &Cycle2<S>) -> Cycle2<S> {
    c.reflect()
}

/// Decoded geometry of a cycle.
#[derive(Clone, Debug, PartialEq)]
pub enum CycleShape<S> {
    /// Centre `(l/k, n/k)` and squared radius `(l² + n² − km)/k²`.
    Circle { center: (S, S), radius_sq: S },
    /// Line `l·u + n·v = offset` with normal `(l, n)` and offset `m/2`.
    Line { normal: (S, S), offset: S },
}

impl<S: Scalar> CycleShape<S> {
    /// Exact radius when the square root exists in the field.
    pub fn radius(&self) -> Option<S> {
        match self {
            CycleShape::Circle { radius_sq, .. } => radius_sq.sqrt(),
            CycleShape::Line { .. } => None,
        }
    }

    pub fn radius_f64(&self) -> Option<f64> {
        match self {
            CycleShape::Circle { radius_sq, .. } => Some(radius_sq.to_f64().sqrt()),
            CycleShape::Line { .. } => None,
        }
    }

    pub fn center_f64(&self) -> Option<(f64, f64)> {
        match self {
            CycleShape::Circle { center, .. } => Some((center.0.to_f64(), center.1.to_f64())),
            CycleShape::Line { .. } => None,
        }
    }
}

pub fn center_radius<S: Scalar>(c: &Cycle2<S>) -> Result<CycleShape<S>> {
    let q = c.norm();
    if q.is_negative() {
        return Err(Error::ImaginaryCycle);
    }
    if c.k.is_zero() {
        if c.l.is_zero() && c.n.is_zero() {
            return Err(Error::NotARealCycle);
        }
        let half = S::one() / S::from_i64(2);
        return Ok(CycleShape::Line { normal: (c.l.clone(), c.n.clone()), offset: c.m.clone() * half });
    }
    let k = c.k.clone();
    Ok(CycleShape::Circle {
        center: (c.l.clone() / k.clone(), c.n.clone() / k.clone()),
        radius_sq: q / k.square(),
    })
}

/// `cos²` of the angle at which a cycle crosses the real axis,
/// `⟨c, R⟩² / (⟨c, c⟩⟨R, R⟩) = n² / (l² + n² − km)`.
pub fn axis_angle_cos_sq<S: Scalar>(c: &Cycle2<S>) -> Result<S> {
    let q = c.norm();
    if !q.is_positive() {
        return Err(Error::NotARealCycle);
    }
    Ok(c.n.square() / q)
}

/// Crossing angle with the real axis in radians, in `[0, π/2]`.
pub fn axis_angle<S: Scalar>(c: &Cycle2<S>) -> Result<f64> {
    let cos = axis_angle_cos_sq(c)?.to_f64().clamp(0.0, 1.0).sqrt();
    Ok(cos.acos())
}

/// Intersection points of two real cycles (floating point).
pub fn intersections(c1: &Cycle2<f64>, c2: &Cycle2<f64>) -> Vec<(f64, f64)> {
    // Subtracting the normalised equations leaves the radical line.
    let (a, b) = if c1.k.abs() >= c2.k.abs() { (c1, c2) } else { (c2, c1) };
    if a.k == 0.0 {
        // two lines
        let det = a.l * b.n - a.n * b.l;
        if det == 0.0 {
            return Vec::new();
        }
        let (ra, rb) = (a.m / 2.0, b.m / 2.0);
        return vec![((ra * b.n - rb * a.n) / det, (a.l * rb - b.l * ra) / det)];
    }
    let circle = a.scale(&(1.0 / a.k));
    let radical = Cycle2 {
        k: 0.0,
        l: b.l - b.k * circle.l,
        n: b.n - b.k * circle.n,
        m: b.m - b.k * circle.m,
    };
    // line: l u + n v = m/2
    let (ln, nn, off) = (radical.l, radical.n, radical.m / 2.0);
    let len2 = ln * ln + nn * nn;
    if len2 == 0.0 {
        return Vec::new();
    }
    let (cu, cv) = (circle.l, circle.n);
    let r2 = circle.norm();
    let dist = (ln * cu + nn * cv - off) / len2.sqrt();
    let h2 = r2 - dist * dist;
    if h2 < 0.0 {
        return Vec::new();
    }
    let (nu, nv) = (ln / len2.sqrt(), nn / len2.sqrt());
    let (fu, fv) = (cu - dist * nu, cv - dist * nv);
    let h = h2.sqrt();
    vec![(fu - h * nv, fv + h * nu), (fu + h * nv, fv - h * nu)]
}

impl<S: Scalar> One for CycleMat2<S> {
    fn one() -> Self {
        let o = || Complex::new(S::one(), S::zero());
        let z = || Complex::new(S::zero(), S::zero());
        CycleMat2([[o(), z()], [z(), o()]])
    }
}

impl<S: Scalar> std::ops::Mul for CycleMat2<S> {
    type Output = CycleMat2<S>;
    fn mul(self, o: Self) -> Self {
        CycleMat2::mul(&self, &o)
    }
}
