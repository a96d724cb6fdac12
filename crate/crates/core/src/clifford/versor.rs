//! Ahlfors matrices: 2×2 matrices of Clifford numbers acting by
//! `x ↦ (ax + b)(cx + d)⁻¹`.
//!
//! All entries live in `Cl(dim)` and may only use `e₁ … e_{dim−1}`; the
//! last generator is the extra direction `e_{n+1}` the maps are extended to.

use std::fmt;

use super::multivector::Multivector;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct VersorMatrix<S> {
    pub a: Multivector<S>,
    pub b: Multivector<S>,
    pub c: Multivector<S>,
    pub d: Multivector<S>,
}

impl<S: Scalar> VersorMatrix<S> {
    pub fn new(a: Multivector<S>, b: Multivector<S>, c: Multivector<S>, d: Multivector<S>) -> Result<Self> {
        for x in [&b, &c, &d] {
            if x.dim() != a.dim() {
                return Err(Error::DimensionMismatch { left: a.dim(), right: x.dim() });
            }
        }
        Ok(VersorMatrix { a, b, c, d })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let (one, zero) = (Multivector::one(dim)?, Multivector::zero(dim)?);
        Ok(VersorMatrix { a: one.clone(), b: zero.clone(), c: zero, d: one })
    }

    /// `[[0, 1], [1, b]]`, the matrix of `x ↦ (x + b)⁻¹`.
    pub fn factor(b: &Multivector<S>) -> Result<Self> {
        if !b.is_vector() {
            return Err(Error::NotAVector);
        }
        if !b.avoids_last() {
            return Err(Error::InvalidVersorMatrix("coefficient uses the extra generator".into()));
        }
        let dim = b.dim();
        Ok(VersorMatrix { a: Multivector::zero(dim)?, b: Multivector::one(dim)?, c: Multivector::one(dim)?, d: b.clone() })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let e = |x: &Multivector<S>, y: &Multivector<S>, z: &Multivector<S>, w: &Multivector<S>| -> Result<_> {
            Ok(&x.gp(y)? + &z.gp(w)?)
        };
        Ok(VersorMatrix {
            a: e(&self.a, &o.a, &self.b, &o.c)?,
            b: e(&self.a, &o.b, &self.b, &o.d)?,
            c: e(&self.c, &o.a, &self.d, &o.c)?,
            d: e(&self.c, &o.b, &self.d, &o.d)?,
        })
    }

    /// `ad* − bc*` as a multivector; real for a valid matrix.
    pub fn pseudodeterminant(&self) -> Multivector<S> {
        &(&self.a * &self.d.reverse()) - &(&self.b * &self.c.reverse())
    }

    /// The real pseudodeterminant `δ`.
    pub fn delta(&self) -> Result<S> {
        let p = self.pseudodeterminant();
        if !p.is_scalar() {
            return Err(Error::InvalidVersorMatrix("pseudodeterminant is not real".into()));
        }
        let delta = p.scalar_part();
        if delta.is_zero() {
            return Err(Error::InvalidVersorMatrix("pseudodeterminant vanishes".into()));
        }
        Ok(delta)
    }

    /// `M̄ = [[d*, −b*], [−c*, a*]]`.
    pub fn bar(&self) -> Self {
        VersorMatrix { a: self.d.reverse(), b: -&self.b.reverse(), c: -&self.c.reverse(), d: self.a.reverse() }
    }

    /// `M* = [[d̄, b̄], [c̄, ā]]`.
    pub fn star(&self) -> Self {
        VersorMatrix { a: self.d.conjugate(), b: self.b.conjugate(), c: self.c.conjugate(), d: self.a.conjugate() }
    }

    /// `κ` in `M̄ = κM*`: `1` when `d` is even, `−1` when odd, `None` for
    /// mixed parity. A zero `d` takes the parity of `a`, or the opposite
    /// parity of `b` (or `c`) when `a` vanishes too.
    pub fn kappa(&self) -> Option<i8> {
        let parity = |x: &Multivector<S>| -> Option<i8> {
            let g = x.grades();
            if g & 0xAAAAAAAA == 0 {
                Some(1)
            } else if g & 0x55555555 == 0 {
                Some(-1)
            } else {
                None
            }
        };
        if let Some(x) = [&self.d, &self.a].into_iter().find(|x| !x.is_zero()) {
            return parity(x);
        }
        [&self.b, &self.c].into_iter().find(|x| !x.is_zero()).and_then(parity).map(|k| -k)
    }

    pub fn entries(&self) -> [&Multivector<S>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> VersorMatrix<T> {
        VersorMatrix { a: self.a.map(f), b: self.b.map(f), c: self.c.map(f), d: self.d.map(f) }
    }

    pub fn to_f64(&self) -> VersorMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Four lines, one entry each, in the multivector text format.
    pub fn to_text(&self) -> String {
        format!("{}\n{}\n{}\n{}\n", self.a, self.b, self.c, self.d)
    }

    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if lines.len() != 4 {
            return Err(Error::parse(1, "a versor matrix needs four entries"));
        }
        let mut it = lines.iter().enumerate().map(|(i, l)| {
            Multivector::parse(dim, l).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(i + 1, message),
                other => other,
            })
        });
        let mut next = || it.next().expect("four lines");
        VersorMatrix::new(next()?, next()?, next()?, next()?)
    }
}

impl<S: Scalar> fmt::Display for VersorMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Outcome of [`ahlfors_validate`]; one flag per condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<S> {
    /// Entries use only `e₁ … eₙ`.
    pub entries_in_lower_algebra: bool,
    /// Every non-zero entry has pure parity and `eē` is a non-negative real.
    pub entries_are_vector_products: bool,
    /// `ab*`, `cd*`, `c*a`, `d*b` are vectors (zero allowed).
    pub mixed_products_are_vectors: bool,
    /// `ad* − bc*`, when real and non-zero.
    pub delta: Option<S>,
    /// `M·M̄ = δI`.
    pub m_mbar_is_delta_identity: bool,
    pub kappa: Option<i8>,
    pub issues: Vec<String>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn is_valid(&self) -> bool {
        self.entries_in_lower_algebra
            && self.entries_are_vector_products
            && self.mixed_products_are_vectors
            && self.delta.is_some()
            && self.m_mbar_is_delta_identity
    }
}

/// Coefficients outside `grades` are negligible relative to `x`'s size.
fn only_grades<S: Scalar>(x: &Multivector<S>, grades: u32, tol: f64) -> bool {
    let scale = x.max_abs().max(1.0);
    x.blades().all(|(m, c)| grades >> m.count_ones() & 1 == 1 || c.is_negligible(tol * scale))
}

/// Checks the Ahlfors conditions. Condition (1), "entries are products of
/// vectors", is checked through pure parity plus `eē ≥ 0` real.
pub fn ahlfors_validate<S: Scalar>(m: &VersorMatrix<S>, tol: f64) -> ValidationReport<S> {
    let mut issues = Vec::new();
    let names = ["a", "b", "c", "d"];

    let entries_in_lower_algebra = m.entries().iter().all(|e| e.avoids_last());
    if !entries_in_lower_algebra {
        issues.push("an entry uses the extra generator".into());
    }

    let mut entries_are_vector_products = true;
    for (name, e) in names.iter().zip(m.entries()) {
        if e.is_zero() {
            continue;
        }
        let norm = e * &e.conjugate();
        let real_norm = only_grades(&norm, 0b1, tol) && !norm.scalar_part().is_negative();
        if !e.has_pure_parity() || !real_norm {
            entries_are_vector_products = false;
            issues.push(format!("entry {name} is not a product of vectors"));
        }
    }

    let mixed = [
        ("ab*", &m.a * &m.b.reverse()),
        ("cd*", &m.c * &m.d.reverse()),
        ("c*a", &m.c.reverse() * &m.a),
        ("d*b", &m.d.reverse() * &m.b),
    ];
    let mut mixed_products_are_vectors = true;
    for (name, p) in &mixed {
        if !only_grades(p, 0b10, tol) {
            mixed_products_are_vectors = false;
            issues.push(format!("{name} is not a vector"));
        }
    }

    let p = m.pseudodeterminant();
    let delta = if only_grades(&p, 0b1, tol) && !p.scalar_part().is_negligible(tol) {
        Some(p.scalar_part())
    } else {
        issues.push("pseudodeterminant is not a non-zero real".into());
        None
    };

    let m_mbar_is_delta_identity = match (&delta, m.mul(&m.bar())) {
        (Some(delta), Ok(prod)) => {
            let id = |x: &Multivector<S>, diag: bool| {
                let mut expected = Multivector::zero(x.dim()).expect("dimension already checked");
                if diag {
                    expected.set(0, delta.clone());
                }
                let diff = x - &expected;
                let scale = x.max_abs().max(1.0);
                let ok = diff.blades().all(|(_, c)| c.is_negligible(tol * scale));
                ok
            };
            id(&prod.a, true) && id(&prod.b, false) && id(&prod.c, false) && id(&prod.d, true)
        }
        _ => false,
    };
    if delta.is_some() && !m_mbar_is_delta_identity {
        issues.push("M·M̄ differs from δI".into());
    }

    ValidationReport {
        entries_in_lower_algebra,
        entries_are_vector_products,
        mixed_products_are_vectors,
        delta,
        m_mbar_is_delta_identity,
        kappa: m.kappa(),
        issues,
    }
}

/// `∏ⱼ [[0, 1], [1, bⱼ]]` for vectors `bⱼ` of `Cl(dim)` avoiding the last
/// generator.
pub fn md_cf_matrix<S: Scalar>(dim: usize, b_list: &[Multivector<S>]) -> Result<VersorMatrix<S>> {
    b_list.iter().try_fold(VersorMatrix::identity(dim)?, |acc, b| {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: b.dim() });
        }
        acc.mul(&VersorMatrix::factor(b)?)
    })
}

/// `bd̄/|d|²`, the image of `0`.
pub fn partial_quotient_nd<S: Scalar>(m: &VersorMatrix<S>) -> Result<Multivector<S>> {
    let n = m.d.norm_sq();
    if n.is_zero() {
        return Err(Error::PoleHit);
    }
    Ok((&m.b * &m.d.conjugate()).scale(&(S::one() / n)))
}

/// `ac̄/|c|²`, the image of infinity; `None` when `c = 0`.
pub fn image_of_infinity<S: Scalar>(m: &VersorMatrix<S>) -> Option<Multivector<S>> {
    let n = m.c.norm_sq();
    (!n.is_zero()).then(|| (&m.a * &m.c.conjugate()).scale(&(S::one() / n)))
}

/// `(ax + b)(cx + d)⁻¹` for a vector `x` of `R^{n+1}`.
pub fn mobius_apply_vector<S: Scalar>(m: &VersorMatrix<S>, x: &Multivector<S>, tol: f64) -> Result<Multivector<S>> {
    if !x.is_vector() {
        return Err(Error::NotAVector);
    }
    let w = &(&m.c * x) + &m.d;
    let norm = w.gp(&w.conjugate())?;
    let scale = w.max_abs().max(1.0);
    if norm.scalar_part().is_negligible(tol * scale * scale) {
        return Err(Error::PoleHit);
    }
    let image = &(&(&m.a * x) + &m.b) * &w.versor_inverse()?;
    if !only_grades(&image, 0b10, tol.max(1e-10)) {
        return Err(Error::InvalidVersorMatrix("image is not a vector".into()));
    }
    Ok(image.grade(1))
}

/// Reads coefficient vectors, one per line as whitespace-separated
/// rationals, `#` comments allowed. All lines must have the same length
/// `n`; returns `n` and the rows.
pub fn parse_b_vectors(text: &str) -> Result<(usize, Vec<Vec<Rational>>)> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut n = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|f| parse_rational(f).ok_or_else(|| Error::parse(i + 1, format!("not a rational: {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match n {
            None => n = Some(row.len()),
            Some(n) if n != row.len() => {
                return Err(Error::parse(i + 1, format!("expected {n} coordinates, found {}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    let n = n.ok_or_else(|| Error::parse(1, "no coefficient vectors"))?;
    if n + 1 > super::MAX_DIM {
        return Err(Error::DimensionTooLarge(n + 1));
    }
    Ok((n, rows))
}

/// Embeds coefficient rows of `R^n` as vectors of `Cl(n + 1)`.
pub fn b_vectors_to_multivectors<S: Scalar>(n: usize, rows: &[Vec<Rational>]) -> Result<Vec<Multivector<S>>> {
    rows.iter()
        .map(|r| Multivector::vector(n + 1, &r.iter().map(S::from_rational).collect::<Vec<_>>()))
        .collect()
}
