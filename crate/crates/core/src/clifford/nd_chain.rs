//! Horocycle chains of multidimensional continued fractions and the
//! nesting/shrinking tests on their connecting cycles.

use super::cycle_nd::{adapted_generator, first_column_family, lemma5_horocycle, lemma6_connecting, CycleND};
use super::multivector::Multivector;
use super::versor::{image_of_infinity, md_cf_matrix, partial_quotient_nd, VersorMatrix};
use crate::chain::Arrangement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How the hyperplane `(0, x + r·e_{n+1}, 0)` behind each connecting cycle
/// is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum ConnectingGenerator<S> {
    /// `x = c̄d`, `r = n₀|c||d|`: the centre lies in the vertical plane
    /// through both touch points, and the planar chains are reproduced.
    /// Falls back to `x = e₁`, `r = n₀` when `c̄d` vanishes.
    Adapted { n0: S },
    /// The same hyperplane for every link.
    Fixed { x: Multivector<S>, r: S },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NdLink<S> {
    pub index: usize,
    pub matrix: VersorMatrix<S>,
    pub delta: S,
    /// `ac̄/|c|²`, `None` at infinity.
    pub touch_prev: Option<Multivector<S>>,
    /// `bd̄/|d|²`.
    pub touch_curr: Multivector<S>,
    pub horo_prev: CycleND<S>,
    pub horo_curr: CycleND<S>,
    pub connecting: CycleND<S>,
}

impl<S: Scalar> NdLink<S> {
    /// The link reflected by `R` when `δ < 0`, so horocycles sit above
    /// `x_{n+1} = 0`.
    pub fn canonical(&self) -> Self {
        if !self.delta.is_negative() {
            return self.clone();
        }
        NdLink {
            horo_prev: self.horo_prev.reflect(),
            horo_curr: self.horo_curr.reflect(),
            connecting: self.connecting.reflect(),
            ..self.clone()
        }
    }
}

fn generator_for<S: Scalar>(mat: &VersorMatrix<S>, generator: &ConnectingGenerator<S>) -> Result<(Multivector<S>, S)> {
    match generator {
        ConnectingGenerator::Fixed { x, r } => Ok((x.clone(), r.clone())),
        ConnectingGenerator::Adapted { n0 } => match adapted_generator(mat) {
            Some(x) => {
                let r = if n0.is_zero() {
                    S::zero()
                } else {
                    let size = (mat.c.norm_sq() * mat.d.norm_sq())
                        .sqrt()
                        .ok_or(Error::NotRepresentable("|c||d|"))?;
                    n0.clone() * size
                };
                Ok((x, r))
            }
            None => Ok((Multivector::basis(mat.dim(), 1)?, n0.clone())),
        },
    }
}

/// Links `0..=b_list.len()` of the chain of `x ↦ (x + b₁)⁻¹ ∘ …`, seeded
/// like the planar arrangement. `generator` defaults to the adapted one
/// with the arrangement's `n₀`.
pub fn build_nd_chain<S: Scalar>(
    dim: usize,
    b_list: &[Multivector<S>],
    arrangement: Arrangement,
    generator: Option<ConnectingGenerator<S>>,
) -> Result<Vec<NdLink<S>>> {
    if dim < 2 {
        return Err(Error::DimensionMismatch { left: dim, right: 2 });
    }
    let seeds = arrangement.seeds::<S>()?;
    let generator = generator.unwrap_or(ConnectingGenerator::Adapted { n0: seeds.n0.clone() });
    let mut links = Vec::with_capacity(b_list.len() + 1);
    let mut mat = VersorMatrix::identity(dim)?;
    for index in 0..=b_list.len() {
        if index > 0 {
            mat = mat.mul(&md_cf_matrix(dim, &b_list[index - 1..index])?)?;
        }
        let delta = mat.delta()?;
        let touch_curr = partial_quotient_nd(&mat).map_err(|_| Error::DivergentConvergent { index })?;
        let touch_prev = image_of_infinity(&mat);
        if index > 0 && touch_prev.is_none() {
            return Err(Error::DivergentConvergent { index: index - 1 });
        }
        let (x, r) = generator_for(&mat, &generator)?;
        links.push(NdLink {
            index,
            horo_prev: first_column_family(&mat, &seeds.m0)?,
            horo_curr: lemma5_horocycle(&mat, &seeds.k0)?,
            connecting: lemma6_connecting(&mat, &x, &r)?,
            matrix: mat.clone(),
            delta,
            touch_prev,
            touch_curr,
        });
    }
    Ok(links)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceMode {
    /// Radii of the connecting spheres.
    RadiusToZero,
    /// Distance of their centres from `x_{n+1} = 0`.
    HeightToZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub mode: ConvergenceMode,
    pub window: usize,
    /// One entry per consecutive pair: sphere `j` inside sphere `j − 1`.
    pub enclosed: Vec<bool>,
    pub all_enclosed: bool,
    /// Radii or heights, in input order.
    pub sizes: Vec<f64>,
    /// Strict decrease over the trailing `window` entries.
    pub decreasing: bool,
}

impl ConvergenceReport {
    pub fn converges(&self) -> bool {
        self.all_enclosed && self.decreasing
    }
}

/// Checks nesting of consecutive connecting spheres and strict decrease of
/// their size over the last `window` entries (`0` means all of them).
///
/// Spheres are compared up to the reflection `R`: every centre is moved to
/// the upper half-space first. Enclosure is
/// `|cⱼ − cⱼ₋₁| + rⱼ ≤ rⱼ₋₁ + tol` in floating point; the decrease test is
/// exact in exact fields (squared radii, absolute heights).
pub fn convergence_check<S: Scalar>(
    connecting: &[CycleND<S>],
    mode: ConvergenceMode,
    window: usize,
    tol: f64,
) -> Result<ConvergenceReport> {
    let mut spheres = Vec::with_capacity(connecting.len());
    for (index, c) in connecting.iter().enumerate() {
        if c.k.is_zero() || !c.norm().is_positive() {
            return Err(Error::NotASphere { index });
        }
        let inv = S::one() / c.k.clone();
        let center = c.l.scale(&inv);
        let height = center.component(center.dim()).abs();
        let center = if center.component(center.dim()).is_negative() { center.reflect_last() } else { center };
        let radius_sq = c.norm() * inv.square();
        spheres.push((center, radius_sq, height));
    }

    let enclosed: Vec<bool> = spheres
        .windows(2)
        .map(|w| {
            let (c0, r0, _) = &w[0];
            let (c1, r1, _) = &w[1];
            let gap = (c1 - c0).norm_sq().to_f64().sqrt();
            gap + r1.to_f64().sqrt() <= r0.to_f64().sqrt() + tol
        })
        .collect();

    let exact_sizes: Vec<S> = spheres
        .iter()
        .map(|(_, r2, h)| match mode {
            ConvergenceMode::RadiusToZero => r2.clone(),
            ConvergenceMode::HeightToZero => h.clone(),
        })
        .collect();
    let sizes = spheres
        .iter()
        .map(|(_, r2, h)| match mode {
            ConvergenceMode::RadiusToZero => r2.to_f64().sqrt(),
            ConvergenceMode::HeightToZero => h.to_f64(),
        })
        .collect();
    let start = if window == 0 { 0 } else { exact_sizes.len().saturating_sub(window) };
    let decreasing = exact_sizes[start..].windows(2).all(|w| w[1] < w[0]);

    Ok(ConvergenceReport {
        mode,
        window,
        all_enclosed: enclosed.iter().all(|&e| e),
        enclosed,
        sizes,
        decreasing,
    })
}
