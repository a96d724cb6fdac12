//! Vertical section planes through consecutive touch points of an ND chain.
//!
//! Link `j` is cut by the plane `V_j` through `t_{j−1}` spanned by
//! `û_j = (t_j − t_{j−1})/|t_j − t_{j−1}|` and `e_{n+1}`. Consecutive planes
//! share the touch point between them, so the cuts are unfolded onto one
//! sheet: a point `t_{j−1} + σû_j + h·e_{n+1}` gets coordinates
//! `(S_{j−1} + σ, h)` with `S₀ = ⟨t₀, û₁⟩` and `S_j = S_{j−1} + ⟨t_j − t_{j−1}, û_j⟩`.
//! The sign of `û_j` is fixed by making its first nonzero coordinate
//! positive, so in `Cl(1)` the first coordinate is just `u`.

use super::{render_figure_svg, Figure, RenderConfig, Role};
use crate::clifford::{CycleND, NdLink, SphereShape};
use crate::cycle::Cycle2;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The plane used for one link.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPlane {
    pub link: usize,
    /// A touch point on the plane, coordinates `1..=n`.
    pub origin: Vec<f64>,
    /// Unit direction `û`, coordinates `1..=n`.
    pub direction: Vec<f64>,
    /// Unfolded coordinate of `origin`.
    pub offset: f64,
}

impl SectionPlane {
    /// Cut of a sphere or hyperplane as a planar cycle, `None` when they
    /// miss each other.
    fn cut(&self, cycle: &CycleND<f64>) -> Option<Cycle2<f64>> {
        let n = self.origin.len();
        match cycle.shape().ok()? {
            SphereShape::Sphere { center, radius_sq } => {
                let w: Vec<f64> = (0..n).map(|i| center.component(i + 1) - self.origin[i]).collect();
                let sigma = dot(&w, &self.direction);
                let perp: Vec<f64> = w.iter().zip(&self.direction).map(|(x, u)| x - sigma * u).collect();
                let dist_sq = dot(&perp, &perp);
                let r_sq = radius_sq - dist_sq;
                if r_sq < -1e-12 * radius_sq.max(1.0) {
                    return None;
                }
                let (s, h) = (self.offset + sigma, center.component(n + 1));
                Cycle2::new(1.0, s, h, s * s + h * h - r_sq.max(0.0)).ok()
            }
            SphereShape::Hyperplane { normal, offset } => {
                let l: Vec<f64> = (0..n).map(|i| normal.component(i + 1)).collect();
                let (along, up) = (dot(&l, &self.direction), normal.component(n + 1));
                let scale = dot(&l, &l).sqrt().max(up.abs());
                if along.abs() <= 1e-12 * scale && up.abs() <= 1e-12 * scale {
                    return None;
                }
                // ⟨l, t⟩ + (s − S)·⟨l, û⟩ + h·l_{n+1} = offset
                let rhs = offset - dot(&l, &self.origin) + self.offset * along;
                Cycle2::new(0.0, along, up, 2.0 * rhs).ok()
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionPlaneView {
    pub planes: Vec<SectionPlane>,
    /// Same roles and numbering as [`Figure::from_chain`] for planar chains.
    pub figure: Figure,
}

fn coords<S: Scalar>(v: &crate::clifford::Multivector<S>, n: usize) -> Vec<f64> {
    (1..=n).map(|i| v.component(i).to_f64()).collect()
}

fn unit_direction(from: &[f64], to: &[f64]) -> Result<Vec<f64>> {
    let mut d: Vec<f64> = to.iter().zip(from).map(|(b, a)| b - a).collect();
    let len = dot(&d, &d).sqrt();
    if len == 0.0 || !len.is_finite() {
        return Err(Error::DegenerateView);
    }
    let sign = match d.iter().find(|x| **x != 0.0) {
        Some(x) if *x < 0.0 => -1.0,
        _ => 1.0,
    };
    d.iter_mut().for_each(|x| *x *= sign / len);
    Ok(d)
}

/// Cuts every link of the chain by its own section plane and unfolds the
/// planes onto one sheet. Link 0 reuses link 1's direction.
pub fn section_view<S: Scalar>(chain: &[NdLink<S>]) -> Result<SectionPlaneView> {
    if chain.len() < 2 {
        return Err(Error::DegenerateView);
    }
    let n = chain[0].horo_curr.dim() - 1;
    let mut planes: Vec<SectionPlane> = Vec::with_capacity(chain.len());
    for (j, link) in chain.iter().enumerate().skip(1) {
        let prev = link.touch_prev.as_ref().ok_or(Error::DegenerateView)?;
        let (from, to) = (coords(prev, n), coords(&link.touch_curr, n));
        let direction = unit_direction(&from, &to)?;
        let offset = match planes.last() {
            None => dot(&from, &direction),
            Some(p) => {
                let step: Vec<f64> = from.iter().zip(&p.origin).map(|(b, a)| b - a).collect();
                p.offset + dot(&step, &p.direction)
            }
        };
        planes.push(SectionPlane { link: j, origin: from, direction, offset });
    }
    let first = SectionPlane { link: 0, ..planes[0].clone() };
    planes.insert(0, first);

    let mut items = Vec::new();
    let mut horocycles = Vec::new();
    for (link, plane) in chain.iter().zip(&planes) {
        let link = link.canonical();
        let to_f64 = |c: &CycleND<S>| c.to_f64();
        if link.index == 0 {
            if let Some(c) = plane.cut(&to_f64(&link.horo_prev)) {
                horocycles.push((Role::Horocycle(0), c));
            }
        }
        if let Some(c) = plane.cut(&to_f64(&link.horo_curr)) {
            horocycles.push((Role::Horocycle(link.index + 1), c));
        }
        if let Some(c) = plane.cut(&to_f64(&link.connecting)) {
            items.push((Role::Connecting, c));
        }
    }
    items.extend(horocycles);
    Ok(SectionPlaneView { planes, figure: Figure { items } })
}

/// SVG of [`section_view`]: horizontal axis = unfolded position along the
/// touch points, vertical axis = `x_{n+1}`.
pub fn render_section_plane<S: Scalar>(chain: &[NdLink<S>], config: &RenderConfig) -> Result<String> {
    Ok(render_figure_svg(&section_view(chain)?.figure, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::ContinuedFraction;
    use crate::chain::{build_chain, Arrangement};
    use crate::clifford::{build_nd_chain, Multivector};
    use crate::cycle::{center_radius, tangency_residual, CycleShape};
    use crate::scalar::Rational;

    fn cl1(bs: &[i64]) -> Vec<Multivector<Rational>> {
        bs.iter().map(|&b| Multivector::vector_i64(2, &[b]).unwrap()).collect()
    }

    fn params(c: &Cycle2<f64>) -> (f64, f64, f64) {
        match center_radius(c).unwrap() {
            CycleShape::Circle { center, radius_sq } => (center.0, center.1, radius_sq.sqrt()),
            CycleShape::Line { normal, offset } => {
                let len = (normal.0 * normal.0 + normal.1 * normal.1).sqrt();
                let sign = if normal.0 < 0.0 || (normal.0 == 0.0 && normal.1 < 0.0) { -1.0 } else { 1.0 };
                (sign * normal.0 / len, sign * normal.1 / len, sign * offset / len)
            }
        }
    }

    #[test]
    fn cl1_section_matches_planar_figure() {
        let bs = [1, 2, 3, 4, 5];
        let nd = build_nd_chain(2, &cl1(&bs), Arrangement::Tangent, None).unwrap();
        let view = section_view(&nd).unwrap();
        let cf = ContinuedFraction::with_numerator(-1, &bs).unwrap();
        let planar = Figure::from_chain(&build_chain::<Rational>(&cf, Arrangement::Tangent, bs.len()).unwrap());
        assert_eq!(view.figure.items.len(), planar.items.len());
        for ((r1, c1), (r2, c2)) in view.figure.items.iter().zip(&planar.items) {
            assert_eq!(r1, r2);
            let (a, b) = (params(c1), params(c2));
            for (x, y) in [(a.0, b.0), (a.1, b.1), (a.2, b.2)] {
                assert!((x - y).abs() < 1e-9, "{r1:?}: {a:?} vs {b:?}");
            }
        }
        let cfg = RenderConfig::default();
        assert_eq!(render_section_plane(&nd, &cfg).unwrap(), render_figure_svg(&planar, &cfg));
    }

    #[test]
    fn cl2_cuts_are_tangent_in_plane() {
        let bs: Vec<_> = (1..=5).map(|j| Multivector::vector_i64(3, &[j, 1]).unwrap().map(<f64 as Scalar>::from_rational)).collect();
        let nd = build_nd_chain::<f64>(3, &bs, Arrangement::Tangent, None).unwrap();
        let view = section_view(&nd).unwrap();
        let horos: Vec<_> =
            view.figure.items.iter().filter(|(r, _)| matches!(r, Role::Horocycle(_))).map(|(_, c)| c).collect();
        assert_eq!(horos.len(), 7);
        for pair in horos[1..].windows(2) {
            // external tangency in the plane; the coefficient form loses digits to m = s² + h² − r²
            let (a, b) = (params(pair[0]), params(pair[1]));
            let gap = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            assert!((gap / (a.2 + b.2) - 1.0).abs() < 1e-9, "{a:?} {b:?}");
            assert!(tangency_residual(pair[0], pair[1]).unwrap().abs() < 1e-6);
        }
        // every link's cut is a great circle: radii match the spheres, up to
        // the digits lost re-reading a tiny circle far from the origin
        // through `m = s² + h² − r²`
        for (link, plane) in nd.iter().zip(&view.planes) {
            let link = link.canonical();
            let cut = plane.cut(&link.horo_curr).unwrap();
            let SphereShape::Sphere { radius_sq, .. } = link.horo_curr.shape().unwrap() else { panic!() };
            let r = center_radius(&cut).unwrap().radius_f64().unwrap();
            assert!((r * r / radius_sq - 1.0).abs() < 1e-6, "link {}: {} vs {radius_sq}", link.index, r * r);
        }
    }

    #[test]
    fn single_link_chain() {
        let nd = build_nd_chain(2, &cl1(&[2]), Arrangement::Tangent, None).unwrap();
        let view = section_view(&nd).unwrap();
        let roles: Vec<_> = view.figure.items.iter().map(|(r, _)| *r).collect();
        assert_eq!(
            roles,
            [Role::Connecting, Role::Connecting, Role::Horocycle(0), Role::Horocycle(1), Role::Horocycle(2)]
        );
    }

    #[test]
    fn coincident_touch_points() {
        let empty: Vec<NdLink<Rational>> = build_nd_chain(2, &[], Arrangement::Tangent, None).unwrap();
        assert_eq!(section_view(&empty), Err(Error::DegenerateView));
        let a = unit_direction(&[1.0, 2.0], &[1.0, 2.0]);
        assert_eq!(a, Err(Error::DegenerateView));
        assert_eq!(unit_direction(&[1.0, 0.0], &[-1.0, 0.0]).unwrap(), vec![1.0, 0.0]);
    }
}
