//! Per-link verification of a built chain.

use std::fmt;

use super::{Arrangement, ChainLink};
use crate::cycle::{
    axis_angle_cos_sq, center_radius, cycle_image, inner_product, is_tangent, orthogonality_residual,
    tangency_residual, Cycle2, CycleShape,
};
use crate::scalar::{Rational, Scalar};

/// One verified property of one link.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub link: usize,
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest residual among checks with the given name.
    pub fn max_residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().filter(|c| c.name == name).map(|c| c.residual).reduce(f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    /// One line per check: `link <n> <check-name> <residual> <pass|fail>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "fail" };
            writeln!(f, "link {} {} {:e} {}", c.link, c.name, c.residual, verdict)?;
        }
        Ok(())
    }
}

struct Recorder<'a> {
    link: usize,
    tol: f64,
    out: &'a mut Vec<Check>,
}

impl Recorder<'_> {
    fn push(&mut self, name: &'static str, residual: f64, pass: bool) {
        self.out.push(Check { link: self.link, name, residual, pass });
    }

    /// `defect` must vanish; `scale` normalises it for the report.
    fn zero<S: Scalar>(&mut self, name: &'static str, defect: S, scale: f64) {
        let residual = if defect.is_zero() { 0.0 } else { defect.to_f64().abs() / scale.max(f64::MIN_POSITIVE) };
        let pass = if S::EXACT { defect.is_zero() } else { residual <= self.tol };
        self.push(name, residual, pass);
    }

    fn equal<S: Scalar>(&mut self, name: &'static str, actual: &S, expected: &S) {
        let scale = expected.to_f64().abs().max(f64::MIN_POSITIVE);
        self.zero(name, actual.clone() - expected.clone(), scale);
    }
}

fn touches_axis<S: Scalar>(rec: &mut Recorder<'_>, name: &'static str, c: &Cycle2<S>) {
    let defect = c.l.square() - c.k.clone() * c.m.clone();
    let scale = c.l.square().to_f64().abs() + (c.k.clone() * c.m.clone()).to_f64().abs();
    rec.zero(name, defect, scale.max(c.n.square().to_f64().abs()));
}

fn touch_point<S: Scalar>(rec: &mut Recorder<'_>, name: &'static str, c: &Cycle2<S>, expected: &Option<Rational>) {
    match expected {
        None => {
            // touching at infinity: a horizontal line
            let scale = c.n.to_f64().abs();
            rec.zero(name, c.k.clone(), scale);
            rec.zero("prev-horizontal", c.l.clone(), scale);
        }
        Some(p) if c.k.is_zero() => rec.push(name, p.to_f64().abs().max(1.0), false),
        Some(p) => rec.equal(name, &(c.l.clone() / c.k.clone()), &S::from_rational(p)),
    }
}

fn incidence<S: Scalar>(rec: &mut Recorder<'_>, name: &'static str, c: &Cycle2<S>, point: &Option<Rational>) {
    let scale = c.coefficients().iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    match point {
        None => rec.zero(name, c.k.clone(), scale),
        Some(p) => {
            let u = S::from_rational(p);
            let uf = u.to_f64().abs();
            rec.zero(name, c.evaluate(&u, &S::zero()), scale * (1.0 + uf * uf));
        }
    }
}

fn radius_sq<S: Scalar>(c: &Cycle2<S>) -> Option<S> {
    match center_radius(c) {
        Ok(CycleShape::Circle { radius_sq, .. }) => Some(radius_sq),
        _ => None,
    }
}

fn radius<S: Scalar>(rec: &mut Recorder<'_>, name: &'static str, c: &Cycle2<S>, expected_sq: S) {
    match radius_sq(c) {
        Some(r2) => rec.equal(name, &r2, &expected_sq),
        None => rec.push(name, f64::INFINITY, false),
    }
}

/// Checks every property a chain of the given arrangement must have.
///
/// Exact fields are judged by exact equality (`tol` is ignored); floating
/// point residuals are relative and compared against `tol`. Radii are
/// compared in squared form, `|δ|²/(m₀²Qₙ₋₁⁴)` and `|δ|²/(k₀²Qₙ⁴)`.
pub fn verify_chain<S: Scalar>(chain: &[ChainLink<S>], arrangement: Arrangement, tol: f64) -> VerificationReport {
    let mut checks = Vec::new();
    let seeds = match arrangement.seeds::<S>() {
        Ok(s) => s,
        Err(_) => {
            if !chain.is_empty() {
                checks.push(Check { link: 0, name: "seeds", residual: f64::INFINITY, pass: false });
            }
            return VerificationReport { checks };
        }
    };
    for link in chain {
        let mut rec = Recorder { link: link.index, tol, out: &mut checks };
        let delta_sq = link.delta().square();
        let (c, d) = (&link.matrix.c, &link.matrix.d);

        if link.prev_convergent.is_some() {
            touches_axis(&mut rec, "prev-touches-axis", &link.horo_prev);
        }
        touch_point(&mut rec, "prev-touch-point", &link.horo_prev, &link.prev_convergent);
        touches_axis(&mut rec, "curr-touches-axis", &link.horo_curr);
        touch_point(&mut rec, "curr-touch-point", &link.horo_curr, &Some(link.curr_convergent.clone()));

        if !c.is_zero() {
            let expected = delta_sq.clone() / (seeds.m0.square() * c.square().square());
            radius(&mut rec, "prev-radius", &link.horo_prev, expected);
        }
        let expected = delta_sq.clone() / (seeds.k0.square() * d.square().square());
        radius(&mut rec, "curr-radius", &link.horo_curr, expected);

        match arrangement {
            Arrangement::Tangent => {
                let (residual, pass) = match (
                    tangency_residual(&link.horo_prev, &link.horo_curr),
                    is_tangent(&link.horo_prev, &link.horo_curr, tol),
                ) {
                    (Ok(r), Ok(p)) => (r.abs(), p),
                    _ => (f64::INFINITY, false),
                };
                rec.push("tangency", residual, pass);
            }
            Arrangement::Orthogonal | Arrangement::Mixed => {
                let ip = inner_product(&link.horo_prev, &link.horo_curr);
                let residual = orthogonality_residual(&link.horo_prev, &link.horo_curr);
                let pass = if S::EXACT { ip.is_zero() } else { residual <= tol };
                rec.push("orthogonality", residual, pass);
            }
        }

        incidence(&mut rec, "connecting-through-prev", &link.connecting, &link.prev_convergent);
        incidence(&mut rec, "connecting-through-curr", &link.connecting, &Some(link.curr_convergent.clone()));

        if arrangement == Arrangement::Mixed {
            mixed_checks(&mut rec, link, &delta_sq);
        }
    }
    VerificationReport { checks }
}

/// Largest 2×2 minor of the coefficient pair, relative to the squared
/// largest coefficient. Zero exactly when the cycles agree up to scale.
fn projective_defect<S: Scalar>(x: &Cycle2<S>, y: &Cycle2<S>) -> (bool, f64) {
    let (a, b) = (x.coefficients(), y.coefficients());
    let scale = a.iter().chain(b.iter()).map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let mut exact = true;
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in i + 1..4 {
            let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            exact &= minor.is_zero();
            worst = worst.max(minor.to_f64().abs());
        }
    }
    (exact, worst / (scale * scale).max(f64::MIN_POSITIVE))
}

/// Compares every closed-form cycle of the chain with the image of its
/// seed under `M·C·M⁻¹`, up to projective scale.
pub fn verify_lemmas<S: Scalar>(chain: &[ChainLink<S>], arrangement: Arrangement, tol: f64) -> VerificationReport {
    let mut checks = Vec::new();
    let Ok(seeds) = arrangement.seeds::<S>() else {
        checks.push(Check { link: 0, name: "seeds", residual: f64::INFINITY, pass: false });
        return VerificationReport { checks };
    };
    let (zero, one) = (S::zero(), S::one());
    let seeds_and_images = [
        ("first-column-similarity", Cycle2 { k: zero.clone(), l: zero.clone(), n: one.clone(), m: seeds.m0.clone() }),
        ("second-column-similarity", Cycle2 { k: seeds.k0.clone(), l: zero.clone(), n: one.clone(), m: zero.clone() }),
        ("connecting-similarity", Cycle2 { k: zero.clone(), l: one, n: seeds.n0.clone(), m: zero }),
    ];
    for link in chain {
        for ((name, seed), closed) in seeds_and_images.iter().zip([&link.horo_prev, &link.horo_curr, &link.connecting]) {
            let (residual, pass) = match cycle_image(&link.matrix, seed) {
                Ok(image) => {
                    let (exact, residual) = projective_defect(&image, closed);
                    (residual, if S::EXACT { exact } else { residual <= tol })
                }
                Err(_) => (f64::INFINITY, false),
            };
            checks.push(Check { link: link.index, name, residual, pass });
        }
    }
    VerificationReport { checks }
}

fn mixed_checks<S: Scalar>(rec: &mut Recorder<'_>, link: &ChainLink<S>, delta_sq: &S) {
    let half = S::one() / S::from_i64(2);
    match axis_angle_cos_sq(&link.connecting) {
        Ok(cos_sq) => {
            let angle = cos_sq.to_f64().clamp(0.0, 1.0).sqrt().acos();
            let residual = (angle - std::f64::consts::FRAC_PI_4).abs();
            let pass = if S::EXACT { cos_sq == half } else { residual <= rec.tol.max(1e-9) };
            rec.push("axis-angle-45", residual, pass);
        }
        Err(_) => rec.push("axis-angle-45", f64::INFINITY, false),
    }

    let (c, d) = (&link.matrix.c, &link.matrix.d);
    if !c.is_zero() {
        // (√2/2)/|Qₙ₋₁Qₙ| scaled by |δ|, squared
        let expected = delta_sq.clone() * half / (c.clone() * d.clone()).square();
        radius(rec, "connecting-radius", &link.connecting, expected);
        if let (Some(r0), Some(r1), Some(rc)) =
            (radius_sq(&link.horo_prev), radius_sq(&link.horo_curr), radius_sq(&link.connecting))
        {
            rec.equal("connecting-geometric-mean", &rc.square(), &(r0 * r1));
        }
    }

    match &link.mirror_connecting {
        Some(mirror) => {
            let scale = mirror.n.to_f64().abs().max(link.connecting.n.to_f64().abs());
            let defect = mirror.n.clone() + link.connecting.n.clone();
            let same = mirror.k == link.connecting.k && mirror.l == link.connecting.l && mirror.m == link.connecting.m;
            if same {
                rec.zero("mirror-is-reflection", defect, scale);
            } else {
                rec.push("mirror-is-reflection", f64::INFINITY, false);
            }
            incidence(rec, "mirror-through-prev", mirror, &link.prev_convergent);
            incidence(rec, "mirror-through-curr", mirror, &Some(link.curr_convergent.clone()));
        }
        None => rec.push("mirror-is-reflection", f64::INFINITY, false),
    }
}
