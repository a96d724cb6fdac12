//! Horocycle chains of a continued fraction.
//!
//! Link `n` is built from `M = prefix · ∏ⱼ₌₁ⁿ [[0, aⱼ], [1, bⱼ]]`, whose
//! columns are `(Pₙ₋₁, Qₙ₋₁)` and `(Pₙ, Qₙ)` with the integer part folded
//! in. The link holds the image of the horizontal line `(0, 0, 1, m₀)`
//! (a horocycle at `Pₙ₋₁/Qₙ₋₁`), the image of `(k₀, 0, 1, 0)` (a horocycle
//! at `Pₙ/Qₙ`) and the image of the line `(0, 1, n₀, 0)` through both
//! touch points.
//!
//! Link 0 has `Q₋₁ = 0`: its first horocycle is the line `v = m₀/2`
//! itself (touching the axis at infinity) and its connecting cycle is the
//! line through `b₀` and infinity.
//!
//! Matrices are not rescaled to unit determinant. With `δ = det M` the
//! horocycle radii are `|δ|/(m₀Qₙ₋₁²)` and `|δ|/(k₀Qₙ²)`, which is the
//! familiar `1/(2Q²)` for simple continued fractions. When `δ < 0` the
//! images lie in the lower half-plane; [`ChainLink::canonical`] reflects
//! them back.

mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

pub use verify::{verify_chain, verify_lemmas, Check, VerificationReport};

use crate::cf::{cf_matrix, convergent_states, ContinuedFraction, ConvergentState};
use crate::cycle::Cycle2;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{Rational, Scalar};

/// The three seedings of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrangement {
    /// `(m₀, k₀, n₀) = (2, 2, 0)`: consecutive horocycles touch.
    Tangent,
    /// `(√2, √2, 0)`: consecutive horocycles are orthogonal.
    Orthogonal,
    /// `(√2, √2, 1)`: orthogonal horocycles, connecting cycles at 45°.
    Mixed,
}

/// Seed values `m₀`, `k₀`, `n₀` of an arrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct Seeds<S> {
    pub m0: S,
    pub k0: S,
    pub n0: S,
}

impl Arrangement {
    pub const ALL: [Arrangement; 3] = [Arrangement::Tangent, Arrangement::Orthogonal, Arrangement::Mixed];

    /// Seeds in the field `S`; `√2` is [`Error::NotRepresentable`] over ℚ.
    pub fn seeds<S: Scalar>(self) -> Result<Seeds<S>> {
        let two = S::from_i64(2);
        let root2 = || two.sqrt().ok_or(Error::NotRepresentable("sqrt(2)"));
        Ok(match self {
            Arrangement::Tangent => Seeds { m0: two.clone(), k0: two.clone(), n0: S::zero() },
            Arrangement::Orthogonal => Seeds { m0: root2()?, k0: root2()?, n0: S::zero() },
            Arrangement::Mixed => Seeds { m0: root2()?, k0: root2()?, n0: S::one() },
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Arrangement::Tangent => "tangent",
            Arrangement::Orthogonal => "orthogonal",
            Arrangement::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tangent" | "1" => Ok(Arrangement::Tangent),
            "orthogonal" | "2" => Ok(Arrangement::Orthogonal),
            "mixed" | "3" => Ok(Arrangement::Mixed),
            _ => Err(Error::parse(1, format!("unknown arrangement {s:?}"))),
        }
    }
}

/// One link of a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainLink<S> {
    pub index: usize,
    pub matrix: Mat2<S>,
    /// `b₀ + Pₙ₋₁/Qₙ₋₁` from the recurrence; `None` at infinity (link 0).
    pub prev_convergent: Option<Rational>,
    /// `b₀ + Pₙ/Qₙ` from the recurrence.
    pub curr_convergent: Rational,
    pub horo_prev: Cycle2<S>,
    pub horo_curr: Cycle2<S>,
    pub connecting: Cycle2<S>,
    /// Reflection of the connecting cycle, mixed chains only.
    pub mirror_connecting: Option<Cycle2<S>>,
}

impl<S: Scalar> ChainLink<S> {
    pub fn delta(&self) -> S {
        self.matrix.det()
    }

    /// The link reflected into the upper half-plane when `δ < 0`.
    pub fn canonical(&self) -> Self {
        if !self.delta().is_negative() {
            return self.clone();
        }
        ChainLink {
            horo_prev: self.horo_prev.reflect(),
            horo_curr: self.horo_curr.reflect(),
            connecting: self.connecting.reflect(),
            mirror_connecting: self.mirror_connecting.as_ref().map(Cycle2::reflect),
            ..self.clone()
        }
    }

    pub fn to_f64(&self) -> ChainLink<f64> {
        ChainLink {
            index: self.index,
            matrix: self.matrix.to_f64(),
            prev_convergent: self.prev_convergent.clone(),
            curr_convergent: self.curr_convergent.clone(),
            horo_prev: self.horo_prev.to_f64(),
            horo_curr: self.horo_curr.to_f64(),
            connecting: self.connecting.to_f64(),
            mirror_connecting: self.mirror_connecting.as_ref().map(Cycle2::to_f64),
        }
    }
}

fn first_column_family<S: Scalar>(mat: &Mat2<S>, m: &S) -> Cycle2<S> {
    let Mat2 { a, c, .. } = mat;
    Cycle2 {
        k: c.square() * m.clone(),
        l: a.clone() * c.clone() * m.clone(),
        n: mat.det(),
        m: a.square() * m.clone(),
    }
}

fn second_column_family<S: Scalar>(mat: &Mat2<S>, k: &S) -> Cycle2<S> {
    let Mat2 { b, d, .. } = mat;
    Cycle2 {
        k: d.square() * k.clone(),
        l: b.clone() * d.clone() * k.clone(),
        n: mat.det(),
        m: b.square() * k.clone(),
    }
}

/// Image of the line `(0, 0, 1, m)` under `M`, as the closed form
/// `(c²m, acm, δ, a²m)`: a horocycle at `a/c` with radius `|δ|/(mc²)`.
pub fn horocycle_first_column<S: Scalar>(mat: &Mat2<S>, m: &S) -> Result<Cycle2<S>> {
    if mat.c.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    Ok(first_column_family(mat, m))
}

/// Image of the horocycle `(k, 0, 1, 0)` under `M`, as the closed form
/// `(d²k, bdk, δ, b²k)`: a horocycle at `b/d` with radius `|δ|/(kd²)`.
pub fn horocycle_second_column<S: Scalar>(mat: &Mat2<S>, k: &S) -> Result<Cycle2<S>> {
    if mat.d.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    Ok(second_column_family(mat, k))
}

/// Image of the line `(0, 1, n, 0)` under `M`, as the closed form
/// `(2cd, ad + bc, δn, 2ab)`; it passes through `a/c` and `b/d`.
pub fn connecting_cycle<S: Scalar>(mat: &Mat2<S>, n: &S) -> Cycle2<S> {
    let Mat2 { a, b, c, d } = mat;
    let two = S::from_i64(2);
    Cycle2 {
        k: two.clone() * c.clone() * d.clone(),
        l: a.clone() * d.clone() + b.clone() * c.clone(),
        n: mat.det() * n.clone(),
        m: two * a.clone() * b.clone(),
    }
}

/// Links `0..=count` of the chain of `cf` for the given arrangement.
pub fn build_chain<S: Scalar>(
    cf: &ContinuedFraction,
    arrangement: Arrangement,
    count: usize,
) -> Result<Vec<ChainLink<S>>> {
    if count > cf.len() {
        return Err(Error::NotEnoughTerms { requested: count, available: cf.len() });
    }
    let seeds = arrangement.seeds::<S>()?;
    let b0 = cf.integer_part_or_zero();
    let states = std::iter::once(ConvergentState::initial()).chain(convergent_states(cf));
    let mut running = cf_matrix(cf, 0, true)?;
    let mut links = Vec::with_capacity(count + 1);
    for (n, state) in states.take(count + 1).enumerate() {
        if n > 0 {
            running = &running * &cf.terms[n - 1].matrix();
        }
        if state.q_curr.is_zero() {
            return Err(Error::DivergentConvergent { index: n });
        }
        if n > 0 && state.q_prev.is_zero() {
            return Err(Error::DivergentConvergent { index: n - 1 });
        }
        let matrix: Mat2<S> = running.convert();
        let connecting = connecting_cycle(&matrix, &seeds.n0);
        links.push(ChainLink {
            index: n,
            prev_convergent: (!state.q_prev.is_zero()).then(|| &b0 + &state.p_prev / &state.q_prev),
            curr_convergent: &b0 + &state.p_curr / &state.q_curr,
            horo_prev: first_column_family(&matrix, &seeds.m0),
            horo_curr: second_column_family(&matrix, &seeds.k0),
            mirror_connecting: (arrangement == Arrangement::Mixed).then(|| connecting.reflect()),
            connecting,
            matrix,
        });
    }
    Ok(links)
}

/// Touch point and signed radius `(p′, n′)` of a horocycle `(k, l, n, m)`
/// with `l² = km`, read as `(1, p′, n′, p′²)` after scaling.
fn horocycle_params<S: Scalar>(c: &Cycle2<S>) -> Result<(S, S)> {
    if c.k.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    if !(c.l.square() - c.k.clone() * c.m.clone()).is_negligible(1e-12 * c.l.square().to_f64().abs().max(1.0)) {
        return Err(Error::NotAHorocycle);
    }
    let n = c.n.clone() / c.k.clone();
    if n.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    Ok((c.l.clone() / c.k.clone(), n))
}

fn next_horocycle<S: Scalar>(prev: &Cycle2<S>, p: &S, factor: i64) -> Result<Cycle2<S>> {
    let (p_prev, n_prev) = horocycle_params(prev)?;
    let gap = p.clone() - p_prev;
    if gap.is_zero() {
        return Err(Error::DegenerateHorocycle);
    }
    let n = gap.square() / (S::from_i64(factor) * n_prev);
    Ok(Cycle2::horocycle(p.clone(), n))
}

/// The horocycle at `p` orthogonal to `prev`: `n = (p − p′)²/(2n′)`.
pub fn next_n_orthogonal<S: Scalar>(prev: &Cycle2<S>, p: &S) -> Result<Cycle2<S>> {
    next_horocycle(prev, p, 2)
}

/// The horocycle at `p` externally tangent to `prev`: `n = (p − p′)²/(4n′)`.
pub fn next_n_tangent<S: Scalar>(prev: &Cycle2<S>, p: &S) -> Result<Cycle2<S>> {
    next_horocycle(prev, p, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::coefficient_source;
    use crate::cf::Constant;
    use crate::cycle::{
        center_radius, cycle_image, inner_product, is_orthogonal, is_tangent, CycleShape,
    };
    use crate::scalar::QSqrt2;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn cyc(k: i64, l: i64, n: i64, m: i64) -> Cycle2<Q> {
        Cycle2::from_i64(k, l, n, m).unwrap()
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat2<Q> {
        Mat2::from_i64(a, b, c, d)
    }

    #[test]
    fn lemma_closed_form_examples() {
        let m = m2(1, 15, 7, 106);
        assert_eq!(horocycle_first_column(&m, &q(2, 1)).unwrap(), cyc(98, 14, 1, 2));
        assert_eq!(horocycle_first_column(&m2(2, 1, 1, 1), &q(1, 1)).unwrap(), cyc(1, 2, 1, 4));
        assert_eq!(horocycle_first_column(&Mat2::identity(), &q(1, 1)), Err(Error::DegenerateHorocycle));
        assert_eq!(horocycle_second_column(&m, &q(2, 1)).unwrap(), cyc(22472, 3180, 1, 450));
        assert_eq!(horocycle_second_column(&Mat2::identity(), &q(2, 1)).unwrap(), cyc(2, 0, 1, 0));
        // δ = −1 here, so the image is the mirror of (98, 14, 1, 2)
        assert_eq!(horocycle_second_column(&m2(0, 1, 1, 7), &q(2, 1)).unwrap(), cyc(98, 14, -1, 2));
        assert_eq!(horocycle_second_column(&m2(1, 1, 1, 0), &q(2, 1)), Err(Error::DegenerateHorocycle));
        assert_eq!(connecting_cycle(&m, &q(0, 1)), cyc(1484, 211, 0, 30));
        assert_eq!(connecting_cycle(&Mat2::identity(), &q(0, 1)), cyc(0, 1, 0, 0));
        assert_eq!(connecting_cycle(&m, &q(1, 1)), cyc(1484, 211, 1, 30));
        let c = connecting_cycle(&m, &q(0, 1));
        assert!(c.evaluate(&q(1, 7), &Q::zero()).is_zero());
        assert!(c.evaluate(&q(15, 106), &Q::zero()).is_zero());
        let s = center_radius(&horocycle_first_column(&m, &q(2, 1)).unwrap()).unwrap();
        assert_eq!(s.radius(), Some(q(1, 98)));
    }

    #[test]
    fn tangent_chain_for_pi_prefix() {
        let cf = ContinuedFraction::simple(None, &[7, 15]);
        let chain = build_chain::<Q>(&cf, Arrangement::Tangent, 2).unwrap();
        assert_eq!(chain.len(), 3);
        let link = &chain[2];
        let r = |c: &Cycle2<Q>| center_radius(c).unwrap().radius().unwrap();
        assert_eq!(r(&link.horo_prev), q(1, 98));
        assert_eq!(r(&link.horo_curr), q(1, 2 * 106 * 106));
        assert!(is_tangent(&link.horo_prev, &link.horo_curr, 0.0).unwrap());
        assert_eq!(link.prev_convergent, Some(q(1, 7)));
        assert_eq!(link.curr_convergent, q(15, 106));
    }

    #[test]
    fn orthogonal_chain_for_pi_prefix() {
        let cf = ContinuedFraction::simple(None, &[7, 15]);
        let chain = build_chain::<QSqrt2>(&cf, Arrangement::Orthogonal, 2).unwrap();
        let link = &chain[2];
        let r = |c: &Cycle2<QSqrt2>| center_radius(c).unwrap().radius().unwrap().to_f64();
        let root2 = std::f64::consts::SQRT_2;
        assert!((r(&link.horo_prev) / (root2 / 98.0) - 1.0).abs() < 1e-12);
        assert!((r(&link.horo_curr) / (root2 / 22472.0) - 1.0).abs() < 1e-12);
        assert!(is_orthogonal(&link.horo_prev, &link.horo_curr, 0.0));
        // plain floats lose digits in l² + n² − km once Q grows
        let float = build_chain::<f64>(&cf, Arrangement::Orthogonal, 2).unwrap();
        assert!(is_orthogonal(&float[2].horo_prev, &float[2].horo_curr, 1e-6));
        assert_eq!(build_chain::<Q>(&cf, Arrangement::Orthogonal, 2), Err(Error::NotRepresentable("sqrt(2)")));
    }

    #[test]
    fn first_link_is_the_seed_line() {
        for arr in Arrangement::ALL {
            let cf = ContinuedFraction::simple(Some(3), &[5]);
            let chain = build_chain::<QSqrt2>(&cf, arr, 1).unwrap();
            let seeds = arr.seeds::<QSqrt2>().unwrap();
            let first = &chain[0];
            assert_eq!(first.prev_convergent, None);
            assert_eq!(first.horo_prev, Cycle2::new(QSqrt2::zero(), QSqrt2::zero(), QSqrt2::one(), seeds.m0).unwrap());
            // connecting cycle is a line through b₀ (and infinity)
            assert!(first.connecting.is_line());
            assert!(first.connecting.evaluate(&QSqrt2::from_i64(3), &QSqrt2::zero()).is_zero());
            assert_eq!(chain[1].prev_convergent, Some(q(3, 1)));
        }
    }

    #[test]
    fn mixed_chain_emits_mirror() {
        let cf = ContinuedFraction::simple(None, &[7, 15]);
        let chain = build_chain::<QSqrt2>(&cf, Arrangement::Mixed, 2).unwrap();
        for link in &chain {
            assert_eq!(link.mirror_connecting.as_ref(), Some(&link.connecting.reflect()));
        }
        let plain = build_chain::<QSqrt2>(&cf, Arrangement::Orthogonal, 2).unwrap();
        assert!(plain.iter().all(|l| l.mirror_connecting.is_none()));
    }

    #[test]
    fn canonical_links_live_in_the_upper_half_plane() {
        let cf = coefficient_source(Constant::Pi, 6).unwrap();
        for link in build_chain::<Q>(&cf, Arrangement::Tangent, 6).unwrap() {
            let c = link.canonical();
            if let Ok(CycleShape::Circle { center, .. }) = center_radius(&c.horo_curr) {
                assert!(center.1.is_positive());
            }
            assert!(c.horo_curr.n.is_positive() || c.horo_curr.k.is_negative());
        }
    }

    #[test]
    fn divergent_convergent_is_reported() {
        // 1/(1 + (−1)/1): Q₂ = 1·1 + (−1)·1 = 0
        let cf = ContinuedFraction::new(None, vec![CfTerm::from_i64(1, 1).unwrap(), CfTerm::from_i64(-1, 1).unwrap()]);
        assert_eq!(build_chain::<Q>(&cf, Arrangement::Tangent, 2), Err(Error::DivergentConvergent { index: 2 }));
        assert!(build_chain::<Q>(&cf, Arrangement::Tangent, 3).is_err());
    }

    use crate::cf::CfTerm;

    #[test]
    fn next_n_examples() {
        let r = QSqrt2::sqrt2() / QSqrt2::from_i64(2);
        let h = Cycle2::horocycle(QSqrt2::zero(), r.clone());
        assert_eq!(next_n_orthogonal(&h, &QSqrt2::one()).unwrap(), Cycle2::horocycle(QSqrt2::one(), r));
        let h = Cycle2::horocycle(q(0, 1), q(1, 2));
        assert_eq!(next_n_orthogonal(&h, &q(1, 1)).unwrap(), Cycle2::horocycle(q(1, 1), q(1, 1)));
        assert_eq!(next_n_tangent(&h, &q(1, 1)).unwrap(), Cycle2::horocycle(q(1, 1), q(1, 2)));
        assert_eq!(next_n_tangent(&h, &q(1, 2)).unwrap(), Cycle2::horocycle(q(1, 2), q(1, 8)));
        assert_eq!(next_n_tangent(&h, &q(0, 1)), Err(Error::DegenerateHorocycle));
        assert_eq!(next_n_orthogonal(&Cycle2::horocycle(q(2, 1), q(0, 1)), &q(1, 1)), Err(Error::DegenerateHorocycle));
        assert_eq!(next_n_orthogonal(&cyc(1, 0, 0, -1), &q(1, 1)), Err(Error::NotAHorocycle));
        // scaled representatives are accepted
        let scaled = Cycle2::horocycle(q(0, 1), q(1, 2)).scale(&q(-6, 1));
        assert_eq!(next_n_tangent(&scaled, &q(1, 1)).unwrap(), Cycle2::horocycle(q(1, 1), q(1, 2)));
    }

    #[test]
    fn rebuild_matches_orthogonal_chain() {
        let cf = coefficient_source(Constant::E, 12).unwrap();
        let chain = build_chain::<QSqrt2>(&cf, Arrangement::Orthogonal, 12).unwrap();
        let mut horo = chain[0].canonical().horo_curr;
        for link in &chain[1..] {
            let p = QSqrt2::rational(link.curr_convergent.clone());
            horo = next_n_orthogonal(&horo, &p).unwrap();
            let built = center_radius(&link.canonical().horo_curr).unwrap();
            let rebuilt = center_radius(&horo).unwrap();
            let (a, b) = (built.radius_f64().unwrap(), rebuilt.radius_f64().unwrap());
            assert!((a / b - 1.0).abs() < 1e-12, "link {}: {a} vs {b}", link.index);
            assert_eq!(built, rebuilt);
        }
    }

    #[test]
    fn rebuild_matches_tangent_chain() {
        let cf = coefficient_source(Constant::Pi, 8).unwrap();
        let chain = build_chain::<Q>(&cf, Arrangement::Tangent, 8).unwrap();
        let mut horo = chain[0].canonical().horo_curr;
        for link in &chain[1..] {
            horo = next_n_tangent(&horo, &link.curr_convergent).unwrap();
            assert_eq!(center_radius(&horo).unwrap(), center_radius(&link.canonical().horo_curr).unwrap());
        }
    }

    fn small() -> impl Strategy<Value = i64> {
        -12i64..=12
    }

    /// Integer matrices of determinant ±1, built as products of term matrices.
    fn normalized_matrix() -> impl Strategy<Value = Mat2<Q>> {
        proptest::collection::vec(small(), 1..6).prop_map(|bs| {
            bs.iter().fold(Mat2::identity(), |acc, &b| &acc * &m2(0, 1, 1, b))
        })
    }

    /// Scales `c` so it can be compared with `reference` entry by entry.
    fn same_projective_point(c: &Cycle2<Q>, reference: &Cycle2<Q>) -> bool {
        c.projectively_equal(reference, 0.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn closed_forms_equal_similarity_images(mat in normalized_matrix(), s in 1i64..5) {
            let s = q(s, 1);
            if !mat.c.is_zero() {
                let img = cycle_image(&mat, &Cycle2::new(Q::zero(), Q::zero(), Q::one(), s.clone()).unwrap()).unwrap();
                prop_assert!(same_projective_point(&horocycle_first_column(&mat, &s).unwrap(), &img));
            }
            if !mat.d.is_zero() {
                let img = cycle_image(&mat, &Cycle2::new(s.clone(), Q::zero(), Q::one(), Q::zero()).unwrap()).unwrap();
                prop_assert!(same_projective_point(&horocycle_second_column(&mat, &s).unwrap(), &img));
            }
            let img = cycle_image(&mat, &Cycle2::new(Q::zero(), Q::one(), s.clone(), Q::zero()).unwrap()).unwrap();
            prop_assert!(same_projective_point(&connecting_cycle(&mat, &s), &img));
        }

        /// Only lines `(0, 0, 1, m)` have images that ignore the second
        /// column; any other cycle is moved by some change of it.
        #[test]
        fn first_column_family_is_the_only_one(
            (k, l, n, m) in (small(), small(), small(), small()),
            mat in normalized_matrix(),
        ) {
            prop_assume!((k, l, n, m) != (0, 0, 0, 0));
            let c = cyc(k, l, n, m);
            // shearing the second column by the first keeps δ fixed
            let witness = [q(1, 1), q(-2, 1), q(1, 2)].iter().any(|x| {
                let other = &mat * &Mat2::new(Q::one(), x.clone(), Q::zero(), Q::one());
                let a = cycle_image(&mat, &c).unwrap();
                let b = cycle_image(&other, &c).unwrap();
                !a.projectively_equal(&b, 0.0)
            });
            // includes the point-cycle at infinity, (0, 0, 0, m)
            let in_family = k == 0 && l == 0;
            prop_assert_eq!(witness, !in_family);
        }

        /// Symmetric statement: only `(k, 0, 1, 0)` ignores the first column.
        #[test]
        fn second_column_family_is_the_only_one(
            (k, l, n, m) in (small(), small(), small(), small()),
            mat in normalized_matrix(),
        ) {
            prop_assume!((k, l, n, m) != (0, 0, 0, 0));
            let c = cyc(k, l, n, m);
            let witness = [q(1, 1), q(-2, 1), q(1, 2)].iter().any(|x| {
                let other = &mat * &Mat2::new(Q::one(), Q::zero(), x.clone(), Q::one());
                let a = cycle_image(&mat, &c).unwrap();
                let b = cycle_image(&other, &c).unwrap();
                !a.projectively_equal(&b, 0.0)
            });
            let in_family = l == 0 && m == 0;
            prop_assert_eq!(witness, !in_family);
        }

        #[test]
        fn chain_pairs_keep_their_relation(bs in proptest::collection::vec(1i64..30, 1..10)) {
            let cf = ContinuedFraction::simple(Some(1), &bs);
            let tangent = build_chain::<Q>(&cf, Arrangement::Tangent, bs.len()).unwrap();
            let orth = build_chain::<QSqrt2>(&cf, Arrangement::Orthogonal, bs.len()).unwrap();
            for (t, o) in tangent.iter().zip(&orth) {
                prop_assert!(is_tangent(&t.horo_prev, &t.horo_curr, 0.0).unwrap());
                prop_assert!(inner_product(&o.horo_prev, &o.horo_curr).is_zero());
            }
        }
    }
}
