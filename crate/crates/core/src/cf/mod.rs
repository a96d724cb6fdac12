//! Exact continued-fraction arithmetic.
//!
//! A fraction `b₀ + a₁/(b₁ + a₂/(b₂ + …))` is stored as an optional integer
//! part `b₀` and the list of terms `(aⱼ, bⱼ)`. The terms compose as the
//! matrix product `∏ [[0, aⱼ], [1, bⱼ]]`, whose columns are consecutive
//! convergents `(Pₙ₋₁, Qₙ₋₁)` and `(Pₙ, Qₙ)`. The integer part is kept out of
//! that product and applied as the prefix `[[1, b₀], [0, 1]]` when asked for.

mod format;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat2::Mat2Q;
use crate::scalar::{Rational, Scalar};

pub use format::parse_cf;

/// One term `aⱼ/(bⱼ + …)`; the partial numerator is never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfTerm {
    a: Rational,
    b: Rational,
}

impl CfTerm {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateTerm);
        }
        Ok(CfTerm { a, b })
    }

    /// Term of a simple fraction, `a = 1`.
    pub fn simple(b: Rational) -> Self {
        CfTerm { a: Rational::one(), b }
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        CfTerm::new(Rational::from_i64(a), Rational::from_i64(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `[[0, a], [1, b]]`.
    pub fn matrix(&self) -> Mat2Q {
        Mat2Q::new(Rational::zero(), self.a.clone(), Rational::one(), self.b.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub integer_part: Option<Rational>,
    pub terms: Vec<CfTerm>,
}

impl ContinuedFraction {
    pub fn new(integer_part: Option<Rational>, terms: Vec<CfTerm>) -> Self {
        ContinuedFraction { integer_part, terms }
    }

    /// Simple fraction `[b₀; b₁, b₂, …]` from integers.
    pub fn simple(integer_part: Option<i64>, partial_denominators: &[i64]) -> Self {
        ContinuedFraction {
            integer_part: integer_part.map(Rational::from_i64),
            terms: partial_denominators
                .iter()
                .map(|&b| CfTerm::simple(Rational::from_i64(b)))
                .collect(),
        }
    }

    /// `K(a|bⱼ)` with a constant partial numerator.
    pub fn with_numerator(a: i64, partial_denominators: &[i64]) -> Result<Self> {
        let terms = partial_denominators
            .iter()
            .map(|&b| CfTerm::from_i64(a, b))
            .collect::<Result<_>>()?;
        Ok(ContinuedFraction { integer_part: None, terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn integer_part_or_zero(&self) -> Rational {
        self.integer_part.clone().unwrap_or_else(Rational::zero)
    }

    /// `[[1, b₀], [0, 1]]`, the identity when there is no integer part.
    pub fn prefix_matrix(&self) -> Mat2Q {
        Mat2Q::new(Rational::one(), self.integer_part_or_zero(), Rational::zero(), Rational::one())
    }

    pub fn truncated(&self, n: usize) -> Self {
        ContinuedFraction {
            integer_part: self.integer_part.clone(),
            terms: self.terms.iter().take(n).cloned().collect(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.terms.iter().all(|t| t.a.is_one())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n > self.terms.len() {
            return Err(Error::NotEnoughTerms { requested: n, available: self.terms.len() });
        }
        Ok(())
    }
}

impl fmt::Display for ContinuedFraction {
    /// Bracket notation: `[3; 7, 15]`, or `[; (−1|2), (−1|3)]` when some
    /// partial numerator differs from one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if let Some(b0) = &self.integer_part {
            write!(f, "{b0}")?;
        }
        write!(f, ";")?;
        let simple = self.is_simple();
        for (i, t) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            if simple {
                write!(f, "{sep}{}", t.b)?;
            } else {
                write!(f, "{sep}({}|{})", t.a, t.b)?;
            }
        }
        write!(f, "]")
    }
}

/// Running pair of consecutive convergents `(Pₙ₋₁, Qₙ₋₁)`, `(Pₙ, Qₙ)`.
///
/// The initial state is `index = 0` with `(P₀, Q₀) = (0, 1)` and the
/// virtual `(P₋₁, Q₋₁) = (1, 0)`, i.e. the columns of the identity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentState {
    pub p_prev: Rational,
    pub p_curr: Rational,
    pub q_prev: Rational,
    pub q_curr: Rational,
    pub index: usize,
}

impl Default for ConvergentState {
    fn default() -> Self {
        ConvergentState {
            p_prev: Rational::one(),
            p_curr: Rational::zero(),
            q_prev: Rational::zero(),
            q_curr: Rational::one(),
            index: 0,
        }
    }
}

impl ConvergentState {
    pub fn initial() -> Self {
        Self::default()
    }

    /// `Pₙ₋₁Qₙ − PₙQₙ₋₁`, which equals `∏ⱼ (−aⱼ)`.
    pub fn determinant(&self) -> Rational {
        &self.p_prev * &self.q_curr - &self.p_curr * &self.q_prev
    }

    /// `Pₙ/Qₙ`, or `None` at the point at infinity.
    pub fn value(&self) -> Option<Rational> {
        (!self.q_curr.is_zero()).then(|| &self.p_curr / &self.q_curr)
    }
}

/// `Pₙ = bₙPₙ₋₁ + aₙPₙ₋₂`, `Qₙ = bₙQₙ₋₁ + aₙQₙ₋₂`.
pub fn convergent_step(state: &ConvergentState, term: &CfTerm) -> Result<ConvergentState> {
    if term.a.is_zero() {
        return Err(Error::DegenerateTerm);
    }
    Ok(ConvergentState {
        p_prev: state.p_curr.clone(),
        q_prev: state.q_curr.clone(),
        p_curr: &term.b * &state.p_curr + &term.a * &state.p_prev,
        q_curr: &term.b * &state.q_curr + &term.a * &state.q_prev,
        index: state.index + 1,
    })
}

/// Iterator over the states after 1, 2, … terms.
pub fn convergent_states(cf: &ContinuedFraction) -> impl Iterator<Item = ConvergentState> + '_ {
    cf.terms.iter().scan(ConvergentState::initial(), |state, term| {
        *state = convergent_step(state, term).expect("terms never have a zero numerator");
        Some(state.clone())
    })
}

/// Values `b₀ + Pₙ/Qₙ` for `n = 1..=count`, one entry per index. Entries
/// whose `Qₙ` vanishes carry [`Error::DivergentConvergent`] so callers can
/// skip them.
pub fn convergent_values(cf: &ContinuedFraction, count: usize) -> Result<Vec<Result<Rational>>> {
    cf.check_len(count)?;
    let b0 = cf.integer_part_or_zero();
    Ok(convergent_states(cf)
        .take(count)
        .map(|s| {
            s.value()
                .map(|v| v + &b0)
                .ok_or(Error::DivergentConvergent { index: s.index })
        })
        .collect())
}

/// Convergents `b₀ + Pₙ/Qₙ`, `n = 1..=count`, stopping at the first
/// vanishing denominator.
pub fn convergents(cf: &ContinuedFraction, count: usize) -> Result<Vec<Rational>> {
    convergent_values(cf, count)?.into_iter().collect()
}

/// `∏ⱼ₌₁ⁿ [[0, aⱼ], [1, bⱼ]] = [[Pₙ₋₁, Pₙ], [Qₙ₋₁, Qₙ]]`. The integer part
/// is folded in as a left prefix only when `with_integer_part` is set.
pub fn cf_matrix(cf: &ContinuedFraction, n: usize, with_integer_part: bool) -> Result<Mat2Q> {
    cf.check_len(n)?;
    let start = if with_integer_part { cf.prefix_matrix() } else { Mat2Q::identity() };
    Ok(cf.terms[..n].iter().fold(start, |acc, t| &acc * &t.matrix()))
}

/// Evaluates `b₀ + a₁/(b₁ + a₂/(… + aₙ/bₙ))` from the innermost level out.
/// Independent of the recurrence, which makes it a test oracle.
pub fn evaluate_oracle(cf: &ContinuedFraction, n: usize) -> Result<Rational> {
    cf.check_len(n)?;
    let b0 = cf.integer_part_or_zero();
    let terms = &cf.terms[..n];
    let Some(last) = terms.last() else {
        return Ok(b0);
    };
    let mut tail = last.b.clone();
    for (j, t) in terms.iter().enumerate().rev().skip(1) {
        if tail.is_zero() {
            return Err(Error::DivisionByZero);
        }
        tail = &t.b + &terms[j + 1].a / tail;
    }
    if tail.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(b0 + &terms[0].a / tail)
}

/// Simple continued fraction of a rational by the Euclidean algorithm:
/// `b₀ = ⌊x⌋`, then repeatedly invert the fractional part.
pub fn expand_real(x: &Rational) -> ContinuedFraction {
    let floor = |q: &Rational| Rational::from_integer(q.numer().div_floor(q.denom()));
    let b0 = floor(x);
    let mut rest = x - &b0;
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let inv = rest.recip();
        let b = floor(&inv);
        rest = inv - &b;
        terms.push(CfTerm::simple(b));
    }
    ContinuedFraction { integer_part: Some(b0), terms }
}

/// Constants with built-in coefficient sources.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    E,
    Pi,
}

/// Partial denominators of π after the integer part 3.
pub const PI_TERMS: [i64; 12] = [7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14];

/// Simple continued fraction of `e` or `π` with `count` terms after the
/// integer part. `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, …]` follows the pattern
/// `(1, 2k, 1)`; `π` comes from a fixed table and cannot be extended.
pub fn coefficient_source(constant: Constant, count: usize) -> Result<ContinuedFraction> {
    match constant {
        Constant::E => {
            let bs: Vec<i64> = (1..=count as i64)
                .map(|j| if j % 3 == 2 { 2 * (j + 1) / 3 } else { 1 })
                .collect();
            Ok(ContinuedFraction::simple(Some(2), &bs))
        }
        Constant::Pi => {
            if count > PI_TERMS.len() {
                return Err(Error::TableExhausted { requested: count, available: PI_TERMS.len() });
            }
            Ok(ContinuedFraction::simple(Some(3), &PI_TERMS[..count]))
        }
    }
}

/// `|Pₙ/Qₙ − Pₙ₋₁/Qₙ₋₁|` predicted by the determinant identity,
/// `|∏aⱼ| / |QₙQₙ₋₁|`.
pub fn neighbor_gap(state: &ConvergentState) -> Option<Rational> {
    if state.q_curr.is_zero() || state.q_prev.is_zero() {
        return None;
    }
    Some(state.determinant().abs() / (&state.q_curr * &state.q_prev).abs())
}
