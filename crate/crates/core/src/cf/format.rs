//! Line-oriented text format for continued fractions.
//!
//! ```text
//! # pi, first terms
//! b0 3
//! 1 7
//! 1 15
//! ```
//!
//! The optional first data line `b0 <rational>` sets the integer part; every
//! other data line is a term `<a> <b>`. Rationals are written `p/q` or as
//! integers, `#` starts a comment.

use super::{CfTerm, ContinuedFraction};
use crate::error::{Error, Result};
use crate::scalar::parse_rational;

pub fn parse_cf(text: &str) -> Result<ContinuedFraction> {
    let mut cf = ContinuedFraction::default();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            parse_rational(s).ok_or_else(|| Error::parse(line_no, format!("not a rational: {s:?}")))
        };
        match fields.as_slice() {
            ["b0", v] if !seen_data => cf.integer_part = Some(num(v)?),
            ["b0", _] => return Err(Error::parse(line_no, "b0 must be the first data line")),
            [a, b] => {
                let term = CfTerm::new(num(a)?, num(b)?)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                cf.terms.push(term);
            }
            _ => return Err(Error::parse(line_no, "expected `<a> <b>` or `b0 <rational>`")),
        }
        seen_data = true;
    }
    Ok(cf)
}

impl ContinuedFraction {
    /// Serialises into the format read by [`parse_cf`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(b0) = &self.integer_part {
            out.push_str(&format!("b0 {b0}\n"));
        }
        for t in &self.terms {
            out.push_str(&format!("{} {}\n", t.a(), t.b()));
        }
        out
    }
}
