//! Builds the three chains of a continued fraction and verifies them.
//!
//! `cargo run --example horocycle_chains -- 6` uses six terms of π.

use cfcycles::cf::{coefficient_source, Constant};
use cfcycles::chain::{build_chain, verify_chain, verify_lemmas, Arrangement};
use cfcycles::cycle::center_radius;
use cfcycles::scalar::{QSqrt2, Rational};

fn main() -> cfcycles::Result<()> {
    let terms: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let cf = coefficient_source(Constant::Pi, terms)?;

    let tangent = build_chain::<Rational>(&cf, Arrangement::Tangent, terms)?;
    for link in &tangent {
        let link = link.canonical();
        let radius = center_radius(&link.horo_curr)?.radius_f64().unwrap_or(f64::INFINITY);
        println!("link {}  touches {:>14}  radius {radius:.3e}", link.index, link.curr_convergent.to_string());
    }
    let report = verify_chain(&tangent, Arrangement::Tangent, 0.0);
    println!("tangent: {} checks, all pass: {}", report.checks.len(), report.all_passed());

    for arrangement in [Arrangement::Orthogonal, Arrangement::Mixed] {
        let chain = build_chain::<QSqrt2>(&cf, arrangement, terms)?;
        let mut report = verify_chain(&chain, arrangement, 0.0);
        report.checks.extend(verify_lemmas(&chain, arrangement, 0.0).checks);
        println!("{arrangement}: {} checks, all pass: {}", report.checks.len(), report.all_passed());
    }

    // the same chain in f64: l² + n² − km cancels once Q grows, so radius
    // and orthogonality checks start failing around the fourth term of π
    let float = build_chain::<f64>(&cf, Arrangement::Mixed, terms)?;
    let report = verify_chain(&float, Arrangement::Mixed, 1e-9);
    let mut names: Vec<&str> = Vec::new();
    for check in &report.checks {
        if !names.contains(&check.name) {
            names.push(check.name);
        }
    }
    println!("f64 mixed, worst residual per check:");
    for name in names {
        println!("  {name:24} {:.2e}", report.max_residual(name).unwrap_or(0.0));
    }
    Ok(())
}
