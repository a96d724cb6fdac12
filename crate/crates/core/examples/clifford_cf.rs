//! Continued fractions with vector partial denominators in `Cl(n+1)`:
//! horocycle spheres, connecting spheres and the convergence checks.

use cfcycles::chain::Arrangement;
use cfcycles::clifford::{build_nd_chain, convergence_check, ConnectingGenerator, ConvergenceMode, Multivector};
use cfcycles::scalar::Rational;

fn main() -> cfcycles::Result<()> {
    // b_j = j·e1 + e2 in R², so the algebra is Cl(3)
    let bs = (1..=4)
        .map(|j| Multivector::<Rational>::vector_i64(3, &[j, 1]))
        .collect::<cfcycles::Result<Vec<_>>>()?;
    let chain = build_nd_chain(3, &bs, Arrangement::Tangent, None)?;
    for link in &chain {
        let link = link.canonical();
        println!("link {}  delta {}  touch {}", link.index, link.delta, link.touch_curr);
        println!("  horocycle  {}", link.horo_curr);
        println!("  connecting {}", link.connecting);
    }

    let spheres: Vec<_> = chain.iter().map(|l| l.horo_curr.clone()).collect();
    let report = convergence_check(&spheres, ConvergenceMode::RadiusToZero, 0, 1e-12)?;
    println!("radii {:?}", report.sizes);
    println!("decreasing {}  enclosed {:?}  converges {}", report.decreasing, report.enclosed, report.converges());

    // a fixed connecting generator instead of the adapted one
    let fixed = ConnectingGenerator::Fixed { x: Multivector::basis(3, 1)?, r: Rational::from_integer(1.into()) };
    let chain = build_nd_chain(3, &bs, Arrangement::Tangent, Some(fixed))?;
    println!("fixed generator, last connecting sphere {}", chain.last().unwrap().canonical().connecting);
    Ok(())
}
