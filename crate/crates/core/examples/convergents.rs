//! Convergents of e, π and a rational number, with the neighbour gap
//! `|P_n/Q_n − P_{n−1}/Q_{n−1}|` shrinking along the way.

use cfcycles::cf::{coefficient_source, convergent_states, expand_real, neighbor_gap, Constant};
use cfcycles::scalar::parse_rational;

fn main() -> cfcycles::Result<()> {
    for (name, cf) in [
        ("e", coefficient_source(Constant::E, 8)?),
        ("pi", coefficient_source(Constant::Pi, 6)?),
        ("-85/33", expand_real(&parse_rational("-85/33").unwrap())),
    ] {
        println!("{name} = {cf}");
        let b0 = cf.integer_part_or_zero();
        for (n, state) in convergent_states(&cf).enumerate().skip(1) {
            let Some(value) = state.value() else { continue };
            let gap = neighbor_gap(&state).map(|g| g.to_string()).unwrap_or_else(|| "-".into());
            println!("  {n:2}  {:>14}  gap {gap}", (&b0 + value).to_string());
        }
    }
    Ok(())
}
