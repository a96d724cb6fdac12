//! Writes SVG figures of the e chain in all three arrangements, plus a
//! zoomed view using a config file.
//!
//! `cargo run --example render_figure -- out/` (defaults to the temp dir).

use std::path::PathBuf;

use cfcycles::cf::{coefficient_source, Constant};
use cfcycles::chain::{build_chain, Arrangement};
use cfcycles::render::{render_chain_svg, RenderConfig};
use cfcycles::scalar::{QSqrt2, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    let cf = coefficient_source(Constant::E, 6)?;
    let config = RenderConfig::default();

    let svgs = [
        ("e_tangent.svg", render_chain_svg(&build_chain::<Rational>(&cf, Arrangement::Tangent, 6)?, &config)),
        ("e_orthogonal.svg", render_chain_svg(&build_chain::<QSqrt2>(&cf, Arrangement::Orthogonal, 6)?, &config)),
        ("e_mixed.svg", render_chain_svg(&build_chain::<QSqrt2>(&cf, Arrangement::Mixed, 6)?, &config)),
    ];
    for (name, svg) in svgs {
        let path = dir.join(name);
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }

    let zoom = RenderConfig::parse(
        "width = 600\nheight = 400\nviewport = 2.6 2.8 -0.01 0.12\n# thinner circles\nhorocycle_stroke = 0.5\n",
    )?;
    let path = dir.join("e_zoom.svg");
    std::fs::write(&path, render_chain_svg(&build_chain::<Rational>(&cf, Arrangement::Tangent, 6)?, &zoom))?;
    println!("wrote {}", path.display());
    Ok(())
}
