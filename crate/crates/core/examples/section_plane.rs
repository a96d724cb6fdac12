//! Section view of a `Cl(3)` chain: each link is cut by the vertical plane
//! through its two touch points and the cuts are laid out side by side.

use cfcycles::chain::Arrangement;
use cfcycles::clifford::{build_nd_chain, Multivector};
use cfcycles::render::{render_section_plane, section_view, RenderConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bs = [[1, 1], [2, -1], [3, 1], [2, 2]]
        .iter()
        .map(|b| Multivector::<f64>::vector_i64(3, b))
        .collect::<cfcycles::Result<Vec<_>>>()?;
    let chain = build_nd_chain::<f64>(3, &bs, Arrangement::Tangent, None)?;

    let view = section_view(&chain)?;
    for plane in &view.planes {
        println!("link {}  through {:?}  along {:?}  at {:.4}", plane.link, plane.origin, plane.direction, plane.offset);
    }
    let path = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().join("section.svg").display().to_string());
    std::fs::write(&path, render_section_plane(&chain, &RenderConfig::default())?)?;
    println!("wrote {path} ({} cuts)", view.figure.items.len());
    Ok(())
}
