//! Cycles as quadruples `(k, l, n, m)`: images under Möbius maps, the
//! cycle product, tangency and the reflection in the real axis.

use cfcycles::cycle::{center_radius, cycle_image, inner_product, is_orthogonal, is_tangent, Cycle2};
use cfcycles::mat2::Mat2;
use cfcycles::scalar::Rational;

fn main() -> cfcycles::Result<()> {
    let unit = Cycle2::<Rational>::from_i64(1, 0, 0, -1)?;
    let axis = Cycle2::<Rational>::real_axis();
    let shape = center_radius(&unit.to_f64())?;
    println!("unit circle   {unit}   center {:?} radius {:?}", shape.center_f64(), shape.radius_f64());
    println!("real axis     {axis}");
    println!("<unit, axis> = {}, orthogonal: {}", inner_product(&unit, &axis), is_orthogonal(&unit, &axis, 0.0));

    // z ↦ −1/(z + 2) sends the line v = 1 to a horocycle at 0
    let m = Mat2::<Rational>::from_i64(0, -1, 1, 2);
    let line = Cycle2::<Rational>::from_i64(0, 0, 1, 2)?;
    let image = cycle_image(&m, &line)?;
    println!("image of v = 1 under {m}: {image}");
    let shape = center_radius(&image.to_f64())?;
    println!("  center {:?} radius {:?}", shape.center_f64(), shape.radius_f64());
    // tangency is oriented: the image touches the axis from the side its
    // orientation points away from, so test against the flipped axis
    println!("  tangent to the axis: {}", is_tangent(&image, &axis.scale(&Rational::from_integer((-1).into())), 0.0)?);
    println!("  reflected: {}", image.reflect());

    let near = Cycle2::<f64>::from_i64(1, 1, 0, 0)?;
    let far = Cycle2::<f64>::from_i64(1, -1, 0, 0)?;
    println!("circles at ±1 through 0 touch: {}", is_tangent(&near, &far, 1e-12)?);
    Ok(())
}
