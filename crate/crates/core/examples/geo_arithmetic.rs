//! Field operations performed by construction on the x-axis.

use eg_core::arith::{AxisPoint, CoordinateFrame};
use eg_core::construct::Constructor;
use eg_core::field::Constructible;

fn main() {
    let f = CoordinateFrame::default();
    let mut k = Constructor::classical();
    let a = AxisPoint::<eg_core::field::Rational>::new(Constructible::ratio(3, 2));
    let b = AxisPoint::int(-4);
    println!("a + b = {}", k.geo_add(&f, &a, &b).unwrap().value());
    println!("a * b = {}", k.geo_mul(&f, &a, &b).unwrap().value());
    println!("1 / b = {}", k.geo_inv(&f, &b).unwrap().value());
    println!("sqrt a = {}", k.geo_sqrt(&f, &a, false).unwrap().value());
    match k.geo_inv(&f, &AxisPoint::int(0)) {
        Ok(v) => println!("1 / 0 = {}", v.value()),
        Err(e) => println!("1 / 0 refused: {e}"),
    }
}
