//! Exact arithmetic in a quadratic tower and in the ordered field of
//! rational functions in an infinitesimal eps.

use eg_core::field::{parse_element, Constructible, NaNumber};

fn main() {
    let two = Constructible::from_int(2);
    let r2 = two.sqrt_nonneg().unwrap();
    let r3 = Constructible::from_int(3).sqrt_nonneg().unwrap();
    let x = &r2 + &r3;
    println!("x = {x} (depth {})", x.depth());
    println!("x^2 = {}", &x * &x);
    println!("1/x = {}", x.inv().unwrap());
    println!("x ~ {:.12}", x.approx().unwrap());

    let e: NaNumber = parse_element("eps").unwrap();
    let y: NaNumber = parse_element("1/eps - 1000000").unwrap();
    println!("eps > 0: {}, 1/eps - 10^6 > 0: {}", e.is_positive(), y.is_positive());
    let z: NaNumber = parse_element("1 + eps").unwrap();
    let s = z.sqrt_nonneg().unwrap();
    println!("sqrt(1 + eps) = {s}, leading term {:?}", s.leading_term().map(|t| t.valuation.to_string()));
    println!("1/0 -> {:?}", Constructible::zero().inv());
}
