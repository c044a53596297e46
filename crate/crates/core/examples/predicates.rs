//! Betweenness, congruence and angle predicates at the classical node and
//! at the constructive root.

use eg_core::field::NaNumber;
use eg_core::geometry::{NaPt, Plane, Pt};

fn main() {
    let pl = Plane::classical();
    let (a, b, c) = (Pt::int(0, 0), Pt::int(2, 0), Pt::int(1, 0));
    println!("B(a,c,b) = {}", pl.between(&a, &c, &b));
    println!("ab = ac: {}", pl.congruent(&a, &b, &a, &c));
    println!("R(b, a, (0,1)) = {}", pl.right_angle(&b, &a, &Pt::int(0, 1)));
    println!("a # c witness: {:?}", pl.distinct_witness(&a, &c).is_some());

    let eps = NaNumber::eps().unwrap();
    let o = NaPt::int(0, 0);
    let p = NaPt::new(eps, NaNumber::zero());
    for (name, pl) in [("root", Plane::root()), ("classical", Plane::classical())] {
        println!("{name}: (0,0) # (eps,0) = {}", pl.distinct(&o, &p));
    }
}
