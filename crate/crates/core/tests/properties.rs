use std::fs;

use eg_core::dsl::parse_script;
use eg_core::field::{Base, Constructible, NaNumber, Poly, RatFunc, Rational};
use eg_core::geometry::{Plane, Pt};
use eg_core::kripke::{build::*, forces, Env, KNode};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let poly = prop::collection::vec(-6i64..=6, 1..4).prop_map(|c| Poly::new(c.into_iter().map(|n| q(n, 1)).collect()));
    (poly.clone(), poly.prop_filter("nonzero denominator", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d))
}

fn tower() -> impl Strategy<Value = Constructible> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 2i64..=7).prop_map(|(a, d, b, r)| {
        let s = Constructible::from_int(r).sqrt_nonneg().unwrap();
        &Constructible::ratio(a, d) + &(&Constructible::from_int(b) * &s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive(x in ratfunc(), y in ratfunc()) {
        if let (Some(vx), Some(vy)) = (x.valuation(), y.valuation()) {
            prop_assert_eq!(x.mul(&y).valuation(), Some(vx + vy));
        }
    }

    #[test]
    fn order_respects_sums(x in ratfunc(), y in ratfunc()) {
        let (x, y) = (NaNumber::from_base(x), NaNumber::from_base(y));
        if x.is_positive() && y.is_positive() {
            prop_assert!((&x + &y).is_positive());
            prop_assert!((&x * &y).is_positive());
        }
    }

    #[test]
    fn tower_inverse(x in tower()) {
        match x.inv() {
            Ok(i) => prop_assert_eq!(&x * &i, Constructible::one()),
            Err(_) => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn tower_distributes(x in tower(), y in tower(), z in tower()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn forcing_is_monotone(x in ratfunc()) {
        let env = Env::from([("x", NaNumber::from_base(x))]);
        let phis = [pos(var("x")), not(pos(var("x"))), not(not(pos(var("x")))), eq(var("x"), int(0))];
        for phi in &phis {
            if let Ok(true) = forces(KNode::M0, phi, &env) {
                prop_assert_eq!(forces(KNode::M1, phi, &env), Ok(true), "{}", phi);
            }
        }
    }

    #[test]
    fn root_predicates_imply_classical(c in prop::collection::vec(-5i64..=5, 6)) {
        let (root, top) = (Plane::<Rational>::root(), Plane::<Rational>::classical());
        let (a, b, p) = (Pt::int(c[0], c[1]), Pt::int(c[2], c[3]), Pt::int(c[4], c[5]));
        prop_assert_eq!(root.between(&a, &p, &b), top.between(&a, &p, &b));
        prop_assert_eq!(root.distinct(&a, &b), top.distinct(&a, &b));
        prop_assert_eq!(root.collinear(&a, &b, &p), top.collinear(&a, &b, &p));
    }
}

#[test]
fn figures_print_and_reparse() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/figures");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "geo") {
            let s = parse_script(&fs::read_to_string(&path).unwrap()).unwrap();
            let again = parse_script(&s.to_string()).unwrap();
            assert_eq!(s, again, "{}", path.display());
            assert_eq!(s.to_string(), again.to_string());
            n += 1;
        }
    }
    assert!(n >= 10);
}
