//! Constructed instances of the named theorems, each conclusion re-checked.

use super::gen::Gen;
use super::TheoremId;
use crate::arith::{AxisPoint, CoordinateFrame};
use crate::construct::{CResult, Constructor, PerpMode};
use crate::field::{Base, FieldElement};
use crate::geometry::{line_intersection, AngleWitness, Node, Plane, Point};

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// A proper angle `(a, b, c)` with vertex `b`; `kind` picks right angles,
/// right triangles at `a` or `c`, or a general angle.
fn angle<B: Base>(g: &mut Gen<B>, kind: i64) -> [Point<B>; 3] {
    let b = g.point();
    let a = g.distinct_from(&b);
    let u = a.sub(&b);
    let c = match kind {
        0 => b.add(&u.perp().scale(&g.pos())),
        1 => a.add(&u.perp().scale(&g.pos())),
        2 => {
            let w = u.perp().scale(&g.pos()).sub(&u.scale(&g.pos()));
            let t = u.dot(&w) / w.norm2();
            // the foot of a on line bc lands at c
            b.add(&w.scale(&t))
        }
        _ => g.off_line(&a, &b),
    };
    [a, b, c]
}

/// Runs theorem `id` on the instance drawn from `g` at `node`.
/// `Ok(Err(_))` is a guard refusal, `Err(_)` a failed conclusion.
pub fn run<B: Base>(id: TheoremId, g: &mut Gen<B>, node: Node) -> Result<CResult<()>, String> {
    let pl = Plane::<B>::at(node);
    let mut k = Constructor::<B>::new(pl);
    macro_rules! c {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return Ok(Err(e)),
            }
        };
    }
    match id {
        TheoremId::VerticalAngles => {
            let [a, b, c] = angle(g, 3);
            let (s1, s2) = (g.point(), g.point());
            let s3 = g.distinct_from(&s1);
            let s4 = g.distinct_from(&s2);
            let a2 = c!(k.ext_strict(&a, &b, &s1, &s3, None, None));
            let c2 = c!(k.ext_strict(&c, &b, &s2, &s4, None, None));
            ensure(pl.angle_cong([&a, &b, &c, &a2, &b, &c2]), "abc = a'bc'")?;
        }
        TheoremId::OuterTransitivity => {
            let a = g.point();
            let b = g.distinct_from(&a);
            let (s, t) = (g.point(), g.nonzero_vec());
            let c = c!(k.ext_strict(&a, &b, &s, &s.add(&t), None, None));
            let t2 = g.nonzero_vec();
            let d = c!(k.ext_strict(&b, &c, &s, &s.add(&t2), None, None));
            ensure(pl.between(&a, &b, &c) && pl.between(&b, &c, &d), "hypotheses")?;
            ensure(pl.between(&a, &b, &d) && pl.between(&a, &c, &d), "B(a,b,d) ∧ B(a,c,d)")?;
        }
        TheoremId::DistinctCongruence => {
            let a = g.point();
            let b = g.distinct_from(&a);
            let m = g.motion();
            let (c, d) = (m.apply(&a), m.apply(&b));
            let e = c!(k.ext_strict(&c, &d, &a, &b, Some((&a, &b)), Some((&a, &b))));
            let w = crate::geometry::DistinctWitness { e, clause: crate::geometry::DistinctClause::OuterRight };
            ensure(pl.verify_distinct(&c, &d, &w), "c#d witnessed")?;
        }
        TheoremId::Crossbar => {
            let [a, b, c] = angle(g, 3);
            let e = a.lerp(&c, &g.unit());
            let one = FieldElement::one();
            let u = b.lerp(&a, &(&one + &g.pos()));
            let v = b.lerp(&c, &(&one + &g.pos()));
            let w = c!(k.crossbar_point(&a, &b, &c, &e, &u, &v));
            ensure(pl.between(&u, &w, &v) && pl.between(&b, &e, &w), "B(u,w,v) ∧ B(b,e,w)")?;
        }
        TheoremId::ExteriorAngle => {
            let [ba, bb, bc] = angle(g, 3);
            let s = g.point();
            let t = g.distinct_from(&s);
            let d = c!(k.ext_strict(&bb, &bc, &s, &t, None, None));
            return exterior_angle(&mut k, &ba, &bb, &bc, &d);
        }
        TheoremId::LegLtHypotenuse => {
            let [a, b, c] = angle(g, 0);
            let x = c!(k.lay_off(&a, &c, &a, &b));
            let y = c!(k.lay_off(&c, &a, &c, &b));
            ensure(pl.between(&a, &x, &c) && pl.between(&c, &y, &a), "ab < ac ∧ cb < ca")?;
        }
        TheoremId::TriangleInequality => {
            let [a, b, c] = angle(g, 3);
            let d = c!(k.ext_strict(&a, &b, &b, &c, None, None));
            let x = c!(k.lay_off(&a, &d, &a, &c));
            ensure(pl.between(&a, &x, &d), "ac < ab + bc")?;
        }
        TheoremId::AllRightAnglesCongruent => {
            let [a, b, c] = angle(g, 0);
            let b2 = g.point();
            let a2 = g.distinct_from(&b2);
            let tip = c!(k.perpendicular(PerpMode::Erect, &b2, &b2, &a2, None)).tip;
            ensure(pl.right_angle(&a, &b, &c) && pl.right_angle(&a2, &b2, &tip), "right angles")?;
            ensure(pl.angle_cong([&a, &b, &c, &a2, &b2, &tip]), "abc = a'b'c'")?;
        }
        TheoremId::SaccheriHelper => {
            let a = g.point();
            let d = g.distinct_from(&a);
            let n = d.sub(&a).perp();
            let b = a.add(&n.scale(&g.pos()));
            let c = d.sub(&n.scale(&g.pos()));
            let m = line_intersection(&b, &c, &a, &d).ok_or("bc meets ad")?;
            let p = c!(k.midpoint_gupta(&m, &c));
            ensure(pl.between(&b, &p, &c), "B(b,p,c)")?;
            let x = line_intersection(&d, &p, &b, &a).ok_or("Euclid 5 point")?;
            ensure(pl.between(&d, &p, &x) && pl.between(&b, &a, &x), "B(d,p,x) ∧ B(b,a,x)")?;
            let j = c!(k.inner_pasch(&d, &p, &x, &b, &a));
            ensure(j == m, "j = m")?;
            ensure(pl.between(&a, &m, &d), "B(a,m,d)")?;
        }
        TheoremId::ParallelogramSides => {
            let [a, b, c] = angle(g, 3);
            let m = c!(k.midpoint_gupta(&a, &c));
            let d = c!(k.ext(&b, &m, &b, &m, None));
            ensure(pl.congruent(&a, &b, &c, &d) && pl.congruent(&b, &c, &d, &a), "AB=CD ∧ BC=DA")?;
        }
        TheoremId::ParallelogramDiagonals => {
            let [a, b, c] = angle(g, 3);
            let d = a.add(&c).sub(&b);
            let e = c!(k.ext(&c, &b, &c, &b, None));
            let f = line_intersection(&d, &e, &a, &b).ok_or("DE meets AB")?;
            ensure(pl.between(&d, &f, &e) && pl.between(&a, &f, &b), "B(D,F,E) ∧ B(A,F,B)")?;
            let h = c!(k.outer_pasch(&a, &f, &b, &e, &c));
            let m = c!(k.inner_pasch(&d, &h, &e, &c, &b));
            ensure(pl.between(&c, &m, &a) && pl.between(&d, &m, &b), "B(C,M,A) ∧ B(D,M,B)")?;
            ensure(pl.congruent(&a, &m, &m, &c) && pl.congruent(&b, &m, &m, &d), "AM=MC ∧ BM=MD")?;
        }
        TheoremId::LambertRectangle => {
            let a = g.point();
            let b = g.distinct_from(&a);
            let ta = c!(k.perpendicular(PerpMode::Erect, &a, &a, &b, None)).tip;
            let tb = c!(k.perpendicular(PerpMode::Erect, &b, &a, &b, None)).tip;
            let s = g.point();
            let t = g.distinct_from(&s);
            let c = c!(k.lay_off(&b, &tb, &s, &t));
            let d = c!(k.perpendicular(PerpMode::Drop, &c, &a, &ta, None)).foot;
            let three = pl.right_angle(&d, &a, &b) && pl.right_angle(&a, &b, &c) && pl.right_angle(&a, &d, &c);
            ensure(three, "three right angles")?;
            ensure(pl.right_angle(&b, &c, &d), "R(b,c,d)")?;
        }
        TheoremId::PositiveHypotenuse => {
            let [a, b, c] = angle(g, 0);
            ensure(pl.right_angle(&a, &b, &c), "R(a,b,c)")?;
            let foot = c!(k.perpendicular(PerpMode::Drop, &b, &a, &c, None)).foot;
            let w = crate::geometry::DistinctWitness { e: foot, clause: crate::geometry::DistinctClause::Inner };
            ensure(pl.verify_distinct(&a, &c, &w), "a#c witnessed")?;
        }
        TheoremId::PositiveImpliesApex => {
            let kind = g.small_int(0, 3);
            let [a, b, c] = angle(g, kind);
            let w = pl.pos_angle_witness(&a, &b, &c).map_err(|e| e.to_string())?;
            let want = match kind {
                0 => matches!(w, AngleWitness::Right { .. }),
                1 | 2 => matches!(w, AngleWitness::RightTriangle { .. } | AngleWitness::Right { .. }),
                _ => true,
            };
            ensure(want && pl.verify_angle(&a, &b, &c, &w), "witness kind and check")?;
            let apex = pl.apex_witness(&a, &b, &c).map_err(|e| e.to_string())?;
            ensure(pl.verify_angle(&a, &b, &c, &apex), "apex(a,b,c)")?;
        }
        TheoremId::AngleBisection => {
            let [a, b, c] = angle(g, 3);
            let m = c!(k.angle_bisect(&a, &b, &c));
            ensure(pl.angle_cong([&a, &b, &m, &m, &b, &c]), "abm = mbc")?;
            ensure(pl.proper_angle(&a, &b, &m) && pl.proper_angle(&m, &b, &c), "both halves positive")?;
        }
        TheoremId::TwoSidesExpressibility => {
            let f = CoordinateFrame::<B>::default();
            let x = if g.chance(5) { FieldElement::zero() } else { g.q() };
            let neg = x.is_negative();
            ensure(f.is_negative(&pl, &AxisPoint::new(x)) == neg, "B(x,0,1) ⇔ x<0")?;
        }
    }
    Ok(Ok(()))
}

/// `E` the midpoint of `AC`, `F` the reflection of `B` in `E`, `H` from inner
/// Pasch on `D,C,B,F,E`; `F` is interior to `∠ACD` and `∠ACF = ∠BAC`.
pub fn exterior_angle<B: Base>(
    k: &mut Constructor<B>,
    a: &Point<B>,
    b: &Point<B>,
    c: &Point<B>,
    d: &Point<B>,
) -> Result<CResult<()>, String> {
    let pl = k.plane;
    let e = match k.midpoint_gupta(a, c) {
        Ok(e) => e,
        Err(err) => return Ok(Err(err)),
    };
    let f = match k.ext(b, &e, b, &e, None) {
        Ok(f) => f,
        Err(err) => return Ok(Err(err)),
    };
    let h = match k.inner_pasch(d, c, b, &f, &e) {
        Ok(h) => h,
        Err(err) => return Ok(Err(err)),
    };
    ensure(pl.between(c, &h, &f) && pl.between(d, &h, &e) && pl.between(a, &e, c), "F interior to ACD via H")?;
    ensure(pl.angle_cong([b, a, c, a, c, &f]), "BAC = ACF")?;
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, Rational};
    use crate::geometry::Pt;

    #[test]
    fn exterior_angle_example() {
        let mut k = Constructor::<Rational>::classical();
        let (a, b, c, d) = (Pt::int(1, 2), Pt::int(0, 0), Pt::int(4, 0), Pt::int(6, 0));
        assert_eq!(exterior_angle(&mut k, &a, &b, &c, &d).unwrap(), Ok(()));
        let h = k.trace().iter().rev().find(|s| s.op == "inner_pasch" && s.depth == 0).unwrap().outputs[0].clone();
        assert_eq!(h, Pt::new(C::ratio(17, 4), C::ratio(1, 2)));
        let f = k.trace().iter().find(|s| s.op == "ext" && s.depth == 0).unwrap().outputs[0].clone();
        assert_eq!(f, Pt::int(5, 2));
    }
}
