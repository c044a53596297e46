//! Instance generators and checks for the axioms.

use super::gen::Gen;
use super::{AxiomId, Instance, Verdict};
use crate::construct::{CResult, CircleSpec, Constructor};
use crate::field::{Base, FieldElement};
use crate::geometry::{Node, Plane, Point};

fn nodes_above(node: Node) -> &'static [Node] {
    match node {
        Node::Root => &[Node::Root, Node::Classical],
        Node::Classical => &[Node::Classical],
    }
}

/// `¬B(a,b,c)` forced at `node`: B fails at every node above.
fn not_between<B: Base>(node: Node, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
    nodes_above(node).iter().all(|&n| !Plane::<B>::at(n).between(a, b, c))
}

pub fn generate<B: Base>(id: AxiomId, g: &mut Gen<B>, probe: bool, tiny: bool) -> Vec<(&'static str, Point<B>)> {
    match id {
        AxiomId::A6 => {
            let a = g.point();
            let b = if g.chance(4) { a.clone() } else { g.point() };
            vec![("a", a), ("b", b)]
        }
        AxiomId::A14 => {
            let a = g.point();
            let c = g.distinct_from(&a);
            let t = if tiny { g.tiny() } else { g.unit() };
            let b = a.lerp(&c, &t);
            vec![("a", a), ("b", b), ("c", c)]
        }
        AxiomId::A15 => {
            let a = g.point();
            let d = g.distinct_from(&a);
            let b = a.lerp(&d, &g.unit());
            let t = if tiny { g.tiny() } else { g.unit() };
            let c = b.lerp(&d, &t);
            vec![("a", a), ("b", b), ("c", c), ("d", d)]
        }
        AxiomId::A17 => {
            let a = g.point();
            let d = g.distinct_from(&a);
            let b = a.lerp(&d, &g.unit());
            let c = match g.small_int(0, 2) {
                0 => b.clone(),
                1 if tiny => b.lerp(&d, &g.tiny()),
                _ => a.lerp(&d, &g.unit()),
            };
            vec![("a", a), ("b", b), ("c", c), ("d", d)]
        }
        AxiomId::A5 => {
            let a = g.point();
            let b = if tiny { a.add(&g.unit_vec().scale(&g.tiny())) } else { g.distinct_from(&a) };
            let s = if g.chance(5) { FieldElement::zero() } else { g.pos() };
            let c = b.add(&b.sub(&a).scale(&s));
            let d = g.point();
            let m = g.motion();
            let (ca, cb, cc, cd) = (m.apply(&a), m.apply(&b), m.apply(&c), m.apply(&d));
            vec![("a", a), ("b", b), ("c", c), ("d", d), ("A", ca), ("B", cb), ("C", cc), ("D", cd)]
        }
        AxiomId::A4i1 | AxiomId::A4i2 => {
            let a = g.point();
            let b = if probe {
                a.clone()
            } else if tiny {
                a.add(&g.unit_vec().scale(&g.tiny()))
            } else {
                g.distinct_from(&a)
            };
            let c = g.point();
            let d = if probe && id == AxiomId::A4i2 && g.chance(2) { c.clone() } else { g.distinct_from(&c) };
            let (m1, m2) = (g.motion(), g.motion());
            let mut v = vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("d", d.clone())];
            v.push(("A", m1.apply(&a)));
            v.push(("B", m1.apply(&b)));
            if id == AxiomId::A4i2 {
                v.push(("C", m2.apply(&c)));
                v.push(("D", m2.apply(&d)));
            }
            v
        }
        AxiomId::A7i1 => {
            let c = g.point();
            let a = g.distinct_from(&c);
            let b = if tiny {
                let k = g.pos();
                c.add(&a.sub(&c).scale(&k)).add(&a.sub(&c).perp().scale(&g.tiny()))
            } else {
                g.off_line(&c, &a)
            };
            let p = a.lerp(&c, &g.unit());
            let q = b.lerp(&c, &g.unit());
            vec![("a", a), ("p", p), ("c", c), ("b", b), ("q", q)]
        }
        AxiomId::A7i2 => {
            let a = g.point();
            let b = g.distinct_from(&a);
            let c = if tiny {
                let k = g.pos();
                a.add(&b.sub(&a).scale(&k)).add(&b.sub(&a).perp().scale(&g.tiny()))
            } else {
                g.off_line(&a, &b)
            };
            let p = a.lerp(&c, &g.unit());
            let q = c.add(&c.sub(&b).scale(&g.pos()));
            vec![("a", a), ("p", p), ("c", c), ("b", b), ("q", q)]
        }
        AxiomId::Euclid5 => {
            let t = g.point();
            let u = g.nonzero_vec();
            let w = loop {
                let w = if tiny { u.add(&u.perp().scale(&g.tiny())) } else { g.nonzero_vec() };
                if !u.cross(&w).is_zero() {
                    break w;
                }
            };
            let (p, q, r, s) = (t.add(&u), t.sub(&u), t.add(&w), t.sub(&w));
            let a = q.lerp(&r, &g.unit());
            vec![("p", p), ("q", q), ("r", r), ("s", s), ("t", t), ("a", a)]
        }
        AxiomId::LcStrict | AxiomId::LcNonstrict => {
            let c = g.point();
            let rho = g.pos();
            let pp = g.point();
            let qq = pp.add(&g.unit_vec().scale(&rho));
            let d1 = g.unit_vec().scale(&rho);
            let (u, v) = (c.add(&d1), c.sub(&d1));
            let strict = id == AxiomId::LcStrict;
            let t = if tiny {
                g.tiny()
            } else if !strict && g.chance(4) {
                FieldElement::zero()
            } else {
                g.unit()
            };
            let a = u.lerp(&v, &t);
            let b = if probe {
                a.clone()
            } else if t.is_zero() && g.chance(2) {
                a.add(&d1.perp())
            } else {
                g.distinct_from(&a)
            };
            vec![("a", a), ("b", b), ("c", c), ("p", pp), ("q", qq), ("u", u), ("v", v)]
        }
        AxiomId::Cc => {
            let cc = g.point();
            let rho = g.pos();
            let pp = g.point();
            let qq = pp.add(&g.unit_vec().scale(&rho));
            let d1 = g.unit_vec().scale(&rho);
            let (u, v) = (cc.add(&d1), cc.sub(&d1));
            let t = if g.chance(4) { FieldElement::zero() } else { g.unit() };
            let a = u.lerp(&v, &t);
            let d2 = g.unit_vec();
            let w = cc.add(&d2.scale(&rho));
            let delta = if tiny { g.tiny() } else { g.pos() };
            let b = w.add(&d2.scale(&delta));
            let s = g.q();
            let c = a.midpoint(&b).add(&b.sub(&a).perp().scale(&s));
            vec![
                ("c", c.clone()),
                ("p", c),
                ("q", a.clone()),
                ("a", a),
                ("b", b),
                ("C", cc),
                ("P", pp),
                ("Q", qq),
                ("u", u),
                ("v", v),
                ("w", w),
            ]
        }
        AxiomId::LowerDim => {
            let alpha = g.point();
            let beta = if tiny { alpha.add(&g.unit_vec().scale(&g.tiny())) } else { g.distinct_from(&alpha) };
            vec![("alpha", alpha), ("beta", beta)]
        }
    }
}

fn fail<T>(what: impl Into<String>) -> Result<T, String> {
    Err(what.into())
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        fail(what)
    }
}

/// Runs the axiom's construction at `node` and re-checks its conclusion.
/// `Ok(Err(_))` is a refusal by a guard, `Err(_)` a wrong conclusion.
fn run<B: Base>(id: AxiomId, inst: &Instance<B>, node: Node) -> Result<CResult<()>, String> {
    let p = |n: &str| inst.get(n);
    let pl = Plane::<B>::at(node);
    let mut k = Constructor::<B>::new(pl);
    macro_rules! try_c {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return Ok(Err(e)),
            }
        };
    }
    match id {
        AxiomId::A4i1 => {
            let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
            let e = try_c!(k.ext(a, b, c, d, Some((p("A"), p("B")))));
            ensure(pl.between_ns(a, b, &e) && pl.congruent(b, &e, c, d), "T(a,b,e) ∧ be=cd")?;
        }
        AxiomId::A4i2 => {
            let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
            let e = try_c!(k.ext_strict(a, b, c, d, Some((p("A"), p("B"))), Some((p("C"), p("D")))));
            ensure(pl.between(a, b, &e) && pl.congruent(b, &e, c, d), "B(a,b,e) ∧ be=cd")?;
        }
        AxiomId::A7i1 => {
            let (a, pp, c, b, q) = (p("a"), p("p"), p("c"), p("b"), p("q"));
            let x = try_c!(k.inner_pasch(a, pp, c, b, q));
            ensure(pl.between(pp, &x, b) && pl.between(a, &x, q), "B(p,x,b) ∧ B(a,x,q)")?;
        }
        AxiomId::A7i2 => {
            let (a, pp, c, b, q) = (p("a"), p("p"), p("c"), p("b"), p("q"));
            let x = try_c!(k.outer_pasch(a, pp, c, b, q));
            ensure(pl.between(b, pp, &x) && pl.between(a, &x, q), "B(b,p,x) ∧ B(a,x,q)")?;
        }
        AxiomId::Euclid5 => {
            let (pp, q, r, s, t, a) = (p("p"), p("q"), p("r"), p("s"), p("t"), p("a"));
            let e = try_c!(k.euclid5(pp, q, r, s, t, a));
            ensure(pl.between(pp, a, &e) && pl.between(s, q, &e), "B(p,a,e) ∧ B(s,q,e)")?;
        }
        AxiomId::LcStrict | AxiomId::LcNonstrict => {
            let strict = id == AxiomId::LcStrict;
            let circle = CircleSpec::new(p("c").clone(), p("p").clone(), p("q").clone());
            let (x, y) = try_c!(k.line_circle(strict, p("a"), p("b"), &circle, (p("u"), p("v"))));
            let (c, pp, q, a) = (p("c"), p("p"), p("q"), p("a"));
            let on = pl.congruent(c, &x, pp, q) && pl.congruent(c, &y, pp, q);
            let mid = if strict { pl.between(&x, a, &y) } else { pl.between_ns(&x, a, &y) };
            ensure(on && mid, "cx=pq ∧ cy=pq ∧ B(x,a,y)")?;
            ensure(pl.collinear(a, p("b"), &x) && pl.collinear(a, p("b"), &y), "x, y on line ab")?;
        }
        AxiomId::Cc => {
            let c1 = CircleSpec::new(p("c").clone(), p("p").clone(), p("q").clone());
            let c2 = CircleSpec::new(p("C").clone(), p("P").clone(), p("Q").clone());
            let (l, r) = try_c!(k.circle_circle(&c1, p("a"), p("b"), &c2, (p("u"), p("v")), p("w")));
            for e in [&l, &r] {
                ensure(pl.congruent(p("c"), e, p("p"), p("q")) && pl.congruent(p("C"), e, p("P"), p("Q")), "ce=pq ∧ Ce=PQ")?;
            }
        }
        AxiomId::LowerDim => {
            let (al, be) = (p("alpha"), p("beta"));
            let ga = try_c!(k.equilateral(al, be, None));
            let c1 = al.midpoint(be);
            let c2 = al.midpoint(&ga);
            let c3 = be.midpoint(&ga);
            let c4 = try_c!(k.inner_pasch(be, &c1, al, &ga, &c2));
            ensure(pl.congruent(al, be, be, &ga) && pl.congruent(al, be, al, &ga), "αβ=βγ ∧ αβ=αγ")?;
            ensure(pl.distinct(al, be), "α≠β")?;
            ensure(pl.between(al, &c1, be) && pl.congruent(al, &c1, &c1, be), "B(α,c1,β) ∧ αc1=c1β")?;
            ensure(pl.between(al, &c2, &ga) && pl.congruent(al, &c2, &c2, &ga), "B(α,c2,γ) ∧ αc2=c2γ")?;
            ensure(pl.between(be, &c3, &ga) && pl.congruent(be, &c3, &c3, &ga), "B(β,c3,γ) ∧ βc3=c3γ")?;
            ensure(pl.between(be, &c4, &c2) && pl.between(&ga, &c4, &c1), "B(β,c4,c2) ∧ B(γ,c4,c1)")?;
        }
        AxiomId::A6 | AxiomId::A14 | AxiomId::A15 | AxiomId::A17 | AxiomId::A5 => {
            for &n in nodes_above(node) {
                universal(id, inst, n)?;
            }
        }
    }
    Ok(Ok(()))
}

/// Hypotheses forced at `n` imply the conclusion at `n`.
fn universal<B: Base>(id: AxiomId, inst: &Instance<B>, n: Node) -> Result<(), String> {
    let p = |s: &str| inst.get(s);
    let pl = Plane::<B>::at(n);
    match id {
        AxiomId::A6 => ensure(!pl.between(p("a"), p("b"), p("a")), "¬B(a,b,a)"),
        AxiomId::A14 => {
            let (a, b, c) = (p("a"), p("b"), p("c"));
            ensure(!pl.between(a, b, c) || pl.between(c, b, a), "B(a,b,c) → B(c,b,a)")
        }
        AxiomId::A15 => {
            let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
            ensure(!(pl.between(a, b, d) && pl.between(b, c, d)) || pl.between(a, b, c), "B(a,b,c)")
        }
        AxiomId::A17 => {
            let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
            let hyp = pl.between(a, b, d) && pl.between(a, c, d) && not_between(n, a, b, c) && not_between(n, a, c, b);
            ensure(!hyp || b == c, "b = c")
        }
        AxiomId::A5 => {
            let [a, b, c, d] = ["a", "b", "c", "d"].map(p);
            let [ca, cb, cc, cd] = ["A", "B", "C", "D"].map(p);
            let hyp = pl.distinct(a, b)
                && pl.between_ns(a, b, c)
                && pl.between_ns(ca, cb, cc)
                && pl.congruent(a, b, ca, cb)
                && pl.congruent(b, c, cb, cc)
                && pl.congruent(a, d, ca, cd)
                && pl.congruent(b, d, cb, cd);
            ensure(!hyp || pl.congruent(c, d, cc, cd), "cd=CD")
        }
        _ => unreachable!("existential axiom"),
    }
}

pub fn check<B: Base>(id: AxiomId, inst: &Instance<B>, node: Node) -> Verdict {
    match run(id, inst, node) {
        Err(what) => Verdict::Fail(format!("conclusion {what} fails")),
        Ok(Ok(())) if inst.probe => Verdict::Fail("degenerate probe accepted".into()),
        Ok(Ok(())) => Verdict::Pass,
        Ok(Err(e)) if inst.probe => Verdict::Refused(format!("probe: {e}")),
        Ok(Err(e)) if node == Node::Root => match run(id, inst, Node::Classical) {
            Ok(Ok(())) => Verdict::Refused(format!("root: {e}; classical: holds")),
            Ok(Err(e2)) => Verdict::Fail(format!("root: {e}; classical: {e2}")),
            Err(what) => Verdict::Fail(format!("root: {e}; classical conclusion {what} fails")),
        },
        Ok(Err(e)) => Verdict::Fail(e.to_string()),
    }
}
