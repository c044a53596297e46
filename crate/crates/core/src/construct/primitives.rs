use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{require, CResult, CircleSpec, ConstructionError, Constructor, ErrorKind, Mark};
use crate::field::{Base, FieldElement};
use crate::geometry::{line_intersection, Point};

/// The existential axioms realized as constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PrimitiveKind {
    Ext,
    ExtStrict,
    InnerPasch,
    OuterPasch,
    Euclid5,
    LineCircleStrict,
    LineCircleNonstrict,
    CircleCircle,
}

impl PrimitiveKind {
    pub const ALL: [PrimitiveKind; 8] = [
        PrimitiveKind::Ext,
        PrimitiveKind::ExtStrict,
        PrimitiveKind::InnerPasch,
        PrimitiveKind::OuterPasch,
        PrimitiveKind::Euclid5,
        PrimitiveKind::LineCircleStrict,
        PrimitiveKind::LineCircleNonstrict,
        PrimitiveKind::CircleCircle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimitiveKind::Ext => "ext",
            PrimitiveKind::ExtStrict => "ext_strict",
            PrimitiveKind::InnerPasch => "inner_pasch",
            PrimitiveKind::OuterPasch => "outer_pasch",
            PrimitiveKind::Euclid5 => "euclid5",
            PrimitiveKind::LineCircleStrict => "line_circle",
            PrimitiveKind::LineCircleNonstrict => "line_circle_ns",
            PrimitiveKind::CircleCircle => "circle_circle",
        }
    }

    /// Positional argument names, in call order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            PrimitiveKind::Ext | PrimitiveKind::ExtStrict => &["a", "b", "c", "d"],
            PrimitiveKind::InnerPasch | PrimitiveKind::OuterPasch => &["a", "p", "c", "b", "q"],
            PrimitiveKind::Euclid5 => &["p", "q", "r", "s", "t", "a"],
            PrimitiveKind::LineCircleStrict | PrimitiveKind::LineCircleNonstrict => {
                &["a", "b", "c", "p", "q", "u", "v"]
            }
            PrimitiveKind::CircleCircle => &["c", "p", "q", "a", "b", "C", "P", "Q", "u", "v", "w"],
        }
    }

    pub fn outputs(self) -> usize {
        match self {
            PrimitiveKind::LineCircleStrict | PrimitiveKind::LineCircleNonstrict | PrimitiveKind::CircleCircle => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimitiveKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        PrimitiveKind::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

const A4_1: &str = "A4-i1";
const A4_2: &str = "A4-i2";
const A7_1: &str = "A7-i1";
const A7_2: &str = "A7-i2";
const E5: &str = "Euclid5";
const LC_S: &str = "LC-strict";
const LC_N: &str = "LC-nonstrict";
const CC: &str = "CC";

fn post(ok: bool, op: &'static str, what: &str) -> CResult<()> {
    require(ok, ErrorKind::PostconditionFailed, op, what)
}

impl<B: Base> Constructor<B> {
    /// Dispatches a primitive on positional points (see [`PrimitiveKind::params`]).
    pub fn primitive(&mut self, kind: PrimitiveKind, args: &[Point<B>]) -> CResult<Vec<Point<B>>> {
        let n = kind.params().len();
        if args.len() != n {
            return Err(ConstructionError::new(
                ErrorKind::PreconditionViolated,
                kind.name(),
                format!("expected {n} points, got {}", args.len()),
            ));
        }
        let a = args;
        Ok(match kind {
            PrimitiveKind::Ext => vec![self.ext(&a[0], &a[1], &a[2], &a[3], None)?],
            PrimitiveKind::ExtStrict => vec![self.ext_strict(&a[0], &a[1], &a[2], &a[3], None, None)?],
            PrimitiveKind::InnerPasch => vec![self.inner_pasch(&a[0], &a[1], &a[2], &a[3], &a[4])?],
            PrimitiveKind::OuterPasch => vec![self.outer_pasch(&a[0], &a[1], &a[2], &a[3], &a[4])?],
            PrimitiveKind::Euclid5 => vec![self.euclid5(&a[0], &a[1], &a[2], &a[3], &a[4], &a[5])?],
            PrimitiveKind::LineCircleStrict | PrimitiveKind::LineCircleNonstrict => {
                let circle = CircleSpec::new(a[2].clone(), a[3].clone(), a[4].clone());
                let strict = kind == PrimitiveKind::LineCircleStrict;
                let (x, y) = self.line_circle(strict, &a[0], &a[1], &circle, (&a[5], &a[6]))?;
                vec![x, y]
            }
            PrimitiveKind::CircleCircle => {
                let c1 = CircleSpec::new(a[0].clone(), a[1].clone(), a[2].clone());
                let c2 = CircleSpec::new(a[5].clone(), a[6].clone(), a[7].clone());
                let (l, r) = self.circle_circle(&c1, &a[3], &a[4], &c2, (&a[8], &a[9]), &a[10])?;
                vec![l, r]
            }
        })
    }

    fn ext_point(a: &Point<B>, b: &Point<B>, c: &Point<B>, d: &Point<B>) -> Point<B> {
        let k = (c.dist2(d) / a.dist2(b)).sqrt_nonneg().expect("ratio of squares");
        b.add(&b.sub(a).scale(&k))
    }

    /// Extension: `e` with `T(a,b,e)` and `be = cd`. The guard is `A # B` for a
    /// congruent copy `AB` of `ab` (by default `ab` itself).
    pub fn ext(
        &mut self,
        a: &Point<B>,
        b: &Point<B>,
        c: &Point<B>,
        d: &Point<B>,
        copy: Option<(&Point<B>, &Point<B>)>,
    ) -> CResult<Point<B>> {
        let pl = self.plane;
        let (ca, cb) = copy.unwrap_or((a, b));
        require(pl.congruent(a, b, ca, cb), ErrorKind::PreconditionViolated, A4_1, "ab=AB")?;
        require(pl.distinct(ca, cb), ErrorKind::NotDistinct, A4_1, "A#B")?;
        let e = Self::ext_point(a, b, c, d);
        post(pl.between_ns(a, b, &e) && pl.congruent(b, &e, c, d), A4_1, "T(a,b,e) ∧ be=cd")?;
        self.record("ext", &[a, b, c, d], &[&e], vec![Mark::Segment(b.clone(), e.clone())]);
        Ok(e)
    }

    /// Strict extension: additionally `C # D` for a copy of `cd`, giving `B(a,b,e)`.
    pub fn ext_strict(
        &mut self,
        a: &Point<B>,
        b: &Point<B>,
        c: &Point<B>,
        d: &Point<B>,
        copy_ab: Option<(&Point<B>, &Point<B>)>,
        copy_cd: Option<(&Point<B>, &Point<B>)>,
    ) -> CResult<Point<B>> {
        let pl = self.plane;
        let (ca, cb) = copy_ab.unwrap_or((a, b));
        let (cc, cd) = copy_cd.unwrap_or((c, d));
        require(pl.congruent(a, b, ca, cb), ErrorKind::PreconditionViolated, A4_2, "ab=AB")?;
        require(pl.distinct(ca, cb), ErrorKind::NotDistinct, A4_2, "A#B")?;
        require(pl.congruent(c, d, cc, cd), ErrorKind::PreconditionViolated, A4_2, "cd=CD")?;
        require(pl.distinct(cc, cd), ErrorKind::NotDistinct, A4_2, "C#D")?;
        let e = Self::ext_point(a, b, c, d);
        post(pl.between(a, b, &e) && pl.congruent(b, &e, c, d), A4_2, "B(a,b,e) ∧ be=cd")?;
        self.record("ext_strict", &[a, b, c, d], &[&e], vec![Mark::Segment(b.clone(), e.clone())]);
        Ok(e)
    }

    /// Inner Pasch: `x` with `B(p,x,b) ∧ B(a,x,q)`.
    pub fn inner_pasch(&mut self, a: &Point<B>, p: &Point<B>, c: &Point<B>, b: &Point<B>, q: &Point<B>) -> CResult<Point<B>> {
        let pl = self.plane;
        require(pl.between(a, p, c), ErrorKind::PreconditionViolated, A7_1, "B(a,p,c)")?;
        require(pl.between(b, q, c), ErrorKind::PreconditionViolated, A7_1, "B(b,q,c)")?;
        if !(pl.proper_angle(a, c, b) || pl.proper_angle(q, p, a)) {
            let kind = if pl.pos_angle(a, c, b) || pl.pos_angle(q, p, a) {
                ErrorKind::AngleNotLtPi
            } else {
                ErrorKind::AngleNotPositive
            };
            return Err(ConstructionError::new(kind, A7_1, "0<acb<π ∨ 0<qpa<π"));
        }
        let x = line_intersection(p, b, a, q)
            .ok_or_else(|| ConstructionError::new(ErrorKind::PostconditionFailed, A7_1, "lines pb, aq meet"))?;
        post(pl.between(p, &x, b) && pl.between(a, &x, q), A7_1, "B(p,x,b) ∧ B(a,x,q)")?;
        self.record(
            "inner_pasch",
            &[a, p, c, b, q],
            &[&x],
            vec![
                Mark::Shade(vec![a.clone(), c.clone(), b.clone()]),
                Mark::Segment(p.clone(), b.clone()),
                Mark::Segment(a.clone(), q.clone()),
            ],
        );
        Ok(x)
    }

    /// Outer Pasch: `x` with `B(b,p,x) ∧ B(a,x,q)`.
    pub fn outer_pasch(&mut self, a: &Point<B>, p: &Point<B>, c: &Point<B>, b: &Point<B>, q: &Point<B>) -> CResult<Point<B>> {
        let pl = self.plane;
        require(pl.between(a, p, c), ErrorKind::PreconditionViolated, A7_2, "B(a,p,c)")?;
        require(pl.between(b, c, q), ErrorKind::PreconditionViolated, A7_2, "B(b,c,q)")?;
        if !(pl.proper_angle(b, a, q) || pl.proper_angle(a, b, q)) {
            let kind = if pl.pos_angle(b, a, q) || pl.pos_angle(a, b, q) {
                ErrorKind::AngleNotLtPi
            } else {
                ErrorKind::AngleNotPositive
            };
            return Err(ConstructionError::new(kind, A7_2, "0<baq<π ∨ 0<abq<π"));
        }
        let x = line_intersection(b, p, a, q)
            .ok_or_else(|| ConstructionError::new(ErrorKind::PostconditionFailed, A7_2, "lines bp, aq meet"))?;
        post(pl.between(b, p, &x) && pl.between(a, &x, q), A7_2, "B(b,p,x) ∧ B(a,x,q)")?;
        self.record(
            "outer_pasch",
            &[a, p, c, b, q],
            &[&x],
            vec![
                Mark::Shade(vec![a.clone(), b.clone(), q.clone()]),
                Mark::Segment(b.clone(), x.clone()),
                Mark::Segment(a.clone(), q.clone()),
            ],
        );
        Ok(x)
    }

    /// Euclid 5: `e` with `B(p,a,e) ∧ B(s,q,e)`.
    pub fn euclid5(
        &mut self,
        p: &Point<B>,
        q: &Point<B>,
        r: &Point<B>,
        s: &Point<B>,
        t: &Point<B>,
        a: &Point<B>,
    ) -> CResult<Point<B>> {
        let pl = self.plane;
        let pre = ErrorKind::PreconditionViolated;
        require(pl.congruent(p, t, q, t), pre, E5, "pt=qt")?;
        require(pl.between(p, t, q), pre, E5, "B(p,t,q)")?;
        require(pl.congruent(s, t, r, t), pre, E5, "st=rt")?;
        require(pl.between(s, t, r), pre, E5, "B(s,t,r)")?;
        require(pl.congruent(p, r, q, s), pre, E5, "pr=qs")?;
        require(pl.between(q, a, r), pre, E5, "B(q,a,r)")?;
        let e = line_intersection(p, a, s, q)
            .ok_or_else(|| ConstructionError::new(ErrorKind::NotOffLine, E5, "transversal not collinear"))?;
        post(pl.between(p, a, &e) && pl.between(s, q, &e), E5, "B(p,a,e) ∧ B(s,q,e)")?;
        self.record(
            "euclid5",
            &[p, q, r, s, t, a],
            &[&e],
            vec![Mark::Segment(p.clone(), e.clone()), Mark::Segment(s.clone(), e.clone())],
        );
        Ok(e)
    }

    /// Line-circle continuity: the two points where line `ab` meets the
    /// circle, ordered along the direction `a → b`. Insideness of `a` is
    /// witnessed by the diameter `uv`.
    pub fn line_circle(
        &mut self,
        strict: bool,
        a: &Point<B>,
        b: &Point<B>,
        circle: &CircleSpec<B>,
        diameter: (&Point<B>, &Point<B>),
    ) -> CResult<(Point<B>, Point<B>)> {
        let pl = self.plane;
        let op = if strict { LC_S } else { LC_N };
        let (u, v) = diameter;
        let c = &circle.center;
        let (p, q) = (&circle.p, &circle.q);
        let bt = |x: &Point<B>, y: &Point<B>, z: &Point<B>| if strict { pl.between(x, y, z) } else { pl.between_ns(x, y, z) };
        require(pl.distinct(a, b), ErrorKind::NotDistinct, op, "a#b")?;
        require(pl.congruent(c, u, p, q) && pl.congruent(c, v, p, q), ErrorKind::NotInside, op, "cu=pq ∧ cv=pq")?;
        require(bt(u, a, v), ErrorKind::NotInside, op, if strict { "B(u,a,v)" } else { "T(u,a,v)" })?;
        require(bt(u, c, v), ErrorKind::NotInside, op, if strict { "B(u,c,v)" } else { "T(u,c,v)" })?;
        let d = b.sub(a);
        let f = a.sub(c);
        let aa = d.norm2();
        let bb = d.dot(&f);
        let cc = f.norm2() - p.dist2(q);
        let disc = &bb * &bb - &aa * &cc;
        let s = disc
            .sqrt_nonneg()
            .map_err(|_| ConstructionError::new(ErrorKind::NotInside, op, "line meets circle"))?;
        let t1 = (-&bb - &s) / &aa;
        let t2 = (-&bb + &s) / &aa;
        let x = a.lerp(b, &t1);
        let y = a.lerp(b, &t2);
        let on = pl.congruent(c, &x, p, q) && pl.congruent(c, &y, p, q);
        post(on && bt(&x, a, &y), op, if strict { "cx=cy=pq ∧ B(x,a,y)" } else { "cx=cy=pq ∧ T(x,a,y)" })?;
        self.record(
            if strict { "line_circle" } else { "line_circle_ns" },
            &[a, b, c, p, q, u, v],
            &[&x, &y],
            vec![
                Mark::Circle { center: c.clone(), through: x.clone() },
                Mark::Segment(x.clone(), y.clone()),
            ],
        );
        Ok((x, y))
    }

    /// Circle-circle continuity. Circle 1 has center `c1.center`, radius
    /// `c1.p c1.q` and passes through `a` and `b`; `a` is non-strictly inside
    /// circle 2 (diameter `uv`) and `b` non-strictly outside it (via `w`).
    /// Returns the intersections left and right of the directed center line.
    pub fn circle_circle(
        &mut self,
        c1: &CircleSpec<B>,
        a: &Point<B>,
        b: &Point<B>,
        c2: &CircleSpec<B>,
        diameter: (&Point<B>, &Point<B>),
        w: &Point<B>,
    ) -> CResult<(Point<B>, Point<B>)> {
        let pl = self.plane;
        let (u, v) = diameter;
        let (c, p, q) = (&c1.center, &c1.p, &c1.q);
        let (cc, pp, qq) = (&c2.center, &c2.p, &c2.q);
        let pre = ErrorKind::PreconditionViolated;
        require(pl.congruent(c, a, p, q), pre, CC, "ca=pq")?;
        require(pl.congruent(c, b, p, q), pre, CC, "cb=pq")?;
        require(pl.congruent(cc, u, pp, qq) && pl.congruent(cc, v, pp, qq), ErrorKind::NotInside, CC, "Cu=PQ ∧ Cv=PQ")?;
        require(pl.between_ns(u, a, v) && pl.between_ns(u, cc, v), ErrorKind::NotInside, CC, "T(u,a,v) ∧ T(u,C,v)")?;
        require(pl.congruent(cc, w, pp, qq), ErrorKind::CirclesSeparated, CC, "Cw=PQ")?;
        require(pl.between(cc, w, b), ErrorKind::CirclesSeparated, CC, "B(C,w,b)")?;
        let dv = cc.sub(c);
        let d2 = dv.norm2();
        if d2.is_zero() {
            return Err(ConstructionError::new(ErrorKind::CirclesSeparated, CC, "distinct centers"));
        }
        let r1 = p.dist2(q);
        let r2 = pp.dist2(qq);
        let alpha = (&r1 - &r2 + &d2) / (FieldElement::from_int(2) * &d2);
        let h2 = &r1 / &d2 - &alpha * &alpha;
        let h = h2
            .sqrt_nonneg()
            .map_err(|_| ConstructionError::new(ErrorKind::CirclesSeparated, CC, "circles meet"))?;
        let base = c.add(&dv.scale(&alpha));
        let off = dv.perp().scale(&h);
        let left = base.add(&off);
        let right = base.sub(&off);
        for e in [&left, &right] {
            post(pl.congruent(c, e, p, q) && pl.congruent(cc, e, pp, qq), CC, "ce=pq ∧ Ce=PQ")?;
        }
        self.record(
            "circle_circle",
            &[c, p, q, a, b, cc, pp, qq, u, v, w],
            &[&left, &right],
            vec![
                Mark::Circle { center: c.clone(), through: a.clone() },
                Mark::Circle { center: cc.clone(), through: u.clone() },
            ],
        );
        Ok((left, right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, NaNumber, Rational};
    use crate::geometry::{NaPt, Pt};

    fn p(x: i64, y: i64) -> Pt {
        Pt::int(x, y)
    }

    fn q(n: i64, d: i64) -> C {
        C::ratio(n, d)
    }

    #[test]
    fn ext_example() {
        let mut k = Constructor::<Rational>::classical();
        assert_eq!(k.ext(&p(0, 0), &p(1, 0), &p(0, 0), &p(2, 0), None).unwrap(), p(3, 0));
        assert_eq!(k.ext_strict(&p(0, 0), &p(1, 0), &p(0, 0), &p(2, 0), None, None).unwrap(), p(3, 0));
        let err = k.ext(&p(1, 1), &p(1, 1), &p(0, 0), &p(2, 0), None).unwrap_err();
        assert_eq!((err.kind, err.op), (ErrorKind::NotDistinct, "A4-i1"));
    }

    #[test]
    fn pasch_examples() {
        let mut k = Constructor::<Rational>::classical();
        let x = k.inner_pasch(&p(0, 0), &p(1, 2), &p(2, 4), &p(4, -4), &p(3, 0)).unwrap();
        assert_eq!(x, p(2, 0));
        let x = k.outer_pasch(&p(0, 0), &p(1, 1), &p(2, 2), &p(4, 0), &p(1, 3)).unwrap();
        assert_eq!(x, Pt::new(q(2, 5), q(6, 5)));
    }

    #[test]
    fn euclid5_example() {
        let mut k = Constructor::<Rational>::classical();
        let a = Pt::new(q(1, 2), q(-1, 2));
        let e = k.euclid5(&p(0, 1), &p(0, -1), &p(1, 0), &p(-1, 0), &p(0, 0), &a).unwrap();
        assert_eq!(e, p(1, -2));
    }

    #[test]
    fn circle_circle_example() {
        let mut k = Constructor::<Rational>::classical();
        let (o, x) = (p(0, 0), p(1, 0));
        let c1 = CircleSpec::through(&o, &x);
        let c2 = CircleSpec::through(&x, &o);
        let (l, r) = k.circle_circle(&c1, &x, &p(-1, 0), &c2, (&o, &p(2, 0)), &o).unwrap();
        let h = C::from_int(3).sqrt_nonneg().unwrap() / C::from_int(2);
        assert_eq!(l, Pt::new(q(1, 2), h.clone()));
        assert_eq!(r, Pt::new(q(1, 2), -h));
    }

    #[test]
    fn line_circle_tangent_nonstrict() {
        let mut k = Constructor::<Rational>::classical();
        // circle about (-1/2, 0) through the origin, line x = 0 is tangent there
        let c = Pt::new(q(-1, 2), C::zero());
        let circle = CircleSpec::through(&c, &p(0, 0));
        let (x, y) = k.line_circle(false, &p(0, 0), &p(0, 1), &circle, (&p(-1, 0), &p(0, 0))).unwrap();
        assert_eq!((x, y), (p(0, 0), p(0, 0)));
        assert!(k.line_circle(true, &p(0, 0), &p(0, 1), &circle, (&p(-1, 0), &p(0, 0))).is_err());
    }

    #[test]
    fn infinitesimal_apex_is_refused_at_root() {
        let e = NaNumber::eps().unwrap();
        let pt = |x: NaNumber, y: NaNumber| NaPt::new(x, y);
        let n = |k: i64| NaNumber::from_int(k);
        let a = pt(n(0), n(0));
        let b = pt(n(2), n(0));
        let c = pt(n(1), e.clone());
        let pm = a.midpoint(&c);
        let qm = b.midpoint(&c);
        let mut root = Constructor::at(crate::geometry::Node::Root);
        let err = root.inner_pasch(&a, &pm, &c, &b, &qm).unwrap_err();
        assert_eq!(err.kind, ErrorKind::AngleNotPositive);
        let mut top = Constructor::at(crate::geometry::Node::Classical);
        assert!(top.inner_pasch(&a, &pm, &c, &b, &qm).is_ok());
    }
}
