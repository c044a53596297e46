use serde::{Deserialize, Serialize};

use super::{require, tiling::AngleKind, CResult, CircleSpec, ConstructionError, Constructor, ErrorKind, Mark};
use crate::field::Base;
use crate::geometry::{AngleWitness, Point};

/// How a perpendicular is drawn relative to the point `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerpMode {
    /// `p` lies on the line.
    Erect,
    /// `p` lies off the line.
    Drop,
    /// No assumption on `p`.
    Uniform,
}

/// Foot on the line and a second point of the perpendicular.
#[derive(Clone, Debug, PartialEq)]
pub struct Perpendicular<B: Base> {
    pub foot: Point<B>,
    pub tip: Point<B>,
}

/// What a reflection is taken in.
#[derive(Clone, Debug, PartialEq)]
pub enum ReflectDatum<B: Base> {
    Point(Point<B>),
    Line(Point<B>, Point<B>),
}

impl<B: Base> Constructor<B> {
    /// The point `x` on Ray(a,b) with `ax = cd`: extend `ba` past `a` by `cd`
    /// and reflect the result in `a`.
    pub fn lay_off(&mut self, a: &Point<B>, b: &Point<B>, c: &Point<B>, d: &Point<B>) -> CResult<Point<B>> {
        require(self.plane.distinct(a, b), ErrorKind::NotDistinct, "lay_off", "a#b")?;
        let x = self.nested(|k| {
            let e = k.ext(b, a, c, d, None)?;
            Ok(e.reflect_in(a))
        })?;
        let pl = self.plane;
        require(
            pl.on_ray(a, b, &x) && pl.congruent(a, &x, c, d),
            ErrorKind::PostconditionFailed,
            "lay_off",
            "x on Ray(a,b) ∧ ax=cd",
        )?;
        self.record("lay_off", &[a, b, c, d], &[&x], vec![Mark::Segment(a.clone(), x.clone())]);
        Ok(x)
    }

    /// Apex of the equilateral triangle on `ab`, opposite to `side` when it
    /// is off the line, else left of the directed segment `ab`.
    pub fn equilateral(&mut self, a: &Point<B>, b: &Point<B>, side: Option<&Point<B>>) -> CResult<Point<B>> {
        require(self.plane.distinct(a, b), ErrorKind::NotDistinct, "equilateral", "a#b")?;
        let (left, right) = self.nested(|k| {
            let behind_a = k.ext(b, a, a, b, None)?;
            let beyond_b = k.ext(a, b, a, b, None)?;
            let c1 = CircleSpec::through(a, b);
            let c2 = CircleSpec::through(b, a);
            k.circle_circle(&c1, b, &behind_a, &c2, (a, &beyond_b), a)
        })?;
        let take_right = side.is_some_and(|s| Point::orient(a, b, s).is_positive());
        let apex = if take_right { right } else { left };
        let pl = self.plane;
        require(
            pl.congruent(a, &apex, a, b) && pl.congruent(b, &apex, a, b),
            ErrorKind::PostconditionFailed,
            "equilateral",
            "ap=bp=ab",
        )?;
        self.record(
            "equilateral",
            &[a, b],
            &[&apex],
            vec![Mark::Segment(a.clone(), apex.clone()), Mark::Segment(b.clone(), apex.clone())],
        );
        Ok(apex)
    }

    /// Midpoint of a positive segment by two guarded inner Pasch steps on the
    /// equilateral figure, each angle guard discharged by a tiling.
    pub fn midpoint_gupta(&mut self, a: &Point<B>, b: &Point<B>) -> CResult<Point<B>> {
        require(self.plane.distinct(a, b), ErrorKind::NotDistinct, "midpoint", "a#b")?;
        let m = self.nested(|k| k.gupta_body(a, b))?;
        let pl = self.plane;
        require(
            pl.between(a, &m, b) && pl.congruent(a, &m, &m, b),
            ErrorKind::PostconditionFailed,
            "midpoint",
            "B(a,m,b) ∧ am=mb",
        )?;
        self.record("midpoint", &[a, b], &[&m], Vec::new());
        Ok(m)
    }

    fn gupta_body(&mut self, a: &Point<B>, b: &Point<B>) -> CResult<Point<B>> {
        const OP: &str = "midpoint";
        let bad = |what: &str| ConstructionError::new(ErrorKind::PostconditionFailed, OP, what);
        let c = self.equilateral(a, b, None)?;
        let d = self.ext(&c, b, a, b, None)?;
        let e = self.ext(&c, a, a, b, None)?;

        // 0 < ACB < π: ACB is the 60° angle of the triangle, its supplement
        // ACP the 120° angle.
        let t60 = self.named_angle_tiling(AngleKind::Deg60, a, b, None)?;
        if *t60.get("g") != c || !self.plane.on_ray(&c, a, &e) || !self.plane.on_ray(&c, b, &d) {
            return Err(bad("60° tiling matches ACB"));
        }
        let p = b.reflect_in(&c);
        let t120 = self.named_angle_tiling(AngleKind::Deg120, &p, &c, Some(a))?;
        if t120.get("g") != a || t120.get("e") != b {
            return Err(bad("120° tiling matches PCA"));
        }
        let f = self.inner_pasch(&e, a, &c, &d, b)?;

        // 0 < CEB < π: CEB is the 30° angle with witness A, its supplement
        // QEB the 150° angle.
        let t30 = self.named_angle_tiling(AngleKind::Deg30, a, b, None)?;
        if *t30.get("c") != c || *t30.get("e") != e {
            return Err(bad("30° tiling matches CEB"));
        }
        let t150 = self.named_angle_tiling(AngleKind::Deg150, &e, a, Some(b))?;
        if !self.plane.on_ray(&e, b, t150.get("c")) || *t150.get("a") != a.reflect_in(&e) {
            return Err(bad("150° tiling matches QEB"));
        }
        self.inner_pasch(&c, a, &e, b, &f)
    }

    /// Perpendicular to line `uv` through `p`. The tip is placed opposite to
    /// `opposite` when given.
    pub fn perpendicular(
        &mut self,
        mode: PerpMode,
        p: &Point<B>,
        u: &Point<B>,
        v: &Point<B>,
        opposite: Option<&Point<B>>,
    ) -> CResult<Perpendicular<B>> {
        const OP: &str = "perpendicular";
        let pl = self.plane;
        require(pl.distinct(u, v), ErrorKind::NotDistinct, OP, "u#v")?;
        match mode {
            PerpMode::Erect => require(pl.collinear(u, v, p), ErrorKind::NotOnLine, OP, "L(u,v,p)")?,
            PerpMode::Drop => require(pl.distinct(p, &p.project(u, v)), ErrorKind::NotOffLine, OP, "p#foot")?,
            PerpMode::Uniform => {}
        }
        let (perp, x) = self.nested(|k| match mode {
            PerpMode::Erect => {
                let dv = v.sub(u);
                let (x, y) = (p.sub(&dv), p.add(&dv));
                let tip = k.equilateral(&x, &y, opposite)?;
                Ok((Perpendicular { foot: p.clone(), tip }, x))
            }
            PerpMode::Drop | PerpMode::Uniform => {
                let (x, y) = k.chord(p, u, v)?;
                let foot = k.midpoint_gupta(&x, &y)?;
                let tip = if mode == PerpMode::Drop { p.clone() } else { k.equilateral(&x, &y, opposite)? };
                Ok((Perpendicular { foot, tip }, x))
            }
        })?;
        require(
            pl.collinear(u, v, &perp.foot) && pl.right_angle(&perp.tip, &perp.foot, &x),
            ErrorKind::PostconditionFailed,
            OP,
            "L(u,v,foot) ∧ R(tip,foot,x)",
        )?;
        self.record(
            OP,
            &[p, u, v],
            &[&perp.foot, &perp.tip],
            vec![Mark::Segment(perp.foot.clone(), perp.tip.clone())],
        );
        Ok(perp)
    }

    /// The chord cut from line `uv` by a circle about `p` whose radius
    /// `|uv| + |pu| + |pv|` exceeds `|pu|`, so `u` is strictly inside.
    fn chord(&mut self, p: &Point<B>, u: &Point<B>, v: &Point<B>) -> CResult<(Point<B>, Point<B>)> {
        let r1 = self.ext(u, v, p, u, None)?;
        let r2 = self.ext(u, &r1, p, v, None)?;
        let radius2 = u.dist2(&r2);
        let dir = if u == p { v.sub(u) } else { u.sub(p) };
        let k = (&radius2 / &dir.norm2()).sqrt_nonneg().expect("positive ratio");
        let off = dir.scale(&k);
        let (w1, w2) = (p.sub(&off), p.add(&off));
        let circle = CircleSpec::new(p.clone(), u.clone(), r2);
        self.line_circle(true, u, v, &circle, (&w1, &w2))
    }

    /// Reflection of `p` in a point or a line, re-checked as an isometric
    /// involution.
    pub fn reflect(&mut self, p: &Point<B>, datum: &ReflectDatum<B>) -> CResult<Point<B>> {
        const OP: &str = "reflect";
        let pl = self.plane;
        let (r, fixed): (Point<B>, Vec<&Point<B>>) = match datum {
            ReflectDatum::Point(c) => (p.reflect_in(c), vec![c]),
            ReflectDatum::Line(u, v) => {
                require(pl.distinct(u, v), ErrorKind::NotDistinct, OP, "u#v")?;
                (p.reflect_in(&p.project(u, v)), vec![u, v])
            }
        };
        let back = match datum {
            ReflectDatum::Point(c) => r.reflect_in(c),
            ReflectDatum::Line(u, v) => r.reflect_in(&r.project(u, v)),
        };
        let iso = fixed.iter().all(|f| pl.congruent(p, f, &r, f));
        require(back == *p && iso, ErrorKind::PostconditionFailed, OP, "involution ∧ isometry")?;
        let mut inputs = vec![p];
        inputs.extend(fixed);
        self.record(OP, &inputs, &[&r], vec![Mark::Segment(p.clone(), r.clone())]);
        Ok(r)
    }

    /// Copies angle `abc` to vertex `p` with one arm along Ray(p,s) and the
    /// other on the side of line `ps` away from `q`. Returns `(a', c')`.
    pub fn angle_copy(
        &mut self,
        a: &Point<B>,
        b: &Point<B>,
        c: &Point<B>,
        p: &Point<B>,
        s: &Point<B>,
        q: &Point<B>,
    ) -> CResult<(Point<B>, Point<B>)> {
        const OP: &str = "angle_copy";
        let pl = self.plane;
        require(pl.distinct(p, s), ErrorKind::NotDistinct, OP, "p#s")?;
        require(pl.distinct(a, b), ErrorKind::NotDistinct, OP, "a#b")?;
        require(pl.distinct(c, b), ErrorKind::NotDistinct, OP, "c#b")?;
        require(pl.distinct(q, &q.project(p, s)), ErrorKind::NotOffLine, OP, "q off line ps")?;
        let cp = self.nested(|k| k.lay_off(p, s, b, c))?;
        // foot of a on line bc, transported as a signed offset and a height
        let t = a.sub(b).dot(&c.sub(b)) / b.dist2(c);
        let foot = p.lerp(&cp, &t);
        let h2 = a.dist2(&a.project(b, c));
        let mut n = s.sub(p).perp();
        if n.dot(&q.sub(p)).is_positive() {
            n = n.neg();
        }
        let k = (&h2 / &n.norm2()).sqrt_nonneg().expect("non-negative height");
        let ap = foot.add(&n.scale(&k));
        let side_ok = h2.is_zero() || (Point::orient(p, s, &ap) * Point::orient(p, s, q)).is_negative();
        require(
            pl.angle_cong([&ap, p, &cp, a, b, c]) && pl.congruent(p, &ap, b, a) && pl.congruent(&ap, &cp, a, c) && side_ok,
            ErrorKind::PostconditionFailed,
            OP,
            "a'pc' = abc",
        )?;
        self.record(
            OP,
            &[a, b, c, p, s, q],
            &[&ap, &cp],
            vec![Mark::Segment(p.clone(), ap.clone()), Mark::Segment(p.clone(), cp.clone())],
        );
        Ok((ap, cp))
    }

    /// Bisector point of a positive angle: the midpoint of its apex witness.
    pub fn angle_bisect(&mut self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> CResult<Point<B>> {
        const OP: &str = "angle_bisect";
        let pl = self.plane;
        let (u, v) = match pl.apex_witness(a, b, c) {
            Ok(AngleWitness::Apex { u, v }) => (u, v),
            _ => return Err(ConstructionError::new(ErrorKind::AngleNotPositive, OP, "0<abc")),
        };
        let m = self.nested(|k| k.midpoint_gupta(&u, &v))?;
        require(
            pl.angle_cong([&u, b, &m, &m, b, &v]) && pl.distinct(b, &m),
            ErrorKind::PostconditionFailed,
            OP,
            "ubm = mbv ∧ b#m",
        )?;
        self.record(OP, &[a, b, c], &[&m], vec![Mark::Segment(b.clone(), m.clone())]);
        Ok(m)
    }

    /// The point where Ray(b,e) meets the crossbar `uv`, by two outer Pasch
    /// steps.
    #[allow(clippy::too_many_arguments)]
    pub fn crossbar_point(
        &mut self,
        a: &Point<B>,
        b: &Point<B>,
        c: &Point<B>,
        e: &Point<B>,
        u: &Point<B>,
        v: &Point<B>,
    ) -> CResult<Point<B>> {
        const OP: &str = "crossbar";
        let pl = self.plane;
        let pre = ErrorKind::PreconditionViolated;
        require(pl.proper_angle(a, b, c), pre, OP, "0<abc<π")?;
        require(pl.proper_angle(b, u, v), pre, OP, "0<buv<π")?;
        require(pl.between(a, e, c), pre, OP, "B(a,e,c)")?;
        require(pl.between(b, a, u), pre, OP, "B(b,a,u)")?;
        require(pl.between(b, c, v), pre, OP, "B(b,c,v)")?;
        let w = self.nested(|k| {
            let f = k.outer_pasch(a, e, c, b, v)?;
            k.outer_pasch(v, &f, a, b, u)
        })?;
        require(
            pl.between(u, &w, v) && pl.between(b, e, &w),
            ErrorKind::PostconditionFailed,
            OP,
            "B(u,w,v) ∧ B(b,e,w)",
        )?;
        self.record(OP, &[a, b, c, e, u, v], &[&w], vec![Mark::Segment(b.clone(), w.clone())]);
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, Rational};
    use crate::geometry::Pt;

    fn p(x: i64, y: i64) -> Pt {
        Pt::int(x, y)
    }

    fn two() -> C {
        C::from_int(2)
    }

    fn sqrt3() -> C {
        C::from_int(3).sqrt_nonneg().unwrap()
    }

    fn k() -> Constructor<Rational> {
        Constructor::classical()
    }

    #[test]
    fn lay_off_examples() {
        let mut k = k();
        assert_eq!(k.lay_off(&p(0, 0), &p(1, 0), &p(0, 0), &p(3, 4)).unwrap(), p(5, 0));
        assert_eq!(k.lay_off(&p(0, 0), &p(1, 0), &p(2, 2), &p(2, 2)).unwrap(), p(0, 0));
        assert_eq!(k.lay_off(&p(0, 0), &p(0, 0), &p(0, 0), &p(3, 4)).unwrap_err().kind, ErrorKind::NotDistinct);
    }

    #[test]
    fn equilateral_examples() {
        let mut k = k();
        assert_eq!(k.equilateral(&p(0, 0), &p(1, 0), None).unwrap(), Pt::new(C::ratio(1, 2), sqrt3() / two()));
        assert_eq!(k.equilateral(&p(0, 0), &p(2, 0), None).unwrap(), Pt::new(C::one(), sqrt3()));
        assert_eq!(k.equilateral(&p(0, 0), &p(2, 0), Some(&p(1, 1))).unwrap(), Pt::new(C::one(), -sqrt3()));
        assert_eq!(k.equilateral(&p(1, 0), &p(1, 0), None).unwrap_err().kind, ErrorKind::NotDistinct);
    }

    #[test]
    fn gupta_midpoints() {
        let mut k = k();
        assert_eq!(k.midpoint_gupta(&p(0, 0), &p(2, 0)).unwrap(), p(1, 0));
        assert_eq!(k.midpoint_gupta(&p(0, 0), &p(1, 1)).unwrap(), Pt::new(C::ratio(1, 2), C::ratio(1, 2)));
        assert_eq!(k.midpoint_gupta(&p(0, 0), &p(0, 0)).unwrap_err().kind, ErrorKind::NotDistinct);
        let top: Vec<_> = k.trace().iter().filter(|s| s.depth == 0).map(|s| s.op).collect();
        assert_eq!(top, ["midpoint", "midpoint"]);
    }

    #[test]
    fn gupta_intermediate_f() {
        let mut k = k();
        k.midpoint_gupta(&p(0, 0), &p(2, 0)).unwrap();
        let f = k.trace().iter().find(|s| s.op == "inner_pasch").unwrap().outputs[0].clone();
        assert_eq!(f, Pt::new(C::one(), -(sqrt3() / C::from_int(3))));
    }

    #[test]
    fn perpendicular_examples() {
        let mut k = k();
        let r = k.perpendicular(PerpMode::Uniform, &p(3, 5), &p(0, 0), &p(1, 0), None).unwrap();
        assert_eq!(r.foot, p(3, 0));
        let r = k.perpendicular(PerpMode::Erect, &p(0, 0), &p(0, 0), &p(1, 0), Some(&p(0, -1))).unwrap();
        assert_eq!(r.tip, Pt::new(C::zero(), sqrt3()));
        let e = k.perpendicular(PerpMode::Uniform, &p(3, 5), &p(1, 0), &p(1, 0), None).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotDistinct);
        let e = k.perpendicular(PerpMode::Erect, &p(3, 5), &p(0, 0), &p(1, 0), None).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotOnLine);
        let e = k.perpendicular(PerpMode::Drop, &p(3, 0), &p(0, 0), &p(1, 0), None).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotOffLine);
        let r = k.perpendicular(PerpMode::Drop, &p(3, 5), &p(0, 0), &p(1, 0), None).unwrap();
        assert_eq!((r.foot, r.tip), (p(3, 0), p(3, 5)));
        let r = k.perpendicular(PerpMode::Uniform, &p(2, 0), &p(0, 0), &p(1, 0), None).unwrap();
        assert_eq!(r.foot, p(2, 0));
    }

    #[test]
    fn reflect_examples() {
        let mut k = k();
        assert_eq!(k.reflect(&p(1, 1), &ReflectDatum::Point(p(0, 0))).unwrap(), p(-1, -1));
        assert_eq!(k.reflect(&p(2, 3), &ReflectDatum::Line(p(0, 0), p(1, 0))).unwrap(), p(2, -3));
        let e = k.reflect(&p(2, 3), &ReflectDatum::Line(p(1, 1), p(1, 1))).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotDistinct);
    }

    #[test]
    fn angle_copy_examples() {
        let mut k = k();
        let (ap, cp) = k.angle_copy(&p(1, 1), &p(0, 0), &p(2, 0), &p(10, 0), &p(11, 0), &p(10, 1)).unwrap();
        assert_eq!((ap, cp), (p(11, -1), p(12, 0)));
        let (ap, cp) = k.angle_copy(&p(1, 0), &p(0, 0), &p(0, 1), &p(5, 0), &p(6, 0), &p(4, 1)).unwrap();
        assert_eq!((ap, cp), (p(5, -1), p(6, 0)));
        let e = k.angle_copy(&p(1, 0), &p(0, 0), &p(0, 1), &p(5, 0), &p(5, 0), &p(4, 1)).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotDistinct);
    }

    #[test]
    fn bisect_examples() {
        let mut k = k();
        assert_eq!(k.angle_bisect(&p(1, 0), &p(0, 0), &p(0, 1)).unwrap(), Pt::new(C::ratio(1, 2), C::ratio(1, 2)));
        let c = Pt::new(C::ratio(1, 2), sqrt3() / two());
        assert_eq!(k.angle_bisect(&p(1, 0), &p(0, 0), &c).unwrap(), Pt::new(C::ratio(3, 4), sqrt3() / C::from_int(4)));
        let e = k.angle_bisect(&p(1, 0), &p(0, 0), &p(2, 0)).unwrap_err();
        assert_eq!(e.kind, ErrorKind::AngleNotPositive);
    }

    #[test]
    fn crossbar_examples() {
        let mut k = k();
        let h = C::ratio(1, 2);
        let w = k.crossbar_point(&p(1, 0), &p(0, 0), &p(0, 1), &Pt::new(h.clone(), h), &p(2, 0), &p(0, 2)).unwrap();
        assert_eq!(w, p(1, 1));
        let w = k
            .crossbar_point(&p(1, 0), &p(0, 0), &p(0, 2), &Pt::new(C::ratio(1, 2), C::one()), &p(3, 0), &p(0, 3))
            .unwrap();
        assert_eq!(w, p(1, 2));
        let e = k.crossbar_point(&p(1, 0), &p(0, 0), &p(0, 1), &p(2, 2), &p(2, 0), &p(0, 2)).unwrap_err();
        assert_eq!((e.kind, e.hypothesis.as_str()), (ErrorKind::PreconditionViolated, "B(a,e,c)"));
    }
}
