use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{require, CResult, Constructor, ErrorKind};
use crate::field::{Base, FieldElement};
use crate::geometry::{Plane, Point};

/// The angles named by the equilateral tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AngleKind {
    Deg60,
    Deg120,
    Deg30,
    Deg150,
}

impl AngleKind {
    pub const ALL: [AngleKind; 4] = [AngleKind::Deg60, AngleKind::Deg120, AngleKind::Deg30, AngleKind::Deg150];

    pub fn name(self) -> &'static str {
        match self {
            AngleKind::Deg60 => "deg60",
            AngleKind::Deg120 => "deg120",
            AngleKind::Deg30 => "deg30",
            AngleKind::Deg150 => "deg150",
        }
    }
}

impl fmt::Display for AngleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AngleKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        AngleKind::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

/// A relation between named points of a tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Between([&'static str; 3]),
    Cong([&'static str; 4]),
    Right([&'static str; 3]),
    Distinct([&'static str; 2]),
    PosAngle([&'static str; 3]),
    LtPi([&'static str; 3]),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Between([a, b, c]) => write!(f, "B({a},{b},{c})"),
            Relation::Cong([a, b, c, d]) => write!(f, "{a}{b}={c}{d}"),
            Relation::Right([a, b, c]) => write!(f, "R({a},{b},{c})"),
            Relation::Distinct([a, b]) => write!(f, "{a}#{b}"),
            Relation::PosAngle([a, b, c]) => write!(f, "0<{a}{b}{c}"),
            Relation::LtPi([a, b, c]) => write!(f, "{a}{b}{c}<π"),
        }
    }
}

/// The point set of a named-angle figure, with the relations that define it.
/// `angle` names the vertices of the named angle (vertex in the middle) and
/// `witness` the auxiliary point of its definition.
#[derive(Clone, Debug)]
pub struct Tiling<B: Base> {
    pub kind: AngleKind,
    pub points: Vec<(&'static str, Point<B>)>,
    pub angle: [&'static str; 3],
    pub witness: &'static str,
    pub relations: Vec<Relation>,
}

impl<B: Base> Tiling<B> {
    pub fn get(&self, name: &str) -> &Point<B> {
        &self.points.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no point {name}")).1
    }

    /// The named angle as points `(a, b, c)`, vertex `b`.
    pub fn angle_points(&self) -> [&Point<B>; 3] {
        self.angle.map(|n| self.get(n))
    }

    pub fn check(&self, plane: &Plane<B>, rel: &Relation) -> bool {
        let g = |n: &str| self.get(n);
        match *rel {
            Relation::Between([a, b, c]) => plane.between(g(a), g(b), g(c)),
            Relation::Cong([a, b, c, d]) => plane.congruent(g(a), g(b), g(c), g(d)),
            Relation::Right([a, b, c]) => plane.right_angle(g(a), g(b), g(c)),
            Relation::Distinct([a, b]) => plane.distinct(g(a), g(b)),
            Relation::PosAngle([a, b, c]) => plane.pos_angle(g(a), g(b), g(c)),
            Relation::LtPi([a, b, c]) => plane.angle_lt_pi(g(a), g(b), g(c)),
        }
    }

    /// The first relation that fails, if any.
    pub fn failing(&self, plane: &Plane<B>) -> Option<Relation> {
        self.relations.iter().find(|r| !self.check(plane, r)).copied()
    }
}

impl<B: Base> Constructor<B> {
    /// Builds the tiling for `kind` on the segment `ab`. When `toward` is
    /// given, the equilateral apex is placed on its side of line `ab`.
    pub fn named_angle_tiling(
        &mut self,
        kind: AngleKind,
        a: &Point<B>,
        b: &Point<B>,
        toward: Option<&Point<B>>,
    ) -> CResult<Tiling<B>> {
        require(self.plane.distinct(a, b), ErrorKind::NotDistinct, kind.name(), "a#b")?;
        let t = self.nested(|k| match kind {
            AngleKind::Deg60 => k.deg60(a, b, toward),
            AngleKind::Deg120 => k.deg120(a, b, toward),
            AngleKind::Deg30 => k.deg30(a, b, toward),
            AngleKind::Deg150 => k.deg150(a, b, toward),
        })?;
        if let Some(r) = t.failing(&self.plane) {
            return Err(super::ConstructionError::new(ErrorKind::PostconditionFailed, kind.name(), r.to_string()));
        }
        let pts: Vec<&Point<B>> = t.points.iter().map(|(_, p)| p).collect();
        self.record(kind.name(), &[a, b], &pts, Vec::new());
        Ok(t)
    }

    fn apex_toward(&mut self, a: &Point<B>, b: &Point<B>, toward: Option<&Point<B>>) -> CResult<Point<B>> {
        match toward {
            None => self.equilateral(a, b, None),
            Some(t) => {
                let flipped = t.reflect_in(&a.midpoint(b));
                self.equilateral(a, b, Some(&flipped))
            }
        }
    }

    fn deg60(&mut self, a: &Point<B>, b: &Point<B>, toward: Option<&Point<B>>) -> CResult<Tiling<B>> {
        let g = self.apex_toward(a, b, toward)?;
        let c1 = a.midpoint(b);
        let c2 = b.midpoint(&g);
        let c3 = g.midpoint(a);
        let third = FieldElement::ratio(1, 3);
        let c4 = a.add(b).add(&g).scale(&third);
        use Relation::*;
        Ok(Tiling {
            kind: AngleKind::Deg60,
            points: vec![("a", a.clone()), ("b", b.clone()), ("g", g), ("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)],
            angle: ["a", "g", "b"],
            witness: "c1",
            relations: vec![
                Cong(["a", "g", "g", "b"]),
                Cong(["a", "g", "a", "b"]),
                Distinct(["a", "b"]),
                Between(["a", "c1", "b"]),
                Between(["b", "c2", "g"]),
                Between(["g", "c3", "a"]),
                Between(["a", "c4", "c2"]),
                Between(["b", "c4", "c3"]),
                Between(["g", "c4", "c1"]),
                PosAngle(["a", "g", "b"]),
            ],
        })
    }

    fn deg120(&mut self, a: &Point<B>, c: &Point<B>, toward: Option<&Point<B>>) -> CResult<Tiling<B>> {
        let f = self.apex_toward(a, c, toward)?;
        let x = f.midpoint(c);
        let g = a.reflect_in(&x);
        let m = g.midpoint(c);
        let e = self.euclid5(&f, c, &g, a, &x, &m)?;
        use Relation::*;
        Ok(Tiling {
            kind: AngleKind::Deg120,
            points: vec![("a", a.clone()), ("c", c.clone()), ("f", f), ("x", x), ("g", g), ("m", m), ("e", e)],
            angle: ["a", "c", "g"],
            witness: "e",
            relations: vec![
                Between(["a", "x", "g"]),
                Between(["a", "c", "e"]),
                Between(["f", "m", "e"]),
                Cong(["a", "c", "c", "e"]),
                Cong(["c", "g", "c", "e"]),
                Cong(["g", "e", "c", "g"]),
                Distinct(["a", "g"]),
                PosAngle(["a", "c", "g"]),
                LtPi(["a", "c", "g"]),
            ],
        })
    }

    fn deg30(&mut self, a: &Point<B>, b: &Point<B>, toward: Option<&Point<B>>) -> CResult<Tiling<B>> {
        let c = self.apex_toward(a, b, toward)?;
        let e = self.ext(&c, a, a, b, None)?;
        use Relation::*;
        Ok(Tiling {
            kind: AngleKind::Deg30,
            points: vec![("a", a.clone()), ("b", b.clone()), ("c", c), ("e", e)],
            angle: ["c", "e", "b"],
            witness: "a",
            relations: vec![
                Between(["c", "a", "e"]),
                Cong(["c", "a", "b", "a"]),
                Cong(["c", "a", "a", "e"]),
                Distinct(["c", "b"]),
                Right(["c", "b", "e"]),
                PosAngle(["c", "e", "b"]),
            ],
        })
    }

    fn deg150(&mut self, b: &Point<B>, d: &Point<B>, toward: Option<&Point<B>>) -> CResult<Tiling<B>> {
        let f = self.apex_toward(b, d, toward)?;
        let n = d.midpoint(&f);
        let c = self.lay_off(b, &n, b, d)?;
        let a = d.reflect_in(b);
        let e = self.ext(&a, &c, &a, &c, None)?;
        let dp = self.lay_off(b, d, b, &n)?;
        let m = c.midpoint(b);
        use Relation::*;
        Ok(Tiling {
            kind: AngleKind::Deg150,
            points: vec![
                ("b", b.clone()),
                ("d", d.clone()),
                ("f", f),
                ("n", n),
                ("c", c),
                ("a", a),
                ("e", e),
                ("dp", dp),
                ("m", m),
            ],
            angle: ["a", "b", "c"],
            witness: "dp",
            relations: vec![
                Between(["a", "b", "dp"]),
                Between(["c", "m", "b"]),
                Cong(["c", "m", "dp", "m"]),
                Cong(["c", "m", "m", "b"]),
                Cong(["b", "a", "b", "c"]),
                Between(["a", "c", "e"]),
                Distinct(["c", "dp"]),
                PosAngle(["a", "b", "c"]),
                LtPi(["a", "b", "c"]),
            ],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, Rational};
    use crate::geometry::Pt;

    fn sqrt3() -> C {
        C::from_int(3).sqrt_nonneg().unwrap()
    }

    #[test]
    fn deg120_places_g() {
        let mut k = Constructor::<Rational>::classical();
        let t = k.named_angle_tiling(AngleKind::Deg120, &Pt::int(0, 0), &Pt::int(1, 0), None).unwrap();
        assert_eq!(t.get("g"), &Pt::new(C::ratio(3, 2), sqrt3() / C::from_int(2)));
        assert_eq!(t.get("e"), &Pt::int(2, 0));
        assert!(k.plane.between(t.get("a"), t.get("x"), t.get("g")));
    }

    #[test]
    fn deg60_and_deg30_and_deg150() {
        let mut k = Constructor::<Rational>::classical();
        let (a, b) = (Pt::int(0, 0), Pt::int(1, 0));
        for kind in AngleKind::ALL {
            let t = k.named_angle_tiling(kind, &a, &b, None).unwrap();
            assert!(t.failing(&k.plane).is_none(), "{kind}");
        }
        let t = k.named_angle_tiling(AngleKind::Deg60, &a, &b, None).unwrap();
        assert_eq!(t.get("g"), &Pt::new(C::ratio(1, 2), sqrt3() / C::from_int(2)));
    }

    #[test]
    fn toward_selects_side() {
        let mut k = Constructor::<Rational>::classical();
        let t = k.named_angle_tiling(AngleKind::Deg60, &Pt::int(0, 0), &Pt::int(1, 0), Some(&Pt::int(0, -5))).unwrap();
        assert!(t.get("g").y.is_negative());
    }

    #[test]
    fn degenerate_segment() {
        let mut k = Constructor::<Rational>::classical();
        let err = k.named_angle_tiling(AngleKind::Deg30, &Pt::int(1, 1), &Pt::int(1, 1), None).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NotDistinct);
    }
}
