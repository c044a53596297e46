use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Plane, Point};
use crate::field::{Base, FieldElement};

/// Which disjunct of `a # b` a witness realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistinctClause {
    /// `B(e, a, b)`
    OuterLeft,
    /// `B(a, e, b)`
    Inner,
    /// `B(a, b, e)`
    OuterRight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistinctWitness<B: Base> {
    pub e: Point<B>,
    pub clause: DistinctClause,
}

/// Vertex tag of a triangle `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vertex {
    A,
    B,
    C,
}

/// Evidence that an angle `abc` is positive.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleWitness<B: Base> {
    /// `u` on Ray(b,a), `v` on Ray(b,c), `bu = bv`, `u # v`.
    Apex { u: Point<B>, v: Point<B> },
    /// `d` is the reflection of `a` in `b` and `ac = dc`.
    Right { d: Point<B> },
    /// `copy = (p, b, r)` with `p` on Ray(b,a), `r` on Ray(b,c) and a right
    /// angle of triangle `p b r` at the tagged vertex.
    RightTriangle { copy: [Point<B>; 3], right_at: Vertex },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<B: Base> {
    Distinct(DistinctWitness<B>),
    Angle(AngleWitness<B>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<B: Base> {
    Holds(Option<Witness<B>>),
    Fails,
}

impl<B: Base> Outcome<B> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PredicateKind {
    /// `ab = cd`
    E,
    /// collinear
    L,
    /// strict betweenness
    B,
    /// non-strict betweenness
    T,
    Distinct,
    Ray,
    RightAngle,
    PosAngle,
    AngleLtPi,
    AngleCong,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 10] = [
        PredicateKind::E,
        PredicateKind::L,
        PredicateKind::B,
        PredicateKind::T,
        PredicateKind::Distinct,
        PredicateKind::Ray,
        PredicateKind::RightAngle,
        PredicateKind::PosAngle,
        PredicateKind::AngleLtPi,
        PredicateKind::AngleCong,
    ];

    pub fn arity(self) -> usize {
        match self {
            PredicateKind::E => 4,
            PredicateKind::Distinct => 2,
            PredicateKind::AngleCong => 6,
            _ => 3,
        }
    }

    /// Name used in scripts.
    pub fn name(self) -> &'static str {
        match self {
            PredicateKind::E => "cong",
            PredicateKind::L => "collinear",
            PredicateKind::B => "between",
            PredicateKind::T => "between_ns",
            PredicateKind::Distinct => "distinct",
            PredicateKind::Ray => "on_ray",
            PredicateKind::RightAngle => "right",
            PredicateKind::PosAngle => "pos_angle",
            PredicateKind::AngleLtPi => "lt_pi",
            PredicateKind::AngleCong => "angle_cong",
        }
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredicateKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        PredicateKind::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("{kind} takes {expected} points, got {got}")]
    ArityMismatch { kind: PredicateKind, expected: usize, got: usize },
    #[error("angle is not positive")]
    NotPositiveAngle,
}

impl<B: Base> Plane<B> {
    /// `L(a,b,c)`: zero cross product.
    pub fn collinear(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
        Point::orient(a, b, c).is_zero()
    }

    /// `ab = cd` via squared distances.
    pub fn congruent(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>, d: &Point<B>) -> bool {
        a.dist2(b) == c.dist2(d)
    }

    /// `a # b`: P of the squared distance.
    pub fn distinct(&self, a: &Point<B>, b: &Point<B>) -> bool {
        self.pos(&a.dist2(b))
    }

    /// Distinctness with the midpoint as inner witness.
    pub fn distinct_witness(&self, a: &Point<B>, b: &Point<B>) -> Option<DistinctWitness<B>> {
        self.distinct(a, b).then(|| DistinctWitness { e: a.midpoint(b), clause: DistinctClause::Inner })
    }

    /// Non-strict betweenness: collinear and `v` not outside segment `uw`.
    /// This is a negative formula, so it is read classically at every node.
    pub fn between_ns(&self, u: &Point<B>, v: &Point<B>, w: &Point<B>) -> bool {
        self.collinear(u, v, w) && v.sub(u).dot(&w.sub(v)).signum() != Ordering::Less
    }

    /// Strict betweenness: `T(u,v,w)` with both gaps positive.
    pub fn between(&self, u: &Point<B>, v: &Point<B>, w: &Point<B>) -> bool {
        self.between_ns(u, v, w) && self.distinct(u, v) && self.distinct(v, w)
    }

    /// `x` on Ray(a,b): `a # b` and `T(e,a,x)` with `e` the reflection of `b` in `a`.
    pub fn on_ray(&self, a: &Point<B>, b: &Point<B>, x: &Point<B>) -> bool {
        self.distinct(a, b) && self.between_ns(&b.reflect_in(a), a, x)
    }

    /// `R(a,b,c)`: with `d` the reflection of `a` in `b`, `ac = dc`,
    /// both legs positive.
    pub fn right_angle(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
        self.distinct(a, b) && self.distinct(c, b) && self.congruent(a, c, &a.reflect_in(b), c)
    }

    /// `0 < abc`: both legs positive and P(sin²) via the cross product.
    pub fn pos_angle(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
        if !(self.distinct(a, b) && self.distinct(c, b)) {
            return false;
        }
        let (u, v) = (a.sub(b), c.sub(b));
        let cr = u.cross(&v);
        self.pos(&(&cr * &cr / (u.norm2() * v.norm2())))
    }

    /// `abc < π`: the supplement `d b c`, `d` the reflection of `a` in `b`,
    /// is positive.
    pub fn angle_lt_pi(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
        self.pos_angle(&a.reflect_in(b), b, c)
    }

    /// `0 < abc < π`.
    pub fn proper_angle(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> bool {
        self.pos_angle(a, b, c) && self.angle_lt_pi(a, b, c)
    }

    /// `∠abc = ∠ABC`, comparing cosines exactly.
    pub fn angle_cong(&self, p: [&Point<B>; 6]) -> bool {
        let [a, b, c, a2, b2, c2] = p;
        if !(self.distinct(a, b) && self.distinct(c, b) && self.distinct(a2, b2) && self.distinct(c2, b2)) {
            return false;
        }
        let (u, v) = (a.sub(b), c.sub(b));
        let (u2, v2) = (a2.sub(b2), c2.sub(b2));
        let (d1, d2) = (u.dot(&v), u2.dot(&v2));
        d1.signum() == d2.signum() && &d1 * &d1 * u2.norm2() * v2.norm2() == &d2 * &d2 * u.norm2() * v.norm2()
    }

    /// Equal points on both rays at the distance `ba`.
    pub fn apex_witness(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> Result<AngleWitness<B>, GeometryError> {
        if !self.pos_angle(a, b, c) {
            return Err(GeometryError::NotPositiveAngle);
        }
        let v = lay_off_point(b, c, &b.dist2(a));
        Ok(AngleWitness::Apex { u: a.clone(), v })
    }

    /// Witness for `0 < abc`, preferring the right-angle clauses.
    pub fn pos_angle_witness(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>) -> Result<AngleWitness<B>, GeometryError> {
        if !self.pos_angle(a, b, c) {
            return Err(GeometryError::NotPositiveAngle);
        }
        if self.right_angle(a, b, c) {
            return Ok(AngleWitness::Right { d: a.reflect_in(b) });
        }
        let copy = [a.clone(), b.clone(), c.clone()];
        if self.right_angle(b, a, c) {
            return Ok(AngleWitness::RightTriangle { copy, right_at: Vertex::A });
        }
        if self.right_angle(b, c, a) {
            return Ok(AngleWitness::RightTriangle { copy, right_at: Vertex::C });
        }
        self.apex_witness(a, b, c)
    }

    /// Re-checks a distinctness witness for `a # b`.
    pub fn verify_distinct(&self, a: &Point<B>, b: &Point<B>, w: &DistinctWitness<B>) -> bool {
        match w.clause {
            DistinctClause::OuterLeft => self.between(&w.e, a, b),
            DistinctClause::Inner => self.between(a, &w.e, b),
            DistinctClause::OuterRight => self.between(a, b, &w.e),
        }
    }

    /// Re-checks an angle witness for `0 < abc`.
    pub fn verify_angle(&self, a: &Point<B>, b: &Point<B>, c: &Point<B>, w: &AngleWitness<B>) -> bool {
        match w {
            AngleWitness::Apex { u, v } => {
                self.on_ray(b, a, u) && self.on_ray(b, c, v) && self.congruent(b, u, b, v) && self.distinct(u, v)
            }
            AngleWitness::Right { d } => {
                *d == a.reflect_in(b)
                    && self.between(a, b, d)
                    && self.congruent(a, b, b, d)
                    && self.congruent(a, c, d, c)
                    && self.distinct(c, b)
            }
            AngleWitness::RightTriangle { copy: [p, q, r], right_at } => {
                q == b
                    && self.on_ray(b, a, p)
                    && self.on_ray(b, c, r)
                    && match right_at {
                        Vertex::A => self.right_angle(q, p, r),
                        Vertex::C => self.right_angle(q, r, p),
                        Vertex::B => self.right_angle(p, q, r),
                    }
            }
        }
    }

    /// Evaluates a relation, returning a witness for `Distinct` and `PosAngle`.
    pub fn eval(&self, kind: PredicateKind, args: &[Point<B>]) -> Result<Outcome<B>, GeometryError> {
        if args.len() != kind.arity() {
            return Err(GeometryError::ArityMismatch { kind, expected: kind.arity(), got: args.len() });
        }
        let a = args;
        let holds = |b: bool| if b { Outcome::Holds(None) } else { Outcome::Fails };
        Ok(match kind {
            PredicateKind::E => holds(self.congruent(&a[0], &a[1], &a[2], &a[3])),
            PredicateKind::L => holds(self.collinear(&a[0], &a[1], &a[2])),
            PredicateKind::B => holds(self.between(&a[0], &a[1], &a[2])),
            PredicateKind::T => holds(self.between_ns(&a[0], &a[1], &a[2])),
            PredicateKind::Ray => holds(self.on_ray(&a[0], &a[1], &a[2])),
            PredicateKind::RightAngle => holds(self.right_angle(&a[0], &a[1], &a[2])),
            PredicateKind::AngleLtPi => holds(self.angle_lt_pi(&a[0], &a[1], &a[2])),
            PredicateKind::AngleCong => holds(self.angle_cong([&a[0], &a[1], &a[2], &a[3], &a[4], &a[5]])),
            PredicateKind::Distinct => match self.distinct_witness(&a[0], &a[1]) {
                Some(w) => Outcome::Holds(Some(Witness::Distinct(w))),
                None => Outcome::Fails,
            },
            PredicateKind::PosAngle => match self.pos_angle_witness(&a[0], &a[1], &a[2]) {
                Ok(w) => Outcome::Holds(Some(Witness::Angle(w))),
                Err(_) => Outcome::Fails,
            },
        })
    }
}

/// The point on Ray(a,b) at squared distance `len2` from `a` (`a ≠ b`).
pub(crate) fn lay_off_point<B: Base>(a: &Point<B>, b: &Point<B>, len2: &FieldElement<B>) -> Point<B> {
    let k = (len2 / &a.dist2(b)).sqrt_nonneg().expect("squared lengths are non-negative");
    a.lerp(b, &k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, NaNumber};
    use crate::geometry::{NaPt, Pt};

    fn p(x: i64, y: i64) -> Pt {
        Pt::int(x, y)
    }

    #[test]
    fn basic_relations() {
        let pl = Plane::classical();
        assert!(pl.between(&p(0, 0), &p(1, 0), &p(3, 0)));
        assert!(!pl.between(&p(0, 0), &p(0, 0), &p(3, 0)));
        assert!(pl.between_ns(&p(0, 0), &p(0, 0), &p(3, 0)));
        assert!(pl.congruent(&p(0, 0), &p(3, 4), &p(0, 0), &p(5, 0)));
        assert!(pl.on_ray(&p(0, 0), &p(1, 0), &p(7, 0)));
        assert!(pl.on_ray(&p(0, 0), &p(1, 0), &p(0, 0)));
        assert!(!pl.on_ray(&p(0, 0), &p(1, 0), &p(-1, 0)));
    }

    #[test]
    fn distinct_witness_is_midpoint() {
        let pl = Plane::classical();
        let w = pl.distinct_witness(&p(0, 0), &p(2, 0)).unwrap();
        assert_eq!(w.e, p(1, 0));
        assert_eq!(w.clause, DistinctClause::Inner);
        assert!(pl.verify_distinct(&p(0, 0), &p(2, 0), &w));
    }

    #[test]
    fn infinitesimal_separation_at_root() {
        let e = NaNumber::eps().unwrap();
        let a = NaPt::origin();
        let b = NaPt::new(e, NaNumber::zero());
        assert!(!Plane::root().distinct(&a, &b));
        assert!(Plane::classical().distinct(&a, &b));
    }

    #[test]
    fn right_angle_witness() {
        let pl = Plane::classical();
        let w = pl.pos_angle_witness(&p(1, 0), &p(0, 0), &p(0, 1)).unwrap();
        assert_eq!(w, AngleWitness::Right { d: p(-1, 0) });
        assert!(pl.verify_angle(&p(1, 0), &p(0, 0), &p(0, 1), &w));
    }

    #[test]
    fn apex_examples() {
        let pl = Plane::classical();
        let w = pl.apex_witness(&p(1, 0), &p(0, 0), &p(0, 1)).unwrap();
        assert_eq!(w, AngleWitness::Apex { u: p(1, 0), v: p(0, 1) });
        let w = pl.apex_witness(&p(1, 0), &p(0, 0), &p(1, 1)).unwrap();
        let h = C::from_int(2).sqrt_nonneg().unwrap() / C::from_int(2);
        assert_eq!(w, AngleWitness::Apex { u: p(1, 0), v: Pt::new(h.clone(), h) });
        assert!(pl.verify_angle(&p(1, 0), &p(0, 0), &p(1, 1), &w));
        assert_eq!(pl.apex_witness(&p(1, 0), &p(0, 0), &p(2, 0)), Err(GeometryError::NotPositiveAngle));
    }

    #[test]
    fn arity_is_checked() {
        let pl = Plane::<crate::field::Rational>::classical();
        assert!(matches!(pl.eval(PredicateKind::B, &[p(0, 0)]), Err(GeometryError::ArityMismatch { .. })));
    }
}
