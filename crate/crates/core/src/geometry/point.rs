use std::fmt;

use crate::field::{Base, FieldElement, Rational, RatFunc};

/// Point of the plane F² over a tower field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point<B: Base> {
    pub x: FieldElement<B>,
    pub y: FieldElement<B>,
}

/// Point with constructible coordinates.
pub type Pt = Point<Rational>;
/// Point with non-Archimedean coordinates.
pub type NaPt = Point<RatFunc>;

impl<B: Base> Point<B> {
    pub fn new(x: FieldElement<B>, y: FieldElement<B>) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(FieldElement::from_int(x), FieldElement::from_int(y))
    }

    pub fn origin() -> Self {
        Point::int(0, 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &FieldElement<B>) -> Self {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Self {
        Point::new(-&self.x, -&self.y)
    }

    /// The vector rotated a quarter turn counterclockwise.
    pub fn perp(&self) -> Self {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn dot(&self, o: &Self) -> FieldElement<B> {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Self) -> FieldElement<B> {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> FieldElement<B> {
        self.dot(self)
    }

    /// Squared distance.
    pub fn dist2(&self, o: &Self) -> FieldElement<B> {
        self.sub(o).norm2()
    }

    /// `self + t·(o − self)`.
    pub fn lerp(&self, o: &Self, t: &FieldElement<B>) -> Self {
        self.add(&o.sub(self).scale(t))
    }

    /// Coordinate midpoint.
    pub fn midpoint(&self, o: &Self) -> Self {
        self.lerp(o, &FieldElement::ratio(1, 2))
    }

    /// Reflection of `self` in the point `c`.
    pub fn reflect_in(&self, c: &Self) -> Self {
        c.add(c).sub(self)
    }

    /// Orthogonal projection onto the line through `u` and `v` (`u ≠ v`).
    pub fn project(&self, u: &Self, v: &Self) -> Self {
        let d = v.sub(u);
        let t = self.sub(u).dot(&d) / d.norm2();
        u.lerp(v, &t)
    }

    /// Signed orientation of the triangle `a, b, c`.
    pub fn orient(a: &Self, b: &Self, c: &Self) -> FieldElement<B> {
        b.sub(a).cross(&c.sub(a))
    }

    /// Canonical text form `(x, y)`.
    pub fn render(&self) -> String {
        format!("({}, {})", self.x, self.y)
    }
}

impl<B: Base> fmt::Display for Point<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Intersection of the lines `p1p2` and `q1q2` by Cramer's rule; the
/// denominator is the cross product of the direction vectors.
pub fn line_intersection<B: Base>(
    p1: &Point<B>,
    p2: &Point<B>,
    q1: &Point<B>,
    q2: &Point<B>,
) -> Option<Point<B>> {
    let d1 = p2.sub(p1);
    let d2 = q2.sub(q1);
    let den = d1.cross(&d2);
    if den.is_zero() {
        return None;
    }
    let t = q1.sub(p1).cross(&d2) / den;
    Some(p1.lerp(p2, &t))
}
