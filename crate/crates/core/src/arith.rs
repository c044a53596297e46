//! Coordinates and field operations carried out geometrically on the x-axis
//! of a fixed frame.

use crate::construct::{require, CResult, CircleSpec, ConstructionError, Constructor, ErrorKind, PerpMode, ReflectDatum};
use crate::field::{Base, FieldElement};
use crate::geometry::{line_intersection, Plane, Point};

/// A point of the x-axis, identified with its abscissa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisPoint<B: Base> {
    pub p: Point<B>,
}

impl<B: Base> AxisPoint<B> {
    pub fn new(x: FieldElement<B>) -> Self {
        AxisPoint { p: Point::new(x, FieldElement::zero()) }
    }

    pub fn int(x: i64) -> Self {
        AxisPoint::new(FieldElement::from_int(x))
    }

    pub fn value(&self) -> &FieldElement<B> {
        &self.p.x
    }

    fn from_point(p: Point<B>) -> CResult<Self> {
        require(p.y.is_zero(), ErrorKind::PostconditionFailed, "axis", "y = 0")?;
        Ok(AxisPoint { p })
    }
}

/// Origin and unit points of two perpendicular axes.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateFrame<B: Base> {
    pub origin: Point<B>,
    pub unit_x: Point<B>,
    pub unit_y: Point<B>,
}

impl<B: Base> Default for CoordinateFrame<B> {
    fn default() -> Self {
        CoordinateFrame { origin: Point::int(0, 0), unit_x: Point::int(1, 0), unit_y: Point::int(0, 1) }
    }
}

impl<B: Base> CoordinateFrame<B> {
    /// `R(unit_x, origin, unit_y)` with equal unit lengths.
    pub fn is_valid(&self, plane: &Plane<B>) -> bool {
        plane.right_angle(&self.unit_x, &self.origin, &self.unit_y)
            && plane.congruent(&self.origin, &self.unit_x, &self.origin, &self.unit_y)
    }

    /// A second point of the bisector of the two positive half-axes.
    fn diagonal(&self) -> Point<B> {
        self.unit_x.add(&self.unit_y).sub(&self.origin)
    }

    /// The point `−1` of the x-axis.
    fn minus_one(&self) -> Point<B> {
        self.unit_x.reflect_in(&self.origin)
    }

    /// `B(x, 0, 1)`: the two-sides reading of `x < 0`.
    pub fn is_negative(&self, plane: &Plane<B>, x: &AxisPoint<B>) -> bool {
        plane.between(&x.p, &self.origin, &self.unit_x)
    }
}

impl<B: Base> Constructor<B> {
    /// Quarter turn clockwise about the origin: reflect in the diagonal,
    /// then in the x-axis.
    pub fn rotate_cw(&mut self, f: &CoordinateFrame<B>, p: &Point<B>) -> CResult<Point<B>> {
        let q = self.reflect(p, &ReflectDatum::Line(f.origin.clone(), f.diagonal()))?;
        self.reflect(&q, &ReflectDatum::Line(f.origin.clone(), f.unit_x.clone()))
    }

    /// Quarter turn counterclockwise: reflect in the x-axis, then in the
    /// diagonal.
    pub fn rotate_ccw(&mut self, f: &CoordinateFrame<B>, p: &Point<B>) -> CResult<Point<B>> {
        let q = self.reflect(p, &ReflectDatum::Line(f.origin.clone(), f.unit_x.clone()))?;
        self.reflect(&q, &ReflectDatum::Line(f.origin.clone(), f.diagonal()))
    }

    /// Feet of the perpendiculars to both axes, the second rotated onto the
    /// x-axis. The quadrilateral with the origin is checked to be a rectangle.
    pub fn coordinates(&mut self, f: &CoordinateFrame<B>, p: &Point<B>) -> CResult<(AxisPoint<B>, AxisPoint<B>)> {
        let px = self.perpendicular(PerpMode::Uniform, p, &f.origin, &f.unit_x, None)?.foot;
        let py = self.perpendicular(PerpMode::Uniform, p, &f.origin, &f.unit_y, None)?.foot;
        let pl = self.plane;
        let o = &f.origin;
        let sides = pl.congruent(o, &px, &py, p) && pl.congruent(o, &py, &px, p);
        let lambert = pl.right_angle(&f.unit_x, o, &f.unit_y)
            && (!(pl.right_angle(o, &px, p) && pl.right_angle(o, &py, p)) || pl.right_angle(&px, p, &py));
        require(sides && lambert, ErrorKind::PostconditionFailed, "coordinates", "Lambert rectangle")?;
        let y = self.rotate_cw(f, &py)?;
        Ok((AxisPoint::from_point(px)?, AxisPoint::from_point(y)?))
    }

    /// The point with the given coordinates: erect the perpendicular at `x`,
    /// rotate `y` onto the y-axis and take the foot from it.
    pub fn point_from_coords(&mut self, f: &CoordinateFrame<B>, x: &AxisPoint<B>, y: &AxisPoint<B>) -> CResult<Point<B>> {
        let up = self.perpendicular(PerpMode::Erect, &x.p, &f.origin, &f.unit_x, None)?.tip;
        let yy = self.rotate_ccw(f, &y.p)?;
        Ok(self.perpendicular(PerpMode::Uniform, &yy, &x.p, &up, None)?.foot)
    }

    /// `a + b`: with `P = (a,b)`, the foot on the diagonal is `((a+b)/2, (a+b)/2)`,
    /// its foot on the x-axis `k`, and the sum the reflection of the origin in `k`.
    pub fn geo_add(&mut self, f: &CoordinateFrame<B>, a: &AxisPoint<B>, b: &AxisPoint<B>) -> CResult<AxisPoint<B>> {
        let p = self.point_from_coords(f, a, b)?;
        let h = self.perpendicular(PerpMode::Uniform, &p, &f.origin, &f.diagonal(), None)?.foot;
        let k = self.perpendicular(PerpMode::Uniform, &h, &f.origin, &f.unit_x, None)?.foot;
        let s = self.reflect(&f.origin, &ReflectDatum::Point(k))?;
        AxisPoint::from_point(s)
    }

    /// `a · b` by the circle through `1` on the y-axis, `a` and `b`: it meets
    /// the y-axis again at `ab`, found with non-strict line-circle continuity.
    pub fn geo_mul(&mut self, f: &CoordinateFrame<B>, a: &AxisPoint<B>, b: &AxisPoint<B>) -> CResult<AxisPoint<B>> {
        const OP: &str = "geo_mul";
        let o = &f.origin;
        let y = &f.unit_y;
        let half = FieldElement::ratio(1, 2);
        let k = a.p.lerp(&b.p, &half);
        let kv = k.add(&y.sub(o));
        let ya = y.midpoint(&a.p);
        let yb = ya.add(&a.p.sub(y).perp());
        let c = line_intersection(&k, &kv, &ya, &yb)
            .ok_or_else(|| ConstructionError::new(ErrorKind::PostconditionFailed, OP, "center"))?;
        let pl = self.plane;
        require(
            pl.congruent(&c, y, &c, &a.p) && pl.congruent(&c, y, &c, &b.p),
            ErrorKind::PostconditionFailed,
            OP,
            "circle through 1, a, b",
        )?;
        let m = c.project(o, y);
        let dir = if c == m { y.sub(o) } else { m.sub(&c) };
        let r2 = c.dist2(y);
        let s = (&r2 / &dir.norm2()).sqrt_nonneg().expect("non-negative ratio");
        let (u, v) = (c.sub(&dir.scale(&s)), c.add(&dir.scale(&s)));
        let m2 = m.add(&y.sub(o));
        let circle = CircleSpec::through(&c, y);
        let (x1, x2) = self.line_circle(false, &m, &m2, &circle, (&u, &v))?;
        let prod = y.reflect_in(&m);
        require(prod == x1 || prod == x2, ErrorKind::PostconditionFailed, OP, "second meet on the y-axis")?;
        AxisPoint::from_point(self.rotate_cw(f, &prod)?)
    }

    /// `1/a`: the line from the origin through `(a, 1)` meets the vertical
    /// through `1` at `(1, 1/a)`.
    pub fn geo_inv(&mut self, f: &CoordinateFrame<B>, a: &AxisPoint<B>) -> CResult<AxisPoint<B>> {
        const OP: &str = "geo_inv";
        require(self.plane.distinct(&a.p, &f.origin), ErrorKind::NotDistinct, OP, "a#0")?;
        let one = AxisPoint { p: f.unit_x.clone() };
        let q = self.point_from_coords(f, a, &one)?;
        let up = self.perpendicular(PerpMode::Erect, &f.unit_x, &f.origin, &f.unit_x, None)?.tip;
        let x = line_intersection(&f.origin, &q, &f.unit_x, &up)
            .ok_or_else(|| ConstructionError::new(ErrorKind::NotDistinct, OP, "a#0"))?;
        let (_, r) = self.coordinates(f, &x)?;
        let check = self.geo_mul(f, a, &r)?;
        require(check.p == f.unit_x, ErrorKind::PostconditionFailed, OP, "a · (1/a) = 1")?;
        Ok(r)
    }

    /// `√a` by the circle on the diameter from `−1` to `a`, which meets the
    /// y-axis at `±√a`. Strict mode needs `a # 0` and uses strict continuity.
    pub fn geo_sqrt(&mut self, f: &CoordinateFrame<B>, a: &AxisPoint<B>, strict: bool) -> CResult<AxisPoint<B>> {
        const OP: &str = "geo_sqrt";
        require(!f.is_negative(&self.plane, a), ErrorKind::Negative, OP, "¬B(a,0,1)")?;
        if strict {
            require(self.plane.distinct(&a.p, &f.origin), ErrorKind::NotDistinct, OP, "a#0")?;
        }
        let u = f.minus_one();
        let c = self.midpoint_gupta(&u, &a.p)?;
        let circle = CircleSpec::through(&c, &a.p);
        let (_, top) = self
            .line_circle(strict, &f.origin, &f.unit_y, &circle, (&u, &a.p))
            .map_err(|e| if e.kind == ErrorKind::NotInside { ConstructionError::new(ErrorKind::Negative, OP, e.hypothesis) } else { e })?;
        let r = AxisPoint::from_point(self.rotate_cw(f, &top)?)?;
        require(r.value().square() == *a.value(), ErrorKind::PostconditionFailed, OP, "r² = a")?;
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, Rational};

    fn ax(n: i64) -> AxisPoint<Rational> {
        AxisPoint::int(n)
    }

    fn setup() -> (Constructor<Rational>, CoordinateFrame<Rational>) {
        (Constructor::classical(), CoordinateFrame::default())
    }

    #[test]
    fn coordinate_examples() {
        let (mut k, f) = setup();
        assert!(f.is_valid(&k.plane));
        assert_eq!(k.coordinates(&f, &Point::int(3, 4)).unwrap(), (ax(3), ax(4)));
        assert_eq!(k.coordinates(&f, &Point::int(0, 0)).unwrap(), (ax(0), ax(0)));
        assert_eq!(k.coordinates(&f, &Point::int(-2, 5)).unwrap(), (ax(-2), ax(5)));
        assert_eq!(k.point_from_coords(&f, &ax(3), &ax(4)).unwrap(), Point::int(3, 4));
        assert_eq!(k.point_from_coords(&f, &ax(0), &ax(0)).unwrap(), Point::int(0, 0));
    }

    #[test]
    fn rotations() {
        let (mut k, f) = setup();
        assert_eq!(k.rotate_cw(&f, &Point::int(2, 3)).unwrap(), Point::int(3, -2));
        assert_eq!(k.rotate_ccw(&f, &Point::int(2, 3)).unwrap(), Point::int(-3, 2));
    }

    #[test]
    fn add_and_mul() {
        let (mut k, f) = setup();
        assert_eq!(k.geo_add(&f, &ax(2), &ax(3)).unwrap(), ax(5));
        assert_eq!(k.geo_add(&f, &ax(-2), &ax(5)).unwrap(), ax(3));
        assert_eq!(k.geo_add(&f, &ax(0), &ax(7)).unwrap(), ax(7));
        assert_eq!(k.geo_mul(&f, &ax(2), &ax(3)).unwrap(), ax(6));
        assert_eq!(k.geo_mul(&f, &ax(-2), &ax(3)).unwrap(), ax(-6));
        assert_eq!(k.geo_mul(&f, &ax(1), &ax(-7)).unwrap(), ax(-7));
        assert_eq!(k.geo_mul(&f, &ax(0), &ax(5)).unwrap(), ax(0));
        assert_eq!(k.geo_mul(&f, &ax(3), &ax(-3)).unwrap(), ax(-9));
        assert_eq!(k.geo_mul(&f, &ax(4), &ax(4)).unwrap(), ax(16));
    }

    #[test]
    fn inverse_and_sqrt() {
        let (mut k, f) = setup();
        assert_eq!(k.geo_inv(&f, &ax(2)).unwrap(), AxisPoint::new(C::ratio(1, 2)));
        assert_eq!(k.geo_inv(&f, &ax(1)).unwrap(), ax(1));
        assert_eq!(k.geo_inv(&f, &ax(0)).unwrap_err().kind, ErrorKind::NotDistinct);
        assert_eq!(k.geo_sqrt(&f, &ax(4), true).unwrap(), ax(2));
        let r2 = k.geo_sqrt(&f, &ax(2), false).unwrap();
        assert_eq!(r2.value().square(), C::from_int(2));
        assert_eq!(k.geo_sqrt(&f, &ax(0), false).unwrap(), ax(0));
        assert_eq!(k.geo_sqrt(&f, &ax(0), true).unwrap_err().kind, ErrorKind::NotDistinct);
        assert_eq!(k.geo_sqrt(&f, &ax(-1), false).unwrap_err().kind, ErrorKind::Negative);
    }

    #[test]
    fn two_sides() {
        let (k, f) = setup();
        assert!(f.is_negative(&k.plane, &ax(-3)));
        assert!(!f.is_negative(&k.plane, &ax(0)));
        assert!(!f.is_negative(&k.plane, &ax(2)));
    }
}
