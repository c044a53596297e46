//! Quadratic-extension towers `a + b·√r` over a base field.
//!
//! Every extension node belongs to a [`Level`], a chain of adjoined square
//! roots. Elements of unrelated towers are merged by re-deriving the right
//! operand's radicands inside the left operand's tower.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Base, FieldError, Rational, RatFunc};
use num::ToPrimitive;

/// One field in a tower: `parent(√radicand)`.
pub struct Level<B: Base> {
    parent: Option<Arc<Level<B>>>,
    radicand: FieldElement<B>,
    depth: usize,
}

type LevelRef<B> = Option<Arc<Level<B>>>;

impl<B: Base> Level<B> {
    pub fn parent(&self) -> Option<&Arc<Level<B>>> {
        self.parent.as_ref()
    }
    pub fn radicand(&self) -> &FieldElement<B> {
        &self.radicand
    }
    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl<B: Base> fmt::Debug for Level<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level(depth={}, sqrt({}))", self.depth, self.radicand)
    }
}

/// Extension node `a + b·√r`, where `r` is the radicand of `level`.
pub struct Ext<B: Base> {
    pub a: FieldElement<B>,
    pub b: FieldElement<B>,
    pub level: Arc<Level<B>>,
}

/// Exact element of a quadratic-extension tower over `B`.
///
/// Representations are canonical in the sense that an extension node never
/// has `b = 0`, so an element is zero exactly when it is a zero base value.
pub enum FieldElement<B: Base> {
    Base(B),
    Ext(Arc<Ext<B>>),
}

impl<B: Base> Clone for FieldElement<B> {
    fn clone(&self) -> Self {
        match self {
            FieldElement::Base(b) => FieldElement::Base(b.clone()),
            FieldElement::Ext(e) => FieldElement::Ext(e.clone()),
        }
    }
}

fn depth_of<B: Base>(l: &LevelRef<B>) -> usize {
    l.as_ref().map_or(0, |l| l.depth)
}

fn same_level<B: Base>(x: &LevelRef<B>, y: &LevelRef<B>) -> bool {
    match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => {
            Arc::ptr_eq(x, y)
                || (x.depth == y.depth
                    && same_level(&x.parent, &y.parent)
                    && x.radicand == y.radicand)
        }
        _ => false,
    }
}

/// Whether `anc` is `l` or one of its ancestors.
fn is_ancestor<B: Base>(anc: &LevelRef<B>, l: &LevelRef<B>) -> bool {
    let d = depth_of(anc);
    let mut cur = l.clone();
    while depth_of(&cur) > d {
        cur = cur.unwrap().parent.clone();
    }
    same_level(anc, &cur)
}

impl<B: Base> FieldElement<B> {
    pub fn zero() -> Self {
        FieldElement::Base(B::zero())
    }

    pub fn one() -> Self {
        FieldElement::Base(B::one())
    }

    pub fn from_base(b: B) -> Self {
        FieldElement::Base(b)
    }

    pub fn from_rational(q: &Rational) -> Self {
        FieldElement::Base(B::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// `n / d` as a base element.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n.into(), d.into()))
    }

    /// ε, when the base field has one.
    pub fn eps() -> Option<Self> {
        B::eps().map(FieldElement::Base)
    }

    pub fn level(&self) -> Option<&Arc<Level<B>>> {
        match self {
            FieldElement::Base(_) => None,
            FieldElement::Ext(e) => Some(&e.level),
        }
    }

    fn level_ref(&self) -> LevelRef<B> {
        self.level().cloned()
    }

    /// Number of square roots in the tower this element lives in.
    pub fn depth(&self) -> usize {
        self.level().map_or(0, |l| l.depth)
    }

    pub fn as_base(&self) -> Option<&B> {
        match self {
            FieldElement::Base(b) => Some(b),
            FieldElement::Ext(_) => None,
        }
    }

    /// `(a, b, r)` for an extension node `a + b·√r`.
    pub fn as_ext(&self) -> Option<(&FieldElement<B>, &FieldElement<B>, &FieldElement<B>)> {
        match self {
            FieldElement::Base(_) => None,
            FieldElement::Ext(e) => Some((&e.a, &e.b, &e.level.radicand)),
        }
    }

    /// Floating-point value of the standard part, for display only.
    pub fn approx(&self) -> Option<f64> {
        match self {
            FieldElement::Base(b) => b.standard_part()?.to_f64(),
            FieldElement::Ext(e) => Some(e.a.approx()? + e.b.approx()? * e.level.radicand.approx()?.max(0.0).sqrt()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Base(b) => b.is_zero(),
            FieldElement::Ext(_) => false,
        }
    }

    fn make(a: Self, b: Self, level: &Arc<Level<B>>) -> Self {
        if b.is_zero() {
            a
        } else {
            FieldElement::Ext(Arc::new(Ext { a, b, level: level.clone() }))
        }
    }

    /// Components of `self` relative to `level`, for an element living in
    /// `level` or below it.
    fn split(&self, level: &Arc<Level<B>>) -> (Self, Self) {
        match self {
            FieldElement::Ext(e) if same_level(&Some(e.level.clone()), &Some(level.clone())) => {
                (e.a.clone(), e.b.clone())
            }
            _ => (self.clone(), Self::zero()),
        }
    }

    /// Brings both operands into one tower; returns the common level.
    fn align(&self, o: &Self) -> (Self, Self, LevelRef<B>) {
        let (lx, ly) = (self.level_ref(), o.level_ref());
        if is_ancestor(&ly, &lx) {
            (self.clone(), o.clone(), lx)
        } else if is_ancestor(&lx, &ly) {
            (self.clone(), o.clone(), ly)
        } else {
            let (o2, t) = o.embed(&lx);
            (self.clone(), o2, t)
        }
    }

    /// Re-derives `self` inside the tower `target`, extending it by the
    /// radicands that are not already squares there.
    fn embed(&self, target: &LevelRef<B>) -> (Self, LevelRef<B>) {
        let FieldElement::Ext(e) = self else {
            return (self.clone(), target.clone());
        };
        if is_ancestor(&Some(e.level.clone()), target) {
            return (self.clone(), target.clone());
        }
        let (r, t1) = e.level.radicand.embed(target);
        let (a, t2) = e.a.embed(&t1);
        let (b, t3) = e.b.embed(&t2);
        match r.sqrt_in(&t3) {
            Some(s) => (&a + &(&b * &s), t3),
            None => {
                let lvl = Arc::new(Level { parent: t3.clone(), radicand: r, depth: depth_of(&t3) + 1 });
                (Self::make(a, b, &lvl), Some(lvl))
            }
        }
    }

    /// Square root inside the field `level`, if one exists there.
    fn sqrt_in(&self, level: &LevelRef<B>) -> Option<Self> {
        let Some(l) = level else {
            return self.as_base().and_then(|b| b.try_sqrt()).map(FieldElement::Base);
        };
        let (a, b) = self.split(l);
        let k = &l.parent;
        let r = &l.radicand;
        if b.is_zero() {
            if let Some(s) = a.sqrt_in(k) {
                return Some(s);
            }
            let c = (&a / r).sqrt_in(k)?;
            return Some(Self::make(Self::zero(), c, l));
        }
        let n = (&(&a * &a) - &(&(&b * &b) * r)).sqrt_in(k)?;
        let half = Self::ratio(1, 2);
        for cand in [&(&a + &n) * &half, &(&a - &n) * &half] {
            if let Some(u) = cand.sqrt_in(k) {
                if !u.is_zero() {
                    let v = &b / &(&u + &u);
                    return Some(Self::make(u, v, l));
                }
            }
        }
        None
    }

    /// Sign relative to zero.
    pub fn signum(&self) -> Ordering {
        match self {
            FieldElement::Base(b) => b.signum(),
            FieldElement::Ext(e) => {
                let sa = e.a.signum();
                let sb = e.b.signum();
                if sb == Ordering::Equal {
                    return sa;
                }
                if sa == Ordering::Equal || sa == sb {
                    return sb;
                }
                let a2 = &e.a * &e.a;
                let b2r = &(&e.b * &e.b) * &e.level.radicand;
                match (&a2 - &b2r).signum() {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Base(b) => b.inv().map(FieldElement::Base).ok_or(FieldError::DivisionByZero),
            FieldElement::Ext(e) => {
                let n = &(&e.a * &e.a) - &(&(&e.b * &e.b) * &e.level.radicand);
                let ni = n.inv()?;
                Ok(Self::make(&e.a * &ni, -&(&e.b * &ni), &e.level))
            }
        }
    }

    /// Inverse of a positive element; the result is positive.
    pub fn inv_positive(&self) -> Result<Self, FieldError> {
        if !self.is_positive() {
            return Err(FieldError::NotPositive);
        }
        self.inv()
    }

    /// Non-negative square root of a non-negative element. Reuses the
    /// element's own tower when the root already lives there.
    pub fn sqrt_nonneg(&self) -> Result<Self, FieldError> {
        match self.signum() {
            Ordering::Less => return Err(FieldError::Negative),
            Ordering::Equal => return Ok(Self::zero()),
            Ordering::Greater => {}
        }
        let l = self.level_ref();
        if let Some(s) = self.sqrt_in(&l) {
            return Ok(s.abs());
        }
        let (scale, r) = match self {
            FieldElement::Base(b) => {
                let (s, r) = b.split_radicand();
                (FieldElement::Base(s), FieldElement::Base(r))
            }
            _ => (Self::one(), self.clone()),
        };
        let lvl = Arc::new(Level { parent: l.clone(), radicand: r, depth: depth_of(&l) + 1 });
        Ok(Self::make(Self::zero(), scale.abs(), &lvl))
    }

    /// Square of the element.
    pub fn square(&self) -> Self {
        self * self
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self * &o.inv()?)
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b { a.clone() } else { b.clone() }
    }

    /// Canonical text form, e.g. `5/6` or `1+1*sqrt(2)`.
    pub fn render(&self) -> String {
        match self {
            FieldElement::Base(b) => b.render(),
            FieldElement::Ext(e) => {
                let a = wrap(e.a.render());
                let (op, bmag) = if e.b.is_negative() { ('-', -&e.b) } else { ('+', e.b.clone()) };
                format!("{a}{op}{}*sqrt({})", wrap(bmag.render()), e.level.radicand.render())
            }
        }
    }
}

fn wrap(s: String) -> String {
    if s.contains('+') || s[1..].contains('-') {
        format!("({s})")
    } else {
        s
    }
}

/// Dominant term `coeff · ε^valuation` of a non-Archimedean element.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingTerm {
    pub valuation: Rational,
    pub coeff: FieldElement<Rational>,
}

impl FieldElement<RatFunc> {
    /// The dominant term of the ε-expansion; `None` for zero.
    pub fn leading_term(&self) -> Option<LeadingTerm> {
        match self {
            FieldElement::Base(f) => Some(LeadingTerm {
                valuation: Rational::from_integer(f.valuation()?.into()),
                coeff: FieldElement::Base(f.leading_coeff()?),
            }),
            FieldElement::Ext(e) => {
                let r = e.level.radicand.leading_term().expect("radicand is positive");
                let sqrt_r = LeadingTerm {
                    valuation: &r.valuation / Rational::from_integer(2.into()),
                    coeff: r.coeff.sqrt_nonneg().expect("radicand is positive"),
                };
                let lb = e.b.leading_term().expect("extension has b != 0");
                let tb = LeadingTerm { valuation: &lb.valuation + &sqrt_r.valuation, coeff: &lb.coeff * &sqrt_r.coeff };
                let Some(ta) = e.a.leading_term() else {
                    return Some(tb);
                };
                match ta.valuation.cmp(&tb.valuation) {
                    Ordering::Less => Some(ta),
                    Ordering::Greater => Some(tb),
                    Ordering::Equal => {
                        let c = &ta.coeff + &tb.coeff;
                        if !c.is_zero() {
                            return Some(LeadingTerm { valuation: ta.valuation, coeff: c });
                        }
                        // a and b√r cancel: x = (a² - b²r) / (a - b√r).
                        let n = &(&e.a * &e.a) - &(&(&e.b * &e.b) * &e.level.radicand);
                        let ln = n.leading_term().expect("norm of a nonzero element");
                        Some(LeadingTerm {
                            valuation: &ln.valuation - &ta.valuation,
                            coeff: &ln.coeff / &(&ta.coeff + &ta.coeff),
                        })
                    }
                }
            }
        }
    }
}

impl<B: Base> PartialEq for FieldElement<B> {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (FieldElement::Base(x), FieldElement::Base(y)) => x == y,
            _ => (self - o).is_zero(),
        }
    }
}

impl<B: Base> Eq for FieldElement<B> {}

impl<B: Base> PartialOrd for FieldElement<B> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<B: Base> Ord for FieldElement<B> {
    fn cmp(&self, o: &Self) -> Ordering {
        (self - o).signum()
    }
}

impl<B: Base> fmt::Display for FieldElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<B: Base> fmt::Debug for FieldElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn add_impl<B: Base>(x: &FieldElement<B>, y: &FieldElement<B>) -> FieldElement<B> {
    if let (FieldElement::Base(p), FieldElement::Base(q)) = (x, y) {
        return FieldElement::Base(p.add(q));
    }
    let (x, y, l) = x.align(y);
    let l = l.expect("an extension operand");
    let (xa, xb) = x.split(&l);
    let (ya, yb) = y.split(&l);
    FieldElement::make(&xa + &ya, &xb + &yb, &l)
}

fn mul_impl<B: Base>(x: &FieldElement<B>, y: &FieldElement<B>) -> FieldElement<B> {
    if let (FieldElement::Base(p), FieldElement::Base(q)) = (x, y) {
        return FieldElement::Base(p.mul(q));
    }
    let (x, y, l) = x.align(y);
    let l = l.expect("an extension operand");
    let (xa, xb) = x.split(&l);
    let (ya, yb) = y.split(&l);
    if xb.is_zero() {
        return FieldElement::make(&xa * &ya, &xa * &yb, &l);
    }
    if yb.is_zero() {
        return FieldElement::make(&xa * &ya, &xb * &ya, &l);
    }
    let a = &(&xa * &ya) + &(&(&xb * &yb) * &l.radicand);
    let b = &(&xa * &yb) + &(&xb * &ya);
    FieldElement::make(a, b, &l)
}

fn neg_impl<B: Base>(x: &FieldElement<B>) -> FieldElement<B> {
    match x {
        FieldElement::Base(b) => FieldElement::Base(b.neg()),
        FieldElement::Ext(e) => FieldElement::Ext(Arc::new(Ext { a: -&e.a, b: -&e.b, level: e.level.clone() })),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl<B: Base> $tr<&FieldElement<B>> for &FieldElement<B> {
            type Output = FieldElement<B>;
            fn $m(self, o: &FieldElement<B>) -> FieldElement<B> {
                $f(self, o)
            }
        }
        impl<B: Base> $tr<FieldElement<B>> for FieldElement<B> {
            type Output = FieldElement<B>;
            fn $m(self, o: FieldElement<B>) -> FieldElement<B> {
                $f(&self, &o)
            }
        }
        impl<B: Base> $tr<&FieldElement<B>> for FieldElement<B> {
            type Output = FieldElement<B>;
            fn $m(self, o: &FieldElement<B>) -> FieldElement<B> {
                $f(&self, o)
            }
        }
        impl<B: Base> $tr<FieldElement<B>> for &FieldElement<B> {
            type Output = FieldElement<B>;
            fn $m(self, o: FieldElement<B>) -> FieldElement<B> {
                $f(self, &o)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Mul, mul, mul_impl);
binop!(Sub, sub, |x: &FieldElement<B>, y: &FieldElement<B>| add_impl(x, &neg_impl(y)));
binop!(Div, div, |x: &FieldElement<B>, y: &FieldElement<B>| x
    .checked_div(y)
    .expect("division by zero"));

impl<B: Base> Neg for &FieldElement<B> {
    type Output = FieldElement<B>;
    fn neg(self) -> FieldElement<B> {
        neg_impl(self)
    }
}

impl<B: Base> Neg for FieldElement<B> {
    type Output = FieldElement<B>;
    fn neg(self) -> FieldElement<B> {
        neg_impl(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Constructible as C;

    fn sqrt(n: i64) -> C {
        C::from_int(n).sqrt_nonneg().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(C::ratio(1, 2) + C::ratio(1, 3), C::ratio(5, 6));
        let two = sqrt(2) * sqrt(2);
        assert!(two.as_base().is_some());
        assert_eq!(two, C::from_int(2));
        let p = (C::one() + sqrt(2)) * (C::one() - sqrt(2));
        assert_eq!(p, C::from_int(-1));
    }

    #[test]
    fn compare_examples() {
        assert!(sqrt(2) < C::ratio(3, 2));
        let lhs = sqrt(2) + sqrt(3);
        let rhs = (C::from_int(5) + C::from_int(2) * sqrt(6)).sqrt_nonneg().unwrap();
        assert_eq!(lhs.cmp(&rhs), Ordering::Equal);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(C::from_int(4).inv_positive().unwrap(), C::ratio(1, 4));
        assert_eq!(sqrt(2).inv_positive().unwrap(), sqrt(2) * C::ratio(1, 2));
        assert_eq!(C::from_int(-1).inv_positive(), Err(FieldError::NotPositive));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(C::ratio(9, 4).sqrt_nonneg().unwrap(), C::ratio(3, 2));
        let r2 = sqrt(2);
        assert!(r2.as_ext().is_some());
        assert_eq!(r2.square(), C::from_int(2));
        assert_eq!(C::from_int(-1).sqrt_nonneg(), Err(FieldError::Negative));
    }

    #[test]
    fn unrelated_towers_merge() {
        // √3 inside Q(√(3/4)) and Q(√2)(√3) vs Q(√6)
        let a = C::ratio(3, 4).sqrt_nonneg().unwrap();
        assert_eq!(&a + &a, sqrt(3));
        assert_eq!(sqrt(2) * sqrt(3), sqrt(6));
        assert_eq!(sqrt(6) * sqrt(2), C::from_int(2) * sqrt(3));
    }

    #[test]
    fn nested_sqrt_simplifies() {
        // √(3 + 2√2) = 1 + √2
        let x = (C::from_int(3) + C::from_int(2) * sqrt(2)).sqrt_nonneg().unwrap();
        assert_eq!(x.depth(), 1);
        assert_eq!(x, C::one() + sqrt(2));
    }

    #[test]
    fn render_forms() {
        assert_eq!(C::ratio(5, 6).render(), "5/6");
        assert_eq!((C::one() + sqrt(2)).render(), "1+1*sqrt(2)");
        assert_eq!((C::one() - sqrt(2)).render(), "1-1*sqrt(2)");
    }

    #[test]
    fn leading_terms() {
        let e = crate::field::NaNumber::eps().unwrap();
        let lt = e.leading_term().unwrap();
        assert_eq!(lt.valuation, Rational::from_integer(1.into()));
        let s = e.sqrt_nonneg().unwrap();
        assert_eq!(s.leading_term().unwrap().valuation, Rational::new(1.into(), 2.into()));
        // (1 + √(1+ε)) and (√(1+ε) - 1) ≈ ε/2
        let one = crate::field::NaNumber::one();
        let r = (&one + &e).sqrt_nonneg().unwrap();
        let d = &r - &one;
        let lt = d.leading_term().unwrap();
        assert_eq!(lt.valuation, Rational::from_integer(1.into()));
        assert_eq!(lt.coeff, C::ratio(1, 2));
    }
}
