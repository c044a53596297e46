//! Rational functions in a positive infinitesimal ε over the rationals.
//!
//! The order is the one in which ε is smaller than every positive rational:
//! the sign of a polynomial is the sign of its lowest-degree coefficient.

use std::cmp::Ordering;
use std::fmt;

use num::{One, Signed, Zero};

use super::Rational;

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    <Rational as super::Base>::try_sqrt(q)
}

/// Polynomial in ε, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial ε^k.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = Rational::one();
        Poly(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn lowest_coeff(&self) -> Option<&Rational> {
        self.order().map(|k| &self.0[k])
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc = d.leading_coeff().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (i, b) in d.0.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                a.scale(&inv)
            }
            None => a,
        }
    }

    /// Exact square root with positive lowest coefficient, if one exists.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(d) = self.degree() else {
            return Some(Poly::zero());
        };
        if d % 2 == 1 {
            return None;
        }
        let top = rational_sqrt(self.leading_coeff().unwrap())?;
        let m = d / 2;
        let mut s = vec![Rational::zero(); m + 1];
        s[m] = top.clone();
        let two_top = &top + &top;
        for j in (0..m).rev() {
            let cur = Poly::new(s.clone());
            let rem = self.sub(&cur.mul(&cur));
            let c = rem.0.get(m + j).cloned().unwrap_or_else(Rational::zero);
            s[j] = c / &two_top;
        }
        let mut s = Poly::new(s);
        if s.mul(&s) != *self {
            return None;
        }
        if s.lowest_coeff().is_some_and(|c| c.is_negative()) {
            s = s.neg();
        }
        Some(s)
    }

    pub fn signum(&self) -> Ordering {
        match self.lowest_coeff() {
            None => Ordering::Equal,
            Some(c) => c.numer().sign().cmp(&num::bigint::Sign::NoSign),
        }
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            out.push_str(&mag.to_string());
            match k {
                0 => {}
                1 => out.push_str("*eps"),
                _ => out.push_str(&format!("*eps^{k}")),
            }
        }
        out
    }
}

/// Reduced fraction of polynomials in ε. The denominator's lowest-degree
/// nonzero coefficient is 1, which makes the representation canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::constant(Rational::one()) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let low = den.lowest_coeff().unwrap().recip();
        num = num.scale(&low);
        den = den.scale(&low);
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::new(p, Poly::constant(Rational::one()))
    }

    pub fn eps() -> Self {
        RatFunc::from_poly(Poly::monomial(1))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// ε-adic valuation: order of numerator minus order of denominator.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.order()? as i64;
        Some(n - self.den.order().unwrap() as i64)
    }

    /// Coefficient of the dominant term ε^valuation.
    pub fn leading_coeff(&self) -> Option<Rational> {
        Some(self.num.lowest_coeff()? / self.den.lowest_coeff().unwrap())
    }

    /// Drops every ε term: the value at ε = 0, for finitely bounded elements.
    pub fn standard_part(&self) -> Option<Rational> {
        let v = self.valuation();
        match v {
            None => Some(Rational::zero()),
            Some(v) if v > 0 => Some(Rational::zero()),
            Some(0) => self.leading_coeff(),
            Some(_) => None,
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::Base::render(self))
    }
}

mod base_impl {
    use std::cmp::Ordering;

    use super::super::{Base, FieldElement, FieldMode, Rational};
    use super::{Poly, RatFunc};

    fn wrap(s: String) -> String {
        if s.contains('+') || s[1..].contains('-') || s.contains('/') {
            format!("({s})")
        } else {
            s
        }
    }

    impl Base for RatFunc {
        const MODE: FieldMode = FieldMode::NonArchimedean;

        fn standard_part(&self) -> Option<Rational> {
            RatFunc::standard_part(self)
        }

        fn zero() -> Self {
            RatFunc::from_poly(Poly::zero())
        }
        fn one() -> Self {
            RatFunc::from_poly(Poly::constant(Rational::from_integer(1.into())))
        }
        fn from_rational(q: &Rational) -> Self {
            RatFunc::from_poly(Poly::constant(q.clone()))
        }
        fn add(&self, o: &Self) -> Self {
            if self.den == o.den {
                return RatFunc::new(self.num.add(&o.num), self.den.clone());
            }
            RatFunc::new(
                self.num.mul(&o.den).add(&o.num.mul(&self.den)),
                self.den.mul(&o.den),
            )
        }
        fn sub(&self, o: &Self) -> Self {
            self.add(&o.neg())
        }
        fn mul(&self, o: &Self) -> Self {
            RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
        }
        fn neg(&self) -> Self {
            RatFunc { num: self.num.neg(), den: self.den.clone() }
        }
        fn inv(&self) -> Option<Self> {
            (!self.num.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
        }
        fn is_zero(&self) -> bool {
            self.num.is_zero()
        }
        fn signum(&self) -> Ordering {
            // The denominator's lowest coefficient is 1.
            self.num.signum()
        }
        fn try_sqrt(&self) -> Option<Self> {
            if self.signum() == Ordering::Less {
                return None;
            }
            let s = self.num.mul(&self.den).sqrt()?;
            Some(RatFunc::new(s, self.den.clone()))
        }
        fn split_radicand(&self) -> (Self, Self) {
            (
                RatFunc::new(Poly::constant(Rational::from_integer(1.into())), self.den.clone()),
                RatFunc::from_poly(self.num.mul(&self.den)),
            )
        }
        fn render(&self) -> String {
            if self.den.degree() == Some(0) {
                self.num.render()
            } else {
                format!("{}/{}", wrap(self.num.render()), wrap(self.den.render()))
            }
        }
        fn eps() -> Option<Self> {
            Some(RatFunc::eps())
        }
        fn positive_at_root(x: &FieldElement<Self>) -> bool {
            match x.leading_term() {
                None => false,
                Some(lt) => lt.coeff.signum() == Ordering::Greater && lt.valuation <= Rational::from_integer(0.into()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Base;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    #[test]
    fn canonical_form() {
        // (2 + 2ε) / (4 + 4ε) = 1/2
        let x = RatFunc::new(p(&[2, 2]), p(&[4, 4]));
        assert_eq!(x, RatFunc::from_rational(&Rational::new(1.into(), 2.into())));
        // ε / (2ε + ε²) = 1 / (2 + ε) = (1/2) / (1 + ε/2)
        let y = RatFunc::new(p(&[0, 1]), p(&[0, 2, 1]));
        assert_eq!(y.den().lowest_coeff(), Some(&<Rational as One>::one()));
        assert_eq!(y.valuation(), Some(0));
    }

    #[test]
    fn order_by_lowest_coefficient() {
        let e = RatFunc::eps();
        assert_eq!(e.signum(), Ordering::Greater);
        let tiny_less_one = RatFunc::one().sub(&e.mul(&e));
        assert_eq!(tiny_less_one.signum(), Ordering::Greater);
        assert_eq!(e.sub(&RatFunc::from_rational(&Rational::new(1.into(), 1000.into()))).signum(), Ordering::Less);
    }

    #[test]
    fn poly_sqrt() {
        // (1 + ε)² = 1 + 2ε + ε²
        assert_eq!(p(&[1, 2, 1]).sqrt(), Some(p(&[1, 1])));
        assert_eq!(p(&[4, 1]).sqrt(), None);
        assert_eq!(p(&[0, 0, 9]).sqrt(), Some(p(&[0, 3])));
    }

    #[test]
    fn render_forms() {
        assert_eq!(RatFunc::eps().render(), "1*eps");
        let x = RatFunc::new(p(&[3, 1]), p(&[1, 2]));
        assert_eq!(x.render(), "(3+1*eps)/(1+2*eps)");
        assert_eq!(RatFunc::from_poly(p(&[0, 0, -2])).render(), "-2*eps^2");
    }
}
