use std::cmp::Ordering;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use super::{Base, FieldMode, Rational};

const SMALL_SQUARE_BOUND: u32 = 256;

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl Base for Rational {
    const MODE: FieldMode = FieldMode::Constructible;

    fn standard_part(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> Ordering {
        self.numer().sign().cmp(&num::bigint::Sign::NoSign)
    }
    fn try_sqrt(&self) -> Option<Self> {
        let n = int_sqrt_exact(self.numer())?;
        let d = int_sqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }
    fn split_radicand(&self) -> (Self, Self) {
        // p/q = (1/q)^2 * (p*q), then pull small square factors out of p*q.
        let mut r = self.numer() * self.denom();
        let mut s = Rational::new(BigInt::one(), self.denom().clone());
        let mut k = 2u32;
        while k <= SMALL_SQUARE_BOUND {
            let kk = BigInt::from(k * k);
            if Zero::is_zero(&(&r % &kk)) {
                r /= &kk;
                s *= Rational::from_integer(BigInt::from(k));
            } else {
                k += 1;
            }
        }
        (s, Rational::from_integer(r))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(q(9, 4).try_sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).try_sqrt(), None);
        assert_eq!(q(-4, 1).try_sqrt(), None);
    }

    #[test]
    fn radicand_split() {
        let (s, r) = q(3, 4).split_radicand();
        assert_eq!((s, r), (q(1, 2), q(3, 1)));
        let (s, r) = q(72, 1).split_radicand();
        assert_eq!((s, r), (q(6, 1), q(2, 1)));
    }

    #[test]
    fn renders_reduced() {
        assert_eq!(q(10, 12).render(), "5/6");
        assert_eq!(q(4, 2).render(), "2");
        assert_eq!(q(-1, 3).render(), "-1/3");
    }
}
