//! Random exact configurations.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Base, FieldElement};
use crate::geometry::Point;

pub const NUM_BITS: u32 = 16;
pub const DEN_BITS: u32 = 10;
pub const TINY_BITS: u32 = 32;

/// Per-instance generator keyed by (seed, stream, index), independent of
/// evaluation order.
pub struct Gen<B: Base> {
    pub rng: ChaCha8Rng,
    _base: std::marker::PhantomData<fn() -> B>,
}

/// Seed bytes for instance `index` of stream `stream`.
pub fn instance_seed(seed: u64, stream: u64, index: u64) -> [u8; 32] {
    let mut s = [0u8; 32];
    s[..8].copy_from_slice(&seed.to_le_bytes());
    s[8..16].copy_from_slice(&stream.to_le_bytes());
    s[16..24].copy_from_slice(&index.to_le_bytes());
    s
}

/// Orientation-preserving or -reversing rigid motion with rational entries.
pub struct Motion<B: Base> {
    cos: FieldElement<B>,
    sin: FieldElement<B>,
    flip: bool,
    shift: Point<B>,
}

impl<B: Base> Motion<B> {
    pub fn apply(&self, p: &Point<B>) -> Point<B> {
        let y = if self.flip { -&p.y } else { p.y.clone() };
        let x = &p.x * &self.cos - &y * &self.sin;
        let y = &p.x * &self.sin + &y * &self.cos;
        Point::new(x, y).add(&self.shift)
    }
}

impl<B: Base> Gen<B> {
    pub fn new(seed: u64, stream: u64, index: u64) -> Self {
        Gen { rng: ChaCha8Rng::from_seed(instance_seed(seed, stream, index)), _base: std::marker::PhantomData }
    }

    fn frac(n: i64, d: i64) -> FieldElement<B> {
        FieldElement::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Numerator in `[-2^16, 2^16]`, denominator in `[1, 2^10]`.
    pub fn q(&mut self) -> FieldElement<B> {
        let n = self.rng.gen_range(-(1i64 << NUM_BITS)..=(1i64 << NUM_BITS));
        let d = self.rng.gen_range(1..=(1i64 << DEN_BITS));
        Self::frac(n, d)
    }

    /// A rational strictly between 0 and 1.
    pub fn unit(&mut self) -> FieldElement<B> {
        let d = self.rng.gen_range(2..=(1i64 << DEN_BITS));
        let n = self.rng.gen_range(1..d);
        Self::frac(n, d)
    }

    /// A positive rational of moderate size.
    pub fn pos(&mut self) -> FieldElement<B> {
        let n = self.rng.gen_range(1..=(1i64 << 8));
        let d = self.rng.gen_range(1..=(1i64 << 6));
        Self::frac(n, d)
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, n: u32) -> bool {
        self.rng.gen_ratio(1, n)
    }

    /// An infinitesimal when the base has one, else `2^-32`, scaled by a
    /// small positive integer.
    pub fn tiny(&mut self) -> FieldElement<B> {
        let k = FieldElement::from_int(self.rng.gen_range(1..=8));
        let t = FieldElement::eps().unwrap_or_else(|| Self::frac(1, 1i64 << TINY_BITS));
        k * t
    }

    pub fn point(&mut self) -> Point<B> {
        Point::new(self.q(), self.q())
    }

    pub fn nonzero_vec(&mut self) -> Point<B> {
        loop {
            let v = self.point();
            if !v.norm2().is_zero() {
                return v;
            }
        }
    }

    pub fn distinct_from(&mut self, a: &Point<B>) -> Point<B> {
        a.add(&self.nonzero_vec())
    }

    /// A point off the line `ab`.
    pub fn off_line(&mut self, a: &Point<B>, b: &Point<B>) -> Point<B> {
        loop {
            let c = self.point();
            if !Point::orient(a, b, &c).is_zero() {
                return c;
            }
        }
    }

    /// Rational unit vector `((m²−n²)/(m²+n²), 2mn/(m²+n²))`.
    pub fn unit_vec(&mut self) -> Point<B> {
        let m = self.rng.gen_range(-40i64..=40);
        let n = self.rng.gen_range(1i64..=40);
        let h = m * m + n * n;
        Point::new(Self::frac(m * m - n * n, h), Self::frac(2 * m * n, h))
    }

    pub fn motion(&mut self) -> Motion<B> {
        let u = self.unit_vec();
        Motion { cos: u.x, sin: u.y, flip: self.rng.gen_bool(0.5), shift: self.point() }
    }
}
