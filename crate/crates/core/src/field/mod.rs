//! Exact ordered fields: rationals, rational functions in an infinitesimal,
//! and quadratic-extension towers over either.

mod rational;
pub mod ratfunc;
pub mod text;
mod tower;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use ratfunc::{Poly, RatFunc};
pub use text::{parse_element, Expr};
pub use tower::{Ext, FieldElement, Level};

/// Arbitrary-precision rational number.
pub type Rational = num::BigRational;

/// Tower over the rationals.
pub type Constructible = FieldElement<Rational>;

/// Tower over rational functions in ε.
pub type NaNumber = FieldElement<RatFunc>;

/// Which base field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Constructible,
    #[serde(rename = "nonarch")]
    NonArchimedean,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Constructible => f.write_str("constructible"),
            FieldMode::NonArchimedean => f.write_str("nonarch"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("element is not positive")]
    NotPositive,
    #[error("element is negative")]
    Negative,
    #[error("division by zero")]
    DivisionByZero,
}

/// An exactly computable ordered field serving as the bottom of a tower.
pub trait Base: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const MODE: FieldMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Sign relative to zero in the field order.
    fn signum(&self) -> Ordering;
    /// Square root inside the base field, if one exists.
    fn try_sqrt(&self) -> Option<Self>;
    /// Writes a positive non-square `r` as `s² · r'` with `r'` in a reduced form,
    /// returning `(s, r')`.
    fn split_radicand(&self) -> (Self, Self) {
        (Self::one(), self.clone())
    }
    /// Canonical text form.
    fn render(&self) -> String;
    /// The rational value with every infinitesimal part dropped; `None` when
    /// the element is unbounded.
    fn standard_part(&self) -> Option<Rational>;
    /// The infinitesimal ε when the field has one.
    fn eps() -> Option<Self> {
        None
    }
    /// Positivity at the root node of the two-node Kripke frame.
    /// Archimedean bases have a single notion of positivity.
    fn positive_at_root(x: &FieldElement<Self>) -> bool {
        x.signum() == Ordering::Greater
    }
}
