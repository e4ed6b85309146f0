//! Coefficient rings for truncated series.
//!
//! Every series, Pochhammer product and terminating sum in this crate is
//! generic over [`Scalar`]. The exact kinds (integers, rationals, cyclotomic
//! numbers) compare with `==`; the floating kinds compare within a tolerance.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_complex::{Complex32, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which family a coefficient type belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integer,
    Rational,
    Cyclotomic,
    Complex,
    Float,
}

impl RingKind {
    pub fn is_exact(self) -> bool {
        matches!(self, RingKind::Integer | RingKind::Rational | RingKind::Cyclotomic)
    }

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Integer => "integer",
            RingKind::Rational => "rational",
            RingKind::Cyclotomic => "cyclotomic",
            RingKind::Complex => "complex",
            RingKind::Float => "float",
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    const KIND: RingKind;

    fn from_i64(v: i64) -> Self;

    /// Embeds a rational, or `None` when the ring cannot hold it
    /// (e.g. `1/2` in the integers).
    fn from_rational(q: &BigRational) -> Option<Self>;

    /// Multiplicative inverse, if it exists in the ring.
    fn try_inv(&self) -> Option<Self>;

    /// Tolerance used by series comparison when the caller supplies none.
    fn default_tolerance() -> f64 {
        0.0
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    /// Zero test used for cutoff bookkeeping; floating kinds accept `tol`.
    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out *= other;
        out
    }
}

impl Scalar for BigInt {
    const KIND: RingKind = RingKind::Integer;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        q.is_integer().then(|| q.numer().clone())
    }

    fn try_inv(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for BigRational {
    const KIND: RingKind = RingKind::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const KIND: RingKind = RingKind::Float;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_rational(q: &BigRational) -> Option<Self> {
                q.to_f64().map(|v| v as $t)
            }

            fn try_inv(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / *self)
            }

            fn default_tolerance() -> f64 {
                $tol
            }

            fn close_to(&self, other: &Self, tol: f64) -> bool {
                ((*self - *other).abs() as f64) <= tol
            }

            fn near_zero(&self, tol: f64) -> bool {
                (self.abs() as f64) <= tol
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

macro_rules! complex_scalar {
    ($t:ty, $re:ty, $tol:expr) => {
        impl Scalar for $t {
            const KIND: RingKind = RingKind::Complex;

            fn from_i64(v: i64) -> Self {
                <$t>::new(v as $re, 0.0)
            }

            fn from_rational(q: &BigRational) -> Option<Self> {
                q.to_f64().map(|v| <$t>::new(v as $re, 0.0))
            }

            fn try_inv(&self) -> Option<Self> {
                (!self.is_zero()).then(|| self.inv())
            }

            fn default_tolerance() -> f64 {
                $tol
            }

            fn close_to(&self, other: &Self, tol: f64) -> bool {
                ((*self - *other).norm() as f64) <= tol
            }

            fn near_zero(&self, tol: f64) -> bool {
                (self.norm() as f64) <= tol
            }
        }
    };
}

complex_scalar!(Complex64, f64, 1e-9);
complex_scalar!(Complex32, f32, 1e-4);

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_units_only_invert() {
        assert_eq!(BigInt::from(-1).try_inv(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).try_inv(), None);
        assert_eq!(BigInt::from(0).try_inv(), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("4/-8"),
            Some(BigRational::new(BigInt::from(-1), BigInt::from(2)))
        );
        assert_eq!(parse_rational(" 7 "), Some(BigRational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rational_into_integer_ring() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(BigInt::from_rational(&half), None);
        assert_eq!(
            BigInt::from_rational(&BigRational::from_integer(3.into())),
            Some(BigInt::from(3))
        );
    }
}
