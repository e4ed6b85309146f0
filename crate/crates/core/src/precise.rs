//! Arbitrary-precision complex numbers on top of `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{RingKind, Scalar};

/// Precision used by `Zero::zero()` / `One::one()` and bare constructors.
pub const DEFAULT_PRECISION_BITS: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits needed to carry `digits` decimal digits, plus a few guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 16
}

fn precision_of(x: &BigFloat) -> usize {
    x.mantissa_max_bit_len().unwrap_or(DEFAULT_PRECISION_BITS)
}

/// Real number helpers used outside the complex type as well.
pub mod real {
    use super::*;

    pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
        if let Ok(small) = i64::try_from(n) {
            return BigFloat::from_i64(small, p);
        }
        with_consts(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc))
    }

    pub fn from_rational(q: &BigRational, p: usize) -> BigFloat {
        from_bigint(q.numer(), p).div(&from_bigint(q.denom(), p), p, RM)
    }

    pub fn pi(p: usize) -> BigFloat {
        with_consts(|cc| cc.pi(p, RM))
    }

    pub fn exp(x: &BigFloat, p: usize) -> BigFloat {
        with_consts(|cc| x.exp(p, RM, cc))
    }

    pub fn sqrt(x: &BigFloat, p: usize) -> BigFloat {
        x.sqrt(p, RM)
    }

    pub fn cos(x: &BigFloat, p: usize) -> BigFloat {
        with_consts(|cc| x.cos(p, RM, cc))
    }

    pub fn sin(x: &BigFloat, p: usize) -> BigFloat {
        with_consts(|cc| x.sin(p, RM, cc))
    }

    /// Nearest `f64`; saturates to 0 / infinity outside the `f64` range.
    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf() {
            return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
            return f64::NAN;
        };
        // value = 0.m * 2^exponent with the top mantissa bit set in the last word
        let top = *words.last().unwrap_or(&0) as f64 / 2f64.powi(64);
        let v = top * 2f64.powi(exponent);
        match sign {
            Sign::Neg => -v,
            Sign::Pos => v,
        }
    }

    pub fn to_decimal(x: &BigFloat) -> String {
        with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }
}

/// A complex number whose parts carry their own binary precision.
#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        BigComplex::new(BigFloat::from_f64(re, p), BigFloat::from_f64(im, p))
    }

    pub fn from_i64_prec(v: i64, p: usize) -> Self {
        BigComplex::new(BigFloat::from_i64(v, p), BigFloat::new(p))
    }

    pub fn from_rational_prec(q: &BigRational, p: usize) -> Self {
        BigComplex::new(real::from_rational(q, p), BigFloat::new(p))
    }

    /// `e^(2 pi i j / k)`.
    pub fn root_of_unity(k: u32, j: i64, p: usize) -> Self {
        let angle = real::pi(p + 32)
            .mul(&BigFloat::from_i64(2 * j, p + 32), p + 32, RM)
            .div(&BigFloat::from_u64(u64::from(k), p + 32), p + 32, RM);
        BigComplex::new(real::cos(&angle, p), real::sin(&angle, p))
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision(&self) -> usize {
        precision_of(&self.re).max(precision_of(&self.im))
    }

    fn common(&self, other: &Self) -> usize {
        self.precision().max(other.precision())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.precision();
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        let p = self.precision();
        self.norm_sqr().sqrt(p, RM)
    }

    /// `|self|` rounded to `f64`, enough for convergence bookkeeping.
    pub fn magnitude(&self) -> f64 {
        real::to_f64(&self.abs())
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.clone().neg())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.precision();
        let n = self.norm_sqr();
        Some(BigComplex::new(
            self.re.div(&n, p, RM),
            self.im.clone().neg().div(&n, p, RM),
        ))
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut base = self.clone();
        let mut acc = BigComplex::from_i64_prec(1, self.precision());
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            let b2 = base.clone();
            base *= &b2;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_neg = self.im.is_negative();
        let im = if im_neg { self.im.clone().neg() } else { self.im.clone() };
        write!(
            f,
            "{} {} {}i",
            real::to_decimal(&self.re),
            if im_neg { '-' } else { '+' },
            real::to_decimal(&im)
        )
    }
}

impl Zero for BigComplex {
    fn zero() -> Self {
        BigComplex::new(
            BigFloat::new(DEFAULT_PRECISION_BITS),
            BigFloat::new(DEFAULT_PRECISION_BITS),
        )
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for BigComplex {
    fn one() -> Self {
        BigComplex::from_i64_prec(1, DEFAULT_PRECISION_BITS)
    }
}

impl<'a> AddAssign<&'a BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &'a BigComplex) {
        let p = self.common(rhs);
        self.re = self.re.add(&rhs.re, p, RM);
        self.im = self.im.add(&rhs.im, p, RM);
    }
}

impl<'a> SubAssign<&'a BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &'a BigComplex) {
        let p = self.common(rhs);
        self.re = self.re.sub(&rhs.re, p, RM);
        self.im = self.im.sub(&rhs.im, p, RM);
    }
}

impl<'a> MulAssign<&'a BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &'a BigComplex) {
        let p = self.common(rhs);
        let re = self
            .re
            .mul(&rhs.re, p, RM)
            .sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self
            .re
            .mul(&rhs.im, p, RM)
            .add(&self.im.mul(&rhs.re, p, RM), p, RM);
        self.re = re;
        self.im = im;
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(mut self, rhs: BigComplex) -> BigComplex {
        self += &rhs;
        self
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(mut self, rhs: BigComplex) -> BigComplex {
        self -= &rhs;
        self
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(mut self, rhs: BigComplex) -> BigComplex {
        self *= &rhs;
        self
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(self.re.neg(), self.im.clone().neg())
    }
}

impl Scalar for BigComplex {
    const KIND: RingKind = RingKind::Complex;

    fn from_i64(v: i64) -> Self {
        BigComplex::from_i64_prec(v, DEFAULT_PRECISION_BITS)
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(BigComplex::from_rational_prec(q, DEFAULT_PRECISION_BITS))
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }

    fn default_tolerance() -> f64 {
        1e-25
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        let mut d = self.clone();
        d -= other;
        let bound = BigFloat::from_f64(tol, d.precision());
        matches!(
            d.abs().cmp(&bound).map(|c| c.cmp(&0)),
            Some(Ordering::Less | Ordering::Equal)
        )
    }

    fn near_zero(&self, tol: f64) -> bool {
        self.close_to(&BigComplex::zero(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_round_trip() {
        let p = bits_for_digits(60);
        let z = BigComplex::from_f64(0.3, -0.7, p);
        let w = z.inv().unwrap();
        let mut one = z.clone();
        one *= &w;
        assert!(one.close_to(&BigComplex::from_i64_prec(1, p), 1e-55));
    }

    #[test]
    fn roots_of_unity_close_up() {
        let p = bits_for_digits(60);
        let z = BigComplex::root_of_unity(12, 1, p);
        assert!(z.powi(12).close_to(&BigComplex::from_i64_prec(1, p), 1e-50));
        let i = BigComplex::root_of_unity(4, 1, p);
        assert!(i.close_to(&BigComplex::from_f64(0.0, 1.0, p), 1e-50));
    }

    #[test]
    fn f64_conversion() {
        let x = BigFloat::from_f64(-1234.5678, 128);
        assert!((real::to_f64(&x) + 1234.5678).abs() < 1e-9);
        let tiny = BigFloat::from_f64(3e-35, 128);
        assert!((real::to_f64(&tiny) / 3e-35 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rationals_embed_exactly_enough() {
        let third = BigRational::new(1.into(), 3.into());
        let z = BigComplex::from_rational_prec(&third, 256);
        let mut three = z.clone();
        three *= &BigComplex::from_i64_prec(3, 256);
        assert!(three.close_to(&BigComplex::from_i64_prec(1, 256), 1e-70));
    }
}
