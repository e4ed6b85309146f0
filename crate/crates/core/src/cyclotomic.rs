//! Exact arithmetic in cyclotomic fields `Q(zeta_k)`.
//!
//! An element is a residue polynomial of degree `< phi(k)` modulo the k-th
//! cyclotomic polynomial. Elements of different conductors may be mixed:
//! both operands are lifted to the field of the lcm of their conductors, so
//! `zero()` and `one()` live in `Q = Q(zeta_1)` and still combine with
//! anything.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::precise::BigComplex;
use crate::scalar::{parse_rational, RingKind, Scalar};

/// `Q(zeta_k)` together with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    /// Coefficients of `Phi_k`, lowest degree first; monic.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(k)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zeta(self: &Arc<Self>, power: i64) -> Cyclotomic {
        let k = i64::from(self.conductor);
        let e = power.rem_euclid(k) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclotomic::from_poly(self.clone(), poly)
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<BigRational>) -> Cyclotomic {
        Cyclotomic::from_poly(self.clone(), coeffs)
    }

    /// Reduces an arbitrary polynomial in `zeta` to canonical residue form.
    fn reduce(&self, poly: Vec<BigRational>) -> Vec<BigRational> {
        let k = self.conductor as usize;
        let d = self.degree();
        let mut folded = vec![BigRational::zero(); k.max(d).max(1)];
        for (i, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % k] += c;
            }
        }
        // long division by the monic modulus
        for top in (d..folded.len()).rev() {
            if folded[top].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut folded[top], BigRational::zero());
            let shift = top - d;
            for (i, m) in self.modulus.iter().enumerate().take(d) {
                if !m.is_zero() {
                    folded[shift + i] -= &lead * BigRational::from_integer(m.clone());
                }
            }
        }
        folded.truncate(d);
        folded
    }
}

static FIELDS: LazyLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The shared context for `Q(zeta_k)`; computed once per conductor.
pub fn field(k: u32) -> Arc<CyclotomicField> {
    assert!(k >= 1, "cyclotomic conductor must be positive");
    if let Some(f) = FIELDS.lock().unwrap().get(&k) {
        return f.clone();
    }
    let f = Arc::new(CyclotomicField {
        conductor: k,
        modulus: cyclotomic_polynomial(k),
    });
    FIELDS.lock().unwrap().entry(k).or_insert(f).clone()
}

/// `Phi_k` with integer coefficients, lowest degree first, obtained by
/// dividing `x^k - 1` by `Phi_d` for every proper divisor `d` of `k`.
pub fn cyclotomic_polynomial(k: u32) -> Vec<BigInt> {
    assert!(k >= 1);
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    for d in 1..k {
        if k % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for top in (dn..num.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quot[top - dn] = c.clone();
        for (i, m) in den.iter().enumerate() {
            rem[top - dn + i] -= &c * m;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element of `Q(zeta_k)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn from_poly(field: Arc<CyclotomicField>, poly: Vec<BigRational>) -> Self {
        let coeffs = field.reduce(poly);
        Cyclotomic { field, coeffs }
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic {
            field: field(1),
            coeffs: vec![q],
        }
    }

    /// `zeta_k^power`.
    pub fn zeta(k: u32, power: i64) -> Self {
        field(k).zeta(power)
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Residue coefficients in the basis `1, zeta, ..., zeta^(phi(k)-1)`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// Re-expresses `self` in `Q(zeta_l)`; `l` must be a multiple of the conductor.
    pub fn lift(&self, l: u32) -> Self {
        let k = self.conductor();
        assert!(l % k == 0, "cannot lift conductor {k} into {l}");
        if l == k {
            return self.clone();
        }
        if self.is_rational() {
            return field(l).element(vec![self.coeffs[0].clone()]);
        }
        let step = (l / k) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        field(l).element(poly)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let (a, b) = (self.conductor(), other.conductor());
        if a == b {
            return (self.clone(), other.clone());
        }
        let l = a.lcm(&b);
        (self.lift(l), other.lift(l))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Cyclotomic {
                field: self.field.clone(),
                coeffs: self.field.reduce(vec![self.coeffs[0].recip()]),
            });
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly::ext_gcd(&modulus, &self.coeffs);
        // Phi_k is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(poly::degree(&g), Some(0));
        let c = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|x| x * &c).collect();
        Some(Cyclotomic::from_poly(self.field.clone(), s))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclotomic::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc *= &b;
            }
            let b2 = b.clone();
            b *= &b2;
            n >>= 1;
        }
        Some(acc)
    }

    /// Complex embedding `zeta_k -> e^(2 pi i / k)` at `bits` of precision.
    pub fn to_complex(&self, bits: usize) -> BigComplex {
        let k = self.conductor();
        let mut acc = BigComplex::from_i64_prec(0, bits);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = BigComplex::root_of_unity(k, i as i64, bits);
            term *= &BigComplex::from_rational_prec(c, bits);
            acc += &term;
        }
        acc
    }

    /// Serialized form `k:c0,c1,...`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("{}:{}", self.conductor(), parts.join(","))
    }

    pub fn parse_text(s: &str) -> Option<Self> {
        let (k, rest) = s.split_once(':')?;
        let k: u32 = k.trim().parse().ok()?;
        if k == 0 {
            return None;
        }
        let coeffs = rest
            .split(',')
            .map(parse_rational)
            .collect::<Option<Vec<_>>>()?;
        let f = field(k);
        (coeffs.len() == f.degree()).then(|| f.element(coeffs))
    }
}

mod poly {
    //! Dense polynomials over `Q`, lowest degree first.
    use num_rational::BigRational;
    use num_traits::Zero;

    pub fn degree(p: &[BigRational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(q.len() + b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, x) in q.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(out)
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = a.to_vec();
        let Some(da) = degree(a) else {
            return (vec![BigRational::zero()], vec![BigRational::zero()]);
        };
        if da < db {
            return (vec![BigRational::zero()], trim(r));
        }
        let mut q = vec![BigRational::zero(); da - db + 1];
        let lead = b[db].clone();
        for top in (db..=da).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] / &lead;
            for j in 0..=db {
                let t = &c * &b[j];
                r[top - db + j] -= t;
            }
            q[top - db] = c;
        }
        (trim(q), trim(r))
    }

    /// Returns `(g, s)` with `s * b = g (mod a)`.
    pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::from_integer(1.into())]);
        while degree(&r1).is_some() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = self.conductor();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{k}")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::rational(BigRational::one())
    }
}

impl<'a> AddAssign<&'a Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &'a Cyclotomic) {
        if rhs.is_zero() {
            return;
        }
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            let (mut a, b) = self.aligned(rhs);
            a += &b;
            *self = a;
        }
    }
}

impl<'a> SubAssign<&'a Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &'a Cyclotomic) {
        *self += &(-rhs.clone());
    }
}

impl<'a> MulAssign<&'a Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &'a Cyclotomic) {
        if rhs.is_rational() {
            let c = &rhs.coeffs[0];
            for a in &mut self.coeffs {
                *a *= c;
            }
            return;
        }
        if self.is_rational() {
            let c = self.coeffs[0].clone();
            *self = rhs.clone();
            for a in &mut self.coeffs {
                *a *= &c;
            }
            return;
        }
        let (a, b) = self.aligned(rhs);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        *self = Cyclotomic::from_poly(a.field, prod);
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self -= &rhs;
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self *= &rhs;
        self
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Scalar for Cyclotomic {
    const KIND: RingKind = RingKind::Cyclotomic;

    fn from_i64(v: i64) -> Self {
        Cyclotomic::rational(BigRational::from_integer(v.into()))
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Cyclotomic::rational(q.clone()))
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}
