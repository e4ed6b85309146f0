use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{IdentityError, Mode, Outcome, VerificationReport, Witness};

/// Parameters of the terminating very-well-poised sum; `f = q^{-N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WatsonParams {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub e: BigRational,
    pub q: BigRational,
    pub n: u32,
}

impl WatsonParams {
    /// The usual specialization `d = q`.
    pub fn with_d_equal_q(a: BigRational, b: BigRational, c: BigRational, e: BigRational, q: BigRational, n: u32) -> Self {
        WatsonParams {
            d: q.clone(),
            a,
            b,
            c,
            e,
            q,
            n,
        }
    }

    /// Random small rationals with `d = q`; may still hit a pole.
    pub fn random<R: Rng>(rng: &mut R, n: u32) -> Self {
        let draw = |rng: &mut R| loop {
            let num: i64 = rng.gen_range(1..=12);
            let den: i64 = rng.gen_range(1..=13);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let v = BigRational::new(BigInt::from(sign * num), BigInt::from(den));
            if !v.is_one() && v != -BigRational::one() {
                return v;
            }
        };
        let a = draw(rng);
        let b = draw(rng);
        let c = draw(rng);
        let e = draw(rng);
        let q = draw(rng);
        WatsonParams::with_d_equal_q(a, b, c, e, q, n)
    }

    pub fn f(&self) -> BigRational {
        pow(&self.q, -(self.n as i64))
    }
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    num_traits::pow::Pow::pow(x, e as i32)
}

fn pole(factor: impl Into<String>, detail: impl Into<String>) -> IdentityError {
    IdentityError::Pole {
        factor: factor.into(),
        detail: detail.into(),
    }
}

fn div(num: &BigRational, den: &BigRational, name: &str) -> Result<BigRational, IdentityError> {
    if den.is_zero() {
        return Err(pole(name, format!("{name} = 0")));
    }
    Ok(num / den)
}

/// `[(x;q)_0, ..., (x;q)_n]`.
fn poch_table(x: &BigRational, q: &BigRational, n: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = BigRational::one();
    let mut xq = x.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc *= BigRational::one() - &xq;
        xq *= q;
        out.push(acc.clone());
    }
    out
}

/// A denominator Pochhammer table; names the first vanishing factor.
fn den_table(label: &str, x: &BigRational, q: &BigRational, n: u32) -> Result<Vec<BigRational>, IdentityError> {
    let mut xq = x.clone();
    for k in 0..n {
        if (BigRational::one() - &xq).is_zero() {
            return Err(pole(format!("{label} factor {k}"), format!("1 - {label_x} q^{k} = 0", label_x = x)));
        }
        xq *= q;
    }
    Ok(poch_table(x, q, n))
}

/// Both sides, summed exactly.
pub fn watson_sides(p: &WatsonParams) -> Result<(BigRational, BigRational), IdentityError> {
    let WatsonParams { a, b, c, d, e, q, n } = p;
    let n = *n;
    let one = BigRational::one();
    if q.is_zero() {
        return Err(IdentityError::InvalidParameter("q must be nonzero".into()));
    }
    let f = p.f();
    let aq = a * q;
    let aq_b = div(&aq, b, "b")?;
    let aq_c = div(&aq, c, "c")?;
    let aq_d = div(&aq, d, "d")?;
    let aq_e = div(&aq, e, "e")?;
    let aq_f = &aq / &f;
    let one_minus_a = &one - a;
    if one_minus_a.is_zero() {
        return Err(pole("1 - a", "a = 1"));
    }

    let bcdef = b * c * d * e * &f;
    let z = div(&(&aq * &aq), &bcdef, "bcdef")?;
    let nums: Vec<Vec<BigRational>> = [a, b, c, d, e, &f].iter().map(|x| poch_table(x, q, n)).collect();
    let dens = [
        den_table("(q;q)", q, q, n)?,
        den_table("(aq/b;q)", &aq_b, q, n)?,
        den_table("(aq/c;q)", &aq_c, q, n)?,
        den_table("(aq/d;q)", &aq_d, q, n)?,
        den_table("(aq/e;q)", &aq_e, q, n)?,
        den_table("(aq/f;q)", &aq_f, q, n)?,
    ];
    let mut lhs = BigRational::zero();
    let mut zk = one.clone();
    let mut q2k = one.clone();
    for k in 0..=n as usize {
        let mut t = &zk * (&one - a * &q2k) / &one_minus_a;
        for v in &nums {
            t *= &v[k];
        }
        for v in &dens {
            t /= &v[k];
        }
        lhs += t;
        zk *= &z;
        q2k *= q * q;
    }

    let de = d * e;
    let aq_de = div(&aq, &de, "de")?;
    let aq_bc = div(&aq, &(b * c), "bc")?;
    let def_a = div(&(&de * &f), a, "a")?;
    let front_num = &poch_table(&aq, q, n)[n as usize] * &poch_table(&aq_de, q, n)[n as usize];
    let front_den = &den_table("(aq/d;q)", &aq_d, q, n)?[n as usize] * &den_table("(aq/e;q)", &aq_e, q, n)?[n as usize];
    let nums = [&aq_bc, d, e, &f].map(|x| poch_table(x, q, n));
    let dens = [
        den_table("(q;q)", q, q, n)?,
        den_table("(def/a;q)", &def_a, q, n)?,
        den_table("(aq/b;q)", &aq_b, q, n)?,
        den_table("(aq/c;q)", &aq_c, q, n)?,
    ];
    let mut inner = BigRational::zero();
    let mut qk = one.clone();
    for k in 0..=n as usize {
        let mut t = qk.clone();
        for v in &nums {
            t *= &v[k];
        }
        for v in &dens {
            t /= &v[k];
        }
        inner += t;
        qk *= q;
    }
    let rhs = front_num / front_den * inner;
    Ok((lhs, rhs))
}

/// Exact comparison of both sides.
pub fn verify_watson(p: &WatsonParams) -> Result<VerificationReport, IdentityError> {
    let (lhs, rhs) = watson_sides(p)?;
    Ok(VerificationReport::timed("watson", Mode::TerminatingExact, |r| {
        for (name, v) in [("a", &p.a), ("b", &p.b), ("c", &p.c), ("d", &p.d), ("e", &p.e), ("q", &p.q)] {
            r.param(name, v);
        }
        r.param("N", p.n);
        r.note(format!("lhs = {lhs}"));
        if lhs == rhs {
            Outcome::Verified
        } else {
            Outcome::Mismatch(Witness {
                index: "value".into(),
                left: lhs.to_string(),
                right: rhs.to_string(),
            })
        }
    })
    .with_order(p.n))
}
