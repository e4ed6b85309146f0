use std::fmt;
use std::str::FromStr;

use super::{IdentityError, Mode, Outcome, VerificationReport, Witness};
use crate::scalar::Scalar;

/// Largest exponent tried when searching for a termination certificate.
pub const CERTIFICATE_SEARCH_CAP: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminatingFamily {
    /// `sum (1/p;1/q)_n = sum p q^n (p;q)_n (q;q)_n`, finite when `p q^k = 1`.
    Comp1,
    /// `sum (-1)^n (1/p;1/q)_n = sum p q^n (p;q)_n (-q;q)_n = sum (q/p)^n (p;q^2)_n`,
    /// finite when `p q^{2k} = 1`.
    Comp2,
}

impl TerminatingFamily {
    pub fn id(self) -> &'static str {
        match self {
            TerminatingFamily::Comp1 => "comp1",
            TerminatingFamily::Comp2 => "comp2",
        }
    }

    pub fn expressions(self) -> &'static [TerminatingExpr] {
        use TerminatingExpr::*;
        match self {
            TerminatingFamily::Comp1 => &[Comp1Left, Comp1Mid],
            TerminatingFamily::Comp2 => &[Comp2First, Comp2Mid, Comp2Right],
        }
    }

    /// `q`'s exponent in the certificate `p q^{step k} = 1`.
    fn step(self) -> u32 {
        match self {
            TerminatingFamily::Comp1 => 1,
            TerminatingFamily::Comp2 => 2,
        }
    }
}

impl FromStr for TerminatingFamily {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "comp1" | "comp1-left-vs-mid" => Ok(TerminatingFamily::Comp1),
            "comp2" | "comp2-three-way" => Ok(TerminatingFamily::Comp2),
            _ => Err(IdentityError::UnknownIdentity(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminatingExpr {
    Comp1Left,
    Comp1Mid,
    Comp2First,
    Comp2Mid,
    Comp2Right,
}

impl TerminatingExpr {
    pub const ALL: [TerminatingExpr; 5] = [
        TerminatingExpr::Comp1Left,
        TerminatingExpr::Comp1Mid,
        TerminatingExpr::Comp2First,
        TerminatingExpr::Comp2Mid,
        TerminatingExpr::Comp2Right,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TerminatingExpr::Comp1Left => "comp1-left",
            TerminatingExpr::Comp1Mid => "comp1-mid",
            TerminatingExpr::Comp2First => "comp2-first",
            TerminatingExpr::Comp2Mid => "comp2-mid",
            TerminatingExpr::Comp2Right => "comp2-right",
        }
    }

    pub fn family(self) -> TerminatingFamily {
        match self {
            TerminatingExpr::Comp1Left | TerminatingExpr::Comp1Mid => TerminatingFamily::Comp1,
            _ => TerminatingFamily::Comp2,
        }
    }

    /// Summands `0..=last` can be nonzero, given the certificate `k`.
    fn last_summand(self, k: u32) -> u32 {
        match self {
            // (1/p;1/q)_n and (p;q)_n contain 1 - p q^k resp. its inverse form at index k
            TerminatingExpr::Comp1Left | TerminatingExpr::Comp1Mid => k,
            // same factors, now vanishing at index 2k
            TerminatingExpr::Comp2First | TerminatingExpr::Comp2Mid => 2 * k,
            // (p;q^2)_n vanishes from index k + 1 on
            TerminatingExpr::Comp2Right => k,
        }
    }
}

impl fmt::Display for TerminatingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TerminatingExpr {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TerminatingExpr::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.into()))
    }
}

/// A finite sum's value with the certificate that made it finite.
#[derive(Clone, Debug, PartialEq)]
pub struct TerminatingValue<S> {
    pub value: S,
    pub certificate: u32,
    pub summands: u32,
}

fn is_one<S: Scalar>(x: &S) -> bool {
    x.close_to(&S::one(), S::default_tolerance())
}

/// Smallest `k <= CERTIFICATE_SEARCH_CAP` with `p q^k = 1` (comp1) or `p q^{2k} = 1` (comp2).
pub fn termination_certificate<S: Scalar>(family: TerminatingFamily, p: &S, q: &S) -> Option<u32> {
    let mut step = q.clone();
    if family.step() == 2 {
        step = step.mul_ref(q);
    }
    let mut acc = p.clone();
    for k in 0..=CERTIFICATE_SEARCH_CAP {
        if is_one(&acc) {
            return Some(k);
        }
        acc *= &step;
    }
    None
}

fn inverse<S: Scalar>(x: &S, name: &str) -> Result<S, IdentityError> {
    if x.near_zero(S::default_tolerance()) {
        return Err(IdentityError::InvalidParameter(format!("{name} must be nonzero")));
    }
    x.try_inv()
        .ok_or_else(|| IdentityError::InvalidParameter(format!("{name} = {x} is not invertible in the {} ring", S::KIND.name())))
}

/// Evaluates one of the terminating sums exactly (or at working precision
/// for the complex kind). Refuses without a termination certificate.
pub fn evaluate_terminating<S: Scalar>(
    expr: TerminatingExpr,
    p: &S,
    q: &S,
) -> Result<TerminatingValue<S>, IdentityError> {
    let pinv = inverse(p, "p")?;
    let qinv = inverse(q, "q")?;
    let family = expr.family();
    let k = termination_certificate(family, p, q).ok_or_else(|| IdentityError::NoCertificate {
        expr: expr.id().into(),
        detail: format!(
            "no k <= {CERTIFICATE_SEARCH_CAP} with p*q^{}k = 1 for p = {p}, q = {q}",
            if family.step() == 2 { "2" } else { "" }
        ),
    })?;
    let last = expr.last_summand(k);
    let one = S::one();
    let minus = |x: &S| {
        let mut o = one.clone();
        o -= x;
        o
    };
    let mut total = S::zero();
    // running state: the Pochhammer products and powers after n summands
    let mut poch_a = one.clone();
    let mut poch_b = one.clone();
    let mut a_qn: S;
    let mut b_qn: S;
    let (a0, b0, base) = match expr {
        TerminatingExpr::Comp1Left | TerminatingExpr::Comp2First => (pinv.clone(), S::zero(), qinv.clone()),
        TerminatingExpr::Comp1Mid => (p.clone(), q.clone(), q.clone()),
        TerminatingExpr::Comp2Mid => (p.clone(), -q.clone(), q.clone()),
        TerminatingExpr::Comp2Right => (p.clone(), S::zero(), q.mul_ref(q)),
    };
    a_qn = a0;
    b_qn = b0;
    let mut pw = one.clone();
    let ratio = q.mul_ref(&pinv);
    for n in 0..=last {
        let term = match expr {
            TerminatingExpr::Comp1Left => poch_a.clone(),
            TerminatingExpr::Comp2First => {
                if n % 2 == 0 {
                    poch_a.clone()
                } else {
                    -poch_a.clone()
                }
            }
            TerminatingExpr::Comp1Mid | TerminatingExpr::Comp2Mid => {
                p.mul_ref(&pw).mul_ref(&poch_a).mul_ref(&poch_b)
            }
            TerminatingExpr::Comp2Right => pw.mul_ref(&poch_a),
        };
        total += &term;
        poch_a *= &minus(&a_qn);
        poch_b *= &minus(&b_qn);
        a_qn *= &base;
        b_qn *= &base;
        pw *= match expr {
            TerminatingExpr::Comp2Right => &ratio,
            _ => q,
        };
    }
    Ok(TerminatingValue {
        value: total,
        certificate: k,
        summands: last + 1,
    })
}

/// Evaluates every expression of the family at `(p, q)` and checks that all
/// values coincide.
pub fn verify_terminating<S: Scalar>(
    family: TerminatingFamily,
    p: &S,
    q: &S,
) -> Result<VerificationReport, IdentityError> {
    let mut values = Vec::new();
    for &e in family.expressions() {
        values.push((e, evaluate_terminating(e, p, q)?));
    }
    Ok(VerificationReport::timed(family.id(), Mode::TerminatingExact, |r| {
        r.param("p", p);
        r.param("q", q);
        r.param("k", values[0].1.certificate);
        for (e, v) in &values {
            r.note(format!("{e} = {}", v.value));
        }
        let (first_id, first) = (&values[0].0, &values[0].1.value);
        for (e, v) in &values[1..] {
            if !v.value.close_to(first, S::default_tolerance()) {
                return Outcome::Mismatch(Witness {
                    index: format!("{first_id} vs {e}"),
                    left: first.to_string(),
                    right: v.value.to_string(),
                });
            }
        }
        Outcome::Verified
    }))
}
