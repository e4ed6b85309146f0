use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{IdentityError, Mode, Outcome, VerificationReport, Witness};
use crate::precise::{bits_for_digits, BigComplex};

/// Consecutive non-increasing term magnitudes required before stopping.
pub const DECAY_RUN: usize = 5;
/// Terms must drop below `tolerance * SUMMATION_MARGIN` (relative to the partial sum).
pub const SUMMATION_MARGIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericIdentity {
    RogersFine,
    GeneralizedRogersFine,
    /// The `N -> infinity` limit of the terminating Watson sum with `d = q`.
    WatsonLimit,
    /// The same limit with `q^{binom(n,2) - n}` on the left instead of
    /// `q^{binom(n,2) + n}`; kept to show that this transcription fails.
    WatsonLimitMinusN,
}

impl NumericIdentity {
    pub fn id(self) -> &'static str {
        match self {
            NumericIdentity::RogersFine => "rogers-fine",
            NumericIdentity::GeneralizedRogersFine => "generalized-rf",
            NumericIdentity::WatsonLimit => "watson-limit",
            NumericIdentity::WatsonLimitMinusN => "watson-limit-minus-n",
        }
    }
}

impl fmt::Display for NumericIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NumericIdentity {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rogers-fine" | "rf" => Ok(NumericIdentity::RogersFine),
            "generalized-rf" | "grf" => Ok(NumericIdentity::GeneralizedRogersFine),
            "watson-limit" | "wat2" => Ok(NumericIdentity::WatsonLimit),
            "watson-limit-minus-n" => Ok(NumericIdentity::WatsonLimitMinusN),
            _ => Err(IdentityError::UnknownIdentity(s.into())),
        }
    }
}

/// Parameter values for one numeric identity.
#[derive(Clone, Debug, PartialEq)]
pub enum NumericPoint {
    RogersFine {
        a: BigComplex,
        b: BigComplex,
        t: BigComplex,
        q: BigComplex,
    },
    Generalized {
        alpha: BigComplex,
        beta: BigComplex,
        gamma: BigComplex,
        t: BigComplex,
        q: BigComplex,
    },
    WatsonLimit {
        a: BigComplex,
        b: BigComplex,
        c: BigComplex,
        e: BigComplex,
        q: BigComplex,
        minus_n: bool,
    },
}

impl NumericPoint {
    pub fn identity(&self) -> NumericIdentity {
        match self {
            NumericPoint::RogersFine { .. } => NumericIdentity::RogersFine,
            NumericPoint::Generalized { .. } => NumericIdentity::GeneralizedRogersFine,
            NumericPoint::WatsonLimit { minus_n: false, .. } => NumericIdentity::WatsonLimit,
            NumericPoint::WatsonLimit { minus_n: true, .. } => NumericIdentity::WatsonLimitMinusN,
        }
    }

    pub fn named_values(&self) -> Vec<(&'static str, &BigComplex)> {
        match self {
            NumericPoint::RogersFine { a, b, t, q } => vec![("a", a), ("b", b), ("t", t), ("q", q)],
            NumericPoint::Generalized {
                alpha,
                beta,
                gamma,
                t,
                q,
            } => vec![("alpha", alpha), ("beta", beta), ("gamma", gamma), ("t", t), ("q", q)],
            NumericPoint::WatsonLimit { a, b, c, e, q, .. } => {
                vec![("a", a), ("b", b), ("c", c), ("e", e), ("q", q)]
            }
        }
    }

    /// Builds a point from `(name, (re, im))` pairs at `digits` decimal digits.
    pub fn from_values(
        identity: NumericIdentity,
        values: &[(&str, (f64, f64))],
        digits: u32,
    ) -> Result<Self, IdentityError> {
        let p = bits_for_digits(digits);
        let get = |name: &str| {
            values
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, (re, im))| BigComplex::from_f64(*re, *im, p))
                .ok_or_else(|| IdentityError::InvalidParameter(format!("{identity} needs parameter `{name}`")))
        };
        Ok(match identity {
            NumericIdentity::RogersFine => NumericPoint::RogersFine {
                a: get("a")?,
                b: get("b")?,
                t: get("t")?,
                q: get("q")?,
            },
            NumericIdentity::GeneralizedRogersFine => NumericPoint::Generalized {
                alpha: get("alpha")?,
                beta: get("beta")?,
                gamma: get("gamma")?,
                t: get("t")?,
                q: get("q")?,
            },
            NumericIdentity::WatsonLimit | NumericIdentity::WatsonLimitMinusN => NumericPoint::WatsonLimit {
                a: get("a")?,
                b: get("b")?,
                c: get("c")?,
                e: get("e")?,
                q: get("q")?,
                minus_n: identity == NumericIdentity::WatsonLimitMinusN,
            },
        })
    }

    /// A random point in the convergence region:
    /// `|q|, |t|` in `[0.1, 0.6]`, other moduli in `[0.1, 0.9]`; for the Watson
    /// limit `|a| <= 0.5 < 0.6 <= |b|, |c|, |e| <= 0.95` so that `|a/e| < 1`.
    pub fn random<R: Rng>(identity: NumericIdentity, rng: &mut R, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        let mut draw = |lo: f64, hi: f64| {
            let r: f64 = rng.gen_range(lo..=hi);
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            BigComplex::from_f64(r * th.cos(), r * th.sin(), p)
        };
        match identity {
            NumericIdentity::RogersFine => NumericPoint::RogersFine {
                a: draw(0.1, 0.9),
                b: draw(0.1, 0.9),
                t: draw(0.1, 0.6),
                q: draw(0.1, 0.6),
            },
            NumericIdentity::GeneralizedRogersFine => NumericPoint::Generalized {
                alpha: draw(0.1, 0.9),
                beta: draw(0.1, 0.9),
                gamma: draw(0.1, 0.9),
                t: draw(0.1, 0.6),
                q: draw(0.1, 0.6),
            },
            NumericIdentity::WatsonLimit | NumericIdentity::WatsonLimitMinusN => NumericPoint::WatsonLimit {
                a: draw(0.1, 0.5),
                b: draw(0.6, 0.95),
                c: draw(0.6, 0.95),
                e: draw(0.6, 0.95),
                q: draw(0.1, 0.6),
                minus_n: identity == NumericIdentity::WatsonLimitMinusN,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericEvalParams {
    pub point: NumericPoint,
    pub digits: u32,
    pub tolerance: f64,
    pub max_summands: usize,
}

impl NumericEvalParams {
    pub fn new(point: NumericPoint, digits: u32) -> Self {
        NumericEvalParams {
            point,
            digits,
            tolerance: 1e-25,
            max_summands: 4000,
        }
    }

    fn validate(&self) -> Result<(), IdentityError> {
        if self.tolerance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(IdentityError::InvalidParameter("tolerance must be positive".into()));
        }
        let bounded: &[&str] = match self.point {
            NumericPoint::RogersFine { .. } | NumericPoint::Generalized { .. } => &["q", "t"],
            NumericPoint::WatsonLimit { .. } => &["q"],
        };
        for (name, v) in self.point.named_values() {
            if bounded.contains(&name) && v.magnitude() >= 1.0 {
                return Err(IdentityError::InvalidParameter(format!("|{name}| must be < 1")));
            }
        }
        if let NumericPoint::WatsonLimit { a, e, .. } = &self.point {
            if a.magnitude() >= e.magnitude() {
                return Err(IdentityError::InvalidParameter(
                    "|a/e| must be < 1 for the right-hand sum to converge".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Result of summing one side.
#[derive(Clone, Debug, PartialEq)]
pub enum SideSum {
    Converged { value: BigComplex, terms: usize },
    NoDecay { terms: usize },
}

fn mul(a: &BigComplex, b: &BigComplex) -> BigComplex {
    let mut o = a.clone();
    o *= b;
    o
}

fn one_minus(x: &BigComplex) -> BigComplex {
    let mut o = BigComplex::from_i64_prec(1, x.precision());
    o -= x;
    o
}

/// Running `(x; q)_n`.
struct Run {
    name: &'static str,
    value: BigComplex,
    xqn: BigComplex,
    q: BigComplex,
}

impl Run {
    fn new(name: &'static str, x: BigComplex, q: &BigComplex) -> Self {
        Run {
            name,
            value: BigComplex::from_i64_prec(1, x.precision()),
            xqn: x,
            q: q.clone(),
        }
    }

    fn advance(&mut self) {
        self.value *= &one_minus(&self.xqn);
        self.xqn *= &self.q;
    }

    /// As `advance`, for a denominator: refuses factors within `eps` of zero.
    fn advance_checked(&mut self, eps: f64, n: usize) -> Result<(), IdentityError> {
        let f = one_minus(&self.xqn);
        if f.magnitude() < eps {
            return Err(IdentityError::Pole {
                factor: format!("{} factor {n}", self.name),
                detail: format!("|1 - x q^{n}| = {:e}", f.magnitude()),
            });
        }
        self.value *= &f;
        self.xqn *= &self.q;
        Ok(())
    }
}

/// Exact-zero check only; near-vanishing factors are caught by [`Run::advance_checked`].
fn invert(x: &BigComplex, what: &str) -> Result<BigComplex, IdentityError> {
    if x.magnitude() == 0.0 {
        return Err(IdentityError::Pole {
            factor: what.into(),
            detail: format!("|{what}| = {:e}", x.magnitude()),
        });
    }
    Ok(x.inv().expect("nonzero"))
}

/// Adds terms until the current one is negligible and magnitudes have not
/// increased for [`DECAY_RUN`] consecutive terms.
fn sum_side(
    precision: usize,
    tol: f64,
    max: usize,
    mut term: impl FnMut(usize) -> Result<BigComplex, IdentityError>,
) -> Result<SideSum, IdentityError> {
    let small = tol * SUMMATION_MARGIN;
    let mut partial = BigComplex::from_i64_prec(0, precision);
    let mut prev = f64::INFINITY;
    let mut run = 0;
    for n in 0..max {
        let t = term(n)?;
        partial += &t;
        let mag = t.magnitude();
        run = if mag <= prev { run + 1 } else { 0 };
        prev = mag;
        if run >= DECAY_RUN && mag < small * partial.magnitude().max(1.0) {
            return Ok(SideSum::Converged {
                value: partial,
                terms: n + 1,
            });
        }
    }
    Ok(SideSum::NoDecay { terms: max })
}

/// Sums both sides independently.
pub fn evaluate_sides(params: &NumericEvalParams) -> Result<(SideSum, SideSum), IdentityError> {
    params.validate()?;
    let prec = bits_for_digits(params.digits);
    let eps = params.tolerance;
    let max = params.max_summands;
    let tol = params.tolerance;
    let one = BigComplex::from_i64_prec(1, prec);
    let lift = |x: &BigComplex| {
        let mut o = BigComplex::from_i64_prec(0, prec);
        o += x;
        o
    };
    match &params.point {
        NumericPoint::RogersFine { a, b, t, q } => {
            let (a, b, t, q) = (lift(a), lift(b), lift(t), lift(q));
            let aq = mul(&a, &q);
            let bq = mul(&b, &q);
            let lhs = {
                let mut num = Run::new("(aq;q)", aq.clone(), &q);
                let mut den = Run::new("(bq;q)", bq.clone(), &q);
                let mut tn = one.clone();
                sum_side(prec, tol, max, |n| {
                    let v = mul(&mul(&num.value, &invert(&den.value, "(bq;q)_n")?), &tn);
                    num.advance();
                    den.advance_checked(eps, n)?;
                    tn *= &t;
                    Ok(v)
                })?
            };
            let rhs = {
                let atq_b = mul(&mul(&aq, &t), &invert(&b, "b")?);
                let mut p1 = Run::new("(aq;q)", aq.clone(), &q);
                let mut p2 = Run::new("(atq/b;q)", atq_b, &q);
                let mut d1 = Run::new("(bq;q)", bq, &q);
                let mut d2 = Run::new("(t;q)", t.clone(), &q);
                d2.advance_checked(eps, 0)?;
                let bt = mul(&b, &t);
                let mut btn = one.clone();
                let mut qn2 = one.clone();
                let mut qn = one.clone();
                let atq = mul(&aq, &t);
                sum_side(prec, tol, max, |n| {
                    // q^{2n+1} = q^n * q^n * q
                    let q2n1 = mul(&mul(&qn, &qn), &q);
                    let num = mul(&mul(&mul(&p1.value, &p2.value), &mul(&btn, &qn2)), &one_minus(&mul(&atq, &mul(&qn, &qn))));
                    let den = mul(&d1.value, &d2.value);
                    let v = mul(&num, &invert(&den, "(bq;q)_n (t;q)_{n+1}")?);
                    p1.advance();
                    p2.advance();
                    d1.advance_checked(eps, n)?;
                    d2.advance_checked(eps, n + 1)?;
                    btn *= &bt;
                    qn2 *= &q2n1;
                    qn *= &q;
                    Ok(v)
                })?
            };
            Ok((lhs, rhs))
        }
        NumericPoint::Generalized {
            alpha,
            beta,
            gamma,
            t,
            q,
        } => {
            let (alpha, beta, gamma, t, q) = (lift(alpha), lift(beta), lift(gamma), lift(t), lift(q));
            let qinv = invert(&q, "q")?;
            let aqt = mul(&mul(&alpha, &q), &t);
            let lhs = {
                let x = mul(&mul(&beta, &gamma), &invert(&aqt, "alpha q t")?);
                let mut p1 = Run::new("(beta gamma/(alpha q t);q)", x, &q);
                let mut p2 = Run::new("(alpha;q)", alpha.clone(), &q);
                let mut d1 = Run::new("(beta;q)", beta.clone(), &q);
                let mut d2 = Run::new("(gamma;q)", gamma.clone(), &q);
                let mut tn = one.clone();
                sum_side(prec, tol, max, |n| {
                    let den = mul(&d1.value, &d2.value);
                    let v = mul(&mul(&mul(&p1.value, &p2.value), &tn), &invert(&den, "(beta;q)_n (gamma;q)_n")?);
                    p1.advance();
                    p2.advance();
                    d1.advance_checked(eps, n)?;
                    d2.advance_checked(eps, n)?;
                    tn *= &t;
                    Ok(v)
                })?
            };
            let rhs = {
                let mut p1 = Run::new("(alpha q t/beta;q)", mul(&aqt, &invert(&beta, "beta")?), &q);
                let mut p2 = Run::new("(alpha q t/gamma;q)", mul(&aqt, &invert(&gamma, "gamma")?), &q);
                let mut p3 = Run::new("(alpha;q)", alpha.clone(), &q);
                let mut d1 = Run::new("(beta;q)", beta.clone(), &q);
                let mut d2 = Run::new("(gamma;q)", gamma.clone(), &q);
                let mut d3 = Run::new("(t;q)", t.clone(), &q);
                d3.advance_checked(eps, 0)?;
                let ratio = mul(&mul(&beta, &gamma), &invert(&alpha, "alpha")?);
                let neg_ratio = -ratio;
                let at = mul(&alpha, &t);
                let mut rn = one.clone();
                let mut qe = one.clone(); // q^{binom(n,2) - n}
                let mut q2n = one.clone();
                sum_side(prec, tol, max, |n| {
                    let num = mul(
                        &mul(&mul(&p1.value, &p2.value), &mul(&p3.value, &one_minus(&mul(&at, &q2n)))),
                        &mul(&qe, &rn),
                    );
                    let den = mul(&mul(&d1.value, &d2.value), &d3.value);
                    let v = mul(&num, &invert(&den, "(beta;q)_n (gamma;q)_n (t;q)_{n+1}")?);
                    p1.advance();
                    p2.advance();
                    p3.advance();
                    d1.advance_checked(eps, n)?;
                    d2.advance_checked(eps, n)?;
                    d3.advance_checked(eps, n + 1)?;
                    rn *= &neg_ratio;
                    // exponent steps by n - 1
                    qe *= &if n == 0 { qinv.clone() } else { q.powi(n - 1) };
                    q2n *= &mul(&q, &q);
                    Ok(v)
                })?
            };
            Ok((lhs, rhs))
        }
        NumericPoint::WatsonLimit {
            a,
            b,
            c,
            e,
            q,
            minus_n,
        } => {
            let (a, b, c, e, q) = (lift(a), lift(b), lift(c), lift(e), lift(q));
            let qinv = invert(&q, "q")?;
            let aq = mul(&a, &q);
            let inv_1ma = invert(&one_minus(&a), "1 - a")?;
            let aq_b = mul(&aq, &invert(&b, "b")?);
            let aq_c = mul(&aq, &invert(&c, "c")?);
            let aq_e = mul(&aq, &invert(&e, "e")?);
            let lhs = {
                let mut pb = Run::new("(b;q)", b.clone(), &q);
                let mut pc = Run::new("(c;q)", c.clone(), &q);
                let mut pe = Run::new("(e;q)", e.clone(), &q);
                let mut db = Run::new("(aq/b;q)", aq_b.clone(), &q);
                let mut dc = Run::new("(aq/c;q)", aq_c.clone(), &q);
                let mut de = Run::new("(aq/e;q)", aq_e, &q);
                let bce = mul(&mul(&b, &c), &e);
                let z = -mul(&mul(&a, &a), &invert(&bce, "bce")?);
                let mut zn = one.clone();
                let mut qe = one.clone(); // q^{binom(n,2) +- n}
                let mut q2n = one.clone();
                let minus_n = *minus_n;
                sum_side(prec, tol, max, |n| {
                    let num = mul(
                        &mul(&mul(&pb.value, &pc.value), &mul(&pe.value, &one_minus(&mul(&a, &q2n)))),
                        &mul(&qe, &zn),
                    );
                    let den = mul(&mul(&db.value, &dc.value), &de.value);
                    let v = mul(&mul(&num, &inv_1ma), &invert(&den, "(aq/b;q)_n (aq/c;q)_n (aq/e;q)_n")?);
                    pb.advance();
                    pc.advance();
                    pe.advance();
                    db.advance_checked(eps, n)?;
                    dc.advance_checked(eps, n)?;
                    de.advance_checked(eps, n)?;
                    zn *= &z;
                    // binom(n+1,2) - binom(n,2) = n, then +-1
                    qe *= &if minus_n {
                        if n == 0 { qinv.clone() } else { q.powi(n - 1) }
                    } else {
                        q.powi(n + 1)
                    };
                    q2n *= &mul(&q, &q);
                    Ok(v)
                })?
            };
            let rhs = {
                let bc = mul(&b, &c);
                let mut p1 = Run::new("(aq/(bc);q)", mul(&aq, &invert(&bc, "bc")?), &q);
                let mut p2 = Run::new("(e;q)", e.clone(), &q);
                let mut d1 = Run::new("(aq/b;q)", aq_b, &q);
                let mut d2 = Run::new("(aq/c;q)", aq_c, &q);
                let a_e = mul(&a, &invert(&e, "e")?);
                let front = mul(&one_minus(&a_e), &inv_1ma);
                let mut zn = one.clone();
                let s = sum_side(prec, tol, max, |n| {
                    let den = mul(&d1.value, &d2.value);
                    let v = mul(&mul(&mul(&p1.value, &p2.value), &zn), &invert(&den, "(aq/b;q)_n (aq/c;q)_n")?);
                    p1.advance();
                    p2.advance();
                    d1.advance_checked(eps, n)?;
                    d2.advance_checked(eps, n)?;
                    zn *= &a_e;
                    Ok(v)
                })?;
                match s {
                    SideSum::Converged { value, terms } => SideSum::Converged {
                        value: mul(&front, &value),
                        terms,
                    },
                    other => other,
                }
            };
            Ok((lhs, rhs))
        }
    }
}

/// Sums both sides and compares `|LHS - RHS|` with the tolerance.
pub fn numeric_check(params: &NumericEvalParams) -> Result<VerificationReport, IdentityError> {
    let (lhs, rhs) = evaluate_sides(params)?;
    let id = params.point.identity().id();
    Ok(VerificationReport::timed(id, Mode::Numeric, |r| {
        for (name, v) in params.point.named_values() {
            r.param(name, format_complex(v));
        }
        r.param("digits", params.digits);
        r.param("tolerance", format!("{:e}", params.tolerance));
        compare_sides(&lhs, &rhs, params.tolerance, r)
    }))
}

fn compare_sides(lhs: &SideSum, rhs: &SideSum, tol: f64, r: &mut VerificationReport) -> Outcome {
    match (lhs, rhs) {
        (
            SideSum::Converged { value: l, terms: tl },
            SideSum::Converged { value: rv, terms: tr },
        ) => {
            let mut d = l.clone();
            d -= rv;
            let diff = d.magnitude();
            r.note(format!("lhs terms {tl}, rhs terms {tr}, |lhs - rhs| = {diff:e}"));
            if diff < tol {
                Outcome::Verified
            } else {
                Outcome::Mismatch(Witness {
                    index: "value".into(),
                    left: format_complex(l),
                    right: format_complex(rv),
                })
            }
        }
        (SideSum::NoDecay { terms }, _) => Outcome::Inconclusive(format!("left side shows no decay after {terms} terms")),
        (_, SideSum::NoDecay { terms }) => Outcome::Inconclusive(format!("right side shows no decay after {terms} terms")),
    }
}

/// `re + im i` with 30 significant digits; enough for reports.
pub fn format_complex(z: &BigComplex) -> String {
    let re = crate::precise::real::to_f64(z.re());
    let im = crate::precise::real::to_f64(z.im());
    format!("{re:.17e}{}{:.17e}i", if im < 0.0 { "-" } else { "+" }, im.abs())
}

/// Generalized form with `alpha = aq`, `beta = bq`, `gamma = gamma_small`
/// against the Rogers-Fine left side at `(a, b, t, q)`.
pub fn degeneration_check(
    a: (f64, f64),
    b: (f64, f64),
    t: (f64, f64),
    q: (f64, f64),
    gamma_small: f64,
    digits: u32,
    tolerance: f64,
) -> Result<VerificationReport, IdentityError> {
    let p = bits_for_digits(digits);
    let c = |(re, im): (f64, f64)| BigComplex::from_f64(re, im, p);
    let (ca, cb, ct, cq) = (c(a), c(b), c(t), c(q));
    let rf = NumericEvalParams {
        tolerance,
        ..NumericEvalParams::new(
            NumericPoint::RogersFine {
                a: ca.clone(),
                b: cb.clone(),
                t: ct.clone(),
                q: cq.clone(),
            },
            digits,
        )
    };
    let grf = NumericEvalParams {
        tolerance,
        ..NumericEvalParams::new(
            NumericPoint::Generalized {
                alpha: mul(&ca, &cq),
                beta: mul(&cb, &cq),
                gamma: BigComplex::from_f64(gamma_small, 0.0, p),
                t: ct,
                q: cq,
            },
            digits,
        )
    };
    let (rf_lhs, _) = evaluate_sides(&rf)?;
    let (g_lhs, g_rhs) = evaluate_sides(&grf)?;
    Ok(VerificationReport::timed("grf-to-rf", Mode::Numeric, |r| {
        r.param("gamma", format!("{gamma_small:e}"));
        let first = compare_sides(&g_lhs, &rf_lhs, tolerance, r);
        if first != Outcome::Verified {
            return first;
        }
        compare_sides(&g_rhs, &rf_lhs, tolerance, r)
    }))
}
