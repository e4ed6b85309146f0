//! Expansions of the `(p, q)` forms of the main identities around roots of
//! unity, exactly over `Q(zeta_k)`, with a high-precision complex cross-check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::identities::{
    verify_terminating, IdentityError, Mode, Outcome, TerminatingFamily, VerificationReport,
};
use crate::precise::bits_for_digits;
use crate::qseries::{expand_family, Expansion, FamilyContext, QSeriesError, SeriesFamily, SeriesFamilyId};
use crate::series::{SeriesError, TruncatedSeries};
use crate::{Cyclotomic, Scalar};

/// Largest conductor accepted by [`RootContext::new`].
pub const MAX_CONDUCTOR: u32 = 12;
/// Largest expansion order accepted at a root of unity.
pub const MAX_ROOT_ORDER: u32 = 10;
/// Agreement required between exact and complex evaluations.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-40;
/// Digits used for the complex cross-check.
pub const CROSS_CHECK_DIGITS: u32 = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootsError {
    #[error("conductor {k} outside 1..={max}")]
    Conductor { k: u32, max: u32 },
    #[error("order {order} exceeds the budget {max}")]
    Order { order: u32, max: u32 },
    #[error("{expr}: no convergence certificate ({detail})")]
    Certificate { expr: String, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown expression `{0}`")]
    UnknownExpression(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

/// The sums of the `(p, q)` forms; summand `n` is
/// `(+-1)^n p^{pa n + pb} q^{qa n + qb}` times a product of factors
/// `1 - c p^e q^{m j + o}` for `j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootExpr {
    /// `sum (1/p;1/q)_n`
    Comp1Left,
    /// `sum p q^n (p;q)_n (q;q)_n`
    Comp1Mid,
    /// `sum (p/q)^{n+1} (1/q;1/q)_n`
    Comp1Right,
    /// `sum (-1)^n (1/p;1/q)_n`
    Comp2First,
    /// `sum p q^n (p;q)_n (-q;q)_n`
    Comp2Mid,
    /// `sum (q/p)^n (p;q^2)_n`
    Comp2Right,
}

#[derive(Clone, Copy, Debug)]
struct FactorKind {
    label: &'static str,
    c: i64,
    p_exp: i64,
    q_mult: i64,
    q_off: i64,
}

#[derive(Clone, Copy, Debug)]
struct Shape {
    alternating: bool,
    p_lin: (i64, i64),
    q_lin: (i64, i64),
    factors: &'static [FactorKind],
}

const INV_P_INV_Q: FactorKind = FactorKind {
    label: "(1/p;1/q)_n",
    c: 1,
    p_exp: -1,
    q_mult: -1,
    q_off: 0,
};
const P_Q: FactorKind = FactorKind {
    label: "(p;q)_n",
    c: 1,
    p_exp: 1,
    q_mult: 1,
    q_off: 0,
};

impl RootExpr {
    pub const ALL: [RootExpr; 6] = [
        RootExpr::Comp1Left,
        RootExpr::Comp1Mid,
        RootExpr::Comp1Right,
        RootExpr::Comp2First,
        RootExpr::Comp2Mid,
        RootExpr::Comp2Right,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RootExpr::Comp1Left => "comp1-left",
            RootExpr::Comp1Mid => "comp1-mid",
            RootExpr::Comp1Right => "comp1-right",
            RootExpr::Comp2First => "comp2-first",
            RootExpr::Comp2Mid => "comp2-mid",
            RootExpr::Comp2Right => "comp2-right",
        }
    }

    fn shape(self) -> Shape {
        match self {
            RootExpr::Comp1Left => Shape {
                alternating: false,
                p_lin: (0, 0),
                q_lin: (0, 0),
                factors: &[INV_P_INV_Q],
            },
            RootExpr::Comp2First => Shape {
                alternating: true,
                p_lin: (0, 0),
                q_lin: (0, 0),
                factors: &[INV_P_INV_Q],
            },
            RootExpr::Comp1Mid => Shape {
                alternating: false,
                p_lin: (0, 1),
                q_lin: (1, 0),
                factors: &[
                    P_Q,
                    FactorKind {
                        label: "(q;q)_n",
                        c: 1,
                        p_exp: 0,
                        q_mult: 1,
                        q_off: 1,
                    },
                ],
            },
            RootExpr::Comp2Mid => Shape {
                alternating: false,
                p_lin: (0, 1),
                q_lin: (1, 0),
                factors: &[
                    P_Q,
                    FactorKind {
                        label: "(-q;q)_n",
                        c: -1,
                        p_exp: 0,
                        q_mult: 1,
                        q_off: 1,
                    },
                ],
            },
            RootExpr::Comp1Right => Shape {
                alternating: false,
                p_lin: (1, 1),
                q_lin: (-1, -1),
                factors: &[FactorKind {
                    label: "(1/q;1/q)_n",
                    c: 1,
                    p_exp: 0,
                    q_mult: -1,
                    q_off: -1,
                }],
            },
            RootExpr::Comp2Right => Shape {
                alternating: false,
                p_lin: (-1, 0),
                q_lin: (1, 0),
                factors: &[FactorKind {
                    label: "(p;q^2)_n",
                    c: 1,
                    p_exp: 1,
                    q_mult: 2,
                    q_off: 0,
                }],
            },
        }
    }
}

impl fmt::Display for RootExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RootExpr {
    type Err = RootsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RootExpr::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| RootsError::UnknownExpression(s.into()))
    }
}

/// `p0 = zeta_k^a`, `q0 = zeta_k^b`, with the certificates computed from them.
#[derive(Clone, Debug, PartialEq)]
pub struct RootContext {
    pub k: u32,
    pub a: i64,
    pub b: i64,
    pub order: u32,
    pub p0: Cyclotomic,
    pub q0: Cyclotomic,
    /// Smallest `j >= 0` with `p0 q0^j = 1`.
    pub certificate: Option<u32>,
    /// Multiplicative order of `q0`.
    pub q_order: u32,
}

impl RootContext {
    pub fn new(k: u32, a: i64, b: i64, order: u32) -> Result<Self, RootsError> {
        if k == 0 || k > MAX_CONDUCTOR {
            return Err(RootsError::Conductor { k, max: MAX_CONDUCTOR });
        }
        if order > MAX_ROOT_ORDER {
            return Err(RootsError::Order {
                order,
                max: MAX_ROOT_ORDER,
            });
        }
        let q_order = k / (b.rem_euclid(k as i64) as u32).gcd(&k);
        let p0 = Cyclotomic::zeta(k, a);
        let q0 = Cyclotomic::zeta(k, b);
        let mut acc = p0.clone();
        let mut certificate = None;
        for j in 0..q_order {
            if acc.is_one() {
                certificate = Some(j);
                break;
            }
            acc *= &q0;
        }
        Ok(RootContext {
            k,
            a,
            b,
            order,
            p0,
            q0,
            certificate,
            q_order,
        })
    }
}

/// On-demand powers `x^e`, `e` of either sign.
struct Powers<S: Scalar> {
    pos: Vec<TruncatedSeries<S>>,
    neg: Vec<TruncatedSeries<S>>,
    what: &'static str,
}

impl<S: Scalar> Powers<S> {
    fn new(x: TruncatedSeries<S>, what: &'static str) -> Self {
        let one = TruncatedSeries::one(x.vars(), x.truncation());
        Powers {
            pos: vec![one.clone(), x],
            neg: vec![one],
            what,
        }
    }

    fn get(&mut self, e: i64) -> Result<&TruncatedSeries<S>, RootsError> {
        let k = e.unsigned_abs() as usize;
        if e >= 0 {
            while self.pos.len() <= k {
                let next = self.pos.last().expect("nonempty").try_mul(&self.pos[1])?;
                self.pos.push(next);
            }
            Ok(&self.pos[k])
        } else {
            if self.neg.len() == 1 {
                let inv = self.pos[1].invert().map_err(|_| {
                    RootsError::InvalidParameter(format!("{} vanishes at the expansion point", self.what))
                })?;
                self.neg.push(inv);
            }
            while self.neg.len() <= k {
                let next = self.neg.last().expect("nonempty").try_mul(&self.neg[1])?;
                self.neg.push(next);
            }
            Ok(&self.neg[k])
        }
    }
}

fn scalar_pow<S: Scalar>(x: &S, e: i64) -> Option<S> {
    let base = if e < 0 { x.try_inv()? } else { x.clone() };
    let mut acc = S::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Some(acc)
}

/// Expands `expr` in `(u, v)` with `p = p0 + u`, `q = q0 + v`, truncated at
/// total degree `order`. `q0` must be a root of unity of order `period`.
/// With `p0 = 0` the first variable is `p` itself, which is how the
/// single-point form with `p` formal is obtained.
///
/// A factor whose constant term vanishes raises the summand's minimum degree
/// by one; summation stops once that count exceeds `order`.
pub fn expand_at_point<S: Scalar>(
    expr: RootExpr,
    p0: &S,
    q0: &S,
    period: u32,
    order: u32,
) -> Result<TruncatedSeries<S>, RootsError> {
    let tol = S::default_tolerance();
    if q0.near_zero(tol) {
        return Err(RootsError::InvalidParameter("q0 must be nonzero".into()));
    }
    if period == 0 {
        return Err(RootsError::InvalidParameter("q0 must be a root of unity".into()));
    }
    let shape = expr.shape();
    let p_formal = p0.near_zero(tol);
    if p_formal && (shape.p_lin.0 < 0 || shape.p_lin.1 < 0 || shape.factors.iter().any(|f| f.p_exp < 0)) {
        return Err(RootsError::InvalidParameter(format!("{expr} needs p0 != 0")));
    }

    // constant terms of the factors over one period of q0
    let vanish: Vec<Vec<bool>> = shape
        .factors
        .iter()
        .map(|f| {
            (0..period as i64)
                .map(|j| {
                    let pe = scalar_pow(p0, f.p_exp).unwrap_or_else(S::zero);
                    let qe = scalar_pow(q0, f.q_mult * j + f.q_off).expect("q0 invertible");
                    let mut c = S::one();
                    c -= &S::from_i64(f.c).mul_ref(&pe).mul_ref(&qe);
                    c.near_zero(tol)
                })
                .collect()
        })
        .collect();
    let grows = vanish.iter().flatten().any(|v| *v) || (p_formal && shape.p_lin.0 > 0);
    if !grows {
        let labels: Vec<&str> = shape.factors.iter().map(|f| f.label).collect();
        return Err(RootsError::Certificate {
            expr: expr.id().into(),
            detail: format!(
                "no factor of {} vanishes at (p0, q0) = ({p0}, {q0}), so the summands do not tend to zero",
                labels.join(" ")
            ),
        });
    }

    let vars = 2;
    let u = TruncatedSeries::var(vars, order, 0);
    let v = TruncatedSeries::var(vars, order, 1);
    let p = if p_formal {
        u
    } else {
        &TruncatedSeries::constant(vars, order, p0.clone()) + &u
    };
    let q = &TruncatedSeries::constant(vars, order, q0.clone()) + &v;
    let mut pp = Powers::new(p, "p");
    let mut qp = Powers::new(q, "q");
    let one = TruncatedSeries::one(vars, order);

    let mut total = TruncatedSeries::zero(vars, order);
    let mut prod = one.clone();
    let mut vanishing = 0i64;
    let mut n: i64 = 0;
    loop {
        let p_exp = shape.p_lin.0 * n + shape.p_lin.1;
        let bound = vanishing + if p_formal { p_exp } else { 0 };
        if bound > order as i64 {
            break;
        }
        let mut term = pp.get(p_exp)?.try_mul(qp.get(shape.q_lin.0 * n + shape.q_lin.1)?)?.try_mul(&prod)?;
        if shape.alternating && n % 2 == 1 {
            term = -&term;
        }
        total = total.try_add(&term)?;
        for (f, pattern) in shape.factors.iter().zip(&vanish) {
            let mono = pp.get(f.p_exp)?.try_mul(qp.get(f.q_mult * n + f.q_off)?)?;
            let factor = one.try_sub(&mono.scale(&S::from_i64(f.c)))?;
            prod = prod.try_mul(&factor)?;
            if pattern[(n as usize) % period as usize] {
                vanishing += 1;
            }
        }
        n += 1;
    }
    Ok(total)
}

/// `expr` around `(p0, q0) = (zeta_k^a, zeta_k^b)` over `Q(zeta_k)`.
pub fn expand_at_root(expr: RootExpr, ctx: &RootContext) -> Result<TruncatedSeries<Cyclotomic>, RootsError> {
    expand_at_point(expr, &ctx.p0, &ctx.q0, ctx.q_order, ctx.order)
}

/// Largest coefficient deviation between the exact expansion embedded in
/// `C` and the same expansion carried out in `CROSS_CHECK_DIGITS`-digit complex arithmetic.
pub fn complex_deviation(
    exact: &TruncatedSeries<Cyclotomic>,
    expr: RootExpr,
    p0: &Cyclotomic,
    q0: &Cyclotomic,
    period: u32,
) -> Result<f64, RootsError> {
    let bits = bits_for_digits(CROSS_CHECK_DIGITS);
    let approx = expand_at_point(expr, &p0.to_complex(bits), &q0.to_complex(bits), period, exact.truncation())?;
    let embedded = exact.map_coeffs(|c| c.to_complex(bits));
    let diff = embedded.try_sub(&approx)?;
    Ok(diff.terms().map(|(_, c)| c.magnitude()).fold(0.0, f64::max))
}

fn compare_series(
    a: &TruncatedSeries<Cyclotomic>,
    b: &TruncatedSeries<Cyclotomic>,
    order: u32,
) -> Result<Outcome, RootsError> {
    Ok(Outcome::from_match(a.equal_up_to(b, order)?))
}

/// Both clauses of the `F3` conjecture at `ctx`.
///
/// `conj1`: `sum (1/p;1/q)_n` against `sum (p/q)^{n+1} (1/q;1/q)_n` in
/// `(p - p0, q - q0)`; needs `p0 q0^j = 1` for some `j`.
/// `conj2`: `sum p q^n (p;q)_n (q;q)_n` against the same right side in
/// `(p, q - q0)`, `p` formal; `q0` a root of unity suffices.
///
/// The outcomes are evidence only.
pub fn conjecture_explore(ctx: &RootContext) -> Result<Vec<VerificationReport>, RootsError> {
    let mut out = Vec::new();
    let n = ctx.order;
    let left = expand_at_root(RootExpr::Comp1Left, ctx)?;
    let right = expand_at_root(RootExpr::Comp1Right, ctx)?;
    let dev = complex_deviation(&left, RootExpr::Comp1Left, &ctx.p0, &ctx.q0, ctx.q_order)?
        .max(complex_deviation(&right, RootExpr::Comp1Right, &ctx.p0, &ctx.q0, ctx.q_order)?);
    let outcome = compare_series(&left, &right, n)?;
    let r = VerificationReport::timed("conj1", Mode::Formal, |r| {
        root_params(r, ctx);
        r.note("variables (p - p0, q - q0); conjectural, reported as evidence");
        r.note(format!("constant terms {} and {}", left.constant_term(), right.constant_term()));
        r.note(format!("complex cross-check max deviation {dev:e}"));
        cross_checked(outcome, dev)
    })
    .with_order(n);
    out.push(r);

    let zero = Cyclotomic::zero();
    let mid = expand_at_point(RootExpr::Comp1Mid, &zero, &ctx.q0, ctx.q_order, n)?;
    let right = expand_at_point(RootExpr::Comp1Right, &zero, &ctx.q0, ctx.q_order, n)?;
    let dev = complex_deviation(&mid, RootExpr::Comp1Mid, &zero, &ctx.q0, ctx.q_order)?
        .max(complex_deviation(&right, RootExpr::Comp1Right, &zero, &ctx.q0, ctx.q_order)?);
    let outcome = compare_series(&mid, &right, n)?;
    out.push(
        VerificationReport::timed("conj2", Mode::Formal, |r| {
            root_params(r, ctx);
            r.note("variables (p, q - q0) with p formal; conjectural, reported as evidence");
            r.note(format!("complex cross-check max deviation {dev:e}"));
            cross_checked(outcome, dev)
        })
        .with_order(n),
    );
    Ok(out)
}

fn root_params(r: &mut VerificationReport, ctx: &RootContext) {
    r.param("k", ctx.k);
    r.param("a", ctx.a);
    r.param("b", ctx.b);
    r.param("p0", &ctx.p0);
    r.param("q0", &ctx.q0);
    r.param(
        "certificate",
        ctx.certificate.map_or_else(|| "none".to_string(), |j| j.to_string()),
    );
}

fn cross_checked(outcome: Outcome, deviation: f64) -> Outcome {
    if outcome == Outcome::Verified && deviation.partial_cmp(&CROSS_CHECK_TOLERANCE) != Some(std::cmp::Ordering::Less) {
        return Outcome::Error(format!("complex cross-check deviates by {deviation:e}"));
    }
    outcome
}

/// Exact terminating check over `Q(zeta)`, re-evaluated in complex arithmetic.
pub fn root_terminating_check(
    family: TerminatingFamily,
    p: &Cyclotomic,
    q: &Cyclotomic,
) -> Result<VerificationReport, RootsError> {
    let mut exact = verify_terminating(family, p, q)?;
    let bits = bits_for_digits(CROSS_CHECK_DIGITS);
    let (pc, qc) = (p.to_complex(bits), q.to_complex(bits));
    let mut worst = 0.0f64;
    for &e in family.expressions() {
        let ex = crate::identities::evaluate_terminating(e, p, q)?;
        let ap = crate::identities::evaluate_terminating(e, &pc, &qc)?;
        let mut d = ex.value.to_complex(bits);
        d -= &ap.value;
        worst = worst.max(d.magnitude());
    }
    exact.note(format!("complex cross-check max deviation {worst:e}"));
    exact.outcome = cross_checked(exact.outcome, worst);
    Ok(exact)
}

/// Which main-theorem series is recovered at `p0 = q0 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitPointSeries {
    /// `comp1-left` with `p = 1/(1-y)`, `q = 1/(1-x)` gives F1.
    F1,
    /// `comp2-first` with `p = 1 - y`, `q = 1 - x` gives G1.
    G1,
}

/// Expands at `(1, 1)`, substitutes back to `(x, y)` and compares with the
/// integer expansion of F1 or G1.
pub fn unit_point_consistency(which: UnitPointSeries, order: u32) -> Result<VerificationReport, RootsError> {
    if order > MAX_ROOT_ORDER {
        return Err(RootsError::Order {
            order,
            max: MAX_ROOT_ORDER,
        });
    }
    let one = Cyclotomic::one();
    let ctx = FamilyContext::<Cyclotomic>::new(2, order);
    let (expr, family, sigma) = match which {
        UnitPointSeries::F1 => (
            RootExpr::Comp1Left,
            SeriesFamilyId::F1,
            // p - 1 = y/(1-y), q - 1 = x/(1-x)
            [&ctx.y * &ctx.inv_omy, &ctx.x * &ctx.inv_omx],
        ),
        UnitPointSeries::G1 => (RootExpr::Comp2First, SeriesFamilyId::G1, [-&ctx.y, -&ctx.x]),
    };
    let at_root = expand_at_point(expr, &one, &one, 1, order)?.substitute(&sigma)?;
    let reference = match expand_family(&SeriesFamily::plain(family)?, order)? {
        Expansion::Integer(s) => s.map_coeffs(|c: &BigInt| Cyclotomic::rational(c.clone().into())),
        Expansion::Rational(s) => s.map_coeffs(|c| Cyclotomic::rational(c.clone())),
    };
    let outcome = compare_series(&at_root, &reference, order)?;
    Ok(VerificationReport::timed(format!("{expr}-at-1"), Mode::Formal, |r| {
        r.param("series", family.name());
        outcome
    })
    .with_order(order))
}
