use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{q_pochhammer, PochLength, PochhammerSteps, QPochhammerSpec, QSeriesError};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

type Series<S> = TruncatedSeries<S>;

/// The building blocks shared by every bivariate family: `x = var 0`,
/// `y = var 1`, plus `1-x`, `1-y` and their inverses.
#[derive(Clone, Debug)]
pub struct FamilyContext<S> {
    pub one: Series<S>,
    pub x: Series<S>,
    pub y: Series<S>,
    pub omx: Series<S>,
    pub omy: Series<S>,
    pub inv_omx: Series<S>,
    pub inv_omy: Series<S>,
}

impl<S: Scalar> FamilyContext<S> {
    /// `vars` is 2, or 3 when an auxiliary formal variable (index 2) is needed.
    pub fn new(vars: usize, truncation: u32) -> Self {
        assert!(vars >= 2, "families need at least x and y");
        let one = Series::one(vars, truncation);
        let x = Series::var(vars, truncation, 0);
        let y = Series::var(vars, truncation, 1);
        let omx = &one - &x;
        let omy = &one - &y;
        let inv_omx = omx.invert().expect("1 - x is a unit");
        let inv_omy = omy.invert().expect("1 - y is a unit");
        FamilyContext {
            one,
            x,
            y,
            omx,
            omy,
            inv_omx,
            inv_omy,
        }
    }

    pub fn vars(&self) -> usize {
        self.one.vars()
    }

    pub fn truncation(&self) -> u32 {
        self.one.truncation()
    }

    fn constant(&self, c: S) -> Series<S> {
        Series::constant(self.vars(), self.truncation(), c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesFamilyId {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
    KrFirstForm,
    KrSecondForm,
    Gamma1Lhs,
    Gamma1Rhs,
    Gamma2Lhs,
    Gamma2Rhs,
    PentagonalSum,
    PentagonalProduct,
    PentagonalTheta,
}

impl SeriesFamilyId {
    pub const ALL: [SeriesFamilyId; 15] = [
        SeriesFamilyId::F1,
        SeriesFamilyId::F2,
        SeriesFamilyId::F3,
        SeriesFamilyId::G1,
        SeriesFamilyId::G2,
        SeriesFamilyId::G3,
        SeriesFamilyId::KrFirstForm,
        SeriesFamilyId::KrSecondForm,
        SeriesFamilyId::Gamma1Lhs,
        SeriesFamilyId::Gamma1Rhs,
        SeriesFamilyId::Gamma2Lhs,
        SeriesFamilyId::Gamma2Rhs,
        SeriesFamilyId::PentagonalSum,
        SeriesFamilyId::PentagonalProduct,
        SeriesFamilyId::PentagonalTheta,
    ];

    pub fn name(self) -> &'static str {
        use SeriesFamilyId::*;
        match self {
            F1 => "F1",
            F2 => "F2",
            F3 => "F3",
            G1 => "G1",
            G2 => "G2",
            G3 => "G3",
            KrFirstForm => "F3-KR-first-form",
            KrSecondForm => "F3-KR-second-form",
            Gamma1Lhs => "gamma1-lhs",
            Gamma1Rhs => "gamma1-rhs",
            Gamma2Lhs => "gamma2-lhs",
            Gamma2Rhs => "gamma2-rhs",
            PentagonalSum => "pentagonal-sum",
            PentagonalProduct => "pentagonal-product",
            PentagonalTheta => "pentagonal-theta",
        }
    }

    /// Parameter names, in order.
    pub fn parameters(self) -> &'static [&'static str] {
        use SeriesFamilyId::*;
        match self {
            Gamma1Lhs | Gamma1Rhs => &["gamma", "r"],
            Gamma2Lhs | Gamma2Rhs => &["gamma"],
            _ => &[],
        }
    }

    /// 1 for the pentagonal forms (variable `w`), 2 otherwise (`x`, `y`).
    pub fn variable_count(self) -> usize {
        use SeriesFamilyId::*;
        match self {
            PentagonalSum | PentagonalProduct | PentagonalTheta => 1,
            _ => 2,
        }
    }

    pub fn variable_names(self) -> &'static [&'static str] {
        if self.variable_count() == 1 {
            &["w"]
        } else {
            &["x", "y"]
        }
    }

    pub fn is_gamma(self) -> bool {
        !self.parameters().is_empty()
    }

    /// Lower bound on the total degree of summand `n`.
    pub fn min_summand_degree(self, n: usize) -> usize {
        use SeriesFamilyId::*;
        match self {
            KrFirstForm | PentagonalSum => n + 1,
            _ => n,
        }
    }
}

impl fmt::Display for SeriesFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesFamilyId {
    type Err = QSeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeriesFamilyId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| QSeriesError::UnknownFamily(s.to_string()))
    }
}

/// A family id together with its (validated) exact parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesFamily {
    id: SeriesFamilyId,
    params: Vec<BigRational>,
}

/// A family expansion in the ring the family naturally lives in.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    Integer(Series<BigInt>),
    Rational(Series<BigRational>),
}

impl Expansion {
    pub fn to_rational(&self) -> Series<BigRational> {
        match self {
            Expansion::Integer(s) => s.map_coeffs(|c| BigRational::from_integer(c.clone())),
            Expansion::Rational(s) => s.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&Series<BigInt>> {
        match self {
            Expansion::Integer(s) => Some(s),
            Expansion::Rational(_) => None,
        }
    }
}

impl SeriesFamily {
    pub fn new(id: SeriesFamilyId, params: Vec<BigRational>) -> Result<Self, QSeriesError> {
        let expected = id.parameters().len();
        if params.len() != expected {
            return Err(QSeriesError::ParameterCount {
                family: id.name().into(),
                expected,
                got: params.len(),
            });
        }
        if id.is_gamma() && params[0].is_one() {
            return Err(QSeriesError::GammaIsOne {
                family: id.name().into(),
            });
        }
        Ok(SeriesFamily { id, params })
    }

    /// A parameter-free family.
    pub fn plain(id: SeriesFamilyId) -> Result<Self, QSeriesError> {
        SeriesFamily::new(id, Vec::new())
    }

    pub fn id(&self) -> SeriesFamilyId {
        self.id
    }

    pub fn params(&self) -> &[BigRational] {
        &self.params
    }

    /// Number of summands whose minimum total degree is at most `n`.
    pub fn summands_needed(&self, n: u32) -> usize {
        (0..)
            .take_while(|&k| self.id.min_summand_degree(k) <= n as usize)
            .count()
    }

    fn param<S: Scalar>(&self, i: usize) -> Result<S, QSeriesError> {
        S::from_rational(&self.params[i]).ok_or_else(|| QSeriesError::NonIntegerParameter {
            family: self.id.name().into(),
        })
    }

    /// Builds the truncated sum over the first `summands` summands.
    ///
    /// Product and theta forms ignore `summands`: they are complete at
    /// truncation `n` by construction.
    pub fn build<S: Scalar>(&self, n: u32, summands: usize) -> Result<Series<S>, QSeriesError> {
        use SeriesFamilyId::*;
        if self.id.variable_count() == 1 {
            return match self.id {
                PentagonalSum => Ok(pentagonal_sum(n, summands)),
                PentagonalProduct => pentagonal_product(n),
                _ => Ok(pentagonal_theta(n)),
            };
        }
        let ctx = FamilyContext::<S>::new(2, n);
        Ok(match self.id {
            F1 => f1(&ctx, summands),
            F2 => f2(&ctx, summands),
            F3 => f3(&ctx, summands),
            G1 => g1(&ctx, summands),
            G2 => g2(&ctx, summands),
            G3 => g3(&ctx, summands),
            KrFirstForm => kr_first(&ctx, summands),
            KrSecondForm => kr_second(&ctx, summands),
            Gamma1Lhs => gamma1_lhs(&ctx, &self.param(0)?, &self.param(1)?, summands)?,
            Gamma1Rhs => gamma1_rhs(&ctx, &self.param(0)?, &self.param(1)?, summands)?,
            Gamma2Lhs => gamma2_lhs(&ctx, &self.param(0)?, summands)?,
            Gamma2Rhs => gamma2_rhs(&ctx, &self.param(0)?, summands)?,
            PentagonalSum | PentagonalProduct | PentagonalTheta => unreachable!(),
        })
    }
}

/// Expands a family to total degree `n`: integers for parameter-free
/// families, rationals for the gamma families.
pub fn expand_family(fam: &SeriesFamily, n: u32) -> Result<Expansion, QSeriesError> {
    expand_family_with_extra(fam, n, 0)
}

/// As [`expand_family`], summing `extra` summands past the cutoff.
pub fn expand_family_with_extra(
    fam: &SeriesFamily,
    n: u32,
    extra: usize,
) -> Result<Expansion, QSeriesError> {
    let summands = fam.summands_needed(n) + extra;
    if fam.id.is_gamma() {
        fam.build(n, summands).map(Expansion::Rational)
    } else {
        fam.build(n, summands).map(Expansion::Integer)
    }
}

fn sum<S: Scalar>(ctx: &FamilyContext<S>, terms: impl Iterator<Item = Series<S>>) -> Series<S> {
    terms.fold(Series::zero(ctx.vars(), ctx.truncation()), |acc, t| &acc + &t)
}

/// Successive powers `1, b, b^2, ...`.
fn powers<S: Scalar>(b: &Series<S>) -> impl Iterator<Item = Series<S>> {
    let b = b.clone();
    std::iter::successors(Some(Series::one(b.vars(), b.truncation())), move |p| {
        Some(p * &b)
    })
}

fn alternating<S: Scalar>(n: usize) -> S {
    if n % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Running inverses `1/(g;q)_0, 1/(g;q)_1, ...`.
fn inverse_pochhammers<S: Scalar>(
    g: &Series<S>,
    q: &Series<S>,
    count: usize,
) -> Result<Vec<Series<S>>, QSeriesError> {
    let one = Series::one(g.vars(), g.truncation());
    let mut out = Vec::with_capacity(count);
    let mut acc = one.clone();
    let mut gq = g.clone();
    for _ in 0..count {
        out.push(acc.clone());
        acc = acc.try_mul(&one.try_sub(&gq)?.invert()?)?;
        gq = gq.try_mul(q)?;
    }
    Ok(out)
}

/// `F1 = sum (1-y; 1-x)_n`.
pub(crate) fn f1<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    sum(ctx, PochhammerSteps::new(&ctx.omy, &ctx.omx).take(summands))
}

/// `F2 = sum 1/((1-y)(1-x)^n) (1/(1-y); 1/(1-x))_n (1/(1-x); 1/(1-x))_n`.
pub(crate) fn f2<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let terms = PochhammerSteps::new(&ctx.inv_omy, &ctx.inv_omx)
        .zip(PochhammerSteps::new(&ctx.inv_omx, &ctx.inv_omx))
        .zip(powers(&ctx.inv_omx))
        .take(summands)
        .map(|((a, b), pw)| &(&(&a * &b) * &pw) * &ctx.inv_omy);
    sum(ctx, terms)
}

/// `F3 = sum ((1-x)/(1-y))^{n+1} (1-x; 1-x)_n`.
pub(crate) fn f3<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let ratio = &ctx.omx * &ctx.inv_omy;
    let terms = PochhammerSteps::new(&ctx.omx, &ctx.omx)
        .zip(powers(&ratio).skip(1))
        .take(summands)
        .map(|(p, r)| &p * &r);
    sum(ctx, terms)
}

/// `G1 = sum (-1)^n (1/(1-y); 1/(1-x))_n`.
pub(crate) fn g1<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let terms = PochhammerSteps::new(&ctx.inv_omy, &ctx.inv_omx)
        .take(summands)
        .enumerate()
        .map(|(n, p)| p.scale(&alternating(n)));
    sum(ctx, terms)
}

/// `G2 = sum (1-y)(1-x)^n (1-y; 1-x)_n (-(1-x); 1-x)_n`.
pub(crate) fn g2<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let terms = PochhammerSteps::new(&ctx.omy, &ctx.omx)
        .zip(PochhammerSteps::new(&-&ctx.omx, &ctx.omx))
        .zip(powers(&ctx.omx))
        .take(summands)
        .map(|((a, b), pw)| &(&(&a * &b) * &pw) * &ctx.omy);
    sum(ctx, terms)
}

/// `G3 = sum ((1-x)/(1-y))^n (1-y; (1-x)^2)_n`.
pub(crate) fn g3<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let ratio = &ctx.omx * &ctx.inv_omy;
    let terms = PochhammerSteps::new(&ctx.omy, &(&ctx.omx * &ctx.omx))
        .zip(powers(&ratio))
        .take(summands)
        .map(|(p, r)| &p * &r);
    sum(ctx, terms)
}

/// `prod_{k=1}^{n} (1 - (1-x)^k)` for `n = 0, 1, ...`.
fn kr_products<S: Scalar>(ctx: &FamilyContext<S>) -> impl Iterator<Item = Series<S>> + '_ {
    let mut acc = ctx.one.clone();
    let mut pw = ctx.one.clone();
    std::iter::from_fn(move || {
        let out = acc.clone();
        pw = &pw * &ctx.omx;
        acc = &acc * &(&ctx.one - &pw);
        Some(out)
    })
}

/// `1 + sum y/(1-y)^{n+1} prod_{k=1}^{n} (1 - (1-x)^k)`.
pub(crate) fn kr_first<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let terms = kr_products(ctx)
        .zip(powers(&ctx.inv_omy).skip(1))
        .take(summands)
        .map(|(p, r)| &(&p * &r) * &ctx.y);
    &ctx.one + &sum(ctx, terms)
}

/// `sum ((1-x)/(1-y))^{n+1} prod_{k=1}^{n} (1 - (1-x)^k)`.
pub(crate) fn kr_second<S: Scalar>(ctx: &FamilyContext<S>, summands: usize) -> Series<S> {
    let ratio = &ctx.omx * &ctx.inv_omy;
    let terms = kr_products(ctx)
        .zip(powers(&ratio).skip(1))
        .take(summands)
        .map(|(p, r)| &p * &r);
    sum(ctx, terms)
}

/// `sum r^n (gamma/(r(1-x)); 1-x)_n (1/(1-y); 1/(1-x))_n / (gamma; 1-x)_n`,
/// with `r^n (gamma/(r(1-x)); 1-x)_n` expanded as `prod_{k<n} (r - gamma (1-x)^{k-1})`
/// so that `r = 0` is allowed.
pub(crate) fn gamma1_lhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    gamma: &S,
    r: &S,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let g = ctx.constant(gamma.clone());
    let rr = ctx.constant(r.clone());
    let dens = inverse_pochhammers(&g, &ctx.omx, summands)?;
    let mut front = ctx.one.clone();
    let mut gpow = g.try_mul(&ctx.inv_omx)?;
    let mut total = Series::zero(ctx.vars(), ctx.truncation());
    for (n, (p, d)) in PochhammerSteps::new(&ctx.inv_omy, &ctx.inv_omx)
        .zip(dens)
        .enumerate()
    {
        if n > 0 {
            front = front.try_mul(&rr.try_sub(&gpow)?)?;
            gpow = gpow.try_mul(&ctx.omx)?;
        }
        total = total.try_add(&front.try_mul(&p)?.try_mul(&d)?)?;
    }
    Ok(total)
}

/// `sum (1-y)(1-x)^n (1-y; 1-x)_n (r(1-x); 1-x)_n / (gamma; 1-x)_n`.
pub(crate) fn gamma1_rhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    gamma: &S,
    r: &S,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let g = ctx.constant(gamma.clone());
    let dens = inverse_pochhammers(&g, &ctx.omx, summands)?;
    let rq = ctx.omx.scale(r);
    let terms = PochhammerSteps::new(&ctx.omy, &ctx.omx)
        .zip(PochhammerSteps::new(&rq, &ctx.omx))
        .zip(powers(&ctx.omx))
        .zip(dens)
        .map(|(((a, b), pw), d)| &(&(&(&a * &b) * &pw) * &d) * &ctx.omy);
    Ok(sum(ctx, terms))
}

/// `sum (-1)^n (1/(1-y); 1/(1-x))_n / (gamma; (1-x)^{-2})_{floor(n/2)}`.
pub(crate) fn gamma2_lhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    gamma: &S,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let g = ctx.constant(gamma.clone());
    let q2 = &ctx.inv_omx * &ctx.inv_omx;
    let dens = inverse_pochhammers(&g, &q2, summands / 2 + 1)?;
    let terms = PochhammerSteps::new(&ctx.inv_omy, &ctx.inv_omx)
        .take(summands)
        .enumerate()
        .map(|(n, p)| (&p * &dens[n / 2]).scale(&alternating(n)));
    Ok(sum(ctx, terms))
}

/// `sum ((1-x)/(1-y))^n (1-y; (1-x)^2)_n (gamma(1-x)(1-y); (1-x)^{-2})_n / (gamma; (1-x)^{-2})_n`.
pub(crate) fn gamma2_rhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    gamma: &S,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let g = ctx.constant(gamma.clone());
    let q2 = &ctx.inv_omx * &ctx.inv_omx;
    let dens = inverse_pochhammers(&g, &q2, summands)?;
    let ratio = &ctx.omx * &ctx.inv_omy;
    let second = (&ctx.omx * &ctx.omy).scale(gamma);
    let terms = PochhammerSteps::new(&ctx.omy, &(&ctx.omx * &ctx.omx))
        .zip(PochhammerSteps::new(&second, &q2))
        .zip(powers(&ratio))
        .zip(dens)
        .map(|(((a, b), pw), d)| &(&(&a * &b) * &pw) * &d);
    Ok(sum(ctx, terms))
}

/// Left side of the r-deformed identity:
/// `sum (1/(1-y); 1/(1-x))_n r^n`, with `r` any series in the context's variables.
pub fn prop12_lhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    r: &Series<S>,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let mut total = Series::zero(ctx.vars(), ctx.truncation());
    let mut rn = ctx.one.clone();
    for p in PochhammerSteps::new(&ctx.inv_omy, &ctx.inv_omx).take(summands) {
        total = total.try_add(&p.try_mul(&rn)?)?;
        rn = rn.try_mul(r)?;
    }
    Ok(total)
}

/// Right side: `sum (1-y)(1-x)^n (1-y; 1-x)_n (r(1-x); 1-x)_n`.
pub fn prop12_rhs<S: Scalar>(
    ctx: &FamilyContext<S>,
    r: &Series<S>,
    summands: usize,
) -> Result<Series<S>, QSeriesError> {
    let rq = r.try_mul(&ctx.omx)?;
    let terms = PochhammerSteps::new(&ctx.omy, &ctx.omx)
        .zip(PochhammerSteps::new(&rq, &ctx.omx))
        .zip(powers(&ctx.omx))
        .take(summands)
        .map(|((a, b), pw)| &(&(&a * &b) * &pw) * &ctx.omy);
    Ok(sum(ctx, terms))
}

/// `sum w^{n+1} (w; w)_n`, the pentagonal sum after writing `w = 1/q`.
pub(crate) fn pentagonal_sum<S: Scalar>(n: u32, summands: usize) -> Series<S> {
    let w = Series::var(1, n, 0);
    PochhammerSteps::new(&w, &w)
        .zip(powers(&w).skip(1))
        .take(summands)
        .fold(Series::zero(1, n), |acc, (p, pw)| &acc + &(&p * &pw))
}

/// `(w; w)_infinity`.
pub(crate) fn pentagonal_product<S: Scalar>(n: u32) -> Result<Series<S>, QSeriesError> {
    let w = Series::var(1, n, 0);
    q_pochhammer(&QPochhammerSpec {
        a: w.clone(),
        q: w,
        n: PochLength::Infinite,
    })
}

/// `sum_{k in Z} (-1)^k w^{k(3k-1)/2}`.
pub(crate) fn pentagonal_theta<S: Scalar>(n: u32) -> Series<S> {
    let mut terms = Vec::new();
    for k in 0i64.. {
        if k * (3 * k - 1) / 2 > i64::from(n) {
            break;
        }
        for j in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = j * (3 * j - 1) / 2;
            if e <= i64::from(n) {
                terms.push((vec![e as u32], alternating::<S>(j.unsigned_abs() as usize)));
            }
        }
    }
    Series::from_terms(1, n, terms).expect("exponents within truncation")
}
