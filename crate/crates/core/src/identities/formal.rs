use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{IdentityError, Mode, Outcome, VerificationReport};
use crate::qseries::{
    expand_family, prop12_lhs, prop12_rhs, Expansion, FamilyContext, SeriesFamily, SeriesFamilyId,
};
use crate::series::TruncatedSeries;

/// Largest order accepted for bivariate checks.
pub const MAX_BIVARIATE_ORDER: u32 = 14;
/// Largest order accepted for the trivariate `(x, y, r)` check.
pub const MAX_TRIVARIATE_ORDER: u32 = 10;

/// Identities checked by comparing truncated expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalIdentity {
    F1F2,
    F2F3,
    F1F3,
    G1G2,
    G2G3,
    G1G3,
    /// The r-deformed identity with `r` a third formal variable.
    Prop12,
    /// `r = -1`: both sides reproduce G1 and G2.
    Prop12AtMinusOne,
    /// `r = 1` followed by `x -> -x/(1-x)`, `y -> -y/(1-y)`: both sides reproduce F1 and F2.
    Prop12AtOne,
    Gamma1 { gamma: BigRational, r: BigRational },
    Gamma2 { gamma: BigRational },
    /// Both Kitaev-Remmel forms against F3.
    KrChain,
    /// `sum = 1 - product = 1 - theta`.
    Pentagonal3Way,
}

impl FormalIdentity {
    /// The six pairwise equalities of the main theorem.
    pub const MAIN: [FormalIdentity; 6] = [
        FormalIdentity::F1F2,
        FormalIdentity::F2F3,
        FormalIdentity::F1F3,
        FormalIdentity::G1G2,
        FormalIdentity::G2G3,
        FormalIdentity::G1G3,
    ];

    pub fn id(&self) -> String {
        use FormalIdentity::*;
        match self {
            F1F2 => "F1=F2".into(),
            F2F3 => "F2=F3".into(),
            F1F3 => "F1=F3".into(),
            G1G2 => "G1=G2".into(),
            G2G3 => "G2=G3".into(),
            G1G3 => "G1=G3".into(),
            Prop12 => "prop12".into(),
            Prop12AtMinusOne => "prop12-r=-1".into(),
            Prop12AtOne => "prop12-r=1".into(),
            Gamma1 { .. } => "gamma1".into(),
            Gamma2 { .. } => "gamma2".into(),
            KrChain => "KR-first=F3".into(),
            Pentagonal3Way => "pentagonal-3way".into(),
        }
    }

    fn pair(&self) -> Option<(SeriesFamilyId, SeriesFamilyId)> {
        use FormalIdentity::*;
        use SeriesFamilyId as S;
        Some(match self {
            F1F2 => (S::F1, S::F2),
            F2F3 => (S::F2, S::F3),
            F1F3 => (S::F1, S::F3),
            G1G2 => (S::G1, S::G2),
            G2G3 => (S::G2, S::G3),
            G1G3 => (S::G1, S::G3),
            _ => return None,
        })
    }

    fn max_order(&self) -> u32 {
        match self {
            FormalIdentity::Prop12 => MAX_TRIVARIATE_ORDER,
            FormalIdentity::Pentagonal3Way => 200,
            _ => MAX_BIVARIATE_ORDER,
        }
    }
}

impl fmt::Display for FormalIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for FormalIdentity {
    type Err = IdentityError;

    /// Parameterized identities parse with default-free syntax only through
    /// their constructors; here `gamma1`/`gamma2` are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use FormalIdentity::*;
        let all = [
            F1F2,
            F2F3,
            F1F3,
            G1G2,
            G2G3,
            G1G3,
            Prop12,
            Prop12AtMinusOne,
            Prop12AtOne,
            KrChain,
            Pentagonal3Way,
        ];
        all.into_iter()
            .find(|i| i.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| IdentityError::UnknownIdentity(s.into()))
    }
}

fn expand_int(id: SeriesFamilyId, n: u32) -> Result<TruncatedSeries<BigInt>, IdentityError> {
    match expand_family(&SeriesFamily::plain(id)?, n)? {
        Expansion::Integer(s) => Ok(s),
        Expansion::Rational(_) => unreachable!("parameter-free families are integral"),
    }
}

fn compare<S: crate::Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
    n: u32,
) -> Result<Outcome, IdentityError> {
    Ok(Outcome::from_match(a.equal_up_to(b, n)?))
}

/// Expands both sides to total degree `n` and compares them exactly.
pub fn verify_formal(id: &FormalIdentity, n: u32) -> Result<VerificationReport, IdentityError> {
    if n > id.max_order() {
        return Err(IdentityError::OrderBudget {
            id: id.id(),
            order: n,
            max: id.max_order(),
        });
    }
    let mut failure = None;
    let report = VerificationReport::timed(id.id(), Mode::Formal, |r| {
        match run(id, n, r) {
            Ok(o) => o,
            Err(e) => {
                let msg = e.to_string();
                failure = Some(e);
                Outcome::Error(msg)
            }
        }
    })
    .with_order(n);
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

fn run(id: &FormalIdentity, n: u32, report: &mut VerificationReport) -> Result<Outcome, IdentityError> {
    use FormalIdentity::*;
    if let Some((a, b)) = id.pair() {
        return compare(&expand_int(a, n)?, &expand_int(b, n)?, n);
    }
    match id {
        Prop12 => {
            report.note("r is the third formal variable");
            let ctx = FamilyContext::<BigInt>::new(3, n);
            let r = TruncatedSeries::var(3, n, 2);
            let summands = n as usize + 1;
            compare(&prop12_lhs(&ctx, &r, summands)?, &prop12_rhs(&ctx, &r, summands)?, n)
        }
        Prop12AtMinusOne => {
            let ctx = FamilyContext::<BigInt>::new(2, n);
            let r = TruncatedSeries::constant(2, n, BigInt::from(-1));
            let summands = n as usize + 1;
            let lhs = prop12_lhs(&ctx, &r, summands)?;
            let rhs = prop12_rhs(&ctx, &r, summands)?;
            first_failure([
                compare(&lhs, &expand_int(SeriesFamilyId::G1, n)?, n)?,
                compare(&rhs, &expand_int(SeriesFamilyId::G2, n)?, n)?,
                compare(&lhs, &rhs, n)?,
            ])
        }
        Prop12AtOne => {
            let ctx = FamilyContext::<BigInt>::new(2, n);
            let r = TruncatedSeries::constant(2, n, BigInt::from(1));
            let summands = n as usize + 1;
            let sigma = [-&(&ctx.x * &ctx.inv_omx), -&(&ctx.y * &ctx.inv_omy)];
            let lhs = prop12_lhs(&ctx, &r, summands)?.substitute(&sigma)?;
            let rhs = prop12_rhs(&ctx, &r, summands)?.substitute(&sigma)?;
            first_failure([
                compare(&lhs, &expand_int(SeriesFamilyId::F1, n)?, n)?,
                compare(&rhs, &expand_int(SeriesFamilyId::F2, n)?, n)?,
            ])
        }
        Gamma1 { gamma, r } => {
            report.param("gamma", gamma);
            report.param("r", r);
            let p = vec![gamma.clone(), r.clone()];
            let lhs = expand_family(&SeriesFamily::new(SeriesFamilyId::Gamma1Lhs, p.clone())?, n)?;
            let rhs = expand_family(&SeriesFamily::new(SeriesFamilyId::Gamma1Rhs, p)?, n)?;
            compare(&lhs.to_rational(), &rhs.to_rational(), n)
        }
        Gamma2 { gamma } => {
            report.param("gamma", gamma);
            let p = vec![gamma.clone()];
            let lhs = expand_family(&SeriesFamily::new(SeriesFamilyId::Gamma2Lhs, p.clone())?, n)?;
            let rhs = expand_family(&SeriesFamily::new(SeriesFamilyId::Gamma2Rhs, p)?, n)?;
            compare(&lhs.to_rational(), &rhs.to_rational(), n)
        }
        KrChain => {
            let f3 = expand_int(SeriesFamilyId::F3, n)?;
            first_failure([
                compare(&expand_int(SeriesFamilyId::KrFirstForm, n)?, &f3, n)?,
                compare(&expand_int(SeriesFamilyId::KrSecondForm, n)?, &f3, n)?,
            ])
        }
        Pentagonal3Way => {
            let one = TruncatedSeries::one(1, n);
            let sum = expand_int(SeriesFamilyId::PentagonalSum, n)?;
            let product = &one - &expand_int(SeriesFamilyId::PentagonalProduct, n)?;
            let theta = &one - &expand_int(SeriesFamilyId::PentagonalTheta, n)?;
            first_failure([compare(&sum, &product, n)?, compare(&sum, &theta, n)?])
        }
        _ => unreachable!("pairs handled above"),
    }
}

fn first_failure<const K: usize>(outcomes: [Outcome; K]) -> Result<Outcome, IdentityError> {
    Ok(outcomes
        .into_iter()
        .find(|o| *o != Outcome::Verified)
        .unwrap_or(Outcome::Verified))
}

/// All six main-theorem equalities, sharing one expansion per series.
pub fn verify_main_theorem(n: u32) -> Result<Vec<VerificationReport>, IdentityError> {
    if n > MAX_BIVARIATE_ORDER {
        return Err(IdentityError::OrderBudget {
            id: "thm-main".into(),
            order: n,
            max: MAX_BIVARIATE_ORDER,
        });
    }
    use SeriesFamilyId as S;
    let ids = [S::F1, S::F2, S::F3, S::G1, S::G2, S::G3];
    let mut expanded = Vec::new();
    for id in ids {
        let start = std::time::Instant::now();
        expanded.push((id, expand_int(id, n)?, start.elapsed()));
    }
    let get = |id: S| expanded.iter().find(|(i, _, _)| *i == id).expect("expanded");
    let mut out = Vec::new();
    for ident in FormalIdentity::MAIN {
        let (a, b) = ident.pair().expect("main identities are pairs");
        let (_, sa, ta) = get(a);
        let (_, sb, tb) = get(b);
        let mut r = VerificationReport::timed(ident.id(), Mode::Formal, |_| {
            Outcome::from_match(sa.equal_up_to(sb, n).expect("same shape"))
        })
        .with_order(n);
        r.elapsed += *ta + *tb;
        out.push(r);
    }
    Ok(out)
}
