//! Subcommand dispatch. Every command renders into a string; the caller
//! decides where it goes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use fishburn_core::enumeration::{
    distinct_partition_parity, enumerate_fishburn, enumerate_row_fishburn, enumerate_self_dual, refined_counts,
    MatrixFamily,
};
use fishburn_core::identities::{
    degeneration_check, evaluate_terminating, numeric_check, verify_coefficient_oracle, verify_formal,
    verify_main_theorem, verify_self_dual_facts, verify_terminating, verify_trend, verify_watson, asymptotic_trend,
    CoefficientFamily, FormalIdentity, IdentityError, Mode, NumericEvalParams, NumericIdentity, NumericPoint,
    Outcome, TerminatingExpr, TerminatingFamily, VerificationReport, WatsonParams, MAX_ORACLE_SIZE,
};
use fishburn_core::qseries::{
    expand_family, partition_side_table, univariate_coefficients, Expansion, SeriesFamily, SeriesFamilyId,
    UnivariateFamily,
};
use fishburn_core::roots::{
    conjecture_explore, expand_at_root, root_terminating_check, unit_point_consistency, RootContext, RootExpr,
    RootsError, UnitPointSeries,
};
use fishburn_core::{Cyclotomic, TruncatedSeries};

use crate::bfile::{fetch_bfile, read_bfile};
use crate::cache::{Cache, CacheKey, Lookup};
use crate::config::{
    AsymptoticsArgs, Cli, Command, EnumerateArgs, ExactValue, ExpandArgs, Format, NumericArgs, OeisArgs,
    PentagonalArgs, RootsAction, RootsArgs, TerminatingArgs, VerifyArgs, WatsonArgs,
};
use crate::json::{series_to_json, CoeffCodec, ReportJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Ctx {
    format: Format,
    cache: Option<Cache>,
    out: String,
    warnings: Vec<String>,
}

type CmdResult = Result<i32, String>;

fn identity_error(e: IdentityError) -> String {
    e.to_string()
}

fn roots_error(e: RootsError) -> String {
    e.to_string()
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> RunOutput {
    let cache = cli.cache_dir.clone().map(Cache::new).or_else(Cache::from_env);
    let mut ctx = Ctx {
        format: cli.format,
        cache,
        out: String::new(),
        warnings: Vec::new(),
    };
    let result = match &cli.command {
        Command::Expand(a) => expand(&mut ctx, a),
        Command::Enumerate(a) => enumerate(&mut ctx, a),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Terminating(a) => terminating(&mut ctx, a),
        Command::Numeric(a) => numeric(&mut ctx, a),
        Command::Watson(a) => watson(&mut ctx, a),
        Command::Asymptotics(a) => asymptotics(&mut ctx, a),
        Command::Roots(a) => roots(&mut ctx, a),
        Command::OeisCheck(a) => oeis_check(&mut ctx, a),
        Command::Pentagonal(a) => pentagonal(&mut ctx, a),
    };
    let mut stderr = String::new();
    for w in &ctx.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let code = match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    };
    RunOutput {
        stdout: ctx.out,
        stderr,
        code,
    }
}

/// 0 if every report is verified, 1 if any mismatches, 2 otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::is_verified) {
        EXIT_OK
    } else if reports.iter().any(|r| matches!(r.outcome, Outcome::Mismatch(_))) {
        EXIT_MISMATCH
    } else {
        EXIT_USAGE
    }
}

fn emit_reports(ctx: &mut Ctx, reports: &[VerificationReport]) -> CmdResult {
    match ctx.format {
        Format::Json => {
            let items: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
            let text = if items.len() == 1 {
                serde_json::to_string_pretty(&items[0])
            } else {
                serde_json::to_string_pretty(&items)
            }
            .map_err(|e| e.to_string())?;
            ctx.out.push_str(&text);
            ctx.out.push('\n');
        }
        Format::Text | Format::Csv => {
            for r in reports {
                let _ = writeln!(ctx.out, "{r}");
                for n in &r.notes {
                    let _ = writeln!(ctx.out, "  {n}");
                }
            }
            if reports.len() > 1 {
                let ok = reports.iter().filter(|r| r.is_verified()).count();
                let _ = writeln!(ctx.out, "{ok}/{} verified", reports.len());
            }
        }
    }
    Ok(exit_code(reports))
}

fn emit_json(ctx: &mut Ctx, v: &Value) -> Result<(), String> {
    ctx.out.push_str(&serde_json::to_string_pretty(v).map_err(|e| e.to_string())?);
    ctx.out.push('\n');
    Ok(())
}

fn cached<S: CoeffCodec>(
    ctx: &mut Ctx,
    key: &CacheKey,
    compute: impl FnOnce() -> Result<TruncatedSeries<S>, String>,
) -> Result<(TruncatedSeries<S>, bool), String> {
    let Some(cache) = ctx.cache.clone() else {
        return Ok((compute()?, false));
    };
    match cache.get::<S>(key) {
        Lookup::Hit(s) => return Ok((s, true)),
        Lookup::Stale(why) => ctx.warnings.push(format!("ignoring cache entry: {why}")),
        Lookup::Miss => {}
    }
    let s = compute()?;
    if let Err(e) = cache.put(key, &s) {
        ctx.warnings.push(format!("could not write cache entry: {e}"));
    }
    Ok((s, false))
}

fn render_series<S: CoeffCodec>(ctx: &mut Ctx, title: &str, names: &[&str], s: &TruncatedSeries<S>, from_cache: bool) -> Result<(), String> {
    match ctx.format {
        Format::Json => emit_json(ctx, &serde_json::to_value(series_to_json(s)).map_err(|e| e.to_string())?),
        Format::Csv => {
            let _ = writeln!(ctx.out, "{},coeff", names.join(","));
            for (idx, c) in s.terms() {
                let exps: Vec<String> = idx.exps().iter().map(u32::to_string).collect();
                let _ = writeln!(ctx.out, "{},{}", exps.join(","), c.encode());
            }
            Ok(())
        }
        Format::Text => {
            let _ = writeln!(
                ctx.out,
                "{title} to total degree {}{}:",
                s.truncation(),
                if from_cache { " (cached)" } else { "" }
            );
            let _ = writeln!(ctx.out, "{}", s.display_with(names));
            Ok(())
        }
    }
}

fn expand(ctx: &mut Ctx, a: &ExpandArgs) -> CmdResult {
    let id: SeriesFamilyId = a.family.parse().map_err(|e: fishburn_core::qseries::QSeriesError| e.to_string())?;
    if id.variable_count() > 1 && a.order > 20 {
        return Err(format!("order {} too large for a bivariate series (max 20)", a.order));
    }
    let family = SeriesFamily::new(id, a.params.clone()).map_err(|e| e.to_string())?;
    let params: Vec<String> = a.params.iter().map(|p| p.to_string()).collect();
    let names = id.variable_names();
    let compute = || expand_family(&family, a.order).map_err(|e| e.to_string());
    if id.is_gamma() {
        let key = CacheKey::new::<BigRational>(id.name(), &params, a.order);
        let (s, hit) = cached::<BigRational>(ctx, &key, || compute().map(|e| e.to_rational()))?;
        render_series(ctx, id.name(), names, &s, hit)?;
    } else {
        let key = CacheKey::new::<BigInt>(id.name(), &params, a.order);
        let (s, hit) = cached::<BigInt>(ctx, &key, || match compute()? {
            Expansion::Integer(s) => Ok(s),
            Expansion::Rational(_) => Err("unexpected rational expansion".into()),
        })?;
        render_series(ctx, id.name(), names, &s, hit)?;
    }
    Ok(EXIT_OK)
}

fn enumerate(ctx: &mut Ctx, a: &EnumerateArgs) -> CmdResult {
    let family: MatrixFamily = a.family.parse().map_err(|e: fishburn_core::enumeration::EnumerationError| e.to_string())?;
    let table = refined_counts(family, a.size);
    let stats = family.statistics();
    let dumps: Vec<String> = if a.dump {
        match family {
            MatrixFamily::Fishburn => enumerate_fishburn(a.size).map(|m| m.dump()).collect(),
            MatrixFamily::RowFishburn => enumerate_row_fishburn(a.size).map(|m| m.dump()).collect(),
            MatrixFamily::SelfDual => enumerate_self_dual(a.size).map(|m| m.full().dump()).collect(),
        }
    } else {
        Vec::new()
    };
    match ctx.format {
        Format::Json => {
            let counts: Vec<Value> = table
                .counts
                .iter()
                .map(|(k, v)| json!({"key": k, "count": v.to_string()}))
                .collect();
            let mut v = json!({
                "family": family.name(),
                "size": a.size,
                "statistics": stats,
                "counts": counts,
                "total": table.total().to_string(),
            });
            if a.dump {
                v["matrices"] = json!(dumps);
            }
            emit_json(ctx, &v)?;
        }
        Format::Csv => {
            let _ = writeln!(ctx.out, "{},count", stats.join(","));
            for (k, v) in &table.counts {
                let key: Vec<String> = k.iter().map(u32::to_string).collect();
                let _ = writeln!(ctx.out, "{},{v}", key.join(","));
            }
        }
        Format::Text => {
            let _ = writeln!(ctx.out, "{} matrices of size {}: {}", family.name(), a.size, table.total());
            for (k, v) in &table.counts {
                let key: Vec<String> = stats.iter().zip(k).map(|(s, x)| format!("{s}={x}")).collect();
                let _ = writeln!(ctx.out, "  {} -> {v}", key.join(" "));
            }
            for d in &dumps {
                let _ = writeln!(ctx.out);
                ctx.out.push_str(d);
            }
        }
    }
    Ok(EXIT_OK)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Reports for one `verify --id` value.
pub fn verify_reports(id: &str, order: u32, gamma: Option<&BigRational>, r: Option<&BigRational>) -> Result<Vec<VerificationReport>, String> {
    let need = |v: Option<&BigRational>, name: &str| v.cloned().ok_or_else(|| format!("{id} needs --{name}"));
    let one = |r: Result<VerificationReport, IdentityError>| r.map(|x| vec![x]).map_err(identity_error);
    match id {
        "all" => verify_all(order),
        "thm-main" => verify_main_theorem(order).map_err(identity_error),
        "gamma1" => one(verify_formal(
            &FormalIdentity::Gamma1 {
                gamma: need(gamma, "gamma")?,
                r: need(r, "r")?,
            },
            order,
        )),
        "gamma2" => one(verify_formal(&FormalIdentity::Gamma2 { gamma: need(gamma, "gamma")? }, order)),
        "F1-coefficients" => one(verify_coefficient_oracle(CoefficientFamily::F1, order)),
        "G1-coefficients" => one(verify_coefficient_oracle(CoefficientFamily::G1, order)),
        "self-dual-facts" => one(verify_self_dual_facts(order)),
        "asymptotics-fishburn" => one(verify_trend(UnivariateFamily::Fishburn)),
        "asymptotics-rowFishburn" => one(verify_trend(UnivariateFamily::RowFishburn)),
        other => {
            let f: FormalIdentity = other.parse().map_err(identity_error)?;
            one(verify_formal(&f, order))
        }
    }
}

/// Every registered check at (or capped to) the given order.
fn verify_all(order: u32) -> Result<Vec<VerificationReport>, String> {
    let e = identity_error;
    let mut out = verify_main_theorem(order.min(14)).map_err(e)?;
    for f in [
        FormalIdentity::Prop12,
        FormalIdentity::Prop12AtMinusOne,
        FormalIdentity::Prop12AtOne,
        FormalIdentity::KrChain,
    ] {
        let cap = if f == FormalIdentity::Prop12 { 10 } else { 14 };
        out.push(verify_formal(&f, order.min(cap)).map_err(e)?);
    }
    out.push(verify_formal(&FormalIdentity::Pentagonal3Way, order.max(30)).map_err(e)?);
    out.push(
        verify_formal(
            &FormalIdentity::Gamma1 {
                gamma: rat(-1, 2),
                r: rat(3, 1),
            },
            order.min(8),
        )
        .map_err(e)?,
    );
    out.push(verify_formal(&FormalIdentity::Gamma2 { gamma: rat(1, 3) }, order.min(8)).map_err(e)?);
    let m = order.min(MAX_ORACLE_SIZE);
    out.push(verify_coefficient_oracle(CoefficientFamily::F1, m).map_err(e)?);
    out.push(verify_coefficient_oracle(CoefficientFamily::G1, m).map_err(e)?);
    out.push(verify_self_dual_facts(order.clamp(1, 6)).map_err(e)?);
    out.push(verify_terminating(TerminatingFamily::Comp1, &rat(2, 1), &rat(1, 2)).map_err(e)?);
    out.push(verify_terminating(TerminatingFamily::Comp2, &rat(4, 1), &rat(1, 2)).map_err(e)?);
    out.push(root_terminating_check(TerminatingFamily::Comp2, &Cyclotomic::zeta(4, 2), &Cyclotomic::zeta(4, 1)).map_err(roots_error)?);
    out.push(root_terminating_check(TerminatingFamily::Comp1, &Cyclotomic::zeta(3, 1), &Cyclotomic::zeta(3, 1)).map_err(roots_error)?);
    for id in [NumericIdentity::RogersFine, NumericIdentity::GeneralizedRogersFine, NumericIdentity::WatsonLimit] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = NumericEvalParams::new(NumericPoint::random(id, &mut rng, 60), 60);
        out.push(numeric_check(&params).map_err(e)?);
    }
    out.push(degeneration_check((0.3, 0.0), (0.2, 0.0), (0.4, 0.0), (0.5, 0.0), 1e-30, 60, 1e-25).map_err(e)?);
    for n in 1..=3 {
        out.push(verify_watson(&WatsonParams::with_d_equal_q(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(1, 2), n)).map_err(e)?);
    }
    out.push(verify_trend(UnivariateFamily::Fishburn).map_err(e)?);
    out.push(verify_trend(UnivariateFamily::RowFishburn).map_err(e)?);
    let ctx = RootContext::new(1, 0, 0, order.min(8)).map_err(roots_error)?;
    out.extend(conjecture_explore(&ctx).map_err(roots_error)?);
    out.push(unit_point_consistency(UnitPointSeries::F1, order.min(8)).map_err(roots_error)?);
    out.push(unit_point_consistency(UnitPointSeries::G1, order.min(8)).map_err(roots_error)?);
    Ok(out)
}

fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> CmdResult {
    let reports = verify_reports(&a.id, a.order, a.gamma.as_ref(), a.r.as_ref())?;
    emit_reports(ctx, &reports)
}

fn terminating(ctx: &mut Ctx, a: &TerminatingArgs) -> CmdResult {
    let cyclotomic = matches!(a.p, ExactValue::Cyclotomic(_)) || matches!(a.q, ExactValue::Cyclotomic(_));
    let exprs: Vec<TerminatingExpr> = match a.expr.parse::<TerminatingFamily>() {
        Ok(f) => f.expressions().to_vec(),
        Err(_) => vec![a.expr.parse::<TerminatingExpr>().map_err(identity_error)?],
    };
    let values: Vec<(TerminatingExpr, String, u32)> = if cyclotomic {
        let (p, q) = (a.p.to_cyclotomic(), a.q.to_cyclotomic());
        exprs
            .iter()
            .map(|e| evaluate_terminating(*e, &p, &q).map(|v| (*e, v.value.to_string(), v.certificate)))
            .collect::<Result<_, _>>()
    } else {
        let (ExactValue::Rational(p), ExactValue::Rational(q)) = (&a.p, &a.q) else {
            unreachable!("both rational")
        };
        exprs
            .iter()
            .map(|e| evaluate_terminating(*e, p, q).map(|v| (*e, v.value.to_string(), v.certificate)))
            .collect::<Result<_, _>>()
    }
    .map_err(identity_error)?;
    let all_equal = values.iter().all(|v| v.1 == values[0].1);
    match ctx.format {
        Format::Json => {
            let vs: Vec<Value> = values
                .iter()
                .map(|(e, v, k)| json!({"expr": e.id(), "value": v, "certificate": k}))
                .collect();
            emit_json(ctx, &json!({"values": vs, "agree": all_equal}))?;
        }
        _ => {
            for (e, v, k) in &values {
                let _ = writeln!(ctx.out, "{e} = {v} (certificate k = {k})");
            }
            if values.len() > 1 {
                if all_equal {
                    let word = if values.len() == 2 { "both" } else { "all three" };
                    let _ = writeln!(ctx.out, "{word} = {}", values[0].1);
                } else {
                    let _ = writeln!(ctx.out, "values differ");
                }
            }
        }
    }
    Ok(if all_equal { EXIT_OK } else { EXIT_MISMATCH })
}

fn numeric(ctx: &mut Ctx, a: &NumericArgs) -> CmdResult {
    let tol = 10f64.powi(-(a.tol_exp as i32));
    if tol == 0.0 {
        return Err("tolerance underflows f64".into());
    }
    let values: Vec<(&str, (f64, f64))> = a.params.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let get = |name: &str| {
        values
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("grf-to-rf needs --param {name}=..."))
    };
    if a.id == "grf-to-rf" {
        let gamma = values.iter().find(|(n, _)| *n == "gamma").map_or(1e-30, |(_, v)| v.0);
        let r = degeneration_check(get("a")?, get("b")?, get("t")?, get("q")?, gamma, a.digits, tol).map_err(identity_error)?;
        return emit_reports(ctx, &[r]);
    }
    let id: NumericIdentity = a.id.parse().map_err(identity_error)?;
    let mut points = Vec::new();
    if let Some(k) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for _ in 0..k {
            points.push(NumericPoint::random(id, &mut rng, a.digits));
        }
    } else {
        points.push(NumericPoint::from_values(id, &values, a.digits).map_err(identity_error)?);
    }
    let mut reports = Vec::new();
    for point in points {
        let params = NumericEvalParams {
            tolerance: tol,
            max_summands: a.max_summands as usize,
            ..NumericEvalParams::new(point, a.digits)
        };
        reports.push(numeric_check(&params).map_err(identity_error)?);
    }
    emit_reports(ctx, &reports)
}

fn watson(ctx: &mut Ctx, a: &WatsonArgs) -> CmdResult {
    let mut reports = Vec::new();
    if let Some(k) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut tries = 0;
        while reports.len() < k as usize {
            tries += 1;
            if tries > 100 * k {
                return Err("too many parameter draws hit poles".into());
            }
            match verify_watson(&WatsonParams::random(&mut rng, a.n)) {
                Ok(r) => reports.push(r),
                Err(IdentityError::Pole { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    } else {
        let need = |v: &Option<BigRational>, name: &str| v.clone().ok_or_else(|| format!("watson needs --{name} (or --random)"));
        let q = need(&a.q, "q")?;
        let p = WatsonParams {
            a: need(&a.a, "a")?,
            b: need(&a.b, "b")?,
            c: need(&a.c, "c")?,
            d: a.d.clone().unwrap_or_else(|| q.clone()),
            e: need(&a.e, "e")?,
            q,
            n: a.n,
        };
        reports.push(verify_watson(&p).map_err(identity_error)?);
    }
    emit_reports(ctx, &reports)
}

fn parse_univariate(s: &str) -> Result<UnivariateFamily, String> {
    UnivariateFamily::parse(s).ok_or_else(|| format!("unknown sequence `{s}` (expected fishburn or rowFishburn)"))
}

fn asymptotics(ctx: &mut Ctx, a: &AsymptoticsArgs) -> CmdResult {
    let which = parse_univariate(&a.which)?;
    let table = asymptotic_trend(which, a.n_max as usize).map_err(identity_error)?;
    match ctx.format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| json!({"n": r.n, "coefficient": r.coefficient.to_string(), "ratio": r.ratio, "deviation": r.deviation}))
                .collect();
            emit_json(ctx, &json!({"which": which.name(), "rows": rows}))?;
        }
        Format::Csv => {
            let _ = writeln!(ctx.out, "n,coefficient,ratio,deviation");
            for r in &table.rows {
                let _ = writeln!(ctx.out, "{},{},{:.12e},{:.12e}", r.n, r.coefficient, r.ratio, r.deviation);
            }
        }
        Format::Text => {
            let _ = writeln!(ctx.out, "{:>4} {:>20} {:>20} {:>14}", "n", "ratio", "deviation", "n*deviation");
            for r in &table.rows {
                let _ = writeln!(
                    ctx.out,
                    "{:>4} {:>20.15} {:>20.12e} {:>14.8}",
                    r.n,
                    r.ratio,
                    r.deviation,
                    r.n as f64 * r.deviation
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn roots(ctx: &mut Ctx, a: &RootsArgs) -> CmdResult {
    let rc = RootContext::new(a.k, a.a, a.b, a.order).map_err(roots_error)?;
    match a.action {
        RootsAction::Explore => {
            let reports = conjecture_explore(&rc).map_err(roots_error)?;
            emit_reports(ctx, &reports)
        }
        RootsAction::Expand => {
            let expr: RootExpr = a.expr.parse().map_err(roots_error)?;
            let s = expand_at_root(expr, &rc).map_err(roots_error)?;
            render_series(ctx, &format!("{expr} at (zeta_{k}^{}, zeta_{k}^{})", a.a, a.b, k = a.k), &["u", "v"], &s, false)?;
            Ok(EXIT_OK)
        }
        RootsAction::Check => {
            let family: TerminatingFamily = a.family.parse().map_err(identity_error)?;
            let r = root_terminating_check(family, &rc.p0, &rc.q0).map_err(roots_error)?;
            emit_reports(ctx, &[r])
        }
    }
}

/// OEIS tags the b-file check understands.
pub fn sequence_for_tag(tag: &str) -> Option<UnivariateFamily> {
    match tag.to_ascii_uppercase().as_str() {
        "A022493" => Some(UnivariateFamily::Fishburn),
        "A158691" => Some(UnivariateFamily::RowFishburn),
        _ => None,
    }
}

fn oeis_check(ctx: &mut Ctx, a: &OeisArgs) -> CmdResult {
    let which = sequence_for_tag(&a.seq).ok_or_else(|| format!("unsupported sequence `{}` (A022493 or A158691)", a.seq))?;
    if a.fetch && !a.bfile.exists() {
        fetch_bfile(&a.seq, &a.bfile)?;
    }
    let records = read_bfile(&a.bfile).map_err(|e| e.to_string())?;
    let computed = univariate_coefficients(which, a.max_n as usize);
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for rec in records.iter().filter(|r| r.index <= a.max_n) {
        let ours = &computed[rec.index as usize];
        let ok = *ours == rec.value;
        if !ok {
            mismatches += 1;
        }
        rows.push((rec.index, rec.value.clone(), ours.clone(), ok));
    }
    match ctx.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(n, b, c, ok)| json!({"n": n, "bfile": b.to_string(), "computed": c.to_string(), "match": ok}))
                .collect();
            emit_json(ctx, &json!({"seq": a.seq, "compared": rows.len(), "mismatches": mismatches, "rows": items}))?;
        }
        _ => {
            for (n, b, c, ok) in &rows {
                let _ = writeln!(ctx.out, "{n} {b} {c} {}", if *ok { "ok" } else { "MISMATCH" });
            }
            let _ = writeln!(ctx.out, "{}: {} compared, {mismatches} mismatches", a.seq, rows.len());
        }
    }
    if rows.is_empty() {
        ctx.warnings.push(format!("no b-file entries with index <= {}", a.max_n));
    }
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

/// Partition table from the series against direct counting.
pub fn partition_table_report(max_part: u32, max_weight: u32) -> VerificationReport {
    VerificationReport::timed("partition-parity-table", Mode::Oracle, |r| {
        r.param("r_max", max_part);
        r.param("s_max", max_weight);
        let table = partition_side_table(max_part as usize, max_weight as usize);
        for rr in 1..=max_part {
            for s in 1..=max_weight {
                let got = table.get(rr as usize, s as usize);
                let want = distinct_partition_parity(rr, s);
                if got != want {
                    return Outcome::Mismatch(fishburn_core::identities::Witness {
                        index: format!("(r={rr},s={s})"),
                        left: got.to_string(),
                        right: want.to_string(),
                    });
                }
            }
        }
        Outcome::Verified
    })
}

fn pentagonal(ctx: &mut Ctx, a: &PentagonalArgs) -> CmdResult {
    let reports = vec![
        verify_formal(&FormalIdentity::Pentagonal3Way, a.order).map_err(identity_error)?,
        partition_table_report(a.max_part, a.order),
    ];
    emit_reports(ctx, &reports)
}
