//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fishburn_cli::bfile::read_bfile;
use fishburn_cli::commands::partition_table_report;
use fishburn_core::enumeration::{count_ascent_sequences, enumerate_interval_orders, refined_counts, MatrixFamily};
use fishburn_core::identities::{
    degeneration_check, numeric_check, verify_coefficient_oracle, verify_formal, verify_main_theorem,
    verify_self_dual_facts, verify_terminating, verify_trend, verify_watson, CoefficientFamily, FormalIdentity,
    IdentityError, NumericEvalParams, NumericIdentity, NumericPoint, Outcome, TerminatingFamily, VerificationReport,
    WatsonParams,
};
use fishburn_core::qseries::{univariate_coefficients, UnivariateFamily};
use fishburn_core::roots::{conjecture_explore, root_terminating_check, RootContext};
use fishburn_core::Cyclotomic;

type Check = Result<String, String>;

fn all_verified(reports: &[VerificationReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.is_verified()) {
        None => Ok(()),
        Some(r) => Err(format!("{r}")),
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main_theorem() -> Check {
    let start = Instant::now();
    let reports = verify_main_theorem(12).map_err(e)?;
    all_verified(&reports)?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("6 pairwise equalities to degree 12 in {:?}", start.elapsed()))
}

fn coefficient_oracle() -> Check {
    let start = Instant::now();
    let reports = [
        verify_coefficient_oracle(CoefficientFamily::F1, 7).map_err(e)?,
        verify_coefficient_oracle(CoefficientFamily::G1, 7).map_err(e)?,
    ];
    all_verified(&reports)?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("F1 and G1 for m <= 7 in {:?}", start.elapsed()))
}

fn triple_check(which: UnivariateFamily, family: MatrixFamily, expected: &[u64], bfile: &str) -> Result<(), String> {
    let n = expected.len() - 1;
    let series = univariate_coefficients(which, n);
    let file: BTreeMap<u64, BigInt> = read_bfile(&data(bfile)).map_err(e)?.into_iter().map(|r| (r.index, r.value)).collect();
    for (i, want) in expected.iter().enumerate() {
        let want = BigInt::from(*want);
        let enumerated = BigInt::from(refined_counts(family, i as u32).total());
        if series[i] != want || enumerated != want {
            return Err(format!(
                "{} index {i}: expected {want}, series {}, enumeration {enumerated}",
                which.name(),
                series[i]
            ));
        }
        if let Some(v) = file.get(&(i as u64)) {
            if *v != want {
                return Err(format!("{} index {i}: expected {want}, b-file {v}", which.name()));
            }
        }
    }
    Ok(())
}

fn univariate_sequences() -> Check {
    triple_check(
        UnivariateFamily::Fishburn,
        MatrixFamily::Fishburn,
        &[1, 1, 2, 5, 15, 53, 217, 1014, 5335],
        "b022493.txt",
    )?;
    triple_check(
        UnivariateFamily::RowFishburn,
        MatrixFamily::RowFishburn,
        &[1, 1, 3, 11, 49, 263],
        "b158691.txt",
    )?;
    Ok("f_0..8 and r_0..5 agree across series, enumeration and b-file".into())
}

fn self_dual_facts() -> Check {
    all_verified(&[verify_self_dual_facts(6).map_err(e)?])?;
    Ok("zero-diagonal = s/2 = r for 1 <= m <= 6".into())
}

fn interval_orders() -> Check {
    let f = univariate_coefficients(UnivariateFamily::Fishburn, 10);
    for n in 1..=6usize {
        let orders = enumerate_interval_orders(n).map_err(e)?;
        if BigInt::from(orders.len()) != f[n] {
            return Err(format!("n = {n}: {} interval orders, f_n = {}", orders.len(), f[n]));
        }
        let mut maxima: BTreeMap<u32, BigUint> = BTreeMap::new();
        let mut joint: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for o in &orders {
            *maxima.entry(o.maximal as u32).or_default() += 1u32;
            *joint.entry((o.minimal, o.maximal)).or_default() += 1;
        }
        if maxima != refined_counts(MatrixFamily::Fishburn, n as u32).by_last_column() {
            return Err(format!("n = {n}: maximal-element distribution differs from last column sums"));
        }
        for (&(a, b), &c) in &joint {
            if joint.get(&(b, a)).copied().unwrap_or(0) != c {
                return Err(format!("n = {n}: (min, max) = ({a}, {b}) not swap-symmetric"));
            }
        }
    }
    for (n, fn_) in f.iter().enumerate() {
        if BigInt::from(count_ascent_sequences(n)) != *fn_ {
            return Err(format!("ascent sequences of length {n} differ from f_n"));
        }
    }
    Ok("posets n <= 6 (217 at n = 6), ascent sequences n <= 10".into())
}

fn prop12() -> Check {
    let reports = [
        verify_formal(&FormalIdentity::Prop12, 10).map_err(e)?,
        verify_formal(&FormalIdentity::Prop12AtMinusOne, 10).map_err(e)?,
        verify_formal(&FormalIdentity::Prop12AtOne, 10).map_err(e)?,
    ];
    all_verified(&reports)?;
    Ok("degree 10 in (x, y, r); r = -1 and r = 1 specializations".into())
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn gamma_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut reports = Vec::new();
    while reports.len() < 20 {
        let gamma = random_rational(&mut rng);
        if gamma == rat(1, 1) {
            continue;
        }
        let r = random_rational(&mut rng);
        reports.push(verify_formal(&FormalIdentity::Gamma1 { gamma: gamma.clone(), r }, 8).map_err(e)?);
        reports.push(verify_formal(&FormalIdentity::Gamma2 { gamma }, 8).map_err(e)?);
    }
    all_verified(&reports)?;
    Ok("10 random (gamma, r) to degree 8".into())
}

fn watson() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut skipped = 0;
    for n in 1..=3 {
        let mut done = 0;
        while done < 20 {
            match verify_watson(&WatsonParams::random(&mut rng, n)) {
                Ok(r) => {
                    all_verified(&[r])?;
                    done += 1;
                }
                Err(IdentityError::Pole { .. }) => skipped += 1,
                Err(err) => return Err(e(err)),
            }
        }
    }
    Ok(format!("20 pole-free tuples for each N in 1..=3 ({skipped} pole draws skipped)"))
}

fn numeric() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = 0f64;
    let mut reports = Vec::new();
    for id in [NumericIdentity::RogersFine, NumericIdentity::GeneralizedRogersFine, NumericIdentity::WatsonLimit] {
        for _ in 0..30 {
            let params = NumericEvalParams::new(NumericPoint::random(id, &mut rng, 60), 60);
            reports.push(numeric_check(&params).map_err(e)?);
        }
    }
    all_verified(&reports)?;
    for r in &reports {
        for note in &r.notes {
            if let Some(v) = note.rsplit("= ").next().and_then(|v| v.parse::<f64>().ok()) {
                worst = worst.max(v);
            }
        }
    }
    all_verified(&[degeneration_check((0.3, 0.1), (0.2, -0.1), (0.4, 0.0), (0.5, 0.2), 1e-30, 60, 1e-25).map_err(e)?])?;
    Ok(format!("30 draws each of rf, grf, wat2 below 1e-25 (worst {worst:.2e}); gamma = 1e-30 degeneration"))
}

fn terminating() -> Check {
    let comp2 = verify_terminating(TerminatingFamily::Comp2, &rat(4, 1), &rat(1, 2)).map_err(e)?;
    if !comp2.notes.iter().all(|n| n.ends_with("= 5/8")) {
        return Err(format!("comp2 at (4, 1/2): {:?}", comp2.notes));
    }
    let comp1 = verify_terminating(TerminatingFamily::Comp1, &rat(2, 1), &rat(1, 2)).map_err(e)?;
    if !comp1.notes.iter().all(|n| n.ends_with("= 3/2")) {
        return Err(format!("comp1 at (2, 1/2): {:?}", comp1.notes));
    }
    let cyc = root_terminating_check(TerminatingFamily::Comp2, &Cyclotomic::zeta(4, 2), &Cyclotomic::zeta(4, 1)).map_err(e)?;
    all_verified(&[comp2, comp1, cyc])?;
    Ok("comp2 = 5/8 at (4, 1/2) and exact at (z4^2, z4); comp1 = 3/2 at (2, 1/2)".into())
}

fn conjecture() -> Check {
    let k1 = conjecture_explore(&RootContext::new(1, 0, 0, 8).map_err(e)?).map_err(e)?;
    all_verified(&k1)?;
    let m1 = conjecture_explore(&RootContext::new(2, 1, 1, 6).map_err(e)?).map_err(e)?;
    let conj1 = m1.iter().find(|r| r.id == "conj1").ok_or("no conj1 report")?;
    if !matches!(conj1.outcome, Outcome::Verified | Outcome::Mismatch(_)) {
        return Err(format!("(-1, -1) report not well-formed: {conj1}"));
    }
    if !conj1.notes.iter().any(|n| n == "constant terms 3 and 3") {
        return Err(format!("(-1, -1) constant terms: {:?}", conj1.notes));
    }
    let refused = Command::new(env!("CARGO_BIN_EXE_fishburn"))
        .args(["roots", "explore", "--k", "3", "--a", "1", "--b", "0"])
        .output()
        .map_err(e)?;
    if refused.status.code() != Some(2) {
        return Err(format!("certificate failure exited with {:?}", refused.status.code()));
    }
    let outcomes: Vec<&str> = m1.iter().map(|r| r.outcome.name()).collect();
    Ok(format!("k = 1 to order 8; (-1, -1) to order 6 {outcomes:?}, constants 3 and 3; refusal exits 2"))
}

fn asymptotics() -> Check {
    let start = Instant::now();
    let reports = [
        verify_trend(UnivariateFamily::Fishburn).map_err(e)?,
        verify_trend(UnivariateFamily::RowFishburn).map_err(e)?,
    ];
    all_verified(&reports)?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("both trends hold to n = 100 in {:?}", start.elapsed()))
}

fn pentagonal() -> Check {
    let reports = [
        verify_formal(&FormalIdentity::Pentagonal3Way, 30).map_err(e)?,
        partition_table_report(8, 30),
    ];
    all_verified(&reports)?;
    Ok("three-way to degree 30; table r <= 8, s <= 30".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("main theorem to degree 12", main_theorem),
        ("coefficient oracles", coefficient_oracle),
        ("univariate sequences", univariate_sequences),
        ("self-dual facts", self_dual_facts),
        ("interval orders and ascent sequences", interval_orders),
        ("trivariate proposition", prop12),
        ("gamma-generalized identities", gamma_identities),
        ("terminating very-well-poised sum", watson),
        ("numeric analytic identities", numeric),
        ("terminating root evaluations", terminating),
        ("root-of-unity explorer", conjecture),
        ("asymptotic trends", asymptotics),
        ("pentagonal identity and partition table", pentagonal),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
