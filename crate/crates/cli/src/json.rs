//! Stable JSON shapes for reports and series.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use fishburn_core::identities::{Outcome, VerificationReport};
use fishburn_core::{Cyclotomic, Scalar, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub index: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub id: String,
    pub mode: String,
    pub order: Option<u32>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
    pub timing_ms: f64,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            id: r.id.clone(),
            mode: r.mode.name().into(),
            order: r.order,
            outcome: r.outcome.name().into(),
            witness: match &r.outcome {
                Outcome::Mismatch(w) => Some(WitnessJson {
                    index: w.index.clone(),
                    left: w.left.clone(),
                    right: w.right.clone(),
                }),
                _ => None,
            },
            timing_ms: r.timing_ms(),
        }
    }
}

/// Exact coefficient encodings: integers in decimal, rationals as `num/den`,
/// cyclotomic numbers as `k:c0,c1,...`.
pub trait CoeffCodec: Scalar {
    const RING: &'static str;
    fn encode(&self) -> String;
    fn decode(s: &str) -> Option<Self>;
}

impl CoeffCodec for BigInt {
    const RING: &'static str = "integer";

    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl CoeffCodec for BigRational {
    const RING: &'static str = "rational";

    fn encode(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn decode(s: &str) -> Option<Self> {
        crate::config::parse_rational(s).ok()
    }
}

impl CoeffCodec for Cyclotomic {
    const RING: &'static str = "cyclotomic";

    fn encode(&self) -> String {
        self.to_text()
    }

    fn decode(s: &str) -> Option<Self> {
        Cyclotomic::parse_text(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: usize,
    pub truncation: u32,
    pub ring: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesDecodeError {
    #[error("ring tag `{found}` where `{expected}` was expected")]
    Ring { expected: &'static str, found: String },
    #[error("coefficient `{0}` does not parse")]
    Coefficient(String),
    #[error("{0}")]
    Shape(String),
}

/// Terms come out in sorted multi-index order.
pub fn series_to_json<S: CoeffCodec>(s: &TruncatedSeries<S>) -> SeriesJson {
    SeriesJson {
        vars: s.vars(),
        truncation: s.truncation(),
        ring: S::RING.into(),
        terms: s
            .terms()
            .map(|(idx, c)| TermJson {
                exp: idx.exps().to_vec(),
                coeff: c.encode(),
            })
            .collect(),
    }
}

pub fn series_from_json<S: CoeffCodec>(j: &SeriesJson) -> Result<TruncatedSeries<S>, SeriesDecodeError> {
    if j.ring != S::RING {
        return Err(SeriesDecodeError::Ring {
            expected: S::RING,
            found: j.ring.clone(),
        });
    }
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        let c = S::decode(&t.coeff).ok_or_else(|| SeriesDecodeError::Coefficient(t.coeff.clone()))?;
        terms.push((t.exp.clone(), c));
    }
    TruncatedSeries::from_terms(j.vars, j.truncation, terms).map_err(|e| SeriesDecodeError::Shape(e.to_string()))
}
