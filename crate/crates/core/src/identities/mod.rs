//! Identity checks: formal comparison of truncated expansions, exact
//! terminating sums, high-precision numeric summation, enumeration oracles
//! and asymptotic trends.

mod asymptotic;
mod formal;
mod numeric;
mod oracle;
mod report;
mod terminating;
mod watson;

use thiserror::Error;

use crate::qseries::QSeriesError;
use crate::series::SeriesError;

pub use asymptotic::{asymptotic_trend, verify_trend, AsymptoticConstants, TrendRow, TrendTable, MAX_TREND_INDEX};
pub use formal::{verify_formal, verify_main_theorem, FormalIdentity, MAX_BIVARIATE_ORDER, MAX_TRIVARIATE_ORDER};
pub use numeric::{
    degeneration_check, evaluate_sides, format_complex, numeric_check, NumericEvalParams, NumericIdentity,
    NumericPoint, SideSum, DECAY_RUN, SUMMATION_MARGIN,
};
pub use oracle::{verify_coefficient_oracle, verify_self_dual_facts, CoefficientFamily, MAX_ORACLE_SIZE};
pub use report::{Mode, Outcome, VerificationReport, Witness};
pub use terminating::{
    evaluate_terminating, termination_certificate, verify_terminating, TerminatingExpr, TerminatingFamily,
    TerminatingValue, CERTIFICATE_SEARCH_CAP,
};
pub use watson::{verify_watson, watson_sides, WatsonParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{id}: order {order} exceeds the budget {max}")]
    OrderBudget { id: String, order: u32, max: u32 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{expr}: no termination certificate ({detail})")]
    NoCertificate { expr: String, detail: String },
    #[error("pole: {factor} vanishes ({detail})")]
    Pole { factor: String, detail: String },
}

#[cfg(test)]
mod tests;
