//! Exact truncated q-series for interval orders and self-dual interval orders.

pub mod cyclotomic;
pub mod enumeration;
pub mod identities;
pub mod qseries;
pub mod roots;
pub mod precise;
pub mod scalar;
pub mod series;

pub use cyclotomic::Cyclotomic;
pub use precise::BigComplex;
pub use scalar::{RingKind, Scalar};
pub use series::{MatchReport, MultiIndex, SeriesError, TruncatedSeries};

pub type IntSeries = TruncatedSeries<num_bigint::BigInt>;
pub type RatSeries = TruncatedSeries<num_rational::BigRational>;
pub type CycSeries = TruncatedSeries<Cyclotomic>;
pub type ComplexSeries = TruncatedSeries<BigComplex>;
pub type F64Series = TruncatedSeries<num_complex::Complex64>;
