use std::fmt;
use std::time::{Duration, Instant};

use crate::series::MatchReport;

/// How an identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Formal,
    TerminatingExact,
    Numeric,
    Oracle,
    Trend,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Formal => "formal",
            Mode::TerminatingExact => "terminating-exact",
            Mode::Numeric => "numeric",
            Mode::Oracle => "oracle",
            Mode::Trend => "trend",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The first place two sides differ, rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Mismatch(Witness),
    /// The check could not conclude either way (e.g. no observed decay).
    Inconclusive(String),
    Error(String),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Mismatch(_) => "mismatch",
            Outcome::Inconclusive(_) => "inconclusive",
            Outcome::Error(_) => "error",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Mismatch(w) => Some(w),
            _ => None,
        }
    }

    pub fn from_match<S: fmt::Display>(m: MatchReport<S>) -> Outcome {
        match m {
            MatchReport::Equal => Outcome::Verified,
            MatchReport::Mismatch { index, left, right } => Outcome::Mismatch(Witness {
                index: index.to_string(),
                left: left.to_string(),
                right: right.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub order: Option<u32>,
    pub parameters: Vec<(String, String)>,
    pub outcome: Outcome,
    /// Free-form lines worth showing to a human (values, counts, ratios).
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, mode: Mode, outcome: Outcome) -> Self {
        VerificationReport {
            id: id.into(),
            mode,
            order: None,
            parameters: Vec::new(),
            outcome,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Runs `f` and records its wall time.
    pub fn timed(
        id: impl Into<String>,
        mode: Mode,
        f: impl FnOnce(&mut VerificationReport) -> Outcome,
    ) -> Self {
        let mut r = VerificationReport::new(id, mode, Outcome::Verified);
        let start = Instant::now();
        r.outcome = f(&mut r);
        r.elapsed = start.elapsed();
        r
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = Some(order);
        self
    }

    pub fn param(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.parameters.push((name.into(), value.to_string()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn is_verified(&self) -> bool {
        self.outcome == Outcome::Verified
    }

    pub fn timing_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.id, self.mode)?;
        if let Some(n) = self.order {
            write!(f, " order {n}")?;
        }
        for (k, v) in &self.parameters {
            write!(f, " {k}={v}")?;
        }
        write!(f, ": {}", self.outcome.name())?;
        match &self.outcome {
            Outcome::Mismatch(w) => write!(f, " at {} ({} vs {})", w.index, w.left, w.right)?,
            Outcome::Inconclusive(s) | Outcome::Error(s) => write!(f, " ({s})")?,
            Outcome::Verified => {}
        }
        write!(f, " in {:.1} ms", self.timing_ms())
    }
}
