//! Truncated multivariate formal power series.
//!
//! A [`TruncatedSeries`] lives in the quotient ring where every monomial of
//! total degree above the truncation `N` is discarded. Terms are stored
//! sparsely and no stored coefficient is ever the ring zero.

mod index;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use index::{MultiIndex, MAX_VARS};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },
    #[error("constant term {constant} is not invertible in the {ring} ring")]
    NotInvertible { constant: String, ring: &'static str },
    #[error("substituted series for variable {var} has nonzero constant term {constant}")]
    SubstitutionConstant { var: usize, constant: String },
    #[error("substitution needs {expected} series, got {got}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("index {index} has total degree {degree}, beyond truncation {truncation}")]
    BeyondTruncation {
        index: MultiIndex,
        degree: u32,
        truncation: u32,
    },
    #[error("comparison order {order} exceeds truncation {truncation}")]
    OrderBeyondTruncation { order: u32, truncation: u32 },
    #[error("variable {var} out of range for a series in {vars} variables")]
    NoSuchVariable { var: usize, vars: usize },
    #[error("series support 1 to {MAX_VARS} variables, got {0}")]
    BadVariableCount(usize),
}

/// Outcome of [`TruncatedSeries::equal_up_to`].
#[derive(Debug, Clone, PartialEq)]
pub enum MatchReport<S> {
    Equal,
    /// Lexicographically least disagreeing monomial and both coefficients.
    Mismatch {
        index: MultiIndex,
        left: S,
        right: S,
    },
}

impl<S> MatchReport<S> {
    pub fn is_equal(&self) -> bool {
        matches!(self, MatchReport::Equal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S> {
    vars: usize,
    truncation: u32,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(vars: usize, truncation: u32) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&vars),
            "series support 1 to {MAX_VARS} variables"
        );
        TruncatedSeries {
            vars,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, truncation: u32, c: S) -> Self {
        let mut s = Self::zero(vars, truncation);
        s.insert(MultiIndex::zero(vars), c);
        s
    }

    pub fn one(vars: usize, truncation: u32) -> Self {
        Self::constant(vars, truncation, S::one())
    }

    /// The formal variable with index `var` (0 = x, 1 = y, 2 = auxiliary).
    pub fn var(vars: usize, truncation: u32, var: usize) -> Self {
        assert!(var < vars, "variable {var} out of range");
        let mut s = Self::zero(vars, truncation);
        s.insert(MultiIndex::unit(vars, var), S::one());
        s
    }

    pub fn monomial(vars: usize, truncation: u32, exps: &[u32], c: S) -> Self {
        assert_eq!(exps.len(), vars);
        let mut s = Self::zero(vars, truncation);
        s.insert(MultiIndex::new(exps), c);
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed and anything beyond the truncation is dropped.
    pub fn from_terms<I>(vars: usize, truncation: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Vec<u32>, S)>,
    {
        if !(1..=MAX_VARS).contains(&vars) {
            return Err(SeriesError::BadVariableCount(vars));
        }
        let mut s = Self::zero(vars, truncation);
        for (exps, c) in terms {
            if exps.len() != vars {
                return Err(SeriesError::ArityMismatch {
                    left: vars,
                    right: exps.len(),
                });
            }
            s.accumulate(MultiIndex::new(&exps), c);
        }
        Ok(s)
    }

    fn insert(&mut self, idx: MultiIndex, c: S) {
        if idx.total_degree() <= self.truncation && !c.is_zero() {
            self.terms.insert(idx, c);
        }
    }

    fn accumulate(&mut self, idx: MultiIndex, c: S) {
        if idx.total_degree() > self.truncation || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Nonzero terms in lexicographic order of their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> S {
        self.terms
            .get(&MultiIndex::zero(self.vars))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Smallest total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total_degree).min()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Result<S, SeriesError> {
        if idx.arity() != self.vars {
            return Err(SeriesError::ArityMismatch {
                left: self.vars,
                right: idx.arity(),
            });
        }
        let degree = idx.total_degree();
        if degree > self.truncation {
            return Err(SeriesError::BeyondTruncation {
                index: *idx,
                degree,
                truncation: self.truncation,
            });
        }
        Ok(self.terms.get(idx).cloned().unwrap_or_else(S::zero))
    }

    /// Shorthand for [`coefficient`](Self::coefficient) with a raw exponent slice.
    pub fn coeff(&self, exps: &[u32]) -> Result<S, SeriesError> {
        self.coefficient(&MultiIndex::new(exps))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::ArityMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.accumulate(*idx, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.accumulate(*idx, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.vars, self.truncation);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in &self.terms {
            out.insert(*idx, v.mul_ref(c));
        }
        out
    }

    /// Product truncated at `N`; pairs whose degrees sum past `N` are never formed.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let n = self.truncation;
        let mut rhs: Vec<(&MultiIndex, &S, u32)> = other
            .terms
            .iter()
            .map(|(i, c)| (i, c, i.total_degree()))
            .collect();
        rhs.sort_by_key(|t| t.2);
        let mut acc: BTreeMap<MultiIndex, S> = BTreeMap::new();
        for (ia, ca) in &self.terms {
            let da = ia.total_degree();
            for &(ib, cb, db) in &rhs {
                if da + db > n {
                    break;
                }
                let prod = ca.mul_ref(cb);
                match acc.get_mut(&ia.plus(ib)) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(ia.plus(ib), prod);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries {
            vars: self.vars,
            truncation: n,
            terms: acc,
        })
    }

    fn homogeneous_parts(&self) -> Vec<Vec<(MultiIndex, S)>> {
        let mut parts = vec![Vec::new(); self.truncation as usize + 1];
        for (idx, c) in &self.terms {
            parts[idx.total_degree() as usize].push((*idx, c.clone()));
        }
        parts
    }

    /// Multiplicative inverse, solved degree by degree:
    /// `b_d = -a_0^{-1} * sum_{e=1..d} a_e b_{d-e}` on homogeneous parts.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        let inv0 = c0.try_inv().ok_or_else(|| SeriesError::NotInvertible {
            constant: c0.to_string(),
            ring: S::KIND.name(),
        })?;
        let neg_inv0 = -inv0.clone();
        let a = self.homogeneous_parts();
        let mut b: Vec<Vec<(MultiIndex, S)>> = Vec::with_capacity(a.len());
        b.push(vec![(MultiIndex::zero(self.vars), inv0)]);
        for d in 1..a.len() {
            let mut acc: BTreeMap<MultiIndex, S> = BTreeMap::new();
            for e in 1..=d {
                for (ia, ca) in &a[e] {
                    for (ib, cb) in &b[d - e] {
                        let prod = ca.mul_ref(cb);
                        match acc.get_mut(&ia.plus(ib)) {
                            Some(v) => *v += &prod,
                            None => {
                                acc.insert(ia.plus(ib), prod);
                            }
                        }
                    }
                }
            }
            b.push(
                acc.into_iter()
                    .map(|(i, c)| (i, c.mul_ref(&neg_inv0)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            );
        }
        let mut out = Self::zero(self.vars, self.truncation);
        for (idx, c) in b.into_iter().flatten() {
            out.insert(idx, c);
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring; negative `k` goes through [`invert`](Self::invert).
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        let mut base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.vars, self.truncation);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Composes `self(s_0, s_1, ...)`. Every substituted series must have a
    /// zero constant term; the result lives in the variables of the
    /// substituted series, truncated at the smaller of the two truncations.
    pub fn substitute(&self, assignment: &[TruncatedSeries<S>]) -> Result<Self, SeriesError> {
        if assignment.len() != self.vars {
            return Err(SeriesError::AssignmentLength {
                expected: self.vars,
                got: assignment.len(),
            });
        }
        let first = &assignment[0];
        for s in &assignment[1..] {
            first.check_compatible(s)?;
        }
        for (var, s) in assignment.iter().enumerate() {
            let c = s.constant_term();
            if !c.is_zero() {
                return Err(SeriesError::SubstitutionConstant {
                    var,
                    constant: c.to_string(),
                });
            }
        }
        let n = self.truncation.min(first.truncation);
        let targets: Vec<Self> = assignment.iter().map(|s| s.restrict_unchecked(n)).collect();
        let mut powers: Vec<Vec<Self>> = targets
            .iter()
            .map(|t| vec![Self::one(t.vars, n), t.clone()])
            .collect();
        let mut out = Self::zero(first.vars, n);
        for (idx, c) in &self.terms {
            if idx.total_degree() > n {
                continue;
            }
            let mut prod = Self::constant(first.vars, n, c.clone());
            for (var, &e) in idx.exps().iter().enumerate() {
                let e = e as usize;
                while powers[var].len() <= e {
                    let next = powers[var].last().unwrap().try_mul(&targets[var])?;
                    powers[var].push(next);
                }
                prod = prod.try_mul(&powers[var][e])?;
                if prod.is_zero() {
                    break;
                }
            }
            for (i, v) in prod.terms {
                out.accumulate(i, v);
            }
        }
        Ok(out)
    }

    fn restrict_unchecked(&self, order: u32) -> Self {
        TruncatedSeries {
            vars: self.vars,
            truncation: order,
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.total_degree() <= order)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// Drops every term above `order` and lowers the truncation to `order`.
    pub fn restrict(&self, order: u32) -> Result<Self, SeriesError> {
        if order > self.truncation {
            return Err(SeriesError::OrderBeyondTruncation {
                order,
                truncation: self.truncation,
            });
        }
        Ok(self.restrict_unchecked(order))
    }

    /// Compares coefficients of total degree `<= order` using the ring's default tolerance.
    pub fn equal_up_to(&self, other: &Self, order: u32) -> Result<MatchReport<S>, SeriesError> {
        self.equal_up_to_tol(other, order, S::default_tolerance())
    }

    pub fn equal_up_to_tol(
        &self,
        other: &Self,
        order: u32,
        tol: f64,
    ) -> Result<MatchReport<S>, SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::ArityMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        let limit = self.truncation.min(other.truncation);
        if order > limit {
            return Err(SeriesError::OrderBeyondTruncation {
                order,
                truncation: limit,
            });
        }
        let zero = S::zero();
        let mut keys: Vec<&MultiIndex> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|i| i.total_degree() <= order)
            .collect();
        keys.sort();
        keys.dedup();
        for idx in keys {
            let l = self.terms.get(idx).unwrap_or(&zero);
            let r = other.terms.get(idx).unwrap_or(&zero);
            if !l.close_to(r, tol) {
                return Ok(MatchReport::Mismatch {
                    index: *idx,
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
        Ok(MatchReport::Equal)
    }

    /// Coefficient-wise ring change, e.g. integers into a cyclotomic field.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        let mut out = TruncatedSeries::zero(self.vars, self.truncation);
        for (idx, c) in &self.terms {
            out.insert(*idx, f(c));
        }
        out
    }

    /// Renders with the given variable names instead of `x, y, z`.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        SeriesDisplay { series: self, names }
    }
}

struct SeriesDisplay<'a, S> {
    series: &'a TruncatedSeries<S>,
    names: &'a [&'a str],
}

impl<S: Scalar> fmt::Display for SeriesDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.series.terms.iter().collect();
        terms.sort_by_key(|(i, _)| (i.total_degree(), std::cmp::Reverse(**i)));
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (idx, c)) in terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = idx
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| {
                    let name = self.names.get(v).copied().unwrap_or("?");
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        write!(f, " + O(deg {})", self.series.truncation + 1)
    }
}

impl<S: Scalar> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&["x", "y", "z"]))
    }
}

// Operator forms panic on incompatible operands; use the `try_*` methods
// where the operands are not known to agree.
impl<S: Scalar> Add for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn add(self, rhs: Self) -> TruncatedSeries<S> {
        self.try_add(rhs).expect("incompatible series")
    }
}

impl<S: Scalar> Sub for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn sub(self, rhs: Self) -> TruncatedSeries<S> {
        self.try_sub(rhs).expect("incompatible series")
    }
}

impl<S: Scalar> Mul for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn mul(self, rhs: Self) -> TruncatedSeries<S> {
        self.try_mul(rhs).expect("incompatible series")
    }
}

impl<S: Scalar> Neg for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn neg(self) -> TruncatedSeries<S> {
        TruncatedSeries {
            vars: self.vars,
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (*i, -c.clone()))
                .collect(),
        }
    }
}
