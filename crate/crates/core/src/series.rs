//! Precision policy, error-bounded series values and the adaptive summation
//! engine shared by every lattice sum.
//!
//! All kernels summed in this crate decay exponentially along each lattice
//! axis once past a single maximum. An axis is therefore summed until the
//! terms are decreasing and an estimate of the remaining tail drops below
//! the requested fraction of the partial sum. Nested sums feed whole inner
//! sums (with their own error bounds) into the outer axis as its "terms".

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};

/// How the remaining tail of a truncated axis is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMode {
    /// Tail estimated by the next (first omitted) term.
    FirstOmittedTerm,
    /// Tail bounded by twice the geometric series with the ratio of the last
    /// two terms, once that ratio has settled.
    #[default]
    GeometricTailBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
    /// Maximum number of terms summed along any single axis.
    pub max_index: u64,
    pub error_mode: ErrorMode,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            rel_tol: 1e-10,
            abs_floor: 1e-300,
            max_index: 10_000,
            error_mode: ErrorMode::GeometricTailBound,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(rel_tol: f64, abs_floor: f64, max_index: u64, error_mode: ErrorMode) -> Result<Self> {
        let policy = PrecisionPolicy {
            rel_tol,
            abs_floor,
            max_index,
            error_mode,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(CasimirError::InvalidPolicy(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_floor >= 0.0 && self.abs_floor.is_finite()) {
            return Err(CasimirError::InvalidPolicy(format!(
                "abs_floor must be finite and non-negative, got {}",
                self.abs_floor
            )));
        }
        if self.max_index < 8 {
            return Err(CasimirError::InvalidPolicy(format!(
                "max_index must be at least 8, got {}",
                self.max_index
            )));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        self.rel_tol = rel_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_index(mut self, max_index: u64) -> Result<Self> {
        self.max_index = max_index;
        self.validate()?;
        Ok(self)
    }
}

/// A numeric result with an a posteriori error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms_used: u64,
    /// Set when some axis hit `max_index` before meeting its tolerance.
    pub truncated: bool,
}

impl SeriesValue {
    pub const ZERO: SeriesValue = SeriesValue {
        value: 0.0,
        error_bound: 0.0,
        terms_used: 0,
        truncated: false,
    };

    /// A closed-form contribution carrying no truncation error.
    pub fn exact(value: f64) -> Self {
        SeriesValue {
            value,
            ..SeriesValue::ZERO
        }
    }

    /// A single summed term.
    #[inline]
    pub(crate) fn term(value: f64) -> Self {
        SeriesValue {
            value,
            error_bound: 0.0,
            terms_used: 1,
            truncated: false,
        }
    }

    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.error_bound == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.error_bound / self.value.abs()
        }
    }

    /// Turns a truncated result whose error bound misses the tolerance into
    /// a non-convergence error naming the series.
    pub fn check(self, series: &str, policy: &PrecisionPolicy) -> Result<Self> {
        if self.truncated
            && self.error_bound > policy.rel_tol * self.value.abs()
            && self.error_bound > policy.abs_floor
        {
            return Err(CasimirError::NonConvergence {
                series: series.to_string(),
                max_index: policy.max_index,
                value: self.value,
                error_bound: self.error_bound,
            });
        }
        Ok(self)
    }

    #[inline]
    fn accumulate(&mut self, other: &SeriesValue) {
        self.value += other.value;
        self.error_bound += other.error_bound;
        self.terms_used += other.terms_used;
        self.truncated |= other.truncated;
    }
}

impl Add for SeriesValue {
    type Output = SeriesValue;
    fn add(mut self, rhs: SeriesValue) -> SeriesValue {
        self.accumulate(&rhs);
        self
    }
}

impl Sub for SeriesValue {
    type Output = SeriesValue;
    fn sub(self, rhs: SeriesValue) -> SeriesValue {
        self + (-rhs)
    }
}

impl Neg for SeriesValue {
    type Output = SeriesValue;
    fn neg(mut self) -> SeriesValue {
        self.value = -self.value;
        self
    }
}

impl Mul<SeriesValue> for f64 {
    type Output = SeriesValue;
    fn mul(self, mut rhs: SeriesValue) -> SeriesValue {
        rhs.value *= self;
        rhs.error_bound *= self.abs();
        rhs
    }
}

impl Add<f64> for SeriesValue {
    type Output = SeriesValue;
    fn add(mut self, rhs: f64) -> SeriesValue {
        self.value += rhs;
        self
    }
}

impl Sub<f64> for SeriesValue {
    type Output = SeriesValue;
    fn sub(mut self, rhs: f64) -> SeriesValue {
        self.value -= rhs;
        self
    }
}

impl Add<SeriesValue> for f64 {
    type Output = SeriesValue;
    fn add(self, rhs: SeriesValue) -> SeriesValue {
        rhs + self
    }
}

impl Sub<SeriesValue> for f64 {
    type Output = SeriesValue;
    fn sub(self, rhs: SeriesValue) -> SeriesValue {
        -rhs + self
    }
}

impl std::iter::Sum for SeriesValue {
    fn sum<I: Iterator<Item = SeriesValue>>(iter: I) -> SeriesValue {
        iter.fold(SeriesValue::ZERO, |acc, v| acc + v)
    }
}

/// Sums one lattice axis starting at index `first`.
///
/// `slice(i)` returns the contribution of index `i`, which may itself be an
/// inner sum. Contributions along the axis must share one sign and be
/// unimodal in magnitude. Summation stops once the magnitudes decrease and the
/// estimated tail is below `rel_tol / 2` of the partial sum (or below
/// `abs_floor`); the tail estimate is added to the error bound.
pub(crate) fn sum_axis<F>(policy: &PrecisionPolicy, first: u64, mut slice: F) -> SeriesValue
where
    F: FnMut(u64) -> SeriesValue,
{
    let mut acc = SeriesValue::ZERO;
    let mut prev_mag: Option<f64> = None;
    let mut prev_ratio: Option<f64> = None;
    let mut index = first;
    loop {
        let s = slice(index);
        acc.accumulate(&s);
        let mag = s.value.abs();
        if mag == 0.0 && s.error_bound == 0.0 {
            // Kernel underflowed; it only decreases further along the axis.
            break;
        }
        let ratio = prev_mag.filter(|&prev| mag < prev).map(|prev| mag / prev);
        let tail = ratio.map(|r| match policy.error_mode {
            ErrorMode::FirstOmittedTerm => mag * r,
            ErrorMode::GeometricTailBound => 2.0 * mag * r / (1.0 - r),
        });
        // Power-law prefactors make the ratio climb toward its limit, steeply
        // over the first few terms, so the ratio must have settled before
        // it is trusted for the tail.
        let settled = match (ratio, prev_ratio) {
            (Some(r), Some(pr)) => r <= 1.1 * pr,
            _ => false,
        };
        if let Some(tail) = tail {
            let small = tail <= 0.5 * policy.rel_tol * acc.value.abs();
            if (settled && small) || mag <= policy.abs_floor {
                acc.error_bound += tail;
                break;
            }
        }
        if index + 1 - first >= policy.max_index {
            acc.truncated = true;
            // Without a decreasing pair there is no meaningful tail estimate.
            acc.error_bound += tail.unwrap_or(f64::INFINITY);
            break;
        }
        prev_ratio = ratio;
        prev_mag = Some(mag);
        index += 1;
    }
    acc
}

/// Sums `Σ_{n≥1} (-1)^{n+1} t(n)` for magnitudes `t(n)` decreasing in `n`.
///
/// Odd and even terms are grouped pairwise so the summed pairs are
/// non-negative and are summed like any other axis. When the axis is
/// truncated the first omitted term, which bounds the remainder of an
/// alternating series, is folded into the error bound.
pub(crate) fn sum_alternating<F>(policy: &PrecisionPolicy, mut magnitude: F) -> SeriesValue
where
    F: FnMut(u64) -> f64,
{
    let mut last_even = 0u64;
    let mut pairs = sum_axis(policy, 1, |j| {
        let odd = magnitude(2 * j - 1);
        let even = magnitude(2 * j);
        last_even = 2 * j;
        SeriesValue {
            value: odd - even,
            error_bound: 0.0,
            terms_used: 2,
            truncated: false,
        }
    });
    if pairs.truncated {
        let next = magnitude(last_even + 1);
        pairs.error_bound = pairs.error_bound.max(next);
    }
    pairs
}
