//! Exact truth values in the unit interval.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// A rational truth degree in `[0, 1]`, always stored in lowest terms.
///
/// Gödel semantics only ever compares and selects values, so no arithmetic
/// beyond construction is needed and every result is exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(Ratio<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("{0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self, ValueError> {
        if denom == 0 {
            return Err(ValueError::ZeroDenominator);
        }
        if numer > denom {
            return Err(ValueError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Value(Ratio::new(numer, denom)))
    }

    /// The `k`-th point of the chain `{0, 1/steps, ..., 1}`.
    pub fn level(k: u64, steps: u64) -> Self {
        assert!(steps > 0 && k <= steps, "level {k} outside chain of {steps} steps");
        Value(Ratio::new(k, steps))
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    pub fn min(self, other: Value) -> Value {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Value) -> Value {
        std::cmp::max(self, other)
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Default for Value {
    fn default() -> Self {
        Value::ZERO
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Value {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || ValueError::Malformed(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<u64>().map_err(|_| malformed())?;
                let d = d.trim().parse::<u64>().map_err(|_| malformed())?;
                Value::new(n, d)
            }
            None => {
                let n = s.parse::<u64>().map_err(|_| malformed())?;
                Value::new(n, 1)
            }
        }
    }
}
