//! Symbolic cardinals drawn from `{n < ω} ∪ {ℵ_k : k < ω} ∪ {ℵ_ω}`.
//!
//! The universe is closed under every operation the classifier performs:
//! binary sums and products, suprema of finite lists, and suprema of
//! countable repetitions (including the ω-ladder `ℵ_0, ℵ_1, ℵ_2, …` whose
//! sum is `ℵ_ω`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A cardinal number in normal form.
///
/// The derived order is the cardinal order: every finite value lies below
/// every aleph, alephs are ordered by index, and `AlephOmega` is the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(u64),
    Aleph(u32),
    AlephOmega,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalError {
    #[error("cannot aggregate an empty list of cardinals")]
    EmptyAggregate,
    #[error("invalid cardinal literal `{0}`")]
    Syntax(String),
    #[error("finite cardinal arithmetic overflowed")]
    Overflow,
}

/// How the listed members of an aggregate repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repetition {
    /// Each listed value occurs exactly once.
    Once,
    /// The listed values are repeated countably infinitely often.
    Countably,
    /// The listed values open an ω-sequence whose aleph indices are unbounded.
    UnboundedAlephs,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ONE: Cardinal = Cardinal::Finite(1);
    pub const ALEPH0: Cardinal = Cardinal::Aleph(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self == Cardinal::ZERO
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// At most `ℵ_0`.
    pub fn is_countable(self) -> bool {
        self <= Cardinal::ALEPH0
    }

    pub fn checked_add(self, other: Cardinal) -> Result<Cardinal, CardinalError> {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_add(b).map(Cardinal::Finite).ok_or(CardinalError::Overflow)
            }
            // κ + λ = max(κ, λ) once either summand is infinite
            (a, b) => Ok(a.max(b)),
        }
    }

    pub fn checked_mul(self, other: Cardinal) -> Result<Cardinal, CardinalError> {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_mul(b).map(Cardinal::Finite).ok_or(CardinalError::Overflow)
            }
            (a, b) if a.is_zero() || b.is_zero() => Ok(Cardinal::ZERO),
            (a, b) => Ok(a.max(b)),
        }
    }

    /// Sum of a finite list, each member counted once.
    pub fn sum(xs: &[Cardinal]) -> Result<Cardinal, CardinalError> {
        Cardinal::sum_with(xs, Repetition::Once)
    }

    /// Sum of an aggregate whose listed members repeat as described by `rep`.
    pub fn sum_with(xs: &[Cardinal], rep: Repetition) -> Result<Cardinal, CardinalError> {
        let (first, rest) = xs.split_first().ok_or(CardinalError::EmptyAggregate)?;
        let once = rest.iter().try_fold(*first, |acc, &x| acc.checked_add(x))?;
        Ok(match rep {
            Repetition::Once => once,
            Repetition::Countably if once.is_zero() => Cardinal::ZERO,
            // countably many copies of a positive value: ℵ_0 · κ
            Repetition::Countably => once.max(Cardinal::ALEPH0),
            // sup of ℵ_m over m < ω
            Repetition::UnboundedAlephs => Cardinal::AlephOmega,
        })
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    /// Panics on finite overflow; use [`Cardinal::checked_add`] otherwise.
    fn add(self, rhs: Cardinal) -> Cardinal {
        self.checked_add(rhs).expect("finite cardinal overflow")
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        self.checked_mul(rhs).expect("finite cardinal overflow")
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ZERO, |a, b| a + b)
    }
}

/// `cmp` as a free function, mirroring the other cardinal operations.
pub fn cmp(a: Cardinal, b: Cardinal) -> Ordering {
    a.cmp(&b)
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph(k) => write!(f, "aleph{k}"),
            Cardinal::AlephOmega => f.write_str("alephw"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = CardinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CardinalError::Syntax(s.to_string());
        let s = s.trim();
        if s == "alephw" {
            return Ok(Cardinal::AlephOmega);
        }
        if let Some(idx) = s.strip_prefix("aleph") {
            if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            return idx.parse().map(Cardinal::Aleph).map_err(|_| bad());
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map(Cardinal::Finite).map_err(|_| bad())
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
