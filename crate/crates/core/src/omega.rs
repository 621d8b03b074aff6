//! Max-omega profiles of the quadratic values d ± x² over parity-filtered
//! ranges of x, and the three Frobenius-Rabinowitsch primality criteria.
//!
//! The four profile wrappers differ only in sign, parity and starting x:
//!
//! - `m_odd(d)`       = max omega(d + x²), odd x in [1, sqrt(d)]
//! - `m_even(d)`      = max omega(d + x²), even x in [2, sqrt(d)]
//! - `m_even_real(d)` = max omega(d - x²), even x in [2, sqrt(d)]
//! - `m_all_from_zero(d)` = max omega(d + x²), all x in [0, sqrt(d)]
//!
//! The max over an empty range is 0, values equal to 1 contribute omega 0,
//! and for the minus sign any x with d - x² = 0 is skipped.

use crate::arith::{self, isqrt, Factorization, SpfTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OmegaError {
    #[error("d must be a positive integer")]
    ZeroD,
    #[error("d = {0} exceeds the supported range (d + x² must fit in 64 bits)")]
    DTooLarge(u64),
    #[error("d = {d} does not satisfy the required congruence {required}")]
    CongruenceMismatch { d: u64, required: &'static str },
}

/// Largest supported d: keeps d + x² <= 2d inside u64.
pub const MAX_D: u64 = 1 << 62;

fn check_d(d: u64) -> Result<(), OmegaError> {
    if d == 0 {
        Err(OmegaError::ZeroD)
    } else if d > MAX_D {
        Err(OmegaError::DTooLarge(d))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
    All,
}

impl Parity {
    fn matches(self, x: u64) -> bool {
        match self {
            Parity::Odd => x % 2 == 1,
            Parity::Even => x.is_multiple_of(2),
            Parity::All => true,
        }
    }
}

/// One profile query: the value is `d + sign * x²` over
/// `{ x : x_min <= x <= isqrt(d), x matches parity }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaQuery {
    pub d: u64,
    pub sign: Sign,
    pub parity: Parity,
    pub x_min: u64,
}

/// Result of a profile query. `witness_x` is the smallest x attaining the
/// max, present exactly when at least one value was evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaReport {
    pub max_omega: u32,
    pub witness_x: Option<u64>,
    pub witness_factorization: Option<Factorization>,
    pub evaluated_count: u64,
}

fn value_of(d: u64, sign: Sign, x: u64) -> Option<u64> {
    match sign {
        Sign::Plus => Some(d + x * x),
        Sign::Minus => {
            let v = d - x * x; // x <= isqrt(d) guarantees no underflow
            (v != 0).then_some(v)
        }
    }
}

/// Max of omega(d ± x²) over the query range, skipping values equal to 0.
pub fn omega_profile(query: &OmegaQuery, table: Option<&SpfTable>) -> Result<OmegaReport, OmegaError> {
    check_d(query.d)?;
    let hi = isqrt(query.d);
    let mut max_omega = 0u32;
    let mut witness: Option<u64> = None;
    let mut evaluated = 0u64;
    for x in query.x_min..=hi {
        if !query.parity.matches(x) {
            continue;
        }
        let Some(v) = value_of(query.d, query.sign, x) else {
            continue;
        };
        let w = arith::omega(v, table).expect("value is positive");
        evaluated += 1;
        if witness.is_none() || w > max_omega {
            max_omega = w;
            witness = Some(x);
        }
    }
    let witness_factorization = match witness {
        Some(x) => {
            let v = value_of(query.d, query.sign, x).expect("witness value is nonzero");
            Some(arith::factor(v, table).expect("value is positive"))
        }
        None => None,
    };
    Ok(OmegaReport {
        max_omega,
        witness_x: witness,
        witness_factorization,
        evaluated_count: evaluated,
    })
}

/// Like [`omega_profile`] but fails fast: returns `None` as soon as some
/// value has more than `threshold` distinct prime divisors. On success the
/// report is identical to the full profile.
pub fn omega_profile_bounded(
    query: &OmegaQuery,
    threshold: u32,
    table: Option<&SpfTable>,
) -> Result<Option<OmegaReport>, OmegaError> {
    check_d(query.d)?;
    let hi = isqrt(query.d);
    let mut max_omega = 0u32;
    let mut witness: Option<u64> = None;
    let mut evaluated = 0u64;
    for x in query.x_min..=hi {
        if !query.parity.matches(x) {
            continue;
        }
        let Some(v) = value_of(query.d, query.sign, x) else {
            continue;
        };
        let Some(w) = arith::omega_bounded(v, threshold, table) else {
            return Ok(None);
        };
        evaluated += 1;
        if witness.is_none() || w > max_omega {
            max_omega = w;
            witness = Some(x);
        }
    }
    Ok(Some(OmegaReport {
        max_omega,
        witness_x: witness,
        witness_factorization: None,
        evaluated_count: evaluated,
    }))
}

/// M_odd(d): max omega(d + x²) over odd x in [1, sqrt(d)].
pub fn m_odd(d: u64, table: Option<&SpfTable>) -> Result<OmegaReport, OmegaError> {
    omega_profile(
        &OmegaQuery { d, sign: Sign::Plus, parity: Parity::Odd, x_min: 1 },
        table,
    )
}

/// M_even(d): max omega(d + x²) over even x in [2, sqrt(d)].
pub fn m_even(d: u64, table: Option<&SpfTable>) -> Result<OmegaReport, OmegaError> {
    omega_profile(
        &OmegaQuery { d, sign: Sign::Plus, parity: Parity::Even, x_min: 2 },
        table,
    )
}

/// M'_even(d): max omega(d - x²) over even x in [2, sqrt(d)].
pub fn m_even_real(d: u64, table: Option<&SpfTable>) -> Result<OmegaReport, OmegaError> {
    omega_profile(
        &OmegaQuery { d, sign: Sign::Minus, parity: Parity::Even, x_min: 2 },
        table,
    )
}

/// Max omega(d + x²) over all x in [0, sqrt(d)], both parities and zero.
pub fn m_all_from_zero(d: u64, table: Option<&SpfTable>) -> Result<OmegaReport, OmegaError> {
    omega_profile(
        &OmegaQuery { d, sign: Sign::Plus, parity: Parity::All, x_min: 0 },
        table,
    )
}

/// The three Frobenius-Rabinowitsch criteria.
///
/// Each variant checks that a quotient of d ± x² is 1 or prime across its
/// whole x-range; the ranges are deliberately distinct from the M-profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrVariant {
    /// (d + x²)/4 over odd x in [1, sqrt(d)]; requires d = 3 mod 4.
    ImagOdd,
    /// (d + x²)/2 over even x in [0, sqrt(d)]; requires d = 2 mod 4.
    ImagEven,
    /// (d - x²)/4 over odd x in [3, sqrt(d)]; requires d = 5 mod 8.
    Real,
}

/// True iff every quotient in the variant's range is 1 or prime.
/// Vacuously true on an empty range.
pub fn fr_check(d: u64, variant: FrVariant) -> Result<bool, OmegaError> {
    check_d(d)?;
    let (sign, parity, x_min, divisor) = match variant {
        FrVariant::ImagOdd => {
            if d % 4 != 3 {
                return Err(OmegaError::CongruenceMismatch { d, required: "d = 3 (mod 4)" });
            }
            (Sign::Plus, Parity::Odd, 1u64, 4u64)
        }
        FrVariant::ImagEven => {
            if d % 4 != 2 {
                return Err(OmegaError::CongruenceMismatch { d, required: "d = 2 (mod 4)" });
            }
            (Sign::Plus, Parity::Even, 0, 2)
        }
        FrVariant::Real => {
            if d % 8 != 5 {
                return Err(OmegaError::CongruenceMismatch { d, required: "d = 5 (mod 8)" });
            }
            (Sign::Minus, Parity::Odd, 3, 4)
        }
    };
    let hi = isqrt(d);
    for x in x_min..=hi {
        if !parity.matches(x) {
            continue;
        }
        let Some(v) = value_of(d, sign, x) else {
            continue;
        };
        debug_assert_eq!(v % divisor, 0, "d={d} x={x}: {v} not divisible by {divisor}");
        let q = v / divisor;
        if q != 1 && !arith::is_prime(q) {
            return Ok(false);
        }
    }
    Ok(true)
}
