//! Constructive witnesses behind the class-group arguments: solutions of
//! p + x² = 2y², and the d ± x² = 2l² equations attached to split primes.

use super::forms::{splitting_type, SplittingType};
use super::{discriminant_of, ClassGroupError, DiscriminantKind};
use crate::arith::{is_prime, is_squarefree, isqrt, perfect_sqrt};
use crate::omega::Sign;

/// Smallest x in [0, sqrt(p)) with p + x² = 2y², y in [0, sqrt(p)).
/// A solution exists for every prime p = ±1 mod 8 because p splits into
/// principal primes in the euclidean ring Z[sqrt(2)].
pub fn solve_p_x2_2y2(p: u64) -> Result<(u64, u64), ClassGroupError> {
    solve_p_x2_2y2_all(p)?
        .into_iter()
        .next()
        .ok_or(ClassGroupError::MissingGuaranteedSolution(p))
}

/// Every (x, y) in [0, sqrt(p))² with p + x² = 2y², ascending in x.
/// Only the existence of a solution is proved; empirically there is
/// exactly one, but nothing here assumes that.
pub fn solve_p_x2_2y2_all(p: u64) -> Result<Vec<(u64, u64)>, ClassGroupError> {
    if !is_prime(p) || (p % 8 != 1 && p % 8 != 7) {
        return Err(ClassGroupError::BadWitnessPrime(p));
    }
    let mut solutions = Vec::new();
    // p odd, so p + x² is even only for odd x.
    let mut x = 1u64;
    while x * x < p {
        let half = (p + x * x) / 2;
        if let Some(y) = perfect_sqrt(half) {
            solutions.push((x, y));
        }
        x += 2;
    }
    Ok(solutions)
}

/// Outcome of the d ± x² = 2l² search for a split odd prime l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoEllSquaredWitness {
    /// x with d + x² = 2l² (sign +1) or d - x² = 2l² (sign -1).
    Exact { x: u64 },
    /// The degenerate real branch: d = l² + 1, x = l - 1, d - x² = 2l.
    Degenerate { x: u64 },
    /// No witness; for sign +1 this refutes M_even(d) <= 2.
    Absent,
}

/// Search for the witness of d ± x² = 2l².
///
/// Preconditions: d = 2 mod 4 squarefree, l an odd prime <= sqrt(d) that
/// splits in the field of discriminant -4d (sign +1) or 4d (sign -1).
pub fn find_2l2_witness(
    d: u64,
    l: u64,
    sign: Sign,
) -> Result<TwoEllSquaredWitness, ClassGroupError> {
    if d % 4 != 2 {
        return Err(ClassGroupError::WitnessPrecondition(format!(
            "d = {d} must be 2 mod 4"
        )));
    }
    if !is_squarefree(d, None).expect("nonzero") {
        return Err(ClassGroupError::NotSquarefree(d));
    }
    if l < 3 || l.is_multiple_of(2) || !is_prime(l) {
        return Err(ClassGroupError::WitnessPrecondition(format!(
            "l = {l} must be an odd prime"
        )));
    }
    if l > isqrt(d) {
        return Err(ClassGroupError::WitnessPrecondition(format!(
            "l = {l} exceeds sqrt({d})"
        )));
    }
    let kind = match sign {
        Sign::Plus => DiscriminantKind::Imaginary,
        Sign::Minus => DiscriminantKind::Real,
    };
    let disc = discriminant_of(d, kind)?;
    if splitting_type(&disc, l) != SplittingType::Split {
        return Err(ClassGroupError::WitnessPrecondition(format!(
            "l = {l} does not split in discriminant {}",
            disc.value()
        )));
    }
    let target = 2 * l * l;
    match sign {
        Sign::Plus => {
            // x² = 2l² - d
            if target >= d {
                if let Some(x) = perfect_sqrt(target - d) {
                    return Ok(TwoEllSquaredWitness::Exact { x });
                }
            }
            Ok(TwoEllSquaredWitness::Absent)
        }
        Sign::Minus => {
            // x² = d - 2l²
            if d >= target {
                if let Some(x) = perfect_sqrt(d - target) {
                    return Ok(TwoEllSquaredWitness::Exact { x });
                }
            }
            if d == l * l + 1 {
                return Ok(TwoEllSquaredWitness::Degenerate { x: l - 1 });
            }
            Ok(TwoEllSquaredWitness::Absent)
        }
    }
}
