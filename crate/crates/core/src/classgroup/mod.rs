//! Class groups of quadratic fields from first principles.
//!
//! Ideal classes are represented exclusively as binary quadratic forms of
//! the field discriminant: reduced positive-definite forms for imaginary
//! fields, cycles of reduced indefinite forms for real fields. Composition
//! is Gauss composition. Nothing here depends on class-number tables.

mod forms;
mod group;
mod pell;
mod real;
mod witness;

pub use forms::{
    compose, prime_form, principal_form, reduced_forms_imaginary, splitting_type,
    BinaryQuadraticForm, SplittingType,
};
pub use group::{
    class_group_structure, class_number_imaginary, genus_data, order_of_prime_form,
    subgroup_generated_by, ClassGroupStructure, GenusData,
};
pub use pell::{fundamental_unit, fundamental_unit_pm4, HalfUnit, PellSolution};
pub use real::{class_number_real, reduced_forms_real};
pub use witness::{find_2l2_witness, solve_p_x2_2y2, solve_p_x2_2y2_all, TwoEllSquaredWitness};

use crate::arith::{self, isqrt};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassGroupError {
    #[error("{0} is not a valid discriminant (must be nonzero and 0 or 1 mod 4)")]
    NotADiscriminant(i64),
    #[error("d = {0} must be squarefree (non-maximal orders are out of scope)")]
    NotSquarefree(u64),
    #[error("d = {0} must be at least 2 and not a perfect square for a real field")]
    NotARealRadicand(u64),
    #[error("expected an imaginary discriminant, got {0}")]
    NotImaginary(i64),
    #[error("expected a real discriminant, got {0}")]
    NotReal(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("|D| = {0} exceeds the enumeration cap of {1}")]
    EnumerationCap(u64, u64),
    #[error("prime {prime} is inert in discriminant {discriminant}")]
    InertPrime { discriminant: i64, prime: u64 },
    #[error("forms have different discriminants: {0} and {1}")]
    MismatchedDiscriminants(i64, i64),
    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(i64, i64, i64),
    #[error("p = {0} must be a prime congruent to 1 or 7 mod 8")]
    BadWitnessPrime(u64),
    #[error("witness precondition failed: {0}")]
    WitnessPrecondition(String),
    #[error("no solution found where one is guaranteed to exist (p = {0})")]
    MissingGuaranteedSolution(u64),
}

/// Desk-scale cap on |D| for full form/cycle enumeration.
pub const ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantKind {
    Imaginary,
    Real,
}

/// A quadratic discriminant: nonzero, 0 or 1 mod 4, and not a perfect
/// square when positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadDiscriminant {
    value: i64,
}

impl QuadDiscriminant {
    pub fn new(value: i64) -> Result<Self, ClassGroupError> {
        if value == 0 || value.rem_euclid(4) > 1 {
            return Err(ClassGroupError::NotADiscriminant(value));
        }
        if value > 0 {
            let s = isqrt(value as u64);
            if s * s == value as u64 {
                return Err(ClassGroupError::NotADiscriminant(value));
            }
        }
        Ok(QuadDiscriminant { value })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn kind(&self) -> DiscriminantKind {
        if self.value < 0 {
            DiscriminantKind::Imaginary
        } else {
            DiscriminantKind::Real
        }
    }

    /// Fundamental means: D = 1 mod 4 and squarefree, or D = 4k with
    /// k = 2 or 3 mod 4 and k squarefree.
    pub fn is_fundamental(&self) -> bool {
        let d = self.value;
        if d.rem_euclid(4) == 1 {
            arith::is_squarefree(d.unsigned_abs(), None).expect("nonzero")
        } else {
            let k = d / 4;
            let r = k.rem_euclid(4);
            (r == 2 || r == 3) && arith::is_squarefree(k.unsigned_abs(), None).expect("nonzero")
        }
    }

    pub fn require_imaginary(&self) -> Result<(), ClassGroupError> {
        match self.kind() {
            DiscriminantKind::Imaginary => Ok(()),
            DiscriminantKind::Real => Err(ClassGroupError::NotImaginary(self.value)),
        }
    }

    pub fn require_real(&self) -> Result<(), ClassGroupError> {
        match self.kind() {
            DiscriminantKind::Real => Ok(()),
            DiscriminantKind::Imaginary => Err(ClassGroupError::NotReal(self.value)),
        }
    }

    pub fn require_fundamental(&self) -> Result<(), ClassGroupError> {
        if self.is_fundamental() {
            Ok(())
        } else {
            Err(ClassGroupError::NotFundamental(self.value))
        }
    }
}

/// Field discriminant of Q(sqrt(-d)) or Q(sqrt(d)) for squarefree d.
///
/// Imaginary: -d when d = 3 mod 4, else -4d. Real: d when d = 1 mod 4,
/// else 4d.
pub fn discriminant_of(d: u64, kind: DiscriminantKind) -> Result<QuadDiscriminant, ClassGroupError> {
    if d == 0 {
        return Err(ClassGroupError::NotSquarefree(0));
    }
    if !arith::is_squarefree(d, None).expect("nonzero") {
        return Err(ClassGroupError::NotSquarefree(d));
    }
    match kind {
        DiscriminantKind::Imaginary => {
            let value = if d % 4 == 3 { -(d as i64) } else { -4 * d as i64 };
            QuadDiscriminant::new(value)
        }
        DiscriminantKind::Real => {
            if d < 2 {
                return Err(ClassGroupError::NotARealRadicand(d));
            }
            let value = if d % 4 == 1 { d as i64 } else { 4 * d as i64 };
            QuadDiscriminant::new(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            discriminant_of(163, DiscriminantKind::Imaginary).unwrap().value(),
            -163
        );
        assert_eq!(
            discriminant_of(58, DiscriminantKind::Imaginary).unwrap().value(),
            -232
        );
        assert_eq!(
            discriminant_of(10, DiscriminantKind::Real).unwrap().value(),
            40
        );
        assert_eq!(
            discriminant_of(13, DiscriminantKind::Real).unwrap().value(),
            13
        );
    }

    #[test]
    fn discriminant_rejects_non_squarefree() {
        assert_eq!(
            discriminant_of(18, DiscriminantKind::Imaginary).unwrap_err(),
            ClassGroupError::NotSquarefree(18)
        );
    }

    #[test]
    fn quad_discriminant_validation() {
        assert!(QuadDiscriminant::new(-163).is_ok());
        assert!(QuadDiscriminant::new(40).is_ok());
        assert!(QuadDiscriminant::new(-6).is_err()); // 2 mod 4
        assert!(QuadDiscriminant::new(16).is_err()); // perfect square
        assert!(QuadDiscriminant::new(0).is_err());
    }

    #[test]
    fn fundamental_flags() {
        assert!(QuadDiscriminant::new(-163).unwrap().is_fundamental());
        assert!(QuadDiscriminant::new(-232).unwrap().is_fundamental()); // -4*58
        assert!(!QuadDiscriminant::new(-27).unwrap().is_fundamental()); // conductor 3
        assert!(!QuadDiscriminant::new(-100).unwrap().is_fundamental());
        assert!(QuadDiscriminant::new(40).unwrap().is_fundamental());
        assert!(QuadDiscriminant::new(13).unwrap().is_fundamental());
        assert!(!QuadDiscriminant::new(-16).unwrap().is_fundamental());
        assert!(!QuadDiscriminant::new(-12).unwrap().is_fundamental()); // -4*3, 3 = 3 mod 4
    }
}
