//! Machine-checkable specs for the theorem and conjecture value lists, and
//! the class-group implications attached to them.
//!
//! Each spec is a membership predicate (a [`DFilter`] plus an omega-profile
//! or Frobenius-Rabinowitsch criterion with threshold), an expected value
//! set, and a default search bound. [`verify`] reproduces the set by
//! exhaustive scan and reports missing/spurious values exactly; bounded
//! search certifies the list below the bound and nothing beyond it.

use crate::classgroup::{
    class_group_structure, discriminant_of, order_of_prime_form, DiscriminantKind,
};
use crate::omega::FrVariant;
use crate::scan::{
    scan, DFilter, ResidueClass, ScanError, ScanJob, ScanOptions, ScanProfile, Shape,
};
use crate::verify_data as data;
use crate::classgroup::ClassGroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),
    #[error("bound {bound} is below the largest expected value {needed}")]
    BoundTooSmall { bound: u64, needed: u64 },
    #[error("{id} has no class-group implication check")]
    NoImplication { id: String },
    #[error(transparent)]
    Scan(#[from] ScanError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
}

/// One theorem, conjecture or FR characterization as a checkable search.
#[derive(Debug, Clone)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub filter: DFilter,
    pub profile: ScanProfile,
    pub threshold: u32,
    pub expected: &'static [u64],
    pub default_bound: u64,
    pub caveat: Option<&'static str>,
}

/// Outcome of reproducing one spec by exhaustive scan.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub bound_used: u64,
    pub computed: Vec<u64>,
    pub missing: Vec<u64>,
    pub spurious: Vec<u64>,
    pub matched: bool,
    pub elapsed_ms: u128,
    pub caveat: Option<String>,
}

const EXCEPTION_CAVEAT: &str = "at most one possible exception: the proof rules out a second \
value beyond any bound, so an exact match certifies the list below the bound only";

fn residue(modulus: u64, remainders: &[u64]) -> Option<ResidueClass> {
    Some(ResidueClass { modulus, remainders: remainders.to_vec() })
}

fn filter(
    residue: Option<ResidueClass>,
    squarefree: Option<bool>,
    shape: Shape,
    min_d: u64,
) -> DFilter {
    DFilter { residue, squarefree, shape, min_d }
}

/// All built-in specs, with expected sets transcribed from the source lists
/// and validated against frozen checksums.
pub fn builtin_theorems() -> Vec<TheoremSpec> {
    data::validate_checksums();
    vec![
        TheoremSpec {
            id: "T1.1",
            statement: "odd d neither prime nor a product of two distinct primes with M_odd(d) <= 2",
            filter: filter(residue(2, &[1]), None, Shape::NeitherPrimeNorTwoDistinctPrimes, 1),
            profile: ScanProfile::MOdd,
            threshold: 2,
            expected: &data::THM_1_1,
            default_bound: 1_000_000,
            caveat: None,
        },
        TheoremSpec {
            id: "T1.2",
            statement: "odd d != 7 mod 8, prime or a product of two distinct primes, with M_odd(d) <= 2 (all are prime, h | 4)",
            filter: filter(residue(8, &[1, 3, 5]), None, Shape::PrimeOrTwoDistinctPrimes, 1),
            profile: ScanProfile::MOdd,
            threshold: 2,
            expected: &data::THM_1_2,
            default_bound: 1_000_000,
            caveat: None,
        },
        TheoremSpec {
            id: "T1.3",
            statement: "d = 7 mod 8, prime or a product of two distinct primes, with M_odd(d) <= 2 (cyclic class group generated by a norm-2 class)",
            filter: filter(residue(8, &[7]), None, Shape::PrimeOrTwoDistinctPrimes, 1),
            profile: ScanProfile::MOdd,
            threshold: 2,
            expected: &data::THM_1_3,
            default_bound: 1_000_000,
            caveat: Some(EXCEPTION_CAVEAT),
        },
        TheoremSpec {
            id: "T1.4",
            statement: "squarefree d = 2 mod 4 with omega(d + x^2) <= 2 for all x in [0, sqrt(d)] (cyclic class group of order dividing 4)",
            filter: filter(residue(4, &[2]), Some(true), Shape::Any, 1),
            profile: ScanProfile::MAllFromZero,
            threshold: 2,
            expected: &data::THM_1_4,
            default_bound: 1_000_000,
            caveat: None,
        },
        TheoremSpec {
            id: "T1.5",
            statement: "squarefree d = 2 mod 4 with M_even(d) <= 2 (class number divides 16)",
            filter: filter(residue(4, &[2]), Some(true), Shape::Any, 1),
            profile: ScanProfile::MEven,
            threshold: 2,
            expected: &data::THM_1_5,
            default_bound: 1_000_000,
            caveat: None,
        },
        TheoremSpec {
            id: "T1.6",
            statement: "non-squarefree d = 2 mod 4 with M_even(d) <= 2",
            filter: filter(residue(4, &[2]), Some(false), Shape::Any, 1),
            profile: ScanProfile::MEven,
            threshold: 2,
            expected: &data::THM_1_6,
            default_bound: 10_000,
            caveat: None,
        },
        TheoremSpec {
            id: "T1.8",
            statement: "non-squarefree d = 2 mod 4 with M'_even(d) <= 2",
            filter: filter(residue(4, &[2]), Some(false), Shape::Any, 1),
            profile: ScanProfile::MEvenReal,
            threshold: 2,
            expected: &data::THM_1_8,
            default_bound: 10_000,
            caveat: None,
        },
        TheoremSpec {
            id: "C1",
            statement: "conjecture: squarefree d = 2 mod 4 with M_odd(d) <= 2",
            filter: filter(residue(4, &[2]), Some(true), Shape::Any, 1),
            profile: ScanProfile::MOdd,
            threshold: 2,
            expected: &data::CONJECTURE_1,
            default_bound: 1_000_000,
            caveat: Some("conjectured list; the bounded search certifies it below the bound only"),
        },
        TheoremSpec {
            id: "C2",
            statement: "conjecture: non-squarefree d = 2 mod 4 with M_odd(d) <= 2",
            filter: filter(residue(4, &[2]), Some(false), Shape::Any, 1),
            profile: ScanProfile::MOdd,
            threshold: 2,
            expected: &data::CONJECTURE_2,
            default_bound: 1_000_000,
            caveat: Some("conjectured list; the bounded search certifies it below the bound only"),
        },
        TheoremSpec {
            id: "C3",
            statement: "conjecture: squarefree d = 2 mod 4 with M'_even(d) <= 2 (class number of the real field divides 16)",
            filter: filter(residue(4, &[2]), Some(true), Shape::Any, 1),
            profile: ScanProfile::MEvenReal,
            threshold: 2,
            expected: &data::CONJECTURE_3,
            default_bound: 10_000,
            caveat: Some("conjectured list; the bounded search certifies it below the bound only"),
        },
        TheoremSpec {
            id: "FR1",
            statement: "d = 3 mod 4 where (d + x^2)/4 is 1 or prime for all odd x <= sqrt(d) (iff d prime with class number one)",
            filter: filter(residue(4, &[3]), None, Shape::Any, 1),
            profile: ScanProfile::Fr(FrVariant::ImagOdd),
            threshold: 0,
            expected: &data::FR_IMAG_ODD,
            default_bound: 10_000,
            caveat: None,
        },
        TheoremSpec {
            id: "FR2",
            statement: "d = 2 mod 4 where (d + x^2)/2 is 1 or prime for all even x in [0, sqrt(d)] (iff d/2 prime with class number two, d = 2 degenerate)",
            filter: filter(residue(4, &[2]), None, Shape::Any, 1),
            profile: ScanProfile::Fr(FrVariant::ImagEven),
            threshold: 0,
            expected: &data::FR_IMAG_EVEN,
            default_bound: 10_000,
            caveat: None,
        },
        TheoremSpec {
            id: "FR-real",
            statement: "d = 5 mod 8 with a nonempty criterion range (d >= 9) where (d - x^2)/4 is 1 or prime for all odd x in [3, sqrt(d)] (real class number one)",
            filter: filter(residue(8, &[5]), None, Shape::Any, 9),
            profile: ScanProfile::Fr(FrVariant::Real),
            threshold: 0,
            expected: &data::FR_REAL,
            default_bound: 10_000,
            caveat: None,
        },
    ]
}

/// Find a spec by id, case-insensitively.
pub fn lookup(id: &str) -> Result<TheoremSpec, VerifyError> {
    builtin_theorems()
        .into_iter()
        .find(|s| s.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| VerifyError::UnknownTheorem(id.to_string()))
}

/// Reproduce a spec's expected set by exhaustive scan up to `bound`
/// (default: the spec's bound). Deterministic for any worker count.
pub fn verify(
    spec: &TheoremSpec,
    bound: Option<u64>,
    opts: &ScanOptions,
) -> Result<VerificationReport, VerifyError> {
    let needed = spec.expected.last().copied().unwrap_or(1);
    let bound = bound.unwrap_or(spec.default_bound);
    if bound < needed {
        return Err(VerifyError::BoundTooSmall { bound, needed });
    }
    let start = std::time::Instant::now();
    let job = ScanJob {
        lo: 1,
        hi: bound,
        profile: spec.profile,
        threshold: spec.threshold,
        filter: spec.filter.clone(),
        chunk_size: 4096,
        journal_path: None,
    };
    let outcome = scan(&job, opts)?;
    let computed: Vec<u64> = outcome.records.iter().map(|r| r.d).collect();
    let missing: Vec<u64> = spec
        .expected
        .iter()
        .copied()
        .filter(|d| computed.binary_search(d).is_err())
        .collect();
    let spurious: Vec<u64> = computed
        .iter()
        .copied()
        .filter(|d| spec.expected.binary_search(d).is_err())
        .collect();
    let matched = missing.is_empty() && spurious.is_empty();
    Ok(VerificationReport {
        id: spec.id.to_string(),
        bound_used: bound,
        computed,
        missing,
        spurious,
        matched,
        elapsed_ms: start.elapsed().as_millis(),
        caveat: spec.caveat.map(|s| s.to_string()),
    })
}

/// One class-group implication evaluated at one expected value.
#[derive(Debug, Clone)]
pub struct ImplicationCheck {
    pub d: u64,
    pub property: String,
    pub holds: bool,
}

/// Integer-exact test of h <= log2(limit): 2^h <= limit.
fn h_at_most_log2(h: u64, limit: u64) -> bool {
    h < 64 && (1u64 << h) <= limit
}

/// Evaluate the class-group implications a theorem claims for every value
/// of its expected set, using only form enumeration and composition.
pub fn check_class_implications(id: &str) -> Result<Vec<ImplicationCheck>, VerifyError> {
    let spec = lookup(id)?;
    let mut checks = Vec::new();
    match spec.id {
        "T1.2" => {
            for &d in spec.expected {
                let prime = crate::arith::is_prime(d);
                checks.push(ImplicationCheck {
                    d,
                    property: format!("{d} is prime"),
                    holds: prime,
                });
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} divides 4", disc.value(), s.h),
                    holds: 4 % s.h == 0,
                });
            }
        }
        "T1.3" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                debug_assert_eq!(disc.value(), -(d as i64)); // d = 7 mod 8
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} <= log2({})", disc.value(), s.h, 2 * d),
                    holds: h_at_most_log2(s.h, 2 * d),
                });
                let ord = order_of_prime_form(&disc, 2)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!(
                        "norm-2 class of order {ord} generates the group of order {}",
                        s.h
                    ),
                    holds: ord == s.h,
                });
            }
        }
        "T1.4" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!(
                        "Cl({}) of order {} is cyclic of order dividing 4",
                        disc.value(),
                        s.h
                    ),
                    holds: s.is_cyclic() && 4 % s.h == 0,
                });
            }
        }
        "T1.5" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} divides 16", disc.value(), s.h),
                    holds: 16 % s.h == 0,
                });
            }
        }
        "C3" => {
            // Thm 1.7's conclusion applied to the conjectured real list.
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Real)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} divides 16", disc.value(), s.h),
                    holds: 16 % s.h == 0,
                });
            }
        }
        "FR1" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} equals 1", disc.value(), s.h),
                    holds: s.h == 1,
                });
            }
        }
        "FR2" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Imaginary)?;
                let s = class_group_structure(&disc)?;
                // d = 2 is the degenerate member: h(-8) = 1.
                let want = if d == 2 { 1 } else { 2 };
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} equals {want}", disc.value(), s.h),
                    holds: s.h == want,
                });
            }
        }
        "FR-real" => {
            for &d in spec.expected {
                let disc = discriminant_of(d, DiscriminantKind::Real)?;
                let s = class_group_structure(&disc)?;
                checks.push(ImplicationCheck {
                    d,
                    property: format!("h({}) = {} equals 1", disc.value(), s.h),
                    holds: s.h == 1,
                });
            }
        }
        other => {
            return Err(VerifyError::NoImplication { id: other.to_string() });
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_expected_sets() {
        assert_eq!(lookup("T1.6").unwrap().expected, &[18]);
        assert_eq!(lookup("T1.3").unwrap().expected.len(), 19);
        assert_eq!(lookup("C1").unwrap().expected.len(), 202);
        assert_eq!(lookup("c2").unwrap().expected.len(), 44);
        assert!(lookup("T9.9").is_err());
    }

    #[test]
    fn expected_values_satisfy_their_filters_and_predicates() {
        for spec in builtin_theorems() {
            for &d in spec.expected {
                assert!(
                    spec.filter.accepts(d, None),
                    "{}: expected value {d} fails its own filter",
                    spec.id
                );
                assert!(
                    spec.profile.evaluate(d, spec.threshold, None).is_some(),
                    "{}: expected value {d} fails its own predicate",
                    spec.id
                );
                assert!(d <= spec.default_bound, "{}: bound below {d}", spec.id);
            }
        }
    }

    #[test]
    fn all_builtin_specs_reproduce_at_default_bounds() {
        let opts = ScanOptions::default();
        for spec in builtin_theorems() {
            let report = verify(&spec, None, &opts).unwrap();
            assert!(
                report.matched,
                "{} at default bound {}: missing {:?}, spurious {:?}",
                spec.id, spec.default_bound, report.missing, report.spurious
            );
            assert_eq!(report.computed.len(), spec.expected.len());
        }
    }

    #[test]
    fn verify_is_deterministic_modulo_elapsed() {
        let opts = ScanOptions::default();
        let spec = lookup("T1.8").unwrap();
        let a = verify(&spec, None, &opts).unwrap();
        let b = verify(&spec, None, &ScanOptions { workers: 1, ..Default::default() }).unwrap();
        assert_eq!(a.computed, b.computed);
        assert_eq!(a.missing, b.missing);
        assert_eq!(a.spurious, b.spurious);
        assert_eq!(a.matched, b.matched);
        assert_eq!(a.bound_used, b.bound_used);
    }

    #[test]
    fn verify_small_bounds() {
        let opts = ScanOptions::default();
        let report = verify(&lookup("T1.6").unwrap(), None, &opts).unwrap();
        assert!(report.matched, "missing {:?} spurious {:?}", report.missing, report.spurious);
        assert_eq!(report.computed, vec![18]);

        let report = verify(&lookup("T1.8").unwrap(), None, &opts).unwrap();
        assert_eq!(report.computed, vec![18, 50, 54, 90, 98]);
        assert!(report.matched);
    }

    #[test]
    fn verify_rejects_too_small_bound() {
        let err = verify(&lookup("T1.1").unwrap(), Some(100), &ScanOptions::default());
        assert!(matches!(err, Err(VerifyError::BoundTooSmall { needed: 343, .. })));
    }

    #[test]
    fn verify_reports_mismatch_not_error() {
        // Scan T1.1's profile with T1.6's expected list: everything is spurious.
        let mut spec = lookup("T1.1").unwrap();
        spec.expected = &[343];
        let report = verify(&spec, Some(400), &ScanOptions::default()).unwrap();
        assert!(!report.matched);
        assert!(report.spurious.contains(&1));
        assert!(report.missing.is_empty());
    }

    #[test]
    fn implications_t12_spot() {
        let checks = check_class_implications("T1.2").unwrap();
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        // h(-68) = 4 divides 4 for d = 17.
        assert!(checks.iter().any(|c| c.d == 17 && c.property.contains("h(-68) = 4")));
    }

    #[test]
    fn implication_unknown_id() {
        assert!(matches!(
            check_class_implications("T1.1"),
            Err(VerifyError::NoImplication { .. })
        ));
    }
}
