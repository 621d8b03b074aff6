//! quadscan-core: omega profiles of quadratic values d ± x², class groups
//! of imaginary and real quadratic fields by form enumeration, and
//! machine-checkable reproductions of the associated theorem lists by
//! exhaustive bounded search.
//!
//! The crate is organized by layer:
//!
//! - [`arith`]: sieve, factorization, omega, primality, Kronecker symbol
//! - [`omega`]: the M-profiles and Frobenius-Rabinowitsch criteria
//! - [`classgroup`]: reduced forms, Gauss composition, cycles, Pell units
//! - [`scan`]: parallel, journaled, resumable range scans
//! - [`verify`]: theorem/conjecture specs and match reports

pub mod arith;
pub mod classgroup;
pub mod omega;
pub mod scan;
pub mod verify;

mod verify_data;
