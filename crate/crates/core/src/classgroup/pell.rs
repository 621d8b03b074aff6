//! Fundamental units of real quadratic orders via the continued fraction
//! expansion of sqrt(d).
//!
//! The convergents h_k/k_k of sqrt(d) satisfy h² - d·k² = ±Q with Q the
//! partial denominators; the first k >= 1 with Q_k = 1 ends a period and
//! yields the minimal solution of t² - d·u² = ±1. Convergents can be
//! astronomically large, so they are tracked as big integers while the
//! (P, Q) recurrence stays in machine words.

use super::ClassGroupError;
use crate::arith::isqrt;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Minimal solution of t² - d·u² = ±1, the fundamental unit of Z[sqrt(d)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: u64,
    pub t: BigUint,
    pub u: BigUint,
    pub norm_sign: i32,
}

/// Minimal solution of t² - d·u² = ±4 for d = 1 mod 4: the fundamental
/// unit (t + u*sqrt(d))/2 of the maximal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfUnit {
    pub d: u64,
    pub t: BigUint,
    pub u: BigUint,
    pub norm_sign: i32,
}

/// Fundamental unit of Z[sqrt(d)] for nonsquare d >= 2, by the continued
/// fraction of sqrt(d).
pub fn fundamental_unit(d: u64) -> Result<PellSolution, ClassGroupError> {
    let a0 = isqrt(d);
    if d < 2 || a0 * a0 == d {
        return Err(ClassGroupError::NotARealRadicand(d));
    }
    // sqrt(d) = [a0; a1, a2, ...] with the classic (P, Q) recurrence.
    let mut p = 0u64;
    let mut q = 1u64;
    let mut a = a0;
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::from(a0));
    let (mut k_prev, mut k) = (BigUint::zero(), BigUint::one());
    let mut parity = 1i32; // (-1)^k after k steps
    loop {
        p = a * q - p;
        q = (d - p * p) / q;
        parity = -parity;
        if q == 1 {
            // h² - d·k² = (-1)^period at the end of a period.
            return Ok(PellSolution { d, t: h, u: k, norm_sign: parity });
        }
        a = (a0 + p) / q;
        let h_next = BigUint::from(a) * &h + &h_prev;
        let k_next = BigUint::from(a) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Minimal solution of t² - d·u² = ±4 for nonsquare d = 1 mod 4.
///
/// When a half-integer unit exists (only possible for d = 5 mod 8) the
/// Z[sqrt(d)] unit is its cube, so t is recovered as the integer root of
/// t³ - 3·sign·t = 2T; otherwise the answer is twice the Pell solution.
pub fn fundamental_unit_pm4(d: u64) -> Result<HalfUnit, ClassGroupError> {
    if d % 4 != 1 {
        return Err(ClassGroupError::NotARealRadicand(d));
    }
    let pell = fundamental_unit(d)?;
    if d % 8 == 5 {
        if let Some((t, u)) = half_unit_cube_root(&pell) {
            return Ok(HalfUnit { d, t, u, norm_sign: pell.norm_sign });
        }
    }
    Ok(HalfUnit {
        d,
        t: &pell.t * 2u32,
        u: &pell.u * 2u32,
        norm_sign: pell.norm_sign,
    })
}

/// If (T + U*sqrt(d)) = ((t + u*sqrt(d))/2)³ for odd integers t, u, find
/// (t, u). The trace identity gives t³ - 3·n·t = 2T with n the norm sign.
fn half_unit_cube_root(pell: &PellSolution) -> Option<(BigUint, BigUint)> {
    let two_t = &pell.t * 2u32;
    let root = two_t.nth_root(3);
    let n = pell.norm_sign;
    for delta in 0..3u32 {
        let t = &root + delta;
        if t.is_zero() {
            continue;
        }
        // t³ - 3nt = 2T  <=>  t³ = 2T + 3nt (n = +1) or t³ + 3t = 2T (n = -1)
        let t3 = &t * &t * &t;
        let matches = if n == 1 {
            t3 == &two_t + &t * 3u32
        } else {
            &t3 + &t * 3u32 == two_t
        };
        if !matches {
            continue;
        }
        // u² = (t² - 4n) / d must be a perfect odd square.
        let t2 = &t * &t;
        let numer = if n == 1 {
            if t2 < BigUint::from(4u32) {
                continue;
            }
            &t2 - 4u32
        } else {
            &t2 + 4u32
        };
        let d_big = BigUint::from(pell.d);
        if (&numer % &d_big) != BigUint::zero() {
            continue;
        }
        let u2 = numer / d_big;
        let u = u2.sqrt();
        if &u * &u != u2 {
            continue;
        }
        if (&t % 2u32) == BigUint::one() && (&u % 2u32) == BigUint::one() {
            return Some((t, u));
        }
    }
    None
}

/// Norm sign of the fundamental unit of the maximal order of discriminant D.
/// For D = 0 mod 4 this is the Pell sign of D/4; for D = 1 mod 4 the sign of
/// the ±4 solution, which coincides with the Pell sign of D.
pub(super) fn unit_norm_sign(disc_value: i64) -> Result<i32, ClassGroupError> {
    debug_assert!(disc_value > 0);
    let d = if disc_value % 4 == 0 {
        (disc_value / 4) as u64
    } else {
        disc_value as u64
    };
    Ok(fundamental_unit(d)?.norm_sign)
}
