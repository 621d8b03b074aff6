//! Exact integer primitives: smallest-prime-factor sieve, factorization,
//! omega (number of distinct prime divisors), deterministic primality,
//! squarefree test, and the Kronecker symbol.
//!
//! Everything here is plain `u64`/`i64` arithmetic. Square roots of integers
//! are always taken with [`isqrt`]; floating point never decides a bound.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("input must be a positive integer")]
    ZeroInput,
    #[error("sieve limit must be at least 2, got {0}")]
    SieveLimitTooSmall(u64),
    #[error("sieve for limit {limit} needs {needed} bytes, exceeding the cap of {cap} bytes")]
    SieveTooLarge { limit: u64, needed: u64, cap: u64 },
    #[error("kronecker symbol (a|0) is not defined here")]
    KroneckerZeroModulus,
}

/// Exact integer square root: the largest `s` with `s*s <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    // f64 seed, then fix up; the seed is within 1 of the truth for all u64.
    let mut s = (n as f64).sqrt() as u64;
    while s.checked_mul(s).is_none_or(|sq| sq > n) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).is_some_and(|sq| sq <= n) {
        s += 1;
    }
    s
}

/// True if `n` is a perfect square; returns the root.
pub fn perfect_sqrt(n: u64) -> Option<u64> {
    // Squares end in restricted residues mod 64; filter before isqrt.
    const SQ_MOD_64: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if SQ_MOD_64 >> (n % 64) & 1 == 0 {
        return None;
    }
    let s = isqrt(n);
    (s * s == n).then_some(s)
}

/// Default cap on sieve memory (1 GiB of `u32` entries).
pub const DEFAULT_SIEVE_CAP_BYTES: u64 = 1 << 30;

/// Smallest-prime-factor table for `2..=limit`.
///
/// Entry `k` is the smallest prime dividing `k`, so factoring any `n <= limit`
/// is a chain of table lookups. The table is immutable after construction and
/// safe to share across threads.
#[derive(Clone)]
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

impl std::fmt::Debug for SpfTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpfTable").field("limit", &self.limit).finish()
    }
}

impl SpfTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `k`, for `2 <= k <= limit`.
    pub fn spf(&self, k: u64) -> u64 {
        debug_assert!(2 <= k && k <= self.limit);
        self.spf[k as usize] as u64
    }
}

/// Build a smallest-prime-factor table covering `2..=limit`.
pub fn build_spf(limit: u64) -> Result<SpfTable, ArithError> {
    build_spf_with_cap(limit, DEFAULT_SIEVE_CAP_BYTES)
}

/// Same as [`build_spf`] but with an explicit memory cap in bytes.
pub fn build_spf_with_cap(limit: u64, cap_bytes: u64) -> Result<SpfTable, ArithError> {
    if limit < 2 {
        return Err(ArithError::SieveLimitTooSmall(limit));
    }
    let needed = (limit + 1).saturating_mul(4);
    if needed > cap_bytes || limit >= u32::MAX as u64 {
        return Err(ArithError::SieveTooLarge {
            limit,
            needed,
            cap: cap_bytes,
        });
    }
    let n = (limit + 1) as usize;
    let mut spf: Vec<u32> = vec![0; n];
    for k in (2..n).step_by(2) {
        spf[k] = 2;
    }
    let mut p = 3usize;
    while p * p < n {
        if spf[p] == 0 {
            for m in (p * p..n).step_by(2 * p) {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
            }
        }
        p += 2;
    }
    // Remaining zero entries at odd indices >= 3 are prime.
    for k in (3..n).step_by(2) {
        if spf[k] == 0 {
            spf[k] = k as u32;
        }
    }
    Ok(SpfTable { limit, spf })
}

/// A positive integer with its sorted prime-power decomposition.
///
/// `n == 1` has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// True when `n` is prime.
    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// True when `n = p*q` with `p != q` prime.
    pub fn is_two_distinct_primes(&self) -> bool {
        self.factors.len() == 2 && self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factor `n >= 1`. Uses the sieve when `n` fits under its limit, otherwise
/// trial division up to `sqrt(n)`.
pub fn factor(n: u64, table: Option<&SpfTable>) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut factors = Vec::new();
    let mut m = n;
    if let Some(t) = table {
        if n <= t.limit() {
            while m > 1 {
                let p = t.spf(m);
                let mut e = 0u32;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            return Ok(Factorization { n, factors });
        }
    }
    trial_divide(&mut m, &mut factors, None);
    Ok(Factorization { n, factors })
}

/// Trial division of `m`, appending (prime, exponent) pairs in increasing
/// order. Stops early once `limit` distinct primes have been recorded and a
/// further prime factor is certain; used by the bounded-omega kernel.
fn trial_divide(m: &mut u64, factors: &mut Vec<(u64, u32)>, stop_after: Option<usize>) -> bool {
    let mut d = 2u64;
    while d * d <= *m {
        if (*m).is_multiple_of(d) {
            if stop_after == Some(factors.len()) {
                return false; // one more distinct prime exists
            }
            let mut e = 0u32;
            while (*m).is_multiple_of(d) {
                *m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if *m > 1 {
        if stop_after == Some(factors.len()) {
            return false;
        }
        factors.push((*m, 1));
        *m = 1;
    }
    true
}

/// Number of distinct prime divisors of `n`, with the convention
/// `omega(1) = 0`.
pub fn omega(n: u64, table: Option<&SpfTable>) -> Result<u32, ArithError> {
    Ok(factor(n, table)?.omega())
}

/// `omega(n)` if it is `<= k`, otherwise `None`. Aborts the factorization as
/// soon as `k + 1` distinct primes are found.
pub fn omega_bounded(n: u64, k: u32, table: Option<&SpfTable>) -> Option<u32> {
    debug_assert!(n >= 1);
    let mut count = 0u32;
    let mut m = n;
    if let Some(t) = table {
        if n <= t.limit() {
            while m > 1 {
                if count == k {
                    return None;
                }
                let p = t.spf(m);
                while m.is_multiple_of(p) {
                    m /= p;
                }
                count += 1;
            }
            return Some(count);
        }
    }
    let mut factors = Vec::new();
    if trial_divide(&mut m, &mut factors, Some(k as usize)) {
        Some(factors.len() as u32)
    } else {
        None
    }
}

/// True iff `omega(n) <= k`; early-exits like [`omega_bounded`].
pub fn omega_at_most(n: u64, k: u32, table: Option<&SpfTable>) -> bool {
    omega_bounded(n, k, table).is_some()
}

/// True iff every exponent in the factorization of `n` is 1.
pub fn is_squarefree(n: u64, table: Option<&SpfTable>) -> Result<bool, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    if let Some(t) = table {
        if n <= t.limit() {
            let mut m = n;
            while m > 1 {
                let p = t.spf(m);
                m /= p;
                if m.is_multiple_of(p) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
    }
    Ok(factor(n, None)?.is_squarefree())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for `u64`.
///
/// The witness base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known
/// to be exact for all n < 3.3 * 10^24 (Sorenson-Webster), which covers the
/// full 64-bit range. No probabilistic answers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in WITNESSES.iter() {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Kronecker symbol (a|n), the standard extension of the Legendre symbol to
/// all nonzero moduli. For odd prime `n` this is the Legendre symbol.
pub fn kronecker(a: i64, n: i64) -> Result<i32, ArithError> {
    if n == 0 {
        return Err(ArithError::KroneckerZeroModulus);
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a|2) factor: 0 if a even, else chi_8(a).
    let tz = n.trailing_zeros();
    n >>= tz;
    if tz > 0 {
        if a & 1 == 0 {
            return Ok(0);
        }
        if tz & 1 == 1 {
            let r = (a.rem_euclid(8)) as u8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    a = a.rem_euclid(n);
    // Now n is odd and positive; standard Jacobi loop.
    while a != 0 {
        while a & 1 == 0 {
            a >>= 1;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_exact() {
        for n in 0u64..2000 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n, "isqrt({n}) = {s}");
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
        let big = (1u64 << 32) - 1;
        assert_eq!(isqrt(big * big), big);
        assert_eq!(isqrt(big * big - 1), big - 1);
    }

    #[test]
    fn spf_small_table() {
        let t = build_spf(10).unwrap();
        let expect = [(2, 2), (3, 3), (4, 2), (5, 5), (6, 2), (7, 7), (8, 2), (9, 3), (10, 2)];
        for (k, p) in expect {
            assert_eq!(t.spf(k), p, "spf[{k}]");
        }
        let t2 = build_spf(2).unwrap();
        assert_eq!(t2.spf(2), 2);
    }

    #[test]
    fn spf_large_entry() {
        let t = build_spf(2_000_000).unwrap();
        assert_eq!(t.spf(1_999_999), 17);
    }

    #[test]
    fn spf_errors() {
        assert_eq!(build_spf(1).unwrap_err(), ArithError::SieveLimitTooSmall(1));
        assert!(matches!(
            build_spf_with_cap(1_000_000, 64).unwrap_err(),
            ArithError::SieveTooLarge { .. }
        ));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor(84, None).unwrap().factors,
            vec![(2, 2), (3, 1), (7, 1)]
        );
        assert_eq!(factor(1, None).unwrap().factors, vec![]);
        assert_eq!(factor(163, None).unwrap().factors, vec![(163, 1)]);
        assert_eq!(factor(0, None).unwrap_err(), ArithError::ZeroInput);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(130, None).unwrap(), 3);
        assert_eq!(omega(1, None).unwrap(), 0);
        assert_eq!(omega(190, None).unwrap(), 3);
    }

    #[test]
    fn omega_at_most_examples() {
        assert!(!omega_at_most(190, 2, None));
        assert!(omega_at_most(4, 2, None));
        assert!(!omega_at_most(2 * 3 * 5 * 7, 3, None));
        let t = build_spf(300).unwrap();
        assert!(!omega_at_most(190, 2, Some(&t)));
        assert!(omega_at_most(190, 3, Some(&t)));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(163));
        assert!(!is_prime(1));
        assert!(!is_prime(247)); // 13 * 19
        assert!(is_prime(2));
        assert!(is_prime((1u64 << 61) - 1)); // Mersenne prime
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(58, None).unwrap());
        assert!(!is_squarefree(18, None).unwrap());
        assert!(is_squarefree(1, None).unwrap());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(2, 17).unwrap(), 1); // 6^2 = 36 = 2 mod 17
        assert_eq!(kronecker(2, 5).unwrap(), -1);
        assert_eq!(kronecker(-15, 3).unwrap(), 0);
        assert_eq!(kronecker(3, 0).unwrap_err(), ArithError::KroneckerZeroModulus);
    }

    #[test]
    fn kronecker_two_rules() {
        // (D|2) is 0 for even D, +1 for D = ±1 mod 8, -1 for D = ±3 mod 8.
        assert_eq!(kronecker(-103, 2).unwrap(), 1); // -103 = 1 mod 8
        assert_eq!(kronecker(-232, 2).unwrap(), 0);
        assert_eq!(kronecker(-3, 2).unwrap(), -1); // -3 = 5 mod 8
        assert_eq!(kronecker(-7, 2).unwrap(), 1);
    }

    #[test]
    fn kronecker_negative_modulus() {
        // (a|-n) = (a|-1)(a|n) with (a|-1) the sign of a.
        assert_eq!(kronecker(5, -1).unwrap(), 1);
        assert_eq!(kronecker(-5, -1).unwrap(), -1);
        assert_eq!(kronecker(-1, 3).unwrap(), -1);
        assert_eq!(kronecker(-1, -3).unwrap(), 1);
        assert_eq!(kronecker(7, -9).unwrap(), kronecker(7, 9).unwrap());
    }

    #[test]
    fn factor_sieve_matches_trial_division() {
        let t = build_spf(100_000).unwrap();
        for n in 2..=100_000u64 {
            let a = factor(n, Some(&t)).unwrap();
            let b = factor(n, None).unwrap();
            assert_eq!(a, b, "factor({n})");
        }
    }

    #[test]
    fn omega_bounded_matches_omega() {
        let t = build_spf(100_000).unwrap();
        for n in 1..=100_000u64 {
            let w = omega(n, Some(&t)).unwrap();
            for k in 0..4u32 {
                assert_eq!(
                    omega_at_most(n, k, Some(&t)),
                    w <= k,
                    "omega_at_most({n},{k})"
                );
                assert_eq!(omega_at_most(n, k, None), w <= k);
            }
        }
    }

    #[test]
    fn squarefree_against_divisibility_oracle() {
        for n in 1..=10_000u64 {
            let mut by_squares = true;
            let mut p = 2;
            while p * p <= n {
                if n % (p * p) == 0 {
                    by_squares = false;
                    break;
                }
                p += 1;
            }
            assert_eq!(is_squarefree(n, None).unwrap(), by_squares, "n={n}");
        }
    }

    #[test]
    fn perfect_sqrt_works() {
        for n in 0..5000u64 {
            assert_eq!(perfect_sqrt(n), (isqrt(n).pow(2) == n).then(|| isqrt(n)));
        }
    }
}
