//! Class group structure by full enumeration: materialize all reduced forms,
//! read off elementary divisors from the counts of p-power torsion, and find
//! generator forms whose orders match the divisor chain.

use super::forms::{compose, power, prime_form, principal_form, reduced_forms_imaginary};
use super::real::class_number_real;
use super::{BinaryQuadraticForm, ClassGroupError, DiscriminantKind, QuadDiscriminant};
use crate::arith::{self, kronecker};
use std::collections::BTreeSet;

/// Class number of an imaginary discriminant: the count of primitive
/// reduced forms.
pub fn class_number_imaginary(disc: &QuadDiscriminant) -> Result<u64, ClassGroupError> {
    Ok(reduced_forms_imaginary(disc)?.len() as u64)
}

/// Class number, elementary divisors and matching generator forms.
///
/// `elementary_divisors` is the invariant-factor chain d1 | d2 | ... with
/// product h, each > 1; empty exactly when h = 1. `generators[i]` has order
/// `elementary_divisors[i]` and together they generate the group. For real
/// discriminants only `h` is computed (divisors and generators stay empty).
#[derive(Debug, Clone)]
pub struct ClassGroupStructure {
    pub discriminant: QuadDiscriminant,
    pub h: u64,
    pub elementary_divisors: Vec<u64>,
    pub generators: Vec<BinaryQuadraticForm>,
}

impl ClassGroupStructure {
    pub fn is_cyclic(&self) -> bool {
        self.elementary_divisors.len() <= 1
    }
}

/// Order of a form's class under composition.
pub fn order_of_form(
    f: &BinaryQuadraticForm,
    disc: &QuadDiscriminant,
) -> Result<u64, ClassGroupError> {
    let id = principal_form(disc);
    let f = f.reduce();
    let mut acc = f;
    let mut order = 1u64;
    while acc != id {
        acc = compose(&acc, &f)?;
        order += 1;
    }
    Ok(order)
}

/// Order of the class of the prime form above `l`. The two square roots of
/// D mod 4l give conjugate (inverse) classes, which share an order, so the
/// choice of root does not matter.
pub fn order_of_prime_form(disc: &QuadDiscriminant, l: u64) -> Result<u64, ClassGroupError> {
    let f = prime_form(disc, l)?;
    order_of_form(&f, disc)
}

pub fn class_group_structure(
    disc: &QuadDiscriminant,
) -> Result<ClassGroupStructure, ClassGroupError> {
    if disc.kind() == DiscriminantKind::Real {
        let h = class_number_real(disc)?;
        return Ok(ClassGroupStructure {
            discriminant: *disc,
            h,
            elementary_divisors: Vec::new(),
            generators: Vec::new(),
        });
    }
    let elements = reduced_forms_imaginary(disc)?;
    let h = elements.len() as u64;
    if h == 1 {
        return Ok(ClassGroupStructure {
            discriminant: *disc,
            h,
            elementary_divisors: Vec::new(),
            generators: Vec::new(),
        });
    }

    // For each prime p | h: the count of x with x^(p^j) = e is
    // p^(sum_i min(e_i, j)) for a p-group of type (p^e_1, ..., p^e_r).
    // Successive count ratios give the conjugate partition of the e_i.
    let id = principal_form(disc);
    let h_factors = arith::factor(h, None).expect("h >= 2").factors;
    // exponents_by_prime[p] = multiset of e_i, descending
    let mut exponents_by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &(p, e_max) in &h_factors {
        let mut prev_log = 0u32;
        let mut parts: Vec<u32> = Vec::new(); // m_j = #{i : e_i >= j}
        let mut pj = 1u64;
        for _j in 1..=e_max {
            pj *= p;
            let count = elements
                .iter()
                .filter(|f| power(f, pj, disc).map(|g| g == id).unwrap_or(false))
                .count() as u64;
            let log = exact_log(count, p);
            let m = log - prev_log;
            if m == 0 {
                break;
            }
            parts.push(m);
            prev_log = log;
            if count == p_pow_total(p, e_max) {
                break;
            }
        }
        // Conjugate partition of parts gives the e_i (descending).
        let mut exps = Vec::new();
        let rank = *parts.first().unwrap_or(&0);
        for i in 0..rank {
            let e_i = parts.iter().filter(|&&m| m > i).count() as u32;
            exps.push(e_i);
        }
        debug_assert_eq!(exps.iter().sum::<u32>(), e_max);
        exponents_by_prime.push((p, exps));
    }

    // Invariant factor chain: the i-th largest divisor multiplies the i-th
    // largest exponent of every prime.
    let rank = exponents_by_prime
        .iter()
        .map(|(_, e)| e.len())
        .max()
        .unwrap_or(0);
    let mut divisors_desc = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut d = 1u64;
        for (p, exps) in &exponents_by_prime {
            if let Some(&e) = exps.get(i) {
                d *= p.pow(e);
            }
        }
        divisors_desc.push(d);
    }
    let generators = find_generators(&elements, &divisors_desc, disc)?;
    let mut elementary_divisors = divisors_desc;
    elementary_divisors.reverse(); // ascending: d1 | d2 | ...
    let mut generators = generators;
    generators.reverse();
    debug_assert_eq!(elementary_divisors.iter().product::<u64>(), h);
    Ok(ClassGroupStructure {
        discriminant: *disc,
        h,
        elementary_divisors,
        generators,
    })
}

fn exact_log(mut n: u64, p: u64) -> u32 {
    let mut log = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0, "torsion count must be a power of p");
        n /= p;
        log += 1;
    }
    log
}

fn p_pow_total(p: u64, e: u32) -> u64 {
    p.pow(e)
}

/// Pick generators matching the descending divisor chain: greedily extend
/// the generated subgroup with an element of maximal order in the quotient,
/// searching its coset for a representative of that exact order.
fn find_generators(
    elements: &[BinaryQuadraticForm],
    divisors_desc: &[u64],
    disc: &QuadDiscriminant,
) -> Result<Vec<BinaryQuadraticForm>, ClassGroupError> {
    let mut generators: Vec<BinaryQuadraticForm> = Vec::new();
    let mut subgroup: BTreeSet<BinaryQuadraticForm> = BTreeSet::new();
    subgroup.insert(principal_form(disc));
    for &target in divisors_desc {
        let mut chosen = None;
        'candidates: for f in elements {
            if subgroup.contains(f) {
                continue;
            }
            // Order of f in G/subgroup.
            let mut acc = *f;
            let mut q_order = 1u64;
            while !subgroup.contains(&acc) {
                acc = compose(&acc, f)?;
                q_order += 1;
            }
            if q_order != target {
                continue;
            }
            // Lift: search the coset f * subgroup for exact order `target`.
            for s in subgroup.iter() {
                let cand = compose(f, s)?;
                if order_of_form(&cand, disc)? == target {
                    chosen = Some(cand);
                    break 'candidates;
                }
            }
        }
        let g = chosen.expect("structure theorem guarantees a generator of each divisor order");
        // Extend the subgroup with all multiples of g.
        let mut new_sub = BTreeSet::new();
        let mut gp = principal_form(disc);
        for _ in 0..target {
            for s in subgroup.iter() {
                new_sub.insert(compose(&gp, s)?);
            }
            gp = compose(&gp, &g)?;
        }
        subgroup = new_sub;
        generators.push(g);
    }
    Ok(generators)
}

/// Closure of a set of forms under composition; the generated subgroup.
pub fn subgroup_generated_by(
    gens: &[BinaryQuadraticForm],
    disc: &QuadDiscriminant,
) -> Result<BTreeSet<BinaryQuadraticForm>, ClassGroupError> {
    let mut set = BTreeSet::new();
    set.insert(principal_form(disc));
    let mut frontier: Vec<BinaryQuadraticForm> = vec![principal_form(disc)];
    while let Some(f) = frontier.pop() {
        for g in gens {
            let next = compose(&f, g)?;
            if set.insert(next) {
                frontier.push(next);
            }
        }
    }
    Ok(set)
}

/// Genus data of a fundamental imaginary discriminant: the 2-rank
/// omega(|D|) - 1 and the principal-genus test for prime classes.
#[derive(Debug, Clone)]
pub struct GenusData {
    pub two_rank: u32,
    odd_prime_divisors: Vec<u64>,
}

impl GenusData {
    /// True iff the class of a non-inert prime form above `l` is a square
    /// in the class group: all Legendre symbols (l | p_k) over the odd
    /// primes p_k dividing D equal +1.
    pub fn is_square_class(&self, l: u64) -> bool {
        self.odd_prime_divisors
            .iter()
            .all(|&p| kronecker(l as i64, p as i64).expect("odd prime modulus") == 1)
    }
}

pub fn genus_data(disc: &QuadDiscriminant) -> Result<GenusData, ClassGroupError> {
    disc.require_imaginary()?;
    disc.require_fundamental()?;
    let abs_d = disc.value().unsigned_abs();
    let factorization = arith::factor(abs_d, None).expect("nonzero");
    let two_rank = factorization.omega() - 1;
    let odd_prime_divisors = factorization
        .factors
        .iter()
        .map(|&(p, _)| p)
        .filter(|&p| p != 2)
        .collect();
    Ok(GenusData { two_rank, odd_prime_divisors })
}
