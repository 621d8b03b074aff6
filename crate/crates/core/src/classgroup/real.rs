//! Real quadratic class numbers by cycles of reduced indefinite forms.
//!
//! A form (a, b, c) of discriminant D > 0 is reduced when
//! 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b. The reduction
//! operator rho permutes the reduced forms; its orbits (cycles) are the
//! narrow classes. Wide classes merge a cycle with the cycle of the
//! negated form whenever the fundamental unit has norm +1.

use super::pell::unit_norm_sign;
use super::{BinaryQuadraticForm, ClassGroupError, QuadDiscriminant, ENUMERATION_CAP};
use crate::arith::isqrt;
use std::collections::HashMap;

/// Integer test of the reduced condition: 0 < b < sqrt(D) and
/// sqrt(D) - b < 2|a| < sqrt(D) + b, decided without floating point.
fn is_reduced_real(d: i64, a: i64, b: i64) -> bool {
    if b <= 0 || a == 0 {
        return false;
    }
    let d = d as i128;
    let b = b as i128;
    if b * b >= d {
        return false;
    }
    let two_abs_a = 2 * (a as i128).abs();
    // sqrt(D) < 2|a| + b  <=>  D < (2|a| + b)²
    if d >= (two_abs_a + b) * (two_abs_a + b) {
        return false;
    }
    // 2|a| - b < sqrt(D)  <=>  2|a| <= b, or (2|a| - b)² < D
    if two_abs_a > b && (two_abs_a - b) * (two_abs_a - b) >= d {
        return false;
    }
    true
}

/// All primitive reduced indefinite forms of a real discriminant.
pub fn reduced_forms_real(
    disc: &QuadDiscriminant,
) -> Result<Vec<BinaryQuadraticForm>, ClassGroupError> {
    disc.require_real()?;
    let d = disc.value();
    if d as u64 > ENUMERATION_CAP {
        return Err(ClassGroupError::EnumerationCap(d as u64, ENUMERATION_CAP));
    }
    let s = isqrt(d as u64) as i64;
    let mut forms = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        // a * c = (b² - D)/4 = -n with n > 0; |a| runs over divisors of n.
        let n = ((d as i128 - (b as i128) * (b as i128)) / 4) as i64;
        let mut x = 1i64;
        while x * x <= n {
            if n % x == 0 {
                for v in [x, n / x] {
                    if !is_reduced_real(d, v, b) {
                        continue;
                    }
                    for a in [v, -v] {
                        let f = BinaryQuadraticForm::new(a, b, -(n / a));
                        if f.is_primitive() {
                            forms.push(f);
                        }
                    }
                    if x * x == n {
                        break;
                    }
                }
            }
            x += 1;
        }
        b += 2;
    }
    forms.sort();
    forms.dedup();
    Ok(forms)
}

/// One step of the reduction operator on a reduced indefinite form:
/// (a, b, c) -> (c, b', (b'² - D)/(4c)) with b' = -b mod 2|c| chosen in
/// (sqrt(D) - 2|c|, sqrt(D)).
fn rho(d: i64, f: &BinaryQuadraticForm) -> BinaryQuadraticForm {
    let s = isqrt(d as u64) as i64;
    let two_c = 2 * f.c.abs();
    let b_next = s - (s + f.b).rem_euclid(two_c);
    let c_next =
        ((b_next as i128 * b_next as i128 - d as i128) / (4 * f.c as i128)) as i64;
    BinaryQuadraticForm::new(f.c, b_next, c_next)
}

/// Number of wide ideal classes: cycles of reduced forms, with cycles of f
/// and -f merged when the fundamental unit has norm +1.
pub fn class_number_real(disc: &QuadDiscriminant) -> Result<u64, ClassGroupError> {
    disc.require_real()?;
    disc.require_fundamental()?;
    let d = disc.value();
    let forms = reduced_forms_real(disc)?;
    // Partition into rho-orbits.
    let mut cycle_of: HashMap<BinaryQuadraticForm, usize> = HashMap::new();
    let mut n_cycles = 0usize;
    for f in &forms {
        if cycle_of.contains_key(f) {
            continue;
        }
        let id = n_cycles;
        n_cycles += 1;
        let mut g = *f;
        loop {
            let prev = cycle_of.insert(g, id);
            debug_assert!(prev.is_none(), "rho orbits must not overlap");
            g = rho(d, &g);
            debug_assert!(is_reduced_real(d, g.a, g.b), "rho must preserve reducedness");
            if g == *f {
                break;
            }
        }
    }
    if unit_norm_sign(d)? == -1 {
        return Ok(n_cycles as u64);
    }
    // Norm +1: each wide class is a pair of narrow classes {[f], [-f]}.
    let mut seen = vec![false; n_cycles];
    let mut count = 0u64;
    for (f, &id) in cycle_of.iter() {
        if seen[id] {
            continue;
        }
        let neg = BinaryQuadraticForm::new(-f.a, f.b, -f.c);
        let neg_id = *cycle_of.get(&neg).expect("negated reduced form is reduced");
        seen[id] = true;
        seen[neg_id] = true;
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(v: i64) -> QuadDiscriminant {
        QuadDiscriminant::new(v).unwrap()
    }

    #[test]
    fn real_class_numbers() {
        assert_eq!(class_number_real(&disc(13)).unwrap(), 1);
        assert_eq!(class_number_real(&disc(40)).unwrap(), 2);
        assert_eq!(class_number_real(&disc(8)).unwrap(), 1);
        assert_eq!(class_number_real(&disc(12)).unwrap(), 1); // norm +1 merge
        assert_eq!(class_number_real(&disc(5)).unwrap(), 1);
    }

    #[test]
    fn known_class_number_two_and_three() {
        assert_eq!(class_number_real(&disc(229)).unwrap(), 3);
        assert_eq!(class_number_real(&disc(10 * 4)).unwrap(), 2);
        assert_eq!(class_number_real(&disc(79 * 4)).unwrap(), 3);
        assert_eq!(class_number_real(&disc(82 * 4)).unwrap(), 4);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(class_number_real(&disc(45 * 4)).is_err());
        assert!(class_number_real(&disc(-40)).is_err());
    }

    #[test]
    fn reduced_enumeration_disc_40() {
        let forms = reduced_forms_real(&disc(40)).unwrap();
        assert_eq!(forms.len(), 8);
        for f in &forms {
            assert_eq!(f.discriminant(), 40);
            assert!(is_reduced_real(40, f.a, f.b));
        }
    }

    #[test]
    fn rho_is_a_permutation() {
        for dv in [13i64, 40, 60, 229, 316] {
            let dd = disc(dv);
            let forms = reduced_forms_real(&dd).unwrap();
            let mut images: Vec<_> = forms.iter().map(|f| rho(dv, f)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), forms.len(), "D={dv}");
        }
    }
}
