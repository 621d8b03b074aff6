//! Binary quadratic forms (a, b, c) with b² - 4ac = D, their reduction and
//! Gauss composition.
//!
//! For D < 0 the reduced forms are the canonical class representatives:
//! |b| <= a <= c with b >= 0 whenever |b| = a or a = c. The number of
//! primitive reduced forms of discriminant D is the class number h(D).

use super::{ClassGroupError, QuadDiscriminant, ENUMERATION_CAP};
use crate::arith::{isqrt, kronecker};

/// A primitive binary quadratic form ax² + bxy + cy².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl std::fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, u, v) with g = u*a + v*b, g >= 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

impl BinaryQuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        i64::try_from(d).expect("discriminant fits i64")
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// The inverse class representative (a, -b, c), reduced.
    pub fn inverse(&self) -> Self {
        BinaryQuadraticForm::new(self.a, -self.b, self.c).reduce()
    }

    /// Reduced test for definite forms (D < 0, a > 0).
    pub fn is_reduced_imaginary(&self) -> bool {
        if self.a <= 0 {
            return false;
        }
        let b_abs = self.b.abs();
        if b_abs > self.a || self.a > self.c {
            return false;
        }
        if (b_abs == self.a || self.a == self.c) && self.b < 0 {
            return false;
        }
        true
    }

    /// Reduce a positive-definite form (D < 0) to its canonical
    /// representative. The input must have a > 0.
    pub fn reduce(&self) -> Self {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        debug_assert!(d < 0, "reduce() is for definite forms");
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        debug_assert!(a > 0 && c > 0);
        loop {
            // Normalize b into [-a, a), then push the boundary -a up to a.
            if b > a || b <= -a {
                let two_a = 2 * a;
                let k = (b + a).div_euclid(two_a);
                b -= k * two_a;
                c = (b * b - d) / (4 * a);
            }
            if b == -a {
                b = a;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                b = -b;
            }
            break;
        }
        let out = BinaryQuadraticForm {
            a: i64::try_from(a).expect("reduced a fits"),
            b: i64::try_from(b).expect("reduced b fits"),
            c: i64::try_from(c).expect("reduced c fits"),
        };
        debug_assert!(out.is_reduced_imaginary());
        out
    }
}

/// The principal (identity) form of discriminant D.
pub fn principal_form(disc: &QuadDiscriminant) -> BinaryQuadraticForm {
    let d = disc.value();
    let b = d.rem_euclid(4); // 0 or 1
    let c = ((b as i128 * b as i128 - d as i128) / 4) as i64;
    BinaryQuadraticForm::new(1, b, c)
}

/// All primitive reduced forms of an imaginary discriminant, sorted by
/// (a, b). The length of the list is the class number h(D).
pub fn reduced_forms_imaginary(
    disc: &QuadDiscriminant,
) -> Result<Vec<BinaryQuadraticForm>, ClassGroupError> {
    disc.require_imaginary()?;
    let d = disc.value();
    let abs_d = d.unsigned_abs();
    if abs_d > ENUMERATION_CAP {
        return Err(ClassGroupError::EnumerationCap(abs_d, ENUMERATION_CAP));
    }
    let mut forms = Vec::new();
    let a_max = isqrt(abs_d / 3);
    for a in 1..=a_max.max(1) {
        let a = a as i64;
        // b runs over (-a, a] with b² = D mod 4a.
        for b in -a + 1..=a {
            let num = b as i128 * b as i128 - d as i128;
            if num % (4 * a as i128) != 0 {
                continue;
            }
            let c128 = num / (4 * a as i128);
            if c128 < a as i128 || c128 > i64::MAX as i128 {
                continue;
            }
            let c = c128 as i64;
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            let f = BinaryQuadraticForm::new(a, b, c);
            if f.is_primitive() {
                debug_assert!(f.is_reduced_imaginary());
                forms.push(f);
            }
        }
    }
    forms.sort();
    Ok(forms)
}

/// Gauss composition: the reduced representative of the product class.
pub fn compose(
    f: &BinaryQuadraticForm,
    g: &BinaryQuadraticForm,
) -> Result<BinaryQuadraticForm, ClassGroupError> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(ClassGroupError::MismatchedDiscriminants(d, g.discriminant()));
    }
    if !f.is_primitive() {
        return Err(ClassGroupError::NotPrimitive(f.a, f.b, f.c));
    }
    if !g.is_primitive() {
        return Err(ClassGroupError::NotPrimitive(g.a, g.b, g.c));
    }
    // s = (b1 + b2)/2; gcd(a1, a2, s) = e = u*a1 + v*a2 + w*s.
    let s = (f.b + g.b) / 2;
    let (g0, _u0, v0) = ext_gcd(f.a, g.a);
    let (e, x1, w) = ext_gcd(g0, s);
    let v = (x1 as i128 * v0 as i128) as i64;

    let a1 = f.a as i128;
    let a2 = g.a as i128;
    let e128 = e as i128;
    let big_a = (a1 / e128) * (a2 / e128);
    let half_diff = (f.b as i128 - g.b as i128) / 2;
    let inner = v as i128 * half_diff - w as i128 * g.c as i128;
    let b_raw = g.b as i128 + 2 * (a2 / e128) * inner;
    let two_a = 2 * big_a;
    let mut big_b = b_raw.rem_euclid(two_a);
    if big_b > big_a {
        big_b -= two_a;
    }
    let big_c = (big_b * big_b - d as i128) / (4 * big_a);
    let composed = BinaryQuadraticForm {
        a: i64::try_from(big_a).expect("composed a fits"),
        b: i64::try_from(big_b).expect("composed b fits"),
        c: i64::try_from(big_c).expect("composed c fits"),
    };
    Ok(composed.reduce())
}

/// f composed with itself n times (n = 0 gives the principal form).
pub fn power(
    f: &BinaryQuadraticForm,
    mut n: u64,
    disc: &QuadDiscriminant,
) -> Result<BinaryQuadraticForm, ClassGroupError> {
    let mut acc = principal_form(disc);
    let mut base = *f;
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = compose(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Splitting behavior of a prime in the field of discriminant D, read off
/// the Kronecker symbol (D|l).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingType {
    Split,
    Ramified,
    Inert,
}

pub fn splitting_type(disc: &QuadDiscriminant, l: u64) -> SplittingType {
    match kronecker(disc.value(), l as i64).expect("prime modulus is nonzero") {
        1 => SplittingType::Split,
        0 => SplittingType::Ramified,
        _ => SplittingType::Inert,
    }
}

/// The prime form (l, b, c) of norm l: b² = D mod 4l with the smallest
/// b >= 0 of the parity of D. Requires l non-inert.
pub fn prime_form(
    disc: &QuadDiscriminant,
    l: u64,
) -> Result<BinaryQuadraticForm, ClassGroupError> {
    if splitting_type(disc, l) == SplittingType::Inert {
        return Err(ClassGroupError::InertPrime { discriminant: disc.value(), prime: l });
    }
    let d = disc.value() as i128;
    let four_l = 4 * l as i128;
    let parity = d.rem_euclid(2);
    // A parity-matching square root of D mod 4l exists within [0, 2l] for
    // every non-inert prime.
    let b = (parity..=2 * l as i128 + 1)
        .step_by(2)
        .find(|b| (b * b - d).rem_euclid(four_l) == 0)
        .ok_or(ClassGroupError::InertPrime { discriminant: disc.value(), prime: l })?;
    let c = (b * b - d) / four_l;
    let f = BinaryQuadraticForm::new(l as i64, b as i64, i64::try_from(c).expect("c fits"));
    if !f.is_primitive() {
        return Err(ClassGroupError::NotPrimitive(f.a, f.b, f.c));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(v: i64) -> QuadDiscriminant {
        QuadDiscriminant::new(v).unwrap()
    }

    #[test]
    fn reduced_forms_minus_163() {
        let forms = reduced_forms_imaginary(&disc(-163)).unwrap();
        assert_eq!(forms, vec![BinaryQuadraticForm::new(1, 1, 41)]);
    }

    #[test]
    fn reduced_forms_minus_232() {
        let forms = reduced_forms_imaginary(&disc(-232)).unwrap();
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn reduced_forms_minus_103() {
        let forms = reduced_forms_imaginary(&disc(-103)).unwrap();
        let expect = vec![
            BinaryQuadraticForm::new(1, 1, 26),
            BinaryQuadraticForm::new(2, -1, 13),
            BinaryQuadraticForm::new(2, 1, 13),
            BinaryQuadraticForm::new(4, -3, 7),
            BinaryQuadraticForm::new(4, 3, 7),
        ];
        assert_eq!(forms, expect);
    }

    #[test]
    fn reduced_forms_rejects_positive() {
        assert!(reduced_forms_imaginary(&disc(40)).is_err());
    }

    #[test]
    fn compose_identity_and_inverse() {
        let d = disc(-103);
        let p = principal_form(&d);
        let f = BinaryQuadraticForm::new(2, 1, 13);
        assert_eq!(compose(&p, &f).unwrap(), f);
        let finv = BinaryQuadraticForm::new(2, -1, 13);
        assert_eq!(compose(&f, &finv).unwrap(), p);
    }

    #[test]
    fn compose_norm_two_squared_in_103() {
        let f = BinaryQuadraticForm::new(2, 1, 13);
        let sq = compose(&f, &f).unwrap();
        assert!(sq == BinaryQuadraticForm::new(4, 3, 7) || sq == BinaryQuadraticForm::new(4, -3, 7));
    }

    #[test]
    fn compose_rejects_mismatched_discriminants() {
        let f = BinaryQuadraticForm::new(1, 1, 26); // -103
        let g = BinaryQuadraticForm::new(1, 0, 2); // -8
        assert!(matches!(
            compose(&f, &g),
            Err(ClassGroupError::MismatchedDiscriminants(-103, -8))
        ));
    }

    #[test]
    fn reduce_is_stable_on_reduced() {
        for f in reduced_forms_imaginary(&disc(-455)).unwrap() {
            assert_eq!(f.reduce(), f);
        }
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_type(&disc(-103), 2), SplittingType::Split);
        assert_eq!(splitting_type(&disc(-232), 2), SplittingType::Ramified);
        assert_eq!(splitting_type(&disc(-232), 3), SplittingType::Inert);
    }

    #[test]
    fn prime_form_examples() {
        let f = prime_form(&disc(-103), 2).unwrap();
        assert_eq!(f, BinaryQuadraticForm::new(2, 1, 13));
        let f = prime_form(&disc(-232), 2).unwrap();
        assert_eq!(f.a, 2);
        assert_eq!(f.discriminant(), -232);
        assert!(prime_form(&disc(-232), 3).is_err());
    }

    #[test]
    fn principal_forms() {
        assert_eq!(principal_form(&disc(-163)), BinaryQuadraticForm::new(1, 1, 41));
        assert_eq!(principal_form(&disc(-232)), BinaryQuadraticForm::new(1, 0, 58));
    }
}
