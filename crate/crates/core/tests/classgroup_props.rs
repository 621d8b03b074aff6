//! Property suites for the form/class-group machinery: reduction
//! uniqueness, group laws against an independent composition oracle,
//! genus counts, generation bounds, and the constructive lemmas.

use quadscan_core::arith::{is_prime, is_squarefree, isqrt};
use quadscan_core::classgroup::{
    class_group_structure, compose, prime_form, principal_form, reduced_forms_imaginary,
    solve_p_x2_2y2, solve_p_x2_2y2_all, splitting_type, subgroup_generated_by,
    BinaryQuadraticForm, DiscriminantKind, QuadDiscriminant, SplittingType,
};
use quadscan_core::classgroup::discriminant_of;

fn disc(v: i64) -> QuadDiscriminant {
    QuadDiscriminant::new(v).unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Apply the unimodular substitution (x, y) -> (ax + by, cx + dy) with
/// ad - bc = 1 to a form; the result is an equivalent primitive form.
fn transform(f: &BinaryQuadraticForm, m: [i128; 4]) -> BinaryQuadraticForm {
    let [p, q, r, s] = m;
    debug_assert_eq!(p * s - q * r, 1);
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let a2 = a * p * p + b * p * r + c * r * r;
    let b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
    let c2 = a * q * q + b * q * s + c * s * s;
    BinaryQuadraticForm::new(
        i64::try_from(a2).unwrap(),
        i64::try_from(b2).unwrap(),
        i64::try_from(c2).unwrap(),
    )
}

/// Independent composition oracle (Dirichlet): find a representation
/// v = g(x, y) coprime to f.a, transform g so its leading coefficient is v,
/// then glue the middle coefficients by CRT. No extended-gcd composition
/// identity is involved.
fn oracle_compose(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> BinaryQuadraticForm {
    let d = f.discriminant();
    assert_eq!(d, g.discriminant());
    for x in -15i128..=15 {
        for y in -15i128..=15 {
            if gcd(x, y) != 1 {
                continue;
            }
            let v = g.a as i128 * x * x + g.b as i128 * x * y + g.c as i128 * y * y;
            if v <= 0 || gcd(v, f.a as i128) != 1 {
                continue;
            }
            // Complete (x, y) to a determinant-one matrix [[x, r], [y, s]].
            let (mut s, mut r) = (0i128, 0i128);
            'ext: for cand_s in -40i128..=40 {
                for cand_r in -40i128..=40 {
                    if x * cand_s - y * cand_r == 1 {
                        s = cand_s;
                        r = cand_r;
                        break 'ext;
                    }
                }
            }
            if x * s - y * r != 1 {
                continue;
            }
            let gt = transform(g, [x, r, y, s]);
            assert_eq!(gt.a as i128, v);
            // B = f.b mod 2 f.a and B = gt.b mod 2v, congruent mod 2 already.
            let a1 = f.a as i128;
            let half_diff = (gt.b as i128 - f.b as i128) / 2;
            let inv = mod_inverse(a1.rem_euclid(v), v);
            let t = (inv * half_diff.rem_euclid(v)).rem_euclid(v);
            let b_big = f.b as i128 + 2 * a1 * t;
            let a_big = a1 * v;
            assert_eq!((b_big * b_big - d as i128).rem_euclid(4 * a_big), 0);
            let mut b_norm = b_big.rem_euclid(2 * a_big);
            if b_norm > a_big {
                b_norm -= 2 * a_big;
            }
            let c_norm = (b_norm * b_norm - d as i128) / (4 * a_big);
            return BinaryQuadraticForm::new(
                i64::try_from(a_big).unwrap(),
                i64::try_from(b_norm).unwrap(),
                i64::try_from(c_norm).unwrap(),
            )
            .reduce();
        }
    }
    panic!("oracle found no usable representation for {f} * {g}");
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r.abs(), 1);
    (old_s * old_r.signum()).rem_euclid(m)
}

#[test]
fn composition_matches_independent_oracle() {
    for dv in [-103i64, -120, -232, -455, -1423] {
        let dd = disc(dv);
        let forms = reduced_forms_imaginary(&dd).unwrap();
        for f in &forms {
            for g in &forms {
                let fast = compose(f, g).unwrap();
                let slow = oracle_compose(f, g);
                assert_eq!(fast, slow, "D={dv}, {f} * {g}");
            }
        }
    }
}

#[test]
fn reduction_uniqueness_up_to_5000() {
    // Walk each reduced form through unimodular transforms; every image
    // must reduce back to the original representative, and reduction must
    // fix reduced forms.
    let shifts: [[i128; 4]; 6] = [
        [1, 1, 0, 1],
        [1, -2, 0, 1],
        [0, -1, 1, 0],
        [1, 0, 3, 1],
        [2, 1, 1, 1],
        [1, 3, 2, 7],
    ];
    let mut d = -3i64;
    while d >= -5000 {
        if d.rem_euclid(4) <= 1 {
            let dd = disc(d);
            for f in reduced_forms_imaginary(&dd).unwrap() {
                assert_eq!(f.reduce(), f, "reduce must fix reduced {f}, D={d}");
                for m in shifts {
                    let g = transform(&f, m);
                    assert_eq!(g.discriminant(), d);
                    assert!(g.is_primitive());
                    assert_eq!(g.reduce(), f, "transform of {f} by {m:?} reduced elsewhere");
                }
            }
        }
        d -= 1;
    }
}

#[test]
fn group_laws_on_selected_discriminants() {
    for dv in [-103i64, -120, -232, -455] {
        let dd = disc(dv);
        let forms = reduced_forms_imaginary(&dd).unwrap();
        let id = principal_form(&dd);
        for f in &forms {
            assert_eq!(compose(&id, f).unwrap(), *f, "neutral, D={dv}");
            let inv = BinaryQuadraticForm::new(f.a, -f.b, f.c);
            assert_eq!(compose(f, &inv).unwrap(), id, "inverse, D={dv}");
            for g in &forms {
                assert_eq!(
                    compose(f, g).unwrap(),
                    compose(g, f).unwrap(),
                    "commutative, D={dv}"
                );
                for h in &forms {
                    let left = compose(&compose(f, g).unwrap(), h).unwrap();
                    let right = compose(f, &compose(g, h).unwrap()).unwrap();
                    assert_eq!(left, right, "associative, D={dv}");
                }
            }
        }
    }
}

#[test]
fn structure_product_equals_count() {
    let mut d = -3i64;
    while d >= -3000 {
        if d.rem_euclid(4) <= 1 {
            let dd = disc(d);
            if dd.is_fundamental() {
                let s = class_group_structure(&dd).unwrap();
                let product: u64 = s.elementary_divisors.iter().product();
                assert_eq!(product, s.h, "D={d}");
                assert!(s.elementary_divisors.iter().all(|&x| x > 1));
                for w in s.elementary_divisors.windows(2) {
                    assert_eq!(w[1] % w[0], 0, "divisor chain broken at D={d}");
                }
            }
        }
        d -= 1;
    }
}

#[test]
fn genus_count_matches_two_rank() {
    use quadscan_core::classgroup::genus_data;
    let mut d = -3i64;
    while d >= -3000 {
        if d.rem_euclid(4) <= 1 {
            let dd = disc(d);
            if dd.is_fundamental() {
                let g = genus_data(&dd).unwrap();
                let forms = reduced_forms_imaginary(&dd).unwrap();
                let id = principal_form(&dd);
                let order_le_2 = forms
                    .iter()
                    .filter(|f| compose(f, f).unwrap() == id)
                    .count() as u64;
                assert_eq!(order_le_2, 1 << g.two_rank, "D={d}");
            }
        }
        d -= 1;
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

#[test]
fn minkowski_bound_generates_group() {
    // Prime forms of non-inert l <= sqrt(|D|/3) generate the class group.
    let primes = primes_up_to(40);
    let mut d = -3i64;
    while d >= -3000 {
        if d.rem_euclid(4) <= 1 {
            let dd = disc(d);
            if dd.is_fundamental() {
                let h = reduced_forms_imaginary(&dd).unwrap().len();
                let bound = isqrt(d.unsigned_abs() / 3);
                let gens: Vec<_> = primes
                    .iter()
                    .copied()
                    .take_while(|&l| l <= bound)
                    .filter(|&l| splitting_type(&dd, l) != SplittingType::Inert)
                    .map(|l| prime_form(&dd, l).unwrap().reduce())
                    .collect();
                let sub = subgroup_generated_by(&gens, &dd).unwrap();
                assert_eq!(sub.len(), h, "D={d}: norms <= sqrt(|D|/3) must generate");
            }
        }
        d -= 1;
    }
}

#[test]
fn ramified_two_with_odd_primes_generates_group() {
    // For d = 1, 2 mod 4 squarefree, the ramified norm-2 form together with
    // the non-inert odd prime forms of norm <= sqrt(d) generate the group.
    let primes = primes_up_to(40);
    for d in 1..=1500u64 {
        if d % 4 != 1 && d % 4 != 2 {
            continue;
        }
        if !is_squarefree(d, None).unwrap() {
            continue;
        }
        let dd = discriminant_of(d, DiscriminantKind::Imaginary).unwrap();
        assert_eq!(dd.value(), -4 * d as i64);
        let h = reduced_forms_imaginary(&dd).unwrap().len();
        let bound = isqrt(d);
        let mut gens = vec![prime_form(&dd, 2).unwrap().reduce()];
        gens.extend(
            primes
                .iter()
                .copied()
                .skip(1) // odd primes only
                .take_while(|&l| l <= bound)
                .filter(|&l| splitting_type(&dd, l) != SplittingType::Inert)
                .map(|l| prime_form(&dd, l).unwrap().reduce()),
        );
        let sub = subgroup_generated_by(&gens, &dd).unwrap();
        assert_eq!(sub.len(), h, "d={d}: Q2 with odd norms <= sqrt(d) must generate");
    }
}

#[test]
fn non_inert_primes_divide_shifted_squares_in_both_parities() {
    // For every non-inert odd l and squarefree d, some x in [0, l] of either
    // requested parity has l | d + x².
    let primes = primes_up_to(60);
    for d in 1..=2000u64 {
        if !is_squarefree(d, None).unwrap() {
            continue;
        }
        let dd = discriminant_of(d, DiscriminantKind::Imaginary).unwrap();
        for &l in primes.iter().skip(1) {
            if splitting_type(&dd, l) == SplittingType::Inert {
                continue;
            }
            for want_even in [false, true] {
                let found = (0..=l)
                    .filter(|x| (x % 2 == 0) == want_even)
                    .any(|x| (d + x * x) % l == 0);
                assert!(found, "d={d}, l={l}, even={want_even}");
            }
        }
    }
}

#[test]
fn p_x2_2y2_solvable_for_all_qualifying_primes_below_1e5() {
    let mut checked = 0u32;
    for p in (7..100_000u64).step_by(2) {
        if p % 8 != 1 && p % 8 != 7 {
            continue;
        }
        if !is_prime(p) {
            continue;
        }
        let (x, y) = solve_p_x2_2y2(p).unwrap();
        assert_eq!(p + x * x, 2 * y * y, "p={p}");
        assert!(x * x < p && y * y < p, "p={p}: witness outside [0, sqrt(p))");
        checked += 1;
    }
    assert!(checked > 4000, "expected thousands of qualifying primes");
}

#[test]
fn prime_form_conjugates_share_an_order() {
    use quadscan_core::classgroup::order_of_prime_form;
    for (dv, l) in [(-103i64, 2u64), (-120, 2), (-455, 2), (-455, 13), (-231, 5)] {
        let dd = disc(dv);
        if splitting_type(&dd, l) == SplittingType::Inert {
            continue;
        }
        let f = prime_form(&dd, l).unwrap();
        let conj = BinaryQuadraticForm::new(f.a, -f.b, f.c);
        let ord = order_of_prime_form(&dd, l).unwrap();
        // Composing a class with its conjugate gives the identity; equal orders.
        assert_eq!(compose(&f, &conj).unwrap(), principal_form(&dd), "D={dv} l={l}");
        let mut acc = conj.reduce();
        let mut k = 1;
        while acc != principal_form(&dd) {
            acc = compose(&acc, &conj).unwrap();
            k += 1;
        }
        assert_eq!(k, ord, "conjugate order differs at D={dv} l={l}");
    }
}

#[test]
fn p_x2_2y2_solution_is_empirically_unique() {
    // Only existence is proved; uniqueness is an observation this test
    // records, not an assumption the solver relies on.
    for p in (7..100_000u64).step_by(2) {
        if (p % 8 == 1 || p % 8 == 7) && is_prime(p) {
            let all = solve_p_x2_2y2_all(p).unwrap();
            assert_eq!(all.len(), 1, "p={p}: {all:?}");
        }
    }
}
