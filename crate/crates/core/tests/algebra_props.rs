use std::collections::BTreeSet;

use klyachko::groupalg::{
    check_idempotency_of, check_ideal, first_value_difference, klyachko_element, partner_element,
};
use klyachko::lie::{check_dynkin, is_lie_element, left_bracket_expansion, scalar_product, shuffle_product, WordSum};
use klyachko::ppart::{linear_extensions, poset_from_words};
use klyachko::ring::{int, rat};
use klyachko::sample::{random_point, rng_from_seed};
use klyachko::theta::{product_expansion, star_product, theta_closed, TruncatedSeries};
use klyachko::{
    Exponents, GroupAlgebraElement, Method, Permutation, Polynomial, RatFun, Rational, RingMode, Word,
};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

/// A coefficient `c · q^e / (1 - q_i)` or a Laurent monomial, in cyclic mode.
fn coefficient(n: usize) -> impl Strategy<Value = RatFun> {
    let mode = RingMode::cyclic(n);
    (prop::collection::vec(-1i32..=2, n), small_rational(), prop::option::of(1..n)).prop_map(move |(e, c, f)| {
        let num = Polynomial::monomial(mode, Exponents::new(e), c).unwrap();
        let factors: Vec<Exponents> = f.map(|i| Exponents::unit(n, i)).into_iter().collect();
        RatFun::new(num, factors).unwrap()
    })
}

fn element(n: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((permutation(n), coefficient(n)), 0..4)
        .prop_map(move |terms| GroupAlgebraElement::from_terms(RingMode::cyclic(n), terms).unwrap())
}

fn integer_element(n: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((permutation(n), -3i64..=3), 1..6).prop_map(move |terms| {
        let mode = RingMode::cyclic(n);
        GroupAlgebraElement::from_terms(mode, terms.into_iter().map(|(p, c)| (p, RatFun::constant(mode, int(c)))))
            .unwrap()
    })
}

/// Random combination of left-normed bracket expansions: always a Lie element.
fn lie_element(n: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((permutation(n), -3i64..=3), 1..4).prop_map(move |terms| {
        let mut sum = WordSum::new();
        for (p, c) in terms {
            sum = sum.add(&left_bracket_expansion(&p.to_word()).unwrap().scale(&int(c)));
        }
        sum.to_element(RingMode::cyclic(n)).unwrap()
    })
}

fn word_split(n: usize) -> impl Strategy<Value = (Word, Word)> {
    (permutation(n), 1..n).prop_map(|(p, k)| {
        let letters = p.to_word().letters().to_vec();
        (Word::new(letters[..k].to_vec()).unwrap(), Word::new(letters[k..].to_vec()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisted_product_is_associative((a, b, c) in (element(3), element(3), element(3))) {
        let left = a.twisted_product(&b).unwrap().twisted_product(&c).unwrap();
        let right = a.twisted_product(&b.twisted_product(&c).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
    }

    #[test]
    fn evaluated_product_matches_symbolic((a, b, seed) in (element(3), element(3), any::<u64>())) {
        let pt = random_point(RingMode::cyclic(3), &mut rng_from_seed(seed));
        let sym = a.twisted_product(&b).unwrap().evaluate(&pt);
        let fast = a.twisted_product_at(&b, &pt);
        if let (Ok(sym), Ok(fast)) = (sym, fast) {
            prop_assert_eq!(first_value_difference(&sym, &fast), None);
        }
    }

    #[test]
    fn shuffles_interleave((u, v) in (2usize..=6).prop_flat_map(word_split)) {
        let s = shuffle_product(&u, &v).unwrap();
        let (r, t) = (u.len() as u64, v.len() as u64);
        let binom = (1..=r).fold(1u64, |acc, i| acc * (t + i) / i);
        prop_assert_eq!(s.len() as u64, binom);
        for (w, c) in s.terms() {
            prop_assert_eq!(c, &int(1));
            let keep = |set: &Word| -> Vec<u32> {
                w.letters().iter().copied().filter(|x| set.letters().contains(x)).collect()
            };
            prop_assert_eq!(keep(&u), u.letters().to_vec());
            prop_assert_eq!(keep(&v), v.letters().to_vec());
        }
    }

    #[test]
    fn extensions_are_shuffles((u, v) in (2usize..=5).prop_flat_map(word_split)) {
        let p = poset_from_words(&u, &v).unwrap();
        let ext: BTreeSet<Word> = linear_extensions(&p).into_iter().collect();
        let sh: BTreeSet<Word> = shuffle_product(&u, &v).unwrap().support().cloned().collect();
        prop_assert_eq!(ext, sh);
    }

    #[test]
    fn scalar_product_is_bilinear(
        (a, b, p, k) in (element(3), element(3), permutation(3), small_rational())
    ) {
        let w = WordSum::from_terms([(p.to_word(), int(1))]);
        prop_assert!(scalar_product(&a, &w).unwrap().equals(&a.coefficient(&p)).unwrap());
        let sum = a.checked_add(&b.scale(&k)).unwrap();
        let lhs = scalar_product(&sum, &w).unwrap();
        let rhs = &scalar_product(&a, &w).unwrap() + &scalar_product(&b, &w).unwrap().scale(&k);
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn lie_tests_agree_on_random_elements(a in (2usize..=4).prop_flat_map(integer_element)) {
        let ortho = is_lie_element(&a, Method::Symbolic).unwrap().passed();
        let dynkin = check_dynkin(&a, Method::Symbolic).unwrap().passed();
        prop_assert_eq!(ortho, dynkin);
    }

    #[test]
    fn bracket_combinations_pass_both(a in (2usize..=4).prop_flat_map(lie_element)) {
        prop_assert!(is_lie_element(&a, Method::Symbolic).unwrap().passed());
        prop_assert!(check_dynkin(&a, Method::Symbolic).unwrap().passed());
    }
}

/// Truncated series with small integer coefficients on permutations of size
/// at most 3.
fn series() -> impl Strategy<Value = TruncatedSeries> {
    let size = 3;
    let mode = RingMode::free(size);
    let perm = (0usize..=size).prop_flat_map(permutation);
    let coeff = prop::collection::vec((prop::collection::vec(0i32..=2, size), -2i64..=2), 1..3);
    prop::collection::vec((perm, coeff), 0..4).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(p, c)| {
            // only the first |p| variables may occur in the coefficient of p
            let k = p.degree();
            let poly = Polynomial::from_terms(
                mode,
                c.into_iter().map(|(mut e, x)| {
                    e[k..].iter_mut().for_each(|v| *v = 0);
                    (Exponents::new(e), int(x))
                }),
            )
            .unwrap();
            (p, poly)
        });
        TruncatedSeries::from_terms(size, 4, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn star_is_associative((a, b, c) in (series(), series(), series())) {
        let left = star_product(&star_product(&a, &b).unwrap(), &c).unwrap();
        let right = star_product(&a, &star_product(&b, &c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right).unwrap());
    }

    #[test]
    fn empty_permutation_is_the_unit(a in series()) {
        let e = TruncatedSeries::unit(3, 4);
        prop_assert!(star_product(&e, &a).unwrap().agrees_with(&a).unwrap());
        prop_assert!(star_product(&a, &e).unwrap().agrees_with(&a).unwrap());
    }
}

#[test]
fn truncation_is_consistent() {
    let big = product_expansion(4, 6).unwrap();
    let closed = theta_closed(4, 6).unwrap();
    for (n, d) in [(2, 3), (3, 4), (4, 5), (3, 6)] {
        let small = product_expansion(n, d).unwrap();
        assert_eq!(big.restrict(n, d).unwrap().terms().collect::<Vec<_>>(), small.terms().collect::<Vec<_>>());
        assert!(closed.restrict(n, d).unwrap().agrees_with(&theta_closed(n, d).unwrap()).unwrap());
    }
}

#[test]
fn randomized_checks_catch_a_wrong_element() {
    // idempotency against a perturbed element
    let e = klyachko_element(4);
    let sigma = Permutation::parse("2413").unwrap();
    let bumped = e.checked_add(&GroupAlgebraElement::basis(e.mode(), sigma.clone()).unwrap()).unwrap();
    let theta = partner_element(4);
    let method = Method::Randomized { points: 2, seed: 5 };
    assert!(check_idempotency_of(&e, &theta, method).unwrap().passed());
    let report = check_idempotency_of(&bumped, &theta, method).unwrap();
    assert!(!report.passed());
    assert!(!check_idempotency_of(&bumped, &theta, Method::Symbolic).unwrap().passed());

    // the Lie test at random points, on a non-Lie perturbation
    let report = is_lie_element(&bumped, method).unwrap();
    assert!(!report.passed());
    let report = check_dynkin(&bumped, method).unwrap();
    assert!(!report.passed());
}

#[test]
fn partner_support_is_the_cycle() {
    for n in 2..=5 {
        let th = partner_element(n);
        let support: Vec<Permutation> = th.support().cloned().collect();
        let mut cycle: Vec<Permutation> = (0..n as i64).map(|i| Permutation::cycle_power(n, i)).collect();
        cycle.sort();
        assert_eq!(support, cycle);
    }
    assert!(check_ideal(4, Method::Randomized { points: 1, seed: 2 }).unwrap().passed());
}
