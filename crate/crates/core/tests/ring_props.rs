use klyachko::ring::{int, rat, CyclotomicElement, CyclotomicField};
use klyachko::{Exponents, Permutation, Polynomial, RatFun, Rational, RingMode};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=9).prop_map(|(a, b)| rat(a, b))
}

fn mode(n: usize, cyclic: bool) -> RingMode {
    if cyclic {
        RingMode::cyclic(n)
    } else {
        RingMode::free(n)
    }
}

fn poly(m: RingMode) -> impl Strategy<Value = Polynomial> {
    let n = m.n();
    prop::collection::vec((prop::collection::vec(-2i32..=3, n), small_rational()), 0..5).prop_map(move |terms| {
        Polynomial::from_terms(m, terms.into_iter().map(|(e, c)| (Exponents::new(e), c))).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

/// A point satisfying the relation of `m`.
fn point(m: RingMode) -> impl Strategy<Value = Vec<Rational>> {
    let n = m.n();
    let free = if m.is_cyclic() { n - 1 } else { n };
    prop::collection::vec(nonzero_rational(), free).prop_map(move |mut v| {
        if m.is_cyclic() {
            let p: Rational = v.iter().product();
            v.push(p.recip());
        }
        v
    })
}

/// Products of a nonempty proper subset of the variables: never trivial in
/// either mode.
fn factor(n: usize) -> impl Strategy<Value = Exponents> {
    prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..n).prop_map(move |s| Exponents::product_of(n, s))
}

fn ratfun(m: RingMode) -> impl Strategy<Value = RatFun> {
    (poly(m), prop::collection::vec(factor(m.n()), 0..3)).prop_map(|(p, f)| RatFun::new(p, f).unwrap())
}

fn mode_strategy() -> impl Strategy<Value = RingMode> {
    (2usize..=4, any::<bool>()).prop_map(|(n, c)| mode(n, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws((a, b, c) in mode_strategy().prop_flat_map(|m| (poly(m), poly(m), poly(m)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.mode()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (a, b, pt) in mode_strategy().prop_flat_map(|m| (poly(m), poly(m), point(m)))
    ) {
        let (x, y) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &x + &y);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &x * &y);
    }

    #[test]
    fn permutations_act_compatibly(
        (a, b, s, t) in mode_strategy().prop_flat_map(|m| (poly(m), poly(m), permutation(m.n()), permutation(m.n())))
    ) {
        let st = s.compose(&t).unwrap();
        let lhs = a.apply_permutation(&t).unwrap().apply_permutation(&s).unwrap();
        prop_assert_eq!(lhs, a.apply_permutation(&st).unwrap());
        let prod = (&a * &b).apply_permutation(&s).unwrap();
        prop_assert_eq!(prod, &a.apply_permutation(&s).unwrap() * &b.apply_permutation(&s).unwrap());
    }

    #[test]
    fn cyclic_reduction_is_sound(
        (p, pt) in (2usize..=4).prop_flat_map(|n| (poly(RingMode::free(n)), point(RingMode::cyclic(n))))
    ) {
        let n = pt.len();
        let cyclic = RingMode::cyclic(n);
        let reduced = p.to_mode(cyclic).unwrap();
        prop_assert_eq!(reduced.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap());
        let all = Polynomial::monomial(cyclic, Exponents::product_of(n, 1..=n), int(1)).unwrap();
        prop_assert_eq!(&reduced * &all, reduced.clone());
    }

    #[test]
    fn ratfun_field_laws(
        (a, b, c, pt) in mode_strategy().prop_flat_map(|m| (ratfun(m), ratfun(m), ratfun(m), point(m)))
    ) {
        prop_assert!((&(&a + &b) + &c).equals(&(&a + &(&b + &c))).unwrap());
        prop_assert!((&a * &(&b + &c)).equals(&(&(&a * &b) + &(&a * &c))).unwrap());
        prop_assert!((&a - &a).is_zero());
        // evaluation agrees wherever no factor vanishes
        if let (Ok(x), Ok(y)) = (a.evaluate(&pt), b.evaluate(&pt)) {
            prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &x + &y);
        }
    }

    #[test]
    fn ratfun_render_round_trips(f in mode_strategy().prop_flat_map(ratfun)) {
        let m = f.mode();
        let text = f.render(m.symbol());
        let back = RatFun::parse(&text, m).unwrap();
        prop_assert_eq!(back.render(m.symbol()), text);
        prop_assert!(back.equals(&f).unwrap());
    }

    #[test]
    fn ratfun_permutation_action(
        (f, s, pt) in mode_strategy().prop_flat_map(|m| (ratfun(m), permutation(m.n()), point(m)))
    ) {
        // (σ·f)(p) = f(p_{σ(1)}, …, p_{σ(n)})
        let moved: Vec<Rational> = (1..=pt.len()).map(|i| pt[s.image(i) - 1].clone()).collect();
        if let Ok(v) = f.evaluate(&moved) {
            prop_assert_eq!(f.apply_permutation(&s).unwrap().evaluate(&pt).unwrap(), v);
        }
    }
}

fn cyclo(n: usize) -> impl Strategy<Value = CyclotomicElement> {
    let field = CyclotomicField::new(n);
    prop::collection::vec(small_rational(), field.degree()).prop_map(move |c| field.element(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_laws(
        (a, b, c) in prop::sample::select(vec![3usize, 4, 5, 6, 7, 8, 12]).prop_flat_map(|n| (cyclo(n), cyclo(n), cyclo(n)))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, a.field().from_rational(int(1)));
        }
    }
}

#[test]
fn zeta_has_order_n() {
    for n in [3usize, 4, 5, 6, 7, 8, 12] {
        let f = CyclotomicField::new(n);
        assert_eq!(f.zeta_pow(n as i64), f.from_rational(int(1)));
        for k in 1..n as i64 {
            assert_ne!(f.zeta_pow(k), f.from_rational(int(1)), "zeta^{k} in Q(zeta_{n})");
        }
    }
}
