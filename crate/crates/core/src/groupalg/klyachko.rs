//! `gmaj_q`, the Klyachko element `e_n(q)`, its partner `θ_n(q)`, and the
//! identities behind idempotency.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Fraction, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{Exponents, Polynomial, Rational, Relation, RingMode};
use crate::sample::{evaluate_at_random_point, format_point, rng_from_seed};

/// Exponent vector of `q_{σ(1)} ⋯ q_{σ(j)}`.
fn prefix(sigma: &Permutation, j: usize) -> Exponents {
    Exponents::product_of(sigma.degree(), sigma.as_slice()[..j].iter().map(|&x| x as usize))
}

/// `N(σ) = Π_{j ∈ D(σ)} q_{σ(1)} ⋯ q_{σ(j)}`.
pub fn gmaj_numerator(sigma: &Permutation, mode: RingMode) -> Polynomial {
    let n = sigma.degree();
    let mut e = Exponents::zero(n);
    for j in sigma.descents() {
        e = e.add(&prefix(sigma, j));
    }
    Polynomial::monomial(mode, e, Rational::one()).expect("length matches")
}

/// `D(σ) = Π_{i=1}^{n-1} (1 - q_{σ(1)} ⋯ q_{σ(i)})`, expanded.
pub fn gmaj_denominator(sigma: &Permutation, mode: RingMode) -> Polynomial {
    let mut acc = Polynomial::one(mode);
    for i in 1..sigma.degree() {
        let f = Polynomial::one_minus_monomial(mode, &prefix(sigma, i)).expect("length matches");
        acc = &acc * &f;
    }
    acc
}

/// `gmaj_q(σ) = N(σ)/D(σ)` modulo `q_1 ⋯ q_n = 1`.
pub fn gmaj(sigma: &Permutation) -> RatFun {
    gmaj_in(sigma, Relation::Cyclic)
}

pub fn gmaj_in(sigma: &Permutation, relation: Relation) -> RatFun {
    let n = sigma.degree();
    let mode = RingMode::new(n, relation);
    let factors = (1..n).map(|i| prefix(sigma, i));
    // proper prefixes never contain every variable, so no factor vanishes
    RatFun::new(gmaj_numerator(sigma, mode), factors).expect("proper prefix factors")
}

/// `e_n(q) = Σ_{σ ∈ S_n} gmaj_q(σ) σ`.
pub fn klyachko_element(n: usize) -> GroupAlgebraElement {
    klyachko_element_in(n, Relation::Cyclic)
}

pub fn klyachko_element_in(n: usize, relation: Relation) -> GroupAlgebraElement {
    let mode = RingMode::new(n, relation);
    GroupAlgebraElement::from_terms(mode, Permutation::all(n).map(|s| {
        let f = gmaj_in(&s, relation);
        (s, f)
    }))
    .expect("coefficients share the mode")
}

/// `θ_n(q) = Σ_{i=0}^{n-1} gmaj_q(γ^i) γ^i`.
pub fn partner_element(n: usize) -> GroupAlgebraElement {
    partner_element_in(n, Relation::Cyclic)
}

pub fn partner_element_in(n: usize, relation: Relation) -> GroupAlgebraElement {
    let mode = RingMode::new(n, relation);
    GroupAlgebraElement::from_terms(
        mode,
        (0..n as i64).map(|i| {
            let g = Permutation::cycle_power(n, i);
            let f = gmaj_in(&g, relation);
            (g, f)
        }),
    )
    .expect("coefficients share the mode")
}

/// The four identities describing how `γ` and its powers act on `N`, `D`
/// and `gmaj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LemmaPart {
    /// `γ·N(σ) = q_1 N(γσ)`
    I,
    /// `τ·D(σ) = D(τσ)`
    II,
    /// `γ^i·gmaj(σ) = q_1 ⋯ q_i gmaj(γ^i σ)`
    III,
    /// `N(σγ^i) = (q_{σ(1)} ⋯ q_{σ(i)})^{-d̄(σ)} N(σ)`
    IV,
}

impl LemmaPart {
    pub const ALL: [LemmaPart; 4] = [LemmaPart::I, LemmaPart::II, LemmaPart::III, LemmaPart::IV];
}

impl fmt::Display for LemmaPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LemmaPart::I => "i",
            LemmaPart::II => "ii",
            LemmaPart::III => "iii",
            LemmaPart::IV => "iv",
        };
        f.write_str(s)
    }
}

impl FromStr for LemmaPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "1" => Ok(LemmaPart::I),
            "ii" | "2" => Ok(LemmaPart::II),
            "iii" | "3" => Ok(LemmaPart::III),
            "iv" | "4" => Ok(LemmaPart::IV),
            _ => Err(Error::Parse(format!("unknown lemma part {s:?}"))),
        }
    }
}

/// Checks one part of the lemma symbolically. Part (ii) reads `tau`, parts
/// (iii) and (iv) read `i`; unused arguments are ignored.
pub fn check_gamma_lemma(
    part: LemmaPart,
    sigma: &Permutation,
    tau: &Permutation,
    i: usize,
) -> Result<bool> {
    let n = sigma.degree();
    let mode = RingMode::cyclic(n);
    let gamma = Permutation::cycle_power(n, 1);
    match part {
        LemmaPart::I => {
            let lhs = gmaj_numerator(sigma, mode).apply_permutation(&gamma)?;
            let rhs = &Polynomial::var(mode, 1)? * &gmaj_numerator(&gamma.compose(sigma)?, mode);
            Ok(lhs == rhs)
        }
        LemmaPart::II => {
            let lhs = gmaj_denominator(sigma, mode).apply_permutation(tau)?;
            Ok(lhs == gmaj_denominator(&tau.compose(sigma)?, mode))
        }
        LemmaPart::III => {
            let gi = Permutation::cycle_power(n, i as i64);
            let lhs = gmaj(sigma).apply_permutation(&gi)?;
            let scalar = Polynomial::monomial(
                mode,
                Exponents::product_of(n, 1..=i),
                Rational::one(),
            )?;
            let rhs = gmaj(&gi.compose(sigma)?).mul_polynomial(&scalar)?;
            lhs.equals(&rhs)
        }
        LemmaPart::IV => {
            let gi = Permutation::cycle_power(n, i as i64);
            let lhs = gmaj_numerator(&sigma.compose(&gi)?, mode);
            let dbar = sigma.circular_descent_count() as i32;
            let unit = Polynomial::monomial(mode, prefix(sigma, i).scale(-dbar), Rational::one())?;
            Ok(lhs == &unit * &gmaj_numerator(sigma, mode))
        }
    }
}

fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<u8> = (1..=n as u8).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled identity")
}

/// All four lemma parts. Symbolic runs every `σ` (part i), every `(σ, τ)`
/// (part ii) and every `(σ, i)` (parts iii, iv); randomized draws `points`
/// triples `(σ, τ, i)` and checks every part on each.
pub fn check_lemma_suite(n: usize, method: Method) -> Result<VerificationReport> {
    let report = VerificationReport::new("lemma", method).with_param("n", n);
    let mut outcome = Ok(());
    let report = report.timed(|r| {
        outcome = (|| -> Result<()> {
            let mut record = |part: LemmaPart, s: &Permutation, t: &Permutation, i: usize| {
                let ok = check_gamma_lemma(part, s, t, i)?;
                r.record(format!("({part}) sigma={s} tau={t} i={i}"), ok, || {
                    format!("identity ({part}) fails")
                });
                Ok::<(), Error>(())
            };
            let id = Permutation::identity(n);
            match method {
                Method::Symbolic => {
                    for s in Permutation::all(n) {
                        record(LemmaPart::I, &s, &id, 0)?;
                        for t in Permutation::all(n) {
                            record(LemmaPart::II, &s, &t, 0)?;
                        }
                        for i in 0..n {
                            record(LemmaPart::III, &s, &id, i)?;
                            record(LemmaPart::IV, &s, &id, i)?;
                        }
                    }
                }
                Method::Randomized { points, seed } => {
                    let mut rng = rng_from_seed(seed);
                    for _ in 0..points {
                        let s = random_permutation(n, &mut rng);
                        let t = random_permutation(n, &mut rng);
                        let i = rng.gen_range(0..n);
                        for part in LemmaPart::ALL {
                            record(part, &s, &t, i)?;
                        }
                    }
                }
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

/// `Σ_{i=0}^{n-1} (α_{i+1} ⋯ α_n)^k / Π_{j=1}^{n-1} (1 - α_{i+1} ⋯ α_{i+j})`
/// with `α_i = q_i`, indices mod n, in cyclic mode. Equals `δ_{0,k}`.
pub fn pare_sum(n: usize, k: usize) -> Result<RatFun> {
    if n == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("pare_sum needs 0 <= k < n, got n={n}, k={k}")));
    }
    let mode = RingMode::cyclic(n);
    let wrap = |l: usize| (l - 1) % n + 1;
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let head = Exponents::product_of(n, i + 1..=n).scale(k as i32);
        let num = Polynomial::monomial(mode, head, Rational::one())?;
        let factors = (1..n).map(|j| Exponents::product_of(n, (i + 1..=i + j).map(wrap)));
        terms.push(RatFun::new(num, factors)?);
    }
    RatFun::sum(mode, &terms)
}

/// `pare_sum(n, k) = δ_{0,k}` for every `1 ≤ n ≤ max_n`, `0 ≤ k < n`.
pub fn check_pare_suite(max_n: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("pare", Method::Symbolic)
        .with_param("max_n", max_n)
        .timed(|r| {
            outcome = (|| -> Result<()> {
                for n in 1..=max_n {
                    for k in 0..n {
                        let value = pare_sum(n, k)?;
                        let want = if k == 0 { RatFun::one(value.mode()) } else { RatFun::zero(value.mode()) };
                        let ok = value.equals(&want)?;
                        r.record(format!("n={n} k={k}"), ok, || format!("sum = {value}"));
                    }
                }
                Ok(())
            })();
        });
    outcome.map(|_| report)
}

/// `Σ_{i=0}^{n-1} gmaj(γ^i) q_1 ⋯ q_i`.
pub fn lonelabel_sum(n: usize) -> Result<RatFun> {
    let mode = RingMode::cyclic(n);
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let scalar = Polynomial::monomial(mode, Exponents::product_of(n, 1..=i), Rational::one())?;
        terms.push(gmaj(&Permutation::cycle_power(n, i as i64)).mul_polynomial(&scalar)?);
    }
    RatFun::sum(mode, &terms)
}

/// `lonelabel_sum(n) = 1`.
pub fn check_lonelabel(n: usize) -> Result<bool> {
    lonelabel_sum(n)?.equals(&RatFun::one(RingMode::cyclic(n)))
}

const IDEMPOTENCY_EQUATIONS: [&str; 3] = ["e*e=e", "theta*e=e", "e*theta=theta"];

/// `e⋉e = e`, `θ⋉e = e` and `e⋉θ = θ`, compared coefficient by coefficient,
/// either as rational functions or by exact values at random points.
pub fn check_idempotency(n: usize, method: Method) -> Result<VerificationReport> {
    check_idempotency_of(&klyachko_element(n), &partner_element(n), method)
}

/// The three idempotency equations for arbitrary `e` and `θ` of one mode.
pub fn check_idempotency_of(
    e: &GroupAlgebraElement,
    theta: &GroupAlgebraElement,
    method: Method,
) -> Result<VerificationReport> {
    let n = e.n();
    let mut outcome = Ok(());
    let report = VerificationReport::new("idempotent", method).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            match method {
                Method::Symbolic => {
                    let sides = [
                        (e.twisted_product(e)?, e),
                        (theta.twisted_product(e)?, e),
                        (e.twisted_product(theta)?, theta),
                    ];
                    for (name, (lhs, rhs)) in IDEMPOTENCY_EQUATIONS.iter().zip(&sides) {
                        let keys: std::collections::BTreeSet<&Permutation> =
                            lhs.support().chain(rhs.support()).collect();
                        for sigma in keys {
                            let (a, b) = (lhs.coefficient(sigma), rhs.coefficient(sigma));
                            let ok = a.equals(&b)?;
                            r.record(format!("{name} [{sigma}]"), ok, || format!("lhs = {a}, rhs = {b}"));
                        }
                    }
                }
                Method::Randomized { points, seed } => {
                    let mut rng = rng_from_seed(seed);
                    for p in 0..points {
                        let (pt, values) = evaluate_at_random_point(e.mode(), &mut rng, |pt| {
                            let ev = e.evaluate(pt)?;
                            let tv = theta.evaluate(pt)?;
                            Ok([
                                (e.twisted_product_at(e, pt)?, ev.clone()),
                                (theta.twisted_product_at(e, pt)?, ev),
                                (e.twisted_product_at(theta, pt)?, tv),
                            ])
                        })?;
                        for (name, (lhs, rhs)) in IDEMPOTENCY_EQUATIONS.iter().zip(&values) {
                            record_values(r, name, p, &pt, lhs, rhs);
                        }
                    }
                }
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

/// One check per coefficient of two evaluated elements.
pub(crate) fn record_values(
    r: &mut VerificationReport,
    name: &str,
    point_index: usize,
    point: &[Rational],
    lhs: &super::EvaluatedElement,
    rhs: &super::EvaluatedElement,
) {
    let keys: std::collections::BTreeSet<&Permutation> = lhs.keys().chain(rhs.keys()).collect();
    let zero = Fraction::zero();
    for sigma in keys {
        let (a, b) = (lhs.get(sigma).unwrap_or(&zero), rhs.get(sigma).unwrap_or(&zero));
        r.record(format!("{name} [{sigma}] point {point_index}"), a == b, || {
            format!("at {}: lhs = {a}, rhs = {b}", format_point(point))
        });
    }
}
