//! The left ideal generated by `θ_n`: the basis `{σ ⋉ θ_n : σ(1) = 1}` and
//! the scalar relating every `τ ⋉ θ_n` to a basis element.

use std::collections::BTreeSet;

use num_traits::One;

use super::klyachko::{partner_element, record_values};
use super::{Fraction, GroupAlgebraElement};
use crate::error::Result;
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{Exponents, Polynomial, Rational, RingMode};
use crate::sample::{evaluate_at_random_point, rng_from_seed};

/// Writes `τ = σγ^j` with `σ(1) = 1` and returns `(σ, j, q_{σ(1)} ⋯ q_{σ(j)})`,
/// so that `τ ⋉ θ_n = q_{σ(1)} ⋯ q_{σ(j)} · (σ ⋉ θ_n)`.
pub fn ideal_spanning_scalar(tau: &Permutation) -> (Permutation, usize, RatFun) {
    let n = tau.degree();
    let mode = RingMode::cyclic(n);
    let pos = tau.inverse().image(1) as i64;
    let j = (1 - pos).rem_euclid(n as i64);
    let sigma = tau
        .compose(&Permutation::cycle_power(n, -j))
        .expect("same degree");
    let j = j as usize;
    let mono = Exponents::product_of(n, sigma.as_slice()[..j].iter().map(|&x| x as usize));
    let scalar = Polynomial::monomial(mode, mono, Rational::one()).expect("length matches");
    (sigma, j, RatFun::from_polynomial(scalar))
}

/// `σ ⋉ θ_n` for every `σ` with `σ(1) = 1`, in lexicographic order of `σ`.
pub fn ideal_basis(n: usize) -> Vec<(Permutation, GroupAlgebraElement)> {
    let theta = partner_element(n);
    let mode = RingMode::cyclic(n);
    Permutation::all(n)
        .filter(|s| s.image(1) == 1)
        .map(|s| {
            let b = GroupAlgebraElement::basis(mode, s.clone())
                .and_then(|b| b.twisted_product(&theta))
                .expect("same mode");
            (s, b)
        })
        .collect()
}

/// Basis size `(n-1)!`, each support equal to the coset `{σγ^i}`, pairwise
/// disjoint supports, and the spanning relation for every `τ ∈ S_n`
/// (symbolically, or by exact values at random points).
pub fn check_ideal(n: usize, method: Method) -> Result<VerificationReport> {
    let mode = RingMode::cyclic(n);
    let theta = partner_element(n);
    let mut outcome = Ok(());
    let report = VerificationReport::new("ideal", method).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            let basis = ideal_basis(n);
            let expected: usize = (1..n).product();
            r.record("basis size", basis.len() == expected, || {
                format!("{} elements, expected {expected}", basis.len())
            });
            let mut seen: BTreeSet<Permutation> = BTreeSet::new();
            for (sigma, b) in &basis {
                let coset: BTreeSet<Permutation> = (0..n as i64)
                    .map(|i| sigma.compose(&Permutation::cycle_power(n, i)).expect("same degree"))
                    .collect();
                let support: BTreeSet<Permutation> = b.support().cloned().collect();
                r.record(format!("support [{sigma}]"), support == coset, || {
                    let shown: Vec<String> = support.iter().map(|p| p.to_string()).collect();
                    format!("support {{{}}}", shown.join(", "))
                });
                let overlap = support.iter().find(|p| seen.contains(*p)).cloned();
                r.record(format!("disjoint [{sigma}]"), overlap.is_none(), || {
                    format!("{} already covered", overlap.clone().unwrap())
                });
                seen.extend(support);
            }
            let mut rng = rng_from_seed(method_seed(method));
            for tau in Permutation::all(n) {
                let (sigma, _, scalar) = ideal_spanning_scalar(&tau);
                let lhs = GroupAlgebraElement::basis(mode, tau.clone())?;
                let base = GroupAlgebraElement::basis(mode, sigma.clone())?;
                match method {
                    Method::Symbolic => {
                        let left = lhs.twisted_product(&theta)?;
                        let right = base.twisted_product(&theta)?.scalar_mul(&scalar)?;
                        let diff = left.first_difference(&right)?;
                        r.record(format!("span [{tau}]"), diff.is_none(), || {
                            format!("differs at {} (sigma = {sigma}, scalar = {scalar})", diff.clone().unwrap())
                        });
                    }
                    Method::Randomized { points, .. } => {
                        for p in 0..points {
                            let (pt, (a, b)) = evaluate_at_random_point(mode, &mut rng, |pt| {
                                let s = Fraction::from_rational(&scalar.evaluate(pt)?);
                                let right = base
                                    .twisted_product_at(&theta, pt)?
                                    .into_iter()
                                    .map(|(k, v)| (k, v.mul(&s)))
                                    .collect();
                                Ok((lhs.twisted_product_at(&theta, pt)?, right))
                            })?;
                            record_values(r, &format!("span {tau}"), p, &pt, &a, &b);
                        }
                    }
                }
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

fn method_seed(method: Method) -> u64 {
    match method {
        Method::Symbolic => 0,
        Method::Randomized { seed, .. } => seed,
    }
}
