//! Specialization `q_i ↦ ζ` to the cyclotomic field, where the twisted
//! product becomes the ordinary group-algebra product.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::klyachko::{klyachko_element, partner_element};
use super::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{CyclotomicElement, CyclotomicField, Rational};

/// `Σ c_σ σ` with coefficients in `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct CycloGroupAlgebraElement {
    n: usize,
    field: CyclotomicField,
    coeffs: BTreeMap<Permutation, CyclotomicElement>,
}

impl CycloGroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        CycloGroupAlgebraElement { n, field: CyclotomicField::new(n), coeffs: BTreeMap::new() }
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Permutation, CyclotomicElement)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n);
        for (sigma, c) in terms {
            out.add_term(sigma, c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, c: CyclotomicElement) -> Result<()> {
        if sigma.degree() != self.n {
            return Err(Error::Dimension { expected: self.n, found: sigma.degree() });
        }
        let sum = match self.coeffs.remove(&sigma) {
            Some(a) => a.checked_add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(sigma, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn coefficient(&self, sigma: &Permutation) -> CyclotomicElement {
        self.coeffs.get(sigma).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &CyclotomicElement)> + '_ {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The ordinary product `Σ a_σ b_τ στ`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, found: other.n });
        }
        let mut out = Self::zero(self.n);
        for (sigma, a) in &self.coeffs {
            for (tau, b) in &other.coeffs {
                out.add_term(sigma.compose(tau)?, a.checked_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(s, c)| format!("{} * {}", c.render(), s))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl PartialEq for CycloGroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloGroupAlgebraElement {}

impl fmt::Display for CycloGroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Substitutes `q_i ↦ ζ` (a primitive n-th root of unity) in one
/// coefficient; a factor `1 - ζ^d` with `n | d` is a pole.
fn specialize_coefficient(f: &RatFun, field: &CyclotomicField) -> Result<CyclotomicElement> {
    let n = field.n() as i64;
    let mut num = field.zero();
    for (e, c) in f.numerator().terms() {
        num = num.checked_add(&field.zeta_pow(e.degree()).scale(c))?;
    }
    let mut den = field.from_rational(Rational::one());
    for (m, k) in f.denominator() {
        if m.degree().rem_euclid(n) == 0 {
            return Err(Error::Pole(format!("1 - zeta^{} vanishes", m.degree())));
        }
        let factor = field.from_rational(Rational::one()).checked_add(&-&field.zeta_pow(m.degree()))?;
        for _ in 0..k {
            den = den.checked_mul(&factor)?;
        }
    }
    num.checked_mul(&den.inverse()?)
}

/// Every coefficient of `A` at `q_1 = ⋯ = q_n = ζ`.
pub fn specialize_root_of_unity(a: &GroupAlgebraElement) -> Result<CycloGroupAlgebraElement> {
    let n = a.n();
    let field = CyclotomicField::new(n);
    let mut terms = Vec::with_capacity(a.len());
    for (sigma, f) in a.terms() {
        terms.push((sigma.clone(), specialize_coefficient(f, &field)?));
    }
    CycloGroupAlgebraElement::from_terms(n, terms)
}

/// `κ_n = (1/n) Σ_σ ζ^{maj σ} σ`.
pub fn klyachko_idempotent(n: usize) -> CycloGroupAlgebraElement {
    let field = CyclotomicField::new(n);
    let inv_n = Rational::new(1.into(), (n as i64).into());
    CycloGroupAlgebraElement::from_terms(
        n,
        Permutation::all(n).map(|s| {
            let c = field.zeta_pow(s.maj() as i64).scale(&inv_n);
            (s, c)
        }),
    )
    .expect("degrees match")
}

/// `η_n = (1/n) Σ_{i=0}^{n-1} ζ^{-i} γ^i`.
pub fn eta_element(n: usize) -> CycloGroupAlgebraElement {
    let field = CyclotomicField::new(n);
    let inv_n = Rational::new(1.into(), (n as i64).into());
    CycloGroupAlgebraElement::from_terms(
        n,
        (0..n as i64).map(|i| (Permutation::cycle_power(n, i), field.zeta_pow(-i).scale(&inv_n))),
    )
    .expect("degrees match")
}

/// `e_n ↦ κ_n` coefficient-wise, `θ_n ↦ η_n`, and `κ_n κ_n = κ_n`.
pub fn check_specialization(n: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("cyclotomic", Method::Symbolic).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            let kappa = klyachko_idempotent(n);
            let image = specialize_root_of_unity(&klyachko_element(n))?;
            for sigma in Permutation::all(n) {
                let (a, b) = (image.coefficient(&sigma), kappa.coefficient(&sigma));
                r.record(format!("e->kappa [{sigma}]"), a == b, || {
                    format!("got {}, expected {}", a.render(), b.render())
                });
            }
            let eta = eta_element(n);
            let image_theta = specialize_root_of_unity(&partner_element(n))?;
            r.record("theta->eta", image_theta == eta, || image_theta.render());
            let sq = kappa.product(&kappa)?;
            r.record("kappa*kappa=kappa", sq == kappa, || sq.render());
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingMode;

    #[test]
    fn e3_specializes_to_kappa3() {
        let image = specialize_root_of_unity(&klyachko_element(3)).unwrap();
        assert_eq!(image, klyachko_idempotent(3));
    }

    #[test]
    fn identity_specializes_to_identity() {
        let one = GroupAlgebraElement::basis(RingMode::cyclic(4), Permutation::identity(4)).unwrap();
        let image = specialize_root_of_unity(&one).unwrap();
        assert_eq!(image.len(), 1);
        assert_eq!(
            image.coefficient(&Permutation::identity(4)),
            image.field().from_rational(Rational::one())
        );
    }

    #[test]
    fn kappa4_is_idempotent() {
        let k = klyachko_idempotent(4);
        assert_eq!(k.product(&k).unwrap(), k);
    }

    #[test]
    fn suite_passes_small() {
        for n in 1..=4 {
            let r = check_specialization(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
