//! The twisted group algebra `K(q)S_n`.
//!
//! Elements are sparse maps from permutations to rational functions. The
//! product is the crossed product `fσ ⋉ gτ = (f · σ·g) στ`.

mod ideal;
mod klyachko;
mod specialize;
mod values;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::ring::{Rational, RingMode};

pub use ideal::{check_ideal, ideal_basis, ideal_spanning_scalar};
pub use klyachko::{
    check_gamma_lemma, check_idempotency, check_idempotency_of, check_lemma_suite, check_lonelabel, check_pare_suite,
    gmaj, gmaj_denominator, gmaj_in, gmaj_numerator, klyachko_element, klyachko_element_in,
    lonelabel_sum, pare_sum, partner_element, partner_element_in, LemmaPart,
};
pub use values::{first_value_difference, ElementAtPoint, EvaluatedElement, Fraction};
pub use specialize::{
    check_specialization, eta_element, klyachko_idempotent, specialize_root_of_unity,
    CycloGroupAlgebraElement,
};

/// Finite sum `Σ f_σ σ` with coefficients in one ring mode. Zero coefficients
/// are never stored.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    mode: RingMode,
    coeffs: BTreeMap<Permutation, RatFun>,
}

impl GroupAlgebraElement {
    pub fn zero(mode: RingMode) -> Self {
        GroupAlgebraElement { mode, coeffs: BTreeMap::new() }
    }

    /// `1 · σ`.
    pub fn basis(mode: RingMode, sigma: Permutation) -> Result<Self> {
        Self::from_terms(mode, [(sigma, RatFun::one(mode))])
    }

    /// Sums the given terms; repeated permutations are added together.
    pub fn from_terms(
        mode: RingMode,
        terms: impl IntoIterator<Item = (Permutation, RatFun)>,
    ) -> Result<Self> {
        let mut out = Self::zero(mode);
        for (sigma, f) in terms {
            out.add_term(sigma, f)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, f: RatFun) -> Result<()> {
        if sigma.degree() != self.mode.n() {
            return Err(Error::Dimension { expected: self.mode.n(), found: sigma.degree() });
        }
        if f.mode() != self.mode {
            return Err(Error::ModeMismatch(self.mode.to_string(), f.mode().to_string()));
        }
        let sum = match self.coeffs.remove(&sigma) {
            Some(g) => g.checked_add(&f)?,
            None => f,
        };
        if !sum.is_zero() {
            self.coeffs.insert(sigma, sum);
        }
        Ok(())
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.mode.n()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> RatFun {
        self.coeffs.get(sigma).cloned().unwrap_or_else(|| RatFun::zero(self.mode))
    }

    /// Terms in lexicographic order of permutations.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &RatFun)> + '_ {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.coeffs.keys()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode.to_string(), other.mode.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (sigma, f) in &other.coeffs {
            out.add_term(sigma.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(s, f)| (s.clone(), f.scale(c)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        GroupAlgebraElement { mode: self.mode, coeffs }
    }

    /// `f · A`, multiplying every coefficient by the scalar `f` (which the
    /// twisted product does not move).
    pub fn scalar_mul(&self, f: &RatFun) -> Result<Self> {
        let mut out = Self::zero(self.mode);
        for (sigma, g) in &self.coeffs {
            out.add_term(sigma.clone(), f.checked_mul(g)?)?;
        }
        Ok(out)
    }

    /// `A ⋉ B`: the coefficient of `ρ` is `Σ_{στ = ρ} f_σ · σ·g_τ`.
    pub fn twisted_product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut grouped: BTreeMap<Permutation, Vec<RatFun>> = BTreeMap::new();
        for (sigma, f) in &self.coeffs {
            for (tau, g) in &other.coeffs {
                let term = f.mul_unreduced(&g.apply_permutation(sigma)?);
                grouped.entry(sigma.compose(tau)?).or_default().push(term);
            }
        }
        let mut coeffs = BTreeMap::new();
        for (rho, terms) in grouped {
            let sum = RatFun::sum(self.mode, &terms)?;
            if !sum.is_zero() {
                coeffs.insert(rho, sum);
            }
        }
        Ok(GroupAlgebraElement { mode: self.mode, coeffs })
    }

    /// Exact equality of all coefficients.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// The smallest permutation whose coefficients differ, if any.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Permutation>> {
        self.check_compatible(other)?;
        let keys: std::collections::BTreeSet<&Permutation> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        for sigma in keys {
            if !self.coefficient(sigma).equals(&other.coefficient(sigma))? {
                return Ok(Some(sigma.clone()));
            }
        }
        Ok(None)
    }

    /// Coefficient values at `point`; zero values are dropped.
    pub fn evaluate(&self, point: &[Rational]) -> Result<EvaluatedElement> {
        crate::ring::poly_check_point(self.mode, point)?;
        values::evaluate_element(&self.coeffs, point)
    }

    /// Coefficient values of `A ⋉ B` at `point`, without forming the product
    /// symbolically. Uses `(σ·g)(p) = g(p_{σ(1)}, …, p_{σ(n)})`.
    pub fn twisted_product_at(&self, other: &Self, point: &[Rational]) -> Result<EvaluatedElement> {
        self.check_compatible(other)?;
        crate::ring::poly_check_point(self.mode, point)?;
        values::twisted_product_values(&self.coeffs, &other.coeffs, point)
    }

    /// Coefficient values at `point`, for many linear combinations.
    pub fn at_point(&self, point: &[Rational]) -> Result<ElementAtPoint<'_>> {
        crate::ring::poly_check_point(self.mode, point)?;
        ElementAtPoint::new(&self.coeffs, point)
    }

    /// One line per term, `<coefficient> * <permutation>`, in lexicographic
    /// order of permutations.
    pub fn render(&self, symbol: char) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(sigma, f)| format!("{} * {}", f.render(symbol), sigma))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.mode.symbol()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Polynomial;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn twisted_product_example() {
        let mode = RingMode::cyclic(3);
        let a = GroupAlgebraElement::basis(mode, p("231")).unwrap();
        let f = RatFun::parse("q1*q3 / (1 - q1)(1 - q1*q3)", mode).unwrap();
        let b = GroupAlgebraElement::from_terms(mode, [(p("132"), f)]).unwrap();
        let prod = a.twisted_product(&b).unwrap();
        let want = RatFun::parse("q2*q1 / (1 - q2)(1 - q2*q1)", mode).unwrap();
        let expected = GroupAlgebraElement::from_terms(mode, [(p("213"), want)]).unwrap();
        assert!(prod.equals(&expected).unwrap());
    }

    #[test]
    fn identity_is_a_two_sided_unit() {
        let mode = RingMode::cyclic(3);
        let one = GroupAlgebraElement::basis(mode, Permutation::identity(3)).unwrap();
        let e = klyachko_element(3);
        assert!(one.twisted_product(&e).unwrap().equals(&e).unwrap());
        assert!(e.twisted_product(&one).unwrap().equals(&e).unwrap());
    }

    #[test]
    fn evaluated_product_matches_symbolic() {
        let e = klyachko_element(3);
        let th = partner_element(3);
        let mut rng = crate::sample::rng_from_seed(3);
        let pt = crate::sample::random_point(e.mode(), &mut rng);
        let sym = e.twisted_product(&th).unwrap().evaluate(&pt).unwrap();
        let fast = e.twisted_product_at(&th, &pt).unwrap();
        assert_eq!(first_value_difference(&sym, &fast), None);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mode = RingMode::cyclic(2);
        let f = RatFun::from_polynomial(Polynomial::var(mode, 1).unwrap());
        let a = GroupAlgebraElement::from_terms(
            mode,
            [(p("21"), f.clone()), (p("21"), -&f)],
        )
        .unwrap();
        assert!(a.is_zero());
        assert_eq!(a.render('q'), "0");
    }

    #[test]
    fn rejects_wrong_degree() {
        let mode = RingMode::cyclic(3);
        assert!(GroupAlgebraElement::basis(mode, p("21")).is_err());
    }
}
