use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exponents::canonical_unchecked;
use super::{format_rational, Exponents, Rational, RingMode};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by canonical exponent vectors, so two
/// equal polynomials have identical term maps and identical renderings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    mode: RingMode,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(mode: RingMode) -> Self {
        Polynomial { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: RingMode) -> Self {
        Self::constant(mode, Rational::one())
    }

    pub fn constant(mode: RingMode, c: Rational) -> Self {
        let mut p = Self::zero(mode);
        p.add_term(Exponents::zero(mode.n()), c);
        p
    }

    pub fn monomial(mode: RingMode, exps: Exponents, coeff: Rational) -> Result<Self> {
        Self::from_terms(mode, [(exps, coeff)])
    }

    /// `q_i`, 1-indexed.
    pub fn var(mode: RingMode, i: usize) -> Result<Self> {
        if i == 0 || i > mode.n() {
            return Err(Error::Dimension { expected: mode.n(), found: i });
        }
        Self::monomial(mode, Exponents::unit(mode.n(), i), Rational::one())
    }

    /// `1 - q^m`.
    pub fn one_minus_monomial(mode: RingMode, m: &Exponents) -> Result<Self> {
        Self::from_terms(
            mode,
            [(Exponents::zero(mode.n()), Rational::one()), (m.clone(), -Rational::one())],
        )
    }

    /// Build from arbitrary (possibly repeated, possibly non-canonical) terms.
    pub fn from_terms(
        mode: RingMode,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(mode);
        for (e, c) in terms {
            if e.len() != mode.n() {
                return Err(Error::Dimension { expected: mode.n(), found: e.len() });
            }
            p.add_term(canonical_unchecked(e, mode), c);
        }
        Ok(p)
    }

    /// Adds `c·q^e` for an `e` already known to be canonical.
    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> Rational {
        let key = canonical_unchecked(e.clone(), self.mode);
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_monomial(&self) -> Option<(&Exponents, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Smallest total degree among the terms (`None` for zero).
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().map(Exponents::degree)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    fn check_mode(&self, other: &Polynomial) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode.to_string(), other.mode.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_mode(other)?;
        let mut out = Polynomial::zero(self.mode);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(canonical_unchecked(ea.add(eb), self.mode), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.mode);
        }
        Polynomial {
            mode: self.mode,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by `c·q^e`.
    pub fn mul_monomial(&self, e: &Exponents, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.mode);
        }
        Polynomial {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (canonical_unchecked(x.add(e), self.mode), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.mode);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The action `σ·f(q) = f(q_{σ(1)}, …, q_{σ(n)})`: the exponent of
    /// `q_{σ(i)}` in the image is the exponent of `q_i` in `self`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Polynomial> {
        if sigma.degree() != self.mode.n() {
            return Err(Error::Dimension { expected: self.mode.n(), found: sigma.degree() });
        }
        let mut out = Polynomial::zero(self.mode);
        for (e, c) in &self.terms {
            out.add_term(canonical_unchecked(permute_exponents(e, sigma), self.mode), c.clone());
        }
        Ok(out)
    }

    /// Exact value at `point`.
    ///
    /// In cyclic mode the coordinates must multiply to 1.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point)?;
        self.evaluate_unchecked(point)
    }

    /// Evaluation without the relation check, for callers that validated the
    /// point (or a permutation of it) already.
    pub(crate) fn evaluate_unchecked(&self, point: &[Rational]) -> Result<Rational> {
        if let Some((e, c)) = self.as_monomial() {
            let (num, den) = monomial_value(e, point)?;
            return Ok(c * Rational::new(num, den));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let (num, den) = monomial_value(e, point)?;
            acc += c * Rational::new(num, den);
        }
        Ok(acc)
    }

    pub(crate) fn check_point(&self, point: &[Rational]) -> Result<()> {
        check_point(self.mode, point)
    }

    /// Returns `Some(q)` with `q·d = self`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_mode(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(self.mode)));
        }
        if let Some((m, c)) = d.as_scaled_one_minus_monomial() {
            return Ok(self
                .div_one_minus_monomial(&m)
                .map(|q| q.scale(&c.recip())));
        }
        Ok(self.long_division(d))
    }

    /// Recognizes `c·(1 - q^m)` with `m ≠ 0`.
    fn as_scaled_one_minus_monomial(&self) -> Option<(Exponents, Rational)> {
        if self.terms.len() != 2 {
            return None;
        }
        let mut it = self.terms.iter();
        let (e1, c1) = it.next()?;
        let (e2, c2) = it.next()?;
        let (m, c, cm) = if e1.is_zero() {
            (e2, c1, c2)
        } else if e2.is_zero() {
            (e1, c2, c1)
        } else {
            return None;
        };
        if *cm == -c.clone() {
            Some((m.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Division by `1 - q^m`: splits the terms into classes modulo `m`; each
    /// class is a Laurent polynomial in `t = q^m` and is divisible by `1 - t`
    /// iff its coefficients sum to zero, the quotient being the partial sums.
    pub(crate) fn div_one_minus_monomial(&self, m: &Exponents) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !m.is_lex_positive() {
            // 1 - q^m = -q^m (1 - q^{-m})
            let neg = m.neg();
            let q = self.div_one_minus_monomial(&neg)?;
            return Some(q.mul_monomial(&neg, &-Rational::one()));
        }
        let pivot = m.as_slice().iter().position(|&x| x != 0)?;
        let step = m.as_slice()[pivot];
        let mut classes: BTreeMap<Exponents, BTreeMap<i32, &Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.as_slice()[pivot].div_euclid(step);
            let base = e.sub(&m.scale(k));
            classes.entry(base).or_default().insert(k, c);
        }
        let mut out = Polynomial::zero(self.mode);
        for (base, coeffs) in classes {
            let mut partial = Rational::zero();
            let lo = *coeffs.keys().next()?;
            let hi = *coeffs.keys().next_back()?;
            for k in lo..=hi {
                if let Some(c) = coeffs.get(&k) {
                    partial += *c;
                }
                if k == hi {
                    if !partial.is_zero() {
                        return None;
                    }
                } else {
                    out.add_term(canonical_unchecked(base.add(&m.scale(k)), self.mode), partial.clone());
                }
            }
        }
        Some(out)
    }

    /// Generic exact division by repeated leading-term elimination. Quotient
    /// exponents are confined to the box implied by Newton polytopes, which
    /// bounds the search when `d` does not divide.
    fn long_division(&self, d: &Polynomial) -> Option<Polynomial> {
        let n = self.mode.n();
        let (lo_p, hi_p) = self.exponent_box();
        let (lo_d, hi_d) = d.exponent_box();
        let lo: Vec<i32> = (0..n).map(|j| lo_p[j] - lo_d[j]).collect();
        let hi: Vec<i32> = (0..n).map(|j| hi_p[j] - hi_d[j]).collect();
        let (lead_e, lead_c) = d.leading_term()?;
        let (lead_e, lead_c) = (lead_e.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.mode);
        while let Some((e, c)) = rem.leading_term() {
            let t = e.sub(&lead_e);
            let inside = t.as_slice().iter().enumerate().all(|(j, &x)| lo[j] <= x && x <= hi[j]);
            if !inside {
                return None;
            }
            let coeff = c / &lead_c;
            rem = &rem - &d.mul_monomial(&t, &coeff);
            quot.add_term(canonical_unchecked(t, self.mode), coeff);
        }
        Some(quot)
    }

    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.mode.n();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for e in self.terms.keys() {
            for (j, &x) in e.as_slice().iter().enumerate() {
                lo[j] = lo[j].min(x);
                hi[j] = hi[j].max(x);
            }
        }
        (lo, hi)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> Polynomial {
        Polynomial {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at `max_degree`, skipping the discarded products.
    /// Intended for polynomials with non-negative exponents.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: i64) -> Result<Polynomial> {
        self.check_mode(other)?;
        let mut out = Polynomial::zero(self.mode);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            for (eb, cb) in &other.terms {
                if da + eb.degree() > max_degree {
                    // terms are sorted by degree
                    break;
                }
                out.add_term(canonical_unchecked(ea.add(eb), self.mode), ca * cb);
            }
        }
        Ok(out)
    }

    /// Substitutes `x_i ↦ x_{targets[i-1]}` and moves the result into `mode`.
    pub fn relabel(&self, targets: &[usize], mode: RingMode) -> Result<Polynomial> {
        if targets.len() > self.mode.n() {
            return Err(Error::Dimension { expected: self.mode.n(), found: targets.len() });
        }
        let mut out = Polynomial::zero(mode);
        for (e, c) in &self.terms {
            let mut exps = vec![0; mode.n()];
            for (i, &x) in e.as_slice().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let target = *targets.get(i).ok_or(Error::Dimension {
                    expected: targets.len(),
                    found: i + 1,
                })?;
                if target == 0 || target > mode.n() {
                    return Err(Error::Dimension { expected: mode.n(), found: target });
                }
                exps[target - 1] += x;
            }
            out.add_term(canonical_unchecked(Exponents::new(exps), mode), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in another mode with the same variable count
    /// (e.g. reduces a free polynomial modulo `q_1⋯q_n = 1`).
    pub fn to_mode(&self, mode: RingMode) -> Result<Polynomial> {
        if mode.n() != self.mode.n() {
            return Err(Error::Dimension { expected: self.mode.n(), found: mode.n() });
        }
        Polynomial::from_terms(mode, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Text rendering with the given variable letter, terms in ascending
    /// graded order, e.g. `1 - 3/2*q1 + q1*q2^-1`.
    pub fn render(&self, symbol: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = render_monomial(e, symbol);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&format_rational(&abs)),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn parse(text: &str, mode: RingMode) -> Result<Polynomial> {
        super::parse::parse_polynomial(text, mode)
    }
}

pub(crate) fn check_point(mode: RingMode, point: &[Rational]) -> Result<()> {
    if point.len() != mode.n() {
        return Err(Error::Dimension { expected: mode.n(), found: point.len() });
    }
    if mode.is_cyclic() {
        let product: Rational = point.iter().product();
        if !product.is_one() {
            return Err(Error::Constraint(format_rational(&product)));
        }
    }
    Ok(())
}

/// `(σ·e)[σ(i)] = e[i]`.
pub(crate) fn permute_exponents(e: &Exponents, sigma: &Permutation) -> Exponents {
    let mut out = vec![0; e.len()];
    for (i, &x) in e.as_slice().iter().enumerate() {
        out[sigma.image(i + 1) - 1] = x;
    }
    Exponents::new(out)
}

/// Unreduced numerator and denominator of `q^e` at `point`.
pub(crate) fn monomial_value(e: &Exponents, point: &[Rational]) -> Result<(BigInt, BigInt)> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (&x, p) in e.as_slice().iter().zip(point) {
        if x == 0 {
            continue;
        }
        if p.is_zero() {
            if x < 0 {
                return Err(Error::Pole(format!("negative power of a zero coordinate in {e}")));
            }
            return Ok((BigInt::zero(), BigInt::one()));
        }
        let k = x.unsigned_abs();
        let (a, b) = if x > 0 { (p.numer(), p.denom()) } else { (p.denom(), p.numer()) };
        num *= num_traits::pow(a.clone(), k as usize);
        den *= num_traits::pow(b.clone(), k as usize);
    }
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

fn render_monomial(e: &Exponents, symbol: char) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.as_slice().iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(format!("{symbol}{}", i + 1)),
            _ => parts.push(format!("{symbol}{}^{x}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.mode.symbol()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mode mismatch; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial modes differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial modes differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial modes differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn p(text: &str, mode: RingMode) -> Polynomial {
        Polynomial::parse(text, mode).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = RingMode::free(2);
        assert_eq!(&p("1 - x1", f2) * &p("1 + x1", f2), p("1 - x1^2", f2));
        assert_eq!(&p("1 - x1", f2) + &p("x1 - x1*x2", f2), p("1 - x1*x2", f2));
        let c3 = RingMode::cyclic(3);
        assert!((&p("q1*q2", c3) * &p("q3", c3)).is_one());
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let a = Polynomial::one(RingMode::free(2));
        let b = Polynomial::one(RingMode::cyclic(2));
        assert!(matches!(a.checked_add(&b), Err(Error::ModeMismatch(..))));
    }

    #[test]
    fn division_examples() {
        let f2 = RingMode::free(2);
        let q = p("1 - x1^2", f2).exact_div(&p("1 - x1", f2)).unwrap();
        assert_eq!(q, Some(p("1 + x1", f2)));
        assert_eq!(p("1 - x1*x2", f2).exact_div(&p("1 - x1", f2)).unwrap(), None);
        assert_eq!(Polynomial::zero(f2).exact_div(&p("1 - x1", f2)).unwrap(), Some(Polynomial::zero(f2)));
        assert_eq!(p("x1", f2).exact_div(&Polynomial::zero(f2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn long_division_agrees_with_binomial_path() {
        let c3 = RingMode::cyclic(3);
        let d = p("1 - q1*q3^-1", c3);
        let quotient = p("2 + q1^-2*q2 - 1/3*q2^3", c3);
        let prod = &quotient * &d;
        assert_eq!(prod.long_division(&d), Some(quotient.clone()));
        assert_eq!(prod.exact_div(&d).unwrap(), Some(quotient));
        let general = p("1 + q1 + q2^-1", c3);
        let prod2 = &prod * &general;
        assert_eq!(prod2.exact_div(&general).unwrap(), Some(prod.clone()));
        assert_eq!(prod.exact_div(&general).unwrap(), None);
    }

    #[test]
    fn permutation_action_example() {
        let c3 = RingMode::cyclic(3);
        let sigma = Permutation::parse("231").unwrap();
        assert_eq!(p("q1*q3", c3).apply_permutation(&sigma).unwrap(), p("q2*q1", c3));
        assert!(Polynomial::one(c3).apply_permutation(&sigma).unwrap().is_one());
        let bad = Permutation::parse("12").unwrap();
        assert!(matches!(p("q1", c3).apply_permutation(&bad), Err(Error::Dimension { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let c2 = RingMode::cyclic(2);
        let pt = [int(2), rat(1, 2)];
        assert_eq!(p("q1*q2", c2).evaluate(&pt).unwrap(), int(1));
        assert_eq!(p("q2", c2).evaluate(&pt).unwrap(), rat(1, 2));
        assert_eq!(p("q2", c2).terms().next().unwrap().0, &Exponents::new(vec![-1, 0]));
        assert_eq!(p("1 - x1", RingMode::free(2)).evaluate(&[int(3), rat(1, 3)]).unwrap(), int(-2));
        assert!(matches!(p("q1", c2).evaluate(&[int(2), int(2)]), Err(Error::Constraint(_))));
        assert!(matches!(
            p("x1^-1", RingMode::free(1)).evaluate(&[int(0)]),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn rendering_is_graded() {
        let f2 = RingMode::free(2);
        assert_eq!(p("x2 + x1 + 1 - x1^2", f2).render('q'), "1 + q1 + q2 - q1^2");
        assert_eq!(p("-3/2*x1*x2^-1", f2).to_string(), "-3/2*x1*x2^-1");
        assert_eq!(Polynomial::zero(f2).to_string(), "0");
    }
}
