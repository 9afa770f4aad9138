//! Rational functions whose denominators are products of `(1 - monomial)`
//! factors, which is every denominator `gmaj_q` and its sums produce.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ring::{Exponents, Polynomial, Rational, RingMode};

/// `num / Π (1 - q^m)^k`.
///
/// Each factor monomial `m` is canonical, nonzero and lexicographically
/// positive; units produced while normalizing are folded into `num`. Zero is
/// stored as `0` over an empty denominator.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Polynomial,
    den: BTreeMap<Exponents, u32>,
}

impl RatFun {
    pub fn zero(mode: RingMode) -> Self {
        RatFun { num: Polynomial::zero(mode), den: BTreeMap::new() }
    }

    pub fn one(mode: RingMode) -> Self {
        Self::from_polynomial(Polynomial::one(mode))
    }

    pub fn constant(mode: RingMode, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(mode, c))
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        RatFun { num, den: BTreeMap::new() }
    }

    /// `num / Π (1 - q^m)` over the given factor monomials, normalized and
    /// reduced.
    pub fn new(num: Polynomial, factors: impl IntoIterator<Item = Exponents>) -> Result<Self> {
        let mode = num.mode();
        let mut den: BTreeMap<Exponents, u32> = BTreeMap::new();
        let mut num = num;
        for m in factors {
            let m = crate::ring::canonicalize_exponents(&m, mode)?;
            if m.is_zero() {
                let shown = Polynomial::monomial(mode, m, Rational::one())?;
                return Err(Error::ZeroDenominator(shown.to_string()));
            }
            let m = if m.is_lex_positive() {
                m
            } else {
                // 1/(1 - q^m) = -q^{-m}/(1 - q^{-m})
                let m = m.neg();
                num = num.mul_monomial(&m, &-Rational::one());
                m
            };
            *den.entry(m).or_insert(0) += 1;
        }
        Ok(Self::reduced(num, den))
    }

    /// Cancels every factor that divides the numerator exactly.
    fn reduced(mut num: Polynomial, mut den: BTreeMap<Exponents, u32>) -> Self {
        if num.is_zero() {
            return RatFun::zero(num.mode());
        }
        for (m, mult) in den.iter_mut() {
            while *mult > 0 {
                match num.div_one_minus_monomial(m) {
                    Some(q) => {
                        num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, k| *k > 0);
        RatFun { num, den }
    }

    pub fn parse(text: &str, mode: RingMode) -> Result<Self> {
        let (num, factors) = crate::ring::parse::parse_fraction(text, mode)?;
        Self::new(num, factors)
    }

    pub fn mode(&self) -> RingMode {
        self.num.mode()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Factor monomials with multiplicities, in ascending graded order.
    pub fn denominator(&self) -> impl Iterator<Item = (&Exponents, u32)> + '_ {
        self.den.iter().map(|(m, &k)| (m, k))
    }

    pub fn denominator_polynomial(&self) -> Polynomial {
        let mode = self.mode();
        let mut acc = Polynomial::one(mode);
        for (m, &k) in &self.den {
            let f = Polynomial::one_minus_monomial(mode, m).expect("canonical factor");
            acc = &acc * &f.pow(k);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn check_mode(&self, other: &RatFun) -> Result<()> {
        if self.mode() != other.mode() {
            return Err(Error::ModeMismatch(self.mode().to_string(), other.mode().to_string()));
        }
        Ok(())
    }

    /// Least common multiple of the two factor multisets.
    fn lcm_den(&self, other: &RatFun) -> BTreeMap<Exponents, u32> {
        let mut lcm = self.den.clone();
        for (m, &k) in &other.den {
            let slot = lcm.entry(m.clone()).or_insert(0);
            *slot = (*slot).max(k);
        }
        lcm
    }

    /// Numerator rewritten over the denominator `target ⊇ self.den`.
    fn numerator_over(&self, target: &BTreeMap<Exponents, u32>) -> Polynomial {
        let mode = self.mode();
        let mut num = self.num.clone();
        for (m, &k) in target {
            let have = self.den.get(m).copied().unwrap_or(0);
            if k > have {
                let f = Polynomial::one_minus_monomial(mode, m).expect("canonical factor");
                num = &num * &f.pow(k - have);
            }
        }
        num
    }

    pub fn checked_add(&self, other: &RatFun) -> Result<RatFun> {
        self.check_mode(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let lcm = self.lcm_den(other);
        let num = &self.numerator_over(&lcm) + &other.numerator_over(&lcm);
        Ok(Self::reduced(num, lcm))
    }

    pub fn checked_mul(&self, other: &RatFun) -> Result<RatFun> {
        self.check_mode(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFun::zero(self.mode()));
        }
        let num = &self.num * &other.num;
        let mut den = self.den.clone();
        for (m, &k) in &other.den {
            *den.entry(m.clone()).or_insert(0) += k;
        }
        Ok(Self::reduced(num, den))
    }

    /// Product without the cancellation probes, for terms about to be summed.
    pub(crate) fn mul_unreduced(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero(self.mode());
        }
        let num = &self.num * &other.num;
        let mut den = self.den.clone();
        for (m, &k) in &other.den {
            *den.entry(m.clone()).or_insert(0) += k;
        }
        RatFun { num, den }
    }

    /// Sum over a single common denominator, reduced once at the end.
    pub fn sum<'a>(mode: RingMode, terms: impl IntoIterator<Item = &'a RatFun>) -> Result<RatFun> {
        let terms: Vec<&RatFun> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let mut lcm: BTreeMap<Exponents, u32> = BTreeMap::new();
        for t in &terms {
            t.check_mode(&RatFun::zero(mode))?;
            for (m, &k) in &t.den {
                let slot = lcm.entry(m.clone()).or_insert(0);
                *slot = (*slot).max(k);
            }
        }
        let mut num = Polynomial::zero(mode);
        for t in &terms {
            num = &num + &t.numerator_over(&lcm);
        }
        Ok(Self::reduced(num, lcm))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.mode());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<RatFun> {
        self.checked_mul(&RatFun::from_polynomial(p.clone()))
    }

    /// Decides equality in the fraction field: both numerators are brought
    /// over the common denominator and compared as canonical polynomials.
    pub fn equals(&self, other: &RatFun) -> Result<bool> {
        self.check_mode(other)?;
        if self.den == other.den {
            return Ok(self.num == other.num);
        }
        let lcm = self.lcm_den(other);
        Ok(self.numerator_over(&lcm) == other.numerator_over(&lcm))
    }

    /// The variable-permuting action, applied to numerator and factors.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<RatFun> {
        let mode = self.mode();
        let mut num = self.num.apply_permutation(sigma)?;
        let mut den = BTreeMap::new();
        for (m, &k) in &self.den {
            let image = crate::ring::canonicalize_exponents(
                &crate::ring::poly_permute_exponents(m, sigma),
                mode,
            )?;
            let image = if image.is_lex_positive() {
                image
            } else {
                let flipped = image.neg();
                let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
                num = num.mul_monomial(&flipped.scale(k as i32), &sign);
                flipped
            };
            *den.entry(image).or_insert(0) += k;
        }
        // the action is a ring automorphism: no new cancellations appear
        Ok(RatFun { num, den })
    }

    /// Exact value at `point`; a vanishing factor is a pole.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        crate::ring::poly_check_point(self.mode(), point)?;
        self.evaluate_unchecked(point)
    }

    pub(crate) fn evaluate_unchecked(&self, point: &[Rational]) -> Result<Rational> {
        let num = self.num.evaluate_unchecked(point)?;
        if self.den.is_empty() || num.is_zero() {
            return Ok(num);
        }
        let mut top = BigInt::one();
        let mut bottom = BigInt::one();
        for (m, &k) in &self.den {
            let (a, b) = crate::ring::poly_monomial_value(m, point)?;
            let diff = &b - &a;
            if diff.is_zero() {
                return Err(Error::Pole(format!("1 - {} vanishes", render_factor(m, self.mode()))));
            }
            for _ in 0..k {
                top *= &b;
                bottom *= &diff;
            }
        }
        Ok(num * Rational::new(top, bottom))
    }

    /// Value at a seeded random point satisfying the ring relation.
    pub fn random_evaluate(&self, seed: u64) -> Result<Rational> {
        let mut rng = crate::sample::rng_from_seed(seed);
        crate::sample::evaluate_at_random_point(self.mode(), &mut rng, |pt| self.evaluate(pt))
            .map(|(_, v)| v)
    }

    /// Reinterprets numerator and factors in `mode` (same variable count).
    pub fn to_mode(&self, mode: RingMode) -> Result<RatFun> {
        let num = self.num.to_mode(mode)?;
        let mut factors = Vec::new();
        for (m, &k) in &self.den {
            for _ in 0..k {
                factors.push(m.clone());
            }
        }
        RatFun::new(num, factors)
    }

    /// Power-series expansion truncated at total degree `max_degree`, via
    /// `1/(1 - m) = Σ m^k`. Every factor monomial must have positive degree.
    pub fn expand_truncated(&self, max_degree: i64) -> Result<Polynomial> {
        let mode = self.mode();
        let mut acc = self.num.truncate(max_degree);
        for (m, &k) in &self.den {
            let d = m.degree();
            if d <= 0 {
                return Err(Error::Pole(format!(
                    "factor 1 - {} has no power-series expansion",
                    render_factor(m, mode)
                )));
            }
            let mut geometric = Polynomial::zero(mode);
            let mut j = 0;
            while j * d <= max_degree {
                geometric = &geometric
                    + &Polynomial::monomial(mode, m.scale(j as i32), Rational::one())?;
                j += 1;
            }
            for _ in 0..k {
                acc = acc.mul_truncated(&geometric, max_degree)?;
            }
        }
        Ok(acc)
    }

    /// `num / (1 - m1)(1 - m2)^2…`, factors in ascending graded order.
    pub fn render(&self, symbol: char) -> String {
        let num = self.num.render(symbol);
        if self.den.is_empty() {
            return num;
        }
        let mut out = if self.num.len() > 1 { format!("({num})") } else { num };
        out.push_str(" / ");
        for (m, &k) in &self.den {
            let mono = Polynomial::monomial(self.mode(), m.clone(), Rational::one())
                .expect("canonical factor")
                .render(symbol);
            out.push_str(&format!("(1 - {mono})"));
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
        out
    }
}

fn render_factor(m: &Exponents, mode: RingMode) -> String {
    Polynomial::monomial(mode, m.clone(), Rational::one())
        .map(|p| p.to_string())
        .unwrap_or_else(|_| m.to_string())
}

impl PartialEq for RatFun {
    /// Semantic equality; values in different modes are never equal.
    fn eq(&self, other: &RatFun) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.mode().symbol()))
    }
}

impl From<Polynomial> for RatFun {
    fn from(p: Polynomial) -> RatFun {
        RatFun::from_polynomial(p)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    /// Panics on mode mismatch.
    fn add(self, rhs: &RatFun) -> RatFun {
        self.checked_add(rhs).expect("rational function modes differ")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.checked_add(&-rhs).expect("rational function modes differ")
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        self.checked_mul(rhs).expect("rational function modes differ")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}
