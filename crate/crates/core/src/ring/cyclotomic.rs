use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Exponents, Polynomial, Rational, RingMode};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
type Dense = Vec<Rational>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn dense_mul(a: &[Rational], b: &[Rational]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn dense_sub(a: &[Rational], b: &[Rational]) -> Dense {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `d` must be nonzero.
fn dense_divrem(a: &[Rational], d: &[Rational]) -> (Dense, Dense) {
    let mut rem: Dense = a.to_vec();
    trim(&mut rem);
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] / &lead;
        for (j, dj) in d.iter().enumerate() {
            let idx = k - dd + j;
            rem[idx] -= &c * dj;
        }
        quot[k - dd] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn euler_totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first,
/// obtained by dividing `xⁿ - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_coefficients(n: usize) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut poly: Dense = vec![Rational::zero(); n + 1];
    poly[0] = -Rational::one();
    poly[n] = Rational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = dense_divrem(&poly, &cyclotomic_coefficients(d));
        debug_assert!(r.is_empty());
        poly = q;
    }
    poly
}

/// `Φ_n` as a univariate polynomial in `x1`.
pub fn cyclotomic_polynomial(n: usize) -> Polynomial {
    let mode = RingMode::free(1);
    Polynomial::from_terms(
        mode,
        cyclotomic_coefficients(n)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Exponents::new(vec![k as i32]), c)),
    )
    .expect("univariate exponents")
}

/// Element of `Q(ζ)` for a primitive n-th root of unity `ζ`, stored as the
/// residue of a polynomial in `ζ` modulo `Φ_n`.
#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    n: usize,
    modulus: Arc<Vec<Rational>>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

/// Shared modulus for building elements of one field.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: usize,
    modulus: Arc<Vec<Rational>>,
}

impl CyclotomicField {
    pub fn new(n: usize) -> Self {
        CyclotomicField { n, modulus: Arc::new(cyclotomic_coefficients(n)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, p: Dense) -> CyclotomicElement {
        let mut coeffs = if p.len() > self.degree() {
            dense_divrem(&p, &self.modulus).1
        } else {
            let mut p = p;
            trim(&mut p);
            p
        };
        coeffs.resize(self.degree(), Rational::zero());
        CyclotomicElement { n: self.n, modulus: Arc::clone(&self.modulus), coeffs }
    }

    pub fn zero(&self) -> CyclotomicElement {
        self.reduce(Vec::new())
    }

    pub fn from_rational(&self, c: Rational) -> CyclotomicElement {
        self.reduce(vec![c])
    }

    /// `ζ^k`, any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicElement {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut p = vec![Rational::zero(); k + 1];
        p[k] = Rational::one();
        self.reduce(p)
    }

    /// Element from explicit residue coefficients (length `φ(n)` or less).
    pub fn element(&self, coeffs: Vec<Rational>) -> CyclotomicElement {
        self.reduce(coeffs)
    }
}

impl CyclotomicElement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField { n: self.n, modulus: Arc::clone(&self.modulus) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicElement { n: self.n, modulus: Arc::clone(&self.modulus), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field().reduce(dense_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        CyclotomicElement { n: self.n, modulus: Arc::clone(&self.modulus), coeffs }
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut a: Dense = self.coeffs.clone();
        trim(&mut a);
        // invariant: s·self ≡ r (mod Φ_n)
        let (mut r0, mut r1) = (self.modulus.to_vec(), a);
        let (mut s0, mut s1): (Dense, Dense) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = dense_divrem(&r0, &r1);
            let s = dense_sub(&s0, &dense_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_n is irreducible, so the last nonzero remainder is a constant
        let c = r1[0].recip();
        Ok(self.field().reduce(s1.iter().map(|x| x * &c).collect()))
    }

    pub fn render(&self) -> String {
        let p = Polynomial::from_terms(
            RingMode::free(1),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Exponents::new(vec![k as i32]), c.clone())),
        )
        .expect("univariate exponents");
        p.render('z').replace("z1", "ζ")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_add(rhs).expect("cyclotomic fields differ")
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_add(&-rhs).expect("cyclotomic fields differ")
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self.checked_mul(rhs).expect("cyclotomic fields differ")
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn coeffs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_coefficients(1), coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_coefficients(4), coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic_coefficients(6), coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic_coefficients(12), coeffs(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(4).to_string(), "1 + x1^2");
        for n in 1..30 {
            assert_eq!(cyclotomic_coefficients(n).len() as u64 - 1, euler_totient(n as u64));
        }
    }

    #[test]
    fn product_of_one_minus_powers_is_n() {
        for n in 2..=8usize {
            let field = CyclotomicField::new(n);
            let one = field.from_rational(int(1));
            let mut prod = one.clone();
            for i in 1..n as i64 {
                prod = &prod * &(&one - &field.zeta_pow(i));
            }
            assert_eq!(prod, field.from_rational(int(n as i64)), "n = {n}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let field = CyclotomicField::new(4);
        assert_eq!(&field.zeta_pow(1) * &field.zeta_pow(3), field.from_rational(int(1)));
        assert_eq!(field.from_rational(int(2)).inverse().unwrap(), field.from_rational(rat(1, 2)));
        assert_eq!(field.zero().inverse(), Err(Error::NotInvertible));
        let x = field.element(coeffs(&[3, -2]));
        assert_eq!(&x * &x.inverse().unwrap(), field.from_rational(int(1)));
    }

    #[test]
    fn inverse_in_larger_fields() {
        for n in [5usize, 7, 9, 12] {
            let field = CyclotomicField::new(n);
            let one = field.from_rational(int(1));
            let x = &one - &field.zeta_pow(2);
            assert_eq!(&x * &x.inverse().unwrap(), one);
        }
    }
}
