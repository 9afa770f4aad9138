//! Exact values of group-algebra elements and twisted products at a point.
//!
//! Every value is kept as an integer times a product of powers of a fixed
//! set of integers: the numerators and denominators of the coordinates and
//! the numerators of the `1 - monomial` factors met so far. Sums are formed
//! over the componentwise-minimal power product, so no gcd is ever taken on
//! large numbers; results stay unreduced and compare by cross-multiplication.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::ring::{format_rational, Exponents, Rational};

/// Unreduced exact fraction `num/den` with `den ≠ 0`.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(if den.is_negative() { Fraction { num: -num, den: -den } } else { Fraction { num, den } })
    }

    pub fn zero() -> Self {
        Fraction { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Fraction { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// The reduced value.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction { num: &self.num * &other.num, den: &self.den * &other.den }
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Fraction {}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.to_rational()))
    }
}

/// `c · Π base_j^{e_j}`; `e` is dense over the basis, missing entries are 0.
#[derive(Clone, Debug)]
struct Factored {
    c: Fraction,
    e: Vec<i32>,
}

fn add_into(acc: &mut Vec<i32>, x: &[i32], k: i32) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0);
    }
    for (a, &b) in acc.iter_mut().zip(x) {
        *a += k * b;
    }
}

fn min_into(acc: &mut Vec<i32>, x: &[i32]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0);
    }
    for (i, a) in acc.iter_mut().enumerate() {
        *a = (*a).min(x.get(i).copied().unwrap_or(0));
    }
}

/// Power products over the integers attached to one point.
pub(crate) struct PointBasis {
    n: usize,
    base: Vec<BigInt>,
    pows: Vec<Vec<BigInt>>,
    factors: HashMap<Vec<i32>, usize>,
}

impl PointBasis {
    /// `None` when a coordinate is zero: the power-product form needs
    /// invertible coordinates.
    pub(crate) fn new(point: &[Rational]) -> Option<Self> {
        if point.iter().any(Zero::is_zero) {
            return None;
        }
        let mut base = Vec::with_capacity(2 * point.len());
        for c in point {
            base.push(c.numer().clone());
            base.push(c.denom().clone());
        }
        let pows = base.iter().map(|b| vec![BigInt::one(), b.clone()]).collect();
        Some(PointBasis { n: point.len(), base, pows, factors: HashMap::new() })
    }

    fn pow(&mut self, j: usize, k: usize) -> &BigInt {
        let table = &mut self.pows[j];
        while table.len() <= k {
            let next = table.last().expect("nonempty") * &self.base[j];
            table.push(next);
        }
        &self.pows[j][k]
    }

    /// `Π base_j^{e_j}` over the positive entries of `e`.
    fn positive_product(&mut self, e: &[i32]) -> BigInt {
        let mut acc = BigInt::one();
        for (j, &k) in e.iter().enumerate() {
            if k > 0 {
                acc *= self.pow(j, k as usize);
            }
        }
        acc
    }

    fn monomial(&self, x: &[i32]) -> Vec<i32> {
        let mut e = vec![0; 2 * self.n];
        for (i, &k) in x.iter().enumerate() {
            e[2 * i] = k;
            e[2 * i + 1] = -k;
        }
        e
    }

    /// Index of the basis integer `D - N`, where `N/D` is the value of `q^x`.
    fn factor(&mut self, x: &[i32], mono: &[i32]) -> Result<usize> {
        if let Some(&j) = self.factors.get(x) {
            return Ok(j);
        }
        let top = self.positive_product(mono);
        let neg: Vec<i32> = mono.iter().map(|&k| (-k).max(0)).collect();
        let bottom = self.positive_product(&neg);
        let d = bottom - top;
        if d.is_zero() {
            return Err(Error::Pole("a denominator factor vanishes".into()));
        }
        let j = self.base.len();
        self.pows.push(vec![BigInt::one(), d.clone()]);
        self.base.push(d);
        self.factors.insert(x.to_vec(), j);
        Ok(j)
    }

    /// Value of `σ·f` (or `f` when `sigma` is `None`).
    fn value(&mut self, f: &RatFun, sigma: Option<&Permutation>) -> Result<Factored> {
        let moved = |e: &Exponents| -> Vec<i32> {
            match sigma {
                Some(s) => crate::ring::poly_permute_exponents(e, s).as_slice().to_vec(),
                None => e.as_slice().to_vec(),
            }
        };
        let terms: Vec<(Fraction, Vec<i32>)> = f
            .numerator()
            .terms()
            .map(|(e, c)| (Fraction::from_rational(c), self.monomial(&moved(e))))
            .collect();
        let mut out = match terms.len() {
            0 => return Ok(Factored { c: Fraction::zero(), e: Vec::new() }),
            1 => {
                let (c, e) = terms.into_iter().next().expect("one term");
                Factored { c, e }
            }
            _ => self.combine(terms),
        };
        for (m, k) in f.denominator() {
            let x = moved(m);
            let mono = self.monomial(&x);
            let j = self.factor(&x, &mono)?;
            let k = k as i32;
            let neg: Vec<i32> = mono.iter().map(|&v| (-v).max(0)).collect();
            add_into(&mut out.e, &neg, k);
            if out.e.len() <= j {
                out.e.resize(j + 1, 0);
            }
            out.e[j] -= k;
        }
        Ok(out)
    }

    /// `Σ c_t Π base^{e_t}` as a single factored value.
    fn combine(&mut self, terms: Vec<(Fraction, Vec<i32>)>) -> Factored {
        let mut emin: Vec<i32> = Vec::new();
        for (_, e) in &terms {
            min_into(&mut emin, e);
        }
        let scale = terms.iter().fold(BigInt::one(), |l, (c, _)| l.lcm(&c.den));
        let mut acc = BigInt::zero();
        for (c, e) in &terms {
            let mut shifted = e.clone();
            add_into(&mut shifted, &emin, -1);
            acc += &c.num * (&scale / &c.den) * self.positive_product(&shifted);
        }
        Factored { c: Fraction { num: acc, den: scale }, e: emin }
    }

    fn fraction_of(&mut self, v: &Factored) -> Fraction {
        let neg: Vec<i32> = v.e.iter().map(|&k| (-k).max(0)).collect();
        let num = &v.c.num * self.positive_product(&v.e);
        let den = &v.c.den * self.positive_product(&neg);
        Fraction { num, den }
    }
}

/// Coefficient values of an element at one point.
pub type EvaluatedElement = BTreeMap<Permutation, Fraction>;

pub(crate) fn evaluate_element(
    coeffs: &BTreeMap<Permutation, RatFun>,
    point: &[Rational],
) -> Result<EvaluatedElement> {
    let mut out = BTreeMap::new();
    match PointBasis::new(point) {
        Some(mut basis) => {
            for (sigma, f) in coeffs {
                let v = basis.value(f, None)?;
                let v = basis.fraction_of(&v);
                if !v.is_zero() {
                    out.insert(sigma.clone(), v);
                }
            }
        }
        None => {
            for (sigma, f) in coeffs {
                let v = f.evaluate_unchecked(point)?;
                if !v.is_zero() {
                    out.insert(sigma.clone(), Fraction::from_rational(&v));
                }
            }
        }
    }
    Ok(out)
}

/// Values of `A ⋉ B` at `point`: the coefficient of `ρ` is
/// `Σ_σ f_σ(p) · (σ·g_{σ⁻¹ρ})(p)`.
pub(crate) fn twisted_product_values(
    a: &BTreeMap<Permutation, RatFun>,
    b: &BTreeMap<Permutation, RatFun>,
    point: &[Rational],
) -> Result<EvaluatedElement> {
    let Some(mut basis) = PointBasis::new(point) else {
        return twisted_product_values_plain(a, b, point);
    };
    // left factors over one common power product
    let mut left = Vec::with_capacity(a.len());
    for (sigma, f) in a {
        let v = basis.value(f, None)?;
        if !v.c.is_zero() {
            left.push((sigma, v));
        }
    }
    let mut emin_left: Vec<i32> = Vec::new();
    for (_, v) in &left {
        min_into(&mut emin_left, &v.e);
    }
    let scale_left = left.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(&v.c.den));
    let mut shifted_left = Vec::with_capacity(left.len());
    for (sigma, v) in &left {
        let mut e = v.e.clone();
        add_into(&mut e, &emin_left, -1);
        let int = &v.c.num * (&scale_left / &v.c.den) * basis.positive_product(&e);
        shifted_left.push((*sigma, sigma.inverse(), int));
    }

    let mut targets: Vec<Permutation> = Vec::new();
    for sigma in a.keys() {
        for tau in b.keys() {
            targets.push(sigma.compose(tau)?);
        }
    }
    targets.sort();
    targets.dedup();

    let mut out = BTreeMap::new();
    let mut right: Vec<(&BigInt, Factored)> = Vec::with_capacity(left.len());
    for rho in targets {
        right.clear();
        for (sigma, sigma_inv, int) in &shifted_left {
            let tau = sigma_inv.compose(&rho)?;
            if let Some(g) = b.get(&tau) {
                let v = basis.value(g, Some(sigma))?;
                if !v.c.is_zero() {
                    right.push((int, v));
                }
            }
        }
        if right.is_empty() {
            continue;
        }
        let mut emin: Vec<i32> = Vec::new();
        for (_, v) in &right {
            min_into(&mut emin, &v.e);
        }
        let scale = right.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(&v.c.den));
        let mut acc = BigInt::zero();
        for (int, v) in &right {
            let mut e = v.e.clone();
            add_into(&mut e, &emin, -1);
            let small = &v.c.num * (&scale / &v.c.den) * basis.positive_product(&e);
            acc += *int * small;
        }
        if acc.is_zero() {
            continue;
        }
        let mut total = emin;
        add_into(&mut total, &emin_left, 1);
        let value = Factored { c: Fraction { num: acc, den: &scale * &scale_left }, e: total };
        out.insert(rho, basis.fraction_of(&value));
    }
    Ok(out)
}

fn twisted_product_values_plain(
    a: &BTreeMap<Permutation, RatFun>,
    b: &BTreeMap<Permutation, RatFun>,
    point: &[Rational],
) -> Result<EvaluatedElement> {
    let mut sums: BTreeMap<Permutation, Rational> = BTreeMap::new();
    let mut permuted = point.to_vec();
    for (sigma, f) in a {
        let fv = f.evaluate_unchecked(point)?;
        if fv.is_zero() {
            continue;
        }
        for (slot, &s) in permuted.iter_mut().zip(sigma.as_slice()) {
            *slot = point[s as usize - 1].clone();
        }
        for (tau, g) in b {
            let term = &fv * g.evaluate_unchecked(&permuted)?;
            *sums.entry(sigma.compose(tau)?).or_insert_with(Rational::zero) += term;
        }
    }
    Ok(sums
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, Fraction::from_rational(&v)))
        .collect())
}

/// Coefficient values of one element at one point, ready for repeated
/// linear combinations `Σ c_w A_w(p)`.
pub struct ElementAtPoint<'a> {
    coeffs: &'a BTreeMap<Permutation, RatFun>,
    inner: AtPoint,
}

enum AtPoint {
    Factored(PointBasis, BTreeMap<Permutation, Factored>),
    Plain(BTreeMap<Permutation, Rational>),
}

impl<'a> ElementAtPoint<'a> {
    pub(crate) fn new(coeffs: &'a BTreeMap<Permutation, RatFun>, point: &[Rational]) -> Result<Self> {
        let inner = match PointBasis::new(point) {
            Some(mut basis) => {
                let mut values = BTreeMap::new();
                for (sigma, f) in coeffs {
                    values.insert(sigma.clone(), basis.value(f, None)?);
                }
                AtPoint::Factored(basis, values)
            }
            None => {
                let mut values = BTreeMap::new();
                for (sigma, f) in coeffs {
                    values.insert(sigma.clone(), f.evaluate_unchecked(point)?);
                }
                AtPoint::Plain(values)
            }
        };
        Ok(ElementAtPoint { coeffs, inner })
    }

    /// `Σ c_w A_w(p)`; permutations outside the support contribute 0.
    pub fn combination<'b>(
        &mut self,
        terms: impl IntoIterator<Item = (&'b Permutation, &'b Rational)>,
    ) -> Fraction {
        match &mut self.inner {
            AtPoint::Factored(basis, values) => {
                let picked: Vec<(Fraction, Vec<i32>)> = terms
                    .into_iter()
                    .filter_map(|(w, c)| {
                        values.get(w).map(|v| {
                            (v.c.mul(&Fraction::from_rational(c)), v.e.clone())
                        })
                    })
                    .filter(|(c, _)| !c.is_zero())
                    .collect();
                if picked.is_empty() {
                    return Fraction::zero();
                }
                let v = basis.combine(picked);
                basis.fraction_of(&v)
            }
            AtPoint::Plain(values) => {
                let mut acc = Rational::zero();
                for (w, c) in terms {
                    if let Some(v) = values.get(w) {
                        acc += v * c;
                    }
                }
                Fraction::from_rational(&acc)
            }
        }
    }

    /// The value of a single coefficient.
    pub fn value(&mut self, sigma: &Permutation) -> Fraction {
        let one = Rational::one();
        self.combination([(sigma, &one)])
    }

    pub fn support(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.coeffs.keys()
    }
}

/// First permutation where two evaluated elements disagree.
pub fn first_value_difference(a: &EvaluatedElement, b: &EvaluatedElement) -> Option<Permutation> {
    let zero = Fraction::zero();
    let keys: std::collections::BTreeSet<&Permutation> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .find(|k| a.get(*k).unwrap_or(&zero) != b.get(*k).unwrap_or(&zero))
        .cloned()
}
