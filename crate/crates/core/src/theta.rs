//! Permutation-indexed power series under the star product, the generating
//! function `Θ(x) = Σ_σ C(σ) σ`, and its infinite product expansion.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groupalg::gmaj_in;
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{Exponents, Polynomial, Rational, Relation, RingMode};

/// `Σ f_σ σ` over permutations of size at most `max_size`, each coefficient a
/// polynomial in `x_1 … x_{max_size}` truncated at total degree `max_degree`.
/// `truncated` records that some product term of larger size was dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    max_size: usize,
    max_degree: usize,
    coeffs: BTreeMap<Permutation, Polynomial>,
    truncated: bool,
}

impl TruncatedSeries {
    pub fn zero(max_size: usize, max_degree: usize) -> Self {
        TruncatedSeries { max_size, max_degree, coeffs: BTreeMap::new(), truncated: false }
    }

    /// `1 · ε`.
    pub fn unit(max_size: usize, max_degree: usize) -> Self {
        let mut out = Self::zero(max_size, max_degree);
        out.coeffs.insert(Permutation::identity(0), Polynomial::one(out.mode()));
        out
    }

    /// Sums the given terms. Coefficients must live in `free(max_size)`.
    pub fn from_terms(
        max_size: usize,
        max_degree: usize,
        terms: impl IntoIterator<Item = (Permutation, Polynomial)>,
    ) -> Result<Self> {
        let mut out = Self::zero(max_size, max_degree);
        for (sigma, f) in terms {
            if f.mode() != out.mode() {
                return Err(Error::ModeMismatch(out.mode().to_string(), f.mode().to_string()));
            }
            if sigma.degree() > max_size {
                return Err(Error::Dimension { expected: max_size, found: sigma.degree() });
            }
            out.add_term(sigma, f);
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, f: Polynomial) {
        let f = f.truncate(self.max_degree as i64);
        let sum = match self.coeffs.remove(&sigma) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.coeffs.insert(sigma, sum);
        }
    }

    /// Coefficient ring `free(max_size)`.
    pub fn mode(&self) -> RingMode {
        RingMode::free(self.max_size)
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Polynomial {
        self.coeffs.get(sigma).cloned().unwrap_or_else(|| Polynomial::zero(self.mode()))
    }

    /// Terms in (size, lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> + '_ {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The part of size `≤ max_size` and degree `≤ max_degree`, with
    /// coefficients moved into `free(max_size)`.
    pub fn restrict(&self, max_size: usize, max_degree: usize) -> Result<Self> {
        let mut out = Self::zero(max_size, max_degree);
        out.truncated = self.truncated;
        let targets: Vec<usize> = (1..=self.max_size).collect();
        for (sigma, f) in &self.coeffs {
            if sigma.degree() > max_size {
                out.truncated = true;
                continue;
            }
            let g = embed(f, &targets, max_size, sigma.degree())?;
            out.add_term(sigma.clone(), g);
        }
        Ok(out)
    }

    /// Equality on the region both series represent exactly.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        let (s, d) = (self.max_size.min(other.max_size), self.max_degree.min(other.max_degree));
        Ok(self.restrict(s, d)?.coeffs == other.restrict(s, d)?.coeffs)
    }

    /// The first permutation (in (size, lex) order) on which the common
    /// regions differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Permutation>> {
        let (s, d) = (self.max_size.min(other.max_size), self.max_degree.min(other.max_degree));
        let (a, b) = (self.restrict(s, d)?, other.restrict(s, d)?);
        let keys: std::collections::BTreeSet<Permutation> =
            a.coeffs.keys().chain(b.coeffs.keys()).cloned().collect();
        Ok(keys.into_iter().find(|k| a.coefficient(k) != b.coefficient(k)))
    }

    /// `A ★ B`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        star_product(self, other)
    }

    /// One line per nonzero coefficient, `<coefficient> * <permutation>`, in
    /// (size, lex) order.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(sigma, f)| format!("{} * {}", f.render('x'), sigma))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Moves `f` into `free(size)` via `x_i ↦ x_{targets[i-1]}`; only the
/// first `used` variables may occur in `f`.
fn embed(f: &Polynomial, targets: &[usize], size: usize, used: usize) -> Result<Polynomial> {
    let targets: Vec<usize> = targets[..used.min(targets.len())].to_vec();
    let narrowed = narrow(f, used)?;
    narrowed.relabel(&targets, RingMode::free(size))
}

/// `f` viewed in `free(used)`; errors if a later variable occurs.
fn narrow(f: &Polynomial, used: usize) -> Result<Polynomial> {
    let mut terms = Vec::with_capacity(f.len());
    for (e, c) in f.terms() {
        let (head, tail) = e.as_slice().split_at(used.min(e.len()));
        if tail.iter().any(|&x| x != 0) {
            return Err(Error::Dimension { expected: used, found: e.len() });
        }
        terms.push((Exponents::new(head.to_vec()), c.clone()));
    }
    Polynomial::from_terms(RingMode::free(used), terms)
}

/// Subsets of `{1..m}` of size `k` in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `A ★ B`: for `f σ` and `g τ`, the sum over words `w = u·v` with
/// `st(u) = σ`, `st(v) = τ` of `f(x_{a_1}, …) g(x_{b_1}, …) w`, where `a` and
/// `b` are the sorted letters of `u` and `v`. Products larger than
/// `max_size` are dropped and flagged.
pub fn star_product(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if (a.max_size, a.max_degree) != (b.max_size, b.max_degree) {
        return Err(Error::InvalidArgument(format!(
            "series bounds differ: (N={}, D={}) vs (N={}, D={})",
            a.max_size, a.max_degree, b.max_size, b.max_degree
        )));
    }
    let (size, degree) = (a.max_size, a.max_degree as i64);
    let mode = a.mode();
    let mut out = TruncatedSeries::zero(size, a.max_degree);
    out.truncated = a.truncated || b.truncated;
    for (sigma, f) in &a.coeffs {
        let s = sigma.degree();
        for (tau, g) in &b.coeffs {
            let t = tau.degree();
            if s + t > size {
                out.truncated = true;
                continue;
            }
            let f_min = f.min_degree().unwrap_or(0);
            if f_min + g.min_degree().unwrap_or(0) > degree {
                continue;
            }
            for left in subsets(s + t, s) {
                let right: Vec<usize> = (1..=s + t).filter(|x| !left.contains(x)).collect();
                let mut word: Vec<u8> = sigma.as_slice().iter().map(|&i| left[i as usize - 1] as u8).collect();
                word.extend(tau.as_slice().iter().map(|&i| right[i as usize - 1] as u8));
                let fu = narrow(f, s)?.relabel(&left, mode)?;
                let gv = narrow(g, t)?.relabel(&right, mode)?;
                out.add_term(Permutation::new(word)?, fu.mul_truncated(&gv, degree)?);
            }
        }
    }
    Ok(out)
}

fn prefix(sigma: &Permutation, j: usize, vars: usize) -> Exponents {
    Exponents::product_of(vars, sigma.as_slice()[..j].iter().map(|&x| x as usize))
}

/// `C(σ) = Π_{j ∈ D(σ)} x_{σ(1)} ⋯ x_{σ(j)} / Π_{i=1}^{n} (1 - x_{σ(1)} ⋯ x_{σ(i)})`
/// in `free(vars)`, not expanded.
fn csigma_ratfun(sigma: &Permutation, vars: usize) -> Result<RatFun> {
    let mode = RingMode::free(vars);
    let mut num = Exponents::zero(vars);
    for j in sigma.descents() {
        num = num.add(&prefix(sigma, j, vars));
    }
    let num = Polynomial::monomial(mode, num, Rational::one())?;
    RatFun::new(num, (1..=sigma.degree()).map(|i| prefix(sigma, i, vars)))
}

/// `C(σ)` in `free(max_size)`, expanded to total degree `max_degree`.
pub fn csigma_closed(sigma: &Permutation, max_size: usize, max_degree: usize) -> Result<Polynomial> {
    if sigma.degree() > max_size {
        return Err(Error::Dimension { expected: max_size, found: sigma.degree() });
    }
    csigma_ratfun(sigma, max_size)?.expand_truncated(max_degree as i64)
}

/// `C(σ)` in `free(|σ|)` from its definition: over factorizations of `σ` into
/// nonempty increasing words `u_1 ⋯ u_k` and exponents `n_1 > ⋯ > n_k ≥ 0`,
/// the monomials `x_{u_1}^{n_1} ⋯ x_{u_k}^{n_k}`, where `x_u` is the product
/// of `x_a` over the letters `a` of `u`. Terms above `max_degree` are omitted.
pub fn csigma_brute(sigma: &Permutation, max_degree: usize) -> Polynomial {
    let n = sigma.degree();
    let mode = RingMode::free(n);
    let letters = sigma.as_slice();
    let mut terms: Vec<(Exponents, Rational)> = Vec::new();
    // Cuts are forced at descents and optional at ascents.
    let ascents: Vec<usize> = (1..n).filter(|&i| letters[i - 1] < letters[i]).collect();
    let descents: Vec<usize> = (1..n).filter(|&i| letters[i - 1] > letters[i]).collect();
    for mask in 0u32..(1 << ascents.len()) {
        let mut cuts: Vec<usize> = descents.clone();
        cuts.extend(ascents.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
        cuts.sort_unstable();
        let mut bounds = vec![0];
        bounds.extend(cuts);
        if n > 0 {
            bounds.push(n);
        }
        let parts: Vec<&[u8]> = bounds.windows(2).map(|w| &letters[w[0]..w[1]]).collect();
        let mut exps = vec![0usize; parts.len()];
        decreasing_exponents(&parts, 0, None, max_degree, &mut exps, &mut |exps| {
            let mut e = vec![0i32; n];
            for (part, &k) in parts.iter().zip(exps) {
                for &a in *part {
                    e[a as usize - 1] += k as i32;
                }
            }
            terms.push((Exponents::new(e), Rational::one()));
        });
    }
    Polynomial::from_terms(mode, terms).expect("free mode")
}

/// All `n_i > n_{i+1} ≥ 0` with `Σ n_i |u_i| ≤ budget`.
fn decreasing_exponents(
    parts: &[&[u8]],
    i: usize,
    upper: Option<usize>,
    budget: usize,
    exps: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if i == parts.len() {
        emit(exps);
        return;
    }
    // the remaining exponents are at least k-i-1, k-i-2, …, 0
    let later = parts.len() - i - 1;
    let cap = budget / parts[i].len();
    let cap = match upper {
        Some(0) => return,
        Some(u) => cap.min(u - 1),
        None => cap,
    };
    for k in later..=cap {
        exps[i] = k;
        decreasing_exponents(parts, i + 1, Some(k), budget - k * parts[i].len(), exps, emit);
    }
}

/// `Θ(x)` through size `max_size` and degree `max_degree`, from the closed
/// form of each coefficient.
pub fn theta_closed(max_size: usize, max_degree: usize) -> Result<TruncatedSeries> {
    let mut terms = Vec::new();
    for n in 0..=max_size {
        for sigma in Permutation::all(n) {
            let c = csigma_closed(&sigma, max_size, max_degree)?;
            terms.push((sigma, c));
        }
    }
    TruncatedSeries::from_terms(max_size, max_degree, terms)
}

/// `F(m) = ε + Σ_{a ≥ 1} (x_1 ⋯ x_a)^m · 12⋯a`, truncated.
pub fn product_factor(m: usize, max_size: usize, max_degree: usize) -> TruncatedSeries {
    let mode = RingMode::free(max_size);
    let mut out = TruncatedSeries::unit(max_size, max_degree);
    for a in 1..=max_size {
        if m * a > max_degree {
            break;
        }
        let e = Exponents::product_of(max_size, 1..=a).scale(m as i32);
        let f = Polynomial::monomial(mode, e, Rational::one()).expect("length matches");
        out.add_term(Permutation::identity(a), f);
    }
    out
}

/// `⋯ ★ F(2) ★ F(1) ★ F(0)`, folded from `m = max_degree` down to `0`;
/// factors with larger `m` are `ε` within the degree bound.
pub fn product_expansion(max_size: usize, max_degree: usize) -> Result<TruncatedSeries> {
    let mut acc = product_factor(max_degree, max_size, max_degree);
    for m in (0..max_degree).rev() {
        acc = star_product(&acc, &product_factor(m, max_size, max_degree))?;
    }
    Ok(acc)
}

/// `theta_closed(N, D) = product_expansion(N, D)`, and
/// `csigma_closed = csigma_brute` for every `|σ| ≤ N`.
pub fn check_product_theorem(max_size: usize, max_degree: usize) -> Result<bool> {
    Ok(check_theta(max_size, max_degree)?.passed())
}

/// The coefficients of `(x_1²x_2²x_3 · 132) ★ (x_1³ · 1)` and `132 ★ 1`.
pub fn star_examples() -> Result<Vec<(String, TruncatedSeries, TruncatedSeries)>> {
    let (size, degree) = (4, 12);
    let mode = RingMode::free(size);
    let p = |s: &str| Permutation::parse(s);
    let poly = |s: &str| Polynomial::parse(s, mode);
    let series = |terms: Vec<(Permutation, Polynomial)>| TruncatedSeries::from_terms(size, degree, terms);

    let plain = star_product(
        &series(vec![(p("132")?, Polynomial::one(mode))])?,
        &series(vec![(p("1")?, Polynomial::one(mode))])?,
    )?;
    let plain_want = series(
        ["1324", "1423", "1432", "2431"]
            .iter()
            .map(|s| Ok((p(s)?, Polynomial::one(mode))))
            .collect::<Result<_>>()?,
    )?;

    let weighted = star_product(
        &series(vec![(p("132")?, poly("x1^2*x2^2*x3")?)])?,
        &series(vec![(p("1")?, poly("x1^3")?)])?,
    )?;
    let weighted_want = series(vec![
        (p("1324")?, poly("x1^2*x2^2*x3*x4^3")?),
        (p("1423")?, poly("x1^2*x2^2*x4*x3^3")?),
        (p("1432")?, poly("x1^2*x3^2*x4*x2^3")?),
        (p("2431")?, poly("x2^2*x3^2*x4*x1^3")?),
    ])?;
    Ok(vec![
        ("132 * 1".into(), plain, plain_want),
        ("x1^2x2^2x3 132 * x1^3 1".into(), weighted, weighted_want),
    ])
}

/// The product theorem and its ingredients at size `max_size` and degree
/// `max_degree`: brute-force coefficients, the relation to `gmaj` in free
/// mode, the two star examples, and the product expansion itself.
pub fn check_theta(max_size: usize, max_degree: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("theta", Method::Symbolic)
        .with_param("max_size", max_size)
        .with_param("degree", max_degree)
        .timed(|r| {
            outcome = (|| -> Result<()> {
                for (name, got, want) in star_examples()? {
                    let ok = got.agrees_with(&want)?;
                    r.record(format!("star example {name}"), ok, || format!("got\n{got}"));
                }
                let targets: Vec<usize> = (1..=max_size).collect();
                let closed = theta_closed(max_size, max_degree)?;
                for n in 0..=max_size {
                    for sigma in Permutation::all(n) {
                        let c = closed.coefficient(&sigma);
                        let brute = embed(&csigma_brute(&sigma, max_degree), &targets, max_size, n)?;
                        r.record(format!("C({sigma}) closed = brute"), c == brute, || {
                            format!("closed = {c}, brute = {brute}")
                        });
                        if n >= 1 {
                            let (lhs, rhs) = gmaj_cross_check(&sigma, max_degree)?;
                            r.record(format!("(1 - x1..xn) C({sigma}) = gmaj"), lhs == rhs, || {
                                format!("{lhs} vs {rhs}")
                            });
                        }
                    }
                }
                let product = product_expansion(max_size, max_degree)?;
                match closed.first_difference(&product)? {
                    None => r.record("closed form = product expansion", true, String::new),
                    Some(sigma) => r.record("closed form = product expansion", false, || {
                        format!(
                            "differs at {sigma}: closed {}, product {}",
                            closed.coefficient(&sigma),
                            product.coefficient(&sigma)
                        )
                    }),
                }
                Ok(())
            })();
        });
    outcome.map(|_| report)
}

/// `(1 - x_1 ⋯ x_n) C(σ)` and the free-mode `gmaj(σ)`, both expanded in
/// `free(n)` to `max_degree`.
fn gmaj_cross_check(sigma: &Permutation, max_degree: usize) -> Result<(Polynomial, Polynomial)> {
    let n = sigma.degree();
    let d = max_degree as i64;
    let mode = RingMode::free(n);
    let c = csigma_ratfun(sigma, n)?.expand_truncated(d)?;
    let all = Polynomial::one_minus_monomial(mode, &Exponents::product_of(n, 1..=n))?;
    let lhs = c.mul_truncated(&all, d)?;
    let rhs = gmaj_in(sigma, Relation::Free).expand_truncated(d)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, RingMode::free(n)).unwrap()
    }

    #[test]
    fn displayed_star_examples() {
        for (name, got, want) in star_examples().unwrap() {
            assert!(got.agrees_with(&want).unwrap(), "{name}:\n{got}");
        }
    }

    #[test]
    fn unit_is_two_sided() {
        let a = theta_closed(3, 3).unwrap();
        let e = TruncatedSeries::unit(3, 3);
        assert_eq!(star_product(&e, &a).unwrap().coeffs, a.coeffs);
        assert_eq!(star_product(&a, &e).unwrap().coeffs, a.coeffs);
    }

    #[test]
    fn csigma_examples() {
        assert_eq!(csigma_closed(&p("1"), 1, 3).unwrap(), poly("1 + x1 + x1^2 + x1^3", 1));
        assert_eq!(csigma_closed(&Permutation::identity(0), 2, 3).unwrap(), poly("1", 2));
        let want = poly("x2 + x2^2 + x1*x2^2 + x2^3", 2);
        assert_eq!(csigma_closed(&p("21"), 2, 3).unwrap(), want);
        assert_eq!(csigma_brute(&p("21"), 3), want);
        assert_eq!(csigma_brute(&p("12"), 2), poly("1 + x1 + x1^2 + x1*x2", 2));
        assert!(csigma_brute(&Permutation::identity(0), 5).is_one());
    }

    #[test]
    fn theta_small() {
        let t = theta_closed(1, 3).unwrap();
        assert!(t.coefficient(&Permutation::identity(0)).is_one());
        assert_eq!(t.coefficient(&p("1")), poly("1 + x1 + x1^2 + x1^3", 1));
        let t = theta_closed(3, 2).unwrap();
        assert_eq!(t.coefficient(&p("123")), poly("1 + x1 + x1^2 + x1*x2", 3));
        let (lhs, rhs) = gmaj_cross_check(&p("21"), 4).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_small() {
        let prod = product_expansion(2, 3).unwrap();
        assert!(prod.is_truncated());
        assert!(prod.coefficient(&Permutation::identity(0)).is_one());
        assert_eq!(prod.coefficient(&p("1")), poly("1 + x1 + x1^2 + x1^3", 2));
        assert_eq!(prod.coefficient(&p("21")), poly("x2 + x2^2 + x1*x2^2 + x2^3", 2));
        for (n, d) in [(2, 4), (3, 5)] {
            let r = check_theta(n, d).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn subsets_in_order() {
        assert_eq!(subsets(4, 2), vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn rendering_order() {
        let t = theta_closed(2, 1).unwrap();
        let text = t.render();
        let lines: Vec<&str> = text.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
        assert_eq!(lines, ["ε", "1", "12", "21"]);
    }
}
