//! Posets that are disjoint unions of chains, labelled by `ω(i) = i`, and
//! their `(P, ω)`-partition generating functions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groupalg::gmaj_in;
use crate::lie::complementary_pairs;
use crate::perm::{Permutation, Word};
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{Exponents, Polynomial, Rational, Relation, RingMode};

/// Disjoint union of chains on `{1..n}`; each word lists one chain bottom to
/// top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPoset {
    chains: Vec<Word>,
    n: usize,
}

impl ChainPoset {
    pub fn new(chains: Vec<Word>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &chains {
            if c.is_empty() {
                return Err(Error::InvalidPoset("empty chain".into()));
            }
            for &x in c.letters() {
                if !seen.insert(x) {
                    return Err(Error::InvalidPoset(format!("element {x} appears twice")));
                }
            }
        }
        let n = seen.len();
        if seen.iter().copied().ne(1..=n as u32) {
            return Err(Error::InvalidPoset(format!(
                "elements must be exactly 1..{n}, found {seen:?}"
            )));
        }
        Ok(ChainPoset { chains, n })
    }

    /// A single chain, bottom to top.
    pub fn chain(w: Word) -> Result<Self> {
        Self::new(vec![w])
    }

    pub fn chains(&self) -> &[Word] {
        &self.chains
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Pairs `(y, z)` with `y < z` in the poset.
    fn relations(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for c in &self.chains {
            let l = c.letters();
            for i in 0..l.len() {
                for j in i + 1..l.len() {
                    out.push((l[i], l[j]));
                }
            }
        }
        out
    }
}

/// `P_{u,v}`: the chains `u(1) < … < u(r)` and `v(1) < … < v(s)`.
pub fn poset_from_words(u: &Word, v: &Word) -> Result<ChainPoset> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::InvalidPoset("empty chain".into()));
    }
    ChainPoset::new(vec![u.clone(), v.clone()])
}

impl fmt::Display for ChainPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chains {
            let letters: Vec<String> = c.letters().iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", letters.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ChainPoset {
    type Err = Error;

    /// `[2 1][3]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad poset {s:?}"));
        let mut chains = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(bad)?;
            let end = body.find(']').ok_or_else(bad)?;
            let letters = body[..end]
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            chains.push(Word::new(letters)?);
            rest = body[end + 1..].trim_start();
        }
        ChainPoset::new(chains)
    }
}

/// Every word containing each chain as a subsequence, in lexicographic order.
pub fn linear_extensions(p: &ChainPoset) -> Vec<Word> {
    fn go(chains: &[&[u32]], pos: &mut Vec<usize>, buf: &mut Vec<u32>, out: &mut Vec<Word>) {
        let mut done = true;
        for (i, c) in chains.iter().enumerate() {
            if pos[i] < c.len() {
                done = false;
                buf.push(c[pos[i]]);
                pos[i] += 1;
                go(chains, pos, buf, out);
                pos[i] -= 1;
                buf.pop();
            }
        }
        if done {
            out.push(Word::new(buf.clone()).expect("distinct elements"));
        }
    }
    let chains: Vec<&[u32]> = p.chains.iter().map(|c| c.letters()).collect();
    let mut out = Vec::new();
    go(&chains, &mut vec![0; chains.len()], &mut Vec::with_capacity(p.n), &mut out);
    out.sort();
    out
}

fn prefix_of(letters: &[u32], j: usize, n: usize) -> Exponents {
    Exponents::product_of(n, letters[..j].iter().map(|&x| x as usize))
}

/// `Π_{j ∈ D(w)} x_{w(1)} ⋯ x_{w(j)} / Π_{i=1}^{|w|} (1 - x_{w(1)} ⋯ x_{w(i)})`
/// in free mode with `n` variables.
fn chain_factor(w: &Word, n: usize) -> Result<RatFun> {
    let l = w.letters();
    let mode = RingMode::free(n);
    let mut num = Exponents::zero(n);
    for j in 1..l.len() {
        if l[j - 1] > l[j] {
            num = num.add(&prefix_of(l, j, n));
        }
    }
    let num = Polynomial::monomial(mode, num, Rational::one())?;
    RatFun::new(num, (1..=l.len()).map(|i| prefix_of(l, i, n)))
}

/// `F(P, id; x)` as the product of the chain generating functions.
pub fn genfun_closed_form(p: &ChainPoset) -> Result<RatFun> {
    let mut acc = RatFun::one(RingMode::free(p.n));
    for c in &p.chains {
        acc = acc.checked_mul(&chain_factor(c, p.n)?)?;
    }
    Ok(acc)
}

/// Free-mode polynomial truncated at total degree `truncation_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPartitionSeries {
    pub truncation_degree: usize,
    pub series: Polynomial,
}

impl fmt::Display for PPartitionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg > {})", self.series, self.truncation_degree)
    }
}

/// Sums `x^f` over all maps `f: P → N` with `Σ f(p) ≤ degree` that reverse
/// order and drop strictly wherever the label drops (`y < z`, `y > z` as
/// integers).
pub fn ppartitions_truncated(p: &ChainPoset, degree: usize) -> PPartitionSeries {
    let n = p.n;
    let mode = RingMode::free(n);
    let relations = p.relations();
    let mut terms = Vec::new();
    let mut f = vec![0i32; n];
    enumerate_maps(&mut f, 0, degree as i32, &mut |f| {
        let ok = relations.iter().all(|&(y, z)| {
            let (fy, fz) = (f[y as usize - 1], f[z as usize - 1]);
            if y > z {
                fy > fz
            } else {
                fy >= fz
            }
        });
        if ok {
            terms.push((Exponents::new(f.to_vec()), Rational::one()));
        }
    });
    let series = Polynomial::from_terms(mode, terms).expect("free mode");
    PPartitionSeries { truncation_degree: degree, series }
}

fn enumerate_maps(f: &mut [i32], i: usize, budget: i32, emit: &mut impl FnMut(&[i32])) {
    if i == f.len() {
        emit(f);
        return;
    }
    for k in 0..=budget {
        f[i] = k;
        enumerate_maps(f, i + 1, budget - k, emit);
    }
    f[i] = 0;
}

/// The linear-extension sum, each term with denominators up to `i = n`,
/// expanded to `degree` and compared with the brute-force enumeration.
pub fn check_stanley_formula(p: &ChainPoset, degree: usize) -> Result<bool> {
    let (lhs, rhs) = stanley_sides(p, degree)?;
    Ok(lhs == rhs)
}

fn stanley_sides(p: &ChainPoset, degree: usize) -> Result<(Polynomial, Polynomial)> {
    let mode = RingMode::free(p.n);
    let mut lhs = Polynomial::zero(mode);
    for w in linear_extensions(p) {
        lhs = &lhs + &chain_factor(&w, p.n)?.expand_truncated(degree as i64)?;
    }
    Ok((lhs, ppartitions_truncated(p, degree).series))
}

/// `Σ_{σ ∈ L(P_{u,v})} gmaj(σ) = (1 - q_1 ⋯ q_n) F(P_{u,v}; q)` in free mode,
/// and the left side vanishes modulo `q_1 ⋯ q_n = 1`.
pub fn check_shuffle_identity(u: &Word, v: &Word) -> Result<bool> {
    let (lhs, rhs) = shuffle_identity_sides(u, v)?;
    Ok(lhs.equals(&rhs)? && lhs.to_mode(RingMode::cyclic(lhs.mode().n()))?.is_zero())
}

fn shuffle_identity_sides(u: &Word, v: &Word) -> Result<(RatFun, RatFun)> {
    let p = poset_from_words(u, v)?;
    let n = p.n;
    let mode = RingMode::free(n);
    let terms: Vec<RatFun> = linear_extensions(&p)
        .iter()
        .map(|w| {
            let sigma = w.to_permutation().expect("linear extension of 1..n");
            gmaj_in(&sigma, Relation::Free)
        })
        .collect();
    let lhs = RatFun::sum(mode, &terms)?;
    let all = Exponents::product_of(n, 1..=n);
    let rhs = genfun_closed_form(&p)?.mul_polynomial(&Polynomial::one_minus_monomial(mode, &all)?)?;
    Ok((lhs, rhs))
}

/// Stanley's formula for every `P_{u,v}` on `n` elements at `degree`.
pub fn check_two_chain_stanley(n: usize, degree: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("ppartition", Method::Symbolic)
        .with_param("n", n)
        .with_param("degree", degree)
        .with_param("posets", "two-chain")
        .timed(|r| {
            outcome = (|| -> Result<()> {
                for (u, v) in complementary_pairs(n) {
                    let p = poset_from_words(&u, &v)?;
                    record_stanley(r, &p, degree)?;
                }
                Ok(())
            })();
        });
    outcome.map(|_| report)
}

/// Stanley's formula for every single chain of length `n` at `degree`.
pub fn check_single_chain_stanley(n: usize, degree: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("ppartition", Method::Symbolic)
        .with_param("n", n)
        .with_param("degree", degree)
        .with_param("posets", "single-chain")
        .timed(|r| {
            outcome = (|| -> Result<()> {
                for sigma in Permutation::all(n) {
                    record_stanley(r, &ChainPoset::chain(sigma.to_word())?, degree)?;
                }
                Ok(())
            })();
        });
    outcome.map(|_| report)
}

/// Both poset families on `n` elements.
pub fn check_ppartition_suite(n: usize, degree: usize) -> Result<VerificationReport> {
    let mut report = check_two_chain_stanley(n, degree)?;
    report.absorb(check_single_chain_stanley(n, degree)?);
    report.params.insert("posets".into(), "two-chain+single-chain".into());
    Ok(report)
}

fn record_stanley(r: &mut VerificationReport, p: &ChainPoset, degree: usize) -> Result<()> {
    let (lhs, rhs) = stanley_sides(p, degree)?;
    r.record(p.to_string(), lhs == rhs, || {
        format!("extension sum = {lhs}, enumeration = {rhs}")
    });
    Ok(())
}

/// The shuffle identity for every complementary pair on `{1..n}`.
pub fn check_shuffle_suite(n: usize) -> Result<VerificationReport> {
    let mut outcome = Ok(());
    let report = VerificationReport::new("shuffle-identity", Method::Symbolic).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            for (u, v) in complementary_pairs(n) {
                let (lhs, rhs) = shuffle_identity_sides(&u, &v)?;
                let same = lhs.equals(&rhs)?;
                r.record(format!("({u}, {v}) free"), same, || format!("sum = {lhs}, (1 - q1..qn) F = {rhs}"));
                let reduced = lhs.to_mode(RingMode::cyclic(n))?;
                r.record(format!("({u}, {v}) cyclic"), reduced.is_zero(), || {
                    format!("reduces to {reduced}")
                });
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn words(v: &[Word]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn construction() {
        let p = poset_from_words(&w("1"), &w("23")).unwrap();
        assert_eq!(p.chains(), [w("1"), w("23")]);
        assert_eq!(p.n(), 3);
        assert_eq!(poset_from_words(&w("21"), &w("3")).unwrap().to_string(), "[2 1][3]");
        assert!(poset_from_words(&w("12"), &w("2")).is_err());
        assert!(poset_from_words(&w("1"), &w("3")).is_err());
        let p: ChainPoset = "[2 1][3]".parse().unwrap();
        assert_eq!(p, poset_from_words(&w("21"), &w("3")).unwrap());
        assert!("[1 2".parse::<ChainPoset>().is_err());
    }

    #[test]
    fn extensions() {
        let p = poset_from_words(&w("1"), &w("2")).unwrap();
        assert_eq!(words(&linear_extensions(&p)), ["12", "21"]);
        let p = poset_from_words(&w("12"), &w("3")).unwrap();
        assert_eq!(words(&linear_extensions(&p)), ["123", "132", "312"]);
        let p = ChainPoset::chain(w("312")).unwrap();
        assert_eq!(words(&linear_extensions(&p)), ["312"]);
    }

    #[test]
    fn closed_forms() {
        let f = |s: &str| RatFun::parse(s, RingMode::free(2)).unwrap();
        let g = genfun_closed_form(&ChainPoset::chain(w("12")).unwrap()).unwrap();
        assert_eq!(g, f("1 / (1 - x1)(1 - x1*x2)"));
        let g = genfun_closed_form(&ChainPoset::chain(w("21")).unwrap()).unwrap();
        assert_eq!(g, f("x2 / (1 - x2)(1 - x1*x2)"));
        let g = genfun_closed_form(&poset_from_words(&w("1"), &w("2")).unwrap()).unwrap();
        assert_eq!(g, f("1 / (1 - x1)(1 - x2)"));
    }

    #[test]
    fn brute_force_examples() {
        let mode = RingMode::free(2);
        let s = ppartitions_truncated(&ChainPoset::chain(w("12")).unwrap(), 2);
        let want = Polynomial::parse("1 + x1 + x1^2 + x1*x2", mode).unwrap();
        assert_eq!(s.series, want);
        let s = ppartitions_truncated(&ChainPoset::chain(w("21")).unwrap(), 1);
        assert_eq!(s.series, Polynomial::parse("x2", mode).unwrap());
        let s = ppartitions_truncated(&ChainPoset::chain(w("21")).unwrap(), 0);
        assert!(s.series.is_zero());
        let s = ppartitions_truncated(&poset_from_words(&w("1"), &w("2")).unwrap(), 0);
        assert!(s.series.is_one());
    }

    #[test]
    fn stanley_examples() {
        let p = poset_from_words(&w("1"), &w("2")).unwrap();
        assert!(check_stanley_formula(&p, 4).unwrap());
        let p = poset_from_words(&w("1"), &w("23")).unwrap();
        assert!(check_stanley_formula(&p, 6).unwrap());
        assert!(check_stanley_formula(&ChainPoset::chain(w("312")).unwrap(), 6).unwrap());
    }

    #[test]
    fn shuffle_identity_examples() {
        assert!(check_shuffle_identity(&w("1"), &w("2")).unwrap());
        assert!(check_shuffle_identity(&w("12"), &w("3")).unwrap());
        assert!(check_shuffle_identity(&w("21"), &w("3")).unwrap());
        let r = check_shuffle_suite(3).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks_run, 2 * 12);
    }
}
