//! Lie-element tests in the multilinear part of the free associative
//! algebra: shuffles, the scalar product, orthogonality to all proper
//! shuffles, and the Dynkin left-bracketing criterion as an independent
//! oracle.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groupalg::{Fraction, GroupAlgebraElement};
use crate::perm::{next_permutation, Permutation, Word};
use crate::ratfun::RatFun;
use crate::report::{Method, VerificationReport};
use crate::ring::{format_rational, Rational, RingMode};
use crate::sample::{evaluate_at_random_point, format_point, rng_from_seed};

/// Formal linear combination of words with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<Word, Rational>,
}

impl WordSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = Self::new();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        let slot = self.terms.entry(w).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WordSum {
        WordSum::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &WordSum) -> Result<WordSum> {
        let mut out = WordSum::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b)?, x * y);
            }
        }
        Ok(out)
    }

    /// Words that are permutations of `{1..n}` become group-algebra terms with
    /// constant coefficients; other words are dropped.
    pub fn to_element(&self, mode: RingMode) -> Result<GroupAlgebraElement> {
        GroupAlgebraElement::from_terms(
            mode,
            self.terms.iter().filter_map(|(w, c)| {
                w.to_permutation()
                    .filter(|p| p.degree() == mode.n())
                    .map(|p| (p, RatFun::constant(mode, c.clone())))
            }),
        )
    }
}

impl std::fmt::Display for WordSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("{}*{w}", format_rational(c)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `u ⧢ v`: every interleaving of `u` and `v`, each with coefficient 1.
pub fn shuffle_product(u: &Word, v: &Word) -> Result<WordSum> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(&x) = u.letters().iter().find(|x| v.letters().contains(x)) {
        return Err(Error::SharedLetter(x));
    }
    let mut out = WordSum::new();
    let (r, s) = (u.len(), v.len());
    let mut buf = Vec::with_capacity(r + s);
    interleave(u.letters(), v.letters(), &mut buf, &mut |w| {
        out.add_term(Word::new(w.to_vec()).expect("distinct letters"), Rational::one());
    });
    Ok(out)
}

fn interleave(a: &[u32], b: &[u32], buf: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if a.is_empty() && b.is_empty() {
        emit(buf);
        return;
    }
    if let Some((&x, rest)) = a.split_first() {
        buf.push(x);
        interleave(rest, b, buf, emit);
        buf.pop();
    }
    if let Some((&y, rest)) = b.split_first() {
        buf.push(y);
        interleave(a, rest, buf, emit);
        buf.pop();
    }
}

/// `⟨A, S⟩ = Σ_w S_w A_w`, reading words of length `n` as permutations.
pub fn scalar_product(a: &GroupAlgebraElement, s: &WordSum) -> Result<RatFun> {
    let mode = a.mode();
    let mut terms = Vec::new();
    for (w, c) in s.terms() {
        if let Some(p) = w.to_permutation().filter(|p| p.degree() == mode.n()) {
            let f = a.coefficient(&p);
            if !f.is_zero() {
                terms.push(f.scale(c));
            }
        }
    }
    RatFun::sum(mode, &terms)
}

/// Letters of `w` as a permutation key, when `w` is one.
fn as_permutation(w: &Word, n: usize) -> Option<Permutation> {
    w.to_permutation().filter(|p| p.degree() == n)
}

/// Words listing the elements of `letters` in every order, lexicographically.
fn arrangements(letters: &[u32]) -> Vec<Word> {
    let mut v = letters.to_vec();
    v.sort_unstable();
    let mut out = vec![Word::new(v.clone()).expect("distinct letters")];
    while next_permutation(&mut v) {
        out.push(Word::new(v.clone()).expect("distinct letters"));
    }
    out
}

/// Subsets of `{1..n}` of size `k`, in lexicographic order.
fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every ordered pair `(u, v)` of words on complementary nonempty subsets of
/// `{1..n}`: subsets by size then lexicographically, then `u`, then `v`
/// lexicographically.
pub fn complementary_pairs(n: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for k in 1..n {
        for s in subsets(n as u32, k) {
            let rest: Vec<u32> = (1..=n as u32).filter(|x| !s.contains(x)).collect();
            let vs = arrangements(&rest);
            for u in arrangements(&s) {
                for v in &vs {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    out
}

/// Orthogonality of `A` to `u ⧢ v` for every complementary ordered pair.
/// Since `u ⧢ v = v ⧢ u`, each unordered pair is computed once and
/// certifies both orders.
pub fn is_lie_element(a: &GroupAlgebraElement, method: Method) -> Result<VerificationReport> {
    let n = a.n();
    let pairs = complementary_pairs(n);
    let mut outcome = Ok(());
    let report = VerificationReport::new("lie", method).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            match method {
                Method::Symbolic => {
                    let mut cache: HashMap<(Word, Word), RatFun> = HashMap::new();
                    for (u, v) in &pairs {
                        let value = match cache.remove(&(v.clone(), u.clone())) {
                            Some(value) => value,
                            None => {
                                let value = scalar_product(a, &shuffle_product(u, v)?)?;
                                cache.insert((u.clone(), v.clone()), value.clone());
                                value
                            }
                        };
                        r.record(format!("({u}, {v})"), value.is_zero(), || {
                            format!("<A, {u} sh {v}> = {value}")
                        });
                    }
                }
                Method::Randomized { points, seed } => {
                    let shuffles: Vec<Vec<Permutation>> = pairs
                        .iter()
                        .map(|(u, v)| {
                            shuffle_product(u, v).map(|s| {
                                s.support().filter_map(|w| as_permutation(w, n)).collect()
                            })
                        })
                        .collect::<Result<_>>()?;
                    let index: HashMap<(&Word, &Word), usize> =
                        pairs.iter().enumerate().map(|(i, (u, v))| ((u, v), i)).collect();
                    let one = Rational::one();
                    let mut rng = rng_from_seed(seed);
                    for p in 0..points {
                        let (pt, values) = evaluate_at_random_point(a.mode(), &mut rng, |pt| {
                            let mut at = a.at_point(pt)?;
                            let mut values: Vec<Option<Fraction>> = vec![None; pairs.len()];
                            for (i, (u, v)) in pairs.iter().enumerate() {
                                if let Some(&j) = index.get(&(v, u)) {
                                    if let Some(done) = values[j].clone() {
                                        values[i] = Some(done);
                                        continue;
                                    }
                                }
                                values[i] = Some(at.combination(shuffles[i].iter().map(|w| (w, &one))));
                            }
                            Ok(values)
                        })?;
                        for ((u, v), value) in pairs.iter().zip(values) {
                            let value = value.expect("every pair evaluated");
                            r.record(format!("({u}, {v}) point {p}"), value.is_zero(), || {
                                format!("<A, {u} sh {v}> = {value} at {}", format_point(&pt))
                            });
                        }
                    }
                }
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

/// `[[…[w_1, w_2], …], w_n]` expanded into `2^{n-1}` signed words.
pub fn left_bracket_expansion(w: &Word) -> Result<WordSum> {
    let letters = w.letters();
    let Some((&first, rest)) = letters.split_first() else {
        return Err(Error::EmptyWord);
    };
    let mut acc: Vec<(Vec<u32>, i32)> = vec![(vec![first], 1)];
    for &x in rest {
        let mut next = Vec::with_capacity(2 * acc.len());
        for (word, sign) in &acc {
            let mut right = word.clone();
            right.push(x);
            next.push((right, *sign));
            let mut left = Vec::with_capacity(word.len() + 1);
            left.push(x);
            left.extend_from_slice(word);
            next.push((left, -*sign));
        }
        acc = next;
    }
    let mut out = WordSum::new();
    for (word, sign) in acc {
        out.add_term(Word::new(word)?, Rational::from_integer(sign.into()));
    }
    Ok(out)
}

/// The linear map `w ↦ [[…[w_1, w_2], …], w_n]` applied to every term of `A`.
pub fn dynkin_left_bracketing(a: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let mode = a.mode();
    let mut grouped: BTreeMap<Permutation, Vec<RatFun>> = BTreeMap::new();
    for (sigma, f) in a.terms() {
        for (w, c) in left_bracket_expansion(&sigma.to_word())?.terms() {
            let p = as_permutation(w, mode.n()).expect("rearranges a permutation");
            grouped.entry(p).or_default().push(f.scale(c));
        }
    }
    let mut terms = Vec::with_capacity(grouped.len());
    for (p, fs) in grouped {
        terms.push((p, RatFun::sum(mode, &fs)?));
    }
    GroupAlgebraElement::from_terms(mode, terms)
}

/// For each target word, the signed source words whose bracketing hits it.
fn dynkin_preimages(n: usize) -> Result<BTreeMap<Permutation, Vec<(Permutation, Rational)>>> {
    let mut out: BTreeMap<Permutation, Vec<(Permutation, Rational)>> = BTreeMap::new();
    for sigma in Permutation::all(n) {
        for (w, c) in left_bracket_expansion(&sigma.to_word())?.terms() {
            let p = as_permutation(w, n).expect("rearranges a permutation");
            out.entry(p).or_default().push((sigma.clone(), c.clone()));
        }
    }
    Ok(out)
}

/// `dynkin(A) = n·A`, coefficient by coefficient.
pub fn check_dynkin(a: &GroupAlgebraElement, method: Method) -> Result<VerificationReport> {
    let n = a.n();
    let n_rat = Rational::from_integer((n as i64).into());
    let mut outcome = Ok(());
    let report = VerificationReport::new("dynkin", method).with_param("n", n).timed(|r| {
        outcome = (|| -> Result<()> {
            match method {
                Method::Symbolic => {
                    let lhs = dynkin_left_bracketing(a)?;
                    for sigma in Permutation::all(n) {
                        let (x, y) = (lhs.coefficient(&sigma), a.coefficient(&sigma).scale(&n_rat));
                        let ok = x.equals(&y)?;
                        r.record(format!("[{sigma}]"), ok, || format!("dynkin = {x}, n*A = {y}"));
                    }
                }
                Method::Randomized { points, seed } => {
                    let pre = dynkin_preimages(n)?;
                    let mut rng = rng_from_seed(seed);
                    for p in 0..points {
                        let (pt, rows) = evaluate_at_random_point(a.mode(), &mut rng, |pt| {
                            let mut at = a.at_point(pt)?;
                            let mut rows = Vec::new();
                            for sigma in Permutation::all(n) {
                                let lhs = match pre.get(&sigma) {
                                    Some(src) => at.combination(src.iter().map(|(s, c)| (s, c))),
                                    None => Fraction::zero(),
                                };
                                let rhs = at.combination([(&sigma, &n_rat)]);
                                rows.push((sigma, lhs, rhs));
                            }
                            Ok(rows)
                        })?;
                        for (sigma, lhs, rhs) in rows {
                            r.record(format!("[{sigma}] point {p}"), lhs == rhs, || {
                                format!("dynkin = {lhs}, n*A = {rhs} at {}", format_point(&pt))
                            });
                        }
                    }
                }
            }
            Ok(())
        })();
    });
    outcome.map(|_| report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::klyachko_element;
    use crate::ring::int;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle_product(&w("1"), &w("2")).unwrap();
        assert_eq!(s.to_string(), "12 + 21");
        let s = shuffle_product(&w("13"), &w("2")).unwrap();
        let words: Vec<String> = s.support().map(|x| x.to_string()).collect();
        assert_eq!(words, ["123", "132", "213"]);
        assert_eq!(shuffle_product(&w("132"), &w("1")).unwrap_err(), Error::SharedLetter(1));
        assert_eq!(shuffle_product(&w("12"), &Word::new(vec![]).unwrap()).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn scalar_product_examples() {
        let e3 = klyachko_element(3);
        let s = WordSum::from_terms([(w("123"), int(1))]);
        assert_eq!(
            scalar_product(&e3, &s).unwrap(),
            RatFun::parse("1 / (1 - q1)(1 - q1*q2)", RingMode::cyclic(3)).unwrap()
        );
        assert!(scalar_product(&e3, &WordSum::new()).unwrap().is_zero());
        let sh = shuffle_product(&w("1"), &w("23")).unwrap();
        assert!(scalar_product(&e3, &sh).unwrap().is_zero());
    }

    #[test]
    fn pair_count() {
        assert_eq!(complementary_pairs(5).len(), 480);
        assert_eq!(complementary_pairs(2), vec![(w("1"), w("2")), (w("2"), w("1"))]);
    }

    #[test]
    fn lie_examples() {
        for n in 2..=3 {
            let r = is_lie_element(&klyachko_element(n), Method::Symbolic).unwrap();
            assert!(r.passed(), "{r}");
        }
        let mode = RingMode::cyclic(2);
        let sym = WordSum::from_terms([(w("12"), int(1)), (w("21"), int(1))]).to_element(mode).unwrap();
        let r = is_lie_element(&sym, Method::Symbolic).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures[0].id, "(1, 2)");
        let r = is_lie_element(&sym, Method::Randomized { points: 2, seed: 4 }).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn bracket_expansion() {
        let b = left_bracket_expansion(&w("12")).unwrap();
        assert_eq!(b, WordSum::from_terms([(w("12"), int(1)), (w("21"), int(-1))]));
        let b = left_bracket_expansion(&w("123")).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.coefficient(&w("312")), int(-1));
        assert_eq!(b.coefficient(&w("321")), int(1));
    }

    #[test]
    fn dynkin_examples() {
        let e2 = klyachko_element(2);
        let d = dynkin_left_bracketing(&e2).unwrap();
        assert!(d.equals(&e2.scale(&int(2))).unwrap());
        for n in 2..=3 {
            let e = klyachko_element(n);
            assert!(check_dynkin(&e, Method::Symbolic).unwrap().passed());
            assert!(check_dynkin(&e, Method::Randomized { points: 2, seed: 1 }).unwrap().passed());
        }
    }
}
