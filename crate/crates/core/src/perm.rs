//! Permutations, words over the positive integers, and descent statistics.
//!
//! Everything is 1-indexed: `σ.image(i)` is `σ(i)` and descent positions
//! run over `1..n`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Permutation in one-line notation.
///
/// Ordered by degree first, then lexicographically, so that series indexed by
/// permutations of several sizes list `ε, 1, 12, 21, 123, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

/// Word with pairwise distinct positive letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

/// Descent set, major index and circular descent set of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStats {
    pub descents: BTreeSet<usize>,
    pub maj: usize,
    pub circular_descents: BTreeSet<usize>,
    pub circular_count: usize,
}

impl Permutation {
    /// Validates that `image` is a bijection on `{1, …, n}`.
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            let x = x as usize;
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(image))
    }

    pub fn from_slice(image: &[usize]) -> Result<Self> {
        let bytes = image
            .iter()
            .map(|&x| u8::try_from(x).map_err(|_| Error::InvalidPermutation(format!("{image:?}"))))
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bytes)
    }

    /// Accepts `231` (single digits) or `2,3,1`; `ε` or the empty string is
    /// the permutation of degree 0.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "e" {
            return Ok(Permutation(Vec::new()));
        }
        let bad = || Error::InvalidPermutation(text.to_string());
        let image: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|s| s.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Self::new(image)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// `γ^i` where `γ` is the n-cycle `k ↦ k + 1 (mod n)`, one-line `23…n1`.
    pub fn cycle_power(n: usize, i: i64) -> Self {
        if n == 0 {
            return Permutation(Vec::new());
        }
        let shift = i.rem_euclid(n as i64) as usize;
        Permutation((0..n).map(|k| ((k + shift) % n + 1) as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `(σ∘τ)(i) = σ(τ(i))`: τ acts first.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation> {
        if self.degree() != tau.degree() {
            return Err(Error::Dimension { expected: self.degree(), found: tau.degree() });
        }
        Ok(Permutation(tau.0.iter().map(|&t| self.0[t as usize - 1]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.iter().map(|&x| x as u32).collect())
    }

    pub fn descent_stats(&self) -> DescentStats {
        stats_of(&self.0)
    }

    pub fn descents(&self) -> BTreeSet<usize> {
        descent_positions(&self.0)
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    /// Size of the circular descent set.
    pub fn circular_descent_count(&self) -> usize {
        stats_of(&self.0).circular_count
    }

    /// All permutations of `{1, …, n}` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations { next: Some(Permutation::identity(n)) }
    }

    /// Next permutation in lexicographic order, if any.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut v = self.0.clone();
        next_permutation(&mut v).then_some(Permutation(v))
    }
}

pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Iterator over `S_n` in lexicographic order.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        self.next = current.next_lex();
        Some(current)
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        render_letters(f, self.0.iter().map(|&x| x as u32), self.0.len() > 9)
    }
}

fn render_letters(
    f: &mut fmt::Formatter<'_>,
    letters: impl Iterator<Item = u32>,
    separated: bool,
) -> fmt::Result {
    for (i, x) in letters.enumerate() {
        if separated && i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn descent_positions<T: Ord>(w: &[T]) -> BTreeSet<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

fn stats_of<T: Ord>(w: &[T]) -> DescentStats {
    let descents = descent_positions(w);
    let maj = descents.iter().sum();
    let mut circular_descents = descents.clone();
    if let (Some(first), Some(last)) = (w.first(), w.last()) {
        if !(last < first) {
            circular_descents.insert(w.len());
        }
    }
    let circular_count = circular_descents.len();
    DescentStats { descents, maj, circular_descents, circular_count }
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &x in &letters {
            if x == 0 {
                return Err(Error::InvalidPermutation(format!("letter 0 in {letters:?}")));
            }
            if !seen.insert(x) {
                return Err(Error::RepeatedLetter(x));
            }
        }
        Ok(Word(letters))
    }

    /// Digits `382` or comma-separated `3,8,12`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("bad word {text:?}"));
        let letters: Vec<u32> = if text.contains(',') {
            text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            text.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        };
        Self::new(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn descent_stats(&self) -> Result<DescentStats> {
        if self.0.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(stats_of(&self.0))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word::new(letters)
    }

    /// The permutation order-isomorphic to this word.
    pub fn standardize(&self) -> Permutation {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by_key(|&i| self.0[i]);
        let mut image = vec![0u8; self.0.len()];
        for (rank, &i) in order.iter().enumerate() {
            image[i] = (rank + 1) as u8;
        }
        Permutation(image)
    }

    /// The word read as a permutation, when its letters are exactly `1..=n`.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let bytes: Option<Vec<u8>> = self.0.iter().map(|&x| u8::try_from(x).ok()).collect();
        Permutation::new(bytes?).ok()
    }
}

impl From<&Permutation> for Word {
    fn from(p: &Permutation) -> Word {
        p.to_word()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let separated = self.0.iter().any(|&x| x > 9);
        render_letters(f, self.0.iter().copied(), separated)
    }
}
