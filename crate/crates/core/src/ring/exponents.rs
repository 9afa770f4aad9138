use std::cmp::Ordering;
use std::fmt;

use super::RingMode;
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial `q_1^{e_1} ⋯ q_n^{e_n}`.
///
/// Ordered by total degree, then so that `q_1` sorts before `q_2` within a
/// degree. The order is compatible with addition, so it doubles as the
/// monomial order for division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<i32>);

impl Exponents {
    pub fn new(exps: Vec<i32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    /// `q_i` (1-indexed).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Exponents(exps)
    }

    /// Product of the variables named by `indices` (1-indexed, repeats allowed).
    pub fn product_of(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for i in indices {
            exps[i - 1] += 1;
        }
        Exponents(exps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// First nonzero entry is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0.iter().find(|&&e| e != 0).is_some_and(|&e| e > 0)
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Exponents {
        Exponents(self.0.iter().map(|e| e * k).collect())
    }

    pub fn neg(&self) -> Exponents {
        self.scale(-1)
    }

}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Reduce an exponent vector to its representative in `mode`.
///
/// Cyclic mode subtracts `e_n · (1, …, 1)`, so the last entry becomes 0.
pub fn canonicalize_exponents(e: &Exponents, mode: RingMode) -> Result<Exponents> {
    if e.len() != mode.n() {
        return Err(Error::Dimension { expected: mode.n(), found: e.len() });
    }
    Ok(canonical_unchecked(e.clone(), mode))
}

pub(crate) fn canonical_unchecked(mut e: Exponents, mode: RingMode) -> Exponents {
    if mode.is_cyclic() {
        if let Some(&last) = e.0.last() {
            if last != 0 {
                for x in e.0.iter_mut() {
                    *x -= last;
                }
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i32]) -> Exponents {
        Exponents::new(v.to_vec())
    }

    #[test]
    fn cyclic_canonical_forms() {
        let m = RingMode::cyclic(3);
        assert_eq!(canonicalize_exponents(&ev(&[2, 0, 1]), m).unwrap(), ev(&[1, -1, 0]));
        assert_eq!(canonicalize_exponents(&ev(&[0, 0, -1]), m).unwrap(), ev(&[1, 1, 0]));
        assert_eq!(canonicalize_exponents(&ev(&[2, 0, 1]), RingMode::free(3)).unwrap(), ev(&[2, 0, 1]));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let err = canonicalize_exponents(&ev(&[1, 2]), RingMode::cyclic(3)).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 3, found: 2 });
    }

    #[test]
    fn order_is_graded_with_q1_first() {
        let mut v = vec![ev(&[0, 1]), ev(&[1, 0]), ev(&[0, 0]), ev(&[2, 0]), ev(&[1, 1])];
        v.sort();
        assert_eq!(v, vec![ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 1]), ev(&[2, 0]), ev(&[1, 1])]);
    }

    #[test]
    fn lex_sign() {
        assert!(ev(&[0, 1, -5]).is_lex_positive());
        assert!(!ev(&[0, -1, 5]).is_lex_positive());
        assert!(!ev(&[0, 0, 0]).is_lex_positive());
    }
}
