//! Sparse Laurent polynomials over exact rationals and cyclotomic fields.

mod cyclotomic;
mod exponents;
pub(crate) mod parse;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

pub use cyclotomic::{
    cyclotomic_coefficients, cyclotomic_polynomial, euler_totient, CyclotomicElement, CyclotomicField,
};
pub use exponents::{canonicalize_exponents, Exponents};
pub use poly::Polynomial;
pub(crate) use poly::{
    check_point as poly_check_point, monomial_value as poly_monomial_value,
    permute_exponents as poly_permute_exponents,
};

/// Arbitrary-precision rational number. Always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Relation imposed on the variables of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// No relation: ordinary Laurent polynomials.
    Free,
    /// `q_1 q_2 ⋯ q_n = 1`.
    Cyclic,
}

/// Number of variables together with the relation they satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingMode {
    n: usize,
    relation: Relation,
}

impl RingMode {
    pub fn free(n: usize) -> Self {
        RingMode { n, relation: Relation::Free }
    }

    /// Panics if `n == 0`: the relation needs at least one variable.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic mode needs at least one variable");
        RingMode { n, relation: Relation::Cyclic }
    }

    pub fn new(n: usize, relation: Relation) -> Self {
        match relation {
            Relation::Free => Self::free(n),
            Relation::Cyclic => Self::cyclic(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn is_cyclic(&self) -> bool {
        self.relation == Relation::Cyclic
    }

    /// Variable letter used when rendering: `q` in cyclic mode, `x` otherwise.
    pub fn symbol(&self) -> char {
        match self.relation {
            Relation::Cyclic => 'q',
            Relation::Free => 'x',
        }
    }
}

impl fmt::Display for RingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::Free => write!(f, "free({})", self.n),
            Relation::Cyclic => write!(f, "cyclic({})", self.n),
        }
    }
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q` for proper fractions, plain integers otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
