//! Exact symbolic computation in the twisted symmetric group algebra `K(q)S_n`.
//!
//! The crate builds the Klyachko element with one parameter per letter,
//! `e_n(q) = Σ gmaj_q(σ) σ` and the machinery needed to check its
//! properties mechanically:
//!
//! - [`ring`]: sparse Laurent polynomials over `Q`, free or modulo
//!   `q_1 ⋯ q_n = 1`, and cyclotomic fields.
//! - [`ratfun`]: rational functions whose denominators are products of
//!   `(1 - monomial)` factors.
//! - [`perm`]: permutations, words and descent statistics.
//! - [`groupalg`]: the twisted product, `e_n`, `θ_n`, the γ-action lemma,
//!   idempotency, the left-ideal basis and the root-of-unity specialization.
//! - [`lie`]: shuffles, the scalar product and two Lie-membership tests.
//! - [`ppart`]: chain posets, linear extensions and `(P, ω)`-partitions.
//! - [`theta`]: the star product and the infinite product expansion of `Θ(x)`.
//! - [`report`]: verification reports shared by all suites.

pub mod error;
pub mod groupalg;
pub mod lie;
pub mod perm;
pub mod ppart;
pub mod ratfun;
pub mod report;
pub mod ring;
pub mod sample;
pub mod theta;

pub use error::{Error, Result};
pub use groupalg::{CycloGroupAlgebraElement, GroupAlgebraElement};

pub use perm::{DescentStats, Permutation, Word};
pub use ratfun::RatFun;
pub use report::{Failure, Method, VerificationReport};

pub use ring::{CyclotomicElement, Exponents, Polynomial, Rational, Relation, RingMode};
