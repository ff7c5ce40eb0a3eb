//! Exact scalar tower: Laurent polynomials in `q`, their fraction field, and
//! values at roots of unity, plus the q-combinatorics built on them.

mod combinatorics;
mod cyclotomic;
mod dense;
mod laurent;
mod rational;

pub use combinatorics::{
    binomial, bounded_sequences, f_classical, f_q, lemma11_ratio, q_binomial, q_integer,
    verify_binomials, verify_lemma11,
};
pub use cyclotomic::{
    cyclotomic_polynomial, specialize_at_root, totient, valuation_at_root, CyclotomicScalar,
};
pub use laurent::QLaurent;
pub use rational::QRat;
