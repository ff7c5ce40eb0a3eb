//! q-integers, q-binomials with out-of-range conventions, and the weight
//! `F_q` attached to a composition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use super::laurent::QLaurent;
use crate::error::{Error, Result};
use crate::report::{ReportBuilder, VerificationReport};

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: i64) -> Result<QLaurent> {
    if n < 0 {
        return Err(Error::Domain(format!("q-integer of negative n = {n}")));
    }
    Ok(QLaurent::from_terms((0..n).map(|k| (k, BigInt::one()))))
}

/// Gaussian binomial, total on Z^2: 1 if `p = 0`, 0 if `p < 0` or
/// `p > max(0, n)`, otherwise `[n]! / ([p]! [n-p]!)`.
pub fn q_binomial(n: i64, p: i64) -> QLaurent {
    if p == 0 {
        return QLaurent::one();
    }
    if p < 0 || p > n.max(0) {
        return QLaurent::zero();
    }
    // Product form: each partial product is itself a q-binomial.
    let mut acc = QLaurent::one();
    for k in 1..=p {
        let num = &acc * &q_integer(n - p + k).expect("n - p + k >= 1");
        acc = num
            .div_exact(&q_integer(k).expect("k >= 1"))
            .unwrap_or_else(|| panic!("q-binomial ({n}, {p}) left a remainder at step {k}"));
    }
    acc
}

/// `F_q(a_1, ..., a_N) = prod_{i<N} C(a_i + a_{i+1} - 1, a_{i+1})`.
pub fn f_q(a: &[i64]) -> QLaurent {
    let mut acc = QLaurent::one();
    for w in a.windows(2) {
        let factor = q_binomial(w[0] + w[1] - 1, w[1]);
        if factor.is_zero() {
            return QLaurent::zero();
        }
        acc = &acc * &factor;
    }
    acc
}

/// `([a_1 + ... + a_n] / [a_1]) F_q(a)` by exact division in Z[q].
pub fn lemma11_ratio(a: &[i64]) -> Result<QLaurent> {
    let first = *a
        .first()
        .ok_or_else(|| Error::Domain("empty composition".into()))?;
    if first <= 0 {
        return Err(Error::Domain(format!(
            "first part must be positive, got {a:?}"
        )));
    }
    let f = f_q(a);
    if f.is_zero() {
        return Ok(f);
    }
    // F_q != 0 forces every part to be nonnegative, so the sum is >= a_1 > 0.
    let total: i64 = a.iter().sum();
    let num = &q_integer(total)? * &f;
    num.div_exact(&q_integer(first)?)
        .ok_or_else(|| Error::LemmaViolation { input: a.to_vec() })
}

/// Ordinary binomial with the same out-of-range conventions as `q_binomial`.
pub fn binomial(n: i64, p: i64) -> BigInt {
    if p == 0 {
        return BigInt::one();
    }
    if p < 0 || p > n.max(0) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for k in 1..=p {
        acc = acc * BigInt::from(n - p + k) / BigInt::from(k);
    }
    acc
}

/// The classical weight `F(a) = prod C(a_i + a_{i+1} - 1, a_{i+1})`.
pub fn f_classical(a: &[i64]) -> BigInt {
    a.windows(2)
        .map(|w| binomial(w[0] + w[1] - 1, w[1]))
        .product()
}

/// All sequences of length `1..=max_len` with first part `>= 1`, other parts
/// `>= 0`, and total at most `sum_max`.
pub fn bounded_sequences(sum_max: i64, max_len: usize) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, left: i64, max_len: usize, out: &mut Vec<Vec<i64>>) {
        out.push(prefix.clone());
        if prefix.len() == max_len {
            return;
        }
        for next in 0..=left {
            prefix.push(next);
            extend(prefix, left - next, max_len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    for first in 1..=sum_max {
        let mut prefix = vec![first];
        extend(&mut prefix, sum_max - first, max_len, &mut out);
    }
    out
}

/// Exhaustive integrality check of `lemma11_ratio` over
/// `bounded_sequences(sum_max, max_len)`. Each quotient is also evaluated at
/// `q = 1` against `(n / a_1) F(a)`.
pub fn verify_lemma11(sum_max: i64, max_len: usize) -> VerificationReport {
    let mut report = ReportBuilder::new("lemma11_integrality")
        .param("sum_max", sum_max)
        .param("max_len", max_len);
    let cases = bounded_sequences(sum_max, max_len);
    let outcomes: Vec<(Vec<i64>, Option<String>)> = cases
        .into_par_iter()
        .map(|a| {
            let problem = match lemma11_ratio(&a) {
                Err(e) => Some(e.to_string()),
                Ok(r) => {
                    let n: i64 = a.iter().sum();
                    let expected = BigRational::new(BigInt::from(n) * f_classical(&a), a[0].into());
                    (BigRational::from_integer(r.eval_at_one()) != expected).then(|| {
                        format!("value at q=1 is {}, expected {expected}", r.eval_at_one())
                    })
                }
            };
            (a, problem)
        })
        .collect();
    for (a, problem) in outcomes {
        let ok = problem.is_none();
        report.check(ok, || json!({ "composition": a, "error": problem }));
    }
    report.finish()
}

/// Symmetry `[n, p] = [n, n-p]`, the q-Pascal rule
/// `[n, p] = [n-1, p-1] + q^p [n-1, p]` and the value `binom(n, p)` at `q = 1`
/// for `0 <= p <= n <= n_max`.
pub fn verify_binomials(n_max: i64) -> VerificationReport {
    let mut report = ReportBuilder::new("q_binomials").param("n_max", n_max);
    for n in 0..=n_max {
        for p in 0..=n {
            let b = q_binomial(n, p);
            report.check(
                b == q_binomial(n, n - p),
                || json!({ "check": "symmetry", "n": n, "p": p }),
            );
            if n >= 1 {
                let pascal = &q_binomial(n - 1, p - 1) + &q_binomial(n - 1, p).shift(p);
                report.check(b == pascal, || json!({ "check": "pascal", "n": n, "p": p }));
            }
            report.check(
                b.eval_at_one() == binomial(n, p),
                || json!({ "check": "value at q=1", "n": n, "p": p }),
            );
        }
    }
    report.finish()
}
