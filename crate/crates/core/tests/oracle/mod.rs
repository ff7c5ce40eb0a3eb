//! Self-contained reference arithmetic for the integration tests. Nothing
//! here calls into the library, so agreement is evidence rather than
//! tautology.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// Sparse Laurent polynomial in `q` with small integer coefficients.
pub type Lp = BTreeMap<i64, i128>;

pub fn monomial(c: i128, e: i64) -> Lp {
    let mut p = Lp::new();
    if c != 0 {
        p.insert(e, c);
    }
    p
}

pub fn add(a: &Lp, b: &Lp) -> Lp {
    let mut out = a.clone();
    for (&e, &c) in b {
        let v = out.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            out.remove(&e);
        }
    }
    out
}

pub fn neg(a: &Lp) -> Lp {
    a.iter().map(|(&e, &c)| (e, -c)).collect()
}

pub fn mul(a: &Lp, b: &Lp) -> Lp {
    let mut out = Lp::new();
    for (&ea, &ca) in a {
        for (&eb, &cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn shift(a: &Lp, k: i64) -> Lp {
    a.iter().map(|(&e, &c)| (e + k, c)).collect()
}

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Lp {
    (0..n).map(|e| (e, 1)).collect()
}

/// Gaussian binomials by the q-Pascal rule `C(n,k) = C(n-1,k-1) + q^k C(n-1,k)`,
/// with `C(n,0) = 1` and zero outside `0 <= k <= max(0, n)`.
#[derive(Default)]
pub struct Binomials {
    memo: HashMap<(i64, i64), Lp>,
}

impl Binomials {
    pub fn get(&mut self, n: i64, k: i64) -> Lp {
        if k == 0 {
            return monomial(1, 0);
        }
        if k < 0 || k > n.max(0) {
            return Lp::new();
        }
        if let Some(v) = self.memo.get(&(n, k)) {
            return v.clone();
        }
        let v = add(&self.get(n - 1, k - 1), &shift(&self.get(n - 1, k), k));
        self.memo.insert((n, k), v.clone());
        v
    }

    /// `prod_i C(a_i + a_{i+1} - 1, a_{i+1})`.
    pub fn weight(&mut self, a: &[i64]) -> Lp {
        let mut acc = monomial(1, 0);
        for w in a.windows(2) {
            acc = mul(&acc, &self.get(w[0] + w[1] - 1, w[1]));
        }
        acc
    }
}

pub fn binom(n: i64, k: i64) -> i128 {
    if k == 0 {
        return 1;
    }
    if k < 0 || k > n.max(0) {
        return 0;
    }
    (1..=k).fold(1i128, |acc, j| acc * (n - k + j) as i128 / j as i128)
}

/// Dense coefficients of a polynomial (no negative exponents).
pub fn dense(p: &Lp) -> Vec<i128> {
    assert!(p.keys().all(|&e| e >= 0), "not a polynomial");
    let deg = p.keys().last().copied().unwrap_or(0) as usize;
    let mut v = vec![0; deg + 1];
    for (&e, &c) in p {
        v[e as usize] = c;
    }
    v
}

/// Division by a monic polynomial: `(quotient, remainder)`.
pub fn divmod_monic(p: &[i128], d: &[i128]) -> (Vec<i128>, Vec<i128>) {
    assert_eq!(d.last(), Some(&1));
    let mut r = p.to_vec();
    if r.len() < d.len() {
        return (vec![0], r);
    }
    let mut q = vec![0; r.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + d.len() - 1];
        q[i] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    (q, r)
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// `Phi_l = 1 + q + ... + q^(l-1)` for prime `l`.
pub fn cyclotomic_prime(l: i64) -> Vec<i128> {
    vec![1; l as usize]
}

/// Multiplicity of `Phi_l` (prime `l`) in a nonzero polynomial.
pub fn valuation_prime(p: &[i128], l: i64) -> i64 {
    let d = cyclotomic_prime(l);
    let mut cur = p.to_vec();
    let mut v = 0;
    loop {
        let (q, r) = divmod_monic(&cur, &d);
        if !is_zero(&r) || is_zero(&q) {
            return v;
        }
        cur = q;
        v += 1;
    }
}

/// Value at a primitive `l`-th root (prime `l`) when it is rational. Folding
/// exponents mod `l` gives `sum c_i w^i`; the only relation among the powers
/// is `1 + w + ... + w^(l-1) = 0`.
pub fn at_prime_root(p: &Lp, l: i64) -> Option<i128> {
    let mut c = vec![0i128; l as usize];
    for (&e, &v) in p {
        c[e.rem_euclid(l) as usize] += v;
    }
    let last = c[l as usize - 1];
    c[1..].iter().all(|&x| x == last).then_some(c[0] - last)
}

/// Nonzero tuples in `N^len` with sum at most `s`, by recursion.
pub fn nonzero_tuples(len: usize, s: i64) -> Vec<Vec<i64>> {
    fn go(prefix: &mut Vec<i64>, len: usize, left: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            if prefix.iter().any(|&v| v != 0) {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            go(prefix, len, left - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, s, &mut out);
    out
}

/// Tuples of length `len`, first entry positive, summing to exactly `n`.
pub fn compositions(n: i64, len: usize) -> Vec<Vec<i64>> {
    nonzero_tuples(len, n)
        .into_iter()
        .filter(|a| a[0] >= 1 && a.iter().sum::<i64>() == n)
        .collect()
}
