//! Conserved densities in pin coordinates.
//!
//! A density is stored as a map from pin exponent vectors to coefficients.
//! The key `(offset, alpha)` stands for the ordered product
//! `e_{offset+1}^{-alpha_1} e_{offset+2}^{-alpha_2} ...` of pins
//! `e_{2k-1} = x_k y_k`, `e_{2k} = y_k x_{k+1}`. A-type terms have offset 0,
//! their half-translates (B-type) offset 1.

mod classical;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{epingle_power, Element, LatticeTable};
use crate::error::{Error, Result};
use crate::qcoeff::{f_classical, lemma11_ratio, CyclotomicScalar, QRat};

pub use classical::{classical_screening, poisson_bracket, ScreeningSign};

/// A multi-index in `I_n`: `2N - 2` nonnegative parts, the first positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    alpha: Vec<i64>,
}

impl Composition {
    pub fn new(alpha: Vec<i64>) -> Result<Self> {
        if alpha.first().is_none_or(|&a| a < 1) || alpha.iter().any(|&a| a < 0) {
            return Err(Error::Domain(format!(
                "composition needs a positive first part and no negative parts: {alpha:?}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn n(&self) -> i64 {
        self.alpha.iter().sum()
    }
}

/// Smallest window `N` with `n <= 2(N - 1)`.
pub fn window_for(n: i64) -> i64 {
    (n + 1) / 2 + 1
}

fn check_size(n: i64, big_n: i64) -> Result<()> {
    if n < 1 || big_n < 2 || n > 2 * (big_n - 1) {
        return Err(Error::Size(format!(
            "need 1 <= n <= 2(N - 1), got n = {n}, N = {big_n}"
        )));
    }
    Ok(())
}

/// All of `I_n` for window `N`, in lexicographic order.
pub fn enumerate_i_n(n: i64, big_n: i64) -> Result<Vec<Composition>> {
    check_size(n, big_n)?;
    let len = (2 * big_n - 2) as usize;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(len);
    fill(&mut prefix, len, n, &mut out);
    Ok(out)
}

fn fill(prefix: &mut Vec<i64>, len: usize, remaining: i64, out: &mut Vec<Composition>) {
    if prefix.len() + 1 == len {
        prefix.push(remaining);
        out.push(Composition {
            alpha: prefix.clone(),
        });
        prefix.pop();
        return;
    }
    let lo = i64::from(prefix.is_empty());
    for a in lo..=remaining {
        prefix.push(a);
        fill(prefix, len, remaining - a, out);
        prefix.pop();
    }
}

/// A pin monomial: `offset` selects the first pin, `alpha` holds the
/// (negated) exponents with trailing zeros removed so keys do not depend on
/// the window.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EpingleKey {
    pub offset: i64,
    pub alpha: Vec<i64>,
}

impl EpingleKey {
    pub fn new(offset: i64, alpha: &[i64]) -> Self {
        let end = alpha.iter().rposition(|&a| a != 0).map_or(0, |i| i + 1);
        Self {
            offset,
            alpha: alpha[..end].to_vec(),
        }
    }

    /// The key shifted by one pin, i.e. the image under `T^(1/2)`.
    pub fn half_translate(&self) -> Self {
        Self {
            offset: self.offset + 1,
            alpha: self.alpha.clone(),
        }
    }

    /// The ordered pin product as an algebra element.
    pub fn to_element<T: LatticeTable>(&self, table: &T) -> Element<T> {
        let mut out = Element::one(table);
        for (j, &a) in self.alpha.iter().enumerate() {
            if a != 0 {
                let pin = epingle_power(table, self.offset + j as i64 + 1, -a)
                    .expect("pins are invertible");
                out = &out * &pin;
            }
        }
        out
    }
}

/// Coefficient rings a density can carry.
pub trait DensityCoeff: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn kind() -> &'static str;
    fn is_zero(&self) -> bool;
    fn to_json(&self) -> Value;
    fn to_text(&self) -> String;
}

impl DensityCoeff for QRat {
    fn kind() -> &'static str {
        "quantum"
    }

    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }

    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("QRat serializes")
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl DensityCoeff for BigRational {
    fn kind() -> &'static str {
        "classical"
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn to_json(&self) -> Value {
        json!(format!("{}/{}", self.numer(), self.denom()))
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl DensityCoeff for CyclotomicScalar {
    fn kind() -> &'static str {
        "specialized"
    }

    fn is_zero(&self) -> bool {
        CyclotomicScalar::is_zero(self)
    }

    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("cyclotomic scalar serializes")
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// A density in pin coordinates. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct EpingleDensity<C> {
    n: i64,
    window: i64,
    terms: BTreeMap<EpingleKey, C>,
}

pub type SpecializedDensity = EpingleDensity<CyclotomicScalar>;

impl<C: DensityCoeff> EpingleDensity<C> {
    pub fn from_terms(
        n: i64,
        window: i64,
        terms: impl IntoIterator<Item = (EpingleKey, C)>,
    ) -> Self {
        Self {
            n,
            window,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn terms(&self) -> &BTreeMap<EpingleKey, C> {
        &self.terms
    }

    pub fn coefficient(&self, key: &EpingleKey) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<D: DensityCoeff>(
        &self,
        f: impl Fn(&EpingleKey, &C) -> Result<D>,
    ) -> Result<EpingleDensity<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            terms.push((k.clone(), f(k, c)?));
        }
        Ok(EpingleDensity::from_terms(self.n, self.window, terms))
    }

    /// `{"n", "N", "type", "terms": [{"alpha", "offset", "coeff"}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({ "alpha": k.alpha, "offset": k.offset, "coeff": c.to_json() }))
            .collect();
        json!({ "n": self.n, "N": self.window, "type": C::kind(), "terms": terms })
    }

    /// One line per term: `coeff · (x1 y1)^-a (y1 x2)^-b ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.terms {
            let pins: Vec<String> = k
                .alpha
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(j, &a)| format!("{}^-{a}", pin_name(k.offset + j as i64 + 1)))
                .collect();
            let c = c.to_text();
            let c = if c.contains(' ') { format!("({c})") } else { c };
            out.push_str(&format!("{c} · {}\n", pins.join(" ")));
        }
        out
    }
}

fn pin_name(j: i64) -> String {
    if j.rem_euclid(2) == 1 {
        let k = (j + 1).div_euclid(2);
        format!("(x{k} y{k})")
    } else {
        let k = j.div_euclid(2);
        format!("(y{k} x{})", k + 1)
    }
}

impl EpingleDensity<QRat> {
    /// Expands every pin product into normal-ordered generators.
    pub fn to_element<T: LatticeTable>(&self, table: &T) -> Element<T> {
        let pieces: Vec<Element<T>> = self
            .terms
            .par_iter()
            .map(|(k, c)| k.to_element(table).scale(c))
            .collect();
        let mut out = Element::zero(table);
        for p in &pieces {
            for (key, c) in p.terms() {
                out.add_term(key.clone(), c);
            }
        }
        out
    }
}

impl EpingleDensity<BigRational> {
    /// Expansion over commuting variables.
    pub fn to_classical_element<T: LatticeTable>(&self, table: &T) -> Element<T> {
        let mut out = Element::zero(table);
        for (k, c) in &self.terms {
            let piece = k.to_element(table).scale(&QRat::from_rational(c));
            for (key, v) in piece.terms() {
                out.add_term(key.clone(), v);
            }
        }
        out
    }
}

fn with_half_translate<C: DensityCoeff>(a: EpingleDensity<C>) -> EpingleDensity<C> {
    let b: Vec<(EpingleKey, C)> = a
        .terms
        .iter()
        .map(|(k, c)| (k.half_translate(), c.clone()))
        .collect();
    let mut out = a;
    out.terms.extend(b);
    out
}

/// `A_n = sum over I_n of ([n]/[alpha_1]) F_q(alpha) · pins^-alpha`.
pub fn density_a(n: i64, big_n: i64) -> Result<EpingleDensity<QRat>> {
    let comps = enumerate_i_n(n, big_n)?;
    let terms: Vec<(EpingleKey, QRat)> = comps
        .par_iter()
        .map(|c| {
            Ok((
                EpingleKey::new(0, &c.alpha),
                QRat::from(lemma11_ratio(&c.alpha)?),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(EpingleDensity::from_terms(n, big_n, terms))
}

/// `B_n = T^(1/2) A_n`.
pub fn density_b(n: i64, big_n: i64) -> Result<EpingleDensity<QRat>> {
    let a = density_a(n, big_n)?;
    let terms: Vec<(EpingleKey, QRat)> = a
        .terms
        .iter()
        .map(|(k, c)| (k.half_translate(), c.clone()))
        .collect();
    Ok(EpingleDensity::from_terms(n, big_n, terms))
}

/// `psi_n = A_n + B_n`. Every coefficient is a Laurent polynomial.
pub fn density_psi(n: i64, big_n: i64) -> Result<EpingleDensity<QRat>> {
    let psi = with_half_translate(density_a(n, big_n)?);
    debug_assert!(psi.terms.values().all(QRat::is_laurent));
    Ok(psi)
}

/// `A'_n = sum over I_n of (1/alpha_1) prod binom(alpha_i + alpha_{i+1} - 1, alpha_{i+1})`.
pub fn density_a_classical(n: i64, big_n: i64) -> Result<EpingleDensity<BigRational>> {
    let comps = enumerate_i_n(n, big_n)?;
    let terms = comps.iter().map(|c| {
        let coeff = BigRational::new(f_classical(&c.alpha), BigInt::from(c.alpha[0]));
        (EpingleKey::new(0, &c.alpha), coeff)
    });
    Ok(EpingleDensity::from_terms(n, big_n, terms))
}

pub fn density_psi_classical(n: i64, big_n: i64) -> Result<EpingleDensity<BigRational>> {
    Ok(with_half_translate(density_a_classical(n, big_n)?))
}
