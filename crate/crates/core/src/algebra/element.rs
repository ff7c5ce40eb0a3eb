use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::ExchangeTable;
use crate::error::{Error, Result};
use crate::qcoeff::QRat;

/// A normal-ordered basis key: generator powers sorted in canonical order,
/// no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial<G> {
    factors: Vec<(G, i64)>,
}

impl<G: Copy + Ord> Monomial<G> {
    pub fn unit() -> Self {
        Self {
            factors: Vec::new(),
        }
    }

    /// Collects generator powers into a basis key. This only names a basis
    /// element; no exchange factors are applied.
    pub fn from_factors<I: IntoIterator<Item = (G, i64)>>(iter: I) -> Self {
        let mut acc: BTreeMap<G, i64> = BTreeMap::new();
        for (g, e) in iter {
            *acc.entry(g).or_insert(0) += e;
        }
        Self {
            factors: acc.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(G, i64)] {
        &self.factors
    }

    pub fn exponent(&self, g: G) -> i64 {
        self.factors
            .binary_search_by(|(h, _)| h.cmp(&g))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn degree<T: ExchangeTable<Gen = G>>(&self, table: &T) -> i64 {
        self.factors.iter().map(|&(g, e)| table.degree(g) * e).sum()
    }

    /// Same generators, exponents negated (the basis key of the inverse).
    pub fn negated(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Relabels generators by an order-preserving map.
    pub(crate) fn relabel_monotone<H: Copy + Ord>(&self, f: impl Fn(G) -> H) -> Monomial<H> {
        let factors: Vec<(H, i64)> = self.factors.iter().map(|&(g, e)| (f(g), e)).collect();
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial { factors }
    }
}

/// Normal-ordered product of two basis keys: `a·b = q^e · key`.
pub(crate) fn mul_keys<T: ExchangeTable>(
    table: &T,
    a: &Monomial<T::Gen>,
    b: &Monomial<T::Gen>,
) -> (i64, Monomial<T::Gen>) {
    let mut e = 0;
    for &(g, ea) in &a.factors {
        for &(h, eb) in &b.factors {
            if h < g {
                e += table.theta(h, g) * ea * eb;
            }
        }
    }
    let mut merged = Vec::with_capacity(a.factors.len() + b.factors.len());
    let (mut i, mut j) = (0, 0);
    while i < a.factors.len() || j < b.factors.len() {
        match (a.factors.get(i), b.factors.get(j)) {
            (Some(&(g, x)), Some(&(h, y))) if g == h => {
                if x + y != 0 {
                    merged.push((g, x + y));
                }
                i += 1;
                j += 1;
            }
            (Some(&fa), Some(&fb)) => {
                if fa.0 < fb.0 {
                    merged.push(fa);
                    i += 1;
                } else {
                    merged.push(fb);
                    j += 1;
                }
            }
            (Some(&fa), None) => {
                merged.push(fa);
                i += 1;
            }
            (None, Some(&fb)) => {
                merged.push(fb);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (e, Monomial { factors: merged })
}

/// A finite linear combination of basis monomials with `QRat` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<T: ExchangeTable> {
    table: T,
    terms: BTreeMap<Monomial<T::Gen>, QRat>,
}

impl<T: ExchangeTable> Element<T> {
    pub fn zero(table: &T) -> Self {
        Self {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &T) -> Self {
        Self::scalar(table, QRat::one())
    }

    pub fn scalar(table: &T, c: QRat) -> Self {
        Self::from_monomial(table, Monomial::unit(), c)
    }

    pub fn from_monomial(table: &T, key: Monomial<T::Gen>, coeff: QRat) -> Self {
        let mut out = Self::zero(table);
        out.add_term(key, &coeff);
        out
    }

    /// The single generator power `g^exp`.
    pub fn generator(table: &T, g: T::Gen, exp: i64) -> Result<Self> {
        table.check_generator(g)?;
        Ok(Self::from_monomial(
            table,
            Monomial::from_factors([(g, exp)]),
            QRat::one(),
        ))
    }

    pub fn table(&self) -> &T {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<T::Gen>, &QRat)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::unit()).is_some_and(QRat::is_one)
    }

    pub fn coefficient_of(&self, key: &Monomial<T::Gen>) -> QRat {
        self.terms.get(key).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, key: Monomial<T::Gen>, coeff: &QRat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += coeff;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff.clone());
            }
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Self {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&QRat) -> QRat) -> Self {
        let mut out = Self::zero(&self.table);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v));
        }
        out
    }

    pub fn try_map_coefficients(&self, f: impl Fn(&QRat) -> Result<QRat>) -> Result<Self> {
        let mut out = Self::zero(&self.table);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v)?);
        }
        Ok(out)
    }

    /// Relabels generators into another table along a map that preserves the
    /// canonical order, keeping coefficients.
    pub(crate) fn relabel_monotone<U: ExchangeTable>(
        &self,
        table: &U,
        f: impl Fn(T::Gen) -> U::Gen + Copy,
    ) -> Element<U> {
        Element {
            table: table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.relabel_monotone(f), v.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let mut out = Self::zero(&self.table);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let (e, key) = mul_keys(&self.table, ka, kb);
                let mut c = va * vb;
                if e != 0 {
                    c = &c * &QRat::q_pow(e);
                }
                out.add_term(key, &c);
            }
        }
        Ok(out)
    }

    fn same_table(&self, other: &Self) -> Result<()> {
        if self.table == other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Two-sided inverse of a single-term element.
    pub fn inverse(&self) -> Result<Self> {
        let mut it = self.terms.iter();
        let (Some((key, c)), None) = (it.next(), it.next()) else {
            return Err(Error::NotInvertible(self.to_string()));
        };
        // key · key^{-1}-as-basis = q^e, so the inverse is q^{-e} c^{-1} key^{-1}.
        let neg = key.negated();
        let (e, rest) = mul_keys(&self.table, key, &neg);
        debug_assert!(rest.is_unit());
        let coeff = &c.recip() * &QRat::q_pow(-e);
        Ok(Self::from_monomial(&self.table, neg, coeff))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(&self.table);
        let mut sq = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(out)
    }

    /// Splits into graded components; empty for zero.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, Self> {
        let mut parts: BTreeMap<i64, Self> = BTreeMap::new();
        for (k, v) in &self.terms {
            parts
                .entry(k.degree(&self.table))
                .or_insert_with(|| Self::zero(&self.table))
                .add_term(k.clone(), v);
        }
        parts
    }

    /// Degree of a homogeneous element (zero counts as degree 0).
    pub fn degree(&self) -> Result<i64> {
        let degrees: Vec<i64> = self.homogeneous_parts().into_keys().collect();
        match degrees.as_slice() {
            [] => Ok(0),
            [d] => Ok(*d),
            _ => Err(Error::NotHomogeneous(degrees)),
        }
    }

    /// Algebra homomorphism defined by generator images. Images of generators
    /// that appear with negative exponents must be invertible.
    pub fn substitute<U: ExchangeTable>(
        &self,
        target: &U,
        image: impl Fn(T::Gen) -> Result<Element<U>>,
    ) -> Result<Element<U>> {
        let mut out = Element::zero(target);
        for (key, c) in &self.terms {
            let mut acc = Element::scalar(target, c.clone());
            for &(g, e) in key.factors() {
                acc = acc.try_mul(&image(g)?.pow(e)?)?;
            }
            for (k, v) in acc.terms {
                out.add_term(k, &v);
            }
        }
        Ok(out)
    }

    /// `{"terms":[{"coeff":QRat,"mono":...}]}` in canonical key order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, v)| json!({ "coeff": v, "mono": self.table.monomial_json(k) }))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(table: &T, v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("element JSON needs a \"terms\" array".into()))?;
        let mut out = Self::zero(table);
        for t in terms {
            let coeff: QRat =
                serde_json::from_value(t.get("coeff").cloned().unwrap_or(Value::Null))
                    .map_err(|e| Error::Parse(e.to_string()))?;
            let mono = table.parse_monomial(t.get("mono").unwrap_or(&Value::Null))?;
            for &(g, _) in mono.factors() {
                table.check_generator(g)?;
            }
            out.add_term(mono, &coeff);
        }
        Ok(out)
    }

    fn fmt_monomial(&self, key: &Monomial<T::Gen>) -> String {
        key.factors()
            .iter()
            .map(|&(g, e)| {
                let name = self.table.generator_name(g);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

fn fmt_coeff(c: &QRat) -> (bool, String) {
    if let Some((r, k)) = c.as_scaled_q_power() {
        use num_traits::{One, Signed};
        let neg = r.is_negative();
        let mag = r.abs();
        let q = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        let text = match (mag.is_one(), q.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => q,
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag}{q}"),
        };
        return (neg, text);
    }
    (false, format!("({c})"))
}

impl<T: ExchangeTable> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let (neg, coeff) = fmt_coeff(v);
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = self.fmt_monomial(k);
            match (coeff.as_str(), mono.is_empty()) {
                (c, true) => f.write_str(c)?,
                ("1", false) => f.write_str(&mono)?,
                (c, false) => write!(f, "{c}·{mono}")?,
            }
        }
        Ok(())
    }
}

impl<T: ExchangeTable> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl<T: ExchangeTable> Add<&Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn add(self, rhs: &Element<T>) -> Element<T> {
        self.try_add(rhs)
            .expect("adding elements over different tables")
    }
}

impl<T: ExchangeTable> Sub<&Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn sub(self, rhs: &Element<T>) -> Element<T> {
        self + &(-rhs)
    }
}

impl<T: ExchangeTable> Neg for &Element<T> {
    type Output = Element<T>;
    fn neg(self) -> Element<T> {
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl<T: ExchangeTable> Mul<&Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn mul(self, rhs: &Element<T>) -> Element<T> {
        self.try_mul(rhs)
            .expect("multiplying elements over different tables")
    }
}

/// Reduces a word of generator powers to normal order.
pub fn normal_order<T: ExchangeTable>(table: &T, word: &[(T::Gen, i64)]) -> Result<Element<T>> {
    let mut key = Monomial::unit();
    let mut e = 0;
    for &(g, k) in word {
        table.check_generator(g)?;
        let (de, next) = mul_keys(table, &key, &Monomial::from_factors([(g, k)]));
        e += de;
        key = next;
    }
    Ok(Element::from_monomial(table, key, QRat::q_pow(e)))
}

/// `[a, b]_q = sum over graded parts of a_n b_p - q^(n p) b_p a_n`.
pub fn q_bracket<T: ExchangeTable>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    let mut out = Element::zero(a.table());
    let b_parts = b.homogeneous_parts();
    for (n, an) in a.homogeneous_parts() {
        for (p, bp) in &b_parts {
            let ab = an.try_mul(bp)?;
            let ba = bp.try_mul(&an)?.scale(&QRat::q_pow(n * p));
            out = out.try_add(&ab)?;
            out = out.try_add(&-&ba)?;
        }
    }
    Ok(out)
}
