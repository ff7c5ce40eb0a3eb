//! Truncated series in `1/lambda` with algebra coefficients: inversion, the
//! q-logarithm, continued fractions, and the generating function built from
//! the pins.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{
    epingle_power, ChainTable, CommutativeLattice, Element, ExchangeTable, LatticeAlgebra,
    LatticeTable, Monomial,
};
use crate::densities::{density_psi, density_psi_classical};
use crate::error::{Error, Result};
use crate::qcoeff::{f_q, q_binomial, q_integer, QRat};
use crate::report::{ReportBuilder, VerificationReport};

/// `sum_{k=0}^{order} c_k lambda^-k`; everything beyond `order` is dropped.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<T: ExchangeTable> {
    table: T,
    coeffs: Vec<Element<T>>,
}

impl<T: ExchangeTable> TruncatedSeries<T> {
    pub fn zero(table: &T, order: usize) -> Self {
        Self {
            table: table.clone(),
            coeffs: vec![Element::zero(table); order + 1],
        }
    }

    pub fn one(table: &T, order: usize) -> Self {
        Self::constant(Element::one(table), order)
    }

    pub fn constant(c: Element<T>, order: usize) -> Self {
        let mut s = Self::zero(c.table(), order);
        s.coeffs[0] = c;
        s
    }

    /// `c lambda^-k` (zero when `k > order`).
    pub fn term(c: Element<T>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(c.table(), order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Missing trailing coefficients are zero; extra ones are dropped.
    pub fn from_coeffs(table: &T, coeffs: Vec<Element<T>>, order: usize) -> Self {
        let mut s = Self::zero(table, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn table(&self) -> &T {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Element<T> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Element<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Element::is_zero)
    }

    /// Index of the first nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Constant term equal to the unit.
    pub fn is_in_s1(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            table: self.table.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            table: self.table.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        Self {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Truncated product; output orders are computed in parallel.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order();
        let coeffs: Vec<Element<T>> = (0..=order)
            .into_par_iter()
            .map(|k| {
                let mut acc = Element::zero(&self.table);
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (key, c) in (a * b).terms() {
                        acc.add_term(key.clone(), c);
                    }
                }
                acc
            })
            .collect();
        Ok(Self {
            table: self.table.clone(),
            coeffs,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.table != other.table {
            return Err(Error::TableMismatch);
        }
        if self.order() != other.order() {
            return Err(Error::Size(format!(
                "series orders differ: {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn pow(&self, p: usize) -> Result<Self> {
        let mut out = Self::one(&self.table, self.order());
        for _ in 0..p {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Two-sided inverse of a series with unit constant term:
    /// `h_k = -sum_{j>=1} f_j h_{k-j}`.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_in_s1() {
            return Err(Error::NotInS1);
        }
        let mut h: Vec<Element<T>> = vec![Element::one(&self.table)];
        for k in 1..=self.order() {
            let mut acc = Element::zero(&self.table);
            for j in 1..=k {
                let (f, g) = (&self.coeffs[j], &h[k - j]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                for (key, c) in (f * g).terms() {
                    acc.add_term(key.clone(), &-c);
                }
            }
            h.push(acc);
        }
        Ok(Self {
            table: self.table.clone(),
            coeffs: h,
        })
    }

    /// `sum_{p=1}^{order} w(p) (1 - f^-1)^p`; higher powers vanish by valuation.
    fn log_with(&self, weight: impl Fn(i64) -> QRat) -> Result<Self> {
        let order = self.order();
        let g = Self::one(&self.table, order).try_sub(&self.invert()?)?;
        let mut out = Self::zero(&self.table, order);
        let mut power = Self::one(&self.table, order);
        for p in 1..=order {
            power = power.try_mul(&g)?;
            out = out.try_add(&power.scale(&weight(p as i64)))?;
        }
        Ok(out)
    }

    /// `ln_q f = sum_{p>=1} (1/[p]) (1 - f^-1)^p`.
    pub fn ln_q(&self) -> Result<Self> {
        self.log_with(|p| QRat::from(q_integer(p).expect("p >= 1")).recip())
    }

    /// The ordinary logarithm: the same series with `1/p` in place of `1/[p]`.
    pub fn ln(&self) -> Result<Self> {
        self.log_with(|p| QRat::from_integer(p).recip())
    }

    /// Applies a coefficient map (an algebra morphism) order by order.
    pub fn map<U: ExchangeTable>(
        &self,
        target: &U,
        f: impl Fn(&Element<T>) -> Result<Element<U>> + Send + Sync,
    ) -> Result<TruncatedSeries<U>> {
        let coeffs = self.coeffs.par_iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            table: target.clone(),
            coeffs,
        })
    }

    /// `{"order": D, "coeffs": [element, ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(Element::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(table: &T, v: &Value) -> Result<Self> {
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("series JSON needs an integer \"order\"".into()))?
            as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("series JSON needs a \"coeffs\" array".into()))?;
        if coeffs.len() != order + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .iter()
            .map(|c| Element::from_json(table, c))
            .collect::<Result<_>>()?;
        Ok(Self {
            table: table.clone(),
            coeffs,
        })
    }
}

/// The nested continued fraction `M_m = (1 - t_1 M_{m-1}(t_2, ...))^-1`,
/// `M_1 = (1 - t_m)^-1`, evaluated from the innermost level out. Every `t_i`
/// must have valuation at least 1.
pub fn continued_fraction_m<T: ExchangeTable>(
    ts: &[TruncatedSeries<T>],
) -> Result<TruncatedSeries<T>> {
    let last = ts
        .last()
        .ok_or_else(|| Error::Size("continued fraction needs at least one entry".into()))?;
    for t in ts {
        if !t.coeff(0).is_zero() {
            return Err(Error::ValuationZero);
        }
    }
    let order = last.order();
    let one = TruncatedSeries::one(last.table(), order);
    let mut m = one.try_sub(last)?.invert()?;
    for t in ts.iter().rev().skip(1) {
        m = one.try_sub(&t.try_mul(&m)?)?.invert()?;
    }
    Ok(m)
}

/// Generators of the chain algebra placed at order one: `t_i lambda^-1`.
pub fn chain_variables(rank: usize, order: usize) -> Vec<TruncatedSeries<ChainTable>> {
    let table = ChainTable::new(rank);
    (1..=rank)
        .map(|i| {
            let t = Element::generator(&table, i, 1).expect("index within rank");
            TruncatedSeries::term(t, 1, order)
        })
        .collect()
}

/// An algebra morphism out of the chain algebra given by generator images.
/// Construction checks that the images obey the same exchange rules.
#[derive(Clone, Debug)]
pub struct ChainMorphism<U: ExchangeTable> {
    source: ChainTable,
    images: Vec<Element<U>>,
}

impl<U: ExchangeTable> ChainMorphism<U> {
    pub fn new(images: Vec<Element<U>>) -> Result<Self> {
        let source = ChainTable::new(images.len());
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                let (a, b) = (&images[i], &images[j]);
                let theta = source.theta(i + 1, j + 1);
                if b * a != (a * b).scale(&QRat::q_pow(theta)) {
                    return Err(Error::IncompatibleSubstitution(i + 1, j + 1));
                }
            }
        }
        Ok(Self { source, images })
    }

    pub fn source(&self) -> &ChainTable {
        &self.source
    }

    pub fn apply(&self, e: &Element<ChainTable>) -> Result<Element<U>> {
        if e.table() != &self.source {
            return Err(Error::TableMismatch);
        }
        let target = self.images[0].table().clone();
        e.substitute(&target, |g| Ok(self.images[g - 1].clone()))
    }

    pub fn apply_series(&self, s: &TruncatedSeries<ChainTable>) -> Result<TruncatedSeries<U>> {
        let target = self.images[0].table().clone();
        s.map(&target, |c| self.apply(c))
    }
}

/// `t_j -> e_{j + shift}^-1`, the pin substitution (`shift` 0 builds `U`,
/// `shift` 1 builds `V`).
pub fn pin_morphism<T: LatticeTable>(
    table: &T,
    rank: usize,
    shift: i64,
) -> Result<ChainMorphism<T>> {
    let images = (1..=rank as i64)
        .map(|j| epingle_power(table, j + shift, -1))
        .collect::<Result<_>>()?;
    ChainMorphism::new(images)
}

fn pin_fraction<T: LatticeTable>(
    table: &T,
    big_n: i64,
    order: usize,
    shift: i64,
) -> Result<TruncatedSeries<T>> {
    if big_n < 2 {
        return Err(Error::Size(format!("need N >= 2, got {big_n}")));
    }
    let rank = (2 * big_n - 2) as usize;
    let ts: Vec<TruncatedSeries<T>> = (1..=rank as i64)
        .map(|j| {
            Ok(TruncatedSeries::term(
                epingle_power(table, j + shift, -1)?,
                1,
                order,
            ))
        })
        .collect::<Result<_>>()?;
    continued_fraction_m(&ts)
}

/// `U = M_{2N-2}((x_1 y_1)^-1 lambda^-1, (y_1 x_2)^-1 lambda^-1, ...)`.
pub fn build_u<T: LatticeTable>(table: &T, big_n: i64, order: usize) -> Result<TruncatedSeries<T>> {
    pin_fraction(table, big_n, order, 0)
}

/// `V = M_{2N-2}((y_1 x_2)^-1 lambda^-1, (x_2 y_2)^-1 lambda^-1, ...)`.
pub fn build_v<T: LatticeTable>(table: &T, big_n: i64, order: usize) -> Result<TruncatedSeries<T>> {
    pin_fraction(table, big_n, order, 1)
}

/// Both sides of the generating-function identity up to order `2N - 2`.
pub struct GeneratingSides<T: ExchangeTable> {
    pub lhs: TruncatedSeries<T>,
    pub rhs: TruncatedSeries<T>,
}

/// `ln_q U + ln_q V` against `sum_p psi_p / [p] lambda^-p`.
pub fn generating_sides(big_n: i64) -> Result<GeneratingSides<LatticeAlgebra>> {
    let table = LatticeAlgebra;
    let order = (2 * big_n - 2) as usize;
    let lhs = build_u(&table, big_n, order)?
        .ln_q()?
        .try_add(&build_v(&table, big_n, order)?.ln_q()?)?;
    let mut rhs = vec![Element::zero(&table)];
    for p in 1..=order as i64 {
        let psi = density_psi(p, big_n)?.to_element(&table);
        rhs.push(psi.scale(&QRat::from(q_integer(p)?).recip()));
    }
    Ok(GeneratingSides {
        lhs,
        rhs: TruncatedSeries::from_coeffs(&table, rhs, order),
    })
}

/// `ln U + ln V` over commuting variables against `sum_p psi'_p lambda^-p`.
pub fn generating_sides_classical(big_n: i64) -> Result<GeneratingSides<CommutativeLattice>> {
    let table = CommutativeLattice;
    let order = (2 * big_n - 2) as usize;
    let lhs = build_u(&table, big_n, order)?
        .ln()?
        .try_add(&build_v(&table, big_n, order)?.ln()?)?;
    let mut rhs = vec![Element::zero(&table)];
    for p in 1..=order as i64 {
        rhs.push(density_psi_classical(p, big_n)?.to_classical_element(&table));
    }
    Ok(GeneratingSides {
        lhs,
        rhs: TruncatedSeries::from_coeffs(&table, rhs, order),
    })
}

/// Coefficient-wise comparison of the generating-function identity. For the
/// quantum case each `[p] lhs_p` must also have Laurent coefficients.
pub fn verify_generating_identity(big_n: i64, quantum: bool) -> VerificationReport {
    let identity = if quantum {
        "genfun"
    } else {
        "genfun-classical"
    };
    let mut report = ReportBuilder::new(identity).param("N", big_n);
    if quantum {
        match generating_sides(big_n) {
            Ok(sides) => compare_sides(&mut report, &sides, true),
            Err(e) => report.check(false, || json!({ "error": e.to_string() })),
        }
    } else {
        match generating_sides_classical(big_n) {
            Ok(sides) => compare_sides(&mut report, &sides, false),
            Err(e) => report.check(false, || json!({ "error": e.to_string() })),
        }
    }
    report.finish()
}

fn compare_sides<T: ExchangeTable>(
    report: &mut ReportBuilder,
    sides: &GeneratingSides<T>,
    quantum: bool,
) {
    for k in 0..=sides.lhs.order() {
        let (l, r) = (sides.lhs.coeff(k), sides.rhs.coeff(k));
        report.check(
            l == r,
            || json!({ "order": k, "difference": (l - r).to_json() }),
        );
        if quantum && k > 0 {
            let scaled = l.scale(&QRat::from(q_integer(k as i64).expect("k >= 1")));
            report.check(
                scaled.terms().all(|(_, c)| c.is_laurent()),
                || json!({ "order": k, "non_laurent": scaled.to_json() }),
            );
        }
    }
}

/// `[u (1 - v)^-1]^n` against `sum_k C(n+k-1, k) u^n v^k` with
/// `v u = q u v`, and `prod_{s<n} (1 - q^s X)^-1 = sum_k C(n+k-1, k) X^k`,
/// for `n <= n_max` as series of order `order`.
pub fn verify_lemma52(n_max: i64, order: usize) -> VerificationReport {
    let mut report = ReportBuilder::new("lemma52")
        .param("n_max", n_max)
        .param("order", order as u64);
    let vars = chain_variables(2, order);
    let (u, v) = (&vars[0], &vars[1]);
    let table = *u.table();
    let one = TruncatedSeries::one(&table, order);
    let base = u
        .try_mul(
            &one.try_sub(v)
                .and_then(|s| s.invert())
                .expect("1 - v is in S1"),
        )
        .expect("same table");
    let single = ChainTable::new(1);
    let x = TruncatedSeries::term(Element::generator(&single, 1, 1).expect("t1"), 1, order);
    let one_x = TruncatedSeries::one(&single, order);
    for n in 0..=n_max {
        let lhs = base.pow(n as usize).expect("same table");
        let mut rhs = TruncatedSeries::zero(&table, order);
        let un = u.pow(n as usize).expect("same table");
        for k in 0..=order as i64 {
            let term = un
                .try_mul(&v.pow(k as usize).expect("same table"))
                .expect("same table")
                .scale(&QRat::from(q_binomial(n + k - 1, k)));
            rhs = rhs.try_add(&term).expect("same table");
        }
        report.check(
            lhs == rhs,
            || json!({ "n": n, "identity": "power", "lhs": lhs.to_json(), "rhs": rhs.to_json() }),
        );

        let mut prod = one_x.clone();
        for s in 0..n {
            let factor = one_x
                .try_sub(&x.scale(&QRat::q_pow(s)))
                .and_then(|f| f.invert())
                .expect("in S1");
            prod = prod.try_mul(&factor).expect("same table");
        }
        let mut series = TruncatedSeries::zero(&single, order);
        for k in 0..=order as i64 {
            let xk = Element::generator(&single, 1, k).expect("t1");
            let term = TruncatedSeries::term(
                xk.scale(&QRat::from(q_binomial(n + k - 1, k))),
                k as usize,
                order,
            );
            series = series.try_add(&term).expect("same table");
        }
        report.check(
            prod == series,
            || json!({ "n": n, "identity": "q-binomial series" }),
        );
    }
    report.finish()
}

/// `ln_q M_m(t_1, ..., t_m) = sum_{alpha_1 > 0} (1/[alpha_1]) F_q(alpha) t^alpha`
/// in the chain algebra, for `m <= m_max`.
pub fn verify_lemma53(m_max: usize, order: usize) -> VerificationReport {
    let mut report = ReportBuilder::new("lemma53")
        .param("m_max", m_max as u64)
        .param("order", order as u64);
    for m in 1..=m_max {
        let lhs = continued_fraction_m(&chain_variables(m, order))
            .and_then(|s| s.ln_q())
            .expect("continued fraction lies in S1");
        let rhs = lemma53_rhs(m, order);
        report.check(
            lhs == rhs,
            || json!({ "m": m, "difference": lhs.try_sub(&rhs).expect("same shape").to_json() }),
        );
    }
    report.finish()
}

/// The right-hand side of the continued-fraction logarithm formula.
pub fn lemma53_rhs(m: usize, order: usize) -> TruncatedSeries<ChainTable> {
    let table = ChainTable::new(m);
    let mut coeffs = vec![Element::zero(&table); order + 1];
    let mut alpha = vec![0i64; m];
    loop {
        let total: i64 = alpha.iter().sum();
        if alpha[0] > 0 && total as usize <= order {
            let c = QRat::new(f_q(&alpha), q_integer(alpha[0]).expect("alpha_1 > 0"));
            let key = Monomial::from_factors(alpha.iter().enumerate().map(|(i, &a)| (i + 1, a)));
            coeffs[total as usize].add_term(key, &c);
        }
        // Odometer over [0, order]^m.
        let mut i = 0;
        loop {
            if i == m {
                return TruncatedSeries::from_coeffs(&table, coeffs, order);
            }
            alpha[i] += 1;
            if alpha[i] as usize <= order {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
}

/// Naturality of `ln_q` under the pin substitution: mapping `ln_q M` from the
/// chain algebra equals `ln_q U` computed in the lattice algebra.
pub fn verify_ln_naturality(big_n: i64, order: usize) -> VerificationReport {
    let mut report = ReportBuilder::new("ln-naturality")
        .param("N", big_n)
        .param("order", order as u64);
    let table = LatticeAlgebra;
    let rank = (2 * big_n - 2) as usize;
    let outcome = (|| -> Result<(TruncatedSeries<LatticeAlgebra>, TruncatedSeries<LatticeAlgebra>)> {
        let morph = pin_morphism(&table, rank, 0)?;
        let mapped = morph.apply_series(&continued_fraction_m(&chain_variables(rank, order))?.ln_q()?)?;
        Ok((mapped, build_u(&table, big_n, order)?.ln_q()?))
    })();
    match outcome {
        Ok((a, b)) => report.check(
            a == b,
            || json!({ "difference": a.try_sub(&b).expect("same shape").to_json() }),
        ),
        Err(e) => report.check(false, || json!({ "error": e.to_string() })),
    }
    report.finish()
}
