//! Exact values at a primitive `l`-th root of unity, as residues in
//! Q[q]/Phi_l(q) written in the power basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::{self, QPoly, ZPoly};
use super::rational::QRat;
use crate::error::{Error, Result};

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Phi_l as an integer polynomial, from the product of `(q^d - 1)^mu(l/d)`.
pub fn cyclotomic_polynomial(l: u64) -> Vec<BigInt> {
    assert!(l >= 1, "cyclotomic order must be positive");
    let divisors: Vec<u64> = (1..=l).filter(|d| l.is_multiple_of(*d)).collect();
    let q_d_minus_one = |d: u64| -> ZPoly {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        p
    };
    let mut num: ZPoly = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(l / d) == 1 {
            num = dense::mul(&num, &q_d_minus_one(d));
        }
    }
    for &d in &divisors {
        if mobius(l / d) == -1 {
            num = dense::div_exact(&num, &q_d_minus_one(d)).expect("Mobius product is exact");
        }
    }
    num
}

/// Euler's totient, which is the degree of Phi_l.
pub fn totient(l: u64) -> usize {
    (1..=l).filter(|&k| num_integer::gcd(k, l) == 1).count()
}

fn multiplicity(p: &mut ZPoly, phi: &[BigInt]) -> i64 {
    let mut m = 0;
    while let Some(q) = dense::div_exact(p, phi) {
        *p = q;
        m += 1;
    }
    m
}

/// Order of vanishing of `f` at a primitive `l`-th root of unity.
pub fn valuation_at_root(f: &QRat, l: u64) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::Domain("valuation of zero is infinite".into()));
    }
    if l == 0 {
        return Err(Error::Domain("root order must be positive".into()));
    }
    let phi = cyclotomic_polynomial(l);
    let (_, mut num) = f.num().to_poly_parts();
    let (_, mut den) = f.den().to_poly_parts();
    Ok(multiplicity(&mut num, &phi) - multiplicity(&mut den, &phi))
}

/// The image of `f` under `q -> q0`, `q0` a primitive `l`-th root of unity.
pub fn specialize_at_root(f: &QRat, l: u64) -> Result<CyclotomicScalar> {
    if l == 0 {
        return Err(Error::Domain("root order must be positive".into()));
    }
    if f.is_zero() {
        return Ok(CyclotomicScalar::zero(l));
    }
    let phi = cyclotomic_polynomial(l);
    let (shift, mut num) = f.num().to_poly_parts();
    let (_, mut den) = f.den().to_poly_parts();
    let valuation = multiplicity(&mut num, &phi) - multiplicity(&mut den, &phi);
    if valuation < 0 {
        return Err(Error::Pole { l, valuation });
    }
    if valuation > 0 {
        return Ok(CyclotomicScalar::zero(l));
    }
    // q^l = 1 modulo Phi_l, so exponents reduce modulo l.
    let mut folded = vec![BigRational::zero(); l as usize];
    for (i, c) in num.iter().enumerate() {
        let e = (shift + i as i64).rem_euclid(l as i64) as usize;
        folded[e] += BigRational::from_integer(c.clone());
    }
    let num_res = dense::rem_monic(&folded, &phi);
    let den_inv = dense::inverse_mod(&dense::to_qpoly(&den), &phi)
        .expect("denominator is coprime to the cyclotomic polynomial");
    Ok(CyclotomicScalar::from_residue(
        l,
        dense::rem_monic(&dense::qmul(&num_res, &den_inv), &phi),
    ))
}

/// An element of Q(zeta_l) in the power basis `1, q, ..., q^(phi(l)-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    l: u64,
    coords: Vec<BigRational>,
}

impl CyclotomicScalar {
    pub fn zero(l: u64) -> Self {
        Self {
            l,
            coords: vec![BigRational::zero(); totient(l)],
        }
    }

    pub fn from_rational(l: u64, r: BigRational) -> Self {
        let mut out = Self::zero(l);
        out.coords[0] = r;
        out
    }

    pub fn one(l: u64) -> Self {
        Self::from_rational(l, BigRational::one())
    }

    /// The primitive root `q0` itself.
    pub fn root(l: u64) -> Self {
        specialize_at_root(&QRat::q_pow(1), l).expect("q has no pole")
    }

    fn from_residue(l: u64, residue: QPoly) -> Self {
        let mut out = Self::zero(l);
        for (slot, c) in out.coords.iter_mut().zip(residue) {
            *slot = c;
        }
        out
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut out = Self::one(self.l);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.l, other.l, "mixing different cyclotomic fields");
    }
}

impl Add<&CyclotomicScalar> for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check_same(rhs);
        CyclotomicScalar {
            l: self.l,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CyclotomicScalar> for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar {
            l: self.l,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&CyclotomicScalar> for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        self.check_same(rhs);
        let phi = cyclotomic_polynomial(self.l);
        let prod = dense::qmul(&self.coords, &rhs.coords);
        CyclotomicScalar::from_residue(self.l, dense::rem_monic(&prod, &phi))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({self})", self.l)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    l: u64,
    coords: Vec<String>,
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

impl Serialize for CyclotomicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            l: self.l,
            coords: self.coords.iter().map(fmt_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        if r.l == 0 || r.coords.len() != totient(r.l) {
            return Err(D::Error::custom("coordinate count must equal phi(l)"));
        }
        let coords = r
            .coords
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { l: r.l, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::{q_binomial, q_integer, QLaurent};

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), z(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), z(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), z(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), z(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), z(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), z(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn specialization_examples() {
        let two = q_integer(2).unwrap().into();
        assert!(specialize_at_root(&two, 2).unwrap().is_zero());

        let ratio = QRat::new(q_integer(4).unwrap(), q_integer(2).unwrap());
        assert_eq!(
            specialize_at_root(&ratio, 2).unwrap().as_rational(),
            Some(BigRational::from_integer(2.into()))
        );
        assert_eq!(
            specialize_at_root(&QRat::one(), 5).unwrap(),
            CyclotomicScalar::one(5)
        );
    }

    #[test]
    fn valuation_examples() {
        let v = |n: i64, l: u64| valuation_at_root(&q_integer(n).unwrap().into(), l).unwrap();
        assert_eq!(v(6, 3), 1);
        assert_eq!(v(5, 3), 0);
        assert_eq!(valuation_at_root(&q_binomial(2, 1).into(), 2).unwrap(), 1);
        assert!(valuation_at_root(&QRat::zero(), 2).is_err());
    }

    #[test]
    fn poles_are_rejected() {
        let f = QRat::new(QLaurent::one(), q_integer(3).unwrap());
        assert!(matches!(specialize_at_root(&f, 3), Err(Error::Pole { .. })));
    }

    #[test]
    fn root_has_order_l() {
        for l in [2u64, 3, 5, 6, 8] {
            let z0 = CyclotomicScalar::root(l);
            assert_eq!(z0.pow(l), CyclotomicScalar::one(l));
            for k in 1..l {
                assert_ne!(z0.pow(k), CyclotomicScalar::one(l));
            }
        }
    }

    #[test]
    fn negative_exponents_and_denominators() {
        // f * q(2 + q^2) = 1, so the specialized values must be inverse
        let f = QRat::new(QLaurent::q_pow(-1), QLaurent::from_coeffs(0, &[2, 0, 1]));
        let v = specialize_at_root(&f, 3).unwrap();
        let den = specialize_at_root(&QLaurent::from_coeffs(1, &[2, 0, 1]).into(), 3).unwrap();
        assert_eq!(&v * &den, CyclotomicScalar::one(3));
    }

    #[test]
    fn json_round_trip() {
        let v = CyclotomicScalar::root(5);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"l":5,"coords":["0/1","1/1","0/1","0/1"]}"#);
        let back: CyclotomicScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
