//! Rational functions in `q` over the rationals, kept in a canonical form.
//!
//! Canonical form: `num / den` with `gcd(num, den) = 1` over Q[q], the joint
//! integer content of `num` and `den` equal to 1, `den` a polynomial with a
//! nonzero constant term and a positive leading coefficient. Powers of `q`
//! are units and live in the numerator.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense;
use super::laurent::QLaurent;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRat {
    num: QLaurent,
    den: QLaurent,
}

impl QRat {
    pub fn zero() -> Self {
        Self {
            num: QLaurent::zero(),
            den: QLaurent::one(),
        }
    }

    pub fn one() -> Self {
        QLaurent::one().into()
    }

    pub fn q_pow(k: i64) -> Self {
        QLaurent::q_pow(k).into()
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        QLaurent::constant(c).into()
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            QLaurent::constant(r.numer().clone()),
            QLaurent::constant(r.denom().clone()),
        )
    }

    /// Builds and canonicalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: QLaurent, den: QLaurent) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (sa, mut pn) = num.to_poly_parts();
        let (sb, mut pd) = den.to_poly_parts();
        if pd.len() > 1 && pn.len() > 1 {
            let g = dense::gcd(&pn, &pd);
            if g.len() > 1 {
                pn = dense::div_exact(&pn, &g).expect("gcd divides numerator");
                pd = dense::div_exact(&pd, &g).expect("gcd divides denominator");
            }
        }
        let c = dense::content(&pn).gcd(&dense::content(&pd));
        if !c.is_one() {
            pn.iter_mut().for_each(|x| *x /= &c);
            pd.iter_mut().for_each(|x| *x /= &c);
        }
        if pd.last().is_some_and(|l| l.is_negative()) {
            pn.iter_mut().for_each(|x| *x = -&*x);
            pd.iter_mut().for_each(|x| *x = -&*x);
        }
        Self {
            num: QLaurent::from_poly_parts(sa - sb, &pn),
            den: QLaurent::from_poly_parts(0, &pd),
        }
    }

    pub fn num(&self) -> &QLaurent {
        &self.num
    }

    pub fn den(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Z[q, q^-1].
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&QLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Exact value at `q = 1`; `None` on a pole.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.eval_at_one(), d))
    }

    /// Equality by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// `c * q^k` with rational `c`, or `None`.
    pub(crate) fn as_scaled_q_power(&self) -> Option<(BigRational, i64)> {
        if !self.num.is_monomial() || !self.den.is_constant_poly() {
            return None;
        }
        let (k, c) = self.num.terms().next()?;
        let d = self.den.coeff(0);
        Some((BigRational::new(c.clone(), d), k))
    }
}

impl QLaurent {
    fn is_constant_poly(&self) -> bool {
        self.len() == 1 && self.min_exp() == Some(0)
    }
}

impl From<QLaurent> for QRat {
    fn from(num: QLaurent) -> Self {
        Self {
            num,
            den: QLaurent::one(),
        }
    }
}

impl From<i64> for QRat {
    fn from(c: i64) -> Self {
        QLaurent::constant(c).into()
    }
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num + &rhs.num).into();
        }
        if self.den == rhs.den {
            return QRat::new(&self.num + &rhs.num, self.den.clone());
        }
        QRat::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, rhs: QRat) -> QRat {
        &self + &rhs
    }
}

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, rhs: QRat) -> QRat {
        &self - &rhs
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        QRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, rhs: QRat) -> QRat {
        &self * &rhs
    }
}

impl Div<&QRat> for &QRat {
    type Output = QRat;
    #[allow(clippy::suspicious_arithmetic_impl)] // multiply by the reciprocal
    fn div(self, rhs: &QRat) -> QRat {
        self * &rhs.recip()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &QLaurent| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct QRatRepr {
    num: QLaurent,
    den: QLaurent,
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QRatRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QRatRepr::deserialize(d)?;
        if r.den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(QRat::new(r.num, r.den))
    }
}
