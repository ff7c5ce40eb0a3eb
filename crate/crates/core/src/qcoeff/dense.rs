//! Dense univariate polynomial helpers backing gcd, exact division and
//! cyclotomic reduction. Coefficient `i` is the coefficient of `q^i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type ZPoly = Vec<BigInt>;
pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive_part(p: &[BigInt]) -> ZPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: ZPoly = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Division over the integers; `None` when the quotient is not in Z[q].
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let lead = &b[db];
    let mut rem: ZPoly = a.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            return None;
        }
        let (c, r) = rem[dr].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    Some(quot)
}

/// Pseudo-remainder of `a` by `b` (scaled so no fractions appear).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo-remainder by zero");
    let lead = &b[db];
    let mut rem: ZPoly = a.to_vec();
    trim(&mut rem);
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone();
        let shift = dr - db;
        for x in rem.iter_mut() {
            *x *= lead;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        trim(&mut rem);
    }
    rem
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    primitive_part(&x)
}

pub(crate) fn to_qpoly(p: &[BigInt]) -> QPoly {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Remainder of `a` modulo the monic integer polynomial `m`.
pub(crate) fn rem_monic(a: &[BigRational], m: &[BigInt]) -> QPoly {
    let dm = degree(m).expect("modulus must be nonzero");
    debug_assert!(m[dm].is_one());
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    while let Some(dr) = degree(&rem) {
        if dr < dm {
            break;
        }
        let c = rem[dr].clone();
        let shift = dr - dm;
        for (i, mc) in m.iter().enumerate() {
            rem[shift + i] -= &c * BigRational::from_integer(mc.clone());
        }
        trim(&mut rem);
    }
    rem
}

pub(crate) fn qmul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo `m` over the rationals, if `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigInt]) -> Option<QPoly> {
    let m_q = to_qpoly(m);
    let (mut r0, mut r1) = (m_q, rem_monic(a, m));
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (quot, rem) = qdivrem(&r0, &r1);
        let s2 = qsub(&s0, &qmul(&quot, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv_lead = r0[0].recip();
    let scaled: QPoly = s0.iter().map(|c| c * &inv_lead).collect();
    Some(rem_monic(&scaled, m))
}
