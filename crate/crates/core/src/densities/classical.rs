//! The log-canonical Poisson bracket on commuting lattice variables and the
//! classical screening maps.

use rayon::prelude::*;

use crate::algebra::{
    site_range, ClassicalElement, Element, ExchangeTable, LatticeAlgebra, LatticeGen,
};
use crate::error::{Error, Result};
use crate::qcoeff::QRat;

/// `{g, h} = c(g, h) g h` with `c = -exchange` of the quantum table, so that
/// `{x_i, y_i} = -x_i y_i` and `{x_i, x_j} = x_i x_j` for `i < j`.
fn structure_constant(g: LatticeGen, h: LatticeGen) -> i64 {
    -LatticeAlgebra.exchange(g, h)
}

/// Bilinear, Leibniz extension: `{m, m'} = (sum e_g e_h c(g, h)) m m'`.
pub fn poisson_bracket(a: &ClassicalElement, b: &ClassicalElement) -> ClassicalElement {
    let table = a.table();
    let mut out = Element::zero(table);
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let mut w = 0;
            for &(g, eg) in ka.factors() {
                for &(h, eh) in kb.factors() {
                    w += eg * eh * structure_constant(g, h);
                }
            }
            if w == 0 {
                continue;
            }
            let ma = Element::from_monomial(table, ka.clone(), ca.clone());
            let mb = Element::from_monomial(table, kb.clone(), cb.clone());
            let prod = (&ma * &mb).scale(&QRat::from_integer(w));
            for (k, v) in prod.terms() {
                out.add_term(k.clone(), v);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScreeningSign {
    Plus,
    Minus,
}

/// `sum_i {x_i, P}` (plus) or `sum_i {y_i, P}` (minus) for degree-0 `P`,
/// over the support widened by one site; the boundary terms must vanish.
pub fn classical_screening(sign: ScreeningSign, p: &ClassicalElement) -> Result<ClassicalElement> {
    let deg = p.degree()?;
    if deg != 0 {
        return Err(Error::NotDegreeZero(deg));
    }
    let table = p.table();
    let Some((lo, hi)) = site_range(p) else {
        return Ok(Element::zero(table));
    };
    let generator = match sign {
        ScreeningSign::Plus => LatticeGen::x,
        ScreeningSign::Minus => LatticeGen::y,
    };
    let sites: Vec<i64> = (lo - 1..=hi + 1).collect();
    let brackets: Vec<ClassicalElement> = sites
        .par_iter()
        .map(|&i| {
            let g = Element::generator(table, generator(i), 1).expect("lattice generator");
            poisson_bracket(&g, p)
        })
        .collect();
    let mut out = Element::zero(table);
    for (&i, b) in sites.iter().zip(&brackets) {
        if (i == lo - 1 || i == hi + 1) && !b.is_zero() {
            return Err(Error::WindowLeak(i));
        }
        out = &out + b;
    }
    Ok(out)
}
