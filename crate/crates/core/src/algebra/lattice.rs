//! Lattice-specific structure: generators, translation `T`, the
//! half-translation `T^(1/2)`, and the pins `x_k y_k`, `y_k x_{k+1}`.

use super::{Element, ExchangeTable, LatticeGen, Letter};
use crate::algebra::tables::{CommutativeLattice, LatticeAlgebra};
use crate::error::Result;

/// Tables whose generators are the lattice letters `x_i`, `y_i`.
pub trait LatticeTable: ExchangeTable<Gen = LatticeGen> {}

impl LatticeTable for LatticeAlgebra {}
impl LatticeTable for CommutativeLattice {}

pub fn x<T: LatticeTable>(table: &T, site: i64) -> Element<T> {
    Element::generator(table, LatticeGen::x(site), 1).expect("lattice generators always exist")
}

pub fn y<T: LatticeTable>(table: &T, site: i64) -> Element<T> {
    Element::generator(table, LatticeGen::y(site), 1).expect("lattice generators always exist")
}

/// `T^k`: shifts every site by `k`.
pub fn translate<T: LatticeTable>(a: &Element<T>, k: i64) -> Element<T> {
    a.relabel_monotone(a.table(), move |g| LatticeGen {
        site: g.site + k,
        letter: g.letter,
    })
}

fn half_step(g: LatticeGen) -> LatticeGen {
    match g.letter {
        Letter::X => LatticeGen::y(g.site),
        Letter::Y => LatticeGen::x(g.site + 1),
    }
}

fn half_step_back(g: LatticeGen) -> LatticeGen {
    match g.letter {
        Letter::X => LatticeGen::y(g.site - 1),
        Letter::Y => LatticeGen::x(g.site),
    }
}

/// `T^(1/2)`: `x_i -> y_i`, `y_i -> x_{i+1}`. The map is monotone in the
/// canonical order, so normal-ordered monomials stay normal-ordered.
pub fn half_translate<T: LatticeTable>(a: &Element<T>) -> Element<T> {
    a.relabel_monotone(a.table(), half_step)
}

pub fn half_translate_inverse<T: LatticeTable>(a: &Element<T>) -> Element<T> {
    a.relabel_monotone(a.table(), half_step_back)
}

/// Smallest and largest occupied site, `None` for scalars.
pub fn site_range<T: LatticeTable>(a: &Element<T>) -> Option<(i64, i64)> {
    let sites = a
        .terms()
        .flat_map(|(k, _)| k.factors().iter().map(|(g, _)| g.site));
    sites.fold(None, |acc, s| match acc {
        None => Some((s, s)),
        Some((lo, hi)) => Some((lo.min(s), hi.max(s))),
    })
}

/// The `j`-th pin: `x_k y_k` for `j = 2k - 1`, `y_k x_{k+1}` for `j = 2k`.
pub fn epingle<T: LatticeTable>(table: &T, j: i64) -> Element<T> {
    if j.rem_euclid(2) == 1 {
        let k = (j + 1).div_euclid(2);
        &x(table, k) * &y(table, k)
    } else {
        let k = j.div_euclid(2);
        &y(table, k) * &x(table, k + 1)
    }
}

/// The `j`-th pin raised to an integer power.
pub fn epingle_power<T: LatticeTable>(table: &T, j: i64, exp: i64) -> Result<Element<T>> {
    epingle(table, j).pow(exp)
}
