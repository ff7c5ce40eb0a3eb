//! Concrete exchange tables: the lattice algebra, its commutative
//! (classical) shadow, and the chain algebra of `t_1, ..., t_n`.

use serde_json::{json, Value};

use super::{ExchangeTable, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    X,
    Y,
}

/// `x_site` or `y_site`. Canonical order: site ascending, `x` before `y`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeGen {
    pub site: i64,
    pub letter: Letter,
}

impl LatticeGen {
    pub fn x(site: i64) -> Self {
        Self {
            site,
            letter: Letter::X,
        }
    }

    pub fn y(site: i64) -> Self {
        Self {
            site,
            letter: Letter::Y,
        }
    }
}

/// The lattice algebra: for `i < j`
/// `x_i x_j = q x_j x_i`, `y_i y_j = q y_j y_i`,
/// `x_i y_j = q^-1 y_j x_i`, `y_i x_j = q^-1 x_j y_i`, and `x_i y_i = q^-1 y_i x_i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct LatticeAlgebra;

/// Commuting variables `x_i, y_i`: the classical limit.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct CommutativeLattice;

fn lattice_name(g: LatticeGen) -> String {
    match g.letter {
        Letter::X => format!("x{}", g.site),
        Letter::Y => format!("y{}", g.site),
    }
}

fn lattice_degree(g: LatticeGen) -> i64 {
    match g.letter {
        Letter::X => 1,
        Letter::Y => -1,
    }
}

/// `[[site, xexp, yexp], ...]` sorted by site.
fn lattice_monomial_json(m: &Monomial<LatticeGen>) -> Value {
    let mut rows: Vec<[i64; 3]> = Vec::new();
    for &(g, e) in m.factors() {
        if rows.last().is_none_or(|r| r[0] != g.site) {
            rows.push([g.site, 0, 0]);
        }
        let row = rows.last_mut().expect("row just pushed");
        match g.letter {
            Letter::X => row[1] = e,
            Letter::Y => row[2] = e,
        }
    }
    json!(rows)
}

fn parse_lattice_monomial(v: &Value) -> Result<Monomial<LatticeGen>> {
    let rows: Vec<[i64; 3]> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Monomial::from_factors(rows.iter().flat_map(
        |&[site, xe, ye]| [(LatticeGen::x(site), xe), (LatticeGen::y(site), ye)],
    )))
}

impl ExchangeTable for LatticeAlgebra {
    type Gen = LatticeGen;

    fn theta(&self, earlier: LatticeGen, later: LatticeGen) -> i64 {
        if earlier.site == later.site || earlier.letter != later.letter {
            1
        } else {
            -1
        }
    }

    fn degree(&self, g: LatticeGen) -> i64 {
        lattice_degree(g)
    }

    fn generator_name(&self, g: LatticeGen) -> String {
        lattice_name(g)
    }

    fn monomial_json(&self, m: &Monomial<LatticeGen>) -> Value {
        lattice_monomial_json(m)
    }

    fn parse_monomial(&self, v: &Value) -> Result<Monomial<LatticeGen>> {
        parse_lattice_monomial(v)
    }
}

impl ExchangeTable for CommutativeLattice {
    type Gen = LatticeGen;

    fn theta(&self, _: LatticeGen, _: LatticeGen) -> i64 {
        0
    }

    fn degree(&self, g: LatticeGen) -> i64 {
        lattice_degree(g)
    }

    fn generator_name(&self, g: LatticeGen) -> String {
        lattice_name(g)
    }

    fn monomial_json(&self, m: &Monomial<LatticeGen>) -> Value {
        lattice_monomial_json(m)
    }

    fn parse_monomial(&self, v: &Value) -> Result<Monomial<LatticeGen>> {
        parse_lattice_monomial(v)
    }
}

/// Generators `t_1, ..., t_rank` with `t_{i+1} t_i = q t_i t_{i+1}` and
/// `t_i t_j = t_j t_i` for `|i - j| >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChainTable {
    rank: usize,
}

impl ChainTable {
    pub fn new(rank: usize) -> Self {
        Self { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl ExchangeTable for ChainTable {
    type Gen = usize;

    fn theta(&self, earlier: usize, later: usize) -> i64 {
        i64::from(later == earlier + 1)
    }

    /// Each `t_i` carries one unit of the series valuation.
    fn degree(&self, _: usize) -> i64 {
        1
    }

    fn check_generator(&self, g: usize) -> Result<()> {
        if (1..=self.rank).contains(&g) {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!(
                "t{g} (rank {})",
                self.rank
            )))
        }
    }

    fn generator_name(&self, g: usize) -> String {
        format!("t{g}")
    }

    fn monomial_json(&self, m: &Monomial<usize>) -> Value {
        json!(m
            .factors()
            .iter()
            .map(|&(g, e)| [g as i64, e])
            .collect::<Vec<_>>())
    }

    fn parse_monomial(&self, v: &Value) -> Result<Monomial<usize>> {
        let rows: Vec<(usize, i64)> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Monomial::from_factors(rows))
    }
}
