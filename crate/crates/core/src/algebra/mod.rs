//! Noncommutative algebras presented by pairwise q-exchange rules.
//!
//! Every pair of generators `g < h` (in the table's canonical order) obeys
//! `h·g = q^θ(g,h) · g·h`, so each word reduces to a single q-power times an
//! ordered product of generator powers. Moving `h^b` left past `g^a` costs
//! `q^(θ(g,h)·a·b)`; exponents may be negative since all generators are
//! invertible.

mod element;
mod lattice;
mod tables;


use std::fmt::Debug;
use std::hash::Hash;

use serde_json::Value;

use crate::error::Result;

pub use element::{normal_order, q_bracket, Element, Monomial};
pub use lattice::{
    epingle, epingle_power, half_translate, half_translate_inverse, site_range, translate, x, y,
    LatticeTable,
};
pub use tables::{ChainTable, CommutativeLattice, LatticeAlgebra, LatticeGen, Letter};

pub trait ExchangeTable: Clone + PartialEq + Eq + Debug + Send + Sync {
    type Gen: Copy + Ord + Eq + Hash + Debug + Send + Sync;

    /// Exchange exponent for `earlier < later`: `later·earlier = q^θ earlier·later`.
    fn theta(&self, earlier: Self::Gen, later: Self::Gen) -> i64;

    /// Grading weight of a generator.
    fn degree(&self, g: Self::Gen) -> i64;

    fn check_generator(&self, _g: Self::Gen) -> Result<()> {
        Ok(())
    }

    fn generator_name(&self, g: Self::Gen) -> String;

    fn monomial_json(&self, m: &Monomial<Self::Gen>) -> Value;

    fn parse_monomial(&self, v: &Value) -> Result<Monomial<Self::Gen>>;

    /// Exchange exponent for an arbitrary ordered pair, extended
    /// antisymmetrically: `h·g = q^e g·h`.
    fn exchange(&self, g: Self::Gen, h: Self::Gen) -> i64 {
        match g.cmp(&h) {
            std::cmp::Ordering::Less => self.theta(g, h),
            std::cmp::Ordering::Greater => -self.theta(h, g),
            std::cmp::Ordering::Equal => 0,
        }
    }
}

pub type LatticeElement = Element<LatticeAlgebra>;
pub type ClassicalElement = Element<CommutativeLattice>;
pub type ChainElement = Element<ChainTable>;
