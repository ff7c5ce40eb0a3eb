//! Specialization at a primitive `l`-th root of unity, the cancellation
//! functions `Phi_{N,r}`, and the divisibility lemmas behind the
//! root-of-unity theorem.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{Element, LatticeAlgebra, LatticeGen};
use crate::densities::{
    density_psi, density_psi_classical, window_for, EpingleDensity, EpingleKey, SpecializedDensity,
};
use crate::error::{Error, Result};
use crate::qcoeff::{
    binomial, f_classical, f_q, lemma11_ratio, q_binomial, q_integer, specialize_at_root,
    valuation_at_root, CyclotomicScalar, QLaurent, QRat,
};
use crate::report::{ReportBuilder, VerificationReport};

/// Evaluates every coefficient at the primitive `l`-th root of unity and drops
/// the ones that vanish.
pub fn specialize_density(d: &EpingleDensity<QRat>, l: u64) -> Result<SpecializedDensity> {
    if l < 2 {
        return Err(Error::Domain(format!(
            "root order must be at least 2, got {l}"
        )));
    }
    d.map(|_, c| specialize_at_root(c, l))
}

/// The central phase picked up when the pin product of `key` is expanded into
/// normal-ordered generators, evaluated at the root.
pub fn normal_order_phase(key: &EpingleKey, l: u64) -> Result<CyclotomicScalar> {
    let e = key.to_element(&LatticeAlgebra);
    let (_, c) = e.terms().next().expect("pin products are single monomials");
    specialize_at_root(c, l)
}

/// For `n = l n'`, every surviving pin monomial of `pi(psi_n)` is `l alpha'`
/// and carries `n'` times the classical coefficient of `alpha'`; all other
/// coefficients vanish. The normal-ordering phases of the surviving monomials
/// are reported alongside.
pub fn verify_thm41(l: u64, n_prime: i64) -> VerificationReport {
    let n = l as i64 * n_prime;
    let big_n = window_for(n);
    let mut report = ReportBuilder::new("root")
        .param("l", l)
        .param("n_prime", n_prime)
        .param("n", n)
        .param("N", big_n);
    let outcome = (|| -> Result<_> {
        let psi = density_psi(n, big_n)?;
        let special = specialize_density(&psi, l)?;
        let classical = density_psi_classical(n_prime, big_n)?;
        Ok((psi, special, classical))
    })();
    let (psi, special, classical) = match outcome {
        Ok(v) => v,
        Err(e) => {
            report.check(false, || json!({ "error": e.to_string() }));
            return report.finish();
        }
    };
    let li = l as i64;
    let zero = CyclotomicScalar::zero(l);
    let mut nontrivial_phases = 0u64;
    for key in psi.terms().keys() {
        let value = special.coefficient(key).unwrap_or(&zero);
        let expected = if key.alpha.iter().all(|a| a % li == 0) {
            let reduced = EpingleKey::new(
                key.offset,
                &key.alpha.iter().map(|a| a / li).collect::<Vec<_>>(),
            );
            classical
                .coefficient(&reduced)
                .map(|c| c * BigRational::from_integer(BigInt::from(n_prime)))
                .unwrap_or_else(BigRational::zero)
        } else {
            BigRational::zero()
        };
        let ok = value.as_rational().as_ref() == Some(&expected);
        report.check(ok, || {
            json!({
                "alpha": key.alpha,
                "offset": key.offset,
                "specialized": value.to_string(),
                "expected": expected.to_string(),
            })
        });
        if !value.is_zero() {
            match normal_order_phase(key, l) {
                Ok(phase) if phase == CyclotomicScalar::one(l) => {}
                _ => nontrivial_phases += 1,
            }
        }
    }
    // Every classical monomial must be hit by a surviving quantum one.
    for (key, c) in classical.terms() {
        let scaled = EpingleKey::new(
            key.offset,
            &key.alpha.iter().map(|a| a * li).collect::<Vec<_>>(),
        );
        report.check(special.coefficient(&scaled).is_some(), || {
            json!({ "missing_alpha": scaled.alpha, "offset": scaled.offset, "classical": c.to_string() })
        });
    }
    report
        .param("surviving_terms", special.len() as u64)
        .param("nontrivial_normal_order_phases", nontrivial_phases)
        .finish()
}

/// `x_i^l` and `y_i^l` commute with every generator near site `i` once `q`
/// is specialized to a primitive `l`-th root of unity.
pub fn verify_centrality(l: u64) -> VerificationReport {
    let mut report = ReportBuilder::new("centrality").param("l", l);
    let table = LatticeAlgebra;
    for site in 0..=2 {
        for big in [LatticeGen::x(site), LatticeGen::y(site)] {
            let big_l = Element::generator(&table, big, l as i64).expect("lattice generator");
            for s in site - 1..=site + 1 {
                for g in [LatticeGen::x(s), LatticeGen::y(s)] {
                    let h = Element::generator(&table, g, 1).expect("lattice generator");
                    let comm = &(&big_l * &h) - &(&h * &big_l);
                    let vanishes = comm
                        .terms()
                        .all(|(_, c)| specialize_at_root(c, l).is_ok_and(|v| v.is_zero()));
                    report.check(
                        vanishes,
                        || json!({ "power_of": format!("{big:?}"), "generator": format!("{g:?}") }),
                    );
                }
            }
        }
    }
    report.finish()
}

/// How the prefix `a_1 - 1, a_2 + 1, ..., a_{2r-2} + 1` is read at `r = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiConvention {
    /// Indices `1..=2r-2`, so nothing changes at `r = 1`.
    EmptyPrefix,
    /// `a_1` is always decremented, also at `r = 1`.
    AlwaysDecrementFirst,
}

/// `Phi_{N,r}(a) = q^{Y_r} (q^{-(a_{2r-2}+1)} - q^{-a_{2r-1}}) F_q(a~)` with
/// `Y_r = r - 1 + sum_{j=1}^{2r-2} (-1)^j a_j` and `a_0 = a_{2N+1} = 0`.
pub fn phi_nr(big_n: usize, r: usize, a: &[i64], convention: PhiConvention) -> Result<QLaurent> {
    if a.len() != 2 * big_n {
        return Err(Error::Size(format!(
            "expected {} entries, got {}",
            2 * big_n,
            a.len()
        )));
    }
    if r < 1 || r > big_n + 1 {
        return Err(Error::Domain(format!(
            "r must lie in 1..={}, got {r}",
            big_n + 1
        )));
    }
    if a.iter().any(|&v| v < 0) {
        return Err(Error::Domain(format!("entries must be nonnegative: {a:?}")));
    }
    let at = |j: usize| -> i64 {
        if j == 0 || j > 2 * big_n {
            0
        } else {
            a[j - 1]
        }
    };
    let prefix = 2 * r - 2;
    let y = (r as i64 - 1)
        + (1..=prefix)
            .map(|j| if j % 2 == 0 { at(j) } else { -at(j) })
            .sum::<i64>();
    let factor = &QLaurent::q_pow(-(at(prefix) + 1)) - &QLaurent::q_pow(-at(2 * r - 1));
    let mut modified = a.to_vec();
    for (j, v) in modified.iter_mut().enumerate().take(prefix) {
        *v += if j % 2 == 0 { -1 } else { 1 };
    }
    if convention == PhiConvention::AlwaysDecrementFirst && r == 1 {
        modified[0] -= 1;
    }
    Ok((&factor * &f_q(&modified)).shift(y))
}

/// Nonzero tuples in `N^len` with entry sum at most `sum_max`.
fn nonzero_tuples(len: usize, sum_max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    loop {
        if cur.iter().any(|&v| v != 0) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            cur[i] += 1;
            if cur.iter().sum::<i64>() <= sum_max {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// `sum_{k=1}^{N+1} Phi_{N,k}(a) = 0` for every nonzero `a` with entry sum at
/// most `sum_max`.
pub fn verify_lemma54(big_n: usize, sum_max: i64, convention: PhiConvention) -> VerificationReport {
    let tuples = nonzero_tuples(2 * big_n, sum_max);
    let failures: Vec<Option<Vec<i64>>> = tuples
        .par_iter()
        .map(|a| {
            let mut total = QLaurent::zero();
            for r in 1..=big_n + 1 {
                total = &total + &phi_nr(big_n, r, a, convention).expect("validated input");
            }
            (!total.is_zero()).then(|| a.clone())
        })
        .collect();
    let mut report = ReportBuilder::new("lemma54")
        .param("N", big_n as u64)
        .param("sum_max", sum_max)
        .param("convention", format!("{convention:?}"))
        .param("tuples", tuples.len() as u64);
    for f in &failures {
        report.check(f.is_none(), || json!({ "a": f }));
    }
    report.finish()
}

/// The divisibility lemmas for q-integers and q-binomials at a primitive
/// `l`-th root: valuations are 0 or 1 according to divisibility, values agree
/// along residue classes, and surviving values are ordinary binomials and
/// ratios. Integers range over `1..=a_max`.
pub fn verify_root_lemmas(l: u64, a_max: i64) -> VerificationReport {
    let mut report = ReportBuilder::new("root-lemmas")
        .param("l", l)
        .param("a_max", a_max);
    let li = l as i64;
    let qi = |a: i64| QRat::from(q_integer(a).expect("a >= 1"));
    let spec = |f: &QRat| specialize_at_root(f, l).expect("no pole");
    let rat = |v: BigInt| BigRational::from_integer(v);

    for a in 1..=a_max {
        let v = valuation_at_root(&qi(a), l).expect("nonzero");
        let expected = i64::from(a % li == 0);
        report.check(
            v == expected,
            || json!({ "lemma": "valuation of [a]", "a": a, "valuation": v }),
        );

        let pa = spec(&qi(a));
        report.check(
            pa.is_zero() == (a % li == 0),
            || json!({ "lemma": "[a] vanishes iff l | a", "a": a }),
        );
        for b in (a + li..=a_max).step_by(l as usize) {
            report.check(
                spec(&qi(b)) == pa,
                || json!({ "lemma": "[a] along residue class", "a": a, "b": b }),
            );
        }
    }

    for a in (li..=a_max).step_by(l as usize) {
        for b in (li..=a_max).step_by(l as usize) {
            let ratio = &qi(a) / &qi(b);
            let v = valuation_at_root(&ratio, l).expect("nonzero");
            let value = spec(&ratio).as_rational();
            let expected = BigRational::new(BigInt::from(a), BigInt::from(b));
            report.check(
                v == 0 && value.as_ref() == Some(&expected),
                || json!({ "lemma": "[a]/[b]", "a": a, "b": b }),
            );
        }
    }

    for a1 in (li..=a_max).step_by(l as usize) {
        for a2 in 1..=a_max {
            let c = QRat::from(q_binomial(a1 + a2 - 1, a2));
            let v = valuation_at_root(&c, l).expect("nonzero");
            let divisible = a2 % li == 0;
            report.check(v == i64::from(!divisible), || {
                json!({ "lemma": "valuation of shifted binomial", "a1": a1, "a2": a2, "valuation": v })
            });
            let value = spec(&c).as_rational();
            let expected = if divisible {
                rat(binomial(a1 / li + a2 / li - 1, a2 / li))
            } else {
                BigRational::zero()
            };
            report.check(
                value.as_ref() == Some(&expected),
                || json!({ "lemma": "value of shifted binomial", "a1": a1, "a2": a2 }),
            );
        }
    }

    // Full composition ratios [n]/[a_1] F_q(a) with l | n.
    for len in 1..=4usize {
        for a in nonzero_tuples(len, a_max.min(12)) {
            let n: i64 = a.iter().sum();
            if a[0] < 1 || n % li != 0 {
                continue;
            }
            let value = spec(&QRat::from(lemma11_ratio(&a).expect("integral"))).as_rational();
            let expected = if a.iter().all(|x| x % li == 0) {
                let reduced: Vec<i64> = a.iter().map(|x| x / li).collect();
                BigRational::new(
                    f_classical(&reduced) * BigInt::from(n / li),
                    BigInt::from(reduced[0]),
                )
            } else {
                BigRational::zero()
            };
            report.check(
                value.as_ref() == Some(&expected),
                || json!({ "lemma": "composition ratio", "a": a }),
            );
        }
    }
    report.finish()
}
