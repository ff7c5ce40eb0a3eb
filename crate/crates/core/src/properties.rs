//! Seeded randomized property suites. Each suite draws its own stream from
//! the seed, so reruns with the same seed check the same cases.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{
    half_translate, translate, ClassicalElement, CommutativeLattice, Element, LatticeAlgebra,
    LatticeElement, LatticeGen, Monomial,
};
use crate::densities::{density_psi, poisson_bracket, window_for};
use crate::qcoeff::{QLaurent, QRat};
use crate::report::{ReportBuilder, VerificationReport};
use crate::screening::{v_minus, v_plus};

const A: LatticeAlgebra = LatticeAlgebra;
const C: CommutativeLattice = CommutativeLattice;

fn rng_for(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_key(rng: &mut ChaCha8Rng, sites: (i64, i64), exp: i64) -> Monomial<LatticeGen> {
    let mut factors = Vec::new();
    for s in sites.0..=sites.1 {
        for g in [LatticeGen::x(s), LatticeGen::y(s)] {
            if rng.gen_bool(0.6) {
                factors.push((g, rng.gen_range(-exp..=exp)));
            }
        }
    }
    Monomial::from_factors(factors)
}

/// A random key rebalanced to degree 0 by adjusting one `y` exponent.
fn random_degree_zero_key(
    rng: &mut ChaCha8Rng,
    sites: (i64, i64),
    exp: i64,
) -> Monomial<LatticeGen> {
    let key = random_key(rng, sites, exp);
    let deg = key.degree(&A);
    let site = rng.gen_range(sites.0..=sites.1);
    Monomial::from_factors(
        key.factors()
            .iter()
            .copied()
            .chain([(LatticeGen::y(site), deg)]),
    )
}

fn random_element<T: crate::algebra::LatticeTable>(
    rng: &mut ChaCha8Rng,
    table: &T,
    sites: (i64, i64),
    exp: i64,
    degree_zero: bool,
) -> Element<T> {
    let mut out = Element::zero(table);
    for _ in 0..rng.gen_range(1..=3) {
        let key = if degree_zero {
            random_degree_zero_key(rng, sites, exp)
        } else {
            random_key(rng, sites, exp)
        };
        let c = QLaurent::term(
            rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
            rng.gen_range(-1..=1),
        );
        out.add_term(key, &c.into());
    }
    out
}

fn monomial_element(rng: &mut ChaCha8Rng, sites: (i64, i64), exp: i64) -> LatticeElement {
    Element::from_monomial(&A, random_key(rng, sites, exp), QRat::one())
}

/// `(ab)c = a(bc)` and `deg(ab) = deg a + deg b` on random monomials.
pub fn verify_associativity(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 1);
    let mut report = ReportBuilder::new("associativity-grading")
        .param("seed", seed)
        .param("cases", cases as u64);
    for _ in 0..cases {
        let a = monomial_element(&mut rng, (0, 3), 3);
        let b = monomial_element(&mut rng, (0, 3), 3);
        let c = monomial_element(&mut rng, (0, 3), 3);
        let assoc = &(&a * &b) * &c == &a * &(&b * &c);
        report.check(
            assoc,
            || json!({ "a": a.to_json(), "b": b.to_json(), "c": c.to_json() }),
        );
        let graded =
            (&a * &b).degree().ok() == Some(a.degree().unwrap_or(0) + b.degree().unwrap_or(0));
        report.check(graded, || json!({ "a": a.to_json(), "b": b.to_json() }));
    }
    report.finish()
}

/// Antisymmetry and the Jacobi identity for the Poisson bracket.
pub fn verify_poisson(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 2);
    let mut report = ReportBuilder::new("poisson-antisymmetry-jacobi")
        .param("seed", seed)
        .param("cases", cases as u64);
    for _ in 0..cases {
        let a: ClassicalElement = random_element(&mut rng, &C, (1, 3), 2, false);
        let b: ClassicalElement = random_element(&mut rng, &C, (1, 3), 2, false);
        let c: ClassicalElement = random_element(&mut rng, &C, (1, 3), 2, false);
        let anti = poisson_bracket(&a, &b) == -&poisson_bracket(&b, &a);
        report.check(anti, || json!({ "a": a.to_json(), "b": b.to_json() }));
        let jacobi = &(&poisson_bracket(&a, &poisson_bracket(&b, &c))
            + &poisson_bracket(&b, &poisson_bracket(&c, &a)))
            + &poisson_bracket(&c, &poisson_bracket(&a, &b));
        report.check(jacobi.is_zero(), || {
            json!({ "a": a.to_json(), "b": b.to_json(), "c": c.to_json(), "jacobiator": jacobi.to_json() })
        });
    }
    report.finish()
}

/// `(ab - ba)/(q - 1)` at `q = 1` equals the Poisson bracket of the classical
/// images, for degree-0 monomials.
pub fn verify_bracket_degeneration(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 3);
    let mut report = ReportBuilder::new("bracket-degeneration")
        .param("seed", seed)
        .param("cases", cases as u64);
    let q_minus_one = QRat::from(QLaurent::from_coeffs(0, &[-1, 1]));
    for _ in 0..cases {
        let ka = random_degree_zero_key(&mut rng, (1, 3), 2);
        let kb = random_degree_zero_key(&mut rng, (1, 3), 2);
        let a = Element::from_monomial(&A, ka.clone(), QRat::one());
        let b = Element::from_monomial(&A, kb.clone(), QRat::one());
        let comm = &(&a * &b) - &(&b * &a);
        let mut limit = Element::zero(&C);
        let mut polynomial = true;
        for (k, c) in comm.terms() {
            let d = c / &q_minus_one;
            polynomial &= d.is_laurent();
            let at_one = d.eval_at_one().expect("no pole at 1");
            limit.add_term(k.clone(), &QRat::from_rational(&at_one));
        }
        let ca = Element::from_monomial(&C, ka, QRat::one());
        let cb = Element::from_monomial(&C, kb, QRat::one());
        let expected = poisson_bracket(&ca, &cb);
        report.check(polynomial && limit == expected, || {
            json!({ "a": a.to_json(), "b": b.to_json(), "limit": limit.to_json(), "poisson": expected.to_json() })
        });
    }
    report.finish()
}

/// `psi_n` does not depend on the window `N` once trailing zero slots are
/// identified.
pub fn verify_window_independence(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 4);
    let mut report = ReportBuilder::new("psi-window-independence")
        .param("seed", seed)
        .param("cases", cases as u64);
    let mut cache = HashMap::new();
    let mut density = |n: i64, big_n: i64| {
        cache
            .entry((n, big_n))
            .or_insert_with(|| density_psi(n, big_n).expect("admissible window"))
            .clone()
    };
    for _ in 0..cases {
        let n = rng.gen_range(1..=4);
        let base = window_for(n) + rng.gen_range(0..=1);
        let wider = base + rng.gen_range(1..=2);
        let same = density(n, base).terms() == density(n, wider).terms();
        report.check(same, || json!({ "n": n, "N": base, "N_wider": wider }));
    }
    report.finish()
}

/// The coefficient of `x_1^-p y_1^-p` in `psi_n` is `q^{n(n+1)/2}` when
/// `p = n` and zero otherwise.
pub fn verify_projection(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 5);
    let mut report = ReportBuilder::new("psi-projection")
        .param("seed", seed)
        .param("cases", cases as u64);
    let mut cache: HashMap<i64, LatticeElement> = HashMap::new();
    for _ in 0..cases {
        let n = rng.gen_range(1..=4i64);
        let p = rng.gen_range(1..=4i64);
        let psi = cache.entry(n).or_insert_with(|| {
            density_psi(n, window_for(n))
                .expect("admissible")
                .to_element(&A)
        });
        let key = Monomial::from_factors([(LatticeGen::x(1), -p), (LatticeGen::y(1), -p)]);
        let expected = if n == p {
            QRat::q_pow(n * (n + 1) / 2)
        } else {
            QRat::zero()
        };
        let got = psi.coefficient_of(&key);
        report.check(
            got == expected,
            || json!({ "n": n, "p": p, "coefficient": got.to_string() }),
        );
    }
    report.finish()
}

/// Translation structure and the screening maps: `T T^(1/2) = T^(1/2) T`,
/// `T^(1/2)` is multiplicative, it carries `V+` to `V-`, and `V+` obeys the
/// Leibniz rule on degree-0 products.
pub fn verify_translations_and_screenings(seed: u64, cases: usize) -> VerificationReport {
    let mut rng = rng_for(seed, 6);
    let mut report = ReportBuilder::new("translations-screenings")
        .param("seed", seed)
        .param("cases", cases as u64);
    for _ in 0..cases {
        let p: LatticeElement = random_element(&mut rng, &A, (1, 3), 2, true);
        let r: LatticeElement = random_element(&mut rng, &A, (1, 3), 2, true);
        let commute = translate(&half_translate(&p), 1) == half_translate(&translate(&p, 1));
        report.check(
            commute,
            || json!({ "check": "T T^(1/2)", "p": p.to_json() }),
        );
        let hom = half_translate(&(&p * &r)) == &half_translate(&p) * &half_translate(&r);
        report.check(
            hom,
            || json!({ "check": "T^(1/2) multiplicative", "p": p.to_json(), "r": r.to_json() }),
        );
        let swap = match (v_minus(&half_translate(&p)), v_plus(&p)) {
            (Ok(lhs), Ok(vp)) => lhs == half_translate(&vp),
            _ => false,
        };
        report.check(
            swap,
            || json!({ "check": "V- T^(1/2) = T^(1/2) V+", "p": p.to_json() }),
        );
        let leibniz = match (v_plus(&(&p * &r)), v_plus(&p), v_plus(&r)) {
            (Ok(lhs), Ok(vp), Ok(vr)) => lhs == &(&vp * &r) + &(&p * &vr),
            _ => false,
        };
        report.check(
            leibniz,
            || json!({ "check": "Leibniz", "p": p.to_json(), "r": r.to_json() }),
        );
    }
    report.finish()
}

/// All suites with the same seed and case count.
pub fn verify_properties(seed: u64, cases: usize) -> Vec<VerificationReport> {
    vec![
        verify_associativity(seed, cases),
        verify_poisson(seed, cases),
        verify_bracket_degeneration(seed, cases),
        verify_window_independence(seed, cases),
        verify_projection(seed, cases),
        verify_translations_and_screenings(seed, cases),
    ]
}
