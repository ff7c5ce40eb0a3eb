//! Screening maps `V+ P = sum_i [x_i, P]`, `V- P = sum_i [y_i, P]` on
//! degree-0 elements, and membership in the image of `T - Id`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{
    q_bracket, site_range, translate, Element, LatticeAlgebra, LatticeElement, LatticeGen,
    LatticeTable, Monomial,
};
use crate::densities::{density_a, density_psi, window_for};
use crate::error::{Error, Result};
use crate::qcoeff::QRat;
use crate::report::{ReportBuilder, VerificationReport};

/// Sum of `[g_i, P]_q` over the finite window one site beyond the support of
/// `P`; the two boundary brackets must vanish.
fn screen(p: &LatticeElement, generator: fn(i64) -> LatticeGen) -> Result<LatticeElement> {
    let deg = p.degree()?;
    if deg != 0 {
        return Err(Error::NotDegreeZero(deg));
    }
    let table = p.table();
    let Some((lo, hi)) = site_range(p) else {
        // Scalars commute with everything.
        return Ok(Element::zero(table));
    };
    let sites: Vec<i64> = (lo - 1..=hi + 1).collect();
    let brackets: Vec<LatticeElement> = sites
        .par_iter()
        .map(|&i| {
            let g = Element::generator(table, generator(i), 1)?;
            q_bracket(&g, p)
        })
        .collect::<Result<_>>()?;
    for (&i, b) in sites.iter().zip(&brackets) {
        if (i == lo - 1 || i == hi + 1) && !b.is_zero() {
            return Err(Error::WindowLeak(i));
        }
    }
    let mut out = Element::zero(table);
    for b in &brackets {
        out = &out + b;
    }
    Ok(out)
}

pub fn v_plus(p: &LatticeElement) -> Result<LatticeElement> {
    screen(p, LatticeGen::x)
}

pub fn v_minus(p: &LatticeElement) -> Result<LatticeElement> {
    screen(p, LatticeGen::y)
}

/// `(T - Id)(a)`.
pub fn t_minus_id<T: LatticeTable>(a: &Element<T>) -> Element<T> {
    &translate(a, 1) - a
}

/// A monomial key up to translation: `canonical` has its lowest site at 0 and
/// `offset` records the shift that recovers the original key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitKey {
    pub canonical: Monomial<LatticeGen>,
    pub offset: i64,
}

pub fn orbit_key(key: &Monomial<LatticeGen>) -> OrbitKey {
    let Some(&(first, _)) = key.factors().first() else {
        return OrbitKey {
            canonical: Monomial::unit(),
            offset: 0,
        };
    };
    let offset = first.site;
    OrbitKey {
        canonical: key.relabel_monotone(|g| LatticeGen {
            site: g.site - offset,
            letter: g.letter,
        }),
        offset,
    }
}

fn shifted(key: &Monomial<LatticeGen>, k: i64) -> Monomial<LatticeGen> {
    key.relabel_monotone(|g| LatticeGen {
        site: g.site + k,
        letter: g.letter,
    })
}

/// Returns `F` with `(T - Id)(F) = E` when `E` is in the image, `None`
/// otherwise. Within each translation orbit the coefficients of `E` must sum
/// to zero; `F` then carries the negated prefix sums along increasing shifts
/// and has no term at the largest shift.
pub fn image_t_minus_id_witness<T: LatticeTable>(e: &Element<T>) -> Option<Element<T>> {
    let mut orbits: BTreeMap<Monomial<LatticeGen>, BTreeMap<i64, QRat>> = BTreeMap::new();
    for (key, c) in e.terms() {
        if key.is_unit() {
            // T fixes the unit, so it never occurs in the image.
            return None;
        }
        let ok = orbit_key(key);
        orbits
            .entry(ok.canonical)
            .or_default()
            .insert(ok.offset, c.clone());
    }
    let mut witness = Element::zero(e.table());
    for (canonical, shifts) in &orbits {
        let mut prefix = QRat::zero();
        for (&s, c) in shifts {
            prefix += c;
            // F has coefficient -prefix on every shift from s up to the next
            // occupied one.
            let next = shifts.range(s + 1..).next().map(|(&t, _)| t);
            if let Some(next) = next {
                for t in s..next {
                    witness.add_term(shifted(canonical, t), &-&prefix);
                }
            }
        }
        if !prefix.is_zero() {
            return None;
        }
    }
    Some(witness)
}

pub fn is_in_image_t_minus_id<T: LatticeTable>(e: &Element<T>) -> bool {
    image_t_minus_id_witness(e).is_some()
}

/// Screening annihilation `V+ psi_n = 0` together with
/// `V- psi_n = -(T - Id)(V- A_n)` and the membership of `V- psi_n` in the image
/// of `T - Id`, for `1 <= n <= n_max` at the smallest admissible window.
pub fn verify_screening(n_max: i64) -> VerificationReport {
    let mut report = ReportBuilder::new("screening").param("n_max", n_max);
    let table = LatticeAlgebra;
    for n in 1..=n_max {
        let big_n = window_for(n);
        let outcome = (|| -> Result<(LatticeElement, LatticeElement, LatticeElement)> {
            let psi = density_psi(n, big_n)?.to_element(&table);
            let a = density_a(n, big_n)?.to_element(&table);
            Ok((v_plus(&psi)?, v_minus(&psi)?, v_minus(&a)?))
        })();
        let (plus, minus, minus_a) = match outcome {
            Ok(v) => v,
            Err(err) => {
                report.check(false, || json!({ "n": n, "error": err.to_string() }));
                continue;
            }
        };
        report.check(
            plus.is_zero(),
            || json!({ "n": n, "identity": "V+ psi_n = 0", "residual": plus.to_json() }),
        );
        let residual = &minus + &t_minus_id(&minus_a);
        report.check(residual.is_zero(), || {
            json!({
                "n": n,
                "identity": "V- psi_n = -(T - Id)(V- A_n)",
                "residual": residual.to_json(),
            })
        });
        let member = image_t_minus_id_witness(&minus).is_some_and(|f| t_minus_id(&f) == minus);
        report.check(
            member,
            || json!({ "n": n, "identity": "V- psi_n in Im(T - Id)", "element": minus.to_json() }),
        );
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{epingle_power, half_translate, x, y};

    const A: LatticeAlgebra = LatticeAlgebra;

    fn mono(factors: &[(LatticeGen, i64)]) -> Monomial<LatticeGen> {
        Monomial::from_factors(factors.iter().copied())
    }

    #[test]
    fn unit_is_annihilated() {
        let one = Element::one(&A);
        assert!(v_plus(&one).unwrap().is_zero());
        assert!(v_minus(&one).unwrap().is_zero());
    }

    #[test]
    fn single_pin_inverse() {
        // Only i = 1 contributes: [x_1, (x_1 y_1)^-1] = (q - 1) y_1^-1.
        let p = epingle_power(&A, 1, -1).unwrap();
        let expected = Element::from_monomial(
            &A,
            mono(&[(LatticeGen::y(1), -1)]),
            crate::qcoeff::QLaurent::from_coeffs(0, &[-1, 1]).into(),
        );
        assert_eq!(v_plus(&p).unwrap(), expected);
    }

    #[test]
    fn rejects_nonzero_degree() {
        assert_eq!(v_plus(&x(&A, 1)), Err(Error::NotDegreeZero(1)));
        assert_eq!(v_minus(&y(&A, 2)), Err(Error::NotDegreeZero(-1)));
    }

    #[test]
    fn psi_three_is_screened() {
        let psi = density_psi(3, 3).unwrap().to_element(&A);
        assert!(v_plus(&psi).unwrap().is_zero());
    }

    #[test]
    fn v_minus_psi_identity_small_n() {
        for n in 1..=4 {
            let big_n = window_for(n);
            let psi = density_psi(n, big_n).unwrap().to_element(&A);
            let a = density_a(n, big_n).unwrap().to_element(&A);
            let lhs = v_minus(&psi).unwrap();
            assert_eq!(lhs, -&t_minus_id(&v_minus(&a).unwrap()), "n = {n}");
            assert!(is_in_image_t_minus_id(&lhs));
        }
    }

    #[test]
    fn half_translation_swaps_screenings() {
        let p = &epingle_power(&A, 1, -2).unwrap() * &epingle_power(&A, 2, -1).unwrap();
        let lhs = v_minus(&half_translate(&p)).unwrap();
        let rhs = half_translate(&v_plus(&p).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn orbit_keys() {
        let m = mono(&[(LatticeGen::x(2), 1), (LatticeGen::y(3), -1)]);
        let k = orbit_key(&m);
        assert_eq!(k.offset, 2);
        assert_eq!(
            k.canonical,
            mono(&[(LatticeGen::x(0), 1), (LatticeGen::y(1), -1)])
        );
        assert_eq!(orbit_key(&shifted(&m, 5)).canonical, k.canonical);
        let unit = orbit_key(&Monomial::unit());
        assert!(unit.canonical.is_unit());
    }

    #[test]
    fn image_membership() {
        let m = Element::from_monomial(
            &A,
            mono(&[
                (LatticeGen::x(1), 1),
                (LatticeGen::y(1), -1),
                (LatticeGen::x(2), 1),
            ]),
            QRat::one(),
        );
        assert!(image_t_minus_id_witness(&m).is_none());
        let e = t_minus_id(&m);
        let f = image_t_minus_id_witness(&e).unwrap();
        assert_eq!(t_minus_id(&f), e);
        assert!(image_t_minus_id_witness(&Element::one(&A)).is_none());
        assert!(image_t_minus_id_witness(&Element::zero(&A))
            .unwrap()
            .is_zero());
        // Gapped orbit: T^3 m - m.
        let gapped = &translate(&m, 3) - &m;
        let f = image_t_minus_id_witness(&gapped).unwrap();
        assert_eq!(t_minus_id(&f), gapped);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn verification_report_passes() {
        let r = verify_screening(3);
        assert!(r.pass, "{:?}", r.counterexample);
        assert_eq!(r.checked_count, 9);
    }
}
