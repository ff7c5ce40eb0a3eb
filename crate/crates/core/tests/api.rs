//! Public API exercised from outside the crate, checked against the
//! reference arithmetic in `oracle`.

mod oracle;

use num_bigint::BigInt;
use proptest::prelude::*;
use qlattice::algebra::{
    epingle, half_translate, normal_order, q_bracket, translate, x, y, ChainTable, Element,
    LatticeAlgebra, LatticeGen, Monomial,
};
use qlattice::densities::{density_psi, enumerate_i_n, window_for, EpingleKey};
use qlattice::qcoeff::{
    cyclotomic_polynomial, lemma11_ratio, q_binomial, specialize_at_root, totient, QLaurent, QRat,
};
use qlattice::screening::{image_t_minus_id_witness, is_in_image_t_minus_id, t_minus_id, v_plus};
use qlattice::series::{chain_variables, continued_fraction_m, TruncatedSeries};
use qlattice::specialize::{phi_nr, PhiConvention};
use qlattice::{Error, VerificationReport};

const A: LatticeAlgebra = LatticeAlgebra;

fn to_oracle(p: &QLaurent) -> oracle::Lp {
    p.terms()
        .map(|(e, c)| (e, i128::try_from(c.clone()).expect("small coefficient")))
        .collect()
}

#[test]
fn q_binomials_agree_with_pascal_reference() {
    let mut bin = oracle::Binomials::default();
    for n in -2..=14 {
        for k in -2..=16 {
            assert_eq!(to_oracle(&q_binomial(n, k)), bin.get(n, k), "({n}, {k})");
        }
    }
}

#[test]
fn cyclotomic_polynomials_have_totient_degree() {
    for l in 1..=30u64 {
        assert_eq!(cyclotomic_polynomial(l).len() - 1, totient(l), "l = {l}");
    }
    let phi6: Vec<BigInt> = [1, -1, 1].into_iter().map(BigInt::from).collect();
    assert_eq!(cyclotomic_polynomial(6), phi6);
}

#[test]
fn specialization_rejects_poles() {
    let pole = QRat::from(q_binomial(2, 1)).recip();
    assert!(matches!(
        specialize_at_root(&pole, 2),
        Err(Error::Pole { l: 2, .. })
    ));
    assert!(specialize_at_root(&pole, 3).is_ok());
}

#[test]
fn generators_follow_the_exchange_rules() {
    let (x1, y1, x2) = (x(&A, 1), y(&A, 1), x(&A, 2));
    // y1 x1 = q x1 y1 and x2 x1 = q^-1 x1 x2.
    assert_eq!(&y1 * &x1, (&x1 * &y1).scale(&QRat::q_pow(1)));
    assert_eq!(&x2 * &x1, (&x1 * &x2).scale(&QRat::q_pow(-1)));
    let word = [(LatticeGen::y(1), 1), (LatticeGen::x(1), 1)];
    assert_eq!(normal_order(&A, &word).unwrap(), &y1 * &x1);
    assert!(q_bracket(&x1, &x(&A, 5)).unwrap().is_zero());
}

#[test]
fn pins_and_translations() {
    let e1 = epingle(&A, 1);
    assert_eq!(e1, &x(&A, 1) * &y(&A, 1));
    assert_eq!(half_translate(&e1), epingle(&A, 2));
    assert_eq!(half_translate(&half_translate(&e1)), translate(&e1, 1));
    assert_eq!(e1.degree().unwrap(), 0);
}

#[test]
fn element_json_round_trip() {
    let e = &(&x(&A, 1) * &y(&A, 2).pow(-2).unwrap()).scale(&QRat::from(q_binomial(3, 1)))
        + &Element::one(&A);
    let back = Element::from_json(&A, &e.to_json()).unwrap();
    assert_eq!(back, e);
}

#[test]
fn index_sets_match_reference_enumeration() {
    for n in 1..=6 {
        for big_n in window_for(n)..=window_for(n) + 1 {
            let got: Vec<Vec<i64>> = enumerate_i_n(n, big_n)
                .unwrap()
                .iter()
                .map(|c| c.alpha().to_vec())
                .collect();
            let mut expected = oracle::compositions(n, (2 * big_n - 2) as usize);
            expected.sort();
            assert_eq!(got, expected, "n = {n}, N = {big_n}");
        }
    }
}

#[test]
fn density_coefficients_match_reference_ratio() {
    let mut bin = oracle::Binomials::default();
    for n in 1..=5 {
        let big_n = window_for(n);
        let psi = density_psi(n, big_n).unwrap();
        for alpha in oracle::compositions(n, (2 * big_n - 2) as usize) {
            let num = oracle::dense(&oracle::mul(&oracle::q_int(n), &bin.weight(&alpha)));
            let (quot, rem) = oracle::divmod_monic(&num, &oracle::dense(&oracle::q_int(alpha[0])));
            assert!(oracle::is_zero(&rem));
            let expected: oracle::Lp = quot
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(e, &c)| (e as i64, c))
                .collect();
            for offset in [0, 1] {
                let got = psi
                    .coefficient(&EpingleKey::new(offset, &alpha))
                    .map(|c| to_oracle(c.as_laurent().unwrap()))
                    .unwrap_or_default();
                assert_eq!(got, expected, "{alpha:?} offset {offset}");
            }
        }
    }
}

#[test]
fn screening_and_t_minus_id_image() {
    let psi = density_psi(2, 2).unwrap().to_element(&A);
    assert!(v_plus(&psi).unwrap().is_zero());
    assert!(matches!(v_plus(&x(&A, 1)), Err(Error::NotDegreeZero(1))));
    let e = epingle(&A, 1);
    let diff = t_minus_id(&e);
    assert!(is_in_image_t_minus_id(&diff));
    assert_eq!(t_minus_id(&image_t_minus_id_witness(&diff).unwrap()), diff);
    assert!(!is_in_image_t_minus_id(&e));
}

#[test]
fn single_level_continued_fraction_is_geometric() {
    let table = ChainTable::new(1);
    let ts = chain_variables(1, 5);
    let m = continued_fraction_m(&ts).unwrap();
    let t = Element::generator(&table, 1, 1).unwrap();
    for k in 0..=5 {
        assert_eq!(m.coeff(k), &t.pow(k as i64).unwrap(), "order {k}");
    }
    let bad = vec![TruncatedSeries::one(&table, 3)];
    assert!(matches!(
        continued_fraction_m(&bad),
        Err(Error::ValuationZero)
    ));
}

#[test]
fn phi_examples() {
    let c = |v: &[i64]| QLaurent::from_coeffs(-2, v);
    let f = |r, a: &[i64]| phi_nr(1, r, a, PhiConvention::EmptyPrefix).unwrap();
    assert_eq!(f(1, &[2, 0]), c(&[-1, 1]));
    assert_eq!(f(2, &[2, 0]), c(&[1, -1]));
    assert!(f(1, &[1, 0]).is_zero());
    assert!(phi_nr(1, 3, &[1, 0], PhiConvention::EmptyPrefix).is_err());
}

#[test]
fn reports_serialize_stably() {
    let r = qlattice::qcoeff::verify_binomials(5).without_timing();
    let v = r.to_json();
    assert_eq!(v["identity"], "q_binomials");
    assert!(v.get("elapsed_ms").is_none());
    let back: VerificationReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lemma11_ratio_at_one_is_classical(a in proptest::collection::vec(0i64..4, 1..5), first in 1i64..4) {
        let mut a = a;
        a[0] = first;
        let n: i64 = a.iter().sum();
        let f: i128 = a.windows(2).map(|w| oracle::binom(w[0] + w[1] - 1, w[1])).product();
        let r = lemma11_ratio(&a).unwrap();
        prop_assert_eq!(r.eval_at_one() * BigInt::from(a[0]), BigInt::from(f * n as i128));
    }

    #[test]
    fn monomial_products_match_reference_sort(
        word in proptest::collection::vec((0i64..3, any::<bool>(), -2i64..3), 0..6)
    ) {
        let gens: Vec<(LatticeGen, i64)> = word
            .iter()
            .map(|&(s, is_x, e)| (if is_x { LatticeGen::x(s) } else { LatticeGen::y(s) }, e))
            .collect();
        let product = gens.iter().fold(Element::one(&A), |acc, &(g, e)| {
            &acc * &Element::generator(&A, g, e).unwrap()
        });
        prop_assert_eq!(normal_order(&A, &gens).unwrap(), product.clone());
        let key = Monomial::from_factors(gens.iter().copied());
        prop_assert!(product.len() <= 1);
        let keys: Vec<Monomial<LatticeGen>> = product.terms().map(|(k, _)| k.clone()).collect();
        if let Some(k) = keys.first() {
            prop_assert_eq!(k, &key);
        }
    }

    #[test]
    fn series_inverse_is_two_sided(c1 in -3i64..4, c2 in -3i64..4) {
        let table = ChainTable::new(2);
        let t = |i: usize, c: i64| Element::generator(&table, i, 1).unwrap().scale(&QRat::from_integer(c));
        let s = TruncatedSeries::from_coeffs(
            &table,
            vec![Element::one(&table), t(1, c1), t(2, c2)],
            4,
        );
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.try_mul(&inv).unwrap(), TruncatedSeries::one(&table, 4));
        prop_assert_eq!(inv.try_mul(&s).unwrap(), TruncatedSeries::one(&table, 4));
    }
}
