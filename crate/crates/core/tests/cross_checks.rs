use gcditer::cyclo::{cyclotomic_unit, verify_cyc_theorem};
use gcditer::matgcd::{pm_survey, primitivity_survey, PolyMat};
use gcditer::polygcd::{poly_gcd_k, PolyPair};
use gcditer::zgcd::{int_gcd_k, order_oracle, IntPair};
use gcditer::{BigInt, RatPoly};
use num_traits::Zero;
use proptest::prelude::*;

/// Plain Euclid over Q, normalized monic.
fn euclid_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).unwrap();
        x = y;
        y = r;
    }
    x.monic()
}

fn p(s: &str) -> RatPoly {
    s.parse().unwrap()
}

#[test]
fn modular_gcd_agrees_with_euclid_on_pairs() {
    let pairs = [("t", "t+1"), ("t", "-t"), ("t^2+1", "t-2"), ("2*t", "1-t^2"), ("t^2", "t^3")];
    for (f, g) in pairs {
        let pair = PolyPair::new(p(f), p(g)).unwrap();
        for k in 1..=16 {
            let fk = p(f).pow(k) - RatPoly::one();
            let gk = p(g).pow(k) - RatPoly::one();
            assert_eq!(poly_gcd_k(&pair, k).unwrap(), euclid_gcd(&fk, &gk), "({f}, {g}) at k = {k}");
        }
    }
}

#[test]
fn integer_gcd_agrees_with_order_oracle() {
    for (a, b) in [(2, 3), (3, 5), (-2, 7), (6, 10)] {
        let pair = IntPair::new(a, b).unwrap();
        for k in 1..=40 {
            assert_eq!(int_gcd_k(&pair, k).unwrap(), order_oracle(&pair, k, 100_000).unwrap());
        }
    }
}

#[test]
fn cyclotomic_matrix_survey() {
    let a = cyclotomic_unit(5, 2).unwrap().mult_matrix();
    let s = primitivity_survey(&a, 10).unwrap();
    for row in &s.rows {
        if row.k != 5 && row.k != 10 {
            assert!(row.is_primitive, "k = {}", row.k);
        }
        assert!(row.content_divides_det);
    }
    let report = verify_cyc_theorem(5, &cyclotomic_unit(5, 2).unwrap(), 10).unwrap();
    let contents: Vec<BigInt> = report.rows.iter().map(|r| r.content.clone()).collect();
    let survey: Vec<BigInt> = s.rows.iter().map(|r| r.content.clone()).collect();
    assert_eq!(contents, survey);
}

#[test]
fn diagonal_polynomial_matrices_reduce_to_pairs() {
    for (f, g) in [("t", "t+1"), ("t", "-t"), ("2*t", "t^2")] {
        let a = PolyMat::diagonal(vec![p(f), p(g)]).unwrap();
        let s = pm_survey(&a, 36, 12).unwrap();
        let pair = PolyPair::new(p(f), p(g)).unwrap();
        for (k, c) in (1..=36).zip(&s.contents) {
            assert_eq!(*c, poly_gcd_k(&pair, k).unwrap(), "({f}, {g}) at k = {k}");
        }
        assert!(s.det_failures.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pairs_agree_with_euclid(
        f in prop::collection::vec(-3i64..=3, 2..=4),
        g in prop::collection::vec(-3i64..=3, 2..=4),
        k in 1u64..=10,
    ) {
        let (f, g) = (RatPoly::from_ints(&f), RatPoly::from_ints(&g));
        prop_assume!(!f.is_constant() && !g.is_constant());
        let pair = PolyPair::new(f.clone(), g.clone()).unwrap();
        let expected = euclid_gcd(&(f.pow(k) - RatPoly::one()), &(g.pow(k) - RatPoly::one()));
        prop_assert_eq!(poly_gcd_k(&pair, k).unwrap(), expected);
    }

    #[test]
    fn integer_matrix_contents_are_monotone(entries in prop::collection::vec(-3i64..=3, 4)) {
        let rows = vec![
            vec![BigInt::from(entries[0]), BigInt::from(entries[1])],
            vec![BigInt::from(entries[2]), BigInt::from(entries[3])],
        ];
        let a = gcditer::matgcd::IntMat::from_rows(rows).unwrap();
        prop_assume!(!a.det().is_zero());
        let s = primitivity_survey(&a, 12).unwrap();
        for d in 1..=12usize {
            for k in (d..=12).step_by(d) {
                let (cd, ck) = (&s.rows[d - 1].content, &s.rows[k - 1].content);
                prop_assert!(ck.is_zero() || (!cd.is_zero() && (ck % cd).is_zero()));
            }
            prop_assert!(s.rows[d - 1].content_divides_det);
        }
    }
}
