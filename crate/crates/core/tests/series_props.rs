//! Properties of the regular product, conjugate, reciprocal and extension.

use proptest::prelude::*;

use sliceregular::series::{
    regular_conjugate, regular_reciprocal, split, star_eval_pointwise, star_product, star_product_via_splitting,
    symmetrization, ScalarSeries,
};
use sliceregular::{ImaginaryUnit, Quaternion};

fn quat(scale: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-scale..scale).prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn poly(max_degree: usize) -> impl Strategy<Value = ScalarSeries> {
    prop::collection::vec(quat(1.0), 1..=max_degree + 1).prop_map(|c| ScalarSeries::new(c, 1.0).unwrap())
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| ImaginaryUnit::from_vector(v).unwrap())
}

/// A point of the open unit ball.
fn point() -> impl Strategy<Value = Quaternion> {
    (quat(1.0), 0.0..0.99f64).prop_map(|(q, r)| if q.norm() == 0.0 { q } else { q.scale(r / q.norm()) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn splitting_product_matches_convolution(f in poly(8), g in poly(8), i in unit(), q in point()) {
        let j = i.orthogonal();
        let conv = star_product(&f, &g).unwrap().eval(q).unwrap();
        let via = star_product_via_splitting(&f, &g, i, j).unwrap().eval(q).unwrap();
        prop_assert!((conv - via).norm() <= 1e-11, "{}", (conv - via).norm());
    }

    #[test]
    fn product_agrees_with_pointwise_formula(f in poly(5), g in poly(5), q in point()) {
        let conv = star_product(&f, &g).unwrap().eval(q).unwrap();
        let pointwise = star_eval_pointwise(f.eval(q).unwrap(), |p| g.eval(p), q).unwrap();
        prop_assert!((conv - pointwise).norm() <= 1e-11);
    }

    #[test]
    fn product_is_associative(f in poly(4), g in poly(4), h in poly(4), q in point()) {
        let left = star_product(&star_product(&f, &g).unwrap(), &h).unwrap().eval(q).unwrap();
        let right = star_product(&f, &star_product(&g, &h).unwrap()).unwrap().eval(q).unwrap();
        prop_assert!((left - right).norm() <= 1e-11);
    }

    #[test]
    fn reciprocal_is_a_regular_inverse(f in poly(6), q in point()) {
        let symm = symmetrization(&f).eval(q).unwrap();
        prop_assume!(symm.norm() > 1e-3);
        let one = star_eval_pointwise(f.eval(q).unwrap(), |p| regular_reciprocal(&f, p), q).unwrap();
        prop_assert!((one - Quaternion::ONE).norm() <= 1e-9);
    }

    #[test]
    fn extension_recovers_the_function(f in poly(8), i in unit(), q in point()) {
        let pair = split(&f, i, i.orthogonal()).unwrap();
        prop_assert!((pair.eval(q).unwrap() - f.eval(q).unwrap()).norm() <= 1e-12);
        prop_assert!(pair.to_series().coeffs().iter().zip(f.coeffs()).all(|(a, b)| (*a - *b).norm() < 1e-15));
    }

    #[test]
    fn conjugate_is_an_involution(f in poly(6)) {
        prop_assert_eq!(regular_conjugate(&regular_conjugate(&f)), f);
    }

    #[test]
    fn symmetrization_has_real_coefficients(f in poly(6)) {
        let s = symmetrization(&f);
        let scale: f64 = f.coeffs().iter().map(|a| a.norm_sqr()).sum::<f64>().max(1.0);
        prop_assert!(s.coeffs().iter().all(|a| a.imag_norm() <= 1e-14 * scale));
    }

    #[test]
    fn recentering_keeps_values(f in poly(6), c in -0.3..0.3f64, q in point()) {
        let g = f.recenter(c).unwrap();
        prop_assume!(g.in_domain(q));
        prop_assert!((g.eval(q).unwrap() - f.eval(q).unwrap()).norm() <= 1e-11);
    }

    #[test]
    fn json_round_trip(f in poly(6)) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<ScalarSeries>(&text).unwrap(), f);
    }
}

fn linear(a: Quaternion) -> ScalarSeries {
    ScalarSeries::new(vec![-a, Quaternion::ONE], 2.0).unwrap()
}

#[test]
fn products_of_linear_factors_do_not_commute() {
    let (qi, qj) = (linear(Quaternion::I), linear(Quaternion::J));
    let ij = star_product(&qi, &qj).unwrap();
    let ji = star_product(&qj, &qi).unwrap();
    let diff: Vec<Quaternion> = ij.coeffs().iter().zip(ji.coeffs()).map(|(a, b)| *a - *b).collect();
    assert_eq!(diff, vec![Quaternion::K.scale(2.0), Quaternion::ZERO, Quaternion::ZERO]);
}

#[test]
fn reciprocal_is_singular_on_the_zero_sphere() {
    // q - i vanishes at i, and its symmetrization q^2 + 1 on the whole sphere through i
    let f = linear(Quaternion::I);
    assert!(matches!(regular_reciprocal(&f, Quaternion::J), Err(sliceregular::Error::Singular { .. })));
    assert!(regular_reciprocal(&f, Quaternion::real(0.5)).is_ok());
}

#[test]
fn product_is_not_pointwise() {
    let (qi, qj) = (linear(Quaternion::I), linear(Quaternion::J));
    let q = Quaternion::new(0.1, 0.2, -0.3, 0.4);
    let star = star_product(&qi, &qj).unwrap().eval(q).unwrap();
    let naive = qi.eval(q).unwrap() * qj.eval(q).unwrap();
    assert!((star - naive).norm() > 1e-3);
}
