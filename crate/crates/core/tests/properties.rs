mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use quivkit::ar::{has_projective_summand, tau, tau_inverse};
use quivkit::io::{representation_from_json, representation_to_json};
use quivkit::kronecker::{decompose, make_indec, multiplicity, Decomposition, IndecLabel};
use quivkit::linalg::{self, pencil_minor_poly, Field, Matrix, Scalar};
use quivkit::rep::{direct_sum, hom_dim};

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_fn(field, rows, cols, |i, j| field.from_int(entries[i * cols + j]))
}

fn shaped() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..=4, r * c)))
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(7))]
}

fn pool() -> Vec<IndecLabel> {
    indecomposables(&params(Q, &["0", "1", "-1/2", "inf"]), 7)
}

fn object() -> impl Strategy<Value = Decomposition> {
    let pool = pool();
    prop::collection::vec(0..pool.len(), 1..4)
        .prop_map(move |ix| Decomposition::from_terms(ix.into_iter().map(|i| (pool[i].clone(), 1))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity((r, c, e) in shaped(), field in fields()) {
        let m = matrix(field, r, c, &e);
        prop_assert_eq!(linalg::rank(&m) + linalg::kernel_basis(&m).cols(), c);
    }

    #[test]
    fn rref_is_idempotent((r, c, e) in shaped(), field in fields()) {
        let (once, pivots) = linalg::rref(&matrix(field, r, c, &e));
        let (twice, again) = linalg::rref(&once);
        prop_assert_eq!(once, twice);
        prop_assert_eq!(pivots, again);
    }

    #[test]
    fn kernel_vectors_are_annihilated((r, c, e) in shaped(), field in fields()) {
        let m = matrix(field, r, c, &e);
        prop_assert!(m.mul(&linalg::kernel_basis(&m)).unwrap().is_zero());
    }

    #[test]
    fn kronecker_product_is_associative(
        a in prop::collection::vec(-3i64..=3, 4),
        b in prop::collection::vec(-3i64..=3, 6),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let q = Field::Rational;
        let (a, b, c) = (matrix(q, 2, 2, &a), matrix(q, 2, 3, &b), matrix(q, 1, 2, &c));
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pencil_polynomial_matches_determinant(
        n in 1usize..5,
        seed in any::<u64>(),
        x in -6i64..=6,
    ) {
        let q = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(q, n, n, &mut rng);
        let b = random_matrix(q, n, n, &mut rng);
        let all: Vec<usize> = (0..n).collect();
        let poly = pencil_minor_poly(&a, &b, &all, &all).unwrap();
        let x = q.from_int(x);
        let direct = linalg::determinant(&a.scale(&x).sub(&b).unwrap()).unwrap();
        prop_assert_eq!(poly.eval(&x), direct);
    }

    #[test]
    fn decomposition_ignores_base_change(d in object(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_base_change(&d.build(Q).unwrap(), &mut rng);
        prop_assert_eq!(decompose(&m).unwrap(), d);
    }

    #[test]
    fn multiplicity_is_additive(a in object(), b in object(), z in 0usize..40) {
        let pool = pool();
        let z = &pool[z % pool.len()];
        let (ma, mb) = (a.build(Q).unwrap(), b.build(Q).unwrap());
        let sum = direct_sum(&[ma.clone(), mb.clone()]).unwrap().sum;
        prop_assert_eq!(
            multiplicity(z, &sum).unwrap(),
            multiplicity(z, &ma).unwrap() + multiplicity(z, &mb).unwrap()
        );
    }

    #[test]
    fn translate_then_inverse_is_identity(d in object(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_base_change(&d.build(Q).unwrap(), &mut rng);
        prop_assume!(!has_projective_summand(&m).unwrap());
        let back = tau_inverse(&tau(&m).unwrap().translate).unwrap();
        prop_assert_eq!(decompose(&back).unwrap(), d);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), use_a3 in any::<bool>(), field in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = if use_a3 { a3() } else { quivkit::kronecker::kronecker_quiver() };
        let m = random_rep(&q, field, 3, &mut rng);
        let text = serde_json::to_string(&representation_to_json(&m)).unwrap();
        let back = representation_from_json(&serde_json::from_str(&text).unwrap(), Some(field)).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn translation_preserves_hom_dimensions() {
    let labels: Vec<IndecLabel> =
        indecomposables(&params(Q, &["0", "1", "inf"]), 12).into_iter().filter(|l| !l.is_projective()).collect();
    let reps: Vec<_> = labels.iter().map(|l| make_indec(Q, l).unwrap()).collect();
    let translated: Vec<_> = reps.iter().map(|m| tau(m).unwrap().translate).collect();
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            assert_eq!(
                hom_dim(a, b).unwrap(),
                hom_dim(&translated[i], &translated[j]).unwrap(),
                "{} -> {}",
                labels[i],
                labels[j]
            );
        }
    }
}

#[test]
fn translate_round_trip_on_labels() {
    for l in quivkit::kronecker::labels_up_to(8, &params(Q, &["0", "1", "inf"])) {
        if matches!(l, IndecLabel::P(0) | IndecLabel::P(1)) {
            continue;
        }
        let m = make_indec(Q, &l).unwrap();
        let back = tau_inverse(&tau(&m).unwrap().translate).unwrap();
        assert_eq!(decompose(&back).unwrap(), Decomposition::single(l.clone()), "{l}");
    }
}

#[test]
fn rational_entries_survive_round_trip() {
    let q = Field::Rational;
    let half = q.parse_scalar("-7/3").unwrap();
    let m = Matrix::from_fn(q, 1, 1, |_, _| half.clone());
    let r = quivkit::Representation::new(quivkit::kronecker::kronecker_quiver(), q, vec![1, 1], vec![m.clone(), m])
        .unwrap();
    let back = representation_from_json(&representation_to_json(&r), None).unwrap();
    assert_eq!(back.map(0).get(0, 0), &half);
    assert!(matches!(back.map(1).get(0, 0), Scalar::Rational(_)));
}
