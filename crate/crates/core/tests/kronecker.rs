mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use quivkit::ar::{tau, tau_via_minimal_resolution, verify_kernel_translation, verify_tev_triangle};
use quivkit::kronecker::{
    bongartz_test, closed_form_hom_dim, cross_family_hom_dim, cx_closure_check, decompose, iso_test, make_indec,
    predicted_kernel, verify_kerev_p1, verify_pattern_table, Decomposition, Param, TableOptions,
};
use quivkit::rep::{ev_kernel, hom_dim};
use quivkit::{Error, Field};

fn table(field: Field, max: usize, lambdas: Vec<Param>, certify: bool) -> quivkit::kronecker::PatternReport {
    verify_pattern_table(&TableOptions { field, max_m: max, max_n: max, lambdas, jobs: 1, certify, seed: 3 }).unwrap()
}

#[test]
fn kernel_table_over_rationals() {
    let r = table(Q, 5, params(Q, &["0", "1", "-1", "inf"]), true);
    assert!(r.all_ok(), "{}", r.to_text());
    assert!(r.records.iter().all(|c| c.certified != Some(false)));
}

#[test]
fn kernel_table_over_gf5() {
    let f = Field::Prime(5);
    let r = table(f, 4, Param::all(f).unwrap(), false);
    assert!(r.all_ok(), "{}", r.to_text());
}

#[test]
fn kernel_table_over_gf2_uses_the_scan() {
    let f = Field::Prime(2);
    let r = table(f, 4, Param::all(f).unwrap(), false);
    assert!(r.all_ok(), "{}", r.to_text());
}

#[test]
fn worked_kernels() {
    let cases = [
        ("P1", "P3", "P0^2"),
        ("R2@0", "R3@0", "R2@0"),
        ("R3@0", "R1@0", "R2@0"),
        ("R2@1", "I0", "P1 ⊕ R2@1"),
        ("I2", "I0", "I3^2"),
        ("P2", "R1@inf", "P1"),
        ("P0", "I2", "0"),
    ];
    for (m, n, shown) in cases {
        let (k, _) = ev_kernel(&indec(Q, m), &indec(Q, n)).unwrap();
        let d = decompose(&k).unwrap();
        assert_eq!(d, predicted_kernel(&lab(Q, m), &lab(Q, n)), "{m} {n}");
        assert_eq!(d.to_string(), shown);
    }
}

#[test]
fn hom_closed_forms_up_to_index_six() {
    let labels = quivkit::kronecker::labels_up_to(6, &params(Q, &["0", "1", "inf"]));
    for a in &labels {
        for b in &labels {
            let e = closed_form_hom_dim(a, b).or_else(|| cross_family_hom_dim(a, b)).unwrap();
            let h = hom_dim(&make_indec(Q, a).unwrap(), &make_indec(Q, b).unwrap()).unwrap();
            assert_eq!(h, e, "{a} -> {b}");
        }
    }
}

#[test]
fn translate_closed_forms() {
    for l in quivkit::kronecker::labels_up_to(6, &params(Q, &["0", "-1/2", "inf"])) {
        let m = make_indec(Q, &l).unwrap();
        let t = tau(&m).unwrap().translate;
        let r = tau_via_minimal_resolution(&m).unwrap();
        match l.tau() {
            Some(e) => {
                let expect = Decomposition::single(e);
                assert_eq!(decompose(&t).unwrap(), expect, "{l}");
                assert_eq!(decompose(&r).unwrap(), expect, "{l}");
            }
            None => assert!(t.is_zero() && r.is_zero(), "{l}"),
        }
    }
}

#[test]
fn triangle_commutes_on_small_pairs() {
    let pool: Vec<_> =
        indecomposables(&params(Q, &["0", "inf"]), 7).into_iter().filter(|l| !l.is_projective()).collect();
    for a in &pool {
        for b in &pool {
            let r = verify_tev_triangle(&make_indec(Q, a).unwrap(), &make_indec(Q, b).unwrap()).unwrap();
            assert!(r.holds && r.identification_is_iso, "{a} {b}");
            assert_eq!(r.hom_dim, r.translated_hom_dim);
        }
    }
}

#[test]
fn triangle_rejects_projective_arguments() {
    let e = verify_tev_triangle(&indec(Q, "P1"), &indec(Q, "I0")).unwrap_err();
    assert!(matches!(e, Error::HypothesisViolation(_)));
}

#[test]
fn kernel_translation_examples() {
    let r = verify_kernel_translation(&indec(Q, "R2@0"), &indec(Q, "R2@0"), 5).unwrap();
    assert!(r.holds && r.certain && !r.boundary);
    let e = verify_kernel_translation(&indec(Q, "I1"), &indec(Q, "I0"), -1).unwrap_err();
    assert!(matches!(e, Error::HypothesisViolation(_)));
    let r = verify_kernel_translation(&indec(Q, "I2"), &indec(Q, "I1"), 1).unwrap();
    assert!(r.holds);
}

#[test]
fn kernel_translation_fails_at_the_projective_boundary() {
    // ker ev[P2][P3] = P1 while ev[P0][P1] is injective
    let r = verify_kernel_translation(&indec(Q, "P2"), &indec(Q, "P3"), 1).unwrap();
    assert!(r.boundary);
    assert!(!r.holds);
    assert_eq!(r.lhs_dims, vec![1, 2]);
    assert_eq!(r.rhs_dims, vec![0, 0]);
}

#[test]
fn kernel_translation_loses_preprojective_kernel_summands() {
    // ker ev[R1(1)][I0] = P0, but ev[R1(1)][I2] is injective
    let r = verify_kernel_translation(&indec(Q, "R1@1"), &indec(Q, "I0"), 1).unwrap();
    assert!(!r.boundary && r.kernel_boundary);
    assert!(!r.holds);
}

#[test]
fn kernel_translation_holds_away_from_the_boundary() {
    let pool = indecomposables(&params(Q, &["0", "1", "inf"]), 8);
    let mut checked = 0;
    for k in [1i64, 2, -1, -2] {
        for a in &pool {
            for b in &pool {
                let (m, n) = (make_indec(Q, a).unwrap(), make_indec(Q, b).unwrap());
                let Ok(r) = verify_kernel_translation(&m, &n, k) else { continue };
                if !r.boundary && !r.kernel_boundary {
                    checked += 1;
                    assert!(r.holds && r.certain, "k={k} {a} {b}");
                }
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn bongartz_agrees_with_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pool = indecomposables(&params(Q, &["0", "1", "inf"]), 6);
    for i in 0..24 {
        let dm = random_object(&pool, 6, &mut rng);
        let dn = if i % 2 == 0 { dm.clone() } else { random_object(&pool, 6, &mut rng) };
        let m = random_base_change(&dm.build(Q).unwrap(), &mut rng);
        let n = random_base_change(&dn.build(Q).unwrap(), &mut rng);
        let v = bongartz_test(&m, &n, &[], 2000).unwrap();
        assert_eq!(v.isomorphic, iso_test(&m, &n).unwrap().isomorphic, "{dm} | {dn}");
        if let Some(w) = v.witness {
            assert!(w.total_dim <= v.bound);
            assert_ne!(w.hom_from_m, w.hom_from_n);
        }
    }
}

#[test]
fn bongartz_separates_same_dimension_vectors() {
    let m = rep(Q, &["P1", "P1"]);
    let n = rep(Q, &["P0", "P2"]);
    assert_eq!(m.dims(), n.dims());
    let v = bongartz_test(&m, &n, &[], 500).unwrap();
    assert!(!v.isomorphic);
}

#[test]
fn closure_of_evaluation_kernels() {
    for names in [&[][..], &["0"][..], &["0", "1", "inf"][..]] {
        let r = cx_closure_check(Q, &params(Q, names), 4, 1).unwrap();
        assert!(r.holds(), "{names:?}: {:?}", r.violations);
    }
}

#[test]
fn kerev_p1_exponents() {
    let records = verify_kerev_p1(Q, &params(Q, &["0", "1", "inf"]), 12).unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert!(r.matched, "{}", r.n);
        assert_eq!(r.exponent, r.dim_ker_alpha_beta);
    }
}

#[test]
fn isomorphism_examples() {
    let a = rep(Q, &["P0", "I0"]);
    let b = indec(Q, "R1@0");
    assert!(!iso_test(&a, &b).unwrap().isomorphic);
    let c = rep(Q, &["P1", "I1"]);
    let d = rep(Q, &["R1@0", "R1@1", "R1@inf"]);
    assert_eq!(c.dims(), d.dims());
    assert!(!iso_test(&c, &d).unwrap().isomorphic);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(iso_test(&c, &random_base_change(&c, &mut rng)).unwrap().isomorphic);
}
