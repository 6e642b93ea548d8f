//! Pointwise checks of documented values on catalog algebras: products,
//! annihilators, power sequences, cohomology classes, cocycle annihilators,
//! and small isomorphism verdicts. Hand-derived expected values are frozen
//! here; exhaustive verdicts come from the searches themselves.

use nilex_core::algebra::{vec_is_zero, AlgebraError};
use nilex_core::catalog;
use nilex_core::cohomology::{
    cocycle_annihilator, cohomology_basis, same_class, BilinearForm,
};
use nilex_core::extensions::{validate_extension, ExtensionSpec};
use nilex_core::field::{q, qr, Field, Scalar};
use nilex_core::iso::{certify_noniso, iso_search_fp, FpIsoOutcome, IsoError, NonIsoOutcome};
use nilex_core::linalg::{complement_in_span, RowSpace};

#[test]
fn products_read_off_the_tables() {
    let a = catalog::get("A4_01", &[]).unwrap();
    // e1 e2 = e4
    assert_eq!(
        a.multiply(&a.basis_vec(0), &a.basis_vec(1)).unwrap(),
        a.basis_vec(3)
    );
    // unlisted product vanishes
    assert!(vec_is_zero(
        &a.multiply(&a.basis_vec(2), &a.basis_vec(3)).unwrap()
    ));
    // (e1,e1,e1) = 0 on A4_04(1): both association orders give e3
    let b = catalog::get("A4_04", &[q(1)]).unwrap();
    let e1 = b.basis_vec(0);
    assert!(vec_is_zero(&b.associator(&e1, &e1, &e1).unwrap()));
}

#[test]
fn power_sequences_and_annihilators() {
    let a = catalog::get("A5_06", &[]).unwrap();
    let p = a.power_sequence();
    assert_eq!(p.dims, vec![5, 4, 3, 2, 1, 0]);
    assert_eq!(p.nilpotency_index, Some(6));
    let ann = a.annihilator();
    assert_eq!(ann.len(), 1);
    assert!(RowSpace::from_vectors(Field::Rational, 5, &ann).contains(&a.basis_vec(4)));

    // Ann(A4_01) = <e3, e4>
    let b = catalog::get("A4_01", &[]).unwrap();
    let ann = b.annihilator();
    let span = RowSpace::from_vectors(Field::Rational, 4, &ann);
    assert_eq!(ann.len(), 2);
    assert!(span.contains(&b.basis_vec(2)) && span.contains(&b.basis_vec(3)));

    // one-generation witnesses: e1 works for the full catalog lists, and
    // e2 generates only a proper subspace of A4_01
    let (sub, plan) = b.generated_subalgebra(&b.basis_vec(1)).unwrap();
    assert!(plan.is_none());
    assert!(sub.len() < 4);
}

#[test]
fn h2_class_of_the_second_4dim_algebra_is_d12() {
    let a = catalog::get("A4_02", &[]).unwrap();
    let rep = cohomology_basis(&a);
    assert_eq!(rep.dims(), (4, 3, 1));
    let zflat: Vec<Vec<Scalar>> = rep.z2.iter().map(BilinearForm::flatten).collect();
    let bflat: Vec<Vec<Scalar>> = rep.b2.iter().map(BilinearForm::flatten).collect();
    let comp = complement_in_span(&zflat, &bflat).unwrap();
    assert_eq!(comp.len(), 1);
    let rep_form = BilinearForm::from_flat(4, Field::Rational, &comp[0]);
    let d12 = BilinearForm::delta(4, Field::Rational, 1, 2);
    assert!(same_class(&a, &rep_form, &d12));
}

#[test]
fn cocycle_annihilators() {
    // D11 annihilates everything but e1
    let a = catalog::get("A4_01", &[]).unwrap();
    let d11 = BilinearForm::delta(4, Field::Rational, 1, 1);
    let ann = cocycle_annihilator(&a, &[d11]).unwrap();
    assert_eq!(ann.len(), 3);

    // the fully symmetric form on A4_04(1) pairs every e_i with e_{5-i}
    let b = catalog::get("A4_04", &[q(1)]).unwrap();
    let [_, nabla2] = catalog::nablas_a4_04_1();
    assert!(cocycle_annihilator(&b, &[nabla2]).unwrap().is_empty());
}

#[test]
fn two_dimensional_annihilator_extensions_are_flagged() {
    // extending A4_02 by its H2 generator class picks up a 2-dimensional
    // annihilator, the signature of algebras that arise from smaller bases
    let a = catalog::get("A4_02", &[]).unwrap();
    let d12 = BilinearForm::delta(4, Field::Rational, 1, 2);
    let rep = validate_extension(&ExtensionSpec::new(a, vec![d12]), 16, 1).unwrap();
    assert!(rep.assosymmetric);
    assert_eq!(rep.ann_dim, 2);
    assert!(rep.ann_dim_at_least_two);
    assert!(rep.ann_identity_holds);
}

#[test]
fn small_finite_field_verdicts() {
    // the two distinct 4-dimensional classes stay distinct over F5
    let a = catalog::get("A4_02", &[]).unwrap();
    let b = catalog::get("A4_03", &[]).unwrap();
    match iso_search_fp(&a, &b, 5).unwrap() {
        FpIsoOutcome::Exhausted { candidates, .. } => assert_eq!(candidates, 5u128.pow(4) - 1),
        FpIsoOutcome::Witness(_) => panic!("A4_02 and A4_03 are distinct classes"),
    }
    // ... as do the two 5-dimensional chains
    let a = catalog::get("A5_06", &[]).unwrap();
    let b = catalog::get("A5_07", &[]).unwrap();
    assert!(matches!(
        iso_search_fp(&a, &b, 5).unwrap(),
        FpIsoOutcome::Exhausted { .. }
    ));
    // characteristics 2 and 3 are rejected outright
    assert_eq!(iso_search_fp(&a, &b, 3).unwrap_err(), IsoError::BadPrime(3));
}

#[test]
fn fingerprints_separate_the_chain_from_the_split_extension() {
    let a = catalog::get("A5_01", &[]).unwrap();
    let b = catalog::get("A5_06", &[]).unwrap();
    match certify_noniso(&a, &b, &[5, 7]) {
        NonIsoOutcome::FingerprintMismatch { left, right } => {
            assert_ne!(left.power_dims, right.power_dims);
        }
        other => panic!("expected fingerprint mismatch, got {other:?}"),
    }
}

#[test]
fn bad_primes_are_refused() {
    let a = catalog::get("A6_13", &[]).unwrap();
    assert_eq!(a.reduce_mod_p(2).unwrap_err(), AlgebraError::BadPrime(2));
    let a5 = a.reduce_mod_p(5).unwrap();
    // 3/2 -> 4 and 1/2 -> 3 in F5
    assert_eq!(a5.c(0, 3, 4), &Scalar::Fp { value: 4, p: 5 });
    assert_eq!(a5.c(3, 0, 4), &Scalar::Fp { value: 3, p: 5 });
}

#[test]
fn quotients_collapse_the_two_dim_extensions() {
    // A5_01 modulo its annihilator is the corrected 3-dimensional table
    let a = catalog::get("A5_01", &[]).unwrap();
    let qout = nilex_core::extensions::recover_quotient(&a).unwrap();
    let stored = catalog::get("A3_01", &[]).unwrap();
    assert!(nilex_core::extensions::tables_equal(&qout, &stored));
    // A5_02(alpha) modulo its annihilator is A3_02(alpha)
    for al in [q(0), q(1), q(-1), qr(5, 1)] {
        let a = catalog::get("A5_02", std::slice::from_ref(&al)).unwrap();
        let qout = nilex_core::extensions::recover_quotient(&a).unwrap();
        let expected = catalog::get("A3_02", &[al]).unwrap();
        assert!(nilex_core::extensions::tables_equal(&qout, &expected));
    }
}

#[test]
fn distinct_family_parameters_resist_the_searches() {
    use nilex_core::iso::{iso_search_rational, RationalSearchConfig};
    let a = catalog::get("A4_04", &[q(0)]).unwrap();
    let b = catalog::get("A4_04", &[q(2)]).unwrap();
    let rc = RationalSearchConfig {
        height_bound: 3,
        max_direct_candidates: 30_000,
        ..RationalSearchConfig::default()
    };
    assert!(iso_search_rational(&a, &b, &rc).unwrap().is_none());
    for p in [5u64, 7] {
        assert!(matches!(
            iso_search_fp(&a, &b, p).unwrap(),
            FpIsoOutcome::Exhausted { .. }
        ));
    }
}

#[test]
fn a_pinned_automorphism_point() {
    // the scaling-only member (x, y, z, t) = (2, 0, 0, 0)
    let a = catalog::get("A4_01", &[]).unwrap();
    let m = catalog::aut_a4_01(&q(2), &q(0), &q(0), &q(0));
    assert!(m.is_invertible());
    assert!(a.is_homomorphism(&a, &m).unwrap().passed());
}
