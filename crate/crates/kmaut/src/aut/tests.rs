use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::named::{int_class_labels, j_matrix, tau};
use super::random::{random_automorphism, random_inner};
use super::*;
use crate::lie::{make_algebra, FieldMode};

fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
    make_algebra(f, n, FieldMode::Complex).unwrap()
}

fn classical_fixtures() -> Vec<Arc<SimpleAlgebra>> {
    vec![
        alg(Family::A, 1),
        alg(Family::A, 2),
        alg(Family::A, 3),
        alg(Family::A, 4),
        alg(Family::B, 2),
        alg(Family::B, 3),
        alg(Family::C, 3),
        alg(Family::C, 4),
        alg(Family::D, 4),
        alg(Family::D, 5),
        alg(Family::D, 6),
    ]
}

#[test]
fn standard_list_examples() {
    let su3 = alg(Family::A, 2);
    let mu = standard_involution(&su3, "rho2").unwrap();
    assert!(!mu.is_inner());
    assert_eq!(mu.order(4).unwrap(), 2);

    let so10 = alg(Family::D, 5);
    let r1 = standard_involution(&so10, "rho1").unwrap();
    assert!(!r1.is_inner());
    assert_eq!(r1.order(4).unwrap(), 2);

    let sp8 = alg(Family::C, 4);
    let ie = standard_involution(&sp8, "rho3").unwrap();
    assert!(ie.is_inner());
    assert_eq!(ie.order(4).unwrap(), 2);
}

#[test]
fn order_examples() {
    let su4 = alg(Family::A, 3);
    assert_eq!(Automorphism::identity(&su4).order(3).unwrap(), 1);
    assert_eq!(Automorphism::inner(&su4, j_matrix(4)).unwrap().order(4).unwrap(), 2);
    let mu_j = named_automorphism(&su4, "mu*AdJ").unwrap();
    assert!(!mu_j.is_inner());
}

#[test]
fn so8_inner_outer() {
    let so8 = alg(Family::D, 4);
    assert!(!Automorphism::inner(&so8, tau(8, 1)).unwrap().is_inner());
    assert!(Automorphism::inner(&so8, tau(8, 2)).unwrap().is_inner());
}

#[test]
fn every_standard_involution_squares_to_identity() {
    for a in classical_fixtures() {
        for l in int_class_labels(&a) {
            let phi = standard_involution(&a, &l).unwrap();
            assert!(phi.compose(&phi).unwrap().is_identity(), "{} {l}", a.label());
            for x in a.basis().iter().take(6) {
                for y in a.basis().iter().skip(3).take(6) {
                    let lhs = phi.apply(&a.bracket(x, y)).unwrap();
                    let rhs = a.bracket(&phi.apply(x).unwrap(), &phi.apply(y).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn triality_properties() {
    let so8 = alg(Family::D, 4);
    let th = Automorphism::outer_generator(&so8, 1).unwrap();
    assert!(th.pow(3).unwrap().is_identity());
    assert!(!th.is_inner());
    assert_eq!(th.out_class().order(), 3);
    assert!(th.commutes_with(&Automorphism::inner(&so8, tau(8, 4)).unwrap()).unwrap());
    let omega = Automorphism::omega(&so8).unwrap();
    for x in so8.basis().iter().step_by(5) {
        let a = th.apply(&so8.omega(x)).unwrap();
        let b = so8.omega(&th.apply(x).unwrap());
        assert_eq!(a, b);
    }
    assert!(th.commutes_with(&omega).unwrap());
    for x in so8.basis().iter().step_by(3) {
        for y in so8.basis().iter().step_by(7) {
            let lhs = th.apply(&so8.bracket(x, y)).unwrap();
            let rhs = so8.bracket(&th.apply(x).unwrap(), &th.apply(y).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn int_class_of_labels_round_trips() {
    for a in classical_fixtures() {
        for l in int_class_labels(&a) {
            let phi = standard_involution(&a, &l).unwrap();
            assert_eq!(involution_int_class(&phi).unwrap().label, l, "{}", a.label());
        }
    }
}

#[test]
fn so8_classes_are_distinct() {
    let so8 = alg(Family::D, 4);
    let t2 = Automorphism::inner(&so8, tau(8, 2)).unwrap();
    let j = Automorphism::inner(&so8, j_matrix(8)).unwrap();
    assert_ne!(involution_int_class(&t2).unwrap(), involution_int_class(&j).unwrap());
}

#[test]
fn pfaffian_separation() {
    for m in [2usize, 3] {
        let a = alg(Family::D, 2 * m);
        let j = Automorphism::inner(&a, j_matrix(4 * m)).unwrap();
        let t1 = tau(4 * m, 1);
        let jp = Automorphism::inner(&a, &(&t1 * &j_matrix(4 * m)) * &t1).unwrap();
        let cj = involution_int_class(&j).unwrap();
        let cjp = involution_int_class(&jp).unwrap();
        assert_ne!(cj, cjp);
        assert_eq!(j.matrix().pfaffian().unwrap(), -&jp.matrix().pfaffian().unwrap());
        if m == 2 {
            // in so(8) both are triality images of the class of Ad τ₂
            assert_eq!(cj.standard_label(), "rho2");
            assert_eq!(cjp.standard_label(), "rho2");
        } else {
            assert_eq!(cj.label, format!("rho{}", 2 * m + 1));
            assert_eq!(cjp.label, format!("rho{}'", 2 * m + 1));
        }
    }
}

#[test]
fn int_class_invariant_under_random_inner_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in classical_fixtures() {
        for l in int_class_labels(&a) {
            let phi = standard_involution(&a, &l).unwrap();
            for _ in 0..4 {
                let g = random_inner(&a, &mut rng).unwrap();
                let psi = phi.conjugate_by(&g).unwrap();
                assert_eq!(involution_int_class(&psi).unwrap().label, l, "{} {l}", a.label());
            }
        }
    }
}

#[test]
fn signature_examples() {
    let su4 = alg(Family::A, 3);
    let mu = standard_involution(&su4, "rho3").unwrap();
    let t1 = Automorphism::inner(&su4, tau(4, 1)).unwrap();
    assert_eq!(component_signature(&mu, &t1).unwrap().rep_label, "rho1");
    let id = Automorphism::identity(&su4);
    assert_eq!(component_signature(&mu, &id).unwrap().rep_label, "id");

    let so10 = alg(Family::D, 5);
    let j = standard_involution(&so10, "rho6").unwrap();
    let tn = Automorphism::inner(&so10, tau(10, 5)).unwrap();
    assert_eq!(component_signature(&j, &tn).unwrap().rep_label, "rho5");

    let e7 = make_algebra(Family::E7, 7, FieldMode::Complex).unwrap();
    let r = standard_involution(&e7, "rho1").unwrap();
    assert!(matches!(component_signature(&r, &r), Err(Error::NoSignatureRule(_))));
}

#[test]
fn table1_rows_validate() {
    let mut algs = classical_fixtures();
    algs.push(alg(Family::D, 7));
    for a in algs {
        for l in standard_labels(&a) {
            let rho = standard_involution(&a, &l).unwrap();
            let rows = pi0_table(&a, &l).unwrap();
            let mut seen = Vec::new();
            for e in &rows {
                let rep = e.automorphism.as_ref().unwrap();
                assert!(rep.commutes_with(&rho).unwrap());
                assert_eq!(rep.out_class().order(), e.k);
                let sig = component_signature(&rho, rep).unwrap();
                assert_eq!(sig.rep_label, e.rep_label, "{} {l}", a.label());
                assert!(!seen.contains(&sig));
                seen.push(sig);
            }
        }
    }
}

#[test]
fn pi0_examples() {
    let su4 = alg(Family::A, 3);
    let labels: Vec<(String, u32)> = pi0_table(&su4, "rho2").unwrap().into_iter().map(|e| (e.rep_label, e.k)).collect();
    assert_eq!(
        labels,
        vec![("id".into(), 1), ("AdJ".into(), 1), ("rho3".into(), 2), ("rho4".into(), 2)]
    );
    let e7 = make_algebra(Family::E7, 7, FieldMode::Complex).unwrap();
    let row = pi0_table(&e7, "rho2").unwrap();
    assert_eq!(row.len(), 1);
    assert_eq!(row[0].rep_label, "id");
    let so12 = alg(Family::D, 6);
    let row = pi0_table(&so12, "rho6").unwrap();
    assert_eq!(row.len(), 5);
}

#[test]
fn signature_constant_on_conjugated_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in [alg(Family::A, 3), alg(Family::B, 3), alg(Family::D, 4), alg(Family::D, 6)] {
        for l in standard_labels(&a) {
            let rho = standard_involution(&a, &l).unwrap();
            for e in pi0_table(&a, &l).unwrap() {
                let rep = e.automorphism.unwrap();
                let g = random_inner(&a, &mut rng).unwrap();
                let sig = component_signature(&rho.conjugate_by(&g).unwrap(), &rep.conjugate_by(&g).unwrap()).unwrap();
                assert_eq!(sig.rep_label, e.rep_label, "{} {l}", a.label());
            }
        }
    }
}

#[test]
fn invalid_labels_are_rejected() {
    let su3 = alg(Family::A, 2);
    assert!(matches!(standard_involution(&su3, "rho7"), Err(Error::InvalidLabel(_))));
    assert!(matches!(named_automorphism(&su3, "bogus"), Err(Error::InvalidLabel(_))));
}

#[test]
fn non_involution_rejected() {
    let su3 = alg(Family::A, 2);
    let d = CycloMatrix::diagonal(&[CycloScalar::root_of_unity(3, 1), CycloScalar::one(), CycloScalar::one()]);
    let phi = Automorphism::inner(&su3, d).unwrap();
    assert_eq!(involution_int_class(&phi), Err(Error::NotInvolution));
}

#[test]
fn serde_round_trip() {
    let so8 = alg(Family::D, 4);
    let phi = named_automorphism(&so8, "rho2'").unwrap();
    let s = serde_json::to_string(&phi).unwrap();
    let back: Automorphism = serde_json::from_str(&s).unwrap();
    assert_eq!(back, phi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn out_class_is_multiplicative(seed in any::<u64>(), which in 0usize..4) {
        let a = [alg(Family::A, 3), alg(Family::D, 4), alg(Family::D, 5), alg(Family::A, 2)][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_automorphism(&a, &mut rng).unwrap();
        let y = random_automorphism(&a, &mut rng).unwrap();
        prop_assert_eq!(x.compose(&y).unwrap().out_class(), x.out_class().mul(y.out_class()));
    }

    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>(), which in 0usize..4) {
        let a = [alg(Family::A, 3), alg(Family::D, 4), alg(Family::C, 3), alg(Family::B, 2)][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_automorphism(&a, &mut rng).unwrap();
        prop_assert!(x.compose(&x.inverse().unwrap()).unwrap().is_identity());
    }
}

#[test]
fn primed_class_in_so12_has_signature() {
    let so12 = alg(Family::D, 6);
    let rho = standard_involution(&so12, "rho7'").unwrap();
    let sig = component_signature(&rho, &Automorphism::identity(&so12)).unwrap();
    assert_eq!(sig.rho, "rho7");
    assert_eq!(sig.rep_label, "id");
}
