use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::invariant::{canonical_pair, derived_integers};
use super::*;
use crate::aut::random::random_inner;
use crate::aut::{named_automorphism, standard_involution, OutElement};
use crate::lie::{make_algebra, Family, FieldMode};
use crate::loops::{random_affine, random_loop};
use crate::verify::fixtures::{first_kind_fixtures, normalization_fixtures};

fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
    make_algebra(f, n, FieldMode::Complex).unwrap()
}

fn sl2() -> Arc<SimpleAlgebra> {
    alg(Family::A, 1)
}

fn id(a: &Arc<SimpleAlgebra>) -> Automorphism {
    Automorphism::identity(a)
}

fn e() -> CycloMatrix {
    CycloMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]])
}

fn h() -> CycloMatrix {
    CycloMatrix::from_int_rows(&[vec![1, 0], vec![0, -1]])
}

/// `i q h` in `sl(2)`.
fn ih(q: Rat) -> CycloMatrix {
    h().scale(&CycloScalar::i().scale(&q))
}

fn weyl_sl2() -> Automorphism {
    Automorphism::inner(&sl2(), CycloMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]])).unwrap()
}

fn label(s: &str) -> RhoClass {
    RhoClass::Label(s.into())
}

#[test]
fn target_twist_examples() {
    let a = alg(Family::A, 2);
    let sigma = standard_involution(&a, "rho1").unwrap();
    let phi = StandardLoopAutomorphism::constant(&sigma, 1, Rat::zero(), sigma.clone()).unwrap();
    assert_eq!(*phi.target_twist(), sigma);
    let mu = named_automorphism(&a, "mu").unwrap();
    let rho = standard_involution(&a, "rho2").unwrap();
    let psi = StandardLoopAutomorphism::constant(&mu, -1, Rat::zero(), rho.clone()).unwrap();
    let expected = rho.compose(&mu.inverse().unwrap()).unwrap().compose(&rho.inverse().unwrap()).unwrap();
    assert_eq!(*psi.target_twist(), expected);
    // φ₀ = σφ₀σ gives σ̃ = σ
    let b = alg(Family::B, 2);
    let s = standard_involution(&b, "rho1").unwrap();
    let p = standard_involution(&b, "rho2").unwrap();
    let phi = StandardLoopAutomorphism::constant(&s, -1, Rat::zero(), p).unwrap();
    assert_eq!(*phi.target_twist(), s);
}

#[test]
fn periodicity_is_checked() {
    let a = sl2();
    let err = StandardLoopAutomorphism::new(id(&a), 1, Rat::zero(), ih(Rat::new(1, 3)), id(&a), Rat::one()).unwrap();
    // e^{2π ad X} has order 3 here, so the map lands on a different twist
    assert!(!err.is_endomorphism());
    assert_eq!(err.target_order(), 3);
    let bad = StandardLoopAutomorphism::new(
        standard_involution(&a, "rho1").unwrap(),
        1,
        Rat::zero(),
        e(),
        id(&a),
        Rat::one(),
    );
    assert!(bad.is_err());
}

#[test]
fn apply_examples() {
    let a = sl2();
    let s = LoopSpace::untwisted(&a).unwrap();
    let u = LoopElement::monomial(&s, e(), 1).unwrap();
    let ident = StandardLoopAutomorphism::identity(&id(&a)).unwrap();
    assert_eq!(ident.apply(&u).unwrap(), u);
    let half = StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 2)).unwrap();
    assert_eq!(half.apply(&u).unwrap(), u.neg());
    let sigma = standard_involution(&a, "rho1").unwrap();
    let s2 = LoopSpace::new(sigma.clone(), 2).unwrap();
    let w = LoopElement::monomial(&s2, h(), 2).unwrap();
    let tau = StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(4)).unwrap();
    assert_eq!(tau.apply(&w).unwrap(), w.scale(&CycloScalar::from_int(4)).unwrap());
}

#[test]
fn apply_reflection_flips_degrees() {
    let a = sl2();
    let s = LoopSpace::untwisted(&a).unwrap();
    let r = StandardLoopAutomorphism::reflection(&id(&a)).unwrap();
    let u = LoopElement::monomial(&s, e(), 3).unwrap();
    assert_eq!(r.apply(&u).unwrap(), LoopElement::monomial(&s, e(), -3).unwrap());
}

#[test]
fn apply_exp_curve_shifts_by_eigenvalue() {
    let a = sl2();
    let s = LoopSpace::untwisted(&a).unwrap();
    let psi = StandardLoopAutomorphism::exp_curve(&id(&a), ih(Rat::new(1, 2))).unwrap();
    let out = psi.apply(&LoopElement::monomial(&s, e(), 0).unwrap()).unwrap();
    // [i h/2, e] = i e, so e ↦ e^{it} e
    assert_eq!(out.space().conductor(), 1);
    assert_eq!(out, LoopElement::monomial(out.space(), e(), 1).unwrap());
}

#[test]
fn apply_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = alg(Family::A, 2);
    let sigma = named_automorphism(&a, "mu").unwrap();
    let space = LoopSpace::new(sigma.clone(), 2).unwrap();
    let rho = standard_involution(&a, "rho1").unwrap();
    let maps = vec![
        StandardLoopAutomorphism::constant(&sigma, 1, Rat::new(1, 3), id(&a)).unwrap(),
        StandardLoopAutomorphism::constant(&sigma, -1, Rat::new(1, 4), rho.clone()).unwrap(),
        StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(9)).unwrap(),
    ];
    for phi in maps {
        let u = random_loop(&space, 2, &mut rng);
        let v = random_loop(&space, 2, &mut rng);
        let lhs = phi.apply(&u.bracket(&v).unwrap()).unwrap();
        let rhs = phi.apply(&u).unwrap().bracket(&phi.apply(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{phi}");
    }
}

#[test]
fn compose_matches_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = sl2();
    let sigma = id(&a);
    let space = LoopSpace::untwisted(&a).unwrap();
    let x = ih(Rat::one());
    let maps = vec![
        StandardLoopAutomorphism::new(sigma.clone(), 1, Rat::new(1, 3), x.clone(), id(&a), Rat::one()).unwrap(),
        StandardLoopAutomorphism::constant(&sigma, -1, Rat::new(1, 2), weyl_sl2()).unwrap(),
        StandardLoopAutomorphism::new(sigma.clone(), -1, Rat::zero(), x.clone(), weyl_sl2(), Rat::one()).unwrap(),
        StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(2)).unwrap(),
    ];
    for f in &maps {
        for g in &maps {
            let fg = f.compose(g).unwrap();
            let u = random_loop(&space, 2, &mut rng);
            let lhs = fg.apply(&u).unwrap();
            let rhs = f.apply(&g.apply(&u).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{f} after {g}");
            let back = fg.compose(&fg.inverse().unwrap()).unwrap();
            assert!(back.is_identity(), "{fg}");
        }
    }
}

#[test]
fn compose_rejects_non_commuting_curves() {
    let a = sl2();
    let ex = StandardLoopAutomorphism::exp_curve(&id(&a), ih(Rat::one())).unwrap();
    let ey = StandardLoopAutomorphism::exp_curve(
        &id(&a),
        CycloMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]]).scale(&CycloScalar::i()),
    );
    if let Ok(ey) = ey {
        assert!(matches!(ex.compose(&ey), Err(Error::NonCommuting)));
    }
}

#[test]
fn order_examples() {
    let a = alg(Family::B, 2);
    let rot = StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 3)).unwrap();
    assert_eq!(rot.order(ORDER_BOUND).unwrap(), 3);
    let rho = standard_involution(&a, "rho1").unwrap();
    let inv = StandardLoopAutomorphism::constant(&id(&a), 1, Rat::zero(), rho).unwrap();
    assert_eq!(inv.order(ORDER_BOUND).unwrap(), 2);
    let tau = StandardLoopAutomorphism::scaling(&id(&a), Rat::from_int(2)).unwrap();
    assert!(matches!(tau.order(ORDER_BOUND), Err(Error::InfiniteOrderScaling)));
    let refl = StandardLoopAutomorphism::reflection(&id(&a)).unwrap();
    assert_eq!(refl.order(ORDER_BOUND).unwrap(), 2);
    let slow = StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 7)).unwrap();
    assert!(matches!(slow.order(5), Err(Error::OrderExceedsBound(5))));
}

#[test]
fn tau_is_multiplicative() {
    let a = sl2();
    let sigma = standard_involution(&a, "rho1").unwrap();
    let t2 = StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(4)).unwrap();
    let t3 = StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(9)).unwrap();
    let t6 = StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(36)).unwrap();
    assert_eq!(t2.compose(&t3).unwrap(), t6);
    assert!(t2.compose(&t2.inverse().unwrap()).unwrap().is_identity());
}

#[test]
fn scaling_interchange_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = sl2();
    let sigma = id(&a);
    let space = LoopSpace::untwisted(&a).unwrap();
    let r = Rat::from_int(4);
    let tau = StandardLoopAutomorphism::scaling(&sigma, r.clone()).unwrap();
    for phi in [
        StandardLoopAutomorphism::new(sigma.clone(), 1, Rat::new(1, 4), ih(Rat::one()), id(&a), Rat::one()).unwrap(),
        StandardLoopAutomorphism::new(sigma.clone(), -1, Rat::zero(), ih(Rat::one()), weyl_sl2(), Rat::one()).unwrap(),
    ] {
        let moved = phi.scaled_conjugate(&r).unwrap();
        let u = random_loop(&space, 2, &mut rng);
        assert_eq!(moved.apply(&u).unwrap(), tau.apply(&phi.apply(&u).unwrap()).unwrap());
        assert_eq!(tau.compose(&phi).unwrap(), moved);
    }
}

#[test]
fn normalizing_scale_for_second_kind() {
    let a = sl2();
    let sigma = id(&a);
    let refl = StandardLoopAutomorphism::reflection(&sigma).unwrap();
    let tau = StandardLoopAutomorphism::scaling(&sigma, Rat::from_int(3)).unwrap();
    // τ_3 ∘ ψ ∘ τ_3⁻¹ = ψ ∘ τ_9⁻¹ ... here the conjugate of the unscaled reflection
    let scaled = tau.compose(&refl).unwrap().compose(&tau.inverse().unwrap()).unwrap();
    assert_eq!(*scaled.scale(), Rat::new(1, 9));
    let r = scaled.normalizing_scale().unwrap();
    assert_eq!(r, Rat::new(1, 3));
    let (_, fixed) = scaled.normalize_scaling().unwrap();
    assert!(fixed.scale().is_one());
    assert_eq!(fixed, refl);
    assert!(matches!(tau.normalizing_scale(), Err(Error::WrongKind(_))));
}

#[test]
fn normalize_examples() {
    let a = sl2();
    let c = StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 2)).unwrap();
    let n = c.normalize_to_constant().unwrap();
    assert!(n.y.is_zero());
    assert_eq!(n.new_twist, id(&a));
    let x = ih(Rat::new(1, 2));
    let phi = StandardLoopAutomorphism::new(id(&a), 1, Rat::zero(), x.clone(), weyl_sl2(), Rat::one()).unwrap();
    assert_eq!(phi.order(ORDER_BOUND).unwrap(), 2);
    let n = phi.normalize_to_constant().unwrap();
    assert_eq!(n.y, x.scale_rat(&Rat::new(-1, 2)));
    assert!(n.constant.x().is_zero());
    assert_eq!(n.order, 2);
    assert_eq!(n.constant.order(ORDER_BOUND).unwrap(), 2);
    assert_eq!(invariant(&phi).unwrap(), invariant(&n.constant).unwrap());
}

#[test]
fn normalization_on_random_fixtures() {
    let fixtures = normalization_fixtures(60, 21);
    let mut nonconstant = 0;
    for (phi, c) in &fixtures {
        if !phi.x().is_zero() {
            nonconstant += 1;
        }
        let n = phi.normalize_to_constant().unwrap();
        let check = &(&n.y - &phi.phi0().apply(&n.y).unwrap().scale_rat(&Rat::from_int(phi.epsilon() as i64)))
            + phi.x();
        assert!(check.is_zero());
        assert!(n.constant.x().is_zero());
        assert_eq!(n.new_twist, *n.constant.source_twist());
        assert_eq!(n.order, c.order(ORDER_BOUND).unwrap());
        assert_eq!(n.constant.order(ORDER_BOUND).unwrap(), n.order);
        assert_eq!(n.constant.epsilon(), phi.epsilon());
        if phi.epsilon() == 1 || n.order == 2 {
            assert_eq!(invariant(phi).unwrap(), invariant(c).unwrap(), "{phi}");
        }
    }
    assert!(nonconstant >= 30);
}

#[test]
fn derived_integers_satisfy_bezout() {
    for q in 1..12u64 {
        for p in 0..q {
            let (r, pp, qq, l, m) = derived_integers(p, q);
            assert_eq!(p, r * pp);
            assert_eq!(q, r * qq);
            assert_eq!(l as i64 * pp as i64 + m * qq as i64, 1);
            assert!(l < qq);
        }
    }
}

#[test]
fn first_kind_examples() {
    let a = alg(Family::A, 3);
    let sigma = named_automorphism(&a, "mu").unwrap();
    for rho in ["rho1", "rho2"] {
        let r = standard_involution(&a, rho).unwrap();
        if !r.commutes_with(&sigma).unwrap() {
            continue;
        }
        let phi = StandardLoopAutomorphism::constant(&sigma, 1, Rat::zero(), r).unwrap();
        let inv = invariant_first_kind(&phi).unwrap();
        assert_eq!((inv.q, inv.p), (2, 0));
        assert_eq!(inv.rho, label(rho));
    }
    let b = alg(Family::B, 2);
    let r1 = standard_involution(&b, "rho1").unwrap();
    let phi = StandardLoopAutomorphism::constant(&id(&b), 1, Rat::zero(), r1.clone()).unwrap();
    let inv = invariant_first_kind(&phi).unwrap();
    assert_eq!((inv.q, inv.p, inv.rho.clone(), inv.beta.as_str()), (2, 0, label("rho1"), "id"));
    // φu(t) = φ₀(u(t + π)) with φ₀² σ = id
    let psi = StandardLoopAutomorphism::constant(&id(&b), 1, Rat::new(1, 2), r1.clone()).unwrap();
    let inv = invariant_first_kind(&psi).unwrap();
    assert_eq!((inv.q, inv.p, inv.rho.clone()), (2, 1, label("id")));
    let ident = StandardLoopAutomorphism::identity(&id(&b)).unwrap();
    let inv = invariant_first_kind(&ident).unwrap();
    assert_eq!((inv.q, inv.p, inv.rho.clone(), inv.beta.as_str()), (1, 0, label("id"), "id"));
    let refl = StandardLoopAutomorphism::reflection(&id(&b)).unwrap();
    assert!(matches!(invariant_first_kind(&refl), Err(Error::WrongKind(_))));
}

#[test]
fn first_kind_beta_tracks_twist_class() {
    let a = alg(Family::A, 2);
    let mu = named_automorphism(&a, "mu").unwrap();
    let phi = StandardLoopAutomorphism::identity(&mu).unwrap();
    let inv = invariant_first_kind(&phi).unwrap();
    assert_eq!((inv.rho.clone(), inv.beta.as_str(), inv.k), (label("id"), "mu", 2));
}

#[test]
fn order_three_rotation_gives_certificate_free_invariant() {
    let a = alg(Family::D, 4);
    let theta = named_automorphism(&a, "theta").unwrap();
    let phi = StandardLoopAutomorphism::constant(&id(&a), 1, Rat::zero(), theta).unwrap();
    let inv = invariant_first_kind(&phi).unwrap();
    assert_eq!(inv.q, 3);
    match &inv.rho {
        RhoClass::Certificate(c) => {
            assert_eq!(c.order, 3);
            assert_eq!(c.rho_out.order(), 3);
            let total: usize = c.eigen_multiplicities.iter().map(|(_, d)| d).sum();
            assert_eq!(total, 28);
        }
        RhoClass::Label(l) => panic!("expected a certificate, got {l}"),
    }
    let same = phi.conjugate_by(&StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 5)).unwrap()).unwrap();
    assert_eq!(conjugacy_test(&phi, &same).unwrap(), Conjugacy::Undecided);
}

#[test]
fn invariants_are_conjugation_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let fixtures = first_kind_fixtures();
    assert!(fixtures.len() >= 20);
    for phi in fixtures {
        let a = phi.algebra().clone();
        let inv = invariant(&phi).unwrap();
        let alpha = random_inner(&a, &mut rng).unwrap();
        let psi = StandardLoopAutomorphism::constant(phi.source_twist(), 1, Rat::zero(), alpha).unwrap();
        let conj = phi.conjugate_by(&psi).unwrap();
        assert_eq!(invariant(&conj).unwrap(), inv, "{phi}");
        assert_eq!(conjugacy_test(&phi, &conj).unwrap(), Conjugacy::Conjugate);
        let shift = StandardLoopAutomorphism::shift(phi.source_twist(), Rat::new(1, 3)).unwrap();
        assert_eq!(invariant(&phi.conjugate_by(&shift).unwrap()).unwrap(), inv);
    }
}

#[test]
fn opposite_matches_reflection() {
    for phi in first_kind_fixtures() {
        let a = phi.algebra().clone();
        let inv = invariant_first_kind(&phi).unwrap();
        let refl = StandardLoopAutomorphism::reflection(phi.target_twist()).unwrap();
        let back = StandardLoopAutomorphism::reflection(phi.source_twist()).unwrap();
        let conj = refl.compose(&phi).unwrap().compose(&back).unwrap();
        let expected = opposite(&a, &inv).unwrap();
        assert_eq!(invariant_first_kind(&conj).unwrap(), expected, "{phi}");
        assert_eq!(opposite(&a, &expected).unwrap(), inv);
    }
}

#[test]
fn opposite_examples() {
    let a = alg(Family::A, 2);
    let inv = FirstKindInvariant { q: 2, p: 0, rho: label("rho1"), beta: "id".into(), k: 1 };
    assert_eq!(opposite(&a, &inv).unwrap(), inv);
    let inv = FirstKindInvariant { q: 2, p: 1, rho: label("id"), beta: "mu".into(), k: 2 };
    assert_eq!(opposite(&a, &inv).unwrap(), inv);
}

#[test]
fn realize_round_trips() {
    for phi in first_kind_fixtures() {
        let a = phi.algebra().clone();
        let inv = invariant(&phi).unwrap();
        let built = realize(&a, &inv).unwrap();
        assert_eq!(invariant(&built).unwrap(), inv, "{phi}");
    }
}

#[test]
fn conjugacy_test_separates() {
    let a = alg(Family::B, 3);
    let r1 = StandardLoopAutomorphism::constant(&id(&a), 1, Rat::zero(), standard_involution(&a, "rho1").unwrap()).unwrap();
    let r2 = StandardLoopAutomorphism::constant(&id(&a), 1, Rat::zero(), standard_involution(&a, "rho2").unwrap()).unwrap();
    assert_eq!(conjugacy_test(&r1, &r2).unwrap(), Conjugacy::NotConjugate);
    let refl = StandardLoopAutomorphism::reflection(&id(&a)).unwrap();
    assert_eq!(conjugacy_test(&r1, &refl).unwrap(), Conjugacy::NotConjugate);
    let rot = StandardLoopAutomorphism::shift(&id(&a), Rat::new(1, 3)).unwrap();
    assert_eq!(conjugacy_test(&r1, &rot).unwrap(), Conjugacy::NotConjugate);
}

fn second_kind(a: &Arc<SimpleAlgebra>, plus: &str, minus: &str) -> StandardLoopAutomorphism {
    let inv = LoopInvariant::Second(SecondKindInvariant { pair: [plus.into(), minus.into()], k: 1 });
    realize(a, &inv).unwrap()
}

#[test]
fn second_kind_examples() {
    let a = alg(Family::C, 3);
    let refl = StandardLoopAutomorphism::reflection(&id(&a)).unwrap();
    let inv = invariant_second_kind(&refl).unwrap();
    assert_eq!(inv, SecondKindInvariant { pair: ["id".into(), "id".into()], k: 1 });
    let phi = second_kind(&a, "rho1", "rho2");
    assert_eq!(invariant_second_kind(&phi).unwrap().pair, ["rho1".to_string(), "rho2".to_string()]);
    let swapped = second_kind(&a, "rho2", "rho1");
    assert_eq!(invariant_second_kind(&phi).unwrap(), invariant_second_kind(&swapped).unwrap());
    assert_eq!(conjugacy_test(&phi, &swapped).unwrap(), Conjugacy::Conjugate);
    let other = second_kind(&a, "rho1", "rho1");
    assert_eq!(conjugacy_test(&phi, &other).unwrap(), Conjugacy::NotConjugate);
}

#[test]
fn second_kind_is_conjugation_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::D, 4)] {
        let a = alg(f, n);
        let labels = crate::aut::int_class_labels(&a);
        for (i, p) in labels.iter().enumerate().take(4) {
            for m in labels.iter().skip(i).take(3) {
                let phi = second_kind(&a, p, m);
                let inv = invariant_second_kind(&phi).unwrap();
                let alpha = random_inner(&a, &mut rng).unwrap();
                let psi = StandardLoopAutomorphism::constant(phi.source_twist(), 1, Rat::zero(), alpha).unwrap();
                assert_eq!(invariant_second_kind(&phi.conjugate_by(&psi).unwrap()).unwrap(), inv);
                let shift = StandardLoopAutomorphism::shift(phi.source_twist(), Rat::new(1, 4)).unwrap();
                assert_eq!(invariant_second_kind(&phi.conjugate_by(&shift).unwrap()).unwrap(), inv, "{phi}");
            }
        }
    }
}

#[test]
fn outer_orbit_canonicalizes_pairs() {
    let a = alg(Family::D, 4);
    let x = canonical_pair(&a, "rho1'", "id").unwrap();
    let y = canonical_pair(&a, "id", "rho1''").unwrap();
    assert_eq!(x, y);
    assert_eq!(x, ["id".to_string(), "rho1".to_string()]);
}

#[test]
fn square_map_matches_square() {
    for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::D, 4)] {
        let a = alg(f, n);
        let labels = crate::aut::int_class_labels(&a);
        for p in labels.iter().take(4) {
            for m in labels.iter().take(4) {
                let phi = second_kind(&a, p, m);
                let inv = invariant_second_kind(&phi).unwrap();
                let sq = phi.compose(&phi).unwrap();
                assert_eq!(square_map(&a, &inv).unwrap(), invariant_first_kind(&sq).unwrap(), "{p} {m}");
            }
        }
    }
}

#[test]
fn affine_extension_examples() {
    let a = sl2();
    let s = LoopSpace::untwisted(&a).unwrap();
    let c = AffineElement::central(&s);
    let d = AffineElement::derivation(&s);
    let ident = StandardLoopAutomorphism::identity(&id(&a)).unwrap();
    assert_eq!(ident.affine_apply(&c).unwrap(), c);
    assert_eq!(ident.affine_apply(&d).unwrap(), d);
    assert!(ident.affine_gamma().is_zero());
    let refl = StandardLoopAutomorphism::reflection(&id(&a)).unwrap();
    assert_eq!(refl.affine_apply(&c).unwrap(), c.scale(&CycloScalar::from_int(-1)));
    assert_eq!(refl.affine_apply(&d).unwrap(), d.scale(&CycloScalar::from_int(-1)));
    let tau = StandardLoopAutomorphism::scaling(&id(&a), Rat::from_int(2)).unwrap();
    assert!(matches!(tau.affine_apply(&c), Err(Error::ScalingNotExtendable)));
}

#[test]
fn affine_extension_preserves_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let a = sl2();
    let sigma = id(&a);
    let space = LoopSpace::untwisted(&a).unwrap();
    let maps = vec![
        StandardLoopAutomorphism::new(sigma.clone(), 1, Rat::new(1, 3), ih(Rat::one()), id(&a), Rat::one()).unwrap(),
        StandardLoopAutomorphism::new(sigma.clone(), -1, Rat::zero(), ih(Rat::new(1, 2)), weyl_sl2(), Rat::one())
            .unwrap(),
        StandardLoopAutomorphism::new(sigma.clone(), 1, Rat::zero(), ih(Rat::new(1, 2)), weyl_sl2(), Rat::one())
            .unwrap(),
    ];
    for phi in maps {
        let d = AffineElement::derivation(&space);
        for _ in 0..3 {
            let u = random_affine(&space, 2, &mut rng);
            let v = random_affine(&space, 2, &mut rng);
            let lhs = phi.affine_apply(&u.bracket(&v).unwrap()).unwrap();
            let rhs = phi.affine_apply(&u).unwrap().bracket(&phi.affine_apply(&v).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{phi}");
            assert_eq!(
                phi.affine_apply(&u).unwrap().form(&phi.affine_apply(&v).unwrap()).unwrap(),
                u.form(&v).unwrap()
            );
            let du = d.bracket(&u).unwrap();
            assert_eq!(
                phi.affine_apply(&du).unwrap(),
                phi.affine_apply(&d).unwrap().bracket(&phi.affine_apply(&u).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn serde_round_trips() {
    let a = alg(Family::A, 2);
    let mu = named_automorphism(&a, "mu").unwrap();
    let phi = StandardLoopAutomorphism::constant(&mu, -1, Rat::new(1, 3), standard_involution(&a, "rho1").unwrap())
        .unwrap();
    let json = serde_json::to_string(&phi).unwrap();
    let back: StandardLoopAutomorphism = serde_json::from_str(&json).unwrap();
    assert_eq!(back, phi);
    for inv in [
        LoopInvariant::First(FirstKindInvariant { q: 4, p: 1, rho: label("rho1"), beta: "id".into(), k: 1 }),
        LoopInvariant::Second(SecondKindInvariant { pair: ["id".into(), "rho2".into()], k: 2 }),
        LoopInvariant::First(FirstKindInvariant {
            q: 3,
            p: 0,
            rho: RhoClass::Certificate(RhoCertificate {
                order: 3,
                eigen_multiplicities: vec![(0, 14), (1, 7), (2, 7)],
                rho_out: OutElement::new(0, 1),
                beta_out: OutElement::IDENTITY,
            }),
            beta: "id".into(),
            k: 1,
        }),
    ] {
        let json = serde_json::to_string(&inv).unwrap();
        let back: LoopInvariant = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inv, "{json}");
    }
    let v: serde_json::Value =
        serde_json::to_value(LoopInvariant::Second(SecondKindInvariant { pair: ["id".into(), "id".into()], k: 1 }))
            .unwrap();
    assert_eq!(v["kind"], 2);
}

#[test]
fn static_algebras_are_rejected() {
    let g2 = make_algebra(Family::G2, 2, FieldMode::Complex).unwrap();
    let inv = LoopInvariant::First(FirstKindInvariant { q: 1, p: 0, rho: label("id"), beta: "id".into(), k: 1 });
    assert!(matches!(realize(&g2, &inv), Err(Error::StaticOnlyAlgebra)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shifts_compose_additively(a in 0i64..6, b in 0i64..6, n in -3i64..=3) {
        let g = sl2();
        let s = LoopSpace::untwisted(&g).unwrap();
        let f1 = StandardLoopAutomorphism::shift(&id(&g), Rat::new(a, 6)).unwrap();
        let f2 = StandardLoopAutomorphism::shift(&id(&g), Rat::new(b, 6)).unwrap();
        let sum = StandardLoopAutomorphism::shift(&id(&g), Rat::new(a + b, 6)).unwrap();
        prop_assert_eq!(f1.compose(&f2).unwrap(), sum.clone());
        let u = LoopElement::monomial(&s, e(), n).unwrap();
        prop_assert_eq!(sum.apply(&u).unwrap(), f1.apply(&f2.apply(&u).unwrap()).unwrap());
    }

    #[test]
    fn inverse_undoes_apply(seed in 0u64..1000, t in 0i64..4, k in -2i64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = sl2();
        let space = LoopSpace::untwisted(&g).unwrap();
        let phi = StandardLoopAutomorphism::new(id(&g), 1, Rat::new(t, 4), ih(Rat::from_int(k)), weyl_sl2(), Rat::one());
        let phi = match phi { Ok(p) => p, Err(_) => return Ok(()) };
        let u = random_loop(&space, 2, &mut rng);
        let inv = phi.inverse().unwrap();
        let back = inv.apply(&phi.apply(&u).unwrap()).unwrap();
        let coeffs: BTreeMap<i64, CycloMatrix> = back.reconductor(1).unwrap().coeffs().clone();
        prop_assert_eq!(coeffs, u.coeffs().clone());
    }
}

