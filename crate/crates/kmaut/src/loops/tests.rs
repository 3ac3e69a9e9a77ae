use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::aut::{named_automorphism, standard_involution};
use crate::lie::{make_algebra, Family, FieldMode};

fn sl2() -> Arc<SimpleAlgebra> {
    make_algebra(Family::A, 1, FieldMode::Complex).unwrap()
}

fn efh() -> (CycloMatrix, CycloMatrix, CycloMatrix) {
    let e = CycloMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
    let f = CycloMatrix::from_int_rows(&[vec![0, 0], vec![1, 0]]);
    let h = CycloMatrix::from_int_rows(&[vec![1, 0], vec![0, -1]]);
    (e, f, h)
}

fn mono(space: &Arc<LoopSpace>, x: &CycloMatrix, n: i64) -> LoopElement {
    LoopElement::monomial(space, x.clone(), n).unwrap()
}

/// `sl(2)` twisted by `Ad diag(1, −1)` with conductor 2: `e, f` have odd degree.
fn sl2_twisted() -> Arc<LoopSpace> {
    LoopSpace::new(standard_involution(&sl2(), "rho1").unwrap(), 2).unwrap()
}

fn spaces() -> Vec<Arc<LoopSpace>> {
    let a2 = make_algebra(Family::A, 2, FieldMode::Complex).unwrap();
    let d4 = make_algebra(Family::D, 4, FieldMode::Complex).unwrap();
    let c3 = make_algebra(Family::C, 3, FieldMode::Complex).unwrap();
    vec![
        LoopSpace::untwisted(&sl2()).unwrap(),
        sl2_twisted(),
        LoopSpace::new(named_automorphism(&a2, "mu").unwrap(), 2).unwrap(),
        LoopSpace::new(named_automorphism(&d4, "theta").unwrap(), 3).unwrap(),
        LoopSpace::new(standard_involution(&c3, "rho1").unwrap(), 2).unwrap(),
    ]
}

#[test]
fn bracket_examples() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, f, h) = efh();
    let u = mono(&s, &e, 1);
    assert!(u.bracket(&u).unwrap().is_zero());
    assert_eq!(mono(&s, &e, 1).bracket(&mono(&s, &f, -1)).unwrap(), mono(&s, &h, 0));
}

#[test]
fn bracket_support_is_in_sumset() {
    let s = sl2_twisted();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = random_loop(&s, 2, &mut rng);
    let v = random_loop(&s, 3, &mut rng);
    let w = u.bracket(&v).unwrap();
    for n in w.support() {
        assert!(u.support().iter().any(|a| v.support().contains(&(n - a))));
    }
}

#[test]
fn form_examples() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, f, _) = efh();
    assert_eq!(mono(&s, &e, 1).form(&mono(&s, &f, -1)).unwrap(), CycloScalar::from_int(4));
    assert!(mono(&s, &e, 1).form(&mono(&s, &f, 1)).unwrap().is_zero());
}

#[test]
fn eigenspaces_pair_only_opposite_residues() {
    for s in spaces() {
        let alg = s.algebra().clone();
        let l = s.conductor() as i64;
        for n in 0..l {
            for m in 0..l {
                if (n + m) % l == 0 {
                    continue;
                }
                for x in s.eigenbasis(n) {
                    for y in s.eigenbasis(m) {
                        assert!(alg.killing(x, y).is_zero());
                    }
                }
            }
        }
        let total: usize = (0..l).map(|n| s.eigen_dim(n)).sum();
        assert_eq!(total, alg.dim());
    }
}

#[test]
fn derivative_examples() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, _, h) = efh();
    assert!(mono(&s, &h, 0).derivative().is_zero());
    assert_eq!(mono(&s, &e, 1).derivative(), mono(&s, &e.scale(&CycloScalar::i()), 1));
    let t = sl2_twisted();
    let half_i = CycloScalar::i().scale(&Rat::new(1, 2));
    assert_eq!(mono(&t, &e, 1).derivative(), mono(&t, &e.scale(&half_i), 1));
}

#[test]
fn eigenspace_rule_is_enforced() {
    let t = sl2_twisted();
    let (e, _, h) = efh();
    assert!(LoopElement::monomial(&t, e, 0).is_err());
    assert!(LoopElement::monomial(&t, h, 1).is_err());
}

#[test]
fn affine_bracket_examples() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, f, h) = efh();
    let c = AffineElement::central(&s);
    let d = AffineElement::derivation(&s);
    let ez = AffineElement::from_loop(mono(&s, &e, 1));
    assert!(c.bracket(&ez).unwrap().is_zero());
    assert!(c.bracket(&d).unwrap().is_zero());
    let de = d.bracket(&ez).unwrap();
    assert_eq!(de.loop_part, mono(&s, &e.scale(&CycloScalar::i()), 1));
    assert!(de.c.is_zero());
    let fz = AffineElement::from_loop(mono(&s, &f, -1));
    let w = ez.bracket(&fz).unwrap();
    assert_eq!(w.loop_part, mono(&s, &h, 0));
    assert_eq!(w.c, CycloScalar::i().scale(&Rat::from_int(4)));
    assert!(w.d.is_zero());
}

#[test]
fn affine_form_examples() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, _, _) = efh();
    let c = AffineElement::central(&s);
    let d = AffineElement::derivation(&s);
    assert!(c.form(&d).unwrap().is_one());
    assert!(c.form(&c).unwrap().is_zero());
    assert!(d.form(&d).unwrap().is_zero());
    let x = d.add(&AffineElement::from_loop(mono(&s, &e, 1))).unwrap();
    assert!(x.form(&c).unwrap().is_one());
}

#[test]
fn central_element_is_a_commutator_difference() {
    let s = LoopSpace::untwisted(&sl2()).unwrap();
    let (e, f, _) = efh();
    let a = AffineElement::from_loop(mono(&s, &e, 1)).bracket(&AffineElement::from_loop(mono(&s, &f, -1))).unwrap();
    let b = AffineElement::from_loop(mono(&s, &e, 0)).bracket(&AffineElement::from_loop(mono(&s, &f, 0))).unwrap();
    let diff = a.sub(&b).unwrap();
    assert!(diff.loop_part.is_zero());
    assert_eq!(diff.c, CycloScalar::i().scale(&Rat::from_int(4)));
}

#[test]
fn derived_witness_passes() {
    for s in spaces() {
        let w = derived_algebra_witness(&s, 2 * s.conductor() as i64).unwrap();
        assert!(w.passed(), "{} l={}", s.algebra().label(), s.conductor());
        assert!(!w.derivation_in_span);
    }
}

#[test]
fn derived_witness_rejects_small_window() {
    let s = sl2_twisted();
    assert!(matches!(derived_algebra_witness(&s, 3), Err(Error::WindowTooSmall(_))));
}

#[test]
fn twist_order_is_checked() {
    let a2 = make_algebra(Family::A, 2, FieldMode::Complex).unwrap();
    let mu = named_automorphism(&a2, "mu").unwrap();
    assert!(LoopSpace::new(mu.clone(), 3).is_err());
    assert!(LoopSpace::new(mu, 4).is_ok());
}

#[test]
fn reconductor_preserves_brackets_and_forms() {
    let s = sl2_twisted();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = random_loop(&s, 2, &mut rng);
    let v = random_loop(&s, 2, &mut rng);
    let u4 = u.reconductor(4).unwrap();
    let v4 = v.reconductor(4).unwrap();
    u4.validate().unwrap();
    assert_eq!(u.bracket(&v).unwrap().reconductor(4).unwrap(), u4.bracket(&v4).unwrap());
    assert_eq!(u.form(&v).unwrap(), u4.form(&v4).unwrap());
    assert_eq!(u.derivative().reconductor(4).unwrap(), u4.derivative());
    assert!(u.reconductor(3).is_err());
}

#[test]
fn compact_mode_closure() {
    let su2 = make_algebra(Family::A, 1, FieldMode::Compact).unwrap();
    let su3 = make_algebra(Family::A, 2, FieldMode::Compact).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for s in [
        LoopSpace::untwisted(&su2).unwrap(),
        LoopSpace::new(standard_involution(&su3, "rho1").unwrap(), 2).unwrap(),
        LoopSpace::new(named_automorphism(&su3, "mu").unwrap(), 2).unwrap(),
    ] {
        for _ in 0..4 {
            let u = random_loop(&s, 2, &mut rng);
            let v = random_loop(&s, 2, &mut rng);
            assert!(u.is_compact_real());
            let w = u.bracket(&v).unwrap();
            assert!(w.is_compact_real());
            w.validate().unwrap();
            assert!(u.derivative().is_compact_real());
        }
    }
    let (e, _, _) = efh();
    assert_eq!(LoopElement::monomial(&LoopSpace::untwisted(&su2).unwrap(), e, 1), Err(Error::NotCompactMode));
}

#[test]
fn json_round_trip() {
    let s = sl2_twisted();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_affine(&s, 2, &mut rng);
    let j = serde_json::to_string(&x).unwrap();
    let back: AffineElement = serde_json::from_str(&j).unwrap();
    assert_eq!(back, x);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["l"], 2);
    assert!(v["coeffs"].get("1").is_some() || v["coeffs"].get("-1").is_some());
}

#[test]
fn json_rejects_invalid_coefficients() {
    let s = sl2_twisted();
    let (e, _, _) = efh();
    let bad = LoopElement::from_parts_unchecked(&s, BTreeMap::from([(0, e)]));
    let j = serde_json::to_string(&bad).unwrap();
    assert!(serde_json::from_str::<LoopElement>(&j).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn affine_jacobi(seed in any::<u64>(), which in 0usize..5) {
        let s = spaces()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_affine(&s, 2, &mut rng);
        let y = random_affine(&s, 2, &mut rng);
        let z = random_affine(&s, 2, &mut rng);
        let a = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let b = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let c = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn affine_form_biinvariant(seed in any::<u64>(), which in 0usize..5) {
        let s = spaces()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_affine(&s, 2, &mut rng);
        let y = random_affine(&s, 2, &mut rng);
        let z = random_affine(&s, 2, &mut rng);
        prop_assert_eq!(x.bracket(&y).unwrap().form(&z).unwrap(), x.form(&y.bracket(&z).unwrap()).unwrap());
        prop_assert_eq!(x.form(&y).unwrap(), y.form(&x).unwrap());
    }

    #[test]
    fn operations_preserve_grading(seed in any::<u64>(), which in 0usize..5) {
        let s = spaces()[which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_loop(&s, 3, &mut rng);
        let v = random_loop(&s, 3, &mut rng);
        prop_assert!(u.bracket(&v).unwrap().validate().is_ok());
        prop_assert!(u.derivative().validate().is_ok());
        prop_assert_eq!(u.derivative().form(&v).unwrap(), -&u.form(&v.derivative()).unwrap());
    }
}
