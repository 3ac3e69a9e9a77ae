//! Deterministic automorphism fixtures shared by the verification suite and the tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aut::named::out_generators;
use crate::aut::{named_automorphism, standard_involution, standard_labels, Automorphism};
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::lie::{make_algebra, Family, FieldMode, SimpleAlgebra};
use crate::loop_aut::{LoopInvariant, SecondKindInvariant, StandardLoopAutomorphism, realize};
use crate::rat::Rat;

fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
    make_algebra(f, n, FieldMode::Complex).expect("classical algebra")
}

/// `i·diag(a₁, …, a_m)` with small rational entries summing to zero.
pub fn random_torus_element<R: Rng>(m: usize, rng: &mut R) -> CycloMatrix {
    let den = [1i64, 2, 3][rng.gen_range(0..3)];
    let mut vals: Vec<Rat> = (0..m - 1).map(|_| Rat::new(rng.gen_range(-3..=3), den)).collect();
    let sum = vals.iter().fold(Rat::zero(), |acc, v| &acc + v);
    vals.push(-sum);
    CycloMatrix::diagonal(&vals.iter().map(|v| CycloScalar::i().scale(v)).collect::<Vec<_>>())
}

/// A uniformly random permutation matrix.
pub fn permutation<R: Rng>(m: usize, rng: &mut R) -> CycloMatrix {
    let mut p: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    CycloMatrix::from_fn(m, m, |i, j| if p[i] == j { CycloScalar::one() } else { CycloScalar::zero() })
}

/// Pairs `(φ, c)` where `c` is a finite-order constant map on `sl(m)`, `m ≤ 4`, and `φ` is its
/// conjugate by a torus curve `u ↦ e^{t ad Y}u`, so that `φ` usually has `X ≠ 0`.
pub fn normalization_fixtures(count: usize, seed: u64) -> Vec<(StandardLoopAutomorphism, StandardLoopAutomorphism)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = rng.gen_range(2..=4);
        let a = alg(Family::A, m - 1);
        let sigma = if rng.gen_bool(0.5) {
            Automorphism::identity(&a)
        } else {
            let d: Vec<CycloScalar> = (0..m).map(|k| CycloScalar::from_int(if k == 0 { -1 } else { 1 })).collect();
            Automorphism::inner(&a, CycloMatrix::diagonal(&d)).expect("diagonal twist")
        };
        let phi0 = Automorphism::inner(&a, permutation(m, &mut rng)).expect("permutation");
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let t0 = Rat::new(rng.gen_range(0..4), 4);
        let Ok(c) = StandardLoopAutomorphism::constant(&sigma, eps, t0, phi0) else { continue };
        if !c.is_endomorphism() || c.order(64).is_err() {
            continue;
        }
        let psi = StandardLoopAutomorphism::exp_curve(&sigma, random_torus_element(m, &mut rng)).expect("torus curve");
        let phi = c.conjugate_by(&psi).expect("conjugation");
        out.push((phi, c));
    }
    out
}

/// Constant first-kind maps `u ↦ ρ(u(t + t₀))` over small classical algebras, with the
/// identity and the order-2 outer generators as twists.
pub fn first_kind_fixtures() -> Vec<StandardLoopAutomorphism> {
    let mut out = Vec::new();
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 4), (Family::D, 5)] {
        let a = alg(f, n);
        let mut twists = vec![Automorphism::identity(&a)];
        twists.extend(out_generators(&a).expect("classical").into_iter().filter(|g| g.order(2).is_ok()));
        for sigma in twists {
            for l in standard_labels(&a) {
                let rho = standard_involution(&a, &l).expect("standard label");
                if !rho.commutes_with(&sigma).unwrap_or(false) {
                    continue;
                }
                for t0 in [Rat::zero(), Rat::new(1, 2)] {
                    if let Ok(phi) = StandardLoopAutomorphism::constant(&sigma, 1, t0, rho.clone()) {
                        if phi.is_endomorphism() && phi.order(8).is_ok() {
                            out.push(phi);
                        }
                    }
                }
            }
        }
    }
    out
}

/// A fixture with the order it is built to have.
pub struct OrderedFixture {
    pub name: String,
    pub order: u64,
    pub phi: StandardLoopAutomorphism,
}

fn fixture(name: &str, order: u64, twist: &Automorphism, eps: i8, t0: Rat, phi0: Automorphism) -> OrderedFixture {
    let phi = StandardLoopAutomorphism::constant(twist, eps, t0, phi0).expect("fixture");
    OrderedFixture { name: name.into(), order, phi }
}

/// First-kind maps of orders 2, 3, 4, 6 and second-kind maps of order 2.
pub fn stability_fixtures() -> Vec<OrderedFixture> {
    let a2 = alg(Family::A, 2);
    let a3 = alg(Family::A, 3);
    let b2 = alg(Family::B, 2);
    let c3 = alg(Family::C, 3);
    let d4 = alg(Family::D, 4);
    let id = |a: &Arc<SimpleAlgebra>| Automorphism::identity(a);
    let rho = |a: &Arc<SimpleAlgebra>, l: &str| standard_involution(a, l).expect("standard label");
    let mu = named_automorphism(&a2, "mu").expect("mu");
    let theta = named_automorphism(&d4, "theta").expect("theta");
    let mut out = vec![
        fixture("a2 rho1", 2, &id(&a2), 1, Rat::zero(), rho(&a2, "rho1")),
        fixture("b2 half shift", 2, &id(&b2), 1, Rat::new(1, 2), id(&b2)),
        fixture("a2 mu-twisted rho1", 2, &mu, 1, Rat::zero(), rho(&a2, "rho1")),
        fixture("a2 third shift", 3, &id(&a2), 1, Rat::new(1, 3), id(&a2)),
        fixture("d4 triality", 3, &id(&d4), 1, Rat::zero(), theta),
        fixture("b2 rho1 quarter shift", 4, &id(&b2), 1, Rat::new(1, 4), rho(&b2, "rho1")),
        fixture("c3 quarter shift", 4, &id(&c3), 1, Rat::new(1, 4), id(&c3)),
        fixture("c3 sixth shift", 6, &id(&c3), 1, Rat::new(1, 6), id(&c3)),
        fixture("a2 rho1 third shift", 6, &id(&a2), 1, Rat::new(1, 3), rho(&a2, "rho1")),
        fixture("c3 reflection", 2, &id(&c3), -1, Rat::zero(), id(&c3)),
        fixture("a2 mu-twisted reflection", 2, &mu, -1, Rat::zero(), id(&a2)),
    ];
    let pair = LoopInvariant::Second(SecondKindInvariant { pair: ["rho1".into(), "id".into()], k: 1 });
    out.push(OrderedFixture { name: "a3 [rho1, id]".into(), order: 2, phi: realize(&a3, &pair).expect("realizable") });
    out
}
