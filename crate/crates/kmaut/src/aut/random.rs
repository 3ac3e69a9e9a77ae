//! Random elements of the classical groups with exact entries, used to conjugate
//! automorphisms in invariance tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Automorphism;
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::Result;
use crate::lie::{Family, SimpleAlgebra};

fn small_int<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=2);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn distinct<R: Rng>(rng: &mut R, m: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..m).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx
}

/// A random factor of `SL(m)`-type: elementary, transposition with a sign, or diagonal roots of unity.
fn sl_factor<R: Rng>(rng: &mut R, m: usize) -> CycloMatrix {
    match rng.gen_range(0..3) {
        0 => {
            let ij = distinct(rng, m, 2);
            let mut g = CycloMatrix::identity(m);
            g.set(ij[0], ij[1], CycloScalar::from_int(small_int(rng)));
            g
        }
        1 => {
            let ij = distinct(rng, m, 2);
            let mut g = CycloMatrix::identity(m);
            g.set(ij[0], ij[0], CycloScalar::zero());
            g.set(ij[1], ij[1], CycloScalar::zero());
            g.set(ij[0], ij[1], CycloScalar::one());
            g.set(ij[1], ij[0], CycloScalar::from_int(-1));
            g
        }
        _ => {
            let d: Vec<CycloScalar> = (0..m).map(|_| CycloScalar::root_of_unity(4, rng.gen_range(0..4))).collect();
            CycloMatrix::diagonal(&d)
        }
    }
}

/// A random factor of `SO(m)`: unipotent isotropic exponential, rational rotation or signed swap.
fn so_factor<R: Rng>(rng: &mut R, m: usize) -> CycloMatrix {
    let choice = if m >= 4 { rng.gen_range(0..3) } else { rng.gen_range(1..3) };
    let mut g = CycloMatrix::identity(m);
    match choice {
        0 => {
            let ix = distinct(rng, m, 4);
            let mut u = vec![CycloScalar::zero(); m];
            let mut w = vec![CycloScalar::zero(); m];
            u[ix[0]] = CycloScalar::one();
            u[ix[1]] = CycloScalar::i();
            w[ix[2]] = CycloScalar::one();
            w[ix[3]] = CycloScalar::i();
            let t = CycloScalar::from_int(small_int(rng));
            let n = CycloMatrix::from_fn(m, m, |a, b| &t * &(&(&u[a] * &w[b]) - &(&w[a] * &u[b])));
            g = &g + &n;
        }
        1 => {
            let ab = distinct(rng, m, 2);
            let (c, s) = (CycloScalar::frac(3, 5), CycloScalar::frac(4, 5));
            g.set(ab[0], ab[0], c.clone());
            g.set(ab[1], ab[1], c);
            g.set(ab[0], ab[1], -&s);
            g.set(ab[1], ab[0], s);
        }
        _ => {
            let ab = distinct(rng, m, 2);
            g.set(ab[0], ab[0], CycloScalar::zero());
            g.set(ab[1], ab[1], CycloScalar::zero());
            g.set(ab[0], ab[1], CycloScalar::one());
            g.set(ab[1], ab[0], CycloScalar::from_int(-1));
        }
    }
    g
}

/// A random factor of `Sp(2N)` for the form `[[0, E], [−E, 0]]`.
fn sp_factor<R: Rng>(rng: &mut R, n: usize) -> CycloMatrix {
    let e = CycloMatrix::identity(n);
    let z = CycloMatrix::zeros(n, n);
    match rng.gen_range(0..3) {
        0 | 1 => {
            let ij = distinct(rng, n, 2);
            let t = CycloScalar::from_int(small_int(rng));
            let mut b = CycloMatrix::zeros(n, n);
            if rng.gen_bool(0.5) {
                b.set(ij[0], ij[0], t);
            } else {
                b.set(ij[0], ij[1], t.clone());
                b.set(ij[1], ij[0], t);
            }
            if rng.gen_bool(0.5) {
                CycloMatrix::blocks(&e, &b, &z, &e)
            } else {
                CycloMatrix::blocks(&e, &z, &b, &e)
            }
        }
        _ => {
            let a = sl_factor(rng, n);
            let a_inv_t = a.inverse().expect("invertible factor").transpose();
            CycloMatrix::block_diag(&a, &a_inv_t)
        }
    }
}

/// A product of a few random group factors for the family of `alg`.
pub fn random_group_element<R: Rng>(alg: &SimpleAlgebra, rng: &mut R) -> CycloMatrix {
    let m = alg.matrix_size;
    let mut g = CycloMatrix::identity(m);
    for _ in 0..3 {
        let f = match alg.family {
            Family::A => sl_factor(rng, m),
            Family::B | Family::D => so_factor(rng, m),
            Family::C => sp_factor(rng, alg.n),
            _ => return g,
        };
        g = &g * &f;
    }
    g
}

/// A random inner automorphism.
pub fn random_inner<R: Rng>(alg: &Arc<SimpleAlgebra>, rng: &mut R) -> Result<Automorphism> {
    if !alg.is_classical() {
        return Ok(Automorphism::identity(alg));
    }
    Automorphism::inner(alg, random_group_element(alg, rng))
}

/// A random automorphism: a random inner one composed with a random outer class.
pub fn random_automorphism<R: Rng>(alg: &Arc<SimpleAlgebra>, rng: &mut R) -> Result<Automorphism> {
    let inner = random_inner(alg, rng)?;
    let gens = super::named::out_generators(alg)?;
    let mut acc = inner;
    for g in gens {
        let e = rng.gen_range(0..3i64);
        acc = acc.compose(&g.pow(e)?)?;
    }
    Ok(acc)
}
