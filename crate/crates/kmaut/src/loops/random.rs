//! Random window-bounded loops with small Gaussian-integer coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::{AffineElement, LoopElement, LoopSpace};
use crate::cyclo::{CycloMatrix, CycloScalar};

fn gaussian<R: Rng>(rng: &mut R, real_only: bool) -> CycloScalar {
    let a = CycloScalar::from_int(rng.gen_range(-2..=2));
    if real_only {
        return a;
    }
    let b = CycloScalar::from_int(rng.gen_range(-2..=2));
    &a + &(&b * &CycloScalar::i())
}

fn random_in_eigenspace<R: Rng>(space: &LoopSpace, n: i64, rng: &mut R) -> CycloMatrix {
    let m = space.algebra().matrix_size;
    let mut x = CycloMatrix::zeros(m, m);
    for b in space.eigenbasis(n) {
        if rng.gen_bool(0.6) {
            x = &x + &b.scale(&gaussian(rng, false));
        }
    }
    x
}

/// A random loop supported in `[−window, window]`.
///
/// In compact mode the coefficients satisfy `u_{−n} = ω(u_n)`.
pub fn random_loop<R: Rng>(space: &Arc<LoopSpace>, window: i64, rng: &mut R) -> LoopElement {
    let alg = space.algebra().clone();
    let mut coeffs = BTreeMap::new();
    if space.is_compact() {
        for n in 0..=window {
            let x = random_in_eigenspace(space, n, rng);
            if n == 0 {
                coeffs.insert(0, &x + &alg.omega(&x));
            } else {
                coeffs.insert(-n, alg.omega(&x));
                coeffs.insert(n, x);
            }
        }
    } else {
        for n in -window..=window {
            coeffs.insert(n, random_in_eigenspace(space, n, rng));
        }
    }
    LoopElement::from_parts_unchecked(space, coeffs)
}

/// A random affine element with a random loop part and small `c`, `d` coordinates.
pub fn random_affine<R: Rng>(space: &Arc<LoopSpace>, window: i64, rng: &mut R) -> AffineElement {
    let u = random_loop(space, window, rng);
    let real = space.is_compact();
    AffineElement::new(u, gaussian(rng, real), gaussian(rng, real))
}
