//! The triality automorphism of `so(8)`.
//!
//! Realized as the diagram automorphism cycling the simple roots `α₁ → α₃ → α₄ → α₁`
//! relative to the maximal torus of rotation blocks on the coordinate pairs
//! `(1,2), (3,4), (5,6), (7,8)`. Chevalley generators are mapped to Chevalley
//! generators, which makes the map commute with the compact conjugation.

use std::sync::OnceLock;

use super::{orthogonal_det_sign, recover_inner};
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{make_algebra, Family, FieldMode, SimpleAlgebra};
use crate::rat::Rat;

fn vector(a: usize, sign: i64) -> Vec<CycloScalar> {
    let mut v = vec![CycloScalar::zero(); 8];
    v[2 * a] = CycloScalar::one();
    v[2 * a + 1] = CycloScalar::i().scale(&Rat::from_int(sign));
    v
}

fn wedge(u: &[CycloScalar], w: &[CycloScalar]) -> CycloMatrix {
    CycloMatrix::from_fn(8, 8, |i, j| &(&u[i] * &w[j]) - &(&w[i] * &u[j]))
}

/// Chevalley generators `e₁..e₄, f₁..f₄` with `[[e_k, f_k], e_k] = 2 e_k`.
fn chevalley(alg: &SimpleAlgebra) -> (Vec<CycloMatrix>, Vec<CycloMatrix>) {
    let e = vec![
        wedge(&vector(0, 1), &vector(1, -1)),
        wedge(&vector(1, 1), &vector(2, -1)),
        wedge(&vector(2, 1), &vector(3, -1)),
        wedge(&vector(2, 1), &vector(3, 1)),
    ];
    let f = e
        .iter()
        .map(|ek| {
            let fk = -&ek.conj();
            let h = alg.bracket(ek, &fk);
            let he = alg.bracket(&h, ek);
            // he = κ·e_k; rescale f_k so that κ becomes 2
            let (i, j) = (0..64).map(|t| (t / 8, t % 8)).find(|&(i, j)| !ek.get(i, j).is_zero()).unwrap();
            let kappa = he.get(i, j) / ek.get(i, j);
            fk.scale(&(&CycloScalar::from_int(2) / &kappa))
        })
        .collect();
    (e, f)
}

fn build() -> Result<Vec<CycloMatrix>> {
    let alg = make_algebra(Family::D, 4, FieldMode::Complex)?;
    let (e, f) = chevalley(&alg);
    let perm = [2usize, 1, 3, 0];
    let mut gens: Vec<(CycloMatrix, CycloMatrix)> = Vec::new();
    for k in 0..4 {
        gens.push((e[k].clone(), e[perm[k]].clone()));
        gens.push((f[k].clone(), f[perm[k]].clone()));
    }
    let dim = alg.dim();
    let mut words: Vec<(CycloMatrix, CycloMatrix)> = Vec::new();
    let mut coords: Vec<Vec<CycloScalar>> = Vec::new();
    let mut push = |w: (CycloMatrix, CycloMatrix), words: &mut Vec<(CycloMatrix, CycloMatrix)>| {
        let c = alg.coords_unchecked(&w.0);
        let mut trial = coords.clone();
        trial.push(c.clone());
        if CycloMatrix::from_columns(&trial).rank() > coords.len() {
            coords.push(c);
            words.push(w);
        }
    };
    for g in &gens {
        push(g.clone(), &mut words);
    }
    let mut start = 0;
    while words.len() < dim {
        let end = words.len();
        if start == end {
            return Err(Error::Unclassifiable("Chevalley generators do not span so(8)".into()));
        }
        for idx in start..end {
            for g in &gens {
                if words.len() == dim {
                    break;
                }
                let w = words[idx].clone();
                let cand = (alg.bracket(&g.0, &w.0), alg.bracket(&g.1, &w.1));
                if !cand.0.is_zero() {
                    push(cand, &mut words);
                }
            }
        }
        start = end;
    }
    let b = CycloMatrix::from_columns(&words.iter().map(|w| alg.coords_unchecked(&w.0)).collect::<Vec<_>>());
    let img = CycloMatrix::from_columns(&words.iter().map(|w| alg.coords_unchecked(&w.1)).collect::<Vec<_>>());
    let m = &img * &b.inverse()?;
    let m2 = &m * &m;
    if !(&m2 * &m).is_identity() {
        return Err(Error::Unclassifiable("triality does not have order three".into()));
    }
    Ok(vec![CycloMatrix::identity(dim), m, m2])
}

/// Coordinate matrices of `ϑ⁰, ϑ¹, ϑ²` on the basis of `so(8)`.
pub fn powers() -> &'static [CycloMatrix] {
    static CELL: OnceLock<Vec<CycloMatrix>> = OnceLock::new();
    CELL.get_or_init(|| build().expect("triality construction"))
}

/// `ϑ^j(X)`.
pub fn apply_power(alg: &SimpleAlgebra, x: &CycloMatrix, j: u8) -> Result<CycloMatrix> {
    let j = (j % 3) as usize;
    if j == 0 {
        return Ok(x.clone());
    }
    let c = alg.coords_unchecked(x);
    Ok(alg.element(&powers()[j].mul_vec(&c)))
}

/// Finds `(h, j')` with `ϑ^j ∘ Ad g = Ad h ∘ ϑ^{j'}`.
pub(crate) fn move_past(alg: &SimpleAlgebra, j: u8, g: &CycloMatrix) -> Result<(CycloMatrix, u8)> {
    let j = j % 3;
    let sign = orthogonal_det_sign(alg, g)?;
    let j1 = if sign < 0 { (3 - j) % 3 } else { j };
    let ginv = g.inverse()?;
    let back = (3 - j1) % 3;
    let h = recover_inner(alg, |y| {
        let inner = &(g * &apply_power(alg, y, back)?) * &ginv;
        apply_power(alg, &inner, j)
    })?;
    Ok((h, j1))
}
