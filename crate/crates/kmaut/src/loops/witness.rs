//! Exact check that the derived algebra of the affine algebra is `L(g, σ) ⊕ Fc`
//! on a truncated degree window.

use std::sync::Arc;

use serde::Serialize;

use super::{AffineElement, LoopElement, LoopSpace};
use crate::cyclo::{CycloScalar, SpanBuilder};
use crate::error::{Error, Result};

/// Span data for one degree `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeWitness {
    pub degree: i64,
    /// `dim g_n`, plus one for `c` when `n = 0`.
    pub target_dim: usize,
    pub spanned_dim: usize,
    pub brackets_used: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedWitness {
    pub window: i64,
    pub degrees: Vec<DegreeWitness>,
    pub central_in_span: bool,
    pub derivation_in_span: bool,
}

impl DerivedWitness {
    pub fn passed(&self) -> bool {
        self.central_in_span && !self.derivation_in_span && self.degrees.iter().all(|d| d.spanned_dim == d.target_dim)
    }
}

/// Spans brackets `[x z^a, y z^{n−a}]` of window elements (`|a|, |n−a| ≤ N`) degree by degree
/// and compares with `g_n ⊕ δ_{n0} Fc` for every `|n| ≤ N/2`.
pub fn derived_algebra_witness(space: &Arc<LoopSpace>, window: i64) -> Result<DerivedWitness> {
    let l = space.conductor() as i64;
    if window < 2 * l {
        return Err(Error::WindowTooSmall(format!("window {window} is smaller than 2l = {}", 2 * l)));
    }
    let alg = space.algebra().clone();
    let dim = alg.dim();
    let mut degrees = Vec::new();
    let mut central_in_span = false;
    let mut derivation_in_span = false;
    for n in -(window / 2)..=window / 2 {
        let target = space.eigen_dim(n) + usize::from(n == 0);
        // coordinates: dim algebra coordinates, then c, then d
        let mut span = SpanBuilder::new(dim + 2);
        let mut used = 0;
        'outer: for a in (n - window).max(-window)..=(n + window).min(window) {
            for x in space.eigenbasis(a) {
                for y in space.eigenbasis(n - a) {
                    if span.dim() == target {
                        break 'outer;
                    }
                    let u = AffineElement::from_loop(LoopElement::from_parts_unchecked(space, [(a, x.clone())].into()));
                    let v = AffineElement::from_loop(LoopElement::from_parts_unchecked(
                        space,
                        [(n - a, y.clone())].into(),
                    ));
                    let w = u.bracket(&v)?;
                    let mut coords = alg.coords_unchecked(&w.loop_part.coeff(n));
                    coords.push(w.c.clone());
                    coords.push(w.d.clone());
                    used += 1;
                    span.insert(&coords);
                }
            }
        }
        if n == 0 {
            let mut c = vec![CycloScalar::zero(); dim + 2];
            c[dim] = CycloScalar::one();
            central_in_span = span.contains(&c);
            let mut d = vec![CycloScalar::zero(); dim + 2];
            d[dim + 1] = CycloScalar::one();
            derivation_in_span = span.contains(&d);
        }
        degrees.push(DegreeWitness { degree: n, target_dim: target, spanned_dim: span.dim(), brackets_used: used });
    }
    Ok(DerivedWitness { window, degrees, central_in_span, derivation_in_span })
}
