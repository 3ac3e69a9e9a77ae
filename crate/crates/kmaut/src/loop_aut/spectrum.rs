//! Spectral data of an element `X` with `ad X` semisimple and eigenvalues in `iQ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::turn;
use crate::cyclo::{CycloMatrix, CycloScalar, ImaginaryDiagonalization};
use crate::error::{Error, Result};
use crate::rat::{lcm, Rat};

/// `X = Σ iλ Π_λ` with spectral projectors `Π_λ` in the defining representation.
#[derive(Debug)]
pub(crate) struct Spectrum {
    diag: ImaginaryDiagonalization,
    projectors: Vec<(Rat, CycloMatrix)>,
}

impl Spectrum {
    pub(crate) fn of(x: &CycloMatrix) -> Result<Option<Arc<Spectrum>>> {
        if x.is_zero() {
            return Ok(None);
        }
        let diag = x.diagonalize_imaginary()?;
        let mut distinct: Vec<Rat> = diag.eigen.clone();
        distinct.sort();
        distinct.dedup();
        let projectors = distinct
            .into_iter()
            .map(|lam| {
                let p = diag.apply_function(|mu| if *mu == lam { CycloScalar::one() } else { CycloScalar::zero() });
                (lam, p)
            })
            .collect();
        Ok(Some(Arc::new(Spectrum { diag, projectors })))
    }

    /// `exp(2π s X) = P diag(e^{2πi s λ_j}) P⁻¹`.
    pub(crate) fn exp(&self, s: &Rat) -> Result<CycloMatrix> {
        let mut vals = Vec::with_capacity(self.diag.eigen.len());
        for lam in &self.diag.eigen {
            vals.push(turn(&(s * lam))?);
        }
        Ok(&(&self.diag.p * &CycloMatrix::diagonal(&vals)) * &self.diag.p_inv)
    }

    /// The order of `Ad exp(2πX)`: the common denominator of the eigenvalue differences.
    pub(crate) fn exp_order(&self) -> u64 {
        self.difference_denominator()
    }

    pub(crate) fn difference_denominator(&self) -> u64 {
        let mut d = 1u64;
        for (a, _) in &self.projectors {
            for (b, _) in &self.projectors {
                let diff = a - b;
                d = lcm(d, diff.denom().try_into().unwrap_or(u64::MAX));
            }
        }
        d
    }

    /// `Σ r^{λ − λ_min} Π_λ`, the group element with `Ad = e^{−i ln r · ad X}`.
    pub(crate) fn real_power(&self, r: &Rat) -> Result<CycloMatrix> {
        let lmin = self.projectors[0].0.clone();
        let m = self.projectors[0].1.rows();
        let mut g = CycloMatrix::zeros(m, m);
        for (lam, p) in &self.projectors {
            let e = lam - &lmin;
            let num: i32 = e
                .numer()
                .try_into()
                .map_err(|_| Error::UnsupportedParam("eigenvalue too large".into()))?;
            let den: u32 = e
                .denom()
                .try_into()
                .map_err(|_| Error::UnsupportedParam("eigenvalue denominator too large".into()))?;
            let f = r
                .pow(num)
                .nth_root_exact(den)
                .ok_or_else(|| Error::UnsupportedParam(format!("({r})^({e}) is not rational")))?;
            g = &g + &p.scale_rat(&f);
        }
        Ok(g)
    }

    /// The decomposition `y = Σ_δ y_δ` with `[X, y_δ] = iδ y_δ`.
    pub(crate) fn components(&self, y: &CycloMatrix) -> Vec<(Rat, CycloMatrix)> {
        let left: Vec<CycloMatrix> = self.projectors.iter().map(|(_, p)| p * y).collect();
        let mut out: BTreeMap<Rat, CycloMatrix> = BTreeMap::new();
        for (i, (a, _)) in self.projectors.iter().enumerate() {
            for (b, pb) in &self.projectors {
                let c = &left[i] * pb;
                if c.is_zero() {
                    continue;
                }
                let d = a - b;
                let v = match out.remove(&d) {
                    Some(w) => &w + &c,
                    None => c,
                };
                out.insert(d, v);
            }
        }
        out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}
