//! Finite-order automorphisms of simple Lie algebras.
//!
//! A classical automorphism is stored as `X ↦ G · θ^j(ω^c(X)) · G⁻¹` where `G` is a
//! projective group matrix, `θ^j` is a power of the fixed outer generator of the
//! family (`X ↦ −Xᵀ` for `sl(m)`, `m ≥ 3`, and triality for `so(8)`) and `ω` is the
//! compact-form conjugation. Exceptional automorphisms carry a label only.

pub mod classify;
pub mod named;
pub mod random;
pub mod triality;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{make_algebra, AlgebraDescriptor, Family, SimpleAlgebra};

pub use classify::{component_signature, involution_int_class, pi0_table, ComponentClass, InvolutionIntClass, Pi0Entry};
pub use named::{int_class_labels, named_automorphism, out_class_label, standard_involution, standard_labels};

/// An element `x^s y^j` of `Aut g / Int g`, with `x² = y³ = 1` and `y x = x y⁻¹`.
///
/// Only `so(8)` uses `j ≠ 0`; every other family has `Out ⊆ Z₂` and `j = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OutElement {
    pub s: u8,
    pub j: u8,
}

impl OutElement {
    pub const IDENTITY: OutElement = OutElement { s: 0, j: 0 };

    pub fn new(s: u8, j: u8) -> OutElement {
        OutElement { s: s % 2, j: j % 3 }
    }

    pub fn mul(self, o: OutElement) -> OutElement {
        let j1 = if o.s == 1 { (3 - self.j) % 3 } else { self.j };
        OutElement::new(self.s + o.s, j1 + o.j)
    }

    pub fn inverse(self) -> OutElement {
        if self.s == 1 {
            self
        } else {
            OutElement::new(0, 3 - self.j)
        }
    }

    pub fn pow(self, k: i64) -> OutElement {
        let base = if k < 0 { self.inverse() } else { self };
        let mut acc = OutElement::IDENTITY;
        for _ in 0..k.unsigned_abs() % 6 {
            acc = acc.mul(base);
        }
        acc
    }

    pub fn is_identity(self) -> bool {
        self == OutElement::IDENTITY
    }

    pub fn order(self) -> u32 {
        if self.s == 1 {
            2
        } else if self.j != 0 {
            3
        } else {
            1
        }
    }

    /// Canonical representative of the conjugacy class in `Out`.
    pub fn class_rep(self) -> OutElement {
        if self.s == 1 {
            OutElement::new(1, 0)
        } else if self.j != 0 {
            OutElement::new(0, 1)
        } else {
            OutElement::IDENTITY
        }
    }
}

impl fmt::Display for OutElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.s, self.j) {
            (0, 0) => write!(f, "1"),
            (1, 0) => write!(f, "x"),
            (0, j) => write!(f, "y^{j}"),
            (_, j) => write!(f, "x*y^{j}"),
        }
    }
}

/// A (possibly conjugate-linear) automorphism of a simple Lie algebra.
#[derive(Clone, Debug)]
pub struct Automorphism {
    algebra: Arc<SimpleAlgebra>,
    outer_power: u8,
    matrix: CycloMatrix,
    inverse: CycloMatrix,
    conj_linear: bool,
    label: Option<String>,
}

/// Number of distinct powers of the stored outer generator.
fn outer_period(alg: &SimpleAlgebra) -> u8 {
    match alg.family {
        Family::A if alg.matrix_size >= 3 => 2,
        Family::D if alg.n == 4 => 3,
        _ => 1,
    }
}

pub(crate) fn is_so8(alg: &SimpleAlgebra) -> bool {
    alg.family == Family::D && alg.n == 4
}

/// Scales a nonzero matrix so that its first nonzero entry (row-major) equals 1.
fn normalize_projective(g: &CycloMatrix) -> Result<CycloMatrix> {
    let lead = g.entries().iter().find(|x| !x.is_zero()).ok_or(Error::Singular)?;
    if lead.is_one() {
        return Ok(g.clone());
    }
    Ok(g.scale(&lead.checked_inv()?))
}

/// The multiplier `λ` with `GᵀG = λE` (orthogonal) or `GᵀJG = λJ` (symplectic);
/// `det G` for `sl`. Errors when `G` is not in the projective group of the family.
pub(crate) fn group_multiplier(alg: &SimpleAlgebra, g: &CycloMatrix) -> Result<CycloScalar> {
    let m = alg.matrix_size;
    if g.rows() != m || g.cols() != m {
        return Err(Error::DimensionMismatch(format!("group matrix must be {m}x{m}")));
    }
    match alg.family {
        Family::A => {
            let d = g.det()?;
            if d.is_zero() {
                return Err(Error::Singular);
            }
            Ok(d)
        }
        Family::B | Family::D => {
            let p = &g.transpose() * g;
            let lam = p.get(0, 0).clone();
            if lam.is_zero() || p != CycloMatrix::scalar(m, &lam) {
                return Err(Error::UnsupportedParam("matrix is not a multiple of an orthogonal matrix".into()));
            }
            Ok(lam)
        }
        Family::C => {
            let j = named::j_matrix(m);
            let p = &(&g.transpose() * &j) * g;
            let lam = p.get(0, alg.n).clone();
            if lam.is_zero() || p != j.scale(&lam) {
                return Err(Error::UnsupportedParam("matrix is not a multiple of a symplectic matrix".into()));
            }
            Ok(lam)
        }
        _ => Err(Error::UnsupportedExceptional),
    }
}

/// `det G / λ^{m/2}` for an orthogonal-type matrix of even size; equals `±1`.
pub(crate) fn orthogonal_det_sign(alg: &SimpleAlgebra, g: &CycloMatrix) -> Result<i32> {
    let lam = group_multiplier(alg, g)?;
    let m = alg.matrix_size;
    let d = g.det()?;
    let v = if m % 2 == 0 {
        &d * &lam.pow(-(m as i64 / 2))
    } else {
        // odd size: det G = ±λ^{(m-1)/2}·κ with κ² = λ; compare squares
        let r = &(&d * &d) * &lam.pow(-(m as i64));
        return if r.is_one() { Ok(1) } else { Err(Error::Unclassifiable("determinant normalization".into())) };
    };
    if v.is_one() {
        Ok(1)
    } else if (-&v).is_one() {
        Ok(-1)
    } else {
        Err(Error::Unclassifiable("determinant is not a sign after normalization".into()))
    }
}

/// The compact conjugation moved past an inner automorphism: `ω ∘ Ad G = Ad G' ∘ ω`.
fn omega_group(alg: &SimpleAlgebra, g: &CycloMatrix) -> Result<CycloMatrix> {
    match alg.family {
        Family::A | Family::C => Ok(g.conj().inverse()?.transpose()),
        _ => Ok(g.conj()),
    }
}

impl Automorphism {
    /// Builds `X ↦ G·θ^j(ω^c(X))·G⁻¹` after validating the group constraint.
    pub fn new(
        algebra: Arc<SimpleAlgebra>,
        outer_power: u8,
        matrix: CycloMatrix,
        conj_linear: bool,
    ) -> Result<Automorphism> {
        if !algebra.is_classical() {
            return Err(Error::UnsupportedExceptional);
        }
        let mut g = matrix;
        let mut j = outer_power;
        if algebra.family == Family::A && algebra.matrix_size == 2 && j % 2 == 1 {
            // on sl(2) the transpose map is inner: −Xᵀ = J X J⁻¹
            g = &g * &named::j_matrix(2);
            j = 0;
        }
        let period = outer_period(&algebra);
        if period == 1 && j != 0 {
            return Err(Error::UnsupportedParam(format!("{} has no outer generator", algebra.label())));
        }
        let j = j % period;
        group_multiplier(&algebra, &g)?;
        let g = normalize_projective(&g)?;
        let inverse = g.inverse()?;
        Ok(Automorphism { algebra, outer_power: j, matrix: g, inverse, conj_linear, label: None })
    }

    pub fn inner(algebra: &Arc<SimpleAlgebra>, g: CycloMatrix) -> Result<Automorphism> {
        Automorphism::new(algebra.clone(), 0, g, false)
    }

    pub fn identity(algebra: &Arc<SimpleAlgebra>) -> Automorphism {
        if !algebra.is_classical() {
            return Automorphism::static_label(algebra, "id").expect("identity label");
        }
        let m = algebra.matrix_size;
        Automorphism {
            algebra: algebra.clone(),
            outer_power: 0,
            matrix: CycloMatrix::identity(m),
            inverse: CycloMatrix::identity(m),
            conj_linear: false,
            label: Some("id".into()),
        }
    }

    /// The `j`-th power of the fixed outer generator (`θ` or triality).
    pub fn outer_generator(algebra: &Arc<SimpleAlgebra>, j: i64) -> Result<Automorphism> {
        let period = outer_period(algebra) as i64;
        let m = algebra.matrix_size;
        Automorphism::new(algebra.clone(), j.rem_euclid(period) as u8, CycloMatrix::identity(m), false)
    }

    /// The compact-form conjugation `ω`.
    pub fn omega(algebra: &Arc<SimpleAlgebra>) -> Result<Automorphism> {
        let m = algebra.matrix_size;
        Ok(Automorphism::new(algebra.clone(), 0, CycloMatrix::identity(m), true)?.with_label("omega"))
    }

    /// A matrix-free automorphism of an exceptional algebra known by its label.
    pub fn static_label(algebra: &Arc<SimpleAlgebra>, label: &str) -> Result<Automorphism> {
        let data = algebra.exceptional.ok_or_else(|| Error::InvalidLabel(label.into()))?;
        let mut outer = false;
        for factor in label.split('*') {
            let known = factor == "id"
                || data.involutions.iter().any(|(l, _)| *l == factor)
                || data.table1.iter().any(|r| r.reps.iter().any(|(l, _)| *l == factor));
            if !known {
                return Err(Error::InvalidLabel(label.into()));
            }
            outer ^= data.is_outer(factor).unwrap_or(false);
        }
        Ok(Automorphism {
            algebra: algebra.clone(),
            outer_power: outer as u8,
            matrix: CycloMatrix::zeros(0, 0),
            inverse: CycloMatrix::zeros(0, 0),
            conj_linear: false,
            label: Some(label.into()),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Automorphism {
        self.label = Some(label.into());
        self
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        &self.algebra
    }

    pub fn outer_power(&self) -> u8 {
        self.outer_power
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    pub fn conj_linear(&self) -> bool {
        self.conj_linear
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_static(&self) -> bool {
        !self.algebra.is_classical()
    }

    pub fn is_identity(&self) -> bool {
        if self.is_static() {
            return self.label.as_deref() == Some("id");
        }
        !self.conj_linear && self.outer_power == 0 && self.matrix.is_identity()
    }

    /// The image of a matrix of the algebra.
    pub fn apply(&self, x: &CycloMatrix) -> Result<CycloMatrix> {
        if self.is_static() {
            return Err(Error::StaticOnlyAlgebra);
        }
        let mut y = if self.conj_linear { self.algebra.omega(x) } else { x.clone() };
        if self.outer_power != 0 {
            y = if is_so8(&self.algebra) {
                triality::apply_power(&self.algebra, &y, self.outer_power)?
            } else {
                -&y.transpose()
            };
        }
        if self.matrix.is_identity() {
            return Ok(y);
        }
        Ok(&(&self.matrix * &y) * &self.inverse)
    }

    fn check_same(&self, o: &Automorphism) -> Result<()> {
        if *self.algebra != *o.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// The composition `self ∘ o`.
    pub fn compose(&self, o: &Automorphism) -> Result<Automorphism> {
        self.check_same(o)?;
        if self.is_identity() {
            return Ok(o.clone());
        }
        if o.is_identity() {
            return Ok(self.clone());
        }
        if self.is_static() {
            let a = self.label.as_deref().unwrap_or("id");
            let b = o.label.as_deref().unwrap_or("id");
            return Automorphism::static_label(&self.algebra, &format!("{a}*{b}"));
        }
        let alg = &self.algebra;
        let g2 = if self.conj_linear { omega_group(alg, &o.matrix)? } else { o.matrix.clone() };
        let (g2, j) = if self.outer_power == 0 {
            (g2, o.outer_power)
        } else if is_so8(alg) {
            let (h, j1) = triality::move_past(alg, self.outer_power, &g2)?;
            (h, (j1 + o.outer_power) % 3)
        } else {
            (g2.inverse()?.transpose(), (self.outer_power + o.outer_power) % 2)
        };
        Automorphism::new(alg.clone(), j, &self.matrix * &g2, self.conj_linear ^ o.conj_linear)
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        if self.is_static() {
            return Ok(self.clone());
        }
        let alg = &self.algebra;
        let ginv = Automorphism::inner(alg, self.inverse.clone())?;
        let outer = Automorphism::outer_generator(alg, -(self.outer_power as i64))?;
        let mut inv = outer.compose(&ginv)?;
        if self.conj_linear {
            inv = Automorphism::omega(alg)?.compose(&inv)?;
        }
        Ok(inv)
    }

    pub fn pow(&self, k: i64) -> Result<Automorphism> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Automorphism::identity(&self.algebra);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `α ∘ self ∘ α⁻¹`.
    pub fn conjugate_by(&self, alpha: &Automorphism) -> Result<Automorphism> {
        alpha.compose(self)?.compose(&alpha.inverse()?)
    }

    pub fn commutes_with(&self, o: &Automorphism) -> Result<bool> {
        Ok(self.compose(o)? == o.compose(self)?)
    }

    /// Least `q ≤ bound` with `φ^q = id`.
    pub fn order(&self, bound: u64) -> Result<u64> {
        let mut acc = self.clone();
        for q in 1..=bound {
            if acc.is_identity() {
                return Ok(q);
            }
            acc = acc.compose(self)?;
        }
        Err(Error::OrderExceedsBound(bound))
    }

    /// Class of the linear part in `Aut g / Int g`.
    pub fn out_class(&self) -> OutElement {
        let alg = &self.algebra;
        match alg.family {
            Family::A => OutElement::new(self.outer_power, 0),
            Family::D => {
                let s = orthogonal_det_sign(alg, &self.matrix).map(|v| (v < 0) as u8).unwrap_or(0);
                OutElement::new(s, if alg.n == 4 { self.outer_power } else { 0 })
            }
            Family::E6 => OutElement::new(self.outer_power, 0),
            _ => OutElement::IDENTITY,
        }
    }

    pub fn is_inner(&self) -> bool {
        self.out_class().is_identity()
    }

    /// Matrix `M` with `coords(φ(X)) = M · coords(X)` (conjugated coordinates when conjugate-linear).
    pub fn coordinate_matrix(&self) -> Result<CycloMatrix> {
        let mut cols = Vec::with_capacity(self.algebra.dim());
        for b in self.algebra.basis() {
            cols.push(self.algebra.coords_unchecked(&self.apply(b)?));
        }
        Ok(CycloMatrix::from_columns(&cols))
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.algebra.descriptor()
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, o: &Automorphism) -> bool {
        if *self.algebra != *o.algebra {
            return false;
        }
        if self.is_static() {
            return self.label == o.label;
        }
        self.conj_linear == o.conj_linear && self.outer_power == o.outer_power && self.matrix == o.matrix
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            return write!(f, "{l}");
        }
        write!(f, "Ad({})", self.matrix)?;
        if self.outer_power != 0 {
            write!(f, "*outer^{}", self.outer_power)?;
        }
        if self.conj_linear {
            write!(f, "*omega")?;
        }
        Ok(())
    }
}

/// Solves `G·X_k = f(X_k)·G` on the generators for an automorphism `f` known to be inner.
pub(crate) fn recover_inner(alg: &SimpleAlgebra, f: impl Fn(&CycloMatrix) -> Result<CycloMatrix>) -> Result<CycloMatrix> {
    let m = alg.matrix_size;
    let gens = alg.generators();
    let mut rows: Vec<Vec<CycloScalar>> = Vec::new();
    for x in gens {
        let y = f(x)?;
        for a in 0..m {
            for b in 0..m {
                let mut row = vec![CycloScalar::zero(); m * m];
                for c in 0..m {
                    let xc = x.get(c, b);
                    if !xc.is_zero() {
                        row[a * m + c] += xc;
                    }
                    let yc = y.get(a, c);
                    if !yc.is_zero() {
                        row[c * m + b] -= yc;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = CycloMatrix::from_rows(rows)?;
    let ker = sys.kernel();
    if ker.len() != 1 {
        return Err(Error::Unclassifiable(format!("expected a one-dimensional solution space, got {}", ker.len())));
    }
    let g = CycloMatrix::new(m, m, ker[0].clone())?;
    normalize_projective(&g)
}

#[derive(Serialize, Deserialize)]
struct AutomorphismJson {
    algebra: AlgebraDescriptor,
    outer_power: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<CycloMatrix>,
    conj_linear: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AutomorphismJson {
            algebra: self.algebra.descriptor(),
            outer_power: self.outer_power,
            matrix: if self.is_static() { None } else { Some(self.matrix.clone()) },
            conj_linear: self.conj_linear,
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = AutomorphismJson::deserialize(d)?;
        let alg = make_algebra(j.algebra.family, j.algebra.n, j.algebra.mode).map_err(D::Error::custom)?;
        if !alg.is_classical() {
            let label = j.label.ok_or_else(|| D::Error::custom("exceptional automorphisms need a label"))?;
            return Automorphism::static_label(&alg, &label).map_err(D::Error::custom);
        }
        let m = j.matrix.ok_or_else(|| D::Error::custom("missing group matrix"))?;
        let mut a = Automorphism::new(alg, j.outer_power, m, j.conj_linear).map_err(D::Error::custom)?;
        a.label = j.label;
        Ok(a)
    }
}

#[cfg(test)]
mod tests;
