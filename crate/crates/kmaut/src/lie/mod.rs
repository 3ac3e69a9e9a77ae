//! Matrix realizations of the classical simple Lie algebras and static
//! descriptors of the exceptional ones.

pub mod exceptional;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::rat::Rat;
pub use exceptional::ExceptionalData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "c" => Ok(Family::C),
            "d" => Ok(Family::D),
            "e6" => Ok(Family::E6),
            "e7" => Ok(Family::E7),
            "e8" => Ok(Family::E8),
            "f4" => Ok(Family::F4),
            "g2" => Ok(Family::G2),
            other => Err(Error::UnsupportedParam(format!("unknown family {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
            Family::D => "d",
            Family::E6 => "e6",
            Family::E7 => "e7",
            Family::E8 => "e8",
            Family::F4 => "f4",
            Family::G2 => "g2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Compact,
    Complex,
}

/// A simple Lie algebra: a matrix model for classical families, static data otherwise.
#[derive(Debug)]
pub struct SimpleAlgebra {
    pub family: Family,
    pub n: usize,
    pub mode: FieldMode,
    /// Size of the defining matrices (0 for exceptional families).
    pub matrix_size: usize,
    basis: Vec<CycloMatrix>,
    generators: Vec<CycloMatrix>,
    killing_const: Rat,
    /// Matrix `Ω` with `coords(ω(X)) = Ω · conj(coords(X))`.
    omega_coords: Option<CycloMatrix>,
    pub exceptional: Option<&'static ExceptionalData>,
}

impl PartialEq for SimpleAlgebra {
    fn eq(&self, o: &SimpleAlgebra) -> bool {
        self.family == o.family && self.n == o.n
    }
}

/// Descriptor used for serialization of algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub family: Family,
    pub n: usize,
    pub mode: FieldMode,
}

type AlgebraCache = RwLock<HashMap<(Family, usize, FieldMode), Arc<SimpleAlgebra>>>;

fn cache() -> &'static AlgebraCache {
    static CACHE: OnceLock<AlgebraCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Builds (or fetches from the cache) the algebra `family_n` in the given mode.
pub fn make_algebra(family: Family, n: usize, mode: FieldMode) -> Result<Arc<SimpleAlgebra>> {
    let n = if family.is_classical() { n } else { exceptional::data(family).map(|d| d.rank).unwrap_or(n) };
    let key = (family, n, mode);
    if let Some(a) = cache().read().unwrap().get(&key) {
        return Ok(a.clone());
    }
    let alg = Arc::new(SimpleAlgebra::build(family, n, mode)?);
    cache().write().unwrap().insert(key, alg.clone());
    Ok(alg)
}

impl SimpleAlgebra {
    fn build(family: Family, n: usize, mode: FieldMode) -> Result<SimpleAlgebra> {
        let min = match family {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            _ => 0,
        };
        if family.is_classical() && n < min {
            return Err(Error::UnsupportedParam(format!("{}_{n} requires n >= {min}", family.name())));
        }
        if family.is_classical() && n > 64 {
            return Err(Error::UnsupportedParam(format!("{}_{n} is too large", family.name())));
        }
        if !family.is_classical() {
            return Ok(SimpleAlgebra {
                family,
                n,
                mode,
                matrix_size: 0,
                basis: Vec::new(),
                generators: Vec::new(),
                killing_const: Rat::zero(),
                omega_coords: None,
                exceptional: exceptional::data(family),
            });
        }
        let (m, basis, generators, kc) = match family {
            Family::A => {
                let m = n + 1;
                (m, sl_basis(m), sl_generators(m), Rat::from_int(2 * m as i64))
            }
            Family::B | Family::D => {
                let m = if family == Family::B { 2 * n + 1 } else { 2 * n };
                (m, so_basis(m), so_generators(m), Rat::from_int(m as i64 - 2))
            }
            Family::C => (2 * n, sp_basis(n), sp_generators(n), Rat::from_int(2 * n as i64 + 2)),
            _ => unreachable!(),
        };
        let mut alg = SimpleAlgebra {
            family,
            n,
            mode,
            matrix_size: m,
            basis,
            generators,
            killing_const: kc,
            omega_coords: None,
            exceptional: None,
        };
        let dim = alg.basis.len();
        let mut cols = Vec::with_capacity(dim);
        for b in &alg.basis {
            cols.push(alg.coords(&alg.omega(b))?);
        }
        alg.omega_coords = Some(CycloMatrix::from_columns(&cols));
        Ok(alg)
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor { family: self.family, n: self.n, mode: self.mode }
    }

    pub fn is_classical(&self) -> bool {
        self.family.is_classical()
    }

    pub fn dim(&self) -> usize {
        match self.exceptional {
            Some(d) => d.dim,
            None => self.basis.len(),
        }
    }

    pub fn basis(&self) -> &[CycloMatrix] {
        &self.basis
    }

    /// A small set of elements generating the algebra under brackets.
    pub fn generators(&self) -> &[CycloMatrix] {
        &self.generators
    }

    pub fn killing_constant(&self) -> &Rat {
        &self.killing_const
    }

    /// Display label such as `a_3` or `e6`.
    pub fn label(&self) -> String {
        if self.is_classical() {
            format!("{}{}", self.family.name(), self.n)
        } else {
            self.family.name().to_string()
        }
    }

    /// True when `X ↦ −Xᵀ`-type constraints use the symplectic form.
    pub fn is_symplectic(&self) -> bool {
        self.family == Family::C
    }

    /// Coordinates of `x` in the basis; errors when `x` is not in the algebra.
    pub fn coords(&self, x: &CycloMatrix) -> Result<Vec<CycloScalar>> {
        self.require_classical()?;
        let m = self.matrix_size;
        if x.rows() != m || x.cols() != m {
            return Err(Error::NotInAlgebra("wrong matrix size".into()));
        }
        let c = self.coords_unchecked(x);
        if self.element(&c) != *x {
            return Err(Error::NotInAlgebra(format!("matrix is not in {}", self.label())));
        }
        Ok(c)
    }

    /// Coordinates read off from the matrix entries, assuming membership.
    pub fn coords_unchecked(&self, x: &CycloMatrix) -> Vec<CycloScalar> {
        let m = self.matrix_size;
        match self.family {
            Family::A => {
                let mut c = Vec::with_capacity(m * m - 1);
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            c.push(x.get(i, j).clone());
                        }
                    }
                }
                let mut acc = CycloScalar::zero();
                for k in 0..m - 1 {
                    acc = &acc + x.get(k, k);
                    c.push(acc.clone());
                }
                c
            }
            Family::B | Family::D => {
                let mut c = Vec::with_capacity(m * (m - 1) / 2);
                for i in 0..m {
                    for j in i + 1..m {
                        c.push(x.get(i, j).clone());
                    }
                }
                c
            }
            Family::C => {
                let n = self.n;
                let mut c = Vec::with_capacity(n * (2 * n + 1));
                for i in 0..n {
                    for j in 0..n {
                        c.push(x.get(i, j).clone());
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        c.push(x.get(i, n + j).clone());
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        c.push(x.get(n + i, j).clone());
                    }
                }
                c
            }
            _ => Vec::new(),
        }
    }

    /// The matrix `Σ c_k B_k`.
    pub fn element(&self, c: &[CycloScalar]) -> CycloMatrix {
        let m = self.matrix_size;
        let mut x = CycloMatrix::zeros(m, m);
        match self.family {
            Family::A => {
                let mut idx = 0;
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            x.set(i, j, c[idx].clone());
                            idx += 1;
                        }
                    }
                }
                for k in 0..m - 1 {
                    let h = &c[idx + k];
                    let v = x.get(k, k) + h;
                    x.set(k, k, v);
                    let w = x.get(k + 1, k + 1) - h;
                    x.set(k + 1, k + 1, w);
                }
            }
            Family::B | Family::D => {
                let mut idx = 0;
                for i in 0..m {
                    for j in i + 1..m {
                        x.set(i, j, c[idx].clone());
                        x.set(j, i, -&c[idx]);
                        idx += 1;
                    }
                }
            }
            Family::C => {
                let n = self.n;
                let mut idx = 0;
                for i in 0..n {
                    for j in 0..n {
                        x.set(i, j, c[idx].clone());
                        x.set(n + j, n + i, -&c[idx]);
                        idx += 1;
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        x.set(i, n + j, c[idx].clone());
                        x.set(j, n + i, c[idx].clone());
                        idx += 1;
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        x.set(n + i, j, c[idx].clone());
                        x.set(n + j, i, c[idx].clone());
                        idx += 1;
                    }
                }
            }
            _ => {}
        }
        x
    }

    pub fn contains(&self, x: &CycloMatrix) -> bool {
        self.coords(x).is_ok()
    }

    fn require_classical(&self) -> Result<()> {
        if self.is_classical() {
            Ok(())
        } else {
            Err(Error::UnsupportedExceptional)
        }
    }

    pub fn bracket(&self, x: &CycloMatrix, y: &CycloMatrix) -> CycloMatrix {
        x.commutator(y)
    }

    /// Killing form as the scaled trace form `c · tr(XY)`.
    pub fn killing(&self, x: &CycloMatrix, y: &CycloMatrix) -> CycloScalar {
        x.trace_product(y).scale(&self.killing_const)
    }

    /// The compact-form conjugation `ω`.
    pub fn omega(&self, x: &CycloMatrix) -> CycloMatrix {
        match self.family {
            Family::A | Family::C => -&x.conj_transpose(),
            _ => x.conj(),
        }
    }

    /// `ω` expressed on coordinates: `coords(ω X) = Ω · conj(coords X)`.
    pub fn omega_coords(&self) -> &CycloMatrix {
        self.omega_coords.as_ref().expect("classical algebra")
    }

    /// Matrix of `ad x` on basis coordinates.
    pub fn ad_matrix(&self, x: &CycloMatrix) -> CycloMatrix {
        let cols: Vec<Vec<CycloScalar>> =
            self.basis.iter().map(|b| self.coords_unchecked(&x.commutator(b))).collect();
        CycloMatrix::from_columns(&cols)
    }

    /// Killing form computed from structure constants, `tr(ad x ad y)`.
    pub fn killing_from_ad(&self, x: &CycloMatrix, y: &CycloMatrix) -> CycloScalar {
        self.ad_matrix(x).trace_product(&self.ad_matrix(y))
    }

    /// Basis of the compact real form `u = {X : ω(X) = X}` as complex matrices.
    pub fn compact_basis(&self) -> Vec<CycloMatrix> {
        let i = CycloScalar::i();
        let mut span: Vec<CycloMatrix> = Vec::new();
        let mut coords: Vec<Vec<CycloScalar>> = Vec::new();
        for b in &self.basis {
            for cand in [b + &self.omega(b), &b.scale(&i) + &self.omega(&b.scale(&i))] {
                if cand.is_zero() {
                    continue;
                }
                let c = self.coords_unchecked(&cand);
                let mut trial = coords.clone();
                trial.push(c.clone());
                if real_rank(&trial) > coords.len() {
                    coords.push(c);
                    span.push(cand);
                }
                if span.len() == self.dim() {
                    return span;
                }
            }
        }
        span
    }
}

/// Rank over R of complex coordinate vectors, computed via real and imaginary parts.
pub fn real_rank(vectors: &[Vec<CycloScalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let i = CycloScalar::i();
    let half = Rat::new(1, 2);
    let rows: Vec<Vec<CycloScalar>> = vectors
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(2 * v.len());
            for x in v {
                let re = (x + &x.conj()).scale(&half);
                let im = (&(x - &x.conj()) * &(-&i)).scale(&half);
                row.push(re);
                row.push(im);
            }
            row
        })
        .collect();
    CycloMatrix::from_rows(rows).expect("rectangular").rank()
}

fn sl_basis(m: usize) -> Vec<CycloMatrix> {
    let mut b = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                b.push(CycloMatrix::unit(m, i, j));
            }
        }
    }
    for k in 0..m - 1 {
        b.push(&CycloMatrix::unit(m, k, k) - &CycloMatrix::unit(m, k + 1, k + 1));
    }
    b
}

fn sl_generators(m: usize) -> Vec<CycloMatrix> {
    let mut g = Vec::new();
    for i in 0..m - 1 {
        g.push(CycloMatrix::unit(m, i, i + 1));
        g.push(CycloMatrix::unit(m, i + 1, i));
    }
    g
}

fn so_elem(m: usize, i: usize, j: usize) -> CycloMatrix {
    &CycloMatrix::unit(m, i, j) - &CycloMatrix::unit(m, j, i)
}

fn so_basis(m: usize) -> Vec<CycloMatrix> {
    let mut b = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            b.push(so_elem(m, i, j));
        }
    }
    b
}

fn so_generators(m: usize) -> Vec<CycloMatrix> {
    (0..m - 1).map(|i| so_elem(m, i, i + 1)).collect()
}

fn sp_basis(n: usize) -> Vec<CycloMatrix> {
    let m = 2 * n;
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            b.push(&CycloMatrix::unit(m, i, j) - &CycloMatrix::unit(m, n + j, n + i));
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.push(CycloMatrix::unit(m, i, n + i));
            } else {
                b.push(&CycloMatrix::unit(m, i, n + j) + &CycloMatrix::unit(m, j, n + i));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.push(CycloMatrix::unit(m, n + i, i));
            } else {
                b.push(&CycloMatrix::unit(m, n + i, j) + &CycloMatrix::unit(m, n + j, i));
            }
        }
    }
    b
}

fn sp_generators(n: usize) -> Vec<CycloMatrix> {
    let m = 2 * n;
    let mut g = Vec::new();
    for i in 0..n - 1 {
        g.push(&CycloMatrix::unit(m, i, i + 1) - &CycloMatrix::unit(m, n + i + 1, n + i));
        g.push(&CycloMatrix::unit(m, i + 1, i) - &CycloMatrix::unit(m, n + i, n + i + 1));
    }
    g.push(CycloMatrix::unit(m, n - 1, 2 * n - 1));
    g.push(CycloMatrix::unit(m, 2 * n - 1, n - 1));
    g
}

/// An element of a classical algebra in its defining representation.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub algebra: Arc<SimpleAlgebra>,
    pub matrix: CycloMatrix,
}

impl AlgebraElement {
    pub fn new(algebra: Arc<SimpleAlgebra>, matrix: CycloMatrix) -> Result<AlgebraElement> {
        algebra.coords(&matrix)?;
        Ok(AlgebraElement { algebra, matrix })
    }

    pub fn basis(algebra: &Arc<SimpleAlgebra>, k: usize) -> AlgebraElement {
        AlgebraElement { algebra: algebra.clone(), matrix: algebra.basis()[k].clone() }
    }

    fn check_same(&self, o: &AlgebraElement) -> Result<()> {
        if *self.algebra == *o.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn bracket(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(o)?;
        AlgebraElement::new(self.algebra.clone(), self.matrix.commutator(&o.matrix))
    }

    pub fn killing(&self, o: &AlgebraElement) -> Result<CycloScalar> {
        self.check_same(o)?;
        Ok(self.algebra.killing(&self.matrix, &o.matrix))
    }

    pub fn omega(&self) -> Result<AlgebraElement> {
        if !self.algebra.is_classical() {
            return Err(Error::Unsupported("compact conjugation of an exceptional algebra".into()));
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), matrix: self.algebra.omega(&self.matrix) })
    }

    pub fn coords(&self) -> Vec<CycloScalar> {
        self.algebra.coords_unchecked(&self.matrix)
    }
}

impl fmt::Display for SimpleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
        make_algebra(f, n, FieldMode::Complex).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> CycloMatrix {
        CycloMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(Family::A, 1).dim(), 3);
        assert_eq!(alg(Family::D, 4).dim(), 28);
        assert_eq!(alg(Family::B, 3).dim(), 21);
        assert_eq!(alg(Family::C, 3).dim(), 21);
        let e8 = make_algebra(Family::E8, 0, FieldMode::Compact).unwrap();
        assert_eq!(e8.dim(), 248);
        assert_eq!(e8.exceptional.unwrap().out_order, 1);
        assert!(matches!(make_algebra(Family::C, 2, FieldMode::Complex), Err(Error::UnsupportedParam(_))));
        assert!(matches!(make_algebra(Family::D, 3, FieldMode::Complex), Err(Error::UnsupportedParam(_))));
    }

    #[test]
    fn sl2_relations_and_killing() {
        let g = alg(Family::A, 1);
        let e = ints(&[&[0, 1], &[0, 0]]);
        let f = ints(&[&[0, 0], &[1, 0]]);
        let h = ints(&[&[1, 0], &[0, -1]]);
        assert_eq!(g.bracket(&e, &f), h);
        assert!(g.bracket(&e, &e).is_zero());
        assert_eq!(g.killing(&e, &f), CycloScalar::from_int(4));
        assert_eq!(g.killing(&h, &h), CycloScalar::from_int(8));
        assert_eq!(g.killing_from_ad(&e, &f), CycloScalar::from_int(4));
        assert_eq!(g.killing_from_ad(&h, &h), CycloScalar::from_int(8));
    }

    #[test]
    fn so4_bracket() {
        let g = make_algebra(Family::D, 4, FieldMode::Complex).unwrap();
        let x = so_elem(8, 0, 1);
        let y = so_elem(8, 1, 2);
        assert_eq!(g.bracket(&x, &y), so_elem(8, 0, 2));
    }

    #[test]
    fn killing_constants_match_structure_constants() {
        for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let g = alg(f, n);
            let b = g.basis();
            for (x, y) in [(0, 1), (1, 2), (0, b.len() - 1), (b.len() - 1, b.len() - 1), (2, 2)] {
                assert_eq!(g.killing(&b[x], &b[y]), g.killing_from_ad(&b[x], &b[y]), "{f:?}{n} ({x},{y})");
            }
        }
    }

    #[test]
    fn basis_constraints_and_coordinates() {
        for (f, n) in [(Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let g = alg(f, n);
            let m = g.matrix_size;
            let jmat = CycloMatrix::blocks(
                &CycloMatrix::zeros(m / 2, m / 2),
                &CycloMatrix::identity(m / 2),
                &-&CycloMatrix::identity(m / 2),
                &CycloMatrix::zeros(m / 2, m / 2),
            );
            for (k, b) in g.basis().iter().enumerate() {
                match f {
                    Family::A => assert!(b.trace().is_zero()),
                    Family::B | Family::D => assert_eq!(b.transpose(), -b),
                    Family::C => assert!((&(&b.transpose() * &jmat) + &(&jmat * b)).is_zero()),
                    _ => {}
                }
                let c = g.coords(b).unwrap();
                for (j, cj) in c.iter().enumerate() {
                    assert_eq!(cj.is_one(), j == k);
                    assert!(j == k || cj.is_zero());
                }
            }
            assert!(g.coords(&CycloMatrix::identity(m)).is_err());
        }
    }

    #[test]
    fn jacobi_on_basis_triples() {
        for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let g = alg(f, n);
            let b = g.basis();
            let d = b.len();
            for i in 0..d {
                for j in (i + 1)..d.min(i + 6) {
                    for k in (j + 1)..d.min(j + 6) {
                        let t1 = g.bracket(&b[i], &g.bracket(&b[j], &b[k]));
                        let t2 = g.bracket(&b[j], &g.bracket(&b[k], &b[i]));
                        let t3 = g.bracket(&b[k], &g.bracket(&b[i], &b[j]));
                        assert!((&(&t1 + &t2) + &t3).is_zero());
                        assert!(g.contains(&g.bracket(&b[i], &b[j])));
                    }
                }
            }
        }
    }

    #[test]
    fn compact_form_is_negative_definite_su3() {
        let g = alg(Family::A, 2);
        let u = g.compact_basis();
        assert_eq!(u.len(), 8);
        for x in &u {
            assert_eq!(g.omega(x), *x);
        }
        let gram = CycloMatrix::from_fn(8, 8, |i, j| g.killing(&u[i], &u[j]));
        // negative definite: all leading principal minors alternate in sign
        for k in 1..=8 {
            let idx: Vec<usize> = (0..k).collect();
            let det = gram.submatrix(&idx, &idx).det().unwrap();
            let sign = det.as_rat().unwrap().signum();
            assert_eq!(sign, if k % 2 == 0 { 1 } else { -1 }, "minor {k}");
        }
        let h = ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        assert_eq!(g.omega(&h.scale(&CycloScalar::i())), h.scale(&CycloScalar::i()));
    }

    #[test]
    fn generators_generate() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let g = alg(f, n);
            let mut span: Vec<CycloMatrix> = g.generators().to_vec();
            let mut frontier = span.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for x in &frontier {
                    for y in g.generators() {
                        let z = g.bracket(x, y);
                        let mut cand: Vec<Vec<CycloScalar>> = span.iter().map(|s| g.coords_unchecked(s)).collect();
                        cand.push(g.coords_unchecked(&z));
                        if CycloMatrix::from_rows(cand).unwrap().rank() > span.len() {
                            span.push(z.clone());
                            next.push(z);
                        }
                    }
                }
                frontier = next;
            }
            assert_eq!(span.len(), g.dim(), "{f:?}{n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn killing_is_ad_invariant(seed in prop::collection::vec(-3i64..4, 45)) {
            let g = alg(Family::C, 3);
            let d = g.dim();
            let mk = |off: usize| -> CycloMatrix {
                let c: Vec<CycloScalar> = (0..d).map(|k| CycloScalar::from_int(seed[(k * 7 + off) % seed.len()])).collect();
                g.element(&c)
            };
            let (x, y, z) = (mk(0), mk(3), mk(11));
            prop_assert_eq!(g.killing(&g.bracket(&x, &y), &z), g.killing(&x, &g.bracket(&y, &z)));
            let w = x.scale(&CycloScalar::i());
            prop_assert_eq!(g.omega(&g.bracket(&w, &y)), g.bracket(&g.omega(&w), &g.omega(&y)));
        }
    }
}
