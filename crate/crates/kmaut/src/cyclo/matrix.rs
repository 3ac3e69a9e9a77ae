//! Dense matrices over cyclotomic fields and exact linear algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::CycloScalar;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A dense `rows × cols` matrix of cyclotomic scalars, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

/// Result of a row reduction: the reduced matrix and its pivot columns.
pub struct RowEchelon {
    pub matrix: CycloMatrix,
    pub pivots: Vec<usize>,
}

impl CycloMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<CycloScalar>) -> Result<CycloMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{rows}x{cols} matrix needs {} entries", rows * cols)));
        }
        Ok(CycloMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> CycloMatrix {
        CycloMatrix { rows, cols, data: vec![CycloScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> CycloMatrix {
        let mut m = CycloMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycloScalar::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &CycloScalar) -> CycloMatrix {
        let mut m = CycloMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycloScalar) -> CycloMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycloMatrix { rows, cols, data }
    }

    /// Integer matrix from nested rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> CycloMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        CycloMatrix::from_fn(r, c, |i, j| CycloScalar::from_int(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Result<CycloMatrix> {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(CycloMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: &[CycloScalar]) -> CycloMatrix {
        let n = entries.len();
        let mut m = CycloMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Single matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> CycloMatrix {
        let mut m = CycloMatrix::zeros(n, n);
        m.data[i * n + j] = CycloScalar::one();
        m
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &CycloMatrix, b: &CycloMatrix, c: &CycloMatrix, d: &CycloMatrix) -> CycloMatrix {
        let (p, q) = (a.rows, a.cols);
        let n = p + c.rows;
        let m = q + b.cols;
        CycloMatrix::from_fn(n, m, |i, j| match (i < p, j < q) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - q).clone(),
            (false, true) => c.get(i - p, j).clone(),
            (false, false) => d.get(i - p, j - q).clone(),
        })
    }

    pub fn block_diag(a: &CycloMatrix, d: &CycloMatrix) -> CycloMatrix {
        CycloMatrix::blocks(a, &CycloMatrix::zeros(a.rows, d.cols), &CycloMatrix::zeros(d.rows, a.cols), d)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycloScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<CycloScalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<CycloScalar>]) -> CycloMatrix {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        CycloMatrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CycloMatrix {
        CycloMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    /// Returns `c` when the matrix equals `c·E`.
    pub fn as_scalar(&self) -> Option<CycloScalar> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if i == j {
                    if *v != c {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn scale(&self, s: &CycloScalar) -> CycloMatrix {
        CycloMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> CycloMatrix {
        CycloMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale(r)).collect() }
    }

    pub fn transpose(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> CycloMatrix {
        CycloMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn conj_transpose(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn map(&self, f: impl Fn(&CycloScalar) -> CycloScalar) -> CycloMatrix {
        CycloMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> CycloScalar {
        let mut t = CycloScalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &CycloMatrix) -> CycloScalar {
        let mut t = CycloScalar::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, i);
                if !b.is_zero() {
                    t += &(a * b);
                }
            }
        }
        t
    }

    pub fn checked_mul(&self, o: &CycloMatrix) -> Result<CycloMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = vec![CycloScalar::zero(); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = &o.data[k * o.cols..(k + 1) * o.cols];
                let arow = &mut out[i * o.cols..(i + 1) * o.cols];
                if a.is_one() {
                    for (acc, b) in arow.iter_mut().zip(row.iter()) {
                        if !b.is_zero() {
                            *acc += b;
                        }
                    }
                } else {
                    for (acc, b) in arow.iter_mut().zip(row.iter()) {
                        if !b.is_zero() {
                            *acc += &(a * b);
                        }
                    }
                }
            }
        }
        Ok(CycloMatrix { rows: self.rows, cols: o.cols, data: out })
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloScalar::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> CycloMatrix {
        let mut result = CycloMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, o: &CycloMatrix) -> CycloMatrix {
        &(self * o) - &(o * self)
    }

    /// Row reduction to reduced row echelon form.
    pub fn rref(&self) -> RowEchelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowEchelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<CycloScalar>> {
        let RowEchelon { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![CycloScalar::zero(); self.cols];
            v[free] = CycloScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let aug = CycloMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let RowEchelon { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![CycloScalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Result<CycloScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = CycloScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(CycloScalar::zero()) };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let rv = m.get(c, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<CycloMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = CycloMatrix::blocks(
            self,
            &CycloMatrix::identity(n),
            &CycloMatrix::zeros(0, n),
            &CycloMatrix::zeros(0, n),
        );
        let RowEchelon { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(CycloMatrix::from_fn(n, n, |i, j| matrix.get(i, n + j).clone()))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Pfaffian of an antisymmetric matrix by skew Gaussian elimination.
    pub fn pfaffian(&self) -> Result<CycloScalar> {
        if !self.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        if self.rows % 2 == 1 {
            return Err(Error::OddDimension);
        }
        let mut a = self.clone();
        let mut n = a.rows;
        let mut pf = CycloScalar::one();
        while n > 0 {
            // pivot on a[0][j], move it to position (0, 1)
            let Some(j) = (1..n).find(|&j| !a.get(0, j).is_zero()) else { return Ok(CycloScalar::zero()) };
            if j != 1 {
                a.swap_rows(1, j);
                a.swap_cols(1, j);
                pf = -pf;
            }
            let piv = a.get(0, 1).clone();
            pf = &pf * &piv;
            let inv = piv.inv();
            // Schur complement on indices 2..n
            let m = n - 2;
            let mut next = CycloMatrix::zeros(m, m);
            for i in 0..m {
                for k in 0..m {
                    let (ii, kk) = (i + 2, k + 2);
                    let mut v = a.get(ii, kk).clone();
                    let t1 = a.get(1, ii) * a.get(0, kk);
                    let t2 = a.get(0, ii) * a.get(1, kk);
                    let corr = &(&t1 - &t2) * &inv;
                    if !corr.is_zero() {
                        v = &v + &corr;
                    }
                    next.set(i, k, v);
                }
            }
            a = next;
            n = m;
        }
        Ok(pf)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Characteristic polynomial `det(xE − A)`, constant term first, by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Vec<CycloScalar> {
        let n = self.rows;
        let mut coeffs = vec![CycloScalar::zero(); n + 1];
        coeffs[n] = CycloScalar::one();
        let mut m = CycloMatrix::zeros(n, n);
        for k in 1..=n {
            let am = self * &m;
            m = &am + &CycloMatrix::scalar(n, &coeffs[n - k + 1]);
            let t = self.trace_product(&m);
            coeffs[n - k] = t.scale(&Rat::new(-1, k as i64));
        }
        coeffs
    }

    /// Spectral projectors of a matrix of finite order `n`.
    pub fn finite_order_eigenprojectors(&self, n: u64) -> Result<Vec<(CycloScalar, CycloMatrix)>> {
        let d = self.rows;
        let powers: Vec<CycloMatrix> = {
            let mut v = Vec::with_capacity(n as usize);
            let mut cur = CycloMatrix::identity(d);
            for _ in 0..n {
                v.push(cur.clone());
                cur = &cur * self;
            }
            if !cur.is_identity() {
                return Err(Error::OrderMismatch(format!("matrix does not satisfy M^{n} = E")));
            }
            v
        };
        let inv_n = Rat::new(1, n as i64);
        let mut out = Vec::new();
        for k in 0..n as i64 {
            let mut p = CycloMatrix::zeros(d, d);
            for (j, mj) in powers.iter().enumerate() {
                let c = CycloScalar::root_of_unity(n, -k * j as i64);
                p = &p + &mj.scale(&c);
            }
            let p = p.scale_rat(&inv_n);
            if !p.is_zero() {
                out.push((CycloScalar::root_of_unity(n, k), p));
            }
        }
        Ok(out)
    }

    /// Diagonalizes a matrix whose eigenvalues all lie in `i·Q`.
    pub fn diagonalize_imaginary(&self) -> Result<ImaginaryDiagonalization> {
        let n = self.rows;
        let spectrum = imaginary_spectrum(self)?;
        let i = CycloScalar::i();
        let mut cols = Vec::with_capacity(n);
        let mut eigen = Vec::with_capacity(n);
        for lam in spectrum {
            let shifted = self - &CycloMatrix::scalar(n, &i.scale(&lam));
            let ker = shifted.kernel();
            for v in ker {
                cols.push(v);
                eigen.push(lam.clone());
            }
        }
        if cols.len() != n {
            return Err(Error::NotDiagonalizable("matrix is not semisimple".into()));
        }
        let p = CycloMatrix::from_columns(&cols);
        let p_inv = p.inverse()?;
        Ok(ImaginaryDiagonalization { p, p_inv, eigen })
    }

    pub fn latex(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_latex()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
    }
}

/// `X = P · diag(i·λ_j) · P⁻¹`.
#[derive(Clone, Debug)]
pub struct ImaginaryDiagonalization {
    pub p: CycloMatrix,
    pub p_inv: CycloMatrix,
    pub eigen: Vec<Rat>,
}

impl ImaginaryDiagonalization {
    /// `P · diag(f(λ_j)) · P⁻¹`.
    pub fn apply_function(&self, f: impl Fn(&Rat) -> CycloScalar) -> CycloMatrix {
        let d: Vec<CycloScalar> = self.eigen.iter().map(f).collect();
        &(&self.p * &CycloMatrix::diagonal(&d)) * &self.p_inv
    }
}

/// Distinct rational `λ` with `iλ` an eigenvalue, or an error when some eigenvalue is not in `i·Q`.
pub fn imaginary_spectrum(x: &CycloMatrix) -> Result<Vec<Rat>> {
    let n = x.rows;
    let c = x.char_poly();
    // q(y) = c(iy) / i^n has rational coefficients
    let i = CycloScalar::i();
    let mut q = Vec::with_capacity(n + 1);
    for (k, ck) in c.iter().enumerate() {
        let v = ck * &i.pow(k as i64 - n as i64);
        match v.as_rat() {
            Some(r) => q.push(r),
            None => return Err(Error::NotDiagonalizable("eigenvalues are not in iQ".into())),
        }
    }
    let q = squarefree(&q);
    let roots = rational_roots(&q)?;
    Ok(roots)
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            let t = &f * bj;
            r[k + j] -= &t;
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.is_empty() {
        r.push(Rat::zero());
    }
    r
}

fn poly_div_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let qlen = a.len() - db;
    let mut q = vec![Rat::zero(); qlen];
    let lead_inv = b[db].recip();
    for k in (0..qlen).rev() {
        let f = &r[k + db] * &lead_inv;
        if !f.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &f * bj;
                r[k + j] -= &t;
            }
        }
        q[k] = f;
    }
    q
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn squarefree(p: &[Rat]) -> Vec<Rat> {
    let deriv: Vec<Rat> = p.iter().enumerate().skip(1).map(|(k, c)| c * &Rat::from_int(k as i64)).collect();
    if deriv.is_empty() {
        return p.to_vec();
    }
    let g = poly_gcd(p, &deriv);
    if g.len() == 1 {
        return p.to_vec();
    }
    poly_div_exact(p, &g)
}

fn eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// All rational roots of a squarefree polynomial whose roots are all rational.
fn rational_roots(p: &[Rat]) -> Result<Vec<Rat>> {
    let mut p = p.to_vec();
    poly_trim(&mut p);
    let deg = p.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    // primitive integer form to bound denominators by the leading coefficient
    let den_lcm = p.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, &c.denom()));
    let ints: Vec<Rat> = p.iter().map(|c| c * &Rat::from_bigint(den_lcm.clone())).collect();
    let lead = ints[deg].clone();
    let approx = durand_kerner(&p.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
    let mut roots: Vec<Rat> = Vec::new();
    for (re, _) in approx {
        let scaled = re * lead.to_f64();
        let k = scaled.round();
        let cand = &Rat::from_bigint(num_bigint::BigInt::from(k as i64)) / &lead;
        if eval(&ints, &cand).is_zero() && !roots.contains(&cand) {
            roots.push(cand);
        }
    }
    if roots.len() != deg {
        return Err(Error::NotDiagonalizable("characteristic roots are not all in iQ".into()));
    }
    roots.sort();
    Ok(roots)
}

fn durand_kerner(p: &[f64]) -> Vec<(f64, f64)> {
    let deg = p.len() - 1;
    let lead = p[deg];
    let monic: Vec<f64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..deg)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            (radius * a.cos(), radius * a.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut h = (0.0, 0.0);
            for c in monic.iter().rev() {
                h = cmul(h, z[i]);
                h.0 += c;
            }
            let mut den = (1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = cdiv(h, den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

impl<'a> Add<&'a CycloMatrix> for &'a CycloMatrix {
    type Output = CycloMatrix;
    fn add(self, o: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in addition");
        CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(o.data.iter()).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloMatrix> for &'a CycloMatrix {
    type Output = CycloMatrix;
    fn sub(self, o: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in subtraction");
        CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(o.data.iter()).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloMatrix> for &'a CycloMatrix {
    type Output = CycloMatrix;
    fn mul(self, o: &CycloMatrix) -> CycloMatrix {
        self.checked_mul(o).expect("shape mismatch in product")
    }
}

impl Neg for &CycloMatrix {
    type Output = CycloMatrix;
    fn neg(self) -> CycloMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for CycloMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<CycloScalar>> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CycloMatrix, D::Error> {
        let rows = Vec::<Vec<CycloScalar>>::deserialize(d)?;
        CycloMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
