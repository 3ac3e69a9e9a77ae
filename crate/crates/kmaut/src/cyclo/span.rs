//! Incremental row reduction for growing spanning sets.

use super::scalar::CycloScalar;

/// A subspace of `F^n` held as rows in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    len: usize,
    rows: Vec<Vec<CycloScalar>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(len: usize) -> SpanBuilder {
        SpanBuilder { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    /// The residue of `v` after elimination against the current rows.
    fn reduce(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &(&f * rj);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[CycloScalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].inv();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (rj, wj) in row.iter_mut().zip(&w) {
                if !wj.is_zero() {
                    *rj -= &(&f * wj);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Echelon rows spanning the subspace.
    pub fn basis(&self) -> &[Vec<CycloScalar>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CycloScalar> {
        xs.iter().map(|&x| CycloScalar::from_int(x)).collect()
    }

    #[test]
    fn grows_only_on_new_directions() {
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(!s.insert(&v(&[2, 4, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(s.contains(&v(&[1, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn zero_is_always_contained() {
        let s = SpanBuilder::new(4);
        assert!(s.contains(&v(&[0, 0, 0, 0])));
    }
}
