//! Exact sparse rational linear algebra.
//!
//! Elimination chooses, for each column in turn, the candidate row with the
//! fewest nonzeros (lowest index on ties), so every result is reproducible.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Q;

pub type SparseVec = BTreeMap<usize, Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = RatMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = RatMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        assert!(i < self.rows && j < self.cols, "entry out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, x: &SparseVec) -> Result<SparseVec> {
        if x.keys().any(|&j| j >= self.cols) {
            return Err(Error::Dimension("vector longer than column count".into()));
        }
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Q::zero();
            for (j, v) in row {
                if let Some(xj) = x.get(j) {
                    acc += v * xj;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            echelon(self.transpose().data, self.rows).len()
        } else {
            echelon(self.data.clone(), self.cols).len()
        }
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let piv = rref(self.data.clone(), self.cols);
        let pivot_cols: BTreeMap<usize, &SparseVec> = piv.iter().map(|(c, r)| (*c, r)).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, Q::one());
                for (&pc, row) in &pivot_cols {
                    if let Some(a) = row.get(&free) {
                        v.insert(pc, -a);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None`.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if b.keys().any(|&i| i >= self.rows) {
            return Err(Error::Dimension("right-hand side longer than row count".into()));
        }
        let aug: Vec<SparseVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                if let Some(v) = b.get(&i) {
                    r.insert(self.cols, v.clone());
                }
                r
            })
            .collect();
        let piv = rref(aug, self.cols + 1);
        if piv.iter().any(|(c, _)| *c == self.cols) {
            return Ok(None);
        }
        let mut x = SparseVec::new();
        for (c, row) in &piv {
            if let Some(v) = row.get(&self.cols) {
                x.insert(*c, v.clone());
            }
        }
        Ok(Some(x))
    }

    pub fn in_image(&self, b: &SparseVec) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }
}

fn axpy(dst: &mut SparseVec, a: &Q, src: &SparseVec) {
    for (j, v) in src {
        let e = dst.entry(*j).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            dst.remove(j);
        }
    }
}

/// Forward elimination. Returns pivot rows keyed by pivot column, each
/// normalized to leading coefficient one.
fn echelon(mut rows: Vec<SparseVec>, ncols: usize) -> Vec<(usize, SparseVec)> {
    rows.retain(|r| !r.is_empty());
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if rows.is_empty() {
            break;
        }
        let mut best: Option<usize> = None;
        for (i, r) in rows.iter().enumerate() {
            if r.keys().next() == Some(&col) && best.is_none_or(|b| r.len() < rows[b].len()) {
                best = Some(i);
            }
        }
        let Some(bi) = best else { continue };
        let mut prow = rows.swap_remove(bi);
        let lead = prow[&col].clone();
        if !lead.is_one() {
            let inv = Q::one() / lead;
            for v in prow.values_mut() {
                *v *= &inv;
            }
        }
        for r in rows.iter_mut() {
            if r.keys().next() == Some(&col) {
                let a = -r[&col].clone();
                axpy(r, &a, &prow);
            }
        }
        rows.retain(|r| !r.is_empty());
        // swap_remove perturbs order; restore it so tie-breaks stay stable
        rows.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
        pivots.push((col, prow));
    }
    pivots
}

/// Reduced row echelon form as pivot rows keyed by column.
fn rref(rows: Vec<SparseVec>, ncols: usize) -> Vec<(usize, SparseVec)> {
    let mut piv = echelon(rows, ncols);
    for k in (0..piv.len()).rev() {
        let (col, row) = piv[k].clone();
        for (_, r) in piv.iter_mut().take(k) {
            if let Some(a) = r.get(&col).cloned() {
                axpy(r, &-a, &row);
            }
        }
    }
    piv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn identity_and_zero() {
        let i3 = RatMatrix::identity(3);
        assert_eq!(i3.rank(), 3);
        assert!(i3.kernel_basis().is_empty());
        let z = RatMatrix::zeros(2, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 4);
    }

    #[test]
    fn solve_small() {
        let m = RatMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        let b: SparseVec = [(0, q(3)), (1, q(6))].into_iter().collect();
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let c: SparseVec = [(0, q(1))].into_iter().collect();
        assert!(!m.in_image(&c).unwrap());
    }
}
