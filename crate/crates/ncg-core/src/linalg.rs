//! Exact linear algebra over Q(zeta_m).
//!
//! Sparse row-echelon elimination with smallest-row pivot selection. All
//! results (ranks, nullspaces, solutions) are exact; there is no rounding
//! anywhere in this module.

use crate::scalar::CycloScalar;

/// Sorted sparse vector; no explicit zeros.
#[derive(Clone, Debug, Default)]
pub struct SparseVec {
    pub entries: Vec<(usize, CycloScalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, CycloScalar::one())],
        }
    }

    pub fn from_dense(v: &[CycloScalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn push(&mut self, i: usize, c: CycloScalar) {
        if !c.is_zero() {
            self.entries.push((i, c));
        }
    }

    /// Sort by index and merge duplicates.
    pub fn normalize(mut self) -> Self {
        self.entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, CycloScalar)> = Vec::with_capacity(self.entries.len());
        for (i, c) in self.entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => {
                    *acc = acc.add(&c);
                }
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&CycloScalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        if f.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, c.mul(f)))
                .collect(),
        }
    }

    /// self - f * other (merge of two sorted rows).
    pub fn axpy_sub(&self, f: &CycloScalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|(i, _)| *i);
            let ib = other.entries.get(b).map(|(i, _)| *i);
            match (ia, ib) {
                (Some(i), Some(j)) if i == j => {
                    let v = self.entries[a].1.sub(&f.mul(&other.entries[b].1));
                    if !v.is_zero() {
                        out.push((i, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(i), Some(j)) if i < j => {
                    out.push(self.entries[a].clone());
                    a += 1;
                    let _ = i;
                    let _ = j;
                }
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let (j, c) = &other.entries[b];
                    let v = f.mul(c).neg();
                    if !v.is_zero() {
                        out.push((*j, v));
                    }
                    b += 1;
                }
                (Some(_), None) => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy_sub(&CycloScalar::from_int(-1), other)
    }

    pub fn dot_dense(&self, v: &[CycloScalar]) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (i, c) in &self.entries {
            if !v[*i].is_zero() {
                acc = acc.add(&c.mul(&v[*i]));
            }
        }
        acc
    }
}

/// Sparse matrix, rows of equations.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![SparseVec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.rows[i] = SparseVec::unit(i);
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        SparseMat {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_dense(d: &[Vec<CycloScalar>]) -> Self {
        let ncols = d.first().map(|r| r.len()).unwrap_or(0);
        SparseMat {
            nrows: d.len(),
            ncols,
            rows: d.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<CycloScalar>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn set(&mut self, i: usize, j: usize, c: CycloScalar) {
        self.rows[i].push(j, c);
    }

    /// Call after batch `set`s.
    pub fn normalized(mut self) -> Self {
        self.rows = self.rows.into_iter().map(|r| r.normalize()).collect();
        self
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in &row.entries {
                out.rows[*j].entries.push((i, c.clone()));
            }
        }
        // column order of the source is ascending row order here
        out
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        self.rows.iter().map(|r| r.dot_dense(v)).collect()
    }

    pub fn mul_mat(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows);
        let mut out = SparseMat::zero(self.nrows, other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, c) in &row.entries {
                acc = acc.axpy_sub(&c.neg(), &other.rows[*k]);
            }
            out.rows[i] = acc;
        }
        out
    }

    pub fn add_mat(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.nrows, other.nrows);
        assert_eq!(self.ncols, other.ncols);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.add(b))
            .collect();
        SparseMat::from_rows(self.ncols, rows)
    }

    pub fn scale(&self, f: &CycloScalar) -> SparseMat {
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scale(f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Row echelon form. Returns (pivot rows in order, pivot columns).
    fn echelon(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut pending: Vec<SparseVec> =
            self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivot_rows: Vec<SparseVec> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        // bucket rows by leading column
        loop {
            // find the smallest leading column among pending rows
            let col = match pending.iter().filter_map(|r| r.leading()).min() {
                Some(c) => c,
                None => break,
            };
            // choose the sparsest row with that leading column as pivot
            let mut best: Option<(usize, usize)> = None;
            for (k, r) in pending.iter().enumerate() {
                if r.leading() == Some(col) {
                    let nnz = r.entries.len();
                    if best.map(|(bn, _)| nnz < bn).unwrap_or(true) {
                        best = Some((nnz, k));
                    }
                }
            }
            let (_, k) = best.unwrap();
            let pivot = pending.swap_remove(k);
            let lead = pivot.entries[0].1.clone();
            let mut next_pending = Vec::with_capacity(pending.len());
            for r in pending.into_iter() {
                if r.leading() == Some(col) {
                    let f = r.entries[0].1.div(&lead);
                    let nr = r.axpy_sub(&f, &pivot);
                    if !nr.is_zero() {
                        next_pending.push(nr);
                    }
                } else {
                    next_pending.push(r);
                }
            }
            pending = next_pending;
            pivot_rows.push(pivot);
            pivot_cols.push(col);
        }
        (pivot_rows, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Reduced row echelon form (pivot coefficients 1, pivots cleared above).
    pub fn rref(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let (mut rows, cols) = self.echelon();
        for r in rows.iter_mut() {
            let lead = r.entries[0].1.clone();
            *r = r.scale(&lead.inv());
        }
        for k in (0..rows.len()).rev() {
            let col = cols[k];
            let pivot = rows[k].clone();
            for j in 0..k {
                if let Some(c) = rows[j].get(col) {
                    let f = c.clone();
                    rows[j] = rows[j].axpy_sub(&f, &pivot);
                }
            }
        }
        (rows, cols)
    }

    /// Basis of the right nullspace {x : A x = 0}, echelon-canonical.
    pub fn nullspace(&self) -> Vec<Vec<CycloScalar>> {
        let (rows, cols) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = cols.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycloScalar::zero(); self.ncols];
            v[free] = CycloScalar::one();
            for (k, row) in rows.iter().enumerate() {
                if let Some(c) = row.get(free) {
                    v[cols[k]] = c.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of A x = b, if consistent.
    pub fn solve(&self, b: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        assert_eq!(b.len(), self.nrows);
        let mut aug = SparseMat::zero(self.nrows, self.ncols + 1);
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = row.clone();
            if !b[i].is_zero() {
                r.entries.push((self.ncols, b[i].clone()));
            }
            aug.rows[i] = r;
        }
        let (rows, cols) = aug.rref();
        let mut x = vec![CycloScalar::zero(); self.ncols];
        for (k, row) in rows.iter().enumerate() {
            if cols[k] == self.ncols {
                return None; // 0 = 1 row
            }
            if let Some(c) = row.get(self.ncols) {
                x[cols[k]] = c.clone();
            }
        }
        Some(x)
    }
}

/// The quotient (V + U)/U of subspaces of K^ambient, with explicit
/// coordinates: reduce modulo U, then express in an echelon basis of the
/// reduced image of V.
pub struct LinearQuotient {
    pub ambient: usize,
    u_rows: Vec<SparseVec>,
    u_pivots: Vec<usize>,
    /// rows form a basis of the reduced image of V; quotient coordinates
    /// are taken against these.
    basis_rows: Vec<SparseVec>,
    basis_mat_t: SparseMat,
}

impl LinearQuotient {
    pub fn new(ambient: usize, u_basis: Vec<SparseVec>, v_basis: Vec<SparseVec>) -> Self {
        let (u_rows, u_pivots) = SparseMat::from_rows(ambient, u_basis).rref();
        let reduce = |v: &SparseVec| -> SparseVec {
            let mut out = v.clone();
            for (k, row) in u_rows.iter().enumerate() {
                if let Some(c) = out.get(u_pivots[k]) {
                    let f = c.clone();
                    out = out.axpy_sub(&f, row);
                }
            }
            out
        };
        let reduced: Vec<SparseVec> = v_basis.iter().map(reduce).collect();
        let (basis_rows, _) = SparseMat::from_rows(ambient, reduced).rref();
        let basis_mat_t = SparseMat::from_rows(ambient, basis_rows.clone()).transpose();
        LinearQuotient {
            ambient,
            u_rows,
            u_pivots,
            basis_rows,
            basis_mat_t,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_rows.len()
    }

    fn reduce(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut out = v.to_vec();
        for (k, row) in self.u_rows.iter().enumerate() {
            let p = self.u_pivots[k];
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (j, c) in &row.entries {
                    out[*j] = out[*j].sub(&f.mul(c));
                }
            }
        }
        out
    }

    /// Quotient coordinates of an ambient vector lying in V + U.
    pub fn project(&self, v: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let r = self.reduce(v);
        self.basis_mat_t.solve(&r)
    }

    /// A representative in K^ambient of quotient coordinates.
    pub fn lift(&self, coords: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(); self.ambient];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in &self.basis_rows[k].entries {
                out[*j] = out[*j].add(&c.mul(b));
            }
        }
        out
    }
}

/// Dense helpers for small matrices (representations, Hopf structure maps).
pub type DenseMat = Vec<Vec<CycloScalar>>;

pub fn dmat_zero(r: usize, c: usize) -> DenseMat {
    vec![vec![CycloScalar::zero(); c]; r]
}

pub fn dmat_identity(n: usize) -> DenseMat {
    let mut m = dmat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = CycloScalar::one();
    }
    m
}

pub fn dmat_mul(a: &DenseMat, b: &DenseMat) -> DenseMat {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    let mut out = dmat_zero(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][t].mul(&b[t][j]));
                }
            }
        }
    }
    out
}

pub fn dmat_add(a: &DenseMat, b: &DenseMat) -> DenseMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn dmat_sub(a: &DenseMat, b: &DenseMat) -> DenseMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn dmat_scale(a: &DenseMat, f: &CycloScalar) -> DenseMat {
    a.iter()
        .map(|r| r.iter().map(|x| x.mul(f)).collect())
        .collect()
}

pub fn dmat_vec(a: &DenseMat, v: &[CycloScalar]) -> Vec<CycloScalar> {
    a.iter()
        .map(|row| {
            let mut acc = CycloScalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
        .collect()
}

pub fn dmat_eq(a: &DenseMat, b: &DenseMat) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(ra, rb)| ra.len() == rb.len() && ra.iter().zip(rb).all(|(x, y)| x == y))
}

pub fn dmat_is_zero(a: &DenseMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn dmat_trace(a: &DenseMat) -> CycloScalar {
    let mut acc = CycloScalar::zero();
    for (i, row) in a.iter().enumerate() {
        acc = acc.add(&row[i]);
    }
    acc
}

pub fn vec_add(a: &[CycloScalar], b: &[CycloScalar]) -> Vec<CycloScalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[CycloScalar], b: &[CycloScalar]) -> Vec<CycloScalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[CycloScalar], f: &CycloScalar) -> Vec<CycloScalar> {
    a.iter().map(|x| x.mul(f)).collect()
}

pub fn vec_is_zero(a: &[CycloScalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> CycloScalar {
        CycloScalar::from_int(n)
    }

    #[test]
    fn rank_and_nullspace() {
        // [[1,2,3],[2,4,6],[1,0,1]] has rank 2
        let m = SparseMat::from_dense(&[
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(1), s(0), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(vec_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = SparseMat::from_dense(&[vec![s(1), s(1)], vec![s(1), s(-1)]]);
        let x = m.solve(&[s(3), s(1)]).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let m2 = SparseMat::from_dense(&[vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert!(m2.solve(&[s(1), s(3)]).is_none());
        assert!(m2.solve(&[s(1), s(2)]).is_some());
    }

    #[test]
    fn cyclotomic_entries() {
        let i = CycloScalar::i();
        // [[1, i],[ -i, 1]] is rank 1 (second row = -i * first)
        let m = SparseMat::from_dense(&[
            vec![CycloScalar::one(), i.clone()],
            vec![i.neg(), CycloScalar::one()],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace().len(), 1);
    }
}
