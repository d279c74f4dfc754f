//! Dense matrices over a prime field and an incremental echelon basis.
//!
//! Matrices act on column vectors. Entries are residues in `[0, q)` with
//! `q < 2^32`, so a product of two entries fits in a `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::inv_mod;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    q: u64,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.q)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, q: u64) -> Matrix {
        Matrix {
            rows,
            cols,
            q,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, q: u64) -> Matrix {
        let mut m = Matrix::zeros(n, n, q);
        for i in 0..n {
            m.data[i * n + i] = 1 % q;
        }
        m
    }

    pub fn scalar(n: usize, c: u64, q: u64) -> Matrix {
        Matrix::identity(n, q).scale(c)
    }

    /// Builds a matrix from signed integer rows, reducing mod `q`.
    pub fn from_rows(rows: &[Vec<i64>], q: u64) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c, q);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = x.rem_euclid(q as i64) as u64;
            }
        }
        m
    }

    /// Stacks residue vectors as rows.
    pub fn from_vectors(vectors: &[Vec<u64>], cols: usize, q: u64) -> Matrix {
        let mut m = Matrix::zeros(vectors.len(), cols, q);
        for (i, v) in vectors.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = x % self.q;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: u64) {
        let i = r * self.cols + c;
        self.data[i] = (self.data[i] + x % self.q) % self.q;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c) == 0))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let q = self.q;
        let mut out = Matrix::zeros(self.rows, other.cols, q);
        for r in 0..self.rows {
            let acc = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x = (*x + a * b) % q;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % self.q)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let q = self.q;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(self.q - 1))
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let q = self.q;
        let c = c % q;
        Matrix {
            data: self.data.iter().map(|&a| a * c % q).collect(),
            ..self.clone()
        }
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows.max(1) as u64).is_zero()
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| (acc + self.get(i, i)) % self.q)
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let q = self.q;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = inv_mod(m.get(row, col), q);
            for c in col..m.cols {
                let x = m.get(row, c) * inv % q;
                m.data[row * m.cols + c] = x;
            }
            for r in 0..m.rows {
                let f = m.get(r, col);
                if r != row && f != 0 {
                    for c in col..m.cols {
                        let x = (m.get(r, c) + (q - f) * m.get(row, c)) % q;
                        m.data[r * m.cols + c] = x;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as vectors.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots, self.cols, self.q)
    }

    /// Basis of the row space, in reduced echelon form.
    pub fn row_space(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.q);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Invalid("matrix is singular".into()));
        }
        let mut inv = Matrix::zeros(n, n, self.q);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> u64 {
        assert!(self.is_square());
        let q = self.q;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = (q - det) % q;
            }
            let d = m.get(col, col);
            det = det * d % q;
            let inv = inv_mod(d, q);
            for r in col + 1..n {
                let f = m.get(r, col) * inv % q;
                if f != 0 {
                    for c in col..n {
                        let x = (m.get(r, c) + (q - f) * m.get(col, c)) % q;
                        m.data[r * n + c] = x;
                    }
                }
            }
        }
        det
    }

    /// Columns listed as vectors, assembled into a matrix.
    pub fn from_columns(columns: &[Vec<u64>], rows: usize, q: u64) -> Matrix {
        Matrix::from_vectors(columns, rows, q).transpose()
    }

    /// Entry-wise list in row-major order, for serialisation.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }
}

fn nullspace_from_rref(r: &Matrix, pivots: &[usize], cols: usize, q: u64) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![None; cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = (q - r.get(i, free)) % q;
        }
        basis.push(v);
    }
    basis
}

/// An incrementally built echelon basis of a subspace of `F_q^n`.
///
/// Each stored row is zero in the pivot columns of all earlier rows and has
/// a 1 at its own pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    q: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize, q: u64) -> Echelon {
        Echelon {
            n,
            q,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [u64]) {
        let q = self.q;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                let g = q - f;
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = (*x + g * y) % q;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.iter().map(|&x| x % self.q).collect::<Vec<_>>();
        self.reduce(&mut w);
        self.insert_reduced(w)
    }

    fn insert_reduced(&mut self, mut w: Vec<u64>) -> bool {
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], self.q);
        for x in w.iter_mut() {
            *x = *x * inv % self.q;
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Inserts a sparse vector given as `(index, value)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, u64)]) -> bool {
        let mut w = vec![0u64; self.n];
        for &(i, x) in entries {
            w[i] = (w[i] + x) % self.q;
        }
        self.reduce(&mut w);
        self.insert_reduced(w)
    }

    /// The stored basis vectors.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// The basis in fully reduced row echelon form, sorted by pivot.
    pub fn reduced_basis(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let q = self.q;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u64>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let pivot_row = rows[i].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j != i && row[pc] != 0 {
                    let g = q - row[pc];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + g * y) % q;
                    }
                }
            }
        }
        (rows, pivots)
    }

    /// Basis of the solution space when the stored rows are read as linear
    /// equations in `n` unknowns.
    pub fn solutions(&self) -> Vec<Vec<u64>> {
        let (rows, pivots) = self.reduced_basis();
        let r = Matrix::from_vectors(&rows, self.n, self.q);
        nullspace_from_rref(&r, &pivots, self.n, self.q)
    }

    /// Indices of standard basis vectors completing the span to `F_q^n`.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut taken = vec![false; self.n];
        for &p in &self.pivots {
            taken[p] = true;
        }
        (0..self.n).filter(|&i| !taken[i]).collect()
    }
}

/// Intersection of two subspaces given by spanning vectors.
pub fn intersect(a: &[Vec<u64>], b: &[Vec<u64>], n: usize, q: u64) -> Vec<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x in span(a) ∩ span(b) iff x = Σ s_i a_i = Σ t_j b_j
    let mut cols: Vec<Vec<u64>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|&x| (q - x) % q).collect()));
    let m = Matrix::from_columns(&cols, n, q);
    let mut out = Echelon::new(n, q);
    for sol in m.nullspace() {
        let mut x = vec![0u64; n];
        for (i, v) in a.iter().enumerate() {
            if sol[i] != 0 {
                for (xk, &vk) in x.iter_mut().zip(v) {
                    *xk = (*xk + sol[i] * vk) % q;
                }
            }
        }
        out.insert(&x);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 7);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, 7));
        assert_eq!(m.det(), (4 - 6i64).rem_euclid(7) as u64);
        assert!(Matrix::from_rows(&[vec![1, 2], vec![2, 4]], 7)
            .inverse()
            .is_err());
    }

    #[test]
    fn nullspace_dimension() {
        let m = Matrix::from_rows(&[vec![1, 1, 0], vec![0, 0, 1]], 5);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn echelon_matches_dense_rank() {
        let rows = vec![
            vec![1, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, 0, 1],
            vec![1, 3, 3, 5],
        ];
        let m = Matrix::from_rows(&rows, 11);
        let mut e = Echelon::new(4, 11);
        for r in m.row_vectors() {
            e.insert(&r);
        }
        assert_eq!(e.dim(), m.rank());
        assert_eq!(e.solutions().len(), 4 - m.rank());
        let (red, _) = e.reduced_basis();
        assert_eq!(red, m.row_space());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = intersect(&a, &b, 3, 3);
        assert_eq!(i, vec![vec![0, 1, 0]]);
    }
}
