//! Dense matrices over a coefficient field.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Rows must have equal length; entries canonical for the intended field.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[Vec<i64>], field: Field) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, field: Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self, field: Field) -> Scalar {
        assert!(self.is_square());
        let mut rows = self.to_rows();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = field.neg(&det);
            }
            let pivot = rows[col][col].clone();
            det = field.mul(&det, &pivot);
            let inv = field.inv(&pivot).unwrap();
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = field.mul(&rows[r][col], &inv);
                let pivot_row = rows[col].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row).skip(col) {
                    *v = field.sub(v, &field.mul(&factor, p));
                }
            }
        }
        det
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, field: Field) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = field.inv(&rows[r][c]).unwrap();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = field.mul(v, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v = field.sub(v, &field.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], field: Field) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work, field).len()
}

/// Basis of `{v : A v = 0}` for `A` with `ncols` columns, returned in
/// reduced echelon form (each vector's first nonzero entry is 1 and sits in
/// a column where all other vectors vanish).
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, field);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &pc) in work.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[pc] = field.neg(&row[f]);
                }
            }
            v
        })
        .collect();
    rref(&mut basis, field);
    basis
}
