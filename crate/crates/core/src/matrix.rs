//! Dense matrices over a finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            if let Some(&bad) = r.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::InvalidArgument(format!("{bad} is not an element of {field}")));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(piv, r);
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        (0..self.rows).map(|r| dot(f, self.row(r), v)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

pub(crate) fn dot(f: &Field, a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0u64, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { f.add(acc, f.mul(x, y)) })
}

impl fmt::Display for Matrix {
    /// One row per line, entries as coordinate tuples.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let parts: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        fmt::Display::fmt(self, f)
    }
}
