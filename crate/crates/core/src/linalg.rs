//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Row-major dense matrix with entries in `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &e in &data {
            field.check(e)?;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Matrix::new(field, n_rows, cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> + Clone {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Same entries read in a different field. Only valid when the entries
    /// belong to both, e.g. when lifting a base-field matrix.
    pub fn reinterpret(&self, field: Field) -> Result<Matrix> {
        Matrix::new(field, self.rows, self.cols, self.data.clone())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(t, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `M x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok(self.row_iter().map(|row| dot(f, row, x)).collect())
    }

    /// `x M` for a row vector `x`.
    pub fn vec_mul(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = idx.iter().find(|&&c| c >= self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "column {bad} of a matrix with {} columns",
                self.cols
            )));
        }
        let mut out = Matrix::zeros(self.field.clone(), self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = idx.iter().find(|&&r| r >= self.rows) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} of a matrix with {} rows",
                self.rows
            )));
        }
        let rows = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        Matrix::from_rows(self.field.clone(), self.cols, rows)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form and its pivot columns. Pivots are the first
    /// nonzero entry found scanning down each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = f.inv(m.get(lead_row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(lead_row, c), inv);
                m.set(lead_row, c, v);
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(lead_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows span `{x : M x^T = 0}`.
    pub fn null_space_basis(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f.clone(), free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        basis
    }

    /// The unique `x` with `M x = b`; requires full column rank.
    pub fn solve(&self, b: &[Elem]) -> Result<Vec<Elem>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field.clone(), self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, self.field.check(rhs)?);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                needed: self.cols,
            });
        }
        Ok((0..self.cols).map(|i| red.get(i, self.cols)).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Elem::ONE);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            let rank = pivots.iter().filter(|&&p| p < n).count();
            return Err(Error::RankDeficient { rank, needed: n });
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        red.select_columns(&cols)
    }
}

/// Inner product over `field`.
pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(|&e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
