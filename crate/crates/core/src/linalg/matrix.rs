use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::scalar::{Field, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_width(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but keeps the width when there are no rows.
    pub fn from_rows_with_width(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for s in &row {
                field.check(s)?;
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Matrix {
        let n = v.len();
        Matrix { field, rows: n, cols: 1, data: v }
    }

    /// Jordan block with `lambda` on the diagonal and ones on the superdiagonal.
    pub fn jordan_block(n: usize, lambda: &Scalar) -> Matrix {
        let field = lambda.field();
        Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                lambda.clone()
            } else if j == i + 1 {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let sparse_rows: Vec<Vec<(usize, &Scalar)>> =
            (0..other.rows).map(|k| other.row(k).iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()).collect();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("shapes {:?} and {:?} differ", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product; the row index is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let (r, c) = other.shape();
        Ok(Matrix::from_fn(self.field, self.rows * r, self.cols * c, |i, j| {
            let a = self.get(i / r, j / c);
            if a.is_zero() {
                self.field.zero()
            } else {
                a * other.get(i % r, j % c)
            }
        }))
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field.to_string(), b.field.to_string()));
            }
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!("hstack block has {} rows, expected {rows}", b.rows)));
            }
            out.same_field(b)?;
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!("vstack block has {} columns, expected {cols}", b.cols)));
            }
            out.same_field(b)?;
            out.paste(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Sparse view of row `i` as `(column, value)` pairs.
    pub fn sparse_row(&self, i: usize) -> Vec<(usize, Scalar)> {
        self.row(i).iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(j, s)| (j, s.clone())).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::to_string).collect()).collect()
    }

    pub fn max_bit_size(&self) -> u64 {
        self.data.iter().map(Scalar::bit_size).max().unwrap_or(0)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn kron_matches_block_formula() {
        let a = Matrix::from_ints(Q, &[&[1, 2], &[0, 3]]);
        let b = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b).unwrap();
        let expect = Matrix::from_ints(Q, &[&[0, 1, 0, 2], &[1, 0, 2, 0], &[0, 0, 0, 3], &[0, 0, 3, 0]]);
        assert_eq!(k, expect);
    }

    #[test]
    fn block_diag_and_stacks() {
        let a = Matrix::from_ints(Q, &[&[1]]);
        let b = Matrix::from_ints(Q, &[&[2, 3]]);
        let d = Matrix::block_diag(Q, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(d, Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 2, 3]]));
        let h = Matrix::hstack(Q, 1, &[a.clone(), b]).unwrap();
        assert_eq!(h, Matrix::from_ints(Q, &[&[1, 2, 3]]));
        let v = Matrix::vstack(Q, 1, &[a.clone(), a]).unwrap();
        assert_eq!(v.shape(), (2, 1));
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_ints(Q, &[&[1, 2, 0], &[0, 1, -1]]);
        let p = a.mul(&a.transpose()).unwrap();
        assert_eq!(p, Matrix::from_ints(Q, &[&[5, 2], &[2, 2]]));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Field::Prime(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
        assert!(Matrix::from_rows(Q, vec![vec![Field::Prime(3).one()]]).is_err());
    }

    #[test]
    fn jordan() {
        let j = Matrix::jordan_block(3, &Q.from_int(2));
        assert_eq!(j, Matrix::from_ints(Q, &[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]));
    }
}
