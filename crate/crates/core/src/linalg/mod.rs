//! Exact linear algebra over the rationals and prime fields.

mod elim;
mod matrix;
mod modp;
mod poly;
mod scalar;

pub use elim::{max_bits_seen, reset_bit_stats, sparse_rank, sparse_rref, SparseRref};
pub use matrix::Matrix;
pub(crate) use modp::pencil_root_candidates;
pub use poly::{pencil_minor_poly, rational_roots, Poly};
pub use scalar::{is_prime, Field, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn sparse_rows(m: &Matrix) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.rows()).map(|i| m.sparse_row(i)).collect()
}

/// Reduced row echelon form with its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let r = sparse_rref(m.field(), m.cols(), sparse_rows(m));
    let mut dense = Matrix::zeros(m.field(), m.rows(), m.cols());
    dense.paste(0, 0, &r.to_dense());
    (dense, r.pivots)
}

pub fn rank(m: &Matrix) -> usize {
    sparse_rank(m.field(), m.cols(), sparse_rows(m))
}

/// Basis of the null space as the columns of the returned matrix, in free-column order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    sparse_rref(m.field(), m.cols(), sparse_rows(m)).kernel_basis()
}

/// Indices of the pivot columns of `m`; the corresponding columns span its image.
pub fn pivot_columns(m: &Matrix) -> Vec<usize> {
    sparse_rref(m.field(), m.cols(), sparse_rows(m)).pivots
}

/// Basis of the column space made of columns of `m`.
pub fn column_space(m: &Matrix) -> Matrix {
    m.select_columns(&pivot_columns(m))
}

/// Solves `a * x = b` for a matrix right-hand side; `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {}",
            a.rows(),
            b.rows()
        )));
    }
    let aug = Matrix::hstack(a.field(), a.rows(), &[a.clone(), b.clone()])?;
    let r = sparse_rref(a.field(), aug.cols(), sparse_rows(&aug));
    if r.pivots.iter().any(|&c| c >= a.cols()) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field(), a.cols(), b.cols());
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (j, v) in row {
            if *j >= a.cols() {
                x.set(p, j - a.cols(), v.clone());
            }
        }
    }
    Ok(Some(x))
}

pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let rhs = Matrix::column_vector(a.field(), b.to_vec());
    Ok(solve_matrix(a, &rhs)?.map(|x| x.column(0)))
}

/// Coordinates of the columns of `vectors` in the basis formed by the columns of `basis`.
pub fn coordinates(basis: &Matrix, vectors: &Matrix) -> Result<Matrix> {
    solve_matrix(basis, vectors)?.ok_or_else(|| Error::Internal("vectors do not lie in the span of the basis".into()))
}

/// Columns of `candidates` that extend the column span of `span`, chosen greedily left to right.
pub fn extend_basis(span: &Matrix, candidates: &Matrix) -> Result<Matrix> {
    let both = Matrix::hstack(span.field(), span.rows(), &[span.clone(), candidates.clone()])?;
    let chosen: Vec<usize> =
        pivot_columns(&both).into_iter().filter(|&c| c >= span.cols()).map(|c| c - span.cols()).collect();
    Ok(candidates.select_columns(&chosen))
}

/// Determinant by fraction-free Bareiss elimination (Gaussian elimination over GF(p)).
pub fn determinant(m: &Matrix) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!("determinant of {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    match m.field() {
        Field::Rational => {
            let mut scale = BigInt::one();
            let mut a: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let row = m.row(i);
                    let den = row.iter().fold(BigInt::one(), |acc, s| {
                        num_integer::Integer::lcm(&acc, s.as_rational().expect("rational").denom())
                    });
                    scale *= &den;
                    row.iter()
                        .map(|s| {
                            let q = s.as_rational().expect("rational");
                            q.numer() * (&den / q.denom())
                        })
                        .collect()
                })
                .collect();
            let det = bareiss(&mut a);
            Ok(Scalar::Rational(BigRational::new(det, scale)))
        }
        Field::Prime(p) => {
            let f = m.field();
            let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
            let mut det = f.one();
            for k in 0..n {
                let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(f.zero());
                };
                if piv != k {
                    a.swap(piv, k);
                    det = -det;
                }
                det = &det * &a[k][k];
                let inv = a[k][k].inv().expect("nonzero pivot");
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let c = &a[i][k] * &inv;
                    for j in k..n {
                        let v = &a[i][j] - &(&c * &a[k][j]);
                        a[i][j] = v;
                    }
                }
            }
            let _ = p;
            Ok(det)
        }
    }
}

fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            elim::record_bits(a[i][n - 1].bits());
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(Q, rows)
    }

    #[test]
    fn rref_example() {
        let (r, piv) = rref(&q(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, q(&[&[1, 2], &[0, 0]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(kernel_basis(&q(&[&[1, 2], &[2, 4]])), q(&[&[-2], &[1]]));
    }

    #[test]
    fn rref_over_prime_field() {
        let f = Field::Prime(5);
        let m = Matrix::from_ints(f, &[&[2, 4, 1], &[1, 2, 4]]);
        let (r, piv) = rref(&m);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r, Matrix::from_ints(f, &[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(rank(&Matrix::from_ints(f, &[&[2, 4, 1], &[1, 2, 3]])), 1);
        let g = Field::Prime(2);
        let (r, piv) = rref(&Matrix::from_ints(g, &[&[2, 1], &[1, 1]]));
        assert_eq!(r, Matrix::identity(g, 2));
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rank_and_kernel_agree() {
        let m = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(rank(&m) + k.cols(), 4);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = q(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Q.from_int(3), Q.from_int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![Q.from_int(2), Q.from_int(1)]);
        let s = q(&[&[1, 1], &[2, 2]]);
        assert!(solve(&s, &[Q.from_int(1), Q.from_int(3)]).unwrap().is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&q(&[&[2, 1], &[1, 1]])).unwrap(), Q.from_int(1));
        assert_eq!(determinant(&q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])).unwrap(), Q.from_int(-2));
        let half = Matrix::from_rows(Q, vec![vec![Q.parse_scalar("1/2").unwrap()]]).unwrap();
        assert_eq!(determinant(&half).unwrap(), Q.parse_scalar("1/2").unwrap());
        let f = Field::Prime(7);
        assert_eq!(determinant(&Matrix::from_ints(f, &[&[0, 1], &[1, 0]])).unwrap(), f.from_int(-1));
    }

    #[test]
    fn extend_basis_picks_complement() {
        let span = q(&[&[1], &[1], &[0]]);
        let ext = extend_basis(&span, &Matrix::identity(Q, 3)).unwrap();
        assert_eq!(ext.cols(), 2);
        let all = Matrix::hstack(Q, 3, &[span, ext]).unwrap();
        assert_eq!(rank(&all), 3);
    }
}
