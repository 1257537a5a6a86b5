use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rep::Representation;

/// One subspace per vertex, each given by spanning columns.
#[derive(Clone, Debug)]
pub struct SubspaceFamily {
    pub spans: Vec<Matrix>,
}

/// Accepts when, at every vertex, the union of the spanning columns is linearly independent
/// and the subspace dimensions add up to the dimension of the ambient space.
pub fn certify_direct_sum(ambient: &Representation, parts: &[SubspaceFamily]) -> Result<bool> {
    for (v, &d) in ambient.dims().iter().enumerate() {
        let mut blocks = Vec::with_capacity(parts.len());
        for p in parts {
            let s = p.spans.get(v).ok_or_else(|| Error::DimensionMismatch("subspace family misses a vertex".into()))?;
            if s.rows() != d || s.field() != ambient.field() {
                return Err(Error::DimensionMismatch(format!(
                    "subspace at vertex {v} does not live in a space of dimension {d}"
                )));
            }
            blocks.push(s.clone());
        }
        let all = Matrix::hstack(ambient.field(), d, &blocks)?;
        if all.cols() != d || linalg::rank(&all) != d {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn complementary_lines() {
        let q = Field::Rational;
        let m = Representation::projective(Arc::new(Quiver::kronecker()), q, 1);
        let whole = SubspaceFamily { spans: vec![Matrix::zeros(q, 0, 0), Matrix::identity(q, 1)] };
        let none = SubspaceFamily { spans: vec![Matrix::zeros(q, 0, 0), Matrix::zeros(q, 1, 0)] };
        assert!(certify_direct_sum(&m, &[whole.clone(), none]).unwrap());
        assert!(!certify_direct_sum(&m, &[whole.clone(), whole]).unwrap());
    }
}
