use crate::error::Result;
use crate::linalg::{sparse_rank, sparse_rref, Matrix, Scalar};
use crate::rep::{Morphism, Representation};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in this basis; `None` if `f` is not a morphism between the same ends.
    pub fn coordinates(&self, f: &Morphism) -> Result<Option<Vec<Scalar>>> {
        let field = self.source.field();
        let n = f.to_vector().len();
        let columns: Vec<Vec<Scalar>> = self.basis.iter().map(Morphism::to_vector).collect();
        let a = Matrix::from_fn(field, n, columns.len(), |i, j| columns[j][i].clone());
        crate::linalg::solve(&a, &f.to_vector())
    }
}

/// Offsets of each vertex block in the unknown vector `(f_v)_v`, each block row-major.
fn offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for v in 0..m.dims().len() {
        off.push(total);
        total += n.dim(v) * m.dim(v);
    }
    (off, total)
}

/// Rows of the linear system `f_t φ^M_a = φ^N_a f_s` over all arrows `a: s → t`.
fn system(m: &Representation, n: &Representation) -> (Vec<Vec<(usize, Scalar)>>, usize) {
    let (off, total) = offsets(m, n);
    let mut rows = Vec::new();
    for (ai, a) in m.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let phi_m = m.map(ai);
        let phi_n = n.map(ai);
        let col_nz: Vec<Vec<(usize, &Scalar)>> = (0..m.dim(s))
            .map(|j| (0..m.dim(t)).map(|k| (k, phi_m.get(k, j))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        let row_nz: Vec<Vec<(usize, &Scalar)>> = (0..n.dim(t))
            .map(|i| (0..n.dim(s)).map(|k| (k, phi_n.get(i, k))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        for i in 0..n.dim(t) {
            for j in 0..m.dim(s) {
                let mut row = Vec::with_capacity(col_nz[j].len() + row_nz[i].len());
                for &(k, v) in &col_nz[j] {
                    row.push((off[t] + i * m.dim(t) + k, v.clone()));
                }
                for &(k, v) in &row_nz[i] {
                    row.push((off[s] + k * m.dim(s) + j, -v));
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    (rows, total)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    let (rows, total) = system(m, n);
    Ok(total - sparse_rank(m.field(), total, rows))
}

/// Basis of `Hom(m, n)` from the reduced null space of the commutation system, unknowns
/// ordered vertex by vertex and row-major within each vertex.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomBasis> {
    m.check_compatible(n)?;
    let (rows, total) = system(m, n);
    let kernel = sparse_rref(m.field(), total, rows).kernel_basis();
    let (off, _) = offsets(m, n);
    let field = m.field();
    let basis = (0..kernel.cols())
        .map(|k| {
            let comps = (0..m.dims().len())
                .map(|v| {
                    Matrix::from_fn(field, n.dim(v), m.dim(v), |i, j| kernel.get(off[v] + i * m.dim(v) + j, k).clone())
                })
                .collect();
            Morphism::new_unchecked(m.clone(), n.clone(), comps)
        })
        .collect();
    Ok(HomBasis { source: m.clone(), target: n.clone(), basis })
}
