use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rep::{Morphism, Representation};

/// Subrepresentation spanned by the columns of `bases[v]` (each of full column rank),
/// together with its inclusion.
pub fn subrepresentation(m: &Representation, bases: Vec<Matrix>) -> Result<(Representation, Morphism)> {
    let quiver = m.quiver().clone();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let image = m.map(ai).mul(&bases[a.source])?;
            linalg::solve_matrix(&bases[a.target], &image)?.ok_or_else(|| Error::NotSubrepresentation(a.name.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = Representation::new(quiver, m.field(), dims, maps)?;
    let inclusion = Morphism::new_unchecked(sub.clone(), m.clone(), bases);
    Ok((sub, inclusion))
}

/// Kernel with its inclusion; bases are the reduced null-space bases of each component.
pub fn kernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let bases = f.comps().iter().map(linalg::kernel_basis).collect();
    subrepresentation(f.source(), bases)
}

/// Image with its inclusion into the target; bases are pivot columns of each component.
pub fn image(f: &Morphism) -> Result<(Representation, Morphism)> {
    let bases = f.comps().iter().map(linalg::column_space).collect();
    subrepresentation(f.target(), bases)
}

/// Cokernel with its projection from the target.
pub fn cokernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let n = f.target();
    let field = n.field();
    let proj: Vec<Matrix> = f.comps().iter().map(|c| linalg::kernel_basis(&c.transpose()).transpose()).collect();
    let sections = proj
        .iter()
        .map(|p| {
            linalg::solve_matrix(p, &Matrix::identity(field, p.rows()))?
                .ok_or_else(|| Error::Internal("quotient map is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = n
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| proj[a.target].mul(n.map(ai))?.mul(&sections[a.source]))
        .collect::<Result<Vec<_>>>()?;
    let quotient = Representation::new(n.quiver().clone(), field, dims, maps)?;
    let projection = Morphism::new(n.clone(), quotient.clone(), proj)?;
    Ok((quotient, projection))
}

/// Direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(parts: &[Representation]) -> Result<DirectSum> {
    let first = parts.first().ok_or_else(|| Error::DimensionMismatch("direct sum of no summands".into()))?;
    for p in parts {
        first.check_compatible(p)?;
    }
    let quiver = first.quiver().clone();
    let field = first.field();
    let nv = quiver.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim(v)).sum()).collect();
    let maps = (0..quiver.arrows().len())
        .map(|a| Matrix::block_diag(field, &parts.iter().map(|p| p.map(a).clone()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let sum = Representation::new(quiver, field, dims.clone(), maps)?;
    let mut offsets = vec![0usize; nv];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut pro = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = Matrix::zeros(field, dims[v], p.dim(v));
            i.paste(offsets[v], 0, &Matrix::identity(field, p.dim(v)));
            pro.push(i.transpose());
            inj.push(i);
            offsets[v] += p.dim(v);
        }
        injections.push(Morphism::new_unchecked(p.clone(), sum.clone(), inj));
        projections.push(Morphism::new_unchecked(sum.clone(), p.clone(), pro));
    }
    Ok(DirectSum { sum, injections, projections })
}
