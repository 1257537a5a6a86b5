use serde::Serialize;

use crate::ar::same_class;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{direct_sum, hom_basis, hom_dim, kernel, HomBasis, Morphism, Representation};

/// The evaluation map `M ⊗ Hom(M, N) → N` with `M ⊗ Hom(M, N)` realised as `M^h`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub basis: HomBasis,
    pub domain: Representation,
    pub map: Morphism,
}

/// `ev_x = [f_1,x | ... | f_h,x]` for the computed basis `f_1, ..., f_h`.
pub fn evaluation_morphism(m: &Representation, n: &Representation) -> Result<Evaluation> {
    let basis = hom_basis(m, n)?;
    let h = basis.dim();
    let domain = m.power(h);
    let field = m.field();
    let comps = (0..m.dims().len())
        .map(|v| {
            let blocks: Vec<Matrix> = basis.basis.iter().map(|f| f.comp(v).clone()).collect();
            Matrix::hstack(field, n.dim(v), &blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = Morphism::new_unchecked(domain.clone(), n.clone(), comps);
    Ok(Evaluation { basis, domain, map })
}

/// `ker ev[M][N]` with its inclusion into `M ⊗ Hom(M, N)`.
pub fn ev_kernel(m: &Representation, n: &Representation) -> Result<(Representation, Morphism)> {
    kernel(&evaluation_morphism(m, n)?.map)
}

/// Outcome of checking how the evaluation map splits over direct-sum decompositions
/// `M = ⊕ M_i`, `N = ⊕ N_j`.
///
/// `ev[M][N]` vanishes on the cross terms `M_j ⊗ Hom(M_i, N)` with `j ≠ i`, so
/// `ker ev[M][N] ≅ ker[ev[M_1][N] | ... | ev[M_n][N]] ⊕ C` with `C = ⊕_{i ≠ j} M_j ⊗ Hom(M_i, N)`.
/// The `literal_*` fields test the splitting without `C`, which holds exactly when `C = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    /// `dim Hom(⊕M_i, N) = Σ dim Hom(M_i, N)`.
    pub hom_additive: bool,
    /// `M ⊗ Hom(M, N)` and `⊕ M_i ⊗ Hom(M_i, N)` have the same dimension vector.
    pub literal_source_split: bool,
    /// `ker ev[M][N] ≅ ker[ev[M_1][N] | ... | ev[M_n][N]] ⊕ C`.
    pub source_split: bool,
    /// Whether `Hom(M_i, N_j) = 0` for all `i ≠ j` (only meaningful for equal-length lists).
    pub cross_homs_vanish: Option<bool>,
    /// With vanishing cross Homs, `ker ev[M][N] ≅ ⊕ ker ev[M_i][N_i]`.
    pub literal_full_split: Option<bool>,
    /// With vanishing cross Homs, `ker ev[M][N] ≅ ⊕ ker ev[M_i][N_i] ⊕ C`.
    pub full_split: Option<bool>,
    /// False when some comparison used only the invariants test outside the Kronecker quiver.
    pub certain: bool,
    pub kernel_dims: Vec<usize>,
    pub cross_term_dims: Vec<usize>,
}

fn sum_of(like: &Representation, parts: Vec<Representation>) -> Result<Representation> {
    let parts: Vec<_> = parts.into_iter().filter(|p| !p.is_zero()).collect();
    if parts.is_empty() {
        return Ok(Representation::zero(like.quiver().clone(), like.field()));
    }
    Ok(direct_sum(&parts)?.sum)
}

pub fn ev_additivity_split(ms: &[Representation], ns: &[Representation]) -> Result<SplitReport> {
    if ms.is_empty() || ns.is_empty() {
        return Err(Error::DimensionMismatch("empty summand list".into()));
    }
    let m = direct_sum(ms)?.sum;
    let n = direct_sum(ns)?.sum;
    let whole = evaluation_morphism(&m, &n)?;
    let (ker, _) = kernel(&whole.map)?;
    let mut certain = true;

    let hs = ms.iter().map(|mi| hom_dim(mi, &n)).collect::<Result<Vec<_>>>()?;
    let hom_additive = hs.iter().sum::<usize>() == whole.basis.dim();
    let cross = sum_of(
        &m,
        (0..ms.len())
            .flat_map(|i| (0..ms.len()).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| ms[j].power(hs[i]))
            .collect(),
    )?;
    let literal_source_split = cross.is_zero();
    let parts = ms.iter().map(|mi| evaluation_morphism(mi, &n)).collect::<Result<Vec<_>>>()?;
    let summed_domain = sum_of(&m, parts.iter().map(|e| e.domain.clone()).collect())?;
    let comps = (0..m.dims().len())
        .map(|v| {
            let blocks: Vec<Matrix> = parts.iter().map(|e| e.map.comp(v).clone()).collect();
            Matrix::hstack(m.field(), n.dim(v), &blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    let (kernels, _) = kernel(&Morphism::new(summed_domain, n.clone(), comps)?)?;
    let (source_split, sure) = same_class(&ker, &sum_of(&m, vec![kernels, cross.clone()])?)?;
    certain &= sure;

    let (cross_homs_vanish, literal_full_split, full_split) = if ms.len() == ns.len() {
        let mut vanish = true;
        for (i, mi) in ms.iter().enumerate() {
            for (j, nj) in ns.iter().enumerate() {
                if i != j && hom_dim(mi, nj)? != 0 {
                    vanish = false;
                }
            }
        }
        if vanish {
            let pieces = ms.iter().zip(ns).map(|(mi, ni)| Ok(ev_kernel(mi, ni)?.0)).collect::<Result<Vec<_>>>()?;
            let diagonal = sum_of(&m, pieces)?;
            let (literal, s1) = same_class(&ker, &diagonal)?;
            let (full, s2) = same_class(&ker, &sum_of(&m, vec![diagonal, cross.clone()])?)?;
            certain &= s1 && s2;
            (Some(true), Some(literal), Some(full))
        } else {
            (Some(false), None, None)
        }
    } else {
        (None, None, None)
    };
    Ok(SplitReport {
        hom_additive,
        literal_source_split,
        source_split,
        cross_homs_vanish,
        literal_full_split,
        full_split,
        certain,
        kernel_dims: ker.dims().to_vec(),
        cross_term_dims: cross.dims().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::{make_indec, IndecLabel};
    use crate::linalg::Field;

    fn reps(names: &[&str]) -> Vec<Representation> {
        let q = Field::Rational;
        names.iter().map(|s| make_indec(q, &IndecLabel::parse_quiet(q, s).unwrap()).unwrap()).collect()
    }

    #[test]
    fn source_split_keeps_cross_terms() {
        // P1 ⊗ Hom(P1⊕P1, P2) is P1^8, twice the literal prediction P1^4
        let r = ev_additivity_split(&reps(&["P1", "P1"]), &reps(&["P2"])).unwrap();
        assert!(r.hom_additive && r.source_split && r.certain);
        assert!(!r.literal_source_split);
        assert_eq!(r.cross_term_dims, vec![4, 8]);
        assert_eq!(r.kernel_dims, vec![6, 13]);
        assert_eq!(r.cross_homs_vanish, None);
    }

    #[test]
    fn regular_blocks_split_fully_up_to_cross_terms() {
        let r = ev_additivity_split(&reps(&["R1@0", "R1@1"]), &reps(&["R2@0", "R2@1"])).unwrap();
        assert_eq!(r.cross_homs_vanish, Some(true));
        assert_eq!(r.full_split, Some(true));
        assert_eq!(r.literal_full_split, Some(false));
        assert_eq!(r.kernel_dims, vec![2, 2]);
    }

    #[test]
    fn nonvanishing_cross_homs_leave_only_the_source_split() {
        let r = ev_additivity_split(&reps(&["P1", "P2"]), &reps(&["P1", "P2"])).unwrap();
        assert_eq!(r.cross_homs_vanish, Some(false));
        assert_eq!(r.full_split, None);
        assert!(r.source_split);
    }

    #[test]
    fn single_summands_split_literally() {
        let r = ev_additivity_split(&reps(&["R2@0"]), &reps(&["R2@0"])).unwrap();
        assert!(r.literal_source_split && r.literal_full_split == Some(true) && r.full_split == Some(true));
    }
}
