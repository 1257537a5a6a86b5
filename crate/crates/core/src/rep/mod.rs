//! Representations, morphisms and the basic constructions on them.

mod ev;
mod hom;
mod ops;
mod recognition;

use std::sync::Arc;

pub use ev::{ev_additivity_split, ev_kernel, evaluation_morphism, Evaluation, SplitReport};
pub use hom::{hom_basis, hom_dim, HomBasis};
pub use ops::{cokernel, direct_sum, image, kernel, subrepresentation, DirectSum};
pub use recognition::{certify_direct_sum, SubspaceFamily};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Path, Quiver};

/// A vector space per vertex and a matrix of shape `dims[target] x dims[source]` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!("{} maps for {} arrows", maps.len(), quiver.arrows().len())));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "map for `{}` is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Representation { quiver, field, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation { quiver, field, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Map of `name`, looked up by arrow name.
    pub fn map_named(&self, name: &str) -> Result<&Matrix> {
        Ok(&self.maps[self.quiver.arrow_index(name)?])
    }

    /// Same quiver (by value) and same field.
    pub fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && *self.quiver != *other.quiver {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// Composite of the arrow maps along `path`.
    pub fn path_map(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[path.source]);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m).expect("composable path");
        }
        m
    }

    /// `P(x)`: basis the paths starting at `x`.
    pub fn projective(quiver: Arc<Quiver>, field: Field, x: usize) -> Self {
        let dims: Vec<usize> = (0..quiver.vertex_count()).map(|y| quiver.paths(x, y).len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (j, p) in quiver.paths(x, a.source).iter().enumerate() {
                    let mut longer = p.arrows.clone();
                    longer.push(ai);
                    let i = quiver.path_index(x, &longer).expect("extended path exists");
                    m.set(i, j, field.one());
                }
                m
            })
            .collect();
        Representation { quiver, field, dims, maps }
    }

    /// `I(x)`: basis the paths ending at `x`; an arrow strips itself off the front of a path.
    pub fn injective(quiver: Arc<Quiver>, field: Field, x: usize) -> Self {
        let dims: Vec<usize> = (0..quiver.vertex_count()).map(|y| quiver.paths(y, x).len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (j, p) in quiver.paths(a.source, x).iter().enumerate() {
                    if p.arrows.first() == Some(&ai) {
                        let i = quiver.path_index(a.target, &p.arrows[1..]).expect("suffix path exists");
                        m.set(i, j, field.one());
                    }
                }
                m
            })
            .collect();
        Representation { quiver, field, dims, maps }
    }

    /// `self ⊗ k^d`, indexed with the basis of `self` major and `k^d` minor.
    pub fn tensor_space(&self, d: usize) -> Self {
        let id = Matrix::identity(self.field, d);
        let dims = self.dims.iter().map(|n| n * d).collect();
        let maps = self.maps.iter().map(|m| m.kron(&id).expect("same field")).collect();
        Representation { quiver: self.quiver.clone(), field: self.field, dims, maps }
    }

    /// `self^h` as a direct sum of `h` copies, copy index major.
    pub fn power(&self, h: usize) -> Self {
        let id = Matrix::identity(self.field, h);
        let dims = self.dims.iter().map(|n| n * h).collect();
        let maps = self.maps.iter().map(|m| id.kron(m).expect("same field")).collect();
        Representation { quiver: self.quiver.clone(), field: self.field, dims, maps }
    }

    /// Vector-space dual over the opposite quiver.
    pub fn dual(&self) -> Self {
        let quiver = Arc::new(self.quiver.opposite());
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation { quiver, field: self.field, dims: self.dims.clone(), maps }
    }

    /// Dual over a given quiver, which must be the opposite of this one.
    pub(crate) fn dual_over(&self, quiver: Arc<Quiver>) -> Self {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation { quiver, field: self.field, dims: self.dims.clone(), maps }
    }

    /// Changes basis at every vertex by the given invertible matrices.
    pub fn change_basis(&self, g: &[Matrix]) -> Result<Self> {
        let inverses = g
            .iter()
            .map(|m| {
                crate::linalg::solve_matrix(m, &Matrix::identity(self.field, m.rows()))?
                    .ok_or_else(|| Error::DimensionMismatch("change of basis is not invertible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m)?.mul(&inverses[a.source]))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
    }

    pub fn max_bit_size(&self) -> u64 {
        self.maps.iter().map(Matrix::max_bit_size).max().unwrap_or(0)
    }
}

/// A family of vertex maps commuting with every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    comps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, comps: Vec<Matrix>) -> Result<Self> {
        source.check_compatible(&target)?;
        if comps.len() != source.dims.len() {
            return Err(Error::DimensionMismatch("one component per vertex expected".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.field() != source.field {
                return Err(Error::FieldMismatch(source.field.to_string(), c.field().to_string()));
            }
            if c.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::DimensionMismatch(format!(
                    "component at `{}` is {}x{}, expected {}x{}",
                    source.quiver.vertices()[v],
                    c.rows(),
                    c.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        let f = Morphism { source, target, comps };
        if let Some(a) = f.failing_arrow() {
            return Err(Error::NotMorphism(f.source.quiver.arrow(a).name.clone()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, comps: Vec<Matrix>) -> Self {
        let f = Morphism { source, target, comps };
        debug_assert!(f.failing_arrow().is_none(), "constructed map is not a morphism");
        f
    }

    fn failing_arrow(&self) -> Option<usize> {
        self.source.quiver.arrows().iter().enumerate().find_map(|(ai, a)| {
            let left = self.comps[a.target].mul(&self.source.maps[ai]).expect("shapes checked");
            let right = self.target.maps[ai].mul(&self.comps[a.source]).expect("shapes checked");
            (left != right).then_some(ai)
        })
    }

    pub fn identity(m: &Representation) -> Self {
        let comps = m.dims.iter().map(|&n| Matrix::identity(m.field, n)).collect();
        Morphism { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let comps = source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(source.field, t, s)).collect();
        Morphism { source: source.clone(), target: target.clone(), comps }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.target {
            return Err(Error::DimensionMismatch("composition of non-composable morphisms".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: other.source.clone(), target: self.target.clone(), comps })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("sum of morphisms with different ends".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn scale(&self, c: &crate::linalg::Scalar) -> Morphism {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| crate::linalg::rank(c) == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| crate::linalg::rank(c) == c.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols()) && self.is_injective()
    }

    /// Components flattened vertex by vertex, each row-major.
    pub fn to_vector(&self) -> Vec<crate::linalg::Scalar> {
        self.comps.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron() -> Arc<Quiver> {
        Arc::new(Quiver::kronecker())
    }

    #[test]
    fn kronecker_projectives_and_injectives() {
        let q = Field::Rational;
        let px = Representation::projective(kron(), q, 0);
        assert_eq!(px.dims(), &[1, 2]);
        assert_eq!(px.map(0), &Matrix::from_ints(q, &[&[1], &[0]]));
        assert_eq!(px.map(1), &Matrix::from_ints(q, &[&[0], &[1]]));
        let iy = Representation::injective(kron(), q, 1);
        assert_eq!(iy.dims(), &[2, 1]);
        assert_eq!(iy.map(0), &Matrix::from_ints(q, &[&[1, 0]]));
        assert_eq!(iy.map(1), &Matrix::from_ints(q, &[&[0, 1]]));
        assert_eq!(Representation::projective(kron(), q, 1).dims(), &[0, 1]);
        assert_eq!(Representation::injective(kron(), q, 0).dims(), &[1, 0]);
    }

    #[test]
    fn shape_validation() {
        let q = Field::Rational;
        let bad = Representation::new(kron(), q, vec![1, 2], vec![Matrix::zeros(q, 2, 1), Matrix::zeros(q, 1, 2)]);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn non_commuting_square_rejected() {
        let q = Field::Rational;
        let p = Representation::projective(kron(), q, 0);
        let comps = vec![Matrix::identity(q, 1), Matrix::zeros(q, 2, 2)];
        assert!(matches!(Morphism::new(p.clone(), p, comps), Err(Error::NotMorphism(_))));
    }

    #[test]
    fn dual_of_projective_is_injective_of_opposite() {
        let q = Field::Rational;
        let p = Representation::projective(kron(), q, 0);
        let d = p.dual();
        let inj = Representation::injective(d.quiver().clone(), q, 0);
        assert_eq!(d, inj);
    }
}
