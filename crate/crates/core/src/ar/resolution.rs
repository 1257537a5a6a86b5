use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Field, Matrix, Scalar};
use crate::quiver::{Path, Quiver};
use crate::rep::{kernel, Morphism, Representation};

pub(crate) fn zero_or_sum(quiver: &Arc<Quiver>, field: Field, parts: &[Representation]) -> Result<Representation> {
    if parts.is_empty() {
        Ok(Representation::zero(quiver.clone(), field))
    } else {
        Ok(crate::rep::direct_sum(parts)?.sum)
    }
}

/// Caches the matrices `φ_p` of every path of a representation.
pub(crate) struct PathMaps<'a> {
    rep: &'a Representation,
    cache: HashMap<(usize, Vec<usize>), Matrix>,
}

impl<'a> PathMaps<'a> {
    pub(crate) fn new(rep: &'a Representation) -> Self {
        PathMaps { rep, cache: HashMap::new() }
    }

    pub(crate) fn get(&mut self, p: &Path) -> &Matrix {
        let key = (p.source, p.arrows.clone());
        if !self.cache.contains_key(&key) {
            let m = self.rep.path_map(p);
            self.cache.insert(key.clone(), m);
        }
        &self.cache[&key]
    }
}

/// The functorial resolution `0 → ⊕_a P(ta)⊗M_sa → ⊕_x P(x)⊗M_x → M → 0` with
/// `u(p⊗m) = pa⊗m − p⊗φ_a(m)` and `v(p⊗m) = φ_p(m)`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    pub p1: Representation,
    pub p0: Representation,
    pub u: Morphism,
    pub v: Morphism,
}

pub fn standard_resolution(m: &Representation) -> Result<StandardResolution> {
    let q = m.quiver().clone();
    let field = m.field();
    let nv = q.vertex_count();
    let arrows = q.arrows();
    let p1_parts: Vec<Representation> = arrows
        .iter()
        .map(|a| Representation::projective(q.clone(), field, a.target).tensor_space(m.dim(a.source)))
        .collect();
    let p0_parts: Vec<Representation> =
        (0..nv).map(|x| Representation::projective(q.clone(), field, x).tensor_space(m.dim(x))).collect();
    let p1 = zero_or_sum(&q, field, &p1_parts)?;
    let p0 = zero_or_sum(&q, field, &p0_parts)?;

    let mut maps = PathMaps::new(m);
    let mut u_comps = Vec::with_capacity(nv);
    let mut v_comps = Vec::with_capacity(nv);
    for z in 0..nv {
        let row_off = block_offsets((0..nv).map(|x| q.paths(x, z).len() * m.dim(x)));
        let col_off = block_offsets(arrows.iter().map(|a| q.paths(a.target, z).len() * m.dim(a.source)));
        let mut u = Matrix::zeros(field, p0.dim(z), p1.dim(z));
        for (ai, a) in arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ds, dt) = (m.dim(s), m.dim(t));
            for (i, p) in q.paths(t, z).iter().enumerate() {
                let mut longer = vec![ai];
                longer.extend_from_slice(&p.arrows);
                let i2 = q.path_index(s, &longer).expect("path through the arrow");
                for k in 0..ds {
                    u.set(row_off[s] + i2 * ds + k, col_off[ai] + i * ds + k, field.one());
                }
                let phi = m.map(ai);
                for r in 0..dt {
                    for c in 0..ds {
                        let val = phi.get(r, c);
                        if !val.is_zero() {
                            u.set(row_off[t] + i * dt + r, col_off[ai] + i * ds + c, -val);
                        }
                    }
                }
            }
        }
        u_comps.push(u);
        let mut v = Matrix::zeros(field, m.dim(z), p0.dim(z));
        for x in 0..nv {
            for (i, p) in q.paths(x, z).iter().enumerate() {
                v.paste(0, row_off[x] + i * m.dim(x), maps.get(p));
            }
        }
        v_comps.push(v);
    }
    let u = Morphism::new(p1.clone(), p0.clone(), u_comps)?;
    let v = Morphism::new(p0.clone(), m.clone(), v_comps)?;
    Ok(StandardResolution { p1, p0, u, v })
}

pub(crate) fn block_offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// A morphism `⊕_i P(source[i]) → ⊕_j P(target[j])`; `coeffs[j][i]` holds the coefficients of
/// the image of the i-th generator on the paths from `target[j]` to `source[i]`.
#[derive(Clone, Debug)]
pub struct ProjectiveMap {
    pub field: Field,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub coeffs: Vec<Vec<Vec<Scalar>>>,
}

/// `⊕_i P(summands[i])`, summand index major and path index minor.
pub fn projective_sum(quiver: &Arc<Quiver>, field: Field, summands: &[usize]) -> Result<Representation> {
    let parts: Vec<Representation> =
        summands.iter().map(|&x| Representation::projective(quiver.clone(), field, x)).collect();
    zero_or_sum(quiver, field, &parts)
}

/// `⊕_i I(summands[i])`, summand index major and path index minor.
pub fn injective_sum(quiver: &Arc<Quiver>, field: Field, summands: &[usize]) -> Result<Representation> {
    let parts: Vec<Representation> =
        summands.iter().map(|&x| Representation::injective(quiver.clone(), field, x)).collect();
    zero_or_sum(quiver, field, &parts)
}

impl ProjectiveMap {
    /// The morphism of representations sending `q·g_i` to `Σ c·(p then q)` on the summand `j`.
    pub fn realize(&self, quiver: &Arc<Quiver>) -> Result<Morphism> {
        let src = projective_sum(quiver, self.field, &self.source)?;
        let tgt = projective_sum(quiver, self.field, &self.target)?;
        let nv = quiver.vertex_count();
        let mut comps = Vec::with_capacity(nv);
        for z in 0..nv {
            let s_off = block_offsets(self.source.iter().map(|&y| quiver.paths(y, z).len()));
            let t_off = block_offsets(self.target.iter().map(|&x| quiver.paths(x, z).len()));
            let mut c = Matrix::zeros(self.field, tgt.dim(z), src.dim(z));
            for (i, &y) in self.source.iter().enumerate() {
                for (qi, qpath) in quiver.paths(y, z).iter().enumerate() {
                    for (j, &x) in self.target.iter().enumerate() {
                        for (pi, p) in quiver.paths(x, y).iter().enumerate() {
                            let coeff = &self.coeffs[j][i][pi];
                            if coeff.is_zero() {
                                continue;
                            }
                            let mut arrows = p.arrows.clone();
                            arrows.extend_from_slice(&qpath.arrows);
                            let r = quiver.path_index(x, &arrows).expect("concatenated path");
                            let (row, col) = (t_off[j] + r, s_off[i] + qi);
                            let v = c.get(row, col) + coeff;
                            c.set(row, col, v);
                        }
                    }
                }
            }
            comps.push(c);
        }
        Morphism::new(src, tgt, comps)
    }

    /// Image under the Nakayama functor: `⊕ I(source[i]) → ⊕ I(target[j])`, where a path `p`
    /// acts by cancelling `p` from the end of paths ending at `source[i]`.
    pub fn nakayama(&self, quiver: &Arc<Quiver>) -> Result<Morphism> {
        let src = injective_sum(quiver, self.field, &self.source)?;
        let tgt = injective_sum(quiver, self.field, &self.target)?;
        let nv = quiver.vertex_count();
        let mut comps = Vec::with_capacity(nv);
        for z in 0..nv {
            let s_off = block_offsets(self.source.iter().map(|&y| quiver.paths(z, y).len()));
            let t_off = block_offsets(self.target.iter().map(|&x| quiver.paths(z, x).len()));
            let mut c = Matrix::zeros(self.field, tgt.dim(z), src.dim(z));
            for (i, &y) in self.source.iter().enumerate() {
                for (ci, cpath) in quiver.paths(z, y).iter().enumerate() {
                    for (j, &x) in self.target.iter().enumerate() {
                        for (pi, p) in quiver.paths(x, y).iter().enumerate() {
                            let coeff = &self.coeffs[j][i][pi];
                            if coeff.is_zero() || !cpath.arrows.ends_with(&p.arrows) {
                                continue;
                            }
                            let rest = &cpath.arrows[..cpath.len() - p.len()];
                            let r = quiver.path_index(z, rest).expect("prefix of a path is a path");
                            let (row, col) = (t_off[j] + r, s_off[i] + ci);
                            let v = c.get(row, col) + coeff;
                            c.set(row, col, v);
                        }
                    }
                }
            }
            comps.push(c);
        }
        Morphism::new(src, tgt, comps)
    }
}

/// `0 → P1 → P0 → M → 0` with `P0` the projective cover of `M`.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    /// Vertices of the indecomposable projective summands of `P1` and `P0`.
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub d1: ProjectiveMap,
    pub d1_morphism: Morphism,
    pub augmentation: Morphism,
}

impl ResolutionData {
    pub fn is_exact(&self) -> Result<bool> {
        let comp = self.augmentation.compose(&self.d1_morphism)?;
        let m = self.augmentation.target();
        let dims_ok = (0..m.dims().len())
            .all(|v| self.d1_morphism.source().dim(v) + m.dim(v) == self.augmentation.source().dim(v));
        Ok(comp.is_zero() && self.d1_morphism.is_injective() && self.augmentation.is_surjective() && dims_ok)
    }
}

/// Radical `Σ_{a: ta = x} im φ_a` with its inclusion.
pub fn radical(m: &Representation) -> Result<(Representation, Morphism)> {
    let bases = radical_bases(m)?;
    crate::rep::subrepresentation(m, bases)
}

fn radical_bases(m: &Representation) -> Result<Vec<Matrix>> {
    let q = m.quiver();
    (0..q.vertex_count())
        .map(|x| {
            let blocks: Vec<Matrix> =
                q.arrows().iter().enumerate().filter(|(_, a)| a.target == x).map(|(ai, _)| m.map(ai).clone()).collect();
            let all = Matrix::hstack(m.field(), m.dim(x), &blocks)?;
            Ok(linalg::column_space(&all))
        })
        .collect()
}

/// Dimensions of `top(M) = M / rad M`.
pub fn top_dims(m: &Representation) -> Result<Vec<usize>> {
    Ok(radical_bases(m)?.iter().zip(m.dims()).map(|(b, d)| d - b.cols()).collect())
}

fn top_generators(m: &Representation) -> Result<Vec<Matrix>> {
    radical_bases(m)?
        .iter()
        .zip(m.dims())
        .map(|(r, &d)| linalg::extend_basis(r, &Matrix::identity(m.field(), d)))
        .collect()
}

pub fn minimal_projective_resolution(m: &Representation) -> Result<ResolutionData> {
    let q = m.quiver().clone();
    let field = m.field();
    let nv = q.vertex_count();
    let gens = top_generators(m)?;
    let mut p0 = Vec::new();
    let mut gen_vectors = Vec::new();
    for (x, g) in gens.iter().enumerate() {
        for j in 0..g.cols() {
            p0.push(x);
            gen_vectors.push(g.select_columns(&[j]));
        }
    }
    let p0_rep = projective_sum(&q, field, &p0)?;
    let mut maps = PathMaps::new(m);
    let mut aug = Vec::with_capacity(nv);
    for z in 0..nv {
        let off = block_offsets(p0.iter().map(|&x| q.paths(x, z).len()));
        let mut c = Matrix::zeros(field, m.dim(z), p0_rep.dim(z));
        for (j, &x) in p0.iter().enumerate() {
            for (pi, p) in q.paths(x, z).iter().enumerate() {
                let col = maps.get(p).mul(&gen_vectors[j])?;
                c.paste(0, off[j] + pi, &col);
            }
        }
        aug.push(c);
    }
    let augmentation = Morphism::new(p0_rep.clone(), m.clone(), aug)?;

    let (k, inc) = kernel(&augmentation)?;
    let k_gens = top_generators(&k)?;
    let mut p1 = Vec::new();
    let mut images = Vec::new();
    for (y, g) in k_gens.iter().enumerate() {
        let in_p0 = inc.comp(y).mul(g)?;
        for j in 0..g.cols() {
            p1.push(y);
            images.push(in_p0.column(j));
        }
    }
    let coeffs = p0
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            p1.iter()
                .zip(&images)
                .map(|(&y, w)| {
                    let off = block_offsets(p0.iter().map(|&x2| q.paths(x2, y).len()));
                    (0..q.paths(x, y).len()).map(|pi| w[off[j] + pi].clone()).collect()
                })
                .collect()
        })
        .collect();
    let d1 = ProjectiveMap { field, source: p1.clone(), target: p0.clone(), coeffs };
    let d1_morphism = d1.realize(&q)?;
    let data = ResolutionData { p1, p0, d1, d1_morphism, augmentation };
    if !data.is_exact()? {
        return Err(Error::Internal("minimal projective resolution is not exact".into()));
    }
    Ok(data)
}
