use crate::ar::resolution::{block_offsets, injective_sum, minimal_projective_resolution, zero_or_sum};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rep::{kernel, Morphism, Representation};

/// `τM` together with its embedding into `⊕_a I(ta) ⊗ M_sa`.
#[derive(Clone, Debug)]
pub struct TauResult {
    pub translate: Representation,
    pub embedding: Morphism,
}

/// `⊕_a I(ta) ⊗ M_sa`, arrow blocks in order, path index major within a block.
fn ambient(m: &Representation) -> Result<Representation> {
    let q = m.quiver();
    let parts: Vec<Representation> = q
        .arrows()
        .iter()
        .map(|a| Representation::injective(q.clone(), m.field(), a.target).tensor_space(m.dim(a.source)))
        .collect();
    zero_or_sum(q, m.field(), &parts)
}

/// Nakayama image of the standard resolution map: `⊕_a I(ta)⊗M_sa → ⊕_x I(x)⊗M_x`.
fn nakayama_of_standard(m: &Representation) -> Result<Morphism> {
    let q = m.quiver().clone();
    let field = m.field();
    let nv = q.vertex_count();
    let source = ambient(m)?;
    let parts: Vec<Representation> =
        (0..nv).map(|x| Representation::injective(q.clone(), field, x).tensor_space(m.dim(x))).collect();
    let target = zero_or_sum(&q, field, &parts)?;
    let arrows = q.arrows();
    let mut comps = Vec::with_capacity(nv);
    for z in 0..nv {
        let row_off = block_offsets((0..nv).map(|x| q.paths(z, x).len() * m.dim(x)));
        let col_off = block_offsets(arrows.iter().map(|a| q.paths(z, a.target).len() * m.dim(a.source)));
        let mut c = Matrix::zeros(field, target.dim(z), source.dim(z));
        for (ai, a) in arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ds, dt) = (m.dim(s), m.dim(t));
            let phi = m.map(ai);
            for (i, p) in q.paths(z, t).iter().enumerate() {
                if p.arrows.last() == Some(&ai) {
                    let i2 = q.path_index(z, &p.arrows[..p.len() - 1]).expect("prefix path");
                    for k in 0..ds {
                        c.set(row_off[s] + i2 * ds + k, col_off[ai] + i * ds + k, field.one());
                    }
                }
                for r in 0..dt {
                    for k in 0..ds {
                        let val = phi.get(r, k);
                        if !val.is_zero() {
                            c.set(row_off[t] + i * dt + r, col_off[ai] + i * ds + k, -val);
                        }
                    }
                }
            }
        }
        comps.push(c);
    }
    Morphism::new(source, target, comps)
}

/// Auslander-Reiten translate as the kernel of the Nakayama image of the standard resolution.
pub fn tau(m: &Representation) -> Result<TauResult> {
    let (translate, embedding) = kernel(&nakayama_of_standard(m)?)?;
    Ok(TauResult { translate, embedding })
}

/// `τM` computed from the minimal projective resolution: the kernel of `ν d1`.
pub fn tau_via_minimal_resolution(m: &Representation) -> Result<Representation> {
    let res = minimal_projective_resolution(m)?;
    let nu = res.d1.nakayama(m.quiver())?;
    debug_assert_eq!(nu.source(), &injective_sum(m.quiver(), m.field(), &res.p1)?);
    Ok(kernel(&nu)?.0)
}

/// Inverse translate, obtained by dualising, translating over the opposite quiver and dualising back.
pub fn tau_inverse(m: &Representation) -> Result<Representation> {
    let t = tau(&m.dual())?.translate;
    Ok(t.dual_over(m.quiver().clone()))
}

/// `τ^k M` for any integer `k`; negative powers use the inverse translate.
pub fn tau_power(m: &Representation, k: i64) -> Result<Representation> {
    let mut cur = m.clone();
    for _ in 0..k.unsigned_abs() {
        if cur.is_zero() {
            break;
        }
        cur = if k > 0 { tau(&cur)?.translate } else { tau_inverse(&cur)? };
    }
    Ok(cur)
}

/// `τf` between given translates: the restriction of `⊕_a 1 ⊗ f_sa` to the embedded kernels.
pub fn tau_morphism_between(f: &Morphism, tm: &TauResult, tn: &TauResult) -> Result<Morphism> {
    let m = f.source();
    let q = m.quiver().clone();
    let field = m.field();
    let mut comps = Vec::with_capacity(q.vertex_count());
    for z in 0..q.vertex_count() {
        let blocks = q
            .arrows()
            .iter()
            .map(|a| Matrix::identity(field, q.paths(z, a.target).len()).kron(f.comp(a.source)))
            .collect::<Result<Vec<_>>>()?;
        let amb = Matrix::block_diag(field, &blocks)?;
        let pushed = amb.mul(tm.embedding.comp(z))?;
        let coords = linalg::solve_matrix(tn.embedding.comp(z), &pushed)?
            .ok_or_else(|| Error::Internal("translated map leaves the translate".into()))?;
        comps.push(coords);
    }
    Morphism::new(tm.translate.clone(), tn.translate.clone(), comps)
}

pub fn tau_morphism(f: &Morphism) -> Result<Morphism> {
    let tm = tau(f.source())?;
    let tn = tau(f.target())?;
    tau_morphism_between(f, &tm, &tn)
}

/// Isomorphism `(τM)^h → τ(M^h)` induced by regrouping `⊕_i ⊕_a I(ta) ⊗ M_sa` into
/// `⊕_a I(ta) ⊗ (M^h)_sa`.
pub(crate) fn power_identification(m: &Representation, tm: &TauResult, h: usize, tmh: &TauResult) -> Result<Morphism> {
    let q = m.quiver().clone();
    let field = m.field();
    let arrows = q.arrows();
    let mut comps = Vec::with_capacity(q.vertex_count());
    for z in 0..q.vertex_count() {
        let sizes: Vec<(usize, usize)> = arrows.iter().map(|a| (q.paths(z, a.target).len(), m.dim(a.source))).collect();
        let single = block_offsets(sizes.iter().map(|(p, d)| p * d));
        let single_total: usize = sizes.iter().map(|(p, d)| p * d).sum();
        let grouped = block_offsets(sizes.iter().map(|(p, d)| p * d * h));
        let mut perm = Matrix::zeros(field, single_total * h, single_total * h);
        for copy in 0..h {
            for (ai, &(np, d)) in sizes.iter().enumerate() {
                for path in 0..np {
                    for k in 0..d {
                        let from = copy * single_total + single[ai] + path * d + k;
                        let to = grouped[ai] + path * d * h + copy * d + k;
                        perm.set(to, from, field.one());
                    }
                }
            }
        }
        let copies = vec![tm.embedding.comp(z).clone(); h];
        let stacked = perm.mul(&Matrix::block_diag(field, &copies)?)?;
        let coords = linalg::solve_matrix(tmh.embedding.comp(z), &stacked)?
            .ok_or_else(|| Error::Internal("copies of the translate do not embed".into()))?;
        comps.push(coords);
    }
    Morphism::new(tm.translate.power(h), tmh.translate.clone(), comps)
}
