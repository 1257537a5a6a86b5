use serde::Serialize;

use crate::ar::summands::{has_injective_summand, has_projective_summand};
use crate::ar::tau::{power_identification, tau, tau_morphism_between, tau_power};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{ev_kernel, evaluation_morphism, hom_basis, hom_dim, Morphism, Representation};

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub hom_dim: usize,
    pub translated_hom_dim: usize,
    /// The regrouping `(τM)^h → τ(M^h)` is an isomorphism of representations.
    pub identification_is_iso: bool,
    /// `ev[τM][τN] ∘ (1 ⊗ φ) = τ(ev[M][N])` under that identification.
    pub holds: bool,
}

/// Checks `ev[τM][τN] ∘ (1 ⊗ φ) = τ ev[M][N]`, where `φ: Hom(M, N) → Hom(τM, τN)` is `f ↦ τf`
/// and `τ ev` is computed on `τ(M ⊗ Hom(M, N))` independently of the factors.
pub fn verify_tev_triangle(m: &Representation, n: &Representation) -> Result<TriangleReport> {
    m.check_compatible(n)?;
    if has_projective_summand(m)? || has_projective_summand(n)? {
        return Err(Error::HypothesisViolation("both arguments must have no projective summands".into()));
    }
    let ev = evaluation_morphism(m, n)?;
    let h = ev.basis.dim();
    let tm = tau(m)?;
    let tn = tau(n)?;
    let translated = hom_basis(&tm.translate, &tn.translate)?;
    let hp = translated.dim();

    let field = m.field();
    let mut coeffs = Matrix::zeros(field, hp, h);
    for (i, f) in ev.basis.basis.iter().enumerate() {
        let tf = tau_morphism_between(f, &tm, &tn)?;
        let c = translated
            .coordinates(&tf)?
            .ok_or_else(|| Error::Internal("translated morphism outside the hom basis".into()))?;
        for (j, v) in c.into_iter().enumerate() {
            coeffs.set(j, i, v);
        }
    }
    let tm_h = tm.translate.power(h);
    let tm_hp = tm.translate.power(hp);
    let one_phi_comps = (0..m.dims().len())
        .map(|v| coeffs.kron(&Matrix::identity(field, tm.translate.dim(v))))
        .collect::<Result<Vec<_>>>()?;
    let one_phi = Morphism::new(tm_h.clone(), tm_hp, one_phi_comps)?;
    let ev_translated = evaluation_morphism(&tm.translate, &tn.translate)?;
    let lhs = ev_translated.map.compose(&one_phi)?;

    let t_domain = tau(&ev.domain)?;
    let t_ev = tau_morphism_between(&ev.map, &t_domain, &tn)?;
    let ident = power_identification(m, &tm, h, &t_domain)?;
    let identification_is_iso = ident.is_isomorphism();
    let rhs = t_ev.compose(&ident)?;
    Ok(TriangleReport {
        hom_dim: h,
        translated_hom_dim: hp,
        identification_is_iso,
        holds: identification_is_iso && lhs.comps() == rhs.comps(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub k: i64,
    pub lhs_dims: Vec<usize>,
    pub rhs_dims: Vec<usize>,
    /// `τ^k M` or `τ^k N` has a projective summand (`k > 0`) or an injective one (`k < 0`).
    pub boundary: bool,
    /// `ker ev[M][N]` has a summand sent to a projective (`k > 0`) or injective (`k < 0`) by
    /// one of `τ^0, …, τ^{k−1}`, so `τ^{-k}τ^k` cannot recover it.
    pub kernel_boundary: bool,
    pub holds: bool,
    /// False when isomorphism could only be compared through invariants.
    pub certain: bool,
}

/// Compares `ker ev[M][N]` with `τ^{-k} ker ev[τ^k M][τ^k N]`.
///
/// For `k > 0` both `τ^{k-1}M` and `τ^{k-1}N` must be nonzero without projective summands;
/// for `k < 0`, `τ^{k+1}M` and `τ^{k+1}N` must be nonzero without injective summands.
pub fn verify_kernel_translation(m: &Representation, n: &Representation, k: i64) -> Result<TranslationReport> {
    m.check_compatible(n)?;
    if k != 0 {
        let step = if k > 0 { k - 1 } else { k + 1 };
        for (name, x) in [("M", m), ("N", n)] {
            let shifted = tau_power(x, step)?;
            let bad = shifted.is_zero()
                || if k > 0 { has_projective_summand(&shifted)? } else { has_injective_summand(&shifted)? };
            if bad {
                return Err(Error::HypothesisViolation(format!(
                    "τ^{step}{name} is zero or has a {} summand",
                    if k > 0 { "projective" } else { "injective" }
                )));
            }
        }
    }
    let (lhs, _) = ev_kernel(m, n)?;
    let tm = tau_power(m, k)?;
    let tn = tau_power(n, k)?;
    let boundary = match k.signum() {
        1 => has_projective_summand(&tm)? || has_projective_summand(&tn)?,
        -1 => has_injective_summand(&tm)? || has_injective_summand(&tn)?,
        _ => false,
    };
    let mut kernel_boundary = false;
    let mut shifted = lhs.clone();
    for _ in 0..k.unsigned_abs() {
        kernel_boundary |= if k > 0 { has_projective_summand(&shifted)? } else { has_injective_summand(&shifted)? };
        shifted = tau_power(&shifted, k.signum())?;
    }
    let (inner, _) = ev_kernel(&tm, &tn)?;
    let rhs = tau_power(&inner, -k)?;
    let (holds, certain) = same_class(&lhs, &rhs)?;
    Ok(TranslationReport {
        k,
        lhs_dims: lhs.dims().to_vec(),
        rhs_dims: rhs.dims().to_vec(),
        boundary,
        kernel_boundary,
        holds,
        certain,
    })
}

/// Isomorphism via decomposition over the Kronecker quiver; elsewhere a necessary test
/// comparing dimension vectors and Hom dimensions against both objects and all
/// indecomposable projectives and injectives.
pub(crate) fn same_class(a: &Representation, b: &Representation) -> Result<(bool, bool)> {
    if a.quiver().is_kronecker() {
        let v = crate::kronecker::iso_test(a, b)?;
        return Ok((v.isomorphic, v.certain));
    }
    if a.dims() != b.dims() {
        return Ok((false, true));
    }
    let q = a.quiver().clone();
    let mut probes = vec![a.clone(), b.clone()];
    for x in 0..q.vertex_count() {
        probes.push(Representation::projective(q.clone(), a.field(), x));
        probes.push(Representation::injective(q.clone(), a.field(), x));
    }
    for x in &probes {
        if hom_dim(a, x)? != hom_dim(b, x)? || hom_dim(x, a)? != hom_dim(x, b)? {
            return Ok((false, true));
        }
    }
    Ok((true, false))
}
