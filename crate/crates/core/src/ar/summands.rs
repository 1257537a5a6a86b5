use crate::ar::resolution::radical;
use crate::error::Result;
use crate::rep::{hom_dim, Representation};

/// Multiplicity of `P(x)` as a summand: `dim Hom(M, P(x)) − dim Hom(M, rad P(x))`.
pub fn projective_multiplicity(m: &Representation, x: usize) -> Result<usize> {
    let p = Representation::projective(m.quiver().clone(), m.field(), x);
    let (rad, _) = radical(&p)?;
    Ok(hom_dim(m, &p)? - hom_dim(m, &rad)?)
}

/// Multiplicity of `I(x)` as a summand, computed on the dual over the opposite quiver.
pub fn injective_multiplicity(m: &Representation, x: usize) -> Result<usize> {
    projective_multiplicity(&m.dual(), x)
}

pub fn has_projective_summand(m: &Representation) -> Result<bool> {
    for x in 0..m.quiver().vertex_count() {
        if projective_multiplicity(m, x)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn has_injective_summand(m: &Representation) -> Result<bool> {
    has_projective_summand(&m.dual())
}
