//! Projective resolutions, the Nakayama functor and the Auslander-Reiten translate.

mod resolution;
mod summands;
mod tau;
mod verify;

pub use resolution::{
    injective_sum, minimal_projective_resolution, projective_sum, radical, standard_resolution, top_dims,
    ProjectiveMap, ResolutionData, StandardResolution,
};
pub use summands::{has_injective_summand, has_projective_summand, injective_multiplicity, projective_multiplicity};
pub use tau::{tau, tau_inverse, tau_morphism, tau_morphism_between, tau_power, tau_via_minimal_resolution, TauResult};
pub(crate) use verify::same_class;
pub use verify::{verify_kernel_translation, verify_tev_triangle, TranslationReport, TriangleReport};
