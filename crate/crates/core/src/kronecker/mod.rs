//! The Kronecker quiver `x ⇉ y`: indecomposables, decompositions and kernel tables.

mod bongartz;
mod closed;
mod decompose;
mod label;
mod tables;

pub use bongartz::{bongartz_test, BongartzVerdict, Witness};
pub use closed::{
    closed_form_hom_dim, cross_family_hom_dim, euler_form, kerev_p1_exponent, predicted_kernel,
    predicted_kernel_single_formula, surjectivity_expected,
};
pub use decompose::{
    decompose, embed_decomposition, iso_test, multiplicity, normal_rank, random_morphism, regular_parameters,
    Decomposition, IsoVerdict,
};
pub use label::{kronecker_quiver, labels_up_to, make_indec, Family, IndecLabel, Param};
pub use tables::{
    cx_closure_check, table_row, verify_kerev_p1, verify_pattern_table, CxReport, CxViolation, KerevP1Record,
    PatternRecord, PatternReport, TableOptions,
};
