//! Representations over `F_p`: module splitting with certificates, minimal-dimension
//! searches over baby Verma modules, Jordan–Chevalley decompositions, Levi reduction
//! and the refined bound for direct sums.

pub mod absolute;
pub mod jordan;
pub mod levi;
pub mod meataxe;
pub mod poly;
pub mod search;

pub use absolute::{absolute_irreducibility, Absolute};
pub use jordan::{jordan_chevalley_fp, jordan_chevalley_q, JordanChevalley};
pub use levi::{
    claim_at_most_one_odd, levi_decompose, refined_bound, standard_levis, LeviDatum, LeviSummand,
    OddSummandReport, RefinedBound, RootSystem, StandardLevi,
};
pub use meataxe::{certify, hom_basis, hom_dim, split, Certificate, Factor, FpModule};
pub use search::{
    baby_vermas, min_dim_search, outer_tensor_survey, SearchReport, TensorEntry, TensorSurvey,
    WeightResult,
};
