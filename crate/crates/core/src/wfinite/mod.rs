//! Reduced W-superalgebras, their generators and odd-case identities, Hilbert series over Q,
//! one-dimensional representations, and the `M`/`Q` calculus of simple superalgebras.

mod calculus;
mod hilbert;
mod reduced;
mod superalg;
mod variety;

pub use calculus::{
    branching, middle_quotient, natural_branchings, shapes_up_to, tensor_checks, BranchFactor,
    Branching, TensorCheck,
};
pub use hilbert::{default_cap, graded_dimensions_q, predicted_series, HilbertReport};
pub use reduced::{OddCaseReport, ReducedWAlgebra, ThetaGenerator};
pub use superalg::{
    classify_simple, module_type, natural_module, AssocSuperAlgebra, ModuleType, SuperShape,
};
pub use variety::{one_dim_variety, Feasibility, MPoly, OneDimVariety};
