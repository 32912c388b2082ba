//! PBW normal forms in `U(g)` and `U_ξ(g)`, induced modules and Whittaker invariants.

mod adapted;
mod module;
mod pbw;
mod verma;

pub use adapted::{AdaptedAlgebra, Letter, LetterKind};
pub use module::{
    check_inducing_character, induce, induced_action, subspace_coordinates, whittaker_invariants,
    InducedModule, Module,
};
pub use pbw::{EnvElement, Mode, Monomial, Pbw};
pub(crate) use verma::supported_on;
pub use verma::{borel_weights, BorelData};
