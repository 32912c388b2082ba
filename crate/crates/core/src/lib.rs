//! Exact computations with finite W-superalgebras and their restricted representations
//! in odd characteristic.

pub mod arith;
pub mod dynkin;
pub mod envelope;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod modrep;
pub mod par;
pub mod suite;
pub mod wfinite;

pub use error::{Error, Result};
