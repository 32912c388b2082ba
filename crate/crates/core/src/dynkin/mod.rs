//! sl2-triples through even nilpotents, Dynkin gradings, the dimension invariants
//! `d0, d1, r, s, l, q`, Darboux frames on `g(-1)` and the bound `p^{d0/2} 2^{ceil(d1/2)}`.
//!
//! Frames are built over Q and then reduced: the integer weights of `ad h` collide
//! modulo small primes, so the grading itself is never computed over `F_p`.

mod frame;
mod nilpotent;
mod sl2;

pub use frame::{
    darboux_frame, grade, invariants, kw_bound, nilpotent_frame, DInvariants, DynkinGrading,
    NilpotentFrame,
};
pub use nilpotent::{natural_blocks, nilpotent_element, partitions, JordanType};
pub use sl2::{complete_sl2, jordan_chains, SL2Triple};

use crate::arith::{Field, PrimeField, Rational};
use crate::error::{Error, Result};
use crate::lie::SuperAlgebraData;
use crate::linalg::Subspace;

pub(crate) fn reduce_vec(fp: &PrimeField, v: &[Rational]) -> Result<Vec<u64>> {
    v.iter().map(|x| fp.from_rational(x)).collect()
}

/// Reduction of a subspace; a drop in dimension means `p` is bad for this datum.
pub(crate) fn reduce_subspace(
    fp: &PrimeField,
    alg: &SuperAlgebraData<PrimeField>,
    s: &Subspace<crate::arith::Rationals>,
) -> Result<Subspace<PrimeField>> {
    let vecs = s
        .basis
        .iter()
        .map(|v| reduce_vec(fp, v))
        .collect::<Result<Vec<_>>>()?;
    let out = Subspace::from_spanning(*fp, alg.space.clone(), vecs);
    if out.dim() != s.dim() {
        return Err(Error::BadPrime {
            p: fp.p(),
            reason: "subspace loses dimension mod p".into(),
        });
    }
    Ok(out)
}
