//! Absolute irreducibility of `F_p`-simple modules, with a splitting certificate over `F_{p^2}`.

use serde::Serialize;

use super::meataxe::{hom_basis, FpModule};
use crate::arith::{Field, PrimeField, QuadField};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Mat, Parity, Subspace};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Absolute {
    /// Even endomorphisms are scalars, so the module stays simple over the algebraic closure.
    Irreducible,
    /// The even endomorphism ring is `F_{p^2}`; an eigenspace of `endo` over `F_{p^2}` is a
    /// graded submodule of half the dimension. Entries are `a + b√ν` as `[a, b]`.
    SplitsOverFp2 {
        endo: Vec<Vec<u64>>,
        eigenvalue: [u64; 2],
        invariant: Vec<Vec<[u64; 2]>>,
    },
}

impl Absolute {
    /// Dimensions of the constituents over the algebraic closure, for a module of dimension `n`.
    pub fn constituent_dims(&self, n: usize) -> Vec<usize> {
        match self {
            Absolute::Irreducible => vec![n],
            Absolute::SplitsOverFp2 { invariant, .. } => vec![invariant.len(), n - invariant.len()],
        }
    }
}

fn lift(q: &QuadField, m: &Mat<PrimeField>) -> Mat<QuadField> {
    m.map_field(q, |a| Ok(q.embed(*a)))
        .expect("embedding never fails")
}

/// Decides absolute irreducibility of a module already known to be simple over `F_p`.
pub fn absolute_irreducibility(m: &FpModule) -> Result<Absolute> {
    let f = m.field;
    let n = m.dim();
    let ends = hom_basis(m, m, Parity::Even)?;
    let id = Mat::identity(f, n);
    match ends.len() {
        1 => Ok(Absolute::Irreducible),
        2 => {
            let phi = ends.iter().find(|e| {
                let mut ech = Echelon::new(f, n * n);
                ech.insert(id.data.clone());
                ech.insert(e.data.clone()).is_some()
            });
            let phi =
                phi.ok_or_else(|| Error::Unsupported("endomorphisms are all scalar".into()))?;
            // φ² = -bφ - c in the two-dimensional field spanned by 1 and φ.
            let sq = phi.mul(phi);
            let coords = linalg::Coordinates::new(f, n * n, &[phi.data.clone(), id.data.clone()])?;
            let bc = coords
                .coords(&sq.data)
                .ok_or_else(|| Error::Unsupported("endomorphism ring is not a field".into()))?;
            let (b, c) = (f.neg(&bc[0]), f.neg(&bc[1]));
            let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &c));
            if f.is_square(disc) {
                return Err(Error::Unsupported(
                    "endomorphism ring has zero divisors".into(),
                ));
            }
            let q = QuadField::new(f.p())?;
            let root = q
                .sqrt(&q.embed(disc))
                .expect("every element of F_p is a square in F_{p^2}");
            let alpha = q.mul(&q.sub(&root, &q.embed(b)), &q.half());
            let shifted = lift(&q, phi).sub(&Mat::identity(q, n).scale(&alpha));
            let kernel = shifted.echelon().null_basis();
            let space = Subspace::from_spanning(q, m.space.clone(), kernel.iter().cloned());
            let invariant_ok = space.dim() * 2 == n
                && m.operators().iter().all(|g| {
                    let gq = lift(&q, g);
                    space.basis.iter().all(|v| space.contains(&gq.mul_vec(v)))
                });
            if !invariant_ok {
                return Err(Error::Unsupported(
                    "eigenspace over F_{p^2} is not a half-dimensional submodule".into(),
                ));
            }
            Ok(Absolute::SplitsOverFp2 {
                endo: phi.row_vecs(),
                eigenvalue: alpha,
                invariant: space.basis,
            })
        }
        k => Err(Error::Unsupported(format!(
            "even endomorphism ring of dimension {k}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::GradedSpace;

    /// `x ↦ [[0, -1], [1, 0]] x` on an even plane over `F_3`: simple, but splits over `F_9`.
    #[test]
    fn rotation_splits_over_quadratic_extension() {
        let f = PrimeField::new(3).unwrap();
        let r = Mat::from_i64(f, &[&[0, -1], &[1, 0]]);
        let m = FpModule::new(
            f,
            GradedSpace::anonymous(vec![Parity::Even; 2]),
            vec![r],
            vec![Parity::Even],
        );
        let a = absolute_irreducibility(&m).unwrap();
        assert_eq!(a.constituent_dims(2), vec![1, 1]);
        let id = FpModule::new(
            f,
            GradedSpace::anonymous(vec![Parity::Even, Parity::Odd]),
            vec![Mat::from_i64(f, &[&[0, 1], &[1, 0]])],
            vec![Parity::Odd],
        );
        assert_eq!(absolute_irreducibility(&id).unwrap(), Absolute::Irreducible);
    }
}
