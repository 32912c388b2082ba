use crate::arith::Field;
use crate::dynkin::{DInvariants, NilpotentFrame};
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::Coordinates;

use super::{induce, InducedModule, Module, Pbw};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetterKind {
    /// Even part of `g(k)`, `k >= 0`: `g^e` first, then `[f, g]`.
    X,
    /// Odd part of `g(k)`, `k >= 0`, in the same order.
    Y,
    /// First half of the even part of `g(-1)`.
    U,
    /// First half of the odd part of `g(-1)`, including the middle vector.
    V,
    /// Basis of `m`.
    M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub kind: LetterKind,
    /// 1-based position within its kind.
    pub index: usize,
    /// Degree in the Dynkin grading.
    pub degree: i32,
}

impl Letter {
    pub fn label(&self) -> String {
        let k = match self.kind {
            LetterKind::X => "x",
            LetterKind::Y => "y",
            LetterKind::U => "u",
            LetterKind::V => "v",
            LetterKind::M => "m",
        };
        format!("{k}{}", self.index)
    }
}

/// A Lie superalgebra rewritten in the PBW order `x, y, u, v | m` attached to a frame:
/// complement letters first, the letters spanning `m` last.
#[derive(Clone, Debug)]
pub struct AdaptedAlgebra<F: Field> {
    pub alg: SuperAlgebraData<F>,
    /// Letter `i` in the coordinates of the original algebra.
    pub vectors: Vec<Vec<F::Elem>>,
    pub letters: Vec<Letter>,
    /// Letters `s_start..` span `m`.
    pub s_start: usize,
    /// Kazhdan weight `j + 2` of a letter in `g(j)`.
    pub weights: Vec<i32>,
    /// Letters `x_1..x_l`, `y_1..y_q` and the middle `v`, in that order.
    pub pure: Vec<usize>,
    pub middle: Option<usize>,
    pub middle_norm: Option<F::Elem>,
    pub invariants: DInvariants,
    /// `χ` in letter coordinates.
    pub chi: PCharacter<F>,
    coords: Coordinates<F>,
}

impl<F: Field> AdaptedAlgebra<F> {
    pub fn new(alg: &SuperAlgebraData<F>, frame: &NilpotentFrame<F>) -> Result<Self> {
        let inv = frame.invariants;
        let mut vectors = Vec::new();
        let mut letters = Vec::new();
        let mut push = |v: &Vec<F::Elem>, kind, index, degree| {
            vectors.push(v.clone());
            letters.push(Letter {
                kind,
                index,
                degree,
            });
        };
        for (k, (v, d)) in frame.x_basis.iter().zip(&frame.x_degrees).enumerate() {
            push(v, LetterKind::X, k + 1, *d);
        }
        for (k, (v, d)) in frame.y_basis.iter().zip(&frame.y_degrees).enumerate() {
            push(v, LetterKind::Y, k + 1, *d);
        }
        for (k, v) in frame.u_basis[..inv.s].iter().enumerate() {
            push(v, LetterKind::U, k + 1, -1);
        }
        for (k, v) in frame.v_basis[..inv.t_up].iter().enumerate() {
            push(v, LetterKind::V, k + 1, -1);
        }
        let s_start = frame.x_basis.len() + frame.y_basis.len() + inv.s + inv.t_up;
        for (k, v) in frame.m_basis.iter().enumerate() {
            let d = frame.grading.degree_of(v).ok_or(Error::NoGrading)?;
            push(v, LetterKind::M, k + 1, d);
        }
        if vectors.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim() as u64,
                found: vectors.len() as u64,
                context: "adapted letters".into(),
            });
        }
        let labels = letters.iter().map(Letter::label).collect();
        let new_alg = alg.change_basis(&vectors, labels)?;
        let weights = letters.iter().map(|l| l.degree + 2).collect();
        let (mx, my) = (frame.x_basis.len(), frame.y_basis.len());
        let middle = (inv.r % 2 == 1).then_some(mx + my + inv.s + inv.t);
        let pure = (0..inv.l).chain(mx..mx + inv.q).chain(middle).collect();
        let coords = Coordinates::new(alg.field.clone(), alg.dim(), &vectors)?;
        let mut out = AdaptedAlgebra {
            alg: new_alg,
            vectors,
            letters,
            s_start,
            weights,
            pure,
            middle,
            middle_norm: frame.middle_norm.clone(),
            invariants: inv,
            chi: frame.chi.clone(),
            coords,
        };
        out.chi = out.character(&frame.chi);
        Ok(out)
    }

    pub fn field(&self) -> &F {
        &self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// A character of the original algebra in letter coordinates (odd letters get 0).
    pub fn character(&self, eta: &PCharacter<F>) -> PCharacter<F> {
        let f = self.field();
        let values = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if self.alg.parity(i).is_even() {
                    eta.eval(f, v)
                } else {
                    f.zero()
                }
            })
            .collect();
        let dual_element = eta
            .dual_element
            .as_ref()
            .and_then(|d| self.coords.coords(d));
        PCharacter {
            values,
            dual_element,
        }
    }

    /// Letter coordinates of an element of the original algebra.
    pub fn to_letters(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.coords.coords(x).expect("letters form a basis")
    }

    /// The basis of `m` as letter unit vectors.
    pub fn m_letters(&self) -> Vec<Vec<F::Elem>> {
        (self.s_start..self.dim())
            .map(|i| self.alg.unit(i))
            .collect()
    }

    /// Values of a character (in letter coordinates) on the `m` letters.
    pub fn m_values(&self, eta_letters: &PCharacter<F>) -> Vec<F::Elem> {
        eta_letters.values[self.s_start..].to_vec()
    }

    /// `Q_χ^η = U_η(g) ⊗_{U_η(m)} k_η` with `η` in letter coordinates.
    pub fn gelfand_graev(
        &self,
        pbw: &Pbw<F>,
        eta_letters: &PCharacter<F>,
    ) -> Result<InducedModule<F>> {
        induce(pbw, self.s_start, &self.m_values(eta_letters))
    }

    /// A module for the letter basis, with actions re-expressed in the original basis.
    pub fn to_original(&self, m: &Module<F>) -> Module<F> {
        let n = self.dim();
        let back: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| self.to_letters(&crate::linalg::unit(self.field(), n, i)))
            .collect();
        m.in_basis(&back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::envelope::whittaker_invariants;
    use crate::lie::build_q;

    fn osp12_adapted(p: u64) -> AdaptedAlgebra<crate::arith::PrimeField> {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let gp = g.reduce_mod_p(p).unwrap();
        AdaptedAlgebra::new(&gp, &fr.reduce_mod_p(&gp).unwrap()).unwrap()
    }

    #[test]
    fn osp12_letters_and_weights() {
        let a = osp12_adapted(3);
        let labels: Vec<String> = a.letters.iter().map(Letter::label).collect();
        assert_eq!(labels, ["x1", "x2", "y1", "v1", "m1"]);
        assert_eq!(a.weights, [4, 2, 3, 1, 0]);
        assert_eq!(a.pure, [0, 2, 3]);
        assert_eq!(a.s_start, 4);
    }

    #[test]
    fn osp12_gelfand_graev_and_invariants() {
        let a = osp12_adapted(3);
        let pbw = Pbw::reduced(a.alg.clone(), a.chi.clone()).unwrap();
        let q = a.gelfand_graev(&pbw, &a.chi).unwrap();
        assert_eq!(q.module.dim(), 36);
        q.module.check_relations(&a.alg, Some(&a.chi)).unwrap();
        let w = whittaker_invariants(&q.module, &a.m_letters(), &a.chi, &a.chi).unwrap();
        assert_eq!(w.dim(), 12);
    }
}
