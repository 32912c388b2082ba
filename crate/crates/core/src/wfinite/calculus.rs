use serde::Serialize;

use super::superalg::{
    classify_simple, module_type, natural_module, AssocSuperAlgebra, ModuleType, SuperShape,
};
use crate::arith::{Field, PrimeField};
use crate::dynkin::NilpotentFrame;
use crate::envelope::{AdaptedAlgebra, Monomial, Pbw};
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::Parity;
use crate::modrep::{absolute_irreducibility, hom_dim, split, FpModule};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorCheck {
    pub left: SuperShape,
    pub right: SuperShape,
    pub expected: SuperShape,
    pub computed: SuperShape,
}

/// Every shape with parameters at most `max`.
pub fn shapes_up_to(max: usize) -> Vec<SuperShape> {
    let mut out: Vec<SuperShape> = (1..=max)
        .flat_map(|m| (0..=m).map(move |n| SuperShape::m(m, n)))
        .collect();
    out.extend((1..=max).map(|n| SuperShape::Q { n }));
    out
}

/// Classifies `A ⊗ B` for unordered pairs of the given shapes; `expected` is [`SuperShape::tensor`].
pub fn tensor_checks(
    field: PrimeField,
    shapes: &[SuperShape],
    seed: u64,
) -> Result<Vec<TensorCheck>> {
    let pairs: Vec<(SuperShape, SuperShape)> = shapes
        .iter()
        .enumerate()
        .flat_map(|(i, a)| shapes[i..].iter().map(move |b| (*a, *b)))
        .collect();
    crate::par::map(&pairs, |&(a, b)| {
        let t =
            AssocSuperAlgebra::of_shape(field, a).tensor(&AssocSuperAlgebra::of_shape(field, b));
        Ok(TensorCheck {
            left: a,
            right: b,
            expected: a.tensor(&b),
            computed: classify_simple(&t, seed)?,
        })
    })
    .into_iter()
    .collect()
}

/// An `F_p`-composition factor with its graded endomorphism dimensions and its constituents
/// over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchFactor {
    pub dim: usize,
    pub end: (usize, usize),
    pub absolute_dims: Vec<usize>,
}

/// Composition of the outer tensor of two simple modules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Branching {
    pub left: ModuleType,
    pub right: ModuleType,
    pub dim: usize,
    /// With multiplicity.
    pub factors: Vec<BranchFactor>,
}

impl Branching {
    /// `M⊠M` is simple of type `M`; `M⊠Q` is simple of type `Q`; `Q⊠Q` has two absolute
    /// constituents of half the dimension, which are type-`M` factors over `F_p` when `F_p`
    /// contains the needed square root and otherwise form one factor with endomorphisms `(2|2)`.
    pub fn is_expected(&self) -> bool {
        use ModuleType::*;
        let d = self.dim;
        let one = |end| {
            self.factors.len() == 1
                && self.factors[0].dim == d
                && self.factors[0].end == end
                && self.factors[0].absolute_dims == [d]
        };
        match (self.left, self.right) {
            (M, M) => one((1, 0)),
            (M, Q) | (Q, M) => one((1, 1)),
            (Q, Q) => {
                let halves: Vec<usize> = self
                    .factors
                    .iter()
                    .flat_map(|f| f.absolute_dims.clone())
                    .collect();
                let split_here = self
                    .factors
                    .iter()
                    .all(|f| f.dim == d / 2 && f.end == (1, 0));
                let split_later = self.factors.len() == 1 && self.factors[0].end == (2, 2);
                halves == [d / 2, d / 2] && (split_here || split_later)
            }
        }
    }
}

pub fn branching(v: &FpModule, w: &FpModule, seed: u64) -> Result<Branching> {
    let t = v.outer_tensor(w);
    let mut factors = Vec::new();
    for fct in split(&t, seed, 5000)? {
        let m = &fct.module;
        let end = (hom_dim(m, m, Parity::Even)?, hom_dim(m, m, Parity::Odd)?);
        let absolute_dims = absolute_irreducibility(m)?.constituent_dims(m.dim());
        factors.extend(std::iter::repeat_n(
            BranchFactor {
                dim: m.dim(),
                end,
                absolute_dims,
            },
            fct.multiplicity,
        ));
    }
    Ok(Branching {
        left: module_type(v)?,
        right: module_type(w)?,
        dim: t.dim(),
        factors,
    })
}

/// Outer tensors of the natural modules of the given shapes, for all ordered pairs.
pub fn natural_branchings(
    field: PrimeField,
    shapes: &[SuperShape],
    seed: u64,
) -> Result<Vec<(SuperShape, SuperShape, Branching)>> {
    let mut out = Vec::new();
    for &a in shapes {
        for &b in shapes {
            out.push((
                a,
                b,
                branching(&natural_module(field, a), &natural_module(field, b), seed)?,
            ));
        }
    }
    Ok(out)
}

/// `U_χ(m′)/N`, with `N` the two-sided ideal generated by `x - χ(x)` for `x ∈ m`; needs `r` odd.
pub fn middle_quotient(
    alg: &SuperAlgebraData<PrimeField>,
    frame: &NilpotentFrame<PrimeField>,
) -> Result<AssocSuperAlgebra> {
    let f = alg.field;
    let a = AdaptedAlgebra::new(alg, frame)?;
    let mid = a
        .middle
        .ok_or_else(|| Error::Unsupported("m′ = m when r is even".into()))?;
    let letters: Vec<usize> = std::iter::once(mid).chain(a.s_start..a.dim()).collect();
    let basis: Vec<Vec<u64>> = letters.iter().map(|&i| a.alg.unit(i)).collect();
    let labels = letters
        .iter()
        .map(|&i| a.alg.space.labels[i].clone())
        .collect();
    let sub = a.alg.subalgebra(&basis, labels)?;
    let chi = PCharacter {
        values: letters.iter().map(|&i| a.chi.values[i]).collect(),
        dual_element: None,
    };
    let pbw = Pbw::reduced(sub, chi.clone())?;
    let u = AssocSuperAlgebra::from_reduced(&pbw)?;
    let pbw_basis = pbw.basis()?;
    let pos = |m: &Monomial| {
        pbw_basis
            .iter()
            .position(|b| b == m)
            .expect("normal monomial")
    };
    let k = letters.len();
    let gens: Vec<Vec<u64>> = (1..k)
        .map(|i| {
            let mut v = vec![0; u.dim()];
            v[pos(&Monomial::letter(k, i))] = 1;
            v[pos(&Monomial::one(k))] = f.neg(&chi.values[i]);
            v
        })
        .collect();
    u.quotient(&u.ideal_closure(&gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::lie::build_q;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn small_tensor_identities() {
        let shapes = [
            SuperShape::m(1, 0),
            SuperShape::m(1, 1),
            SuperShape::Q { n: 1 },
            SuperShape::Q { n: 2 },
        ];
        for c in tensor_checks(fp(3), &shapes, 0).unwrap() {
            assert_eq!(c.computed, c.expected, "{} ⊗ {}", c.left, c.right);
        }
    }

    #[test]
    fn branching_on_small_modules() {
        let shapes = [
            SuperShape::m(1, 0),
            SuperShape::m(1, 1),
            SuperShape::Q { n: 1 },
        ];
        for p in [3, 5] {
            for (a, b, br) in natural_branchings(fp(p), &shapes, 0).unwrap() {
                assert!(br.is_expected(), "p = {p}, {a} ⊠ {b}: {br:?}");
            }
        }
    }

    #[test]
    fn queer_square_splits_where_minus_one_is_a_square() {
        let q1 = |p| natural_module(fp(p), SuperShape::Q { n: 1 });
        // (J ⊗ J)^2 = -1: a square mod 5, not mod 3.
        let at5 = branching(&q1(5), &q1(5), 0).unwrap();
        assert_eq!(
            at5.factors
                .iter()
                .map(|f| (f.dim, f.end))
                .collect::<Vec<_>>(),
            [(2, (1, 0)), (2, (1, 0))]
        );
        let at3 = branching(&q1(3), &q1(3), 0).unwrap();
        assert_eq!(at3.factors.len(), 1);
        assert_eq!(
            (at3.factors[0].end, at3.factors[0].absolute_dims.clone()),
            ((2, 2), vec![2, 2])
        );
    }

    #[test]
    fn osp12_middle_quotient_is_q1() {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        for p in [3, 5] {
            let gp = g.reduce_mod_p(p).unwrap();
            let frp = fr.reduce_mod_p(&gp).unwrap();
            let q = middle_quotient(&gp, &frp).unwrap();
            assert_eq!(q.sdim(), (1, 1));
            assert_eq!(classify_simple(&q, 0).unwrap(), SuperShape::Q { n: 1 });
        }
    }
}
