use serde::Serialize;

use super::meataxe::{split, Certificate, FpModule};
use crate::arith::Rationals;
use crate::dynkin::{kw_bound, NilpotentFrame};
use crate::envelope::{borel_weights, BorelData};
use crate::error::{Error, Result};
use crate::lie::SuperAlgebraData;
use crate::wfinite::{branching, Branching};

/// Composition factors of one baby Verma module.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightResult {
    pub lambda: Vec<u64>,
    /// `(dim, multiplicity)` of each factor.
    pub factors: Vec<(usize, usize)>,
    /// Every factor certificate re-verified against its module.
    pub certificates_replay: bool,
}

/// Smallest simple dimension among the composition factors of `Z_χ(λ)`, `λ` restricted.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub kw_bound: u128,
    pub verma_dim: usize,
    pub weights: Vec<WeightResult>,
    pub min_dim: usize,
    pub min_lambda: Vec<u64>,
    pub min_certificate: Certificate,
    /// `min_dim == kw_bound`. When false the bound is not attained in this family, which
    /// says nothing about modules outside it.
    pub attained: bool,
    /// `kw_bound` divides every factor dimension.
    pub all_divisible: bool,
}

/// `Z_χ(λ)` for every restricted `λ`, induced from the Borel subalgebra graded by the Dynkin
/// element `h` of `frame`, in the original basis of `g`.
pub fn baby_vermas(
    alg: &SuperAlgebraData<Rationals>,
    frame: &NilpotentFrame<Rationals>,
    p: u64,
    cap: usize,
) -> Result<Vec<(Vec<u64>, FpModule)>> {
    let gp = alg.reduce_mod_p(p)?;
    let frp = frame.reduce_mod_p(&gp)?;
    let borel = BorelData::new(&gp, &borel_weights(alg, &frame.triple().h)?, &frp.chi)?;
    let comp = borel.complement_space();
    let verma_dim = (p as usize).pow(comp.dim_even() as u32) << comp.dim_odd();
    if verma_dim > cap {
        return Err(Error::CapExceeded {
            dim: verma_dim,
            cap,
        });
    }
    let to_original = borel.original_basis_in_letters();
    let gen_parity: Vec<_> = (0..gp.dim()).map(|i| gp.parity(i)).collect();
    let lambdas = borel.restricted_weights();
    crate::par::map(&lambdas, |lam| {
        Ok((
            lam.clone(),
            FpModule::from_module(
                &borel.baby_verma(lam)?.module.in_basis(&to_original),
                gen_parity.clone(),
            ),
        ))
    })
    .into_iter()
    .collect()
}

pub fn min_dim_search(
    alg: &SuperAlgebraData<Rationals>,
    frame: &NilpotentFrame<Rationals>,
    p: u64,
    seed: u64,
    cap: usize,
) -> Result<SearchReport> {
    let bound = kw_bound(&frame.invariants, p);
    let vermas = baby_vermas(alg, frame, p, cap)?;
    let verma_dim = vermas.first().map_or(0, |(_, m)| m.dim());
    let runs = crate::par::map(
        &vermas,
        |(lam, m)| -> Result<(WeightResult, Option<(usize, Certificate)>)> {
            let factors = split(m, seed, cap)?;
            let certificates_replay = factors.iter().all(|f| f.certificate.replay(&f.module));
            let smallest = factors
                .first()
                .map(|f| (f.module.dim(), f.certificate.clone()));
            let summary = factors
                .iter()
                .map(|f| (f.module.dim(), f.multiplicity))
                .collect();
            Ok((
                WeightResult {
                    lambda: lam.clone(),
                    factors: summary,
                    certificates_replay,
                },
                smallest,
            ))
        },
    );
    let mut weights = Vec::new();
    let mut best: Option<(usize, Vec<u64>, Certificate)> = None;
    for run in runs {
        let (w, smallest) = run?;
        if let Some((d, c)) = smallest {
            if best.as_ref().is_none_or(|(b, _, _)| d < *b) {
                best = Some((d, w.lambda.clone(), c));
            }
        }
        weights.push(w);
    }
    let (min_dim, min_lambda, min_certificate) =
        best.ok_or_else(|| Error::Unsupported("no restricted weights".into()))?;
    let all_divisible = weights.iter().all(|w| {
        w.factors
            .iter()
            .all(|&(d, _)| (d as u128).is_multiple_of(bound))
    });
    Ok(SearchReport {
        p,
        kw_bound: bound,
        verma_dim,
        weights,
        attained: min_dim as u128 == bound,
        min_dim,
        min_lambda,
        min_certificate,
        all_divisible,
    })
}

/// `Z(λ) ⊠ Z(μ)` for the direct sum `g ⊕ g` with `χ` on each summand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorEntry {
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    pub branching: Branching,
}

/// Simples of `U_χ(g ⊕ g) = U_χ(g) ⊗ U_χ(g)` arise as constituents of outer tensors of simples
/// of the factors; here the factors are the baby Vermas, which must themselves be simple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorSurvey {
    pub p: u64,
    pub entries: Vec<TensorEntry>,
    /// Smallest `F_p`-simple dimension.
    pub min_fp_dim: usize,
    /// Smallest dimension over the algebraic closure.
    pub min_absolute_dim: usize,
}

pub fn outer_tensor_survey(
    alg: &SuperAlgebraData<Rationals>,
    frame: &NilpotentFrame<Rationals>,
    p: u64,
    seed: u64,
    cap: usize,
) -> Result<TensorSurvey> {
    let vermas = baby_vermas(alg, frame, p, cap)?;
    for (_, m) in &vermas {
        if !super::certify(m, seed)?.is_simple() {
            return Err(Error::NotSimpleInput);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..vermas.len())
        .flat_map(|i| (i..vermas.len()).map(move |j| (i, j)))
        .collect();
    let entries = crate::par::map(&pairs, |&(i, j)| {
        Ok(TensorEntry {
            lambda: vermas[i].0.clone(),
            mu: vermas[j].0.clone(),
            branching: branching(&vermas[i].1, &vermas[j].1, seed)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let factors = || entries.iter().flat_map(|e| e.branching.factors.iter());
    let min_fp_dim = factors().map(|f| f.dim).min().unwrap_or(0);
    let min_absolute_dim = factors()
        .flat_map(|f| f.absolute_dims.iter().copied())
        .min()
        .unwrap_or(0);
    Ok(TensorSurvey {
        p,
        entries,
        min_fp_dim,
        min_absolute_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::lie::build_q;

    fn search(kind: &str, jt: &str, p: u64) -> SearchReport {
        let g = build_q(&kind.parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        min_dim_search(&g, &fr, p, 0, 5000).unwrap()
    }

    #[test]
    fn osp12_regular_vermas_are_simple() {
        let r = search("osp(1|2)", "jordan:1|2", 3);
        assert_eq!((r.verma_dim, r.min_dim, r.kw_bound), (6, 6, 6));
        assert_eq!(r.weights.len(), 3);
        assert!(r
            .weights
            .iter()
            .all(|w| w.factors == [(6, 1)] && w.certificates_replay));
    }

    #[test]
    fn zero_character_reaches_the_trivial_module() {
        let r = search("gl(1|1)", "jordan:1|1", 3);
        assert_eq!((r.min_dim, r.kw_bound), (1, 1));
        assert!(r.attained && r.all_divisible);
    }

    #[test]
    fn gl21_minimal_nilpotent_at_p3() {
        let r = search("gl(2|1)", "jordan:2|1", 3);
        assert_eq!((r.verma_dim, r.kw_bound, r.weights.len()), (12, 6, 27));
        assert!(r.attained && r.all_divisible);
    }

    #[test]
    fn sl21_minimal_nilpotent_at_p5() {
        let r = search("sl(2|1)", "jordan:2|1", 5);
        assert_eq!((r.verma_dim, r.kw_bound, r.weights.len()), (20, 10, 25));
        assert!(r.attained && r.all_divisible);
        assert!(r.weights.iter().all(|w| w.certificates_replay));
    }

    #[test]
    fn outer_tensors_of_osp12_vermas() {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let s3 = outer_tensor_survey(&g, &fr, 3, 0, 5000).unwrap();
        assert_eq!(s3.entries.len(), 6);
        // Every F_3-simple has dimension 36, but Z(1) ⊠ Z(1) splits over F_9 into halves.
        assert_eq!((s3.min_fp_dim, s3.min_absolute_dim), (36, 18));
        let qq = s3
            .entries
            .iter()
            .find(|t| t.lambda == [1] && t.mu == [1])
            .unwrap();
        assert_eq!(
            (
                qq.branching.factors[0].end,
                qq.branching.factors[0].absolute_dims.clone()
            ),
            ((2, 2), vec![18, 18])
        );
        // At p = 5, -1 is a square and the halves are already defined over F_5.
        let z = baby_vermas(&g, &fr, 5, 5000).unwrap();
        let b = branching(&z[2].1, &z[2].1, 0).unwrap();
        assert_eq!(
            b.factors.iter().map(|f| (f.dim, f.end)).collect::<Vec<_>>(),
            [(50, (1, 0)), (50, (1, 0))]
        );
    }
}
