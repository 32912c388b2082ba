use std::collections::BTreeMap;

use serde::Serialize;

use super::reduced::{ReducedWAlgebra, ThetaGenerator};
use crate::arith::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::linalg::Coordinates;

/// Polynomial over `F_p` in the values `a_i = ψ(Θ_i)` of the even generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MPoly {
    /// Exponent vector → nonzero coefficient.
    pub terms: BTreeMap<Vec<u16>, u64>,
}

impl MPoly {
    fn add_term(&mut self, f: &PrimeField, e: Vec<u16>, c: u64) {
        let s = f.add(self.terms.get(&e).unwrap_or(&0), &c);
        if s == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant: unsatisfiable over every extension of `F_p`.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn eval(&self, f: &PrimeField, a: &[u64]) -> u64 {
        self.terms.iter().fold(0, |acc, (e, c)| {
            let m = e
                .iter()
                .zip(a)
                .fold(*c, |m, (&k, x)| f.mul(&m, &f.pow(x, k as u64)));
            f.add(&acc, &m)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Feasibility {
    /// Some equation is a nonzero constant.
    Infeasible,
    /// An `F_p`-point exists.
    Feasible,
    /// No `F_p`-point and no constant contradiction; points may exist over extensions.
    Undetermined,
}

/// One-dimensional representations `ψ` of `U_η(g, e)`. Odd generators map to 0; the unknowns
/// are the values on the even generators, constrained by `ψ(Θ_i Θ^α) = ψ(Θ_i) ψ(Θ^α)` for
/// every generator and every ordered `Θ`-monomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneDimVariety {
    /// Labels of the leading terms of the even generators, one per variable.
    pub variables: Vec<String>,
    pub equations: Vec<MPoly>,
    pub fp_points: Vec<Vec<u64>>,
    pub feasibility: Feasibility,
}

/// Ordered monomials `Θ_1^{α_1} ⋯ Θ_k^{α_k}` with `α_i < p` (even) or `≤ 1` (odd).
fn exponent_box(p: u64, thetas: &[ThetaGenerator]) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for t in thetas {
        let top = if t.parity == 0 { p - 1 } else { 1 } as u16;
        out = out
            .into_iter()
            .flat_map(|e| (0..=top).map(move |a| [e.clone(), vec![a]].concat()))
            .collect();
    }
    out
}

pub fn one_dim_variety(w: &ReducedWAlgebra, thetas: &[ThetaGenerator]) -> Result<OneDimVariety> {
    let f = w.field();
    let p = f.p();
    let alphas = exponent_box(p, thetas);
    if alphas.len() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim() as u64,
            found: alphas.len() as u64,
            context: "ordered Θ-monomials".into(),
        });
    }
    let even: Vec<usize> = (0..thetas.len())
        .filter(|&i| thetas[i].parity == 0)
        .collect();

    // Θ^α = Θ_j Θ^{α - e_j} with j the first nonzero exponent; α is sorted so the tail comes first.
    let mut position: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    let mut coords: Vec<Vec<u64>> = Vec::with_capacity(alphas.len());
    let mut order: Vec<&Vec<u16>> = alphas.iter().collect();
    order.sort_by_key(|a| a.iter().map(|&x| x as usize).sum::<usize>());
    for a in order {
        let c = match a.iter().position(|&x| x > 0) {
            None => w.unit.clone(),
            Some(j) => {
                let mut rest = a.clone();
                rest[j] -= 1;
                w.mul_direct(&thetas[j].coords, &coords[position[&rest]])?
            }
        };
        position.insert(a.clone(), coords.len());
        coords.push(c);
    }
    let basis = Coordinates::new(f, w.dim(), &coords)
        .map_err(|_| Error::Unsupported("ordered Θ-monomials are not a basis".into()))?;
    let keys: Vec<Vec<u16>> = position.keys().cloned().collect();
    // ψ(Θ^α) as a monomial in the even variables, or zero if an odd generator occurs.
    let psi_of = |alpha: &[u16]| -> Option<Vec<u16>> {
        (0..thetas.len())
            .all(|i| thetas[i].parity == 0 || alpha[i] == 0)
            .then(|| even.iter().map(|&i| alpha[i]).collect())
    };
    let psi_poly = |x: &[u64]| -> MPoly {
        let c = basis.coords(x).expect("Θ-monomials span W");
        let mut out = MPoly::default();
        for alpha in &keys {
            let k = c[position[alpha]];
            if k != 0 {
                if let Some(e) = psi_of(alpha) {
                    out.add_term(&f, e, k);
                }
            }
        }
        out
    };

    let jobs: Vec<(usize, &Vec<u16>)> = (0..thetas.len())
        .flat_map(|i| keys.iter().map(move |a| (i, a)))
        .collect();
    let equations: Vec<Result<MPoly>> = crate::par::map(&jobs, |&(i, alpha)| {
        let prod = w.mul_direct(&thetas[i].coords, &coords[position[alpha]])?;
        let mut eq = psi_poly(&prod);
        if thetas[i].parity == 0 {
            if let Some(mut e) = psi_of(alpha) {
                let v = even.iter().position(|&k| k == i).expect("even generator");
                e[v] += 1;
                eq.add_term(&f, e, f.neg(&1));
            }
        }
        Ok(eq)
    });
    let mut equations: Vec<MPoly> = equations
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    equations.sort_by(|a, b| a.terms.cmp(&b.terms));
    equations.dedup();

    let mut points = vec![Vec::new()];
    for _ in &even {
        points = points
            .into_iter()
            .flat_map(|a: Vec<u64>| (0..p).map(move |x| [a.clone(), vec![x]].concat()))
            .collect();
    }
    let fp_points: Vec<Vec<u64>> = points
        .into_iter()
        .filter(|a| equations.iter().all(|e| e.eval(&f, a) == 0))
        .collect();
    let feasibility = if equations.iter().any(MPoly::is_nonzero_constant) {
        Feasibility::Infeasible
    } else if !fp_points.is_empty() {
        Feasibility::Feasible
    } else {
        Feasibility::Undetermined
    };
    let variables = even
        .iter()
        .map(|&i| thetas[i].leading_term.clone())
        .collect();
    Ok(OneDimVariety {
        variables,
        equations,
        fp_points,
        feasibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::lie::build_q;

    fn variety(kind: &str, jt: &str, p: u64) -> OneDimVariety {
        let g = build_q(&kind.parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let gp = g.reduce_mod_p(p).unwrap();
        let frp = fr.reduce_mod_p(&gp).unwrap();
        let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi).unwrap();
        let th = w.extract_theta().unwrap();
        one_dim_variety(&w, &th).unwrap()
    }

    #[test]
    fn osp12_has_no_one_dimensional_representation() {
        let v = variety("osp(1|2)", "jordan:1|2", 3);
        assert_eq!(v.feasibility, Feasibility::Infeasible);
        assert!(v.fp_points.is_empty());
    }

    #[test]
    fn gl11_zero_nilpotent() {
        // Characters of U_0(gl(1|1)) vanish on [g, g] ∋ E11 + E22 and satisfy a^p = a.
        let v = variety("gl(1|1)", "jordan:1|1", 3);
        assert_eq!(v.variables.len(), 2);
        assert_eq!(v.feasibility, Feasibility::Feasible);
        assert_eq!(v.fp_points.len(), 3);
    }

    #[test]
    fn gl21_minimal_nilpotent_has_fp_points() {
        let v = variety("gl(2|1)", "jordan:2|1", 3);
        assert_eq!(v.variables.len(), 3);
        assert_eq!(v.feasibility, Feasibility::Feasible);
    }
}
