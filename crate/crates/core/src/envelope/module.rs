use std::collections::HashMap;

use serde::Serialize;

use super::{EnvElement, Monomial, Pbw};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::{self, Coordinates, Echelon, GradedSpace, Parity, SparseMat, Subspace};
use crate::par;

/// A finite-dimensional module given by the action matrices of an algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Module<F: Field> {
    pub field: F,
    pub space: GradedSpace,
    /// `actions[i]` is the matrix of the `i`-th algebra basis element.
    pub actions: Vec<SparseMat<F>>,
}

#[derive(Serialize)]
struct ModuleDump {
    basis: Vec<(String, u8)>,
    /// `(generator, row, col, value)`.
    actions: Vec<(usize, usize, usize, String)>,
}

impl<F: Field> Module<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity[i]
    }

    pub fn act(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.actions[i].mul_vec(v)
    }

    /// Action of a Lie superalgebra element given in coordinates.
    pub fn act_lie(&self, x: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = linalg::zeros(f, self.dim());
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                linalg::axpy(f, &mut out, c, &self.act(i, v));
            }
        }
        out
    }

    /// Matrix of a Lie superalgebra element.
    pub fn matrix_of(&self, x: &[F::Elem]) -> SparseMat<F> {
        let f = &self.field;
        let mut out = SparseMat::zeros(f.clone(), self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                out = out.lin_comb(&f.one(), &self.actions[i], c);
            }
        }
        out
    }

    /// Action of a PBW monomial: its letters act right to left.
    pub fn act_monomial(&self, m: &Monomial, v: &[F::Elem]) -> Vec<F::Elem> {
        m.word()
            .into_iter()
            .rev()
            .fold(v.to_vec(), |acc, i| self.act(i, &acc))
    }

    pub fn act_env(&self, a: &EnvElement<F>, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = linalg::zeros(f, self.dim());
        for (m, c) in &a.terms {
            linalg::axpy(f, &mut out, c, &self.act_monomial(m, v));
        }
        out
    }

    /// The same module with actions re-expressed for another basis of the algebra;
    /// `new_basis[k]` gives the `k`-th new basis vector in the current coordinates.
    pub fn in_basis(&self, new_basis: &[Vec<F::Elem>]) -> Self {
        Module {
            field: self.field.clone(),
            space: self.space.clone(),
            actions: new_basis.iter().map(|x| self.matrix_of(x)).collect(),
        }
    }

    /// Checks `[ρ(b_i), ρ(b_j)] = ρ([b_i, b_j])` on all pairs, parity preservation and,
    /// when `xi` is given, `ρ(b)^p = ρ(b^{[p]}) + ξ(b)^p` on even basis elements.
    pub fn check_relations(
        &self,
        alg: &SuperAlgebraData<F>,
        xi: Option<&PCharacter<F>>,
    ) -> Result<()> {
        let f = &self.field;
        let n = alg.dim();
        if self.actions.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n as u64,
                found: self.actions.len() as u64,
                context: "action count".into(),
            });
        }
        for (i, a) in self.actions.iter().enumerate() {
            for (r, row) in a.row_data.iter().enumerate() {
                for (c, _) in row {
                    if self.parity(r) != self.parity(*c).plus(alg.parity(i)) {
                        return Err(Error::ParityViolation(format!(
                            "action of {} does not have its parity",
                            alg.space.labels[i]
                        )));
                    }
                }
            }
        }
        let failures: Vec<String> = par::map_range(n, |i| {
            (0..n).find_map(|j| {
                let anti = alg.parity(i).is_odd() && alg.parity(j).is_odd();
                let lhs = self.actions[i].supercommutator(&self.actions[j], anti);
                let rhs = self.matrix_of(&crate::lie::to_dense(f, n, alg.bracket_basis(i, j)));
                (lhs != rhs).then(|| format!("[{}, {}]", alg.space.labels[i], alg.space.labels[j]))
            })
        })
        .into_iter()
        .flatten()
        .collect();
        if let Some(w) = failures.first() {
            return Err(Error::InvalidCharacter(format!(
                "bracket relation fails at {w}"
            )));
        }
        if let (Some(xi), Some(_)) = (xi, &alg.pmap) {
            let p = f.characteristic();
            for i in alg.even_indices() {
                let lhs = self.actions[i].pow(p);
                let bp = alg.pmap_of(&alg.unit(i))?;
                let shift =
                    SparseMat::identity(f.clone(), self.dim()).scale(&f.pow(&xi.values[i], p));
                let rhs = self.matrix_of(&bp).add(&shift);
                if lhs != rhs {
                    return Err(Error::InvalidCharacter(format!(
                        "p-power relation fails at {}",
                        alg.space.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// JSON with basis labels and the action matrices as sparse triples.
    pub fn to_json(&self) -> String {
        let f = &self.field;
        let dump = ModuleDump {
            basis: self
                .space
                .labels
                .iter()
                .zip(&self.space.parity)
                .map(|(l, p)| (l.clone(), p.bit() as u8))
                .collect(),
            actions: self
                .actions
                .iter()
                .enumerate()
                .flat_map(|(g, a)| {
                    a.row_data.iter().enumerate().flat_map(move |(r, row)| {
                        row.iter().map(move |(c, x)| (g, r, *c, f.format_elem(x)))
                    })
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dump).expect("serializable")
    }
}

/// `U_ξ(g) ⊗_{U_ξ(s)} k_λ` where `s` is spanned by the trailing letters of the PBW order.
#[derive(Clone, Debug)]
pub struct InducedModule<F: Field> {
    pub module: Module<F>,
    /// Normal monomials in the complement letters `0..s_start`, indexing the module basis.
    pub basis: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
    pub s_start: usize,
    /// `λ(b_k)` for the letters `k >= s_start`.
    pub chi_s: Vec<F::Elem>,
}

/// Checks that letters `s_start..` span a subalgebra (and a restricted one in reduced mode) and
/// that `chi_s` is a one-dimensional representation of it compatible with `ξ`.
pub fn check_inducing_character<F: Field>(
    pbw: &Pbw<F>,
    s_start: usize,
    chi_s: &[F::Elem],
) -> Result<()> {
    let f = pbw.field();
    let alg = &pbw.alg;
    let n = alg.dim();
    if chi_s.len() != n - s_start {
        return Err(Error::DimensionMismatch {
            expected: (n - s_start) as u64,
            found: chi_s.len() as u64,
            context: "character values".into(),
        });
    }
    let lam = |k: usize| &chi_s[k - s_start];
    for k in s_start..n {
        if alg.parity(k).is_odd() && !f.is_zero(lam(k)) {
            return Err(Error::InvalidCharacter(format!(
                "nonzero value on odd {}",
                alg.space.labels[k]
            )));
        }
        for j in s_start..n {
            let br = alg.bracket_basis(k, j);
            if br.iter().any(|(i, _)| *i < s_start) {
                return Err(Error::InvalidCharacter(format!(
                    "[{}, {}] leaves s",
                    alg.space.labels[k], alg.space.labels[j]
                )));
            }
            let val = br
                .iter()
                .fold(f.zero(), |acc, (i, c)| f.add(&acc, &f.mul(c, lam(*i))));
            if !f.is_zero(&val) {
                return Err(Error::InvalidCharacter(format!(
                    "chi_s([{}, {}]) != 0",
                    alg.space.labels[k], alg.space.labels[j]
                )));
            }
        }
    }
    if let super::Mode::Reduced { xi } = &pbw.mode {
        let p = f.characteristic();
        for k in (s_start..n).filter(|&k| alg.parity(k).is_even()) {
            let bp = alg.pmap_of(&alg.unit(k))?;
            if bp.iter().take(s_start).any(|c| !f.is_zero(c)) {
                return Err(Error::InvalidCharacter(format!(
                    "{}^[p] leaves s",
                    alg.space.labels[k]
                )));
            }
            let at_bp = (s_start..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&bp[i], lam(i))));
            let lhs = f.sub(&f.pow(lam(k), p), &at_bp);
            if lhs != f.pow(&xi.values[k], p) {
                return Err(Error::InvalidCharacter(format!(
                    "restrictedness fails at {}",
                    alg.space.labels[k]
                )));
            }
        }
    }
    Ok(())
}

/// `b_i · (m ⊗ 1)` for a complement monomial `m`, as a combination of complement monomials.
/// Trailing letters are absorbed through `chi_s`; valid in both modes.
pub fn induced_action<F: Field>(
    pbw: &Pbw<F>,
    s_start: usize,
    chi_s: &[F::Elem],
    i: usize,
    m: &Monomial,
) -> EnvElement<F> {
    let f = pbw.field();
    let prod = pbw.lmul(i, m);
    let mut out = EnvElement::zero();
    for (mm, c) in &prod.terms {
        let mut coef = c.clone();
        let mut head = mm.clone();
        for k in s_start..mm.0.len() {
            let a = mm.0[k];
            if a > 0 {
                coef = f.mul(&coef, &f.pow(&chi_s[k - s_start], a as u64));
                head.0[k] = 0;
            }
        }
        out.add_term(f, head, coef);
    }
    out
}

/// Builds the induced module with explicit action matrices for every letter.
pub fn induce<F: Field>(
    pbw: &Pbw<F>,
    s_start: usize,
    chi_s: &[F::Elem],
) -> Result<InducedModule<F>> {
    check_inducing_character(pbw, s_start, chi_s)?;
    let f = pbw.field();
    let n = pbw.n();
    let basis = pbw.monomials_over(0..s_start)?;
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    let actions = par::map_range(n, |i| {
        let cols: Vec<Vec<(usize, F::Elem)>> = basis
            .iter()
            .map(|m| {
                induced_action(pbw, s_start, chi_s, i, m)
                    .terms
                    .into_iter()
                    .map(|(mm, c)| (index[&mm], c))
                    .collect()
            })
            .collect();
        SparseMat::from_columns(f.clone(), basis.len(), &cols)
    });
    let labels = basis
        .iter()
        .map(|m| m.label(&pbw.alg.space.labels))
        .collect();
    let parity = basis
        .iter()
        .map(|m| m.parity(&pbw.alg.space.parity))
        .collect();
    let module = Module {
        field: f.clone(),
        space: GradedSpace::new(labels, parity),
        actions,
    };
    if let (Some(total), Ok(s_dim)) = (
        pbw.reduced_dim(),
        pbw.monomials_over(s_start..n).map(|v| v.len() as u128),
    ) {
        if module.dim() as u128 * s_dim != total {
            return Err(Error::DimensionMismatch {
                expected: (total / s_dim) as u64,
                found: module.dim() as u64,
                context: "induced module".into(),
            });
        }
    }
    Ok(InducedModule {
        module,
        basis,
        index,
        s_start,
        chi_s: chi_s.to_vec(),
    })
}

/// `{v : (x - η(x)) v = 0 for x in m_basis}`.
///
/// `η - χ` must vanish on `m`; `m_basis` is given in the algebra coordinates of `module`.
pub fn whittaker_invariants<F: Field>(
    module: &Module<F>,
    m_basis: &[Vec<F::Elem>],
    chi: &PCharacter<F>,
    eta: &PCharacter<F>,
) -> Result<Subspace<F>> {
    let f = &module.field;
    for x in m_basis {
        let d = f.sub(&eta.eval(f, x), &chi.eval(f, x));
        if !f.is_zero(&d) {
            return Err(Error::CharacterMismatch(
                "eta - chi does not vanish on m".into(),
            ));
        }
    }
    let dim = module.dim();
    let mut e = Echelon::new(f.clone(), dim);
    for x in m_basis {
        let shifted = module
            .matrix_of(x)
            .sub(&SparseMat::identity(f.clone(), dim).scale(&eta.eval(f, x)));
        for r in 0..dim {
            if e.is_full() {
                break;
            }
            let mut row = linalg::zeros(f, dim);
            for (c, v) in &shifted.row_data[r] {
                row[*c] = v.clone();
            }
            e.insert(row);
        }
    }
    Ok(Subspace::from_spanning(
        f.clone(),
        module.space.clone(),
        e.null_basis(),
    ))
}

/// Coordinates of a vector in the given basis of a subspace.
pub fn subspace_coordinates<F: Field>(s: &Subspace<F>) -> Result<Coordinates<F>> {
    Coordinates::new(s.field.clone(), s.ambient_dim(), &s.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_catalog;

    #[test]
    fn zero_subalgebra_gives_left_regular_module() {
        let g = build_catalog(&"gl(1|1)".parse().unwrap(), 3).unwrap();
        let pbw = Pbw::reduced(g.clone(), PCharacter::zero(&g)).unwrap();
        let m = induce(&pbw, g.dim(), &[]).unwrap();
        assert_eq!(m.module.dim(), 36);
        m.module
            .check_relations(&g, Some(&PCharacter::zero(&g)))
            .unwrap();
        let trivial =
            whittaker_invariants(&m.module, &[], &PCharacter::zero(&g), &PCharacter::zero(&g))
                .unwrap();
        assert_eq!(trivial.dim(), 36);
    }

    #[test]
    fn rejects_characters_that_are_not_representations() {
        let g = build_catalog(&"gl(1|1)".parse().unwrap(), 3).unwrap();
        let pbw = Pbw::reduced(g.clone(), PCharacter::zero(&g)).unwrap();
        // letters E12, E21 span no subalgebra: [E12, E21] = E11 + E22.
        assert!(matches!(
            induce(&pbw, 2, &[0, 0]),
            Err(Error::InvalidCharacter(_))
        ));
        // E21 alone with a nonzero value on an odd letter.
        assert!(matches!(
            induce(&pbw, 3, &[1]),
            Err(Error::InvalidCharacter(_))
        ));
        // E22 with a value that is not a root of λ^3 - λ = 0 fails restrictedness.
        let g2 = g
            .change_basis(
                &[g.unit(0), g.unit(2), g.unit(3), g.unit(1)],
                vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
            )
            .unwrap();
        let pbw2 = Pbw::reduced(g2.clone(), PCharacter::zero(&g2)).unwrap();
        assert!(induce(&pbw2, 3, &[1]).is_ok());
        let mut xi = PCharacter::zero(&g2);
        xi.values[3] = 1;
        let pbw3 = Pbw::reduced(g2, xi).unwrap();
        assert!(matches!(
            induce(&pbw3, 3, &[1]),
            Err(Error::InvalidCharacter(_))
        ));
    }
}
