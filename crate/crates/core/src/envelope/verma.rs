use crate::arith::{Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::{Coordinates, Echelon, GradedSpace, Mat, Subspace};

use super::{induce, InducedModule, Pbw};

/// Integral weights `d_i` on the realization's basis: `h` first, then a generic element of
/// the diagonal Cartan subalgebra, then the index. Matrix units `E_ij` with `d_i > d_j` span
/// the positive part of the Borel. The Cartan tie-break matters when `h` has repeated
/// entries (`e = 0` in particular), where index order need not give a subalgebra.
pub fn borel_weights(
    alg: &SuperAlgebraData<Rationals>,
    h: &[<Rationals as Field>::Elem],
) -> Result<Vec<i64>> {
    let r = alg
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("Borel selection needs a matrix realization".into()))?;
    let m = r.matrix_of(h);
    let n = m.rows;
    for i in 0..n {
        for j in 0..n {
            if i != j && !Rationals.is_zero(m.get(i, j)) {
                return Err(Error::Unsupported(
                    "h is not diagonal in the realization".into(),
                ));
            }
        }
    }
    // Coefficients 1, 10, 100, ... on a Cartan basis separate the diagonal entries generically.
    let cartan = supported_on(alg, |i, j| i == j)?.homogeneous_basis();
    let mut generic = alg.zero_vec();
    let mut c = <Rationals as Field>::Elem::from_integer(1.into());
    for t in &cartan {
        generic = crate::linalg::add_vec(
            &Rationals,
            &generic,
            &crate::linalg::scale_vec(&Rationals, &c, t),
        );
        c *= <Rationals as Field>::Elem::from_integer(10.into());
    }
    let g = r.matrix_of(&generic);
    let mut entries: Vec<_> = (0..n).map(|i| g.get(i, i).clone()).collect();
    entries.sort();
    entries.dedup();
    let rank = |i: usize| entries.binary_search(g.get(i, i)).expect("present") as i64;
    (0..n)
        .map(|i| {
            let d =
                crate::arith::rational_to_i64(m.get(i, i)).ok_or(Error::NonIntegerEigenvalue)?;
            Ok(1_000_000 * d + 1000 * rank(i) + (n - i) as i64)
        })
        .collect()
}

/// Elements whose realization matrices vanish off the allowed positions.
pub(crate) fn supported_on<F: Field>(
    alg: &SuperAlgebraData<F>,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<Subspace<F>> {
    let f = &alg.field;
    let r = alg
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("needs a matrix realization".into()))?;
    let n = r.dim();
    let mut e = Echelon::new(f.clone(), alg.dim());
    for i in 0..n {
        for j in 0..n {
            if !allowed(i, j) {
                e.insert(
                    r.matrices
                        .iter()
                        .map(|m: &Mat<F>| m.get(i, j).clone())
                        .collect(),
                );
            }
        }
    }
    Ok(Subspace::from_spanning(
        f.clone(),
        alg.space.clone(),
        e.null_basis(),
    ))
}

/// The triangular decomposition `n^- ⊕ t ⊕ n^+` used for baby Verma modules, with the algebra
/// rewritten in that PBW order (Borel letters last) and a shared PBW engine for `U_χ(g)`.
pub struct BorelData {
    /// Letter `i` in original coordinates.
    pub letters: Vec<Vec<u64>>,
    pub pbw: Pbw<PrimeField>,
    /// Number of `n^-` letters; the Borel starts here.
    pub s_start: usize,
    /// Number of Cartan letters, which follow `n^-`.
    pub rank: usize,
    pub chi: PCharacter<PrimeField>,
    coords: Coordinates<PrimeField>,
}

impl BorelData {
    /// `weights` from [`borel_weights`]; `chi` in original coordinates.
    pub fn new(
        alg: &SuperAlgebraData<PrimeField>,
        weights: &[i64],
        chi: &PCharacter<PrimeField>,
    ) -> Result<Self> {
        let f = alg.field;
        let cartan = supported_on(alg, |i, j| i == j)?;
        let nplus = supported_on(alg, |i, j| weights[i] > weights[j])?;
        let nminus = supported_on(alg, |i, j| weights[i] < weights[j])?;
        let mut letters = nminus.homogeneous_basis();
        let s_start = letters.len();
        letters.extend(cartan.homogeneous_basis());
        let rank = cartan.dim();
        letters.extend(nplus.homogeneous_basis());
        if letters.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim() as u64,
                found: letters.len() as u64,
                context: "triangular decomposition".into(),
            });
        }
        for t in &letters[s_start..s_start + rank] {
            if alg.pmap_of(t)? != *t {
                return Err(Error::Unsupported("Cartan basis is not toral".into()));
            }
            if !f.is_zero(&chi.eval(&f, t)) {
                return Err(Error::Unsupported(
                    "chi does not vanish on the Cartan subalgebra".into(),
                ));
            }
        }
        for x in &letters[s_start + rank..] {
            if !f.is_zero(&chi.eval(&f, x)) {
                return Err(Error::InvalidCharacter("chi does not vanish on n+".into()));
            }
        }
        let labels = (0..letters.len())
            .map(|i| match i {
                i if i < s_start => format!("n{}", i + 1),
                i if i < s_start + rank => format!("t{}", i - s_start + 1),
                i => format!("e{}", i - s_start - rank + 1),
            })
            .collect();
        let new_alg = alg.change_basis(&letters, labels)?;
        let coords = Coordinates::new(f, alg.dim(), &letters)?;
        let chi_letters = PCharacter {
            values: letters
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if new_alg.parity(i).is_even() {
                        chi.eval(&f, v)
                    } else {
                        0
                    }
                })
                .collect(),
            dual_element: None,
        };
        let pbw = Pbw::reduced(new_alg, chi_letters.clone())?;
        Ok(BorelData {
            letters,
            pbw,
            s_start,
            rank,
            chi: chi_letters,
            coords,
        })
    }

    pub fn alg(&self) -> &SuperAlgebraData<PrimeField> {
        &self.pbw.alg
    }

    /// All `λ ∈ F_p^rank` (values on the toral Cartan letters), in lexicographic order;
    /// with `χ(t) = 0` these are exactly the solutions of `λ(t)^p - λ(t^{[p]}) = χ(t)^p`.
    pub fn restricted_weights(&self) -> Vec<Vec<u64>> {
        let p = self.pbw.field().p();
        let mut out = vec![Vec::new()];
        for _ in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|w| (0..p).map(move |a| [w.clone(), vec![a]].concat()))
                .collect();
        }
        out
    }

    /// `Z_χ(λ)` in letter coordinates.
    pub fn baby_verma(&self, lambda: &[u64]) -> Result<InducedModule<PrimeField>> {
        let n = self.alg().dim();
        let mut chi_s = vec![0u64; n - self.s_start];
        chi_s[..self.rank].copy_from_slice(lambda);
        induce(&self.pbw, self.s_start, &chi_s)
    }

    /// Letter coordinates of the original basis vectors.
    pub fn original_basis_in_letters(&self) -> Vec<Vec<u64>> {
        let f = self.pbw.field();
        let n = self.alg().dim();
        (0..n)
            .map(|i| {
                self.coords
                    .coords(&crate::linalg::unit(f, n, i))
                    .expect("letters form a basis")
            })
            .collect()
    }

    /// Graded dimensions of `n^-`, for the expected module dimension `p^{a} 2^{b}`.
    pub fn complement_space(&self) -> GradedSpace {
        GradedSpace::anonymous((0..self.s_start).map(|i| self.alg().parity(i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::envelope::whittaker_invariants;
    use crate::lie::build_q;
    use crate::modrep::{certify, FpModule};

    fn setup(
        kind: &str,
        jt: &str,
        p: u64,
    ) -> (
        SuperAlgebraData<PrimeField>,
        BorelData,
        crate::dynkin::NilpotentFrame<PrimeField>,
    ) {
        let g = build_q(&kind.parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let w = borel_weights(&g, &fr.triple().h).unwrap();
        let gp = g.reduce_mod_p(p).unwrap();
        let frp = fr.reduce_mod_p(&gp).unwrap();
        let b = BorelData::new(&gp, &w, &frp.chi).unwrap();
        (gp, b, frp)
    }

    #[test]
    fn osp12_baby_vermas_are_simple_with_two_dim_invariants() {
        let (gp, b, frp) = setup("osp(1|2)", "jordan:1|2", 3);
        assert_eq!(b.restricted_weights().len(), 3);
        for lam in b.restricted_weights() {
            let z = b.baby_verma(&lam).unwrap();
            assert_eq!(z.module.dim(), 6);
            z.module.check_relations(b.alg(), Some(&b.chi)).unwrap();
            let orig = z.module.in_basis(&b.original_basis_in_letters());
            orig.check_relations(&gp, Some(&frp.chi)).unwrap();
            let fm = FpModule::from_module(&orig, gp.space.parity.clone());
            assert!(certify(&fm, 0).unwrap().is_simple());
            let inv = whittaker_invariants(&orig, &frp.m_basis, &frp.chi, &frp.chi).unwrap();
            assert_eq!(inv.dim(), 2);
        }
    }

    #[test]
    fn gl21_baby_verma_dimension() {
        let (_, b, _) = setup("gl(2|1)", "jordan:2|1", 3);
        assert_eq!(b.rank, 3);
        assert_eq!(b.restricted_weights().len(), 27);
        assert_eq!(b.baby_verma(&[0, 0, 0]).unwrap().module.dim(), 12);
    }
}
