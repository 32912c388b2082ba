use std::sync::OnceLock;

use serde::Serialize;

use super::superalg::AssocSuperAlgebra;
use crate::arith::{Field, PrimeField};
use crate::dynkin::NilpotentFrame;
use crate::envelope::{whittaker_invariants, AdaptedAlgebra, InducedModule, Module, Pbw};
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::{self, solve_right, GradedMap, GradedSpace, Mat, Parity, Subspace};
use crate::modrep::FpModule;
use crate::par;

/// `U_η(g, e)`: the twisted `m`-invariants of `Q_χ^η` with `u · v = ũ v` for any lift `ũ` of `u`.
///
/// Elements are stored by their coordinates in the reduced echelon basis of the carrier, so the
/// coordinates of an invariant are its entries at the pivot monomials.
pub struct ReducedWAlgebra {
    pub adapted: AdaptedAlgebra<PrimeField>,
    pub pbw: Pbw<PrimeField>,
    /// `η` in letter coordinates.
    pub eta: PCharacter<PrimeField>,
    pub q: InducedModule<PrimeField>,
    pub carrier: Subspace<PrimeField>,
    pub parity: Vec<Parity>,
    pub unit: Vec<u64>,
    table: OnceLock<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaGenerator {
    /// 1-based.
    pub index: usize,
    /// Letter carrying the leading term.
    pub letter: usize,
    pub leading_term: String,
    pub kazhdan_degree: i32,
    pub parity: u8,
    /// Coordinates in the W-algebra.
    pub coords: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OddCaseReport {
    pub applicable: bool,
    /// `½·middle_norm`.
    pub expected_scalar: Option<u64>,
    pub square_is_expected_scalar: bool,
    /// `[Θ, Θ] = 2Θ²` is a nonzero multiple of the unit.
    pub bracket_is_unit_multiple: bool,
    /// Any algebra map to `k` kills the odd `Θ`, contradicting `Θ² = c·1` with `c ≠ 0`.
    pub no_one_dimensional_representation: bool,
}

impl ReducedWAlgebra {
    /// `η` in original coordinates; must agree with `χ` on `m`.
    pub fn new(
        alg: &SuperAlgebraData<PrimeField>,
        frame: &NilpotentFrame<PrimeField>,
        eta: &PCharacter<PrimeField>,
    ) -> Result<Self> {
        let f = alg.field;
        let adapted = AdaptedAlgebra::new(alg, frame)?;
        let eta_l = adapted.character(eta);
        let pbw = Pbw::reduced(adapted.alg.clone(), eta_l.clone())?;
        let q = adapted.gelfand_graev(&pbw, &eta_l)?;
        let carrier = whittaker_invariants(&q.module, &adapted.m_letters(), &adapted.chi, &eta_l)?;
        let inv = adapted.invariants;
        let p = f.p() as u128;
        let expected = p.pow(inv.l as u32) * 2u128.pow(inv.q_prime as u32);
        if carrier.dim() as u128 != expected {
            return Err(Error::DimensionMismatch {
                expected: expected as u64,
                found: carrier.dim() as u64,
                context: "reduced W-superalgebra".into(),
            });
        }
        let parity = carrier
            .basis
            .iter()
            .map(|v| {
                linalg::vec_parity(&f, v, &q.module.space.parity)
                    .ok_or_else(|| Error::ParityViolation("inhomogeneous invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let one = q.index[&crate::envelope::Monomial::one(pbw.n())];
        let unit = carrier
            .coords(&linalg::unit(&f, q.module.dim(), one))
            .ok_or_else(|| Error::Unsupported("1 ⊗ 1 is not invariant".into()))?;
        Ok(ReducedWAlgebra {
            adapted,
            pbw,
            eta: eta_l,
            q,
            carrier,
            parity,
            unit,
            table: OnceLock::new(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.carrier.field
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `(even, odd)` dimensions.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    /// `p^{#x - l + s} 2^{#y - q + t}`, the factor relating `dim W` to `dim Q_χ^η`.
    pub fn box_factor(&self) -> u128 {
        let inv = self.adapted.invariants;
        let count = |k| self.adapted.letters.iter().filter(|l| l.kind == k).count();
        let (nx, ny) = (
            count(crate::envelope::LetterKind::X),
            count(crate::envelope::LetterKind::Y),
        );
        (self.field().p() as u128).pow((nx - inv.l + inv.s) as u32)
            * 2u128.pow((ny - inv.q + inv.t) as u32)
    }

    /// The element of `Q_χ^η` with the given W-coordinates.
    pub fn to_q(&self, coords: &[u64]) -> Vec<u64> {
        let f = self.field();
        let terms: Vec<(u64, &[u64])> = coords
            .iter()
            .zip(&self.carrier.basis)
            .filter(|(c, _)| **c != 0)
            .map(|(c, b)| (*c, b.as_slice()))
            .collect();
        linalg::combine(&f, self.q.module.dim(), &terms)
    }

    /// `ρ(b)v` for every basis monomial `b` of `Q`, by peeling off first letters.
    fn orbit(&self, module: &Module<PrimeField>, v: &[u64]) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::with_capacity(self.q.basis.len());
        for m in &self.q.basis {
            match m.0.iter().position(|&a| a > 0) {
                None => out.push(v.to_vec()),
                Some(i) => {
                    let mut rest = m.clone();
                    rest.0[i] -= 1;
                    out.push(module.act(i, &out[self.q.index[&rest]]));
                }
            }
        }
        out
    }

    /// `ũ w` for `u ∈ Q_χ^η` and `w` in a module for the letter algebra.
    fn lift_act(&self, module: &Module<PrimeField>, u: &[u64], w: &[u64]) -> Vec<u64> {
        let f = self.field();
        let orbit = self.orbit(module, w);
        let terms: Vec<(u64, &[u64])> = u
            .iter()
            .zip(&orbit)
            .filter(|(c, _)| **c != 0)
            .map(|(c, o)| (*c, o.as_slice()))
            .collect();
        linalg::combine(&f, module.dim(), &terms)
    }

    /// Product in `Q_χ^η` of two invariants.
    pub fn mul_q(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        self.lift_act(&self.q.module, u, v)
    }

    /// Product of W-coordinates, without the table.
    pub fn mul_direct(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        let w = self.mul_q(&self.to_q(a), &self.to_q(b));
        self.carrier
            .coords(&w)
            .ok_or_else(|| Error::Unsupported("product left the invariants".into()))
    }

    /// Structure constants `b_i b_j`, built once; fails if a product leaves the carrier.
    pub fn table(&self) -> Result<&Vec<Vec<u64>>> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let f = self.field();
        let n = self.dim();
        let nq = self.q.module.dim();
        let columns: Vec<Result<Vec<Vec<u64>>>> = par::map_range(n, |j| {
            let orbit = self.orbit(&self.q.module, &self.carrier.basis[j]);
            (0..n)
                .map(|i| {
                    let terms: Vec<(u64, &[u64])> = self.carrier.basis[i]
                        .iter()
                        .zip(&orbit)
                        .filter(|(c, _)| **c != 0)
                        .map(|(c, o)| (*c, o.as_slice()))
                        .collect();
                    let w = linalg::combine(&f, nq, &terms);
                    self.carrier
                        .coords(&w)
                        .ok_or_else(|| Error::Unsupported(format!("b{i} b{j} left the invariants")))
                })
                .collect()
        });
        let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
        let table = (0..n * n).map(|k| columns[k % n][k / n].clone()).collect();
        Ok(self.table.get_or_init(|| table))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        let f = self.field();
        let n = self.dim();
        let t = self.table()?;
        let mut out = vec![0; n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                linalg::axpy(&f, &mut out, &f.mul(x, y), &t[i * n + j]);
            }
        }
        Ok(out)
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn is_associative(&self) -> Result<bool> {
        let n = self.dim();
        let f = self.field();
        let t = self.table()?;
        let ok = par::map_range(n, |i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let ek = linalg::unit(&f, n, k);
                    let ei = linalg::unit(&f, n, i);
                    self.mul(&t[i * n + j], &ek).ok() == self.mul(&ei, &t[j * n + k]).ok()
                })
            })
        });
        Ok(ok.into_iter().all(|b| b))
    }

    pub fn to_assoc(&self) -> Result<AssocSuperAlgebra> {
        AssocSuperAlgebra::new(
            self.field(),
            GradedSpace::anonymous(self.parity.clone()),
            self.table()?.clone(),
            self.unit.clone(),
        )
    }

    /// Invariants with leading term `Y_k`: the single letter `Y_k` with coefficient 1, no other
    /// single letter of the same Kazhdan degree, and nothing of higher degree.
    pub fn extract_theta(&self) -> Result<Vec<ThetaGenerator>> {
        let f = self.field();
        let a = &self.adapted;
        let n = self.dim();
        let degrees: Vec<i32> = self
            .q
            .basis
            .iter()
            .map(|m| m.weighted_degree(&a.weights))
            .collect();
        let single = |m: &crate::envelope::Monomial| {
            (m.length() == 1).then(|| m.0.iter().position(|&x| x == 1).expect("one letter"))
        };
        a.pure
            .iter()
            .enumerate()
            .map(|(k, &letter)| {
                let d = a.weights[letter];
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                for (idx, m) in self.q.basis.iter().enumerate() {
                    let s = single(m);
                    let constrained = degrees[idx] > d || (degrees[idx] == d && s.is_some());
                    if constrained {
                        rows.push(
                            self.carrier
                                .basis
                                .iter()
                                .map(|b| b[idx])
                                .collect::<Vec<u64>>(),
                        );
                        rhs.push(if s == Some(letter) { 1 } else { 0 });
                    }
                }
                let map = GradedMap::plain(Mat::from_rows(f, n, rows));
                let sol = solve_right(&map, &rhs).map_err(|_| {
                    Error::ExtractionFailure(format!(
                        "no invariant with leading term {}",
                        a.letters[letter].label()
                    ))
                })?;
                Ok(ThetaGenerator {
                    index: k + 1,
                    letter,
                    leading_term: a.letters[letter].label(),
                    kazhdan_degree: d,
                    parity: a.alg.parity(letter).bit() as u8,
                    coords: sol.particular,
                })
            })
            .collect()
    }

    /// Identities for the odd `Θ` with leading term the middle `v`, when `r` is odd.
    pub fn odd_case_identities(&self, thetas: &[ThetaGenerator]) -> Result<OddCaseReport> {
        let f = self.field();
        let (Some(mid), Some(c)) = (self.adapted.middle, self.adapted.middle_norm) else {
            return Ok(OddCaseReport {
                applicable: false,
                expected_scalar: None,
                square_is_expected_scalar: false,
                bracket_is_unit_multiple: false,
                no_one_dimensional_representation: false,
            });
        };
        let theta = thetas
            .iter()
            .find(|t| t.letter == mid)
            .ok_or_else(|| Error::ExtractionFailure("no middle generator".into()))?;
        let sq = self.mul_direct(&theta.coords, &theta.coords)?;
        let half_c = f.mul(&f.half(), &c);
        let expected = linalg::scale_vec(&f, &half_c, &self.unit);
        let bracket = linalg::scale_vec(&f, &2, &sq);
        let unit_multiple = !linalg::is_zero_vec(&f, &bracket)
            && (0..self.dim()).all(|i| bracket[i] == f.mul(&f.from_i64(2), &expected[i]));
        Ok(OddCaseReport {
            applicable: true,
            expected_scalar: Some(half_c),
            square_is_expected_scalar: sq == expected,
            bracket_is_unit_multiple: unit_multiple,
            no_one_dimensional_representation: sq == expected && !f.is_zero(&half_c),
        })
    }

    /// Supercentralizer of a homogeneous element, as a subspace of W-coordinates.
    pub fn supercentralizer(&self, x: &[u64]) -> Result<Subspace<PrimeField>> {
        let f = self.field();
        let n = self.dim();
        let px = linalg::vec_parity(&f, x, &self.parity)
            .ok_or_else(|| Error::ParityViolation("inhomogeneous element".into()))?;
        let xq = self.to_q(x);
        let x_orbit = self.orbit(&self.q.module, &xq);
        let cols: Vec<Vec<u64>> = par::map_range(n, |i| {
            let bq = &self.carrier.basis[i];
            let terms: Vec<(u64, &[u64])> = bq
                .iter()
                .zip(&x_orbit)
                .filter(|(c, _)| **c != 0)
                .map(|(c, o)| (*c, o.as_slice()))
                .collect();
            let bx = linalg::combine(&f, bq.len(), &terms);
            let xb = self.mul_q(&xq, bq);
            let sign = if px.is_odd() && self.parity[i].is_odd() {
                f.from_i64(-1)
            } else {
                f.one()
            };
            let d = linalg::sub_vec(&f, &bx, &linalg::scale_vec(&f, &sign, &xb));
            self.carrier.pivots.iter().map(|&pv| d[pv]).collect()
        });
        let m = Mat::from_cols(f, n, &cols);
        Ok(Subspace::from_spanning(
            f,
            GradedSpace::anonymous(self.parity.clone()),
            m.echelon().null_basis(),
        ))
    }

    /// `W′`: the supercentralizer of the middle `Θ`, or all of W when `r` is even.
    pub fn w_prime(&self, thetas: &[ThetaGenerator]) -> Result<Subspace<PrimeField>> {
        match self
            .adapted
            .middle
            .and_then(|mid| thetas.iter().find(|t| t.letter == mid))
        {
            Some(t) => self.supercentralizer(&t.coords),
            None => Ok(Subspace::whole(
                self.field(),
                GradedSpace::anonymous(self.parity.clone()),
            )),
        }
    }

    /// The action of W-elements on `M^m ⊂ M` for a module `M` over the letter algebra.
    pub fn whittaker_action(
        &self,
        module: &Module<PrimeField>,
        invariants: &Subspace<PrimeField>,
        elements: &[Vec<u64>],
    ) -> Result<FpModule> {
        let f = self.field();
        let basis = invariants.homogeneous_basis();
        let inv = Subspace::from_spanning(f, module.space.clone(), basis.iter().cloned());
        let coords = crate::linalg::Coordinates::new(f, module.dim(), &basis)?;
        let space = GradedSpace::anonymous(
            basis
                .iter()
                .map(|v| {
                    linalg::vec_parity(&f, v, &module.space.parity)
                        .ok_or_else(|| Error::ParityViolation("inhomogeneous invariant".into()))
                })
                .collect::<Result<_>>()?,
        );
        let mut gens = Vec::new();
        let mut gen_parity = Vec::new();
        for e in elements {
            let eq = self.to_q(e);
            let cols = basis
                .iter()
                .map(|v| {
                    let w = self.lift_act(module, &eq, v);
                    if !inv.contains(&w) {
                        return Err(Error::Unsupported("W-action leaves the invariants".into()));
                    }
                    Ok(coords.coords(&w).expect("inside"))
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(Mat::from_cols(f, basis.len(), &cols));
            gen_parity.push(
                linalg::vec_parity(&f, e, &self.parity)
                    .ok_or_else(|| Error::ParityViolation("inhomogeneous element".into()))?,
            );
        }
        Ok(FpModule::new(f, space, gens, gen_parity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, nilpotent_frame};
    use crate::lie::build_q;

    pub(crate) fn osp12_w(p: u64) -> ReducedWAlgebra {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let gp = g.reduce_mod_p(p).unwrap();
        let frp = fr.reduce_mod_p(&gp).unwrap();
        ReducedWAlgebra::new(&gp, &frp, &frp.chi).unwrap()
    }

    #[test]
    fn osp12_dimension_and_associativity() {
        let w = osp12_w(3);
        assert_eq!(w.dim(), 12);
        assert_eq!(w.dim() as u128 * w.box_factor(), w.q.module.dim() as u128);
        assert!(w.is_associative().unwrap());
        let x = vec![1, 2, 0, 1, 0, 0, 1, 0, 2, 0, 0, 1];
        assert_eq!(w.mul(&w.unit, &x).unwrap(), x);
        assert_eq!(w.mul(&x, &w.unit).unwrap(), x);
    }

    #[test]
    fn osp12_theta_generators() {
        let w = osp12_w(3);
        let th = w.extract_theta().unwrap();
        let lead: Vec<(&str, i32)> = th
            .iter()
            .map(|t| (t.leading_term.as_str(), t.kazhdan_degree))
            .collect();
        assert_eq!(lead, [("x1", 4), ("y1", 3), ("v1", 1)]);
        let rep = w.odd_case_identities(&th).unwrap();
        assert!(
            rep.applicable
                && rep.square_is_expected_scalar
                && rep.bracket_is_unit_multiple
                && rep.no_one_dimensional_representation
        );
        // The middle norm is 2, a non-square mod 3, so the frame stays un-normalized.
        assert_eq!(w.adapted.middle_norm, Some(2));
        assert_eq!(rep.expected_scalar, Some(1));
        assert_eq!(w.w_prime(&th).unwrap().dim(), 6);
    }

    #[test]
    /// At `λ = (p-1)/2` the invariants are type `Q` over `W` itself and split over `W'` into a
    /// module and its parity shift; elsewhere they are type `M` over `W` and type `Q` over `W'`.
    fn whittaker_invariant_types_of_baby_vermas() {
        use crate::envelope::{borel_weights, BorelData};
        use crate::wfinite::{module_type, ModuleType};
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let gp = g.reduce_mod_p(3).unwrap();
        let frp = fr.reduce_mod_p(&gp).unwrap();
        let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi).unwrap();
        let b = BorelData::new(&gp, &borel_weights(&g, &fr.triple().h).unwrap(), &frp.chi).unwrap();
        let th = w.extract_theta().unwrap();
        let wp = w.w_prime(&th).unwrap();
        for lam in b.restricted_weights() {
            let z = b
                .baby_verma(&lam)
                .unwrap()
                .module
                .in_basis(&b.original_basis_in_letters())
                .in_basis(&w.adapted.vectors);
            let inv =
                whittaker_invariants(&z, &w.adapted.m_letters(), &w.adapted.chi, &w.adapted.chi)
                    .unwrap();
            assert_eq!(inv.dim(), 2);
            let all: Vec<Vec<u64>> = (0..w.dim())
                .map(|i| linalg::unit(&w.field(), w.dim(), i))
                .collect();
            let over_w = w.whittaker_action(&z, &inv, &all).unwrap();
            let over_wp = w
                .whittaker_action(&z, &inv, &wp.homogeneous_basis())
                .unwrap();
            if lam[0] == 1 {
                assert_eq!(module_type(&over_w).unwrap(), ModuleType::Q);
                assert!(module_type(&over_wp).is_err());
                assert!(!crate::modrep::certify(&over_wp, 0).unwrap().is_simple());
            } else {
                assert_eq!(module_type(&over_w).unwrap(), ModuleType::M);
                assert_eq!(module_type(&over_wp).unwrap(), ModuleType::Q);
            }
        }
    }
}
