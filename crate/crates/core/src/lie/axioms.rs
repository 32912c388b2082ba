use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{to_dense, SuperAlgebraData};
use crate::arith::Field;
use crate::linalg::{self, Mat};

/// Random samples used for the p-map identities that are not finite checks on the basis.
const PMAP_SAMPLES: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name,
            pass: witness.is_none(),
            witness,
        });
    }
}

fn sign<F: Field>(f: &F, negative: bool) -> F::Elem {
    if negative {
        f.from_i64(-1)
    } else {
        f.one()
    }
}

/// Checks every identity required of a Lie superalgebra with invariant form and,
/// when present, of its p-map. Each failing check carries one witness.
pub fn verify_axioms<F: Field>(alg: &SuperAlgebraData<F>) -> AxiomReport {
    let f = &alg.field;
    let n = alg.dim();
    let par = &alg.space.parity;
    let name = |i: usize| alg.space.labels[i].clone();
    let mut report = AxiomReport::default();

    let mut witness = None;
    'anti: for i in 0..n {
        for j in 0..n {
            let s = sign(f, !par[i].koszul_negative(par[j]));
            let lhs = to_dense(f, n, alg.bracket_basis(i, j));
            let rhs = linalg::scale_vec(f, &s, &to_dense(f, n, alg.bracket_basis(j, i)));
            if lhs != rhs {
                witness = Some(format!("({}, {})", name(i), name(j)));
                break 'anti;
            }
        }
    }
    report.push("super-anticommutativity", witness);

    let mut witness = None;
    'par: for i in 0..n {
        for j in 0..n {
            if alg
                .bracket_basis(i, j)
                .iter()
                .any(|(k, _)| par[*k] != par[i].plus(par[j]))
            {
                witness = Some(format!(
                    "[{}, {}] is not homogeneous of the expected parity",
                    name(i),
                    name(j)
                ));
                break 'par;
            }
        }
    }
    report.push("bracket-parity", witness);

    // ad b_i ad b_j - (-1)^{|i||j|} ad b_j ad b_i = ad [b_i, b_j], column by column.
    let ads: Vec<Mat<F>> = (0..n).map(|i| alg.ad_basis(i)).collect();
    let mut witness = None;
    'jac: for i in 0..n {
        for j in 0..n {
            let lhs = ads[i].mul(&ads[j]).sub(
                &ads[j]
                    .mul(&ads[i])
                    .scale(&sign(f, par[i].koszul_negative(par[j]))),
            );
            let rhs = alg.ad(&to_dense(f, n, alg.bracket_basis(i, j)));
            if lhs != rhs {
                let k = (0..n).find(|&k| lhs.col(k) != rhs.col(k)).unwrap_or(0);
                witness = Some(format!("({}, {}, {})", name(i), name(j), name(k)));
                break 'jac;
            }
        }
    }
    report.push("super-jacobi", witness);

    let mut witness = None;
    'even: for i in 0..n {
        for j in 0..n {
            if par[i] != par[j] && !f.is_zero(alg.form.get(i, j)) {
                witness = Some(format!(
                    "({}, {}) pairs opposite parities",
                    name(i),
                    name(j)
                ));
                break 'even;
            }
        }
    }
    report.push("form-even", witness);

    let mut witness = None;
    'sym: for i in 0..n {
        for j in 0..n {
            let s = sign(f, par[i].koszul_negative(par[j]));
            if *alg.form.get(i, j) != f.mul(&s, alg.form.get(j, i)) {
                witness = Some(format!("({}, {})", name(i), name(j)));
                break 'sym;
            }
        }
    }
    report.push("form-supersymmetric", witness);

    let mut witness = None;
    'inv: for i in 0..n {
        for j in 0..n {
            let bij = to_dense(f, n, alg.bracket_basis(i, j));
            for k in 0..n {
                let bjk = to_dense(f, n, alg.bracket_basis(j, k));
                if alg.form_eval(&bij, &alg.unit(k)) != alg.form_eval(&alg.unit(i), &bjk) {
                    witness = Some(format!("({}, {}, {})", name(i), name(j), name(k)));
                    break 'inv;
                }
            }
        }
    }
    report.push("form-invariant", witness);

    let rank = alg.form.rank();
    report.push(
        "form-nondegenerate",
        (rank < n).then(|| format!("rank {rank} < {n}")),
    );

    if alg.pmap.is_some() && alg.characteristic() > 2 {
        verify_pmap(alg, &ads, &mut report);
    }
    report
}

fn verify_pmap<F: Field>(alg: &SuperAlgebraData<F>, ads: &[Mat<F>], report: &mut AxiomReport) {
    let f = &alg.field;
    let n = alg.dim();
    let p = alg.characteristic();
    let table = alg.pmap.as_ref().expect("checked by caller");
    let evens = alg.even_indices();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_even = |rng: &mut ChaCha8Rng| -> Vec<F::Elem> {
        let mut x = alg.zero_vec();
        for &i in &evens {
            x[i] = f.random(rng);
        }
        x
    };

    let mut witness = None;
    for (i, entry) in table.iter().enumerate() {
        let ok = match entry {
            Some(v) => alg.parity(i).is_even() && v.iter().all(|(k, _)| alg.parity(*k).is_even()),
            None => alg.parity(i).is_odd(),
        };
        if !ok {
            witness = Some(format!("p-map entry for {}", alg.space.labels[i]));
            break;
        }
    }
    report.push("pmap-even", witness);

    let mut witness = None;
    for _ in 0..PMAP_SAMPLES {
        let x = random_even(&mut rng);
        let k = f.random(&mut rng);
        let kx = linalg::scale_vec(f, &k, &x);
        let lhs = alg.pmap_of(&kx);
        let rhs = alg
            .pmap_of(&x)
            .map(|v| linalg::scale_vec(f, &f.pow(&k, p), &v));
        if lhs != rhs {
            witness = Some(format!("k = {}", f.format_elem(&k)));
            break;
        }
    }
    report.push("pmap-semilinear", witness);

    // (b): exact on the even basis, sampled on combinations.
    let mut witness = None;
    for &i in &evens {
        let xp = to_dense(f, n, table[i].as_ref().expect("even entry"));
        if alg.ad(&xp) != ads[i].pow(p) {
            witness = Some(format!(
                "ad({}^[p]) != (ad {})^p",
                alg.space.labels[i], alg.space.labels[i]
            ));
            break;
        }
    }
    if witness.is_none() {
        for s in 0..PMAP_SAMPLES {
            let x = random_even(&mut rng);
            match alg.pmap_of(&x) {
                Ok(xp) if alg.ad(&xp) == alg.ad(&x).pow(p) => {}
                _ => {
                    witness = Some(format!("random sample {s}"));
                    break;
                }
            }
        }
    }
    report.push("pmap-ad-compatible", witness);

    // (c): ad of both sides, plus the matrix identity when a realization exists.
    let mut witness = None;
    for s in 0..PMAP_SAMPLES {
        let x = random_even(&mut rng);
        let y = random_even(&mut rng);
        let xy = linalg::add_vec(f, &x, &y);
        let mut rhs = linalg::add_vec(
            f,
            &alg.pmap_of(&x).expect("table present"),
            &alg.pmap_of(&y).expect("table present"),
        );
        for t in alg.jacobson_terms(&x, &y) {
            rhs = linalg::add_vec(f, &rhs, &t);
        }
        let ok_ad = alg.ad(&xy).pow(p) == alg.ad(&rhs);
        let ok_mat = alg
            .realization
            .as_ref()
            .is_none_or(|r| r.matrix_of(&xy).pow(p) == r.matrix_of(&rhs));
        if !(ok_ad && ok_mat) {
            witness = Some(format!("random pair {s}"));
            break;
        }
    }
    report.push("pmap-jacobson", witness);
}

#[cfg(test)]
mod tests {
    use super::super::{build_catalog, build_q};
    use super::*;
    use crate::arith::Rationals;

    #[test]
    fn catalog_passes_over_fp() {
        for p in [3, 5, 7] {
            for k in ["gl(1|1)", "gl(2|1)", "sl(2|1)", "osp(1|2)"] {
                let alg = build_catalog(&k.parse().unwrap(), p).unwrap();
                let r = verify_axioms(&alg);
                assert!(r.all_pass(), "{k} over F_{p}: {r:?}");
                assert!(r.get("pmap-jacobson").is_some());
            }
        }
    }

    #[test]
    fn zero_form_fails_nondegeneracy() {
        let mut alg = build_q(&"gl(1|1)".parse().unwrap()).unwrap();
        alg.form = Mat::zeros(Rationals, 4, 4);
        let r = verify_axioms(&alg);
        assert!(!r.get("form-nondegenerate").unwrap().pass);
        assert!(r.get("super-jacobi").unwrap().pass);
    }

    #[test]
    fn flipped_sign_breaks_jacobi() {
        let mut alg = build_q(&"gl(2|1)".parse().unwrap()).unwrap();
        let n = alg.dim();
        let f = Rationals;
        // Flip [E12, E21] and its mirror so anticommutativity still holds.
        let i = alg.space.labels.iter().position(|l| l == "E12").unwrap();
        let j = alg.space.labels.iter().position(|l| l == "E21").unwrap();
        for (a, b) in [(i, j), (j, i)] {
            for (_, c) in alg.brackets[a * n + b].iter_mut() {
                *c = f.neg(c);
            }
        }
        let r = verify_axioms(&alg);
        assert!(r.get("super-anticommutativity").unwrap().pass);
        let jac = r.get("super-jacobi").unwrap();
        assert!(!jac.pass);
        assert!(jac.witness.as_ref().unwrap().starts_with('('));
    }
}
