use serde::{Deserialize, Serialize};

use super::{AlgebraKind, SparseVec, SuperAlgebraData};
use crate::arith::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::linalg::{GradedSpace, Mat, Parity};

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    name: String,
    parity: Parity,
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    basis: Vec<BasisEntry>,
    brackets: Vec<(usize, usize, usize, String)>,
    form: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pmap: Option<Vec<(usize, Vec<(usize, String)>)>>,
    field: FieldDescriptor,
}

/// Serializes the structure constants, form and p-map. Zero coefficients are omitted.
pub fn to_json<F: Field>(alg: &SuperAlgebraData<F>) -> String {
    let f = &alg.field;
    let n = alg.dim();
    let basis = alg
        .space
        .labels
        .iter()
        .zip(&alg.space.parity)
        .map(|(name, &parity)| BasisEntry {
            name: name.clone(),
            parity,
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.bracket_basis(i, j) {
                brackets.push((i, j, *k, f.format_elem(c)));
            }
        }
    }
    let mut form = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = alg.form.get(i, j);
            if !f.is_zero(c) {
                form.push((i, j, f.format_elem(c)));
            }
        }
    }
    let pmap = alg.pmap.as_ref().map(|t| {
        t.iter()
            .enumerate()
            .filter_map(|(i, e)| {
                e.as_ref()
                    .map(|v| (i, v.iter().map(|(k, c)| (*k, f.format_elem(c))).collect()))
            })
            .collect()
    });
    let file = AlgebraFile {
        basis,
        brackets,
        form,
        pmap,
        field: f.descriptor(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// An algebra read from JSON, over whichever field the file names.
#[derive(Clone, Debug)]
pub enum LoadedAlgebra {
    Q(SuperAlgebraData<Rationals>),
    Fp(SuperAlgebraData<PrimeField>),
}

fn build<F: Field>(f: F, file: AlgebraFile) -> Result<SuperAlgebraData<F>> {
    let n = file.basis.len();
    let check = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "basis index {i} out of range (dim {n})"
            )))
        }
    };
    let mut brackets: Vec<SparseVec<F::Elem>> = vec![Vec::new(); n * n];
    for (i, j, k, c) in &file.brackets {
        check(*i)?;
        check(*j)?;
        check(*k)?;
        let x = f.parse_elem(c)?;
        if !f.is_zero(&x) {
            brackets[i * n + j].push((*k, x));
        }
    }
    for v in brackets.iter_mut() {
        v.sort_by_key(|(k, _)| *k);
        if v.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("repeated bracket entry".into()));
        }
    }
    let mut form = Mat::zeros(f.clone(), n, n);
    for (i, j, c) in &file.form {
        check(*i)?;
        check(*j)?;
        form.set(*i, *j, f.parse_elem(c)?);
    }
    let parity: Vec<Parity> = file.basis.iter().map(|b| b.parity).collect();
    let pmap = match file.pmap {
        None => None,
        Some(entries) => {
            let mut t: Vec<Option<SparseVec<F::Elem>>> =
                parity.iter().map(|p| p.is_even().then(Vec::new)).collect();
            for (i, terms) in entries {
                check(i)?;
                let slot = t[i].as_mut().ok_or_else(|| {
                    Error::Parse(format!("p-map given for odd basis element {i}"))
                })?;
                for (k, c) in terms {
                    check(k)?;
                    let x = f.parse_elem(&c)?;
                    if !f.is_zero(&x) {
                        slot.push((k, x));
                    }
                }
                slot.sort_by_key(|(k, _)| *k);
            }
            Some(t)
        }
    };
    Ok(SuperAlgebraData {
        field: f,
        space: GradedSpace::new(file.basis.into_iter().map(|b| b.name).collect(), parity),
        brackets,
        form,
        pmap,
        kind: AlgebraKind::Custom("json".into()),
        realization: None,
        summands: Vec::new(),
    })
}

pub fn from_json(text: &str) -> Result<LoadedAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    match file.field {
        FieldDescriptor::Q => Ok(LoadedAlgebra::Q(build(Rationals, file)?)),
        FieldDescriptor::Fp { p } => Ok(LoadedAlgebra::Fp(build(PrimeField::new(p)?, file)?)),
        FieldDescriptor::Fp2 { .. } => Err(Error::Parse(
            "structure constants over F_{p^2} are not supported".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_catalog, build_q, verify_axioms};
    use super::*;

    #[test]
    fn gl11_schema() {
        let g = build_q(&"gl(1|1)".parse().unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&g)).unwrap();
        assert_eq!(v["field"]["kind"], "Q");
        assert_eq!(v["basis"][2]["name"], "E12");
        assert_eq!(v["basis"][2]["parity"], "odd");
        let has = v["brackets"]
            .as_array()
            .unwrap()
            .iter()
            .any(|b| b[0] == 2 && b[1] == 3 && b[2] == 0 && b[3] == "1/1");
        assert!(has);
    }

    #[test]
    fn round_trips_bit_exactly() {
        let q = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let text = to_json(&q);
        let LoadedAlgebra::Q(back) = from_json(&text).unwrap() else {
            panic!("expected Q")
        };
        assert_eq!(to_json(&back), text);
        assert_eq!(back.brackets, q.brackets);

        let fp = build_catalog(&"gl(2|1)".parse().unwrap(), 5).unwrap();
        let text = to_json(&fp);
        let LoadedAlgebra::Fp(back) = from_json(&text).unwrap() else {
            panic!("expected F_p")
        };
        assert_eq!(back.pmap, fp.pmap);
        assert_eq!(to_json(&back), text);
        assert!(verify_axioms(&back).all_pass());
    }

    #[test]
    fn rejects_bad_indices() {
        let bad = r#"{"basis":[{"name":"x","parity":"even"}],"brackets":[[0,0,3,"1"]],"form":[],"field":{"kind":"Q"}}"#;
        assert!(matches!(from_json(bad), Err(Error::Parse(_))));
    }
}
