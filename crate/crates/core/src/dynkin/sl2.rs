use crate::arith::{Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::lie::SuperAlgebraData;
use crate::linalg::{self, solve_right, Echelon, GradedMap, Mat, Parity};

/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`. `scale` multiplies the algebra's form so
/// that `(e,f) = 1` whenever `(e,f) != 0`; every later construction uses the rescaled form.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Triple<F: Field> {
    pub e: Vec<F::Elem>,
    pub h: Vec<F::Elem>,
    pub f: Vec<F::Elem>,
    pub scale: F::Elem,
}

impl<F: Field> SL2Triple<F> {
    pub fn is_zero(&self, field: &F) -> bool {
        linalg::is_zero_vec(field, &self.e)
    }

    pub fn scaled_algebra(&self, alg: &SuperAlgebraData<F>) -> SuperAlgebraData<F> {
        alg.with_form_scaled(&self.scale)
    }

    /// `(x, y)` in the rescaled form.
    pub fn form(&self, alg: &SuperAlgebraData<F>, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        alg.field.mul(&self.scale, &alg.form_eval(x, y))
    }

    pub fn relations_hold(&self, alg: &SuperAlgebraData<F>) -> bool {
        let f = &alg.field;
        let two = f.from_i64(2);
        alg.bracket(&self.h, &self.e) == linalg::scale_vec(f, &two, &self.e)
            && alg.bracket(&self.h, &self.f) == linalg::scale_vec(f, &f.neg(&two), &self.f)
            && alg.bracket(&self.e, &self.f) == self.h
    }
}

impl SL2Triple<Rationals> {
    pub fn reduce_mod_p(&self, fp: &PrimeField) -> Result<SL2Triple<PrimeField>> {
        let v = |x: &[_]| super::reduce_vec(fp, x);
        Ok(SL2Triple {
            e: v(&self.e)?,
            h: v(&self.h)?,
            f: v(&self.f)?,
            scale: fp.from_rational(&self.scale)?,
        })
    }
}

/// Jordan chains of a nilpotent matrix: each chain is `[a_1, ..., a_k]` with
/// `N a_1 = 0` and `N a_{t+1} = a_t`. With `parity` given, chains are homogeneous,
/// which requires `N` to preserve the parity blocks.
pub fn jordan_chains<F: Field>(n: &Mat<F>, parity: &[Parity]) -> Vec<Vec<Vec<F::Elem>>> {
    let f = &n.field;
    let d = n.rows;
    let mut out = Vec::new();
    for which in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..d).filter(|&i| parity[i] == which).collect();
        if idx.is_empty() {
            continue;
        }
        let mut sub = Mat::zeros(f.clone(), idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                sub.set(a, b, n.get(i, j).clone());
            }
        }
        for chain in chains_plain(&sub) {
            out.push(
                chain
                    .into_iter()
                    .map(|v| {
                        let mut full = linalg::zeros(f, d);
                        for (a, &i) in idx.iter().enumerate() {
                            full[i] = v[a].clone();
                        }
                        full
                    })
                    .collect(),
            );
        }
    }
    out
}

fn chains_plain<F: Field>(n: &Mat<F>) -> Vec<Vec<Vec<F::Elem>>> {
    let d = n.rows;
    // kernels[i] = ker N^i, until it is everything.
    let mut kernels: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new()];
    let mut power = Mat::identity(n.field.clone(), d);
    while kernels.last().map_or(0, Vec::len) < d {
        power = power.mul(n);
        let k = power.echelon().null_basis();
        assert!(kernels.len() <= d, "matrix is not nilpotent");
        kernels.push(k);
    }
    let mut chains: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for level in (1..kernels.len()).rev() {
        let mut span = Echelon::new(n.field.clone(), d);
        for v in &kernels[level - 1] {
            span.insert(v.clone());
        }
        for c in &chains {
            span.insert(c[level - 1].clone());
        }
        for v in &kernels[level] {
            if span.insert(v.clone()).is_some() {
                let mut chain = vec![v.clone()];
                for _ in 1..level {
                    let next = n.mul_vec(chain.last().expect("nonempty"));
                    chain.push(next);
                }
                chain.reverse();
                chains.push(chain);
            }
        }
    }
    chains
}

fn is_nilpotent<F: Field>(alg: &SuperAlgebraData<F>, e: &[F::Elem]) -> bool {
    alg.ad(e).pow(alg.dim() as u64).is_zero()
}

/// Weighted-diagonal `h` and the standard `f` built from Jordan chains of the realization.
fn closed_form<F: Field>(
    alg: &SuperAlgebraData<F>,
    e: &[F::Elem],
) -> Option<(Vec<F::Elem>, Vec<F::Elem>)> {
    let r = alg.realization.as_ref()?;
    let f = &alg.field;
    let chains = jordan_chains(&r.matrix_of(e), &r.parity);
    let d = r.dim();
    let cols: Vec<Vec<F::Elem>> = chains.iter().flatten().cloned().collect();
    let p = Mat::from_cols(f.clone(), d, &cols);
    let p_inv = p.inverse()?;
    let mut diag = Mat::zeros(f.clone(), d, d);
    let mut lower = Mat::zeros(f.clone(), d, d);
    let mut pos = 0;
    for c in &chains {
        let k = c.len() as i64;
        for t in 1..=k {
            diag.set(pos, pos, f.from_i64(k + 1 - 2 * t));
            if t < k {
                lower.set(pos + 1, pos, f.from_i64(t * (k - t)));
            }
            pos += 1;
        }
    }
    let h = alg.coords_of_matrix(&p.mul(&diag).mul(&p_inv))?;
    let fe = alg.coords_of_matrix(&p.mul(&lower).mul(&p_inv))?;
    Some((h, fe))
}

/// `h = [e, z]` with `[h, e] = 2e`, then `f` from the linear conditions `[e,f] = h`, `[h,f] = -2f`.
fn solve_triple<F: Field>(
    alg: &SuperAlgebraData<F>,
    e: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let f = &alg.field;
    let n = alg.dim();
    let par = &alg.space.parity;
    let ad_e = alg.ad(e);
    let rhs = linalg::scale_vec(f, &f.from_i64(-2), e);
    let z = solve_right(&GradedMap::plain(ad_e.mul(&ad_e)), &rhs)
        .map_err(|_| Error::NoTriple("no h in [e, g] with [h, e] = 2e".into()))?;
    let z = linalg::parity_part(f, &z.particular, par, Parity::Even);
    let h = alg.bracket(e, &z);
    let shifted = alg
        .ad(&h)
        .add(&Mat::identity(f.clone(), n).scale(&f.from_i64(2)));
    let mut rows = ad_e.row_vecs();
    rows.extend(shifted.row_vecs());
    let mut target = h.clone();
    target.extend(linalg::zeros(f, n));
    let sol = solve_right(
        &GradedMap::plain(Mat::from_rows(f.clone(), n, rows)),
        &target,
    )
    .map_err(|_| Error::NoTriple("no f completing (e, h)".into()))?;
    Ok((
        h,
        linalg::parity_part(f, &sol.particular, par, Parity::Even),
    ))
}

/// Completes an even nilpotent `e` to an sl2-triple and rescales the form to `(e,f) = 1`.
pub fn complete_sl2<F: Field>(alg: &SuperAlgebraData<F>, e: &[F::Elem]) -> Result<SL2Triple<F>> {
    let f = &alg.field;
    if linalg::is_zero_vec(f, e) {
        return Ok(SL2Triple {
            e: e.to_vec(),
            h: alg.zero_vec(),
            f: alg.zero_vec(),
            scale: f.one(),
        });
    }
    if alg.elem_parity(e) != Some(Parity::Even) {
        return Err(Error::ParityViolation("nilpotent must be even".into()));
    }
    if !is_nilpotent(alg, e) {
        return Err(Error::NotNilpotent);
    }
    let mut triple = None;
    if let Some((h, fe)) = closed_form(alg, e) {
        let t = SL2Triple {
            e: e.to_vec(),
            h,
            f: fe,
            scale: f.one(),
        };
        if t.relations_hold(alg) {
            triple = Some(t);
        }
    }
    let mut t = match triple {
        Some(t) => t,
        None => {
            let (h, fe) = solve_triple(alg, e)?;
            let t = SL2Triple {
                e: e.to_vec(),
                h,
                f: fe,
                scale: f.one(),
            };
            if !t.relations_hold(alg) {
                return Err(Error::NoTriple(
                    "solved triple fails the bracket relations".into(),
                ));
            }
            t
        }
    };
    // (e, f) vanishes for some super Jordan types (e.g. one 2-block per parity in
    // gl(2|2)); the form is then left as is.
    if let Some(s) = f.inv(&alg.form_eval(&t.e, &t.f)) {
        t.scale = s;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, JordanType};
    use crate::lie::build_q;

    fn label(
        alg: &SuperAlgebraData<Rationals>,
        v: &[<Rationals as Field>::Elem],
    ) -> Vec<(String, String)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !Rationals.is_zero(c))
            .map(|(i, c)| (alg.space.labels[i].clone(), Rationals.format_elem(c)))
            .collect()
    }

    #[test]
    fn gl21_e12() {
        let g = build_q(&"gl(2|1)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:2|1".parse().unwrap()).unwrap();
        let t = complete_sl2(&g, &e).unwrap();
        // h = diag(1, -1, 0) = E11 - E22
        assert_eq!(
            label(&g, &t.h),
            vec![("E11".into(), "1/1".into()), ("E22".into(), "-1/1".into())]
        );
        assert_eq!(label(&g, &t.f), vec![("E21".into(), "1/1".into())]);
        assert!(Rationals.is_one(&t.form(&g, &t.e, &t.f)));
    }

    #[test]
    fn osp12_regular() {
        let o = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&o, &"jordan:1|2".parse().unwrap()).unwrap();
        let t = complete_sl2(&o, &e).unwrap();
        assert_eq!(label(&o, &t.h), vec![("E22-E33".into(), "1/1".into())]);
        assert_eq!(label(&o, &t.f), vec![("E32".into(), "1/1".into())]);
        assert_eq!(Rationals.format_elem(&t.scale), "-1/1");
    }

    #[test]
    fn zero_and_rejections() {
        let g = build_q(&"gl(1|1)".parse().unwrap()).unwrap();
        let t = complete_sl2(&g, &g.zero_vec()).unwrap();
        assert!(t.is_zero(&Rationals) && linalg::is_zero_vec(&Rationals, &t.h));
        assert_eq!(complete_sl2(&g, &g.unit(0)), Err(Error::NotNilpotent));
        assert!(matches!(
            complete_sl2(&g, &g.unit(2)),
            Err(Error::ParityViolation(_))
        ));
    }

    #[test]
    fn solver_agrees_on_relations() {
        for (k, jt) in [
            ("gl(3|1)", "jordan:2,1|1"),
            ("gl(2|2)", "jordan:2|2"),
            ("osp(3|2)", "jordan:3|1,1"),
        ] {
            let g = build_q(&k.parse().unwrap()).unwrap();
            let Ok(e) = nilpotent_element(&g, &jt.parse::<JordanType>().unwrap()) else {
                continue;
            };
            let (h, fe) = solve_triple(&g, &e).unwrap();
            let t = SL2Triple {
                e,
                h,
                f: fe,
                scale: Rationals.one(),
            };
            assert!(t.relations_hold(&g), "{k} {jt}");
        }
    }

    #[test]
    fn chains_of_a_single_block() {
        let f = Rationals;
        let n = Mat::from_i64(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let c = jordan_chains(&n, &[Parity::Even; 3]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 3);
        assert!(linalg::is_zero_vec(&f, &n.mul_vec(&c[0][0])));
    }
}
