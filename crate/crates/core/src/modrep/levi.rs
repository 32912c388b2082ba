//! Standard Levi subalgebras, their basic summands, and the refined bound for `χ = χ_s + χ_n`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{Field, Rational, Rationals};
use crate::dynkin::{kw_bound, nilpotent_element, DInvariants, JordanType};
use crate::envelope::supported_on;
use crate::error::{Error, Result};
use crate::lie::{build_q, AlgebraKind, SuperAlgebraData};
use crate::linalg::{self, solve_right, Echelon, GradedMap, Mat, Parity, Subspace};

type Vector = Vec<Rational>;

/// Joint eigenspaces of the diagonal subalgebra `t` acting by `ad`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: Vec<Vector>,
    /// `(α(t_1), …, α(t_r))` and a basis of `g_α`, for the nonzero `α`.
    pub roots: Vec<(Vector, Vec<Vector>)>,
    /// Indices into `roots`.
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
}

fn ad_eigen_candidates(alg: &SuperAlgebraData<Rationals>, t: &[Rational]) -> Result<Vec<Rational>> {
    let r = alg
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("needs a matrix realization".into()))?;
    let m = r.matrix_of(t);
    let n = m.rows;
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.get(i, j).is_zero() {
                return Err(Error::Unsupported(
                    "element is not diagonal in the realization".into(),
                ));
            }
        }
    }
    let mut out: Vec<Rational> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, i) - m.get(j, j))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn eigenspace(
    alg: &SuperAlgebraData<Rationals>,
    within: &Subspace<Rationals>,
    t: &[Rational],
    lambda: &Rational,
) -> Result<Subspace<Rationals>> {
    let f = Rationals;
    let shifted = alg.ad(t).sub(&Mat::identity(f, alg.dim()).scale(lambda));
    let ker = Subspace::from_spanning(f, alg.space.clone(), shifted.echelon().null_basis());
    within.intersect(&ker)
}

impl RootSystem {
    pub fn new(alg: &SuperAlgebraData<Rationals>) -> Result<Self> {
        let f = Rationals;
        let cartan = supported_on(alg, |i, j| i == j)?.homogeneous_basis();
        let mut pieces = vec![(
            Vec::<Rational>::new(),
            Subspace::whole(f, alg.space.clone()),
        )];
        for t in &cartan {
            let mut next = Vec::new();
            for (vals, space) in &pieces {
                for lam in ad_eigen_candidates(alg, t)? {
                    let e = eigenspace(alg, space, t, &lam)?;
                    if e.dim() > 0 {
                        next.push(([vals.clone(), vec![lam]].concat(), e));
                    }
                }
            }
            pieces = next;
        }
        if pieces.iter().map(|(_, s)| s.dim()).sum::<usize>() != alg.dim() {
            return Err(Error::Unsupported(
                "diagonal subalgebra does not act semisimply".into(),
            ));
        }
        let roots: Vec<(Vector, Vec<Vector>)> = pieces
            .into_iter()
            .filter(|(v, _)| v.iter().any(|x| !x.is_zero()))
            .map(|(v, s)| (v, s.homogeneous_basis()))
            .collect();
        // A generic functional: weights 1, B, B^2, … with B beyond every root coordinate.
        let bound = roots
            .iter()
            .flat_map(|(v, _)| v.iter())
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let base =
            (bound.ceil() + Rational::from_integer(1.into())) * Rational::from_integer(2.into());
        let height = |v: &Vector| {
            v.iter()
                .rev()
                .fold(Rational::zero(), |acc, x| acc * &base + x)
        };
        let positive: Vec<usize> = (0..roots.len())
            .filter(|&i| height(&roots[i].0).is_positive())
            .collect();
        let add =
            |a: &Vector, b: &Vector| -> Vector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let simple = positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&a| {
                    positive
                        .iter()
                        .any(|&b| add(&roots[a].0, &roots[b].0) == roots[i].0)
                })
            })
            .collect();
        Ok(RootSystem {
            cartan,
            roots,
            positive,
            simple,
        })
    }

    fn root_parity(&self, alg: &SuperAlgebraData<Rationals>, i: usize) -> Parity {
        alg.elem_parity(&self.roots[i].1[0])
            .expect("homogeneous root vectors")
    }

    /// The element of `t` vanishing on the simple roots in `subset` (indices into `simple`) and
    /// equal to 1 on the others.
    pub fn levi_element(&self, subset: &[usize]) -> Result<Vector> {
        let f = Rationals;
        let r = self.cartan.len();
        let rows: Vec<Vector> = self
            .simple
            .iter()
            .map(|&i| self.roots[i].0.clone())
            .collect();
        let rhs: Vector = (0..self.simple.len())
            .map(|k| {
                if subset.contains(&k) {
                    f.zero()
                } else {
                    f.one()
                }
            })
            .collect();
        let sol = solve_right(&GradedMap::plain(Mat::from_rows(f, r, rows)), &rhs)?;
        Ok(linalg::combine(
            &f,
            self.cartan[0].len(),
            &sol.particular
                .iter()
                .zip(&self.cartan)
                .map(|(c, t)| (c.clone(), t.as_slice()))
                .collect::<Vec<_>>(),
        ))
    }

    /// `α(s)` for `s` in `t`, via the coordinates of `s` in the Cartan basis.
    fn value_on(&self, coords: &[Rational], i: usize) -> Rational {
        self.roots[i]
            .0
            .iter()
            .zip(coords)
            .fold(Rational::zero(), |acc, (a, c)| acc + a * c)
    }
}

/// A basic summand of `l`: an indecomposable ideal of `[l, l]`, matched against the catalog.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeviSummand {
    pub kind: String,
    pub dims: (usize, usize),
    /// `dim l_i - dim l_i^n`, by parity.
    pub d0: usize,
    pub d1: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeviDatum {
    pub l_dims: (usize, usize),
    pub u_dims: (usize, usize),
    pub u_minus_dims: (usize, usize),
    pub toral_dim: usize,
    pub summands: Vec<LeviSummand>,
    pub l_odd: usize,
    /// `d0, d1` of `x̄ = s + n` in `g`, from the centralizer of `x̄`.
    pub d0: usize,
    pub d1: usize,
    /// `dim l + 2 dim u = dim g`, by parity.
    pub dimension_identity: bool,
    /// Distinct summands commute.
    pub summands_commute: bool,
    /// `dim u_0 = (d0 - Σ(d0)_i)/2` and `dim u_1 = (d1 - Σ(d1)_i)/2`.
    pub u_accounting: bool,
}

fn span(
    alg: &SuperAlgebraData<Rationals>,
    vs: impl IntoIterator<Item = Vector>,
) -> Subspace<Rationals> {
    Subspace::from_spanning(Rationals, alg.space.clone(), vs)
}

/// Smallest subspace containing `x` and stable under `ad y` for `y` in `l`.
fn ideal_in(alg: &SuperAlgebraData<Rationals>, l: &[Vector], x: &Vector) -> Subspace<Rationals> {
    let mut e = Echelon::new(Rationals, alg.dim());
    let mut queue = vec![x.clone()];
    while let Some(v) = queue.pop() {
        if e.insert(v.clone()).is_some() {
            queue.extend(l.iter().map(|y| alg.bracket(y, &v)));
        }
    }
    Subspace::from_echelon(alg.space.clone(), &e)
}

/// Catalog kinds whose derived algebra may appear as a summand, with their `(even, odd)` dims.
fn catalog_fingerprints() -> Vec<(AlgebraKind, (usize, usize))> {
    let mut kinds = Vec::new();
    for a in 1..=4usize {
        for b in 0..=a.min(4 - a) {
            kinds.push(AlgebraKind::Sl { m: a, n: b });
        }
    }
    for m in 0..=4usize {
        for n in [0usize, 2, 4] {
            if (1..=6).contains(&(m + n)) {
                kinds.push(AlgebraKind::Osp { m, n });
            }
        }
    }
    kinds
        .into_iter()
        .filter_map(|k| {
            let g = build_q(&k).ok()?;
            let derived = span(
                &g,
                (0..g.dim())
                    .flat_map(|i| (0..g.dim()).map(move |j| (i, j)))
                    .map(|(i, j)| g.bracket(&g.unit(i), &g.unit(j))),
            );
            (derived.dim() == g.dim() && g.dim() > 0).then(|| (k, g.space.sdim()))
        })
        .chain(std::iter::once((AlgebraKind::Sl { m: 1, n: 1 }, (1, 2))))
        .collect()
}

fn recognize(dims: (usize, usize)) -> Result<AlgebraKind> {
    catalog_fingerprints()
        .into_iter()
        .find(|(_, d)| *d == dims)
        .map(|(k, _)| k)
        .ok_or(Error::UnrecognizedSummand {
            even: dims.0,
            odd: dims.1,
        })
}

/// Levi datum of `x̄ = s + n` with `s` diagonal in the realization and `n` a nilpotent of `g^s`.
/// `u` collects the positive eigenvalues of `ad s`.
pub fn levi_decompose(
    alg: &SuperAlgebraData<Rationals>,
    roots: &RootSystem,
    s: &[Rational],
    n: &[Rational],
) -> Result<LeviDatum> {
    let f = Rationals;
    let sc = linalg::Coordinates::new(f, alg.dim(), &roots.cartan)?
        .coords(s)
        .ok_or_else(|| Error::Unsupported("s is not in the diagonal subalgebra".into()))?;
    let vals: Vec<Rational> = (0..roots.roots.len())
        .map(|i| roots.value_on(&sc, i))
        .collect();
    let pick = |keep: &dyn Fn(&Rational) -> bool| -> Vec<Vector> {
        (0..roots.roots.len())
            .filter(|&i| keep(&vals[i]))
            .flat_map(|i| roots.roots[i].1.clone())
            .collect()
    };
    let mut l_basis = roots.cartan.clone();
    l_basis.extend(pick(&|v| v.is_zero()));
    let l = span(alg, l_basis.clone());
    let u = span(alg, pick(&|v| v.is_positive()));
    let um = span(alg, pick(&|v| v.is_negative()));
    if !linalg::is_zero_vec(&f, &alg.bracket(s, n)) || !l.contains(n) {
        return Err(Error::Unsupported("n does not lie in g^s".into()));
    }

    // Indecomposable ideals of [l, l]: ideals generated by root vectors, merged when they meet.
    let mut ideals: Vec<Subspace<Rationals>> = Vec::new();
    for i in (0..roots.roots.len()).filter(|&i| vals[i].is_zero()) {
        let mut cur = ideal_in(alg, &l_basis, &roots.roots[i].1[0]);
        let mut k = 0;
        while k < ideals.len() {
            if cur.intersect(&ideals[k])?.dim() > 0
                || cur.contains(&roots.roots[i].1[0]) && ideals[k].contains(&roots.roots[i].1[0])
            {
                cur = cur.sum(&ideals.remove(k))?;
                k = 0;
            } else {
                k += 1;
            }
        }
        ideals.push(cur);
    }
    let summands_commute = (0..ideals.len()).all(|a| {
        (0..ideals.len()).filter(|&b| b != a).all(|b| {
            ideals[a].basis.iter().all(|x| {
                ideals[b]
                    .basis
                    .iter()
                    .all(|y| linalg::is_zero_vec(&f, &alg.bracket(x, y)))
            })
        })
    });
    let cent_n = alg.centralizer(n);
    let mut summands = Vec::new();
    for ideal in &ideals {
        let dims = ideal.graded_dims();
        let inter = ideal.intersect(&cent_n)?.graded_dims();
        summands.push(LeviSummand {
            kind: recognize(dims)?.to_string(),
            dims,
            d0: dims.0 - inter.0,
            d1: dims.1 - inter.1,
        });
    }
    let covered: usize = ideals.iter().map(Subspace::dim).sum();
    let l_odd = summands.iter().filter(|s| s.d1 % 2 == 1).count();

    let xbar: Vector = s.iter().zip(n).map(|(a, b)| a + b).collect();
    let (c0, c1) = alg.centralizer(&xbar).graded_dims();
    let (g0, g1) = alg.space.sdim();
    let (d0, d1) = (g0 - c0, g1 - c1);
    let (ld, ud, umd) = (l.graded_dims(), u.graded_dims(), um.graded_dims());
    let dimension_identity = ud == umd && ld.0 + 2 * ud.0 == g0 && ld.1 + 2 * ud.1 == g1;
    let (s0, s1): (usize, usize) = summands
        .iter()
        .fold((0, 0), |(a, b), s| (a + s.d0, b + s.d1));
    let u_accounting = d0 >= s0 && d1 >= s1 && 2 * ud.0 == d0 - s0 && 2 * ud.1 == d1 - s1;
    Ok(LeviDatum {
        l_dims: ld,
        u_dims: ud,
        u_minus_dims: umd,
        toral_dim: l.dim() - covered,
        summands,
        l_odd,
        d0,
        d1,
        dimension_identity,
        summands_commute,
        u_accounting,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinedBound {
    /// `p^{d′0/2} 2^{(d′1 + l_odd)/2}` for `l`.
    pub refined_l: u128,
    /// `refined_l · p^{dim u_0} 2^{dim u_1}`.
    pub induced: u128,
    pub kw: u128,
    pub consistent: bool,
}

pub fn refined_bound(datum: &LeviDatum, p: u64) -> RefinedBound {
    let p = p as u128;
    let (s0, s1): (usize, usize) = datum
        .summands
        .iter()
        .fold((0, 0), |(a, b), s| (a + s.d0, b + s.d1));
    let refined_l = p.pow((s0 / 2) as u32) * 2u128.pow(((s1 + datum.l_odd) / 2) as u32);
    let induced = refined_l * p.pow(datum.u_dims.0 as u32) * 2u128.pow(datum.u_dims.1 as u32);
    let d = DInvariants {
        d0: datum.d0,
        d1: datum.d1,
        r: 0,
        s: 0,
        l: 0,
        q: 0,
        q_prime: 0,
        t: 0,
        t_up: 0,
    };
    let kw = kw_bound(&d, p as u64);
    RefinedBound {
        refined_l,
        induced,
        kw,
        consistent: induced == kw,
    }
}

/// Standard Levi given by a subset of simple roots, with the nilpotents used to probe it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StandardLevi {
    /// Labels of the simple roots kept in `l`, as indices into the simple roots.
    pub subset: Vec<usize>,
    pub data: Vec<LeviDatum>,
}

/// Every standard Levi of `g`, probed with `n = Σ_{α ∈ T} x_α` for every set `T` of even
/// positive roots of `l` (at most 6 of them are used).
pub fn standard_levis(alg: &SuperAlgebraData<Rationals>) -> Result<Vec<StandardLevi>> {
    let roots = RootSystem::new(alg)?;
    let k = roots.simple.len();
    let mut out = Vec::new();
    for mask in 0..1usize << k {
        let subset: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
        let s = roots.levi_element(&subset)?;
        let sc = linalg::Coordinates::new(Rationals, alg.dim(), &roots.cartan)?
            .coords(&s)
            .expect("in t");
        let even_pos: Vec<usize> = roots
            .positive
            .iter()
            .copied()
            .filter(|&i| roots.value_on(&sc, i).is_zero() && roots.root_parity(alg, i).is_even())
            .take(6)
            .collect();
        let mut data = Vec::new();
        for t in 0..1usize << even_pos.len() {
            let mut n = alg.zero_vec();
            for (b, &i) in even_pos.iter().enumerate() {
                if t >> b & 1 == 1 {
                    linalg::axpy(&Rationals, &mut n, &Rationals.one(), &roots.roots[i].1[0]);
                }
            }
            data.push(levi_decompose(alg, &roots, &s, &n)?);
        }
        out.push(StandardLevi { subset, data });
    }
    Ok(out)
}

/// For each standard Levi: its summands and whether each admits a nilpotent with odd `d1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OddSummandReport {
    pub subset: Vec<usize>,
    pub summands: Vec<(String, bool)>,
    /// Largest possible number of summands with odd `(d1)_i`.
    pub max_l_odd: usize,
}

fn admits_odd_d1(kind: &str) -> Result<bool> {
    let k: AlgebraKind = kind.parse()?;
    if k == (AlgebraKind::Sl { m: 1, n: 1 }) {
        // The even part is central, so the only nilpotent is 0.
        return Ok(false);
    }
    let g = build_q(&k)?;
    let types = JordanType::enumerate(&k)
        .ok_or_else(|| Error::Unsupported(format!("no Jordan types for {kind}")))?;
    for jt in types {
        if let Ok(e) = nilpotent_element(&g, &jt) {
            let (_, c1) = g.centralizer(&e).graded_dims();
            if (g.space.dim_odd() - c1) % 2 == 1 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn claim_at_most_one_odd(alg: &SuperAlgebraData<Rationals>) -> Result<Vec<OddSummandReport>> {
    let roots = RootSystem::new(alg)?;
    let k = roots.simple.len();
    let mut out = Vec::new();
    for mask in 0..1usize << k {
        let subset: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
        let s = roots.levi_element(&subset)?;
        let datum = levi_decompose(alg, &roots, &s, &alg.zero_vec())?;
        let summands = datum
            .summands
            .iter()
            .map(|s| Ok((s.kind.clone(), admits_odd_d1(&s.kind)?)))
            .collect::<Result<Vec<_>>>()?;
        let max_l_odd = summands.iter().filter(|(_, odd)| *odd).count();
        out.push(OddSummandReport {
            subset,
            summands,
            max_l_odd,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(kind: &str) -> SuperAlgebraData<Rationals> {
        build_q(&kind.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        let g = q("gl(2|1)");
        let r = RootSystem::new(&g).unwrap();
        assert_eq!(
            (
                r.cartan.len(),
                r.roots.len(),
                r.positive.len(),
                r.simple.len()
            ),
            (3, 6, 3, 2)
        );
        let o = RootSystem::new(&q("osp(1|2)")).unwrap();
        // ±δ odd, ±2δ even; only δ is simple.
        assert_eq!((o.roots.len(), o.positive.len(), o.simple.len()), (4, 2, 1));
    }

    #[test]
    fn gl21_levis() {
        let g = q("gl(2|1)");
        let levis = standard_levis(&g).unwrap();
        assert_eq!(levis.len(), 4);
        for lv in &levis {
            for d in &lv.data {
                assert!(
                    d.dimension_identity && d.summands_commute && d.u_accounting,
                    "{lv:?}"
                );
                assert_eq!(d.l_odd, 0);
            }
        }
        // Both simple roots removed: l is the diagonal torus.
        let torus = levis.iter().find(|l| l.subset.is_empty()).unwrap();
        assert_eq!(
            (
                torus.data[0].l_dims,
                torus.data[0].u_dims,
                torus.data[0].toral_dim
            ),
            ((3, 0), (1, 2), 3)
        );
    }

    #[test]
    fn osp12_levis_and_bound() {
        let g = q("osp(1|2)");
        let levis = standard_levis(&g).unwrap();
        let whole = levis.iter().find(|l| l.subset == [0]).unwrap();
        let regular = whole.data.iter().find(|d| d.d0 == 2).unwrap();
        assert_eq!(
            regular.summands,
            [LeviSummand {
                kind: "osp(1|2)".into(),
                dims: (3, 2),
                d0: 2,
                d1: 1
            }]
        );
        assert_eq!(regular.l_odd, 1);
        let b = refined_bound(regular, 3);
        assert_eq!(
            (b.refined_l, b.induced, b.kw, b.consistent),
            (6, 6, 6, true)
        );
        let cartan = levis.iter().find(|l| l.subset.is_empty()).unwrap();
        assert_eq!(
            (cartan.data[0].l_dims, cartan.data[0].u_dims),
            ((1, 0), (1, 1))
        );
    }

    #[test]
    fn direct_sum_of_two_osp12_has_two_odd_summands() {
        let g = q("osp(1|2)+osp(1|2)");
        let e = nilpotent_element(&g, &"jordan:1|2;1|2".parse().unwrap()).unwrap();
        let roots = RootSystem::new(&g).unwrap();
        let d = levi_decompose(&g, &roots, &g.zero_vec(), &e).unwrap();
        assert_eq!(d.l_odd, 2);
        let b = refined_bound(&d, 3);
        assert_eq!((d.d0, d.d1), (4, 2));
        assert_eq!((b.refined_l, b.kw, b.consistent), (36, 18, false));
    }

    #[test]
    fn at_most_one_odd_summand() {
        for kind in ["gl(2|1)", "osp(1|2)", "sl(2|1)"] {
            for rep in claim_at_most_one_odd(&q(kind)).unwrap() {
                assert!(rep.max_l_odd <= 1, "{kind}: {rep:?}");
            }
        }
        let gl = claim_at_most_one_odd(&q("gl(2|1)")).unwrap();
        assert!(gl.iter().all(|r| r.max_l_odd == 0));
    }
}
