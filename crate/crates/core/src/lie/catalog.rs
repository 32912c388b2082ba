use std::fmt;
use std::str::FromStr;

use super::{direct_sum, to_sparse, Realization, SuperAlgebraData};
use crate::arith::{check_odd_prime, Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Echelon, GradedSpace, Mat, Parity, Subspace};

/// Catalog families. `Osp { m, n }` is `osp(m|n)` with `n` even.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    Osp { m: usize, n: usize },
    DirectSum(Vec<AlgebraKind>),
    Custom(String),
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Gl { m, n } => write!(f, "gl({m}|{n})"),
            AlgebraKind::Sl { m, n } => write!(f, "sl({m}|{n})"),
            AlgebraKind::Osp { m, n } => write!(f, "osp({m}|{n})"),
            AlgebraKind::DirectSum(parts) => {
                let s: Vec<String> = parts.iter().map(|k| k.to_string()).collect();
                write!(f, "{}", s.join("+"))
            }
            AlgebraKind::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('+') {
            let parts = s
                .split('+')
                .map(str::parse)
                .collect::<Result<Vec<AlgebraKind>>>()?;
            return Ok(AlgebraKind::DirectSum(parts));
        }
        let bad = || {
            Error::Parse(format!(
                "unrecognized algebra `{s}`; expected gl(m|n), sl(m|n) or osp(m|n)"
            ))
        };
        let open = s.find('(').ok_or_else(bad)?;
        let name = &s[..open];
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = inner.split_once('|').ok_or_else(bad)?;
        let m: usize = a.trim().parse().map_err(|_| bad())?;
        let n: usize = b.trim().parse().map_err(|_| bad())?;
        match name {
            "gl" => Ok(AlgebraKind::Gl { m, n }),
            "sl" => Ok(AlgebraKind::Sl { m, n }),
            "osp" => Ok(AlgebraKind::Osp { m, n }),
            _ => Err(bad()),
        }
    }
}

impl AlgebraKind {
    /// Dimension of the natural module, when the kind is a matrix family.
    pub fn natural_dim(&self) -> Option<usize> {
        match self {
            AlgebraKind::Gl { m, n } | AlgebraKind::Sl { m, n } | AlgebraKind::Osp { m, n } => {
                Some(m + n)
            }
            _ => None,
        }
    }
}

fn natural_parity(m: usize, n: usize) -> Vec<Parity> {
    (0..m + n)
        .map(|i| if i < m { Parity::Even } else { Parity::Odd })
        .collect()
}

fn unit_matrix(f: &Rationals, dim: usize, r: usize, c: usize) -> Mat<Rationals> {
    let mut e = Mat::zeros(*f, dim, dim);
    e.set(r, c, f.one());
    e
}

fn entry_name(r: usize, c: usize) -> String {
    if r < 9 && c < 9 {
        format!("E{}{}", r + 1, c + 1)
    } else {
        format!("E{},{}", r + 1, c + 1)
    }
}

/// Readable name of a matrix as a combination of matrix units, e.g. `E22-E33`.
fn matrix_label(m: &Mat<Rationals>) -> String {
    let f = Rationals;
    let mut out = String::new();
    for r in 0..m.rows {
        for c in 0..m.cols {
            let x = m.get(r, c);
            if f.is_zero(x) {
                continue;
            }
            let neg = x < &f.zero();
            let abs = if neg { f.neg(x) } else { x.clone() };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !f.is_one(&abs) {
                out.push_str(f.format_elem(&abs).trim_end_matches("/1"));
            }
            out.push_str(&entry_name(r, c));
        }
    }
    out
}

fn matrix_parity(m: &Mat<Rationals>, par: &[Parity]) -> Parity {
    let f = Rationals;
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !f.is_zero(m.get(r, c)) {
                return par[r].plus(par[c]);
            }
        }
    }
    Parity::Even
}

fn supertrace(m: &Mat<Rationals>, par: &[Parity]) -> crate::arith::Rational {
    let f = Rationals;
    let mut t = f.zero();
    for (i, p) in par.iter().enumerate() {
        t = if p.is_odd() {
            f.sub(&t, m.get(i, i))
        } else {
            f.add(&t, m.get(i, i))
        };
    }
    t
}

/// Structure constants and supertrace form of a matrix basis over Q.
fn from_matrices(
    kind: AlgebraKind,
    par: Vec<Parity>,
    mats: Vec<Mat<Rationals>>,
) -> Result<SuperAlgebraData<Rationals>> {
    let f = Rationals;
    let n = mats.len();
    let dim = par.len();
    let parity: Vec<Parity> = mats.iter().map(|m| matrix_parity(m, &par)).collect();
    let labels = mats.iter().map(matrix_label).collect();
    let flat: Vec<Vec<_>> = mats.iter().map(|m| m.data.clone()).collect();
    let coords = Coordinates::new(f, dim * dim, &flat)?;
    let mut brackets = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let anti = parity[i].is_odd() && parity[j].is_odd();
            let c = mats[i].supercommutator(&mats[j], anti);
            let v = coords.coords(&c.data).ok_or_else(|| {
                Error::Unsupported(format!("{kind} is not closed under brackets"))
            })?;
            brackets.push(to_sparse(&f, &v));
        }
    }
    let mut form = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(i, j, supertrace(&mats[i].mul(&mats[j]), &par));
        }
    }
    Ok(SuperAlgebraData {
        field: f,
        space: GradedSpace::new(labels, parity),
        brackets,
        form,
        pmap: None,
        kind,
        realization: Some(Realization {
            parity: par,
            matrices: mats,
        }),
        summands: Vec::new(),
    })
}

fn gl_matrices(m: usize, n: usize, traceless: bool) -> Vec<Mat<Rationals>> {
    let f = Rationals;
    let dim = m + n;
    let par = natural_parity(m, n);
    let mut mats = Vec::new();
    if traceless {
        // E_ii ∓ E_NN with the sign making the supertrace vanish; each is toral.
        let last = dim - 1;
        for i in 0..last {
            let mut h = unit_matrix(&f, dim, i, i);
            let same = par[i] == par[last];
            h.set(last, last, if same { f.from_i64(-1) } else { f.one() });
            mats.push(h);
        }
    } else {
        mats.extend((0..dim).map(|i| unit_matrix(&f, dim, i, i)));
    }
    for r in 0..dim {
        for c in 0..dim {
            if r != c {
                mats.push(unit_matrix(&f, dim, r, c));
            }
        }
    }
    mats
}

/// Gram matrix of the orthosymplectic form: antidiagonal on both blocks,
/// symmetric on the even block and skew on the odd block.
fn osp_gram(m: usize, n: usize) -> Mat<Rationals> {
    let f = Rationals;
    let mut g = Mat::zeros(f, m + n, m + n);
    for i in 0..m {
        g.set(i, m - 1 - i, f.one());
    }
    for a in 0..n {
        g.set(
            m + a,
            m + n - 1 - a,
            if a < n / 2 { f.one() } else { f.from_i64(-1) },
        );
    }
    g
}

/// Matrices `X` with `B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0`, as a reduced echelon basis
/// of each parity (even part first).
fn osp_matrices(m: usize, n: usize) -> Vec<Mat<Rationals>> {
    let f = Rationals;
    let dim = m + n;
    let par = natural_parity(m, n);
    let g = osp_gram(m, n);
    let mut mats = Vec::new();
    for xpar in [Parity::Even, Parity::Odd] {
        // Unknown X_{rc} is allowed when the entry has parity xpar.
        let entries: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .filter(|&(r, c)| par[r].plus(par[c]) == xpar)
            .collect();
        let mut e = Echelon::new(f, entries.len());
        for a in 0..dim {
            for b in 0..dim {
                let sign = if xpar.is_odd() && par[a].is_odd() {
                    -1
                } else {
                    1
                };
                // (X^T G)_{ab} = Σ_r X_{ra} G_{rb};  (G X)_{ab} = Σ_c G_{ac} X_{cb}.
                let row: Vec<_> = entries
                    .iter()
                    .map(|&(r, c)| {
                        let mut v = f.zero();
                        if c == a {
                            v = f.add(&v, g.get(r, b));
                        }
                        if c == b {
                            v = f.add(&v, &f.mul(&f.from_i64(sign), g.get(a, r)));
                        }
                        v
                    })
                    .collect();
                e.insert(row);
            }
        }
        let sol = Subspace::from_spanning(
            f,
            GradedSpace::anonymous(vec![Parity::Even; entries.len()]),
            e.null_basis(),
        );
        for v in sol.basis {
            let mut x = Mat::zeros(f, dim, dim);
            for (&(r, c), val) in entries.iter().zip(v) {
                x.set(r, c, val);
            }
            mats.push(x);
        }
    }
    mats
}

/// Catalog algebra over Q with the supertrace form.
pub fn build_q(kind: &AlgebraKind) -> Result<SuperAlgebraData<Rationals>> {
    match kind {
        AlgebraKind::Gl { m, n } => {
            if m + n == 0 {
                return Err(Error::Config("gl(0|0) is empty".into()));
            }
            from_matrices(
                kind.clone(),
                natural_parity(*m, *n),
                gl_matrices(*m, *n, false),
            )
        }
        AlgebraKind::Sl { m, n } => {
            if m + n < 2 {
                return Err(Error::Config(format!("{kind} is zero")));
            }
            if m == n {
                return Err(Error::DegenerateForm(format!(
                    "the supertrace form on {kind} is degenerate (the identity lies in it)"
                )));
            }
            let alg = from_matrices(
                kind.clone(),
                natural_parity(*m, *n),
                gl_matrices(*m, *n, true),
            )?;
            if !alg.form_is_nondegenerate() {
                return Err(Error::DegenerateForm(format!("supertrace form on {kind}")));
            }
            Ok(alg)
        }
        AlgebraKind::Osp { m, n } => {
            if n % 2 != 0 {
                return Err(Error::Config(format!(
                    "{kind}: the odd dimension must be even"
                )));
            }
            if m + n == 0 {
                return Err(Error::Config("osp(0|0) is empty".into()));
            }
            from_matrices(kind.clone(), natural_parity(*m, *n), osp_matrices(*m, *n))
        }
        AlgebraKind::DirectSum(parts) => {
            let mut it = parts.iter();
            let first = it
                .next()
                .ok_or_else(|| Error::Config("empty direct sum".into()))?;
            let mut acc = build_q(first)?;
            for k in it {
                acc = direct_sum(&acc, &build_q(k)?);
            }
            Ok(acc)
        }
        AlgebraKind::Custom(s) => Err(Error::Config(format!("`{s}` is not a catalog algebra"))),
    }
}

fn check_prime_for(kind: &AlgebraKind, p: u64) -> Result<()> {
    check_odd_prime(p)?;
    match kind {
        AlgebraKind::Sl { m, n } if (*m as i64 - *n as i64).rem_euclid(p as i64) == 0 => {
            Err(Error::BadPrime {
                p,
                reason: format!("{kind} needs p not dividing m - n"),
            })
        }
        AlgebraKind::DirectSum(parts) => parts.iter().try_for_each(|k| check_prime_for(k, p)),
        _ => Ok(()),
    }
}

/// Catalog algebra over `F_p`, with the matrix `p`-th power as p-map.
pub fn build_catalog(kind: &AlgebraKind, p: u64) -> Result<SuperAlgebraData<PrimeField>> {
    check_prime_for(kind, p)?;
    let alg = build_q(kind)?.reduce_mod_p(p)?;
    if !alg.form_is_nondegenerate() {
        return Err(Error::DegenerateForm(format!(
            "supertrace form on {kind} degenerates mod {p}"
        )));
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["gl(2|1)", "sl(2|1)", "osp(1|2)", "osp(1|2)+osp(1|2)"] {
            assert_eq!(s.parse::<AlgebraKind>().unwrap().to_string(), s);
        }
        assert!("foo(1|2)".parse::<AlgebraKind>().is_err());
    }

    #[test]
    fn gl11_basis_and_bracket() {
        let g = build_q(&AlgebraKind::Gl { m: 1, n: 1 }).unwrap();
        assert_eq!(g.space.labels, vec!["E11", "E22", "E12", "E21"]);
        assert_eq!(g.space.sdim(), (2, 2));
        let f = Rationals;
        // [E12, E21] = E11 + E22
        assert_eq!(g.bracket_basis(2, 3), &vec![(0, f.one()), (1, f.one())]);
    }

    #[test]
    fn dimensions() {
        let dims = |s: &str| build_q(&s.parse().unwrap()).unwrap().space.sdim();
        assert_eq!(dims("osp(1|2)"), (3, 2));
        assert_eq!(dims("gl(2|1)"), (5, 4));
        assert_eq!(dims("sl(2|1)"), (4, 4));
        assert_eq!(dims("osp(2|2)"), (4, 4));
        assert_eq!(dims("osp(3|2)"), (6, 6));
        assert_eq!(dims("sl(2|0)"), (3, 0));
    }

    #[test]
    fn prime_restrictions() {
        assert!(matches!(
            build_catalog(&"sl(3|1)".parse().unwrap(), 2),
            Err(Error::BadPrime { .. })
        ));
        assert!(matches!(
            build_catalog(&"sl(4|1)".parse().unwrap(), 3),
            Err(Error::BadPrime { .. })
        ));
        assert!(matches!(
            build_catalog(&"sl(2|2)".parse().unwrap(), 5),
            Err(Error::BadPrime { .. })
        ));
        assert!(matches!(
            build_q(&"sl(2|2)".parse().unwrap()),
            Err(Error::DegenerateForm(_))
        ));
        assert!(build_catalog(&"sl(2|1)".parse().unwrap(), 3).is_ok());
    }

    #[test]
    fn osp12_root_vectors() {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        for l in ["E22-E33", "E23", "E32"] {
            assert!(
                g.space.labels.iter().any(|x| x == l),
                "{l} missing from {:?}",
                g.space.labels
            );
        }
    }
}
