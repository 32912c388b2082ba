//! Jordan–Chevalley decomposition of even elements through the matrix realization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{charpoly, factor};
use crate::arith::{Field, PrimeField, Rational, Rationals};
use crate::error::{Error, Result};
use crate::lie::SuperAlgebraData;
use crate::linalg::{self, Mat};

/// `x = s + n` with `[s, n] = 0`, `ad s` semisimple and `ad n` nilpotent.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanChevalley<F: Field> {
    pub s: Vec<F::Elem>,
    pub n: Vec<F::Elem>,
}

fn realization_matrix<F: Field>(alg: &SuperAlgebraData<F>, x: &[F::Elem]) -> Result<Mat<F>> {
    if alg.elem_parity(x).is_some_and(|p| p.is_odd()) && !linalg::is_zero_vec(&alg.field, x) {
        return Err(Error::Unsupported(
            "Jordan–Chevalley needs an even element".into(),
        ));
    }
    let r = alg
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("needs a matrix realization".into()))?;
    Ok(r.matrix_of(x))
}

fn finish<F: Field>(
    alg: &SuperAlgebraData<F>,
    x: &[F::Elem],
    s_mat: &Mat<F>,
) -> Result<JordanChevalley<F>> {
    let f = &alg.field;
    let s = alg
        .coords_of_matrix(s_mat)
        .ok_or_else(|| Error::Unsupported("semisimple part leaves the algebra".into()))?;
    let n = linalg::sub_vec(f, x, &s);
    let out = JordanChevalley { s, n };
    debug_assert!(out.commutes(alg) && out.n_is_nilpotent(alg));
    Ok(out)
}

impl<F: Field> JordanChevalley<F> {
    pub fn commutes(&self, alg: &SuperAlgebraData<F>) -> bool {
        linalg::is_zero_vec(&alg.field, &alg.bracket(&self.s, &self.n))
    }

    /// `(ad n)^{dim g} = 0`.
    pub fn n_is_nilpotent(&self, alg: &SuperAlgebraData<F>) -> bool {
        alg.ad(&self.n).pow(alg.dim() as u64).is_zero()
    }
}

impl JordanChevalley<PrimeField> {
    /// `(ad s)^{p^k} = ad s` for some `k ≤ dim g`; eigenvalues then lie in a finite field.
    pub fn s_is_semisimple(&self, alg: &SuperAlgebraData<PrimeField>) -> bool {
        let a = alg.ad(&self.s);
        let p = alg.field.p();
        let mut cur = a.clone();
        (0..alg.dim().max(1)).any(|_| {
            cur = cur.pow(p);
            cur == a
        })
    }
}

/// Over `F_p`: `s = X^{p^N}` where `N` is a multiple of every factor degree of the
/// characteristic polynomial and `p^N` is at least the size of `X`.
pub fn jordan_chevalley_fp(
    alg: &SuperAlgebraData<PrimeField>,
    x: &[u64],
) -> Result<JordanChevalley<PrimeField>> {
    let f = alg.field;
    let xm = realization_matrix(alg, x)?;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
    let m = factor(&f, &charpoly(&xm), &mut rng)
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(1))
        .fold(1usize, |a, d| a.lcm(&d));
    let p = f.p() as u128;
    let mut n = m;
    while p.pow(n as u32) < xm.rows as u128 {
        n += m;
    }
    let mut s = xm;
    for _ in 0..n {
        s = s.pow(f.p());
    }
    finish(alg, x, &s)
}

/// Coefficients `c_0, …, c_n` of `det(t - X)` by the Faddeev–LeVerrier recursion.
fn charpoly_q(a: &Mat<Rationals>) -> Vec<Rational> {
    let n = a.rows;
    let f = Rationals;
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = Mat::zeros(f, n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Mat::identity(f, n).scale(&c[n - k + 1]));
        c[n - k] = -a.mul(&m).trace() / Rational::from_integer(BigInt::from(k));
    }
    c
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(|d| [d, n / d])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Rational roots of an integer-clearable polynomial, by the rational root theorem.
fn rational_roots(c: &[Rational]) -> Result<Vec<Rational>> {
    let lcm = c.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut ints: Vec<BigInt> = c
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    if ints.iter().all(Zero::is_zero) {
        return Ok(roots);
    }
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let too_big = || {
        Error::IrrationalSpectrum(
            "characteristic polynomial coefficients are too large to search".into(),
        )
    };
    let a0 = ints[0].abs().to_u64().ok_or_else(too_big)?;
    let an = ints
        .last()
        .expect("nonzero")
        .abs()
        .to_u64()
        .ok_or_else(too_big)?;
    let eval = |t: &Rational| {
        ints.iter().rev().fold(Rational::zero(), |acc, k| {
            acc * t + Rational::from_integer(k.clone())
        })
    };
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let t = Rational::new(BigInt::from(num) * sign, BigInt::from(den));
                if !roots.contains(&t) && eval(&t).is_zero() {
                    roots.push(t);
                }
            }
        }
    }
    Ok(roots)
}

/// Over `Q`: `s` acts by `λ` on the generalized `λ`-eigenspace; every eigenvalue must be rational.
pub fn jordan_chevalley_q(
    alg: &SuperAlgebraData<Rationals>,
    x: &[Rational],
) -> Result<JordanChevalley<Rationals>> {
    let f = Rationals;
    let xm = realization_matrix(alg, x)?;
    let n = xm.rows;
    let mut cols = Vec::new();
    let mut diag = Vec::new();
    for lam in rational_roots(&charpoly_q(&xm))? {
        let gen = xm
            .sub(&Mat::identity(f, n).scale(&lam))
            .pow(n as u64)
            .echelon()
            .null_basis();
        diag.extend(std::iter::repeat_n(lam, gen.len()));
        cols.extend(gen);
    }
    if cols.len() != n {
        return Err(Error::IrrationalSpectrum(format!(
            "{} of {n} eigenvalues are rational",
            cols.len()
        )));
    }
    let b = Mat::from_cols(f, n, &cols);
    let mut d = Mat::zeros(f, n, n);
    for (i, lam) in diag.into_iter().enumerate() {
        d.set(i, i, lam);
    }
    let s = b
        .mul(&d)
        .mul(&b.inverse().expect("generalized eigenvectors form a basis"));
    finish(alg, x, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_q;

    fn gl2() -> SuperAlgebraData<Rationals> {
        build_q(&"gl(2|0)".parse().unwrap()).unwrap()
    }

    fn elem(g: &SuperAlgebraData<Rationals>, rows: &[&[i64]]) -> Vec<Rational> {
        g.coords_of_matrix(&Mat::from_i64(Rationals, rows)).unwrap()
    }

    #[test]
    fn unipotent_matrix_over_q_and_fp() {
        let g = gl2();
        let x = elem(&g, &[&[1, 1], &[0, 1]]);
        let jc = jordan_chevalley_q(&g, &x).unwrap();
        assert_eq!(jc.s, elem(&g, &[&[1, 0], &[0, 1]]));
        assert_eq!(jc.n, elem(&g, &[&[0, 1], &[0, 0]]));
        let gp = g.reduce_mod_p(3).unwrap();
        let xp = gp
            .coords_of_matrix(&Mat::from_i64(gp.field, &[&[1, 1], &[0, 1]]))
            .unwrap();
        let jp = jordan_chevalley_fp(&gp, &xp).unwrap();
        assert_eq!(
            jp.s,
            gp.coords_of_matrix(&Mat::identity(gp.field, 2)).unwrap()
        );
        assert!(jp.commutes(&gp) && jp.n_is_nilpotent(&gp) && jp.s_is_semisimple(&gp));
    }

    #[test]
    fn extremes() {
        let g = build_q(&"gl(2|1)".parse().unwrap()).unwrap();
        let nil = elem(&g, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(jordan_chevalley_q(&g, &nil).unwrap().s, g.zero_vec());
        let diag = elem(&g, &[&[2, 0, 0], &[0, -1, 0], &[0, 0, 5]]);
        assert_eq!(jordan_chevalley_q(&g, &diag).unwrap().n, g.zero_vec());
    }

    #[test]
    fn irrational_and_non_split_spectra() {
        let g = gl2();
        let rot = elem(&g, &[&[0, -1], &[1, 0]]);
        assert!(matches!(
            jordan_chevalley_q(&g, &rot),
            Err(Error::IrrationalSpectrum(_))
        ));
        // Over F_3 the same element is semisimple with eigenvalues in F_9.
        let gp = g.reduce_mod_p(3).unwrap();
        let rp = gp
            .coords_of_matrix(&Mat::from_i64(gp.field, &[&[0, -1], &[1, 0]]))
            .unwrap();
        let jc = jordan_chevalley_fp(&gp, &rp).unwrap();
        assert_eq!(jc.s, rp);
        assert!(jc.s_is_semisimple(&gp));
    }

    #[test]
    fn rational_root_search() {
        // (t - 1/2)(t + 3) t = t^3 + 5/2 t^2 - 3/2 t
        let c: Vec<Rational> = [(0, 1), (-3, 2), (5, 2), (1, 1)]
            .iter()
            .map(|&(a, b)| Rational::new(a.into(), b.into()))
            .collect();
        let mut r = rational_roots(&c).unwrap();
        r.sort();
        assert_eq!(
            r,
            [
                Rational::from_integer((-3).into()),
                Rational::zero(),
                Rational::new(1.into(), 2.into())
            ]
        );
    }
}
