//! Univariate polynomials over `F_p`, characteristic polynomials and factorization
//! (square-free part, distinct-degree, then Cantor–Zassenhaus equal-degree splitting).

use rand::Rng;

use crate::arith::{Field, PrimeField};
use crate::linalg::Mat;

/// Coefficients from the constant term up; never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn new(f: &PrimeField, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= f.p();
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// `x - a`.
    pub fn linear(f: &PrimeField, a: u64) -> Self {
        Poly(vec![f.neg(&a), 1])
    }

    pub fn x() -> Self {
        Poly(vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, f: &PrimeField, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f.add(self.0.get(i).unwrap_or(&0), o.0.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, f: &PrimeField, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f.sub(self.0.get(i).unwrap_or(&0), o.0.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, f: &PrimeField, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                f.add_mul_assign(&mut c[i + j], a, b);
            }
        }
        Poly::new(f, c)
    }

    pub fn scale(&self, f: &PrimeField, a: u64) -> Poly {
        Poly::new(f, self.0.iter().map(|x| f.mul(x, &a)).collect())
    }

    pub fn monic(&self, f: &PrimeField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(&self.lead()).expect("nonzero lead"))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &PrimeField, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(&d.lead()).expect("nonzero lead");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            q[k] = c;
            if c != 0 {
                for (j, b) in d.0.iter().enumerate() {
                    let t = f.mul(&c, b);
                    r[k + j] = f.sub(&r[k + j], &t);
                }
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, f: &PrimeField, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &PrimeField, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &PrimeField) -> Poly {
        Poly::new(
            f,
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, f: &PrimeField, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::one().rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            e >>= 1;
        }
        acc
    }

    /// `g(x^{1/p})` for `g` whose exponents are all multiples of `p` (coefficients are fixed by Frobenius on `F_p`).
    fn p_root(&self, f: &PrimeField) -> Poly {
        let p = f.p() as usize;
        Poly::new(f, self.0.iter().step_by(p).cloned().collect())
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_mat(&self, a: &Mat<PrimeField>) -> Mat<PrimeField> {
        let f = a.field;
        let n = a.rows;
        let mut acc = Mat::zeros(f, n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// Characteristic polynomial `det(x - A)` via reduction to upper Hessenberg form.
pub fn charpoly(a: &Mat<PrimeField>) -> Poly {
    let f = a.field;
    let n = a.rows;
    let mut h = a.clone();
    // Similarity transforms to Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| !f.is_zero(h.get(i, k))) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                let (x, y) = (*h.get(piv, j), *h.get(k + 1, j));
                h.set(piv, j, y);
                h.set(k + 1, j, x);
            }
            for i in 0..n {
                let (x, y) = (*h.get(i, piv), *h.get(i, k + 1));
                h.set(i, piv, y);
                h.set(i, k + 1, x);
            }
        }
        let inv = f.inv(h.get(k + 1, k)).expect("nonzero pivot");
        for i in k + 2..n {
            let c = f.mul(h.get(i, k), &inv);
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&c, h.get(k + 1, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, k + 1), &f.mul(&c, h.get(r, i)));
                h.set(r, k + 1, v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ h_{im} (Π sub-diagonal) p_{i-1}
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for m in 0..n {
        let mut next = Poly::linear(&f, *h.get(m, m)).mul(&f, &ps[m]);
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(&prod, h.get(i + 1, i));
            let c = f.mul(&prod, h.get(i, m));
            if c != 0 {
                next = next.sub(&f, &ps[i].scale(&f, c));
            }
        }
        ps.push(next);
    }
    ps.pop().expect("n + 1 entries")
}

/// Square-free factorization: pairs `(g, k)` with `f = Π g^k`, each `g` square-free.
fn squarefree(f: &PrimeField, a: &Poly) -> Vec<(Poly, usize)> {
    let a = a.monic(f);
    if a.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let d = a.derivative(f);
    if d.is_zero() {
        return squarefree(f, &a.p_root(f))
            .into_iter()
            .map(|(g, k)| (g, k * f.p() as usize))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = a.gcd(f, &d);
    let mut w = a.divrem(f, &c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(f, &c);
        let z = w.divrem(f, &y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.divrem(f, &w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        out.extend(
            squarefree(f, &c.p_root(f))
                .into_iter()
                .map(|(g, k)| (g, k * f.p() as usize)),
        );
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &PrimeField, a: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p() as u128;
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = Poly::x().rem(f, &rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(f, p, &rest);
        let g = h.sub(f, &Poly::x()).gcd(f, &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(f, &g).0;
            h = h.rem(f, &rest);
            out.push((g, d));
        }
    }
    if let Some(k) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, k));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus, odd `p`).
fn equal_degree<R: Rng>(f: &PrimeField, a: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = a.degree().unwrap_or(0);
    if n <= d {
        return vec![a.monic(f)];
    }
    let e = ((f.p() as u128).pow(d as u32) - 1) / 2;
    loop {
        let r = Poly::new(f, (0..n).map(|_| f.random(rng)).collect());
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = r.pow_mod(f, e, a).sub(f, &Poly::one()).gcd(f, a);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &a.divrem(f, &g).0, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor<R: Rng>(f: &PrimeField, a: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, k) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for irr in equal_degree(f, &h, d, rng) {
                out.push((irr, k));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| (a.degree(), &a.0).cmp(&(b.degree(), &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(f: &PrimeField, fs: &[(Poly, usize)]) -> Poly {
        fs.iter().fold(Poly::one(), |acc, (g, k)| {
            (0..*k).fold(acc, |a, _| a.mul(f, g))
        })
    }

    #[test]
    fn charpoly_of_companion_and_jordan() {
        let f = PrimeField::new(5).unwrap();
        // companion of x^3 + 2x + 3
        let c = Mat::from_i64(f, &[&[0, 0, -3], &[1, 0, -2], &[0, 1, 0]]);
        assert_eq!(charpoly(&c), Poly::new(&f, vec![3, 2, 0, 1]));
        let j = Mat::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(charpoly(&j), Poly::new(&f, vec![1, 3, 1]));
    }

    #[test]
    fn factors_multiply_back() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x^2 + 1)^2 (x - 1)^3 x^3 over F_3; x^2 + 1 is irreducible mod 3.
        let a = [
            (Poly::new(&f, vec![1, 0, 1]), 2),
            (Poly::linear(&f, 1), 3),
            (Poly::x(), 3),
        ];
        let fs = factor(&f, &product(&f, &a), &mut rng);
        assert_eq!(
            fs,
            vec![
                (Poly::x(), 3),
                (Poly::linear(&f, 1), 3),
                (Poly::new(&f, vec![1, 0, 1]), 2)
            ]
        );
    }

    proptest! {
        #[test]
        fn factorization_is_exact(p in prop::sample::select(vec![3u64, 5, 7]), c in prop::collection::vec(0u64..7, 1..9), seed in 0u64..100) {
            let f = PrimeField::new(p).unwrap();
            let mut c = c;
            c.push(1);
            let a = Poly::new(&f, c);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fs = factor(&f, &a, &mut rng);
            prop_assert_eq!(product(&f, &fs), a.monic(&f));
            for (g, _) in &fs {
                // irreducible: no roots in F_{p^k} for k <= deg/2
                let d = g.degree().unwrap();
                for k in 1..=d / 2 {
                    let h = Poly::x().pow_mod(&f, (p as u128).pow(k as u32), g).sub(&f, &Poly::x());
                    prop_assert_eq!(h.gcd(&f, g).degree(), Some(0));
                }
            }
        }

        #[test]
        fn charpoly_matches_cayley_hamilton(p in prop::sample::select(vec![3u64, 5, 7]), entries in prop::collection::vec(0u64..7, 16)) {
            let f = PrimeField::new(p).unwrap();
            let rows: Vec<Vec<u64>> = entries.chunks(4).map(|r| r.iter().map(|x| x % p).collect()).collect();
            let a = Mat::from_rows(f, 4, rows);
            let c = charpoly(&a);
            prop_assert_eq!(c.degree(), Some(4));
            prop_assert!(c.eval_mat(&a).is_zero());
            prop_assert_eq!(c.0[0], if 4 % 2 == 0 { a.det() } else { f.neg(&a.det()) });
        }
    }
}
