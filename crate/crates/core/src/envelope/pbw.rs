use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::{Parity, SparseMat};

/// Exponent vector over the ordered basis `b_0 < b_1 < ...`; odd exponents are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn letter(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Total number of letters.
    pub fn length(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }

    fn last(&self) -> Option<usize> {
        self.0.iter().rposition(|&a| a > 0)
    }

    fn bumped(&self, i: usize, delta: i32) -> Self {
        let mut m = self.clone();
        m.0[i] = (m.0[i] as i32 + delta) as u16;
        m
    }

    /// Letters in order, with repetition.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }

    /// `Σ a_i w_i`.
    pub fn weighted_degree(&self, weights: &[i32]) -> i32 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as i32 * w)
            .sum()
    }

    /// Sum of the exponents of odd letters, mod 2.
    pub fn parity(&self, par: &[Parity]) -> Parity {
        Parity::from_bit(
            self.0
                .iter()
                .zip(par)
                .filter(|(_, p)| p.is_odd())
                .map(|(&a, _)| a as usize)
                .sum(),
        )
    }

    pub fn label(&self, labels: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    labels[i].clone()
                } else {
                    format!("{}^{a}", labels[i])
                }
            })
            .collect();
        parts.join("·")
    }
}

/// Linear combination of PBW monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElement<F: Field> {
    pub terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Default for EnvElement<F> {
    fn default() -> Self {
        EnvElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<F: Field> EnvElement<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(f: &F, m: Monomial, c: F::Elem) -> Self {
        let mut out = Self::zero();
        out.add_term(f, m, c);
        out
    }

    /// An element of the Lie superalgebra, as a sum of letters.
    pub fn from_lie(f: &F, x: &[F::Elem]) -> Self {
        let n = x.len();
        let mut out = Self::zero();
        for (i, c) in x.iter().enumerate() {
            out.add_term(f, Monomial::letter(n, i), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: &F, m: Monomial, c: F::Elem) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, f: &F, c: &F::Elem, o: &Self) {
        if f.is_zero(c) {
            return;
        }
        for (m, x) in &o.terms {
            self.add_term(f, m.clone(), f.mul(c, x));
        }
    }

    pub fn scaled(&self, f: &F, c: &F::Elem) -> Self {
        let mut out = Self::zero();
        out.add_scaled(f, c, self);
        out
    }

    pub fn sub(&self, f: &F, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(f, &f.from_i64(-1), o);
        out
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn kazhdan_degree(&self, weights: &[i32]) -> Option<i32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    pub fn coefficient(&self, f: &F, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| f.zero())
    }
}

/// Which quotient of the enveloping algebra products are taken in.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode<F: Field> {
    /// `U(g)` itself.
    Universal,
    /// `U_ξ(g)`: `b^p` is rewritten as `b^{[p]} + ξ(b)^p` for even basis elements.
    Reduced { xi: PCharacter<F> },
}

type Memo<F> = RwLock<HashMap<(usize, Monomial), Arc<EnvElement<F>>>>;

/// Normal-ordering engine for `U(g)` or `U_ξ(g)` in the basis order of `alg`.
///
/// Products of a letter with a monomial are memoized; the tables are shared
/// between threads behind a lock.
pub struct Pbw<F: Field> {
    pub alg: SuperAlgebraData<F>,
    pub mode: Mode<F>,
    /// `ξ(b_i)^p` for even `i`.
    xi_p: Vec<F::Elem>,
    p: u64,
    left: Memo<F>,
    right: Memo<F>,
}

impl<F: Field> std::fmt::Debug for Pbw<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pbw")
            .field("kind", &self.alg.kind)
            .field("mode", &self.mode)
            .finish()
    }
}

impl<F: Field> Pbw<F> {
    pub fn universal(alg: SuperAlgebraData<F>) -> Self {
        let n = alg.dim();
        Pbw {
            xi_p: vec![alg.field.zero(); n],
            p: 0,
            alg,
            mode: Mode::Universal,
            left: Default::default(),
            right: Default::default(),
        }
    }

    /// `U_ξ(g)`; needs a p-map and `ξ` vanishing on the odd part.
    pub fn reduced(alg: SuperAlgebraData<F>, xi: PCharacter<F>) -> Result<Self> {
        let f = alg.field.clone();
        let p = f.characteristic();
        if p < 3 {
            return Err(Error::Unsupported(
                "reduced enveloping algebras need odd characteristic".into(),
            ));
        }
        if alg.pmap.is_none() {
            return Err(Error::Unsupported(
                "reduced enveloping algebras need a p-map".into(),
            ));
        }
        if alg.odd_indices().iter().any(|&i| !f.is_zero(&xi.values[i])) {
            return Err(Error::ParityViolation(
                "p-character must vanish on the odd part".into(),
            ));
        }
        let xi_p = (0..alg.dim()).map(|i| f.pow(&xi.values[i], p)).collect();
        Ok(Pbw {
            xi_p,
            p,
            alg,
            mode: Mode::Reduced { xi },
            left: Default::default(),
            right: Default::default(),
        })
    }

    pub fn field(&self) -> &F {
        &self.alg.field
    }

    pub fn n(&self) -> usize {
        self.alg.dim()
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self.mode, Mode::Reduced { .. })
    }

    fn parity(&self, i: usize) -> Parity {
        self.alg.parity(i)
    }

    /// `p^{dim g_0} 2^{dim g_1}` in reduced mode.
    pub fn reduced_dim(&self) -> Option<u128> {
        self.is_reduced().then(|| {
            let (e, o) = self.alg.space.sdim();
            (self.p as u128).pow(e as u32) * 2u128.pow(o as u32)
        })
    }

    /// Maximal exponent of letter `i` in normal form.
    pub fn max_exp(&self, i: usize) -> Option<u16> {
        if self.parity(i).is_odd() {
            Some(1)
        } else if self.is_reduced() {
            Some(self.p as u16 - 1)
        } else {
            None
        }
    }

    /// All normal monomials over the letters `range` (others zero), in lexicographic order.
    pub fn monomials_over(&self, letters: std::ops::Range<usize>) -> Result<Vec<Monomial>> {
        let n = self.n();
        let mut out = vec![Monomial::one(n)];
        for i in letters {
            let top = self
                .max_exp(i)
                .ok_or_else(|| Error::Unsupported("U(g) is infinite-dimensional".into()))?;
            out = out
                .into_iter()
                .flat_map(|m| (0..=top).map(move |a| m.bumped(i, a as i32)))
                .collect();
        }
        out.sort();
        Ok(out)
    }

    /// Basis of `U_ξ(g)`.
    pub fn basis(&self) -> Result<Vec<Monomial>> {
        self.monomials_over(0..self.n())
    }

    /// Normal monomials over all letters with weighted degree at most `cap`; weights must be positive on `letters`.
    pub fn monomials_up_to(&self, letters: &[usize], weights: &[i32], cap: i32) -> Vec<Monomial> {
        let n = self.n();
        let mut out = Vec::new();
        fn go<F: Field>(
            pbw: &Pbw<F>,
            letters: &[usize],
            weights: &[i32],
            left: i32,
            cur: &mut Monomial,
            out: &mut Vec<Monomial>,
        ) {
            let Some((&i, rest)) = letters.split_first() else {
                out.push(cur.clone());
                return;
            };
            let w = weights[i];
            assert!(w > 0, "weights must be positive");
            let mut a = 0u16;
            loop {
                go(pbw, rest, weights, left - a as i32 * w, cur, out);
                if pbw.max_exp(i).is_some_and(|t| a >= t) || left - (a as i32 + 1) * w < 0 {
                    break;
                }
                a += 1;
                cur.0[i] = a;
            }
            cur.0[i] = 0;
        }
        go(self, letters, weights, cap, &mut Monomial::one(n), &mut out);
        out.sort();
        out
    }

    fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        self.alg.bracket_basis(i, j)
    }

    fn sign(&self, i: usize, j: usize) -> F::Elem {
        if self.parity(i).koszul_negative(self.parity(j)) {
            self.field().from_i64(-1)
        } else {
            self.field().one()
        }
    }

    fn pmap_terms(&self, i: usize) -> &[(usize, F::Elem)] {
        self.alg
            .pmap
            .as_ref()
            .and_then(|t| t[i].as_deref())
            .unwrap_or(&[])
    }

    /// `b_i · m` in normal form.
    pub fn lmul(&self, i: usize, m: &Monomial) -> Arc<EnvElement<F>> {
        let key = (i, m.clone());
        if let Some(v) = self.left.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.lmul_compute(i, m));
        self.left.write().expect("memo lock").insert(key, v.clone());
        v
    }

    fn lmul_compute(&self, i: usize, m: &Monomial) -> EnvElement<F> {
        let f = self.field();
        let Some(j) = m.first() else {
            return EnvElement::monomial(f, m.bumped(i, 1), f.one());
        };
        if i < j {
            return EnvElement::monomial(f, m.bumped(i, 1), f.one());
        }
        if i == j {
            let rest = m.bumped(i, -1);
            if self.parity(i).is_odd() {
                // b_i b_i = ½ [b_i, b_i]
                let mut out = EnvElement::zero();
                for (k, c) in self.bracket_terms(i, i) {
                    out.add_scaled(f, &f.mul(&f.half(), c), &self.lmul(*k, &rest));
                }
                return out;
            }
            let raised = m.bumped(i, 1);
            if self.is_reduced() && raised.0[i] as u64 == self.p {
                // b^p = b^[p] + ξ(b)^p, central, so it may be split off on the left.
                let base = raised.bumped(i, -(self.p as i32));
                let mut out = EnvElement::monomial(f, base.clone(), self.xi_p[i].clone());
                for (k, c) in self.pmap_terms(i) {
                    out.add_scaled(f, c, &self.lmul(*k, &base));
                }
                return out;
            }
            return EnvElement::monomial(f, raised, f.one());
        }
        // b_i b_j rest = ± b_j (b_i rest) + [b_i, b_j] rest
        let rest = m.bumped(j, -1);
        let inner = self.lmul(i, &rest);
        let mut out = EnvElement::zero();
        let s = self.sign(i, j);
        for (mm, c) in &inner.terms {
            out.add_scaled(f, &f.mul(&s, c), &self.lmul(j, mm));
        }
        for (k, c) in self.bracket_terms(i, j) {
            out.add_scaled(f, c, &self.lmul(*k, &rest));
        }
        out
    }

    /// `m · b_i` in normal form, by moving `b_i` leftwards.
    pub fn rmul(&self, m: &Monomial, i: usize) -> Arc<EnvElement<F>> {
        let key = (i, m.clone());
        if let Some(v) = self.right.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.rmul_compute(m, i));
        self.right
            .write()
            .expect("memo lock")
            .insert(key, v.clone());
        v
    }

    fn rmul_compute(&self, m: &Monomial, i: usize) -> EnvElement<F> {
        let f = self.field();
        let Some(j) = m.last() else {
            return EnvElement::monomial(f, m.bumped(i, 1), f.one());
        };
        if i > j {
            return EnvElement::monomial(f, m.bumped(i, 1), f.one());
        }
        if i == j {
            let rest = m.bumped(i, -1);
            if self.parity(i).is_odd() {
                let mut out = EnvElement::zero();
                for (k, c) in self.bracket_terms(i, i) {
                    out.add_scaled(f, &f.mul(&f.half(), c), &self.rmul(&rest, *k));
                }
                return out;
            }
            let raised = m.bumped(i, 1);
            if self.is_reduced() && raised.0[i] as u64 == self.p {
                let base = raised.bumped(i, -(self.p as i32));
                let mut out = EnvElement::monomial(f, base.clone(), self.xi_p[i].clone());
                for (k, c) in self.pmap_terms(i) {
                    out.add_scaled(f, c, &self.rmul(&base, *k));
                }
                return out;
            }
            return EnvElement::monomial(f, raised, f.one());
        }
        // rest b_j b_i = ± (rest b_i) b_j + rest [b_j, b_i]
        let rest = m.bumped(j, -1);
        let inner = self.rmul(&rest, i);
        let mut out = EnvElement::zero();
        let s = self.sign(i, j);
        for (mm, c) in &inner.terms {
            out.add_scaled(f, &f.mul(&s, c), &self.rmul(mm, j));
        }
        for (k, c) in self.bracket_terms(j, i) {
            out.add_scaled(f, c, &self.rmul(&rest, *k));
        }
        out
    }

    /// `b_i · a`.
    pub fn lmul_elem(&self, i: usize, a: &EnvElement<F>) -> EnvElement<F> {
        let f = self.field();
        let mut out = EnvElement::zero();
        for (m, c) in &a.terms {
            out.add_scaled(f, c, &self.lmul(i, m));
        }
        out
    }

    /// `a · b_i`.
    pub fn rmul_elem(&self, a: &EnvElement<F>, i: usize) -> EnvElement<F> {
        let f = self.field();
        let mut out = EnvElement::zero();
        for (m, c) in &a.terms {
            out.add_scaled(f, c, &self.rmul(m, i));
        }
        out
    }

    /// Normal-ordered product, appending the letters of `b` to `a` one at a time.
    pub fn mul(&self, a: &EnvElement<F>, b: &EnvElement<F>) -> EnvElement<F> {
        let f = self.field();
        let mut out = EnvElement::zero();
        for (mb, cb) in &b.terms {
            let mut acc = a.clone();
            for i in mb.word() {
                acc = self.rmul_elem(&acc, i);
            }
            out.add_scaled(f, cb, &acc);
        }
        out
    }

    /// The same product by letting the letters of `a` act on `b` from the left,
    /// last letter first: the left-regular representation.
    pub fn mul_left_regular(&self, a: &EnvElement<F>, b: &EnvElement<F>) -> EnvElement<F> {
        let f = self.field();
        let mut out = EnvElement::zero();
        for (ma, ca) in &a.terms {
            let mut acc = b.clone();
            for i in ma.word().into_iter().rev() {
                acc = self.lmul_elem(i, &acc);
            }
            out.add_scaled(f, ca, &acc);
        }
        out
    }

    /// Matrix of left multiplication by `b_i` on the basis of `U_ξ(g)`.
    pub fn left_regular_matrix(
        &self,
        i: usize,
        basis: &[Monomial],
        index: &HashMap<Monomial, usize>,
    ) -> SparseMat<F> {
        let cols: Vec<Vec<(usize, F::Elem)>> = basis
            .iter()
            .map(|m| {
                let v = self.lmul(i, m);
                let mut col: Vec<(usize, F::Elem)> = v
                    .terms
                    .iter()
                    .map(|(mm, c)| (index[mm], c.clone()))
                    .collect();
                col.sort_by_key(|(k, _)| *k);
                col
            })
            .collect();
        SparseMat::from_columns(self.field().clone(), basis.len(), &cols)
    }

    /// Number of memoized letter products, for diagnostics.
    pub fn memo_size(&self) -> usize {
        self.left.read().expect("memo lock").len() + self.right.read().expect("memo lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::lie::{build_catalog, build_q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn show<F: Field>(pbw: &Pbw<F>, a: &EnvElement<F>) -> Vec<(String, String)> {
        a.terms
            .iter()
            .map(|(m, c)| (m.label(&pbw.alg.space.labels), pbw.field().format_elem(c)))
            .collect()
    }

    #[test]
    fn gl11_one_commutator_step() {
        let pbw = Pbw::universal(build_q(&"gl(1|1)".parse().unwrap()).unwrap());
        // E21 · E12 = -E12 E21 + E11 + E22
        let out = pbw.lmul(3, &Monomial::letter(4, 2));
        assert_eq!(
            show(&pbw, &out),
            vec![
                ("E12·E21".into(), "-1/1".into()),
                ("E22".into(), "1/1".into()),
                ("E11".into(), "1/1".into())
            ]
        );
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let pbw = Pbw::universal(build_q(&"osp(1|2)".parse().unwrap()).unwrap());
        let f = Rationals;
        for i in pbw.alg.odd_indices() {
            let x = EnvElement::<Rationals>::monomial(&f, Monomial::letter(pbw.n(), i), f.one());
            let sq = pbw.mul(&x, &x);
            let mut half = EnvElement::zero();
            for (k, c) in pbw.alg.bracket_basis(i, i) {
                half.add_term(&f, Monomial::letter(pbw.n(), *k), f.mul(&f.half(), c));
            }
            assert_eq!(sq, half);
        }
    }

    #[test]
    fn reduced_power_of_toral_element() {
        let g = build_catalog(&"gl(1|1)".parse().unwrap(), 3).unwrap();
        let f = g.field;
        // E11^3 = E11^{[3]} = E11 when ξ = 0.
        let pbw = Pbw::reduced(g.clone(), PCharacter::zero(&g)).unwrap();
        let mut cube = Monomial::one(4);
        cube.0[0] = 2;
        let out = pbw.lmul(0, &cube);
        assert_eq!(
            *out,
            EnvElement::monomial(&f, Monomial::letter(4, 0), f.one())
        );
        assert_eq!(pbw.reduced_dim(), Some(36));
        assert_eq!(pbw.basis().unwrap().len(), 36);
    }

    #[test]
    fn reduced_power_of_nilpotent_vanishes() {
        let g = build_catalog(&"gl(2|1)".parse().unwrap(), 3).unwrap();
        let i = g.space.labels.iter().position(|l| l == "E12").unwrap();
        let pbw = Pbw::reduced(g.clone(), PCharacter::zero(&g)).unwrap();
        let mut sq = Monomial::one(g.dim());
        sq.0[i] = 2;
        assert!(pbw.lmul(i, &sq).is_zero());
    }

    fn random_element<F: Field, R: Rng>(
        pbw: &Pbw<F>,
        basis: &[Monomial],
        rng: &mut R,
    ) -> EnvElement<F> {
        let f = pbw.field();
        let mut a = EnvElement::zero();
        for _ in 0..3 {
            a.add_term(
                f,
                basis[rng.gen_range(0..basis.len())].clone(),
                f.random(rng),
            );
        }
        a
    }

    #[test]
    fn two_product_paths_agree_and_associate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in ["gl(1|1)", "osp(1|2)"] {
            let g = build_catalog(&k.parse().unwrap(), 3).unwrap();
            let mut xi = PCharacter::zero(&g);
            xi.values[0] = 1;
            let pbw = Pbw::reduced(g, xi).unwrap();
            let basis = pbw.basis().unwrap();
            for _ in 0..20 {
                let a = random_element(&pbw, &basis, &mut rng);
                let b = random_element(&pbw, &basis, &mut rng);
                let c = random_element(&pbw, &basis, &mut rng);
                assert_eq!(pbw.mul(&a, &b), pbw.mul_left_regular(&a, &b), "{k}");
                assert_eq!(
                    pbw.mul(&pbw.mul(&a, &b), &c),
                    pbw.mul(&a, &pbw.mul(&b, &c)),
                    "{k}"
                );
            }
        }
    }

    #[test]
    fn truncated_monomials() {
        let pbw = Pbw::universal(build_q(&"gl(1|1)".parse().unwrap()).unwrap());
        let ms = pbw.monomials_up_to(&[0, 1, 2, 3], &[1, 1, 1, 1], 2);
        let expected = (0..=2u16)
            .flat_map(|a| {
                (0..=2u16).flat_map(move |b| {
                    (0..=1u16).flat_map(move |c| (0..=1u16).map(move |d| [a, b, c, d]))
                })
            })
            .filter(|e| e.iter().sum::<u16>() <= 2)
            .count();
        assert_eq!(ms.len(), expected);
    }
}
