//! Finite-dimensional associative superalgebras over `F_p` by structure constants.

use serde::Serialize;

use crate::arith::{Field, PrimeField};
use crate::envelope::{Monomial, Pbw};
use crate::error::{Error, Result};
use crate::linalg::{self, Coordinates, Echelon, GradedSpace, Mat, Parity, Subspace};
use crate::modrep::{certify, hom_dim, Certificate, FpModule};

/// Isomorphism type of a simple superalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SuperShape {
    /// `End(k^{m|n})`, normalized to `m >= n`.
    M { m: usize, n: usize },
    /// `{A + BJ}` with `J` odd, central and `J^2 = 1`.
    Q { n: usize },
}

impl SuperShape {
    pub fn m(m: usize, n: usize) -> Self {
        SuperShape::M {
            m: m.max(n),
            n: m.min(n),
        }
    }

    /// `(even, odd)` dimensions.
    pub fn sdim(&self) -> (usize, usize) {
        match *self {
            SuperShape::M { m, n } => (m * m + n * n, 2 * m * n),
            SuperShape::Q { n } => (n * n, n * n),
        }
    }

    /// The tensor identities `M⊗M`, `M⊗Q` and `Q⊗Q`.
    pub fn tensor(&self, o: &SuperShape) -> SuperShape {
        match (*self, *o) {
            (SuperShape::M { m, n }, SuperShape::M { m: a, n: b }) => {
                SuperShape::m(m * a + n * b, m * b + n * a)
            }
            (SuperShape::M { m, n }, SuperShape::Q { n: k })
            | (SuperShape::Q { n: k }, SuperShape::M { m, n }) => SuperShape::Q { n: (m + n) * k },
            (SuperShape::Q { n }, SuperShape::Q { n: k }) => SuperShape::m(n * k, n * k),
        }
    }
}

impl std::fmt::Display for SuperShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuperShape::M { m, n } => write!(f, "M({m},{n})"),
            SuperShape::Q { n } => write!(f, "Q({n})"),
        }
    }
}

/// Type of a simple module: one- or two-dimensional graded endomorphism ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleType {
    M,
    Q,
}

/// Associative superalgebra with unit on a homogeneous basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AssocSuperAlgebra {
    pub field: PrimeField,
    pub space: GradedSpace,
    /// `table[i * n + j] = b_i b_j`.
    table: Vec<Vec<u64>>,
    pub unit: Vec<u64>,
}

impl AssocSuperAlgebra {
    /// Checks the unit and that products of basis vectors are homogeneous of the right parity.
    pub fn new(
        field: PrimeField,
        space: GradedSpace,
        table: Vec<Vec<u64>>,
        unit: Vec<u64>,
    ) -> Result<Self> {
        let a = AssocSuperAlgebra {
            field,
            space,
            table,
            unit,
        };
        let n = a.dim();
        if a.table.len() != n * n || a.unit.len() != n {
            return Err(Error::DimensionMismatch {
                expected: (n * n) as u64,
                found: a.table.len() as u64,
                context: "product table".into(),
            });
        }
        for i in 0..n {
            let e = linalg::unit(&field, n, i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(Error::Unsupported(
                    "unit is not a two-sided identity".into(),
                ));
            }
            for j in 0..n {
                let want = a.space.parity[i].plus(a.space.parity[j]);
                if linalg::vec_parity(&field, &a.table[i * n + j], &a.space.parity)
                    .is_some_and(|p| p != want)
                {
                    return Err(Error::ParityViolation(format!("b{i} b{j}")));
                }
            }
        }
        Ok(a)
    }

    /// The superalgebra spanned by homogeneous matrices closed under multiplication.
    pub fn from_matrices(
        field: PrimeField,
        basis: &[Mat<PrimeField>],
        parity: Vec<Parity>,
    ) -> Result<Self> {
        let flat: Vec<Vec<u64>> = basis.iter().map(|m| m.data.clone()).collect();
        let coords = Coordinates::new(field, flat[0].len(), &flat)?;
        let get = |m: &Mat<PrimeField>| {
            coords
                .coords(&m.data)
                .ok_or_else(|| Error::Unsupported("matrices not closed under product".into()))
        };
        let table = basis
            .iter()
            .flat_map(|a| basis.iter().map(move |b| a.mul(b)))
            .map(|m| get(&m))
            .collect::<Result<Vec<_>>>()?;
        let n0 = basis[0].rows;
        let unit = get(&Mat::identity(field, n0))?;
        Self::new(field, GradedSpace::anonymous(parity), table, unit)
    }

    /// `M(m, n) = End(k^{m|n})` on matrix units.
    pub fn matrix(field: PrimeField, m: usize, n: usize) -> Self {
        let d = m + n;
        let odd = |i: usize| i >= m;
        let mut basis = Vec::new();
        let mut parity = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut e = Mat::zeros(field, d, d);
                e.set(i, j, 1);
                basis.push(e);
                parity.push(if odd(i) != odd(j) {
                    Parity::Odd
                } else {
                    Parity::Even
                });
            }
        }
        Self::from_matrices(field, &basis, parity).expect("matrix units form an algebra")
    }

    /// `Q(n)` inside `M(n, n)`: even `diag(A, A)`, odd `[[0, B], [B, 0]]`.
    pub fn queer(field: PrimeField, n: usize) -> Self {
        let mut basis = Vec::new();
        let mut parity = Vec::new();
        for odd in [false, true] {
            for i in 0..n {
                for j in 0..n {
                    let mut e = Mat::zeros(field, 2 * n, 2 * n);
                    let (di, dj) = if odd { (0, n) } else { (0, 0) };
                    e.set(i + di, j + dj, 1);
                    e.set(i + n - di, j + n - dj, 1);
                    basis.push(e);
                    parity.push(if odd { Parity::Odd } else { Parity::Even });
                }
            }
        }
        Self::from_matrices(field, &basis, parity).expect("Q(n) is closed")
    }

    /// The split algebra of the given shape.
    pub fn of_shape(field: PrimeField, shape: SuperShape) -> Self {
        match shape {
            SuperShape::M { m, n } => Self::matrix(field, m, n),
            SuperShape::Q { n } => Self::queer(field, n),
        }
    }

    /// `U_ξ(g)` on its PBW basis.
    pub fn from_reduced(pbw: &Pbw<PrimeField>) -> Result<Self> {
        let f = *pbw.field();
        let basis = pbw.basis()?;
        let index: std::collections::HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let n = basis.len();
        let elems: Vec<_> = basis
            .iter()
            .map(|m| crate::envelope::EnvElement::monomial(&f, m.clone(), 1))
            .collect();
        let table = crate::par::map_range(n * n, |k| {
            let prod = pbw.mul(&elems[k / n], &elems[k % n]);
            let mut v = vec![0; n];
            for (m, c) in prod.terms {
                v[index[&m]] = c;
            }
            v
        });
        let parity = basis
            .iter()
            .map(|m| m.parity(&pbw.alg.space.parity))
            .collect();
        let mut unit = vec![0; n];
        unit[index[&Monomial::one(pbw.n())]] = 1;
        Self::new(
            f,
            GradedSpace::new(
                basis
                    .iter()
                    .map(|m| m.label(&pbw.alg.space.labels))
                    .collect(),
                parity,
            ),
            table,
            unit,
        )
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sdim(&self) -> (usize, usize) {
        self.space.sdim()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![0; n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                linalg::axpy(f, &mut out, &f.mul(x, y), &self.table[i * n + j]);
            }
        }
        out
    }

    /// `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`, basis `b_i ⊗ c_j` at index `i * dim B + j`.
    pub fn tensor(&self, o: &AssocSuperAlgebra) -> AssocSuperAlgebra {
        let f = self.field;
        let (n, k) = (self.dim(), o.dim());
        let parity: Vec<Parity> = (0..n * k)
            .map(|x| self.space.parity[x / k].plus(o.space.parity[x % k]))
            .collect();
        let mut table = Vec::with_capacity(n * n * k * k);
        for x in 0..n * k {
            for y in 0..n * k {
                let (a, b, a2, b2) = (x / k, x % k, y / k, y % k);
                let neg = o.space.parity[b].is_odd() && self.space.parity[a2].is_odd();
                let (u, v) = (self.basis_product(a, a2), o.basis_product(b, b2));
                let mut w = vec![0; n * k];
                for (i, ui) in u.iter().enumerate().filter(|(_, c)| **c != 0) {
                    for (j, vj) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
                        let c = f.mul(ui, vj);
                        w[i * k + j] = if neg { f.neg(&c) } else { c };
                    }
                }
                table.push(w);
            }
        }
        let unit = (0..n * k)
            .map(|x| f.mul(&self.unit[x / k], &o.unit[x % k]))
            .collect();
        AssocSuperAlgebra {
            field: f,
            space: GradedSpace::anonymous(parity),
            table,
            unit,
        }
    }

    /// Matrix of `v ↦ b_i v`.
    pub fn left_mult(&self, i: usize) -> Mat<PrimeField> {
        let n = self.dim();
        let cols: Vec<Vec<u64>> = (0..n).map(|j| self.table[i * n + j].clone()).collect();
        Mat::from_cols(self.field, n, &cols)
    }

    /// Matrix of `v ↦ v b_i`.
    pub fn right_mult(&self, i: usize) -> Mat<PrimeField> {
        let n = self.dim();
        let cols: Vec<Vec<u64>> = (0..n).map(|j| self.table[j * n + i].clone()).collect();
        Mat::from_cols(self.field, n, &cols)
    }

    /// Matrix of `v ↦ a v`.
    pub fn left_mult_by(&self, a: &[u64]) -> Mat<PrimeField> {
        let n = self.dim();
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|j| self.mul(a, &linalg::unit(&self.field, n, j)))
            .collect();
        Mat::from_cols(self.field, n, &cols)
    }

    /// Matrix of `v ↦ v a`.
    pub fn right_mult_by(&self, a: &[u64]) -> Mat<PrimeField> {
        let n = self.dim();
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|j| self.mul(&linalg::unit(&self.field, n, j), a))
            .collect();
        Mat::from_cols(self.field, n, &cols)
    }

    /// Homogeneous elements that generate the algebra together with the unit, drawn at random
    /// (one of each parity per round) until the subalgebra they generate is everything.
    pub fn generators(&self, seed: u64) -> Vec<(Vec<u64>, Parity)> {
        let f = self.field;
        let n = self.dim();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut gens: Vec<(Vec<u64>, Parity)> = Vec::new();
        let mut lefts: Vec<Mat<PrimeField>> = Vec::new();
        let parities: Vec<Parity> = [Parity::Even, Parity::Odd]
            .into_iter()
            .filter(|&q| self.space.parity.contains(&q))
            .collect();
        // One round almost always suffices; `n` rounds is a generous cap.
        for _ in 0..n.max(1) {
            for &q in &parities {
                let v: Vec<u64> = (0..n)
                    .map(|i| {
                        if self.space.parity[i] == q {
                            f.random(&mut rng)
                        } else {
                            0
                        }
                    })
                    .collect();
                lefts.push(self.left_mult_by(&v));
                gens.push((v, q));
            }
            let mut e = Echelon::new(f, n);
            let mut queue = vec![self.unit.clone()];
            while let Some(v) = queue.pop() {
                if e.insert(v.clone()).is_some() {
                    queue.extend(lefts.iter().map(|l| l.mul_vec(&v)));
                }
            }
            if e.is_full() {
                break;
            }
        }
        gens
    }

    /// The algebra as a bimodule over a generating set: its submodules are the graded
    /// two-sided ideals.
    pub fn bimodule(&self) -> FpModule {
        let gens = self.generators(0);
        let mut mats: Vec<Mat<PrimeField>> =
            gens.iter().map(|(g, _)| self.left_mult_by(g)).collect();
        mats.extend(gens.iter().map(|(g, _)| self.right_mult_by(g)));
        let gen_parity = gens.iter().chain(&gens).map(|(_, q)| *q).collect();
        FpModule::new(self.field, self.space.clone(), mats, gen_parity)
    }

    /// The left regular module.
    pub fn regular_module(&self) -> FpModule {
        let gens = (0..self.dim()).map(|i| self.left_mult(i)).collect();
        FpModule::new(
            self.field,
            self.space.clone(),
            gens,
            self.space.parity.clone(),
        )
    }

    /// A module from the action matrices of the basis elements.
    pub fn module(&self, space: GradedSpace, actions: Vec<Mat<PrimeField>>) -> FpModule {
        FpModule::new(self.field, space, actions, self.space.parity.clone())
    }

    /// Ordinary center: elements commuting with a generating set.
    pub fn center(&self) -> Subspace<PrimeField> {
        let f = self.field;
        let n = self.dim();
        let mut e = Echelon::new(f, n);
        for (g, _) in self.generators(0) {
            let d = self.right_mult_by(&g).sub(&self.left_mult_by(&g));
            for r in 0..n {
                if e.is_full() {
                    break;
                }
                e.insert(d.row(r).to_vec());
            }
        }
        Subspace::from_spanning(f, self.space.clone(), e.null_basis())
    }

    /// Smallest two-sided ideal containing the given elements.
    pub fn ideal_closure(&self, elements: &[Vec<u64>]) -> Subspace<PrimeField> {
        let f = self.field;
        let n = self.dim();
        let mut e = Echelon::new(f, n);
        let mut queue: Vec<Vec<u64>> = elements
            .iter()
            .flat_map(|v| {
                [
                    linalg::parity_part(&f, v, &self.space.parity, Parity::Even),
                    linalg::parity_part(&f, v, &self.space.parity, Parity::Odd),
                ]
            })
            .collect();
        let ops: Vec<Mat<PrimeField>> = (0..n)
            .flat_map(|i| [self.left_mult(i), self.right_mult(i)])
            .collect();
        while let Some(v) = queue.pop() {
            if e.insert(v.clone()).is_some() {
                queue.extend(ops.iter().map(|m| m.mul_vec(&v)));
            }
        }
        Subspace::from_echelon(self.space.clone(), &e)
    }

    /// `A / I` for a graded two-sided ideal, on the complementary unit vectors.
    pub fn quotient(&self, ideal: &Subspace<PrimeField>) -> Result<Self> {
        let f = self.field;
        let keep = ideal.complement_units();
        let reduce = |mut v: Vec<u64>| -> Vec<u64> {
            for (b, &pc) in ideal.basis.iter().zip(&ideal.pivots) {
                let c = v[pc];
                if c != 0 {
                    linalg::axpy(&f, &mut v, &f.neg(&c), b);
                }
            }
            keep.iter().map(|&k| v[k]).collect()
        };
        let n = self.dim();
        let table = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| reduce(self.table[i * n + j].clone()))
            .collect();
        let parity = keep.iter().map(|&k| self.space.parity[k]).collect();
        Self::new(
            f,
            GradedSpace::anonymous(parity),
            table,
            reduce(self.unit.clone()),
        )
    }
}

/// `k^{m|n}` for `M(m, n)`, or `k^{n|n}` for `Q(n)`, with generators the basis of
/// [`AssocSuperAlgebra::of_shape`].
pub fn natural_module(field: PrimeField, shape: SuperShape) -> FpModule {
    let (rows, even, mats): (usize, usize, Vec<(Mat<PrimeField>, Parity)>) = match shape {
        SuperShape::M { m, n } => {
            let d = m + n;
            let mats = (0..d * d)
                .map(|k| {
                    let mut e = Mat::zeros(field, d, d);
                    e.set(k / d, k % d, 1);
                    (
                        e,
                        if (k / d >= m) != (k % d >= m) {
                            Parity::Odd
                        } else {
                            Parity::Even
                        },
                    )
                })
                .collect();
            (d, m, mats)
        }
        SuperShape::Q { n } => {
            let mats = (0..2 * n * n)
                .map(|k| {
                    let (odd, i, j) = (k >= n * n, (k % (n * n)) / n, k % n);
                    let mut e = Mat::zeros(field, 2 * n, 2 * n);
                    let (di, dj) = if odd { (0, n) } else { (0, 0) };
                    e.set(i + di, j + dj, 1);
                    e.set(i + n - di, j + n - dj, 1);
                    (e, if odd { Parity::Odd } else { Parity::Even })
                })
                .collect();
            (2 * n, n, mats)
        }
    };
    let space = GradedSpace::anonymous(
        (0..rows)
            .map(|i| if i < even { Parity::Even } else { Parity::Odd })
            .collect(),
    );
    let (gens, parity) = mats.into_iter().unzip();
    FpModule::new(field, space, gens, parity)
}

/// Decides `M(m, n)` or `Q(n)` for a simple superalgebra.
///
/// Simplicity is the irreducibility of the bimodule with the parity operator adjoined, certified
/// by the MeatAxe; the shape then follows from the ordinary center (`k` for `M`, `k ⊕ kJ` for `Q`)
/// and the graded dimension. A `Q`-form whose `J^2` is a non-square is reported as unsupported.
pub fn classify_simple(a: &AssocSuperAlgebra, seed: u64) -> Result<SuperShape> {
    if let Certificate::Splits { invariant } = certify(&a.bimodule(), seed)? {
        return Err(Error::NotSimple {
            ideal_dim: invariant.len(),
        });
    }
    let (e, o) = a.sdim();
    let z = a.center().dim();
    let isqrt = |x: usize| (0..=x).find(|k| k * k >= x).filter(|k| k * k == x);
    match z {
        1 => {
            let s = isqrt(e + o);
            let d = isqrt(e - o.min(e));
            match (s, d) {
                (Some(s), Some(d)) if (s + d) % 2 == 0 => {
                    Ok(SuperShape::m((s + d) / 2, (s - d) / 2))
                }
                _ => Err(Error::Unsupported(format!(
                    "central simple of dimension ({e}|{o}) is not split"
                ))),
            }
        }
        2 if e == o => {
            // Split only if the odd central element squares to a nonzero square.
            let z = a.center().parity_part(Parity::Odd);
            let c = z.basis.first().map(|v| a.mul(v, v)).and_then(|sq| {
                let pos = a.unit.iter().position(|&x| x != 0)?;
                let c = a.field.mul(&sq[pos], &a.field.inv(&a.unit[pos])?);
                (linalg::scale_vec(&a.field, &c, &a.unit) == sq).then_some(c)
            });
            match (c, isqrt(e)) {
                (Some(c), Some(n)) if c != 0 && a.field.is_square(c) => Ok(SuperShape::Q { n }),
                _ => Err(Error::Unsupported(format!(
                    "center of dim 2 with dimension ({e}|{o}) is not split"
                ))),
            }
        }
        _ => Err(Error::Unsupported(format!(
            "simple superalgebra with center of dimension {z} is not split"
        ))),
    }
}

/// Type of a simple module from its even and odd self-homomorphisms.
pub fn module_type(v: &FpModule) -> Result<ModuleType> {
    match (hom_dim(v, v, Parity::Even)?, hom_dim(v, v, Parity::Odd)?) {
        (1, 0) => Ok(ModuleType::M),
        (1, 1) => Ok(ModuleType::Q),
        (a, b) => Err(Error::Unsupported(format!(
            "endomorphism ring of dimension ({a}|{b})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::split;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn shapes_of_the_basic_families() {
        let f = fp(5);
        assert_eq!(
            classify_simple(&AssocSuperAlgebra::matrix(f, 1, 1), 0).unwrap(),
            SuperShape::m(1, 1)
        );
        assert_eq!(
            classify_simple(&AssocSuperAlgebra::matrix(f, 1, 2), 0).unwrap(),
            SuperShape::m(2, 1)
        );
        assert_eq!(
            classify_simple(&AssocSuperAlgebra::queer(f, 1), 0).unwrap(),
            SuperShape::Q { n: 1 }
        );
        assert_eq!(
            classify_simple(&AssocSuperAlgebra::queer(f, 2), 0).unwrap(),
            SuperShape::Q { n: 2 }
        );
        assert_eq!(
            AssocSuperAlgebra::queer(f, 2).sdim(),
            SuperShape::Q { n: 2 }.sdim()
        );
    }

    #[test]
    fn queer_tensor_queer_is_matrix() {
        let f = fp(3);
        let q = AssocSuperAlgebra::queer(f, 1);
        assert_eq!(
            classify_simple(&q.tensor(&q), 0).unwrap(),
            SuperShape::m(1, 1)
        );
    }

    #[test]
    fn non_split_queer_form_is_rejected() {
        // k[v]/(v^2 - 2) over F_3: the odd center squares to a non-square.
        let f = fp(3);
        let a = AssocSuperAlgebra::new(
            f,
            GradedSpace::anonymous(vec![Parity::Even, Parity::Odd]),
            vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![2, 0]],
            vec![1, 0],
        )
        .unwrap();
        assert!(matches!(classify_simple(&a, 0), Err(Error::Unsupported(_))));
        let b = AssocSuperAlgebra::new(
            f,
            GradedSpace::anonymous(vec![Parity::Even, Parity::Odd]),
            vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 0]],
            vec![1, 0],
        )
        .unwrap();
        assert_eq!(classify_simple(&b, 0).unwrap(), SuperShape::Q { n: 1 });
    }

    #[test]
    fn natural_modules_match_their_algebras() {
        let f = fp(3);
        for shape in [SuperShape::m(2, 1), SuperShape::Q { n: 2 }] {
            let a = AssocSuperAlgebra::of_shape(f, shape);
            let v = natural_module(f, shape);
            // The generators multiply like the basis they stand for.
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let prod = v.gens[i].mul(&v.gens[j]);
                    let mut expect = Mat::zeros(f, v.dim(), v.dim());
                    for (k, c) in a.basis_product(i, j).iter().enumerate() {
                        expect.add_scaled(c, &v.gens[k]);
                    }
                    assert_eq!(prod, expect);
                }
            }
            let t = module_type(&v).unwrap();
            assert_eq!(
                t,
                if matches!(shape, SuperShape::Q { .. }) {
                    ModuleType::Q
                } else {
                    ModuleType::M
                }
            );
        }
    }

    #[test]
    fn non_simple_algebras_are_rejected() {
        let f = fp(3);
        // Exterior algebra on one odd generator: `k[t]/t^2`.
        let a = AssocSuperAlgebra::new(
            f,
            GradedSpace::anonymous(vec![Parity::Even, Parity::Odd]),
            vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]],
            vec![1, 0],
        )
        .unwrap();
        assert_eq!(
            classify_simple(&a, 0),
            Err(Error::NotSimple { ideal_dim: 1 })
        );
        let ideal = a.ideal_closure(&[vec![0, 1]]);
        assert_eq!(ideal.dim(), 1);
        assert_eq!(a.quotient(&ideal).unwrap().dim(), 1);
    }

    #[test]
    fn regular_module_types() {
        let f = fp(3);
        let q = AssocSuperAlgebra::queer(f, 1);
        assert_eq!(module_type(&q.regular_module()).unwrap(), ModuleType::Q);
        let m = AssocSuperAlgebra::matrix(f, 1, 1);
        let factors = split(&m.regular_module(), 0, 100).unwrap();
        // The natural module and its parity shift, which are not evenly isomorphic.
        assert_eq!(factors.len(), 2);
        for fct in &factors {
            assert_eq!((fct.module.dim(), fct.multiplicity), (2, 1));
            assert_eq!(module_type(&fct.module).unwrap(), ModuleType::M);
        }
    }
}
