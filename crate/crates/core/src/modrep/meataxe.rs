//! Splitting of graded modules over `F_p` with replayable irreducibility certificates.
//!
//! Submodules are searched for with kernels of irreducible factors of characteristic
//! polynomials of random algebra elements; irreducibility is certified by Norton's test.
//! The parity operator is included among the operators, so every submodule found is graded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{charpoly, factor, Poly};
use crate::arith::{Field, PrimeField};
use crate::envelope::Module;
use crate::error::{Error, Result};
use crate::linalg::{self, Coordinates, Echelon, GradedSpace, Mat, Parity, Subspace};

/// Module over `F_p` given by dense generator matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct FpModule {
    pub field: PrimeField,
    pub space: GradedSpace,
    pub gens: Vec<Mat<PrimeField>>,
    pub gen_parity: Vec<Parity>,
}

/// A linear combination of words in the operators; index `gens.len()` is the parity operator.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Certificate {
    /// Norton's test: `f` irreducible with `dim ker f(A) = deg f`, and both `vector` (in `ker f(A)`)
    /// and `dual_vector` (in `ker f(A)^T`) generate everything.
    Simple {
        element: Vec<(u64, Word)>,
        factor: Vec<u64>,
        vector: Vec<u64>,
        dual_vector: Vec<u64>,
    },
    /// A proper nonzero invariant subspace, by basis.
    Splits { invariant: Vec<Vec<u64>> },
}

impl FpModule {
    pub fn new(
        field: PrimeField,
        space: GradedSpace,
        gens: Vec<Mat<PrimeField>>,
        gen_parity: Vec<Parity>,
    ) -> Self {
        FpModule {
            field,
            space,
            gens,
            gen_parity,
        }
    }

    pub fn from_module(m: &Module<PrimeField>, gen_parity: Vec<Parity>) -> Self {
        FpModule {
            field: m.field,
            space: m.space.clone(),
            gens: m.actions.iter().map(|a| a.to_dense()).collect(),
            gen_parity,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `(even, odd)` dimensions.
    pub fn sdim(&self) -> (usize, usize) {
        self.space.sdim()
    }

    fn parity_op(&self) -> Mat<PrimeField> {
        let f = self.field;
        let mut m = Mat::zeros(f, self.dim(), self.dim());
        for (i, p) in self.space.parity.iter().enumerate() {
            m.set(i, i, if p.is_odd() { f.from_i64(-1) } else { f.one() });
        }
        m
    }

    /// Generators followed by the parity operator.
    pub fn operators(&self) -> Vec<Mat<PrimeField>> {
        let mut ops = self.gens.clone();
        ops.push(self.parity_op());
        ops
    }

    pub fn word_matrix(&self, ops: &[Mat<PrimeField>], element: &[(u64, Word)]) -> Mat<PrimeField> {
        let f = self.field;
        let n = self.dim();
        let mut acc = Mat::zeros(f, n, n);
        for (c, w) in element {
            let m = w.iter().fold(Mat::identity(f, n), |m, &g| ops[g].mul(&m));
            acc.add_scaled(c, &m);
        }
        acc
    }

    /// Whether a subspace is stable under every generator.
    pub fn is_invariant(&self, s: &Subspace<PrimeField>) -> bool {
        s.basis
            .iter()
            .all(|v| self.gens.iter().all(|g| s.contains(&g.mul_vec(v))))
    }

    /// The module on an invariant graded subspace, in a homogeneous basis.
    pub fn submodule(&self, s: &Subspace<PrimeField>) -> FpModule {
        let f = self.field;
        let basis = s.homogeneous_basis();
        let coords = Coordinates::new(f, self.dim(), &basis).expect("independent basis");
        let parity: Vec<Parity> = basis
            .iter()
            .map(|v| linalg::vec_parity(&f, v, &self.space.parity).expect("homogeneous basis"))
            .collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|v| coords.coords(&g.mul_vec(v)).expect("invariant subspace"))
                    .collect();
                Mat::from_cols(f, basis.len(), &cols)
            })
            .collect();
        FpModule {
            field: f,
            space: GradedSpace::anonymous(parity),
            gens,
            gen_parity: self.gen_parity.clone(),
        }
    }

    /// The quotient by an invariant subspace, on the complementary unit vectors.
    pub fn quotient(&self, s: &Subspace<PrimeField>) -> FpModule {
        let f = self.field;
        let keep = s.complement_units();
        let reduce = |mut v: Vec<u64>| -> Vec<u64> {
            for (b, &pc) in s.basis.iter().zip(&s.pivots) {
                let c = v[pc];
                if c != 0 {
                    linalg::axpy(&f, &mut v, &f.neg(&c), b);
                }
            }
            keep.iter().map(|&k| v[k]).collect()
        };
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u64>> = keep.iter().map(|&k| reduce(g.col(k))).collect();
                Mat::from_cols(f, keep.len(), &cols)
            })
            .collect();
        let parity = keep.iter().map(|&k| self.space.parity[k]).collect();
        FpModule {
            field: f,
            space: GradedSpace::anonymous(parity),
            gens,
            gen_parity: self.gen_parity.clone(),
        }
    }

    /// Outer tensor product `V ⊠ W`: generators `a ⊗ 1` of `V` first, then `1 ⊗ b` of `W`
    /// with the sign `(-1)^{|b||v|}`.
    pub fn outer_tensor(&self, o: &FpModule) -> FpModule {
        let f = self.field;
        let (n, k) = (self.dim(), o.dim());
        let idx = |i: usize, j: usize| i * k + j;
        let parity: Vec<Parity> = (0..n)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| self.space.parity[i].plus(o.space.parity[j]))
            .collect();
        let mut gens = Vec::new();
        for a in &self.gens {
            let mut m = Mat::zeros(f, n * k, n * k);
            for i in 0..n {
                for i2 in 0..n {
                    let c = a.get(i2, i);
                    if *c != 0 {
                        for j in 0..k {
                            m.set(idx(i2, j), idx(i, j), *c);
                        }
                    }
                }
            }
            gens.push(m);
        }
        for (b, bp) in o.gens.iter().zip(&o.gen_parity) {
            let mut m = Mat::zeros(f, n * k, n * k);
            for i in 0..n {
                let s = if bp.is_odd() && self.space.parity[i].is_odd() {
                    f.from_i64(-1)
                } else {
                    f.one()
                };
                for j in 0..k {
                    for j2 in 0..k {
                        let c = b.get(j2, j);
                        if *c != 0 {
                            m.set(idx(i, j2), idx(i, j), f.mul(&s, c));
                        }
                    }
                }
            }
            gens.push(m);
        }
        let mut gen_parity = self.gen_parity.clone();
        gen_parity.extend(o.gen_parity.iter().cloned());
        FpModule {
            field: f,
            space: GradedSpace::anonymous(parity),
            gens,
            gen_parity,
        }
    }
}

/// Span of the orbit of `v` under `ops`; returns the spanning vectors found, in order,
/// with each vector's (parent, operator) for reconstruction.
fn spin(
    f: &PrimeField,
    ops: &[Mat<PrimeField>],
    v: &[u64],
) -> (Vec<Vec<u64>>, Vec<Option<(usize, usize)>>) {
    let n = v.len();
    let mut e = Echelon::new(*f, n);
    let mut out = Vec::new();
    let mut parent = Vec::new();
    if e.insert(v.to_vec()).is_none() {
        return (out, parent);
    }
    out.push(v.to_vec());
    parent.push(None);
    let mut k = 0;
    while k < out.len() && !e.is_full() {
        for (g, op) in ops.iter().enumerate() {
            let w = op.mul_vec(&out[k]);
            if e.insert(w.clone()).is_some() {
                out.push(w);
                parent.push(Some((k, g)));
            }
        }
        k += 1;
    }
    (out, parent)
}

fn spin_dim(f: &PrimeField, ops: &[Mat<PrimeField>], v: &[u64]) -> usize {
    spin(f, ops, v).0.len()
}

fn random_element<R: Rng>(f: &PrimeField, nops: usize, rng: &mut R) -> Vec<(u64, Word)> {
    let terms = rng.gen_range(2..=5);
    (0..terms)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let w: Word = (0..len).map(|_| rng.gen_range(0..nops)).collect();
            (f.random(rng), w)
        })
        .collect()
}

fn kernel_basis(a: &Mat<PrimeField>) -> Vec<Vec<u64>> {
    a.echelon().null_basis()
}

/// Outcome of one search: a proper invariant subspace or a Norton certificate.
fn find_submodule<R: Rng>(m: &FpModule, rng: &mut R, attempts: usize) -> Result<Certificate> {
    let f = m.field;
    let n = m.dim();
    if n <= 1 {
        return Ok(Certificate::Simple {
            element: Vec::new(),
            factor: vec![0, 1],
            vector: vec![1; n],
            dual_vector: vec![1; n],
        });
    }
    let ops = m.operators();
    let t_ops: Vec<Mat<PrimeField>> = ops.iter().map(Mat::transpose).collect();
    let splits = |vecs: Vec<Vec<u64>>| Certificate::Splits {
        invariant: Subspace::from_spanning(f, m.space.clone(), vecs).basis,
    };
    for _ in 0..attempts {
        let element = random_element(&f, ops.len(), rng);
        let a = m.word_matrix(&ops, &element);
        for (g, _) in factor(&f, &charpoly(&a), rng) {
            let fa = g.eval_mat(&a);
            let null = kernel_basis(&fa);
            let deg = g.degree().expect("nonconstant factor");
            for v in &null {
                let (span, _) = spin(&f, &ops, v);
                if span.len() < n {
                    return Ok(splits(span));
                }
                if null.len() != deg {
                    continue;
                }
                let dual = kernel_basis(&fa.transpose());
                let w = &dual[0];
                let (dspan, _) = spin(&f, &t_ops, w);
                if dspan.len() < n {
                    // The annihilator of an invariant subspace of the dual is invariant.
                    let ann = Mat::from_rows(f, n, dspan).echelon().null_basis();
                    return Ok(splits(ann));
                }
                return Ok(Certificate::Simple {
                    element,
                    factor: g.0.clone(),
                    vector: v.clone(),
                    dual_vector: w.clone(),
                });
            }
        }
    }
    Err(Error::Unsupported(format!(
        "no split or certificate found in {attempts} attempts (dim {n})"
    )))
}

impl Certificate {
    pub fn is_simple(&self) -> bool {
        matches!(self, Certificate::Simple { .. })
    }

    /// Re-verifies the certificate against the module.
    pub fn replay(&self, m: &FpModule) -> bool {
        let f = m.field;
        let n = m.dim();
        match self {
            Certificate::Splits { invariant } => {
                let s = Subspace::from_spanning(f, m.space.clone(), invariant.iter().cloned());
                s.dim() > 0 && s.dim() < n && s.is_graded() && m.is_invariant(&s)
            }
            Certificate::Simple {
                element,
                factor,
                vector,
                dual_vector,
            } => {
                if n <= 1 {
                    return true;
                }
                let ops = m.operators();
                let a = m.word_matrix(&ops, element);
                let g = Poly::new(&f, factor.clone());
                let deg = g.degree().unwrap_or(0);
                let irreducible = super::poly::factor(&f, &g, &mut ChaCha8Rng::seed_from_u64(0))
                    == vec![(g.monic(&f), 1)];
                let fa = g.eval_mat(&a);
                let t_ops: Vec<Mat<PrimeField>> = ops.iter().map(Mat::transpose).collect();
                irreducible
                    && kernel_basis(&fa).len() == deg
                    && !linalg::is_zero_vec(&f, vector)
                    && linalg::is_zero_vec(&f, &fa.mul_vec(vector))
                    && !linalg::is_zero_vec(&f, dual_vector)
                    && linalg::is_zero_vec(&f, &fa.transpose().mul_vec(dual_vector))
                    && spin_dim(&f, &ops, vector) == n
                    && spin_dim(&f, &t_ops, dual_vector) == n
            }
        }
    }
}

/// A composition factor with its certificate; `multiplicity` counts factors isomorphic
/// to it by an even isomorphism.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: FpModule,
    pub certificate: Certificate,
    pub multiplicity: usize,
}

/// Irreducibility test with certificate.
pub fn certify(m: &FpModule, seed: u64) -> Result<Certificate> {
    find_submodule(m, &mut ChaCha8Rng::seed_from_u64(seed), 400)
}

/// Composition factors of a graded module; deterministic for a given seed.
pub fn split(m: &FpModule, seed: u64, cap: usize) -> Result<Vec<Factor>> {
    if m.dim() > cap {
        return Err(Error::CapExceeded { dim: m.dim(), cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut simple: Vec<(FpModule, Certificate)> = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(cur) = stack.pop() {
        if cur.dim() == 0 {
            continue;
        }
        match find_submodule(&cur, &mut rng, 400)? {
            c @ Certificate::Simple { .. } => simple.push((cur, c)),
            Certificate::Splits { invariant } => {
                let s = Subspace::from_spanning(cur.field, cur.space.clone(), invariant);
                stack.push(cur.quotient(&s));
                stack.push(cur.submodule(&s));
            }
        }
    }
    let mut out: Vec<Factor> = Vec::new();
    for (module, certificate) in simple {
        let mut found = false;
        for fct in out.iter_mut() {
            if fct.module.dim() == module.dim()
                && fct.module.sdim() == module.sdim()
                && hom_dim(&fct.module, &module, Parity::Even)? > 0
            {
                fct.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            out.push(Factor {
                module,
                certificate,
                multiplicity: 1,
            });
        }
    }
    out.sort_by_key(|f| (f.module.dim(), f.module.sdim()));
    Ok(out)
}

/// Dimension of the space of homomorphisms `V -> W` of the given parity, for `V` generated
/// by any homogeneous vector (e.g. simple `V`); the super sign rule `φ(av) = (-1)^{|φ||a|} aφ(v)`.
pub fn hom_dim(v: &FpModule, w: &FpModule, parity: Parity) -> Result<usize> {
    Ok(hom_basis(v, w, parity)?.len())
}

/// A basis of the homomorphisms counted by [`hom_dim`], as `dim W × dim V` matrices.
pub fn hom_basis(v: &FpModule, w: &FpModule, parity: Parity) -> Result<Vec<Mat<PrimeField>>> {
    let f = v.field;
    let (n, k) = (v.dim(), w.dim());
    if n == 0 {
        return Ok(Vec::new());
    }
    let Some((start, (basis, parent))) = (0..n)
        .map(|i| (i, spin(&f, &v.gens, &linalg::unit(&f, n, i))))
        .find(|(_, (b, _))| b.len() == n)
    else {
        return Err(Error::NotSimpleInput);
    };
    let v0_parity = v.space.parity[start];
    let unknowns: Vec<usize> = (0..k)
        .filter(|&j| w.space.parity[j] == v0_parity.plus(parity))
        .collect();
    let u = unknowns.len();
    if u == 0 {
        return Ok(Vec::new());
    }
    let sign = |gp: Parity| {
        if parity.is_odd() && gp.is_odd() {
            f.from_i64(-1)
        } else {
            f.one()
        }
    };
    // phi(basis_k) = Phi_k y, an n_W x u matrix.
    let mut phis: Vec<Mat<PrimeField>> = Vec::with_capacity(n);
    for par in &parent {
        let m = match par {
            None => {
                let mut m = Mat::zeros(f, k, u);
                for (c, &j) in unknowns.iter().enumerate() {
                    m.set(j, c, f.one());
                }
                m
            }
            Some((pk, g)) => w.gens[*g].mul(&phis[*pk]).scale(&sign(v.gen_parity[*g])),
        };
        phis.push(m);
    }
    let coords = Coordinates::new(f, n, &basis)?;
    let mut e = Echelon::new(f, u);
    'fill: for (g, (gv, gw)) in v.gens.iter().zip(&w.gens).enumerate() {
        let s = sign(v.gen_parity[g]);
        for (b, phi) in basis.iter().zip(&phis) {
            let c = coords.coords(&gv.mul_vec(b)).expect("spin basis spans");
            let mut lhs = gw.mul(phi).scale(&s);
            for (cj, pj) in c.iter().zip(&phis) {
                if *cj != 0 {
                    lhs.add_scaled(&f.neg(cj), pj);
                }
            }
            for r in 0..k {
                if e.is_full() {
                    break 'fill;
                }
                e.insert(lhs.row(r).to_vec());
            }
        }
    }
    // φ on the spin basis, then in unit coordinates: φ = Φ B^{-1}.
    let b_inv = Mat::from_cols(f, n, &basis)
        .inverse()
        .expect("spin basis is a basis");
    Ok(e.null_basis()
        .into_iter()
        .map(|y| {
            let cols: Vec<Vec<u64>> = phis.iter().map(|phi| phi.mul_vec(&y)).collect();
            Mat::from_cols(f, k, &cols).mul(&b_inv)
        })
        .collect())
}
