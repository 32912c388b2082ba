use std::collections::BTreeMap;

use serde::Serialize;

use super::{reduce_subspace, reduce_vec, SL2Triple};
use crate::arith::{Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::lie::{PCharacter, SuperAlgebraData};
use crate::linalg::{self, kernel, GradedMap, Mat, Parity, Subspace};

/// Eigenspaces `g(i)` of `ad h`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynkinGrading<F: Field> {
    pub pieces: BTreeMap<i32, Subspace<F>>,
    pub triple: SL2Triple<F>,
}

impl<F: Field> DynkinGrading<F> {
    pub fn piece(&self, i: i32) -> Option<&Subspace<F>> {
        self.pieces.get(&i)
    }

    /// `(even, odd)` dimensions of `g(i)`.
    pub fn dims(&self, i: i32) -> (usize, usize) {
        self.piece(i).map_or((0, 0), Subspace::graded_dims)
    }

    /// Degree of a vector lying in a single piece.
    pub fn degree_of(&self, v: &[F::Elem]) -> Option<i32> {
        self.pieces
            .iter()
            .find(|(_, s)| s.contains(v))
            .map(|(i, _)| *i)
    }

    fn basis_of(&self, i: i32, which: Parity) -> Vec<Vec<F::Elem>> {
        self.piece(i)
            .map_or(Vec::new(), |s| s.parity_part(which).basis)
    }
}

/// Decomposes `g` into integral `ad h` eigenspaces. Gradings are computed in
/// characteristic zero, where distinct integers stay distinct.
pub fn grade<F: Field>(
    alg: &SuperAlgebraData<F>,
    triple: &SL2Triple<F>,
) -> Result<DynkinGrading<F>> {
    let f = &alg.field;
    if f.characteristic() != 0 {
        return Err(Error::Unsupported(
            "gradings are computed over Q and then reduced".into(),
        ));
    }
    let n = alg.dim();
    let ad_h = alg.ad(&triple.h);
    let mut pieces = BTreeMap::new();
    let mut total = 0;
    let bound = 2 * n as i64;
    for i in -bound..=bound {
        let shifted = ad_h.sub(&Mat::identity(f.clone(), n).scale(&f.from_i64(i)));
        let k = kernel(&GradedMap::new(
            shifted,
            alg.space.clone(),
            alg.space.clone(),
            Parity::Even,
        ));
        if k.dim() > 0 {
            total += k.dim();
            pieces.insert(i as i32, k);
        }
    }
    if total != n {
        return Err(Error::NonIntegerEigenvalue);
    }
    let g = DynkinGrading {
        pieces,
        triple: triple.clone(),
    };
    if !triple.is_zero(f)
        && (g.degree_of(&triple.e) != Some(2) || g.degree_of(&triple.f) != Some(-2))
    {
        return Err(Error::NoTriple(
            "e and f are not in degrees 2 and -2".into(),
        ));
    }
    Ok(g)
}

/// Dimension data of a nilpotent. `t` and `t_up` are `floor(r/2)` and `ceil(r/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DInvariants {
    pub d0: usize,
    pub d1: usize,
    pub r: usize,
    pub s: usize,
    pub l: usize,
    pub q: usize,
    pub q_prime: usize,
    pub t: usize,
    pub t_up: usize,
}

impl DInvariants {
    /// `(even, odd)` dimensions of `m`.
    pub fn m_dims(&self) -> (usize, usize) {
        (self.d0 / 2, self.d1 / 2)
    }

    /// `(even, odd)` dimensions of `m'`.
    pub fn m_prime_dims(&self) -> (usize, usize) {
        (self.d0 / 2, self.d1.div_ceil(2))
    }
}

pub fn invariants<F: Field>(
    alg: &SuperAlgebraData<F>,
    grading: &DynkinGrading<F>,
) -> Result<DInvariants> {
    let (g0, g1) = alg.space.sdim();
    let (l, q) = alg.centralizer(&grading.triple.e).graded_dims();
    let (w0, r) = grading.dims(-1);
    if w0 % 2 != 0 {
        return Err(Error::DegeneratePairing(format!(
            "dim g(-1)_0 = {w0} is odd"
        )));
    }
    let (d0, d1) = (g0 - l, g1 - q);
    if d0 % 2 != 0 {
        return Err(Error::ParityViolation(format!("d0 = {d0} is odd")));
    }
    if d1 % 2 != r % 2 {
        return Err(Error::ParityViolation(format!(
            "d1 = {d1} and r = {r} differ in parity"
        )));
    }
    Ok(DInvariants {
        d0,
        d1,
        r,
        s: w0 / 2,
        l,
        q,
        q_prime: q + r % 2,
        t: r / 2,
        t_up: r.div_ceil(2),
    })
}

/// Darboux data on `g(-1)` and the subalgebras built from it.
///
/// Gram conditions, with `<x,y> = (e,[x,y])` in the rescaled form:
/// `<u_i, u_{2s+1-i}> = -1` for `i <= s`; `<v_i, v_{r+1-i}> = 1` off the middle;
/// `<v_mid, v_mid> = middle_norm` when `r` is odd; all other pairings vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentFrame<F: Field> {
    pub grading: DynkinGrading<F>,
    pub invariants: DInvariants,
    /// `chi = (e, .)` in the rescaled form, zero on the odd part.
    pub chi: PCharacter<F>,
    pub u_basis: Vec<Vec<F::Elem>>,
    pub v_basis: Vec<Vec<F::Elem>>,
    pub middle_norm: Option<F::Elem>,
    /// `x_1..x_l` span `g^e_0`; the rest span `[f, g] ∩ p`, even part.
    pub x_basis: Vec<Vec<F::Elem>>,
    pub x_degrees: Vec<i32>,
    pub y_basis: Vec<Vec<F::Elem>>,
    pub y_degrees: Vec<i32>,
    /// Homogeneous basis of `m`: the pieces of degree `<= -2`, then the second halves of the u and v bases.
    pub m_basis: Vec<Vec<F::Elem>>,
    pub m: Subspace<F>,
    pub m_prime: Subspace<F>,
    pub p_tilde: Subspace<F>,
    pub a: Subspace<F>,
}

impl<F: Field> NilpotentFrame<F> {
    pub fn triple(&self) -> &SL2Triple<F> {
        &self.grading.triple
    }

    /// `v_{(r+1)/2}` when `r` is odd.
    pub fn middle(&self) -> Option<&Vec<F::Elem>> {
        let r = self.invariants.r;
        (r % 2 == 1).then(|| &self.v_basis[r / 2])
    }

    pub fn pairing(&self, alg: &SuperAlgebraData<F>, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        self.triple()
            .form(alg, &self.triple().e, &alg.bracket(x, y))
    }

    /// Exact check of every Gram condition.
    pub fn gram_holds(&self, alg: &SuperAlgebraData<F>) -> bool {
        let f = &alg.field;
        let s = self.invariants.s;
        let r = self.invariants.r;
        let ok_u = (0..2 * s).all(|i| {
            (0..2 * s).all(|j| {
                let want = if i + j + 1 == 2 * s {
                    f.from_i64(if i < s { -1 } else { 1 })
                } else {
                    f.zero()
                };
                self.pairing(alg, &self.u_basis[i], &self.u_basis[j]) == want
            })
        });
        let ok_v = (0..r).all(|i| {
            (0..r).all(|j| {
                let want = if i + j + 1 != r {
                    f.zero()
                } else if 2 * i + 1 == r {
                    self.middle_norm.clone().expect("r odd")
                } else {
                    f.one()
                };
                self.pairing(alg, &self.v_basis[i], &self.v_basis[j]) == want
            })
        });
        ok_u && ok_v
    }

    /// `chi([m, m]) = 0` on all basis pairs.
    pub fn chi_vanishes_on_m(&self, alg: &SuperAlgebraData<F>) -> bool {
        let f = &alg.field;
        self.m_basis.iter().all(|x| {
            self.m_basis
                .iter()
                .all(|y| f.is_zero(&self.chi.eval(f, &alg.bracket(x, y))))
        })
    }
}

fn pairing<F: Field>(
    alg: &SuperAlgebraData<F>,
    t: &SL2Triple<F>,
    x: &[F::Elem],
    y: &[F::Elem],
) -> F::Elem {
    t.form(alg, &t.e, &alg.bracket(x, y))
}

/// Removes the `<a,.>`/`<b,.>` components of `x`, for a pair with `<a,a> = <b,b> = 0` and `<a,b> != 0`.
fn project_out<F: Field>(
    alg: &SuperAlgebraData<F>,
    t: &SL2Triple<F>,
    x: &[F::Elem],
    a: &[F::Elem],
    b: &[F::Elem],
) -> Vec<F::Elem> {
    let f = &alg.field;
    let ab = pairing(alg, t, a, b);
    let ba = pairing(alg, t, b, a);
    let ca = f
        .div(&pairing(alg, t, x, b), &ab)
        .expect("nondegenerate pair");
    let cb = f
        .div(&pairing(alg, t, x, a), &ba)
        .expect("nondegenerate pair");
    let mut out = x.to_vec();
    linalg::axpy(f, &mut out, &f.neg(&ca), a);
    linalg::axpy(f, &mut out, &f.neg(&cb), b);
    out
}

fn symplectic_basis<F: Field>(
    alg: &SuperAlgebraData<F>,
    t: &SL2Triple<F>,
    mut rest: Vec<Vec<F::Elem>>,
) -> Result<Vec<Vec<F::Elem>>> {
    let f = &alg.field;
    let (mut firsts, mut seconds) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let a = rest.remove(0);
        let j = (0..rest.len())
            .find(|&j| !f.is_zero(&pairing(alg, t, &a, &rest[j])))
            .ok_or_else(|| Error::DegeneratePairing("even part of g(-1)".into()))?;
        let b = rest.remove(j);
        let c = pairing(alg, t, &a, &b);
        let b = linalg::scale_vec(f, &f.neg(&f.inv(&c).expect("nonzero")), &b);
        rest = rest
            .iter()
            .map(|x| project_out(alg, t, x, &a, &b))
            .collect();
        firsts.push(a);
        seconds.push(b);
    }
    seconds.reverse();
    firsts.extend(seconds);
    Ok(firsts)
}

/// An isotropic vector in the span of `rest`, replacing one of its members; `None` when
/// none is found from pairs of (orthogonalized) basis vectors.
fn isotropic_in<F: Field>(
    alg: &SuperAlgebraData<F>,
    t: &SL2Triple<F>,
    rest: &mut [Vec<F::Elem>],
) -> Option<usize> {
    let f = &alg.field;
    let b = |x: &[F::Elem], y: &[F::Elem]| pairing(alg, t, x, y);
    if let Some(i) = (0..rest.len()).find(|&i| f.is_zero(&b(&rest[i], &rest[i]))) {
        return Some(i);
    }
    for _pass in 0..2 {
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let (bii, bij, bjj) = (
                    b(&rest[i], &rest[i]),
                    b(&rest[i], &rest[j]),
                    b(&rest[j], &rest[j]),
                );
                // (x_i + s x_j) is isotropic iff bjj s^2 + 2 bij s + bii = 0.
                let disc = f.sub(&f.mul(&bij, &bij), &f.mul(&bii, &bjj));
                if let Some(root) = f.sqrt(&disc) {
                    let s = f
                        .div(&f.sub(&root, &bij), &bjj)
                        .expect("anisotropic basis vector");
                    let mut v = rest[i].clone();
                    linalg::axpy(f, &mut v, &s, &rest[j]);
                    rest[i] = v;
                    return Some(i);
                }
            }
        }
        // Orthogonalize and retry; an isotropic vector met on the way is returned directly.
        for i in 0..rest.len() {
            let bii = b(&rest[i], &rest[i]);
            if f.is_zero(&bii) {
                return Some(i);
            }
            for j in i + 1..rest.len() {
                let c = f.div(&b(&rest[j], &rest[i]), &bii).expect("nonzero");
                let mut v = rest[j].clone();
                linalg::axpy(f, &mut v, &f.neg(&c), &rest[i]);
                rest[j] = v;
            }
        }
    }
    None
}

/// Hyperbolic pairs plus at most one middle vector for the symmetric pairing on `g(-1)_1`.
fn orthogonal_basis<F: Field>(
    alg: &SuperAlgebraData<F>,
    t: &SL2Triple<F>,
    mut rest: Vec<Vec<F::Elem>>,
) -> Result<(Vec<Vec<F::Elem>>, Option<F::Elem>)> {
    let f = &alg.field;
    let (mut firsts, mut seconds) = (Vec::new(), Vec::new());
    while rest.len() >= 2 {
        let i = isotropic_in(alg, t, &mut rest).ok_or_else(|| {
            Error::Unsupported(
                "the pairing on g(-1)_1 has no isotropic vector over this field".into(),
            )
        })?;
        let a = rest.remove(i);
        let j = (0..rest.len())
            .find(|&j| !f.is_zero(&pairing(alg, t, &a, &rest[j])))
            .ok_or_else(|| Error::DegeneratePairing("odd part of g(-1)".into()))?;
        let b = rest.remove(j);
        let b = linalg::scale_vec(f, &f.inv(&pairing(alg, t, &a, &b)).expect("nonzero"), &b);
        let mut b2 = b.clone();
        linalg::axpy(
            f,
            &mut b2,
            &f.neg(&f.mul(&f.half(), &pairing(alg, t, &b, &b))),
            &a,
        );
        rest = rest
            .iter()
            .map(|x| project_out(alg, t, x, &a, &b2))
            .collect();
        firsts.push(a);
        seconds.push(b2);
    }
    let mut middle_norm = None;
    if let Some(mut w) = rest.pop() {
        let c = pairing(alg, t, &w, &w);
        if f.is_zero(&c) {
            return Err(Error::DegeneratePairing(
                "middle vector is isotropic".into(),
            ));
        }
        middle_norm = Some(match f.sqrt(&c) {
            Some(root) => {
                w = linalg::scale_vec(f, &f.inv(&root).expect("nonzero"), &w);
                f.one()
            }
            None => c,
        });
        firsts.push(w);
    }
    seconds.reverse();
    firsts.extend(seconds);
    Ok((firsts, middle_norm))
}

/// Splits `g(k)`, `k >= 0`, of one parity into `g^e(k)` and `[f, g] ∩ g(k)`.
fn adapted_basis<F: Field>(
    alg: &SuperAlgebraData<F>,
    grading: &DynkinGrading<F>,
    which: Parity,
) -> Result<(Vec<Vec<F::Elem>>, Vec<i32>, usize)> {
    let t = &grading.triple;
    let ge = alg.centralizer(&t.e);
    let im_f = GradedMap::new(
        alg.ad(&t.f),
        alg.space.clone(),
        alg.space.clone(),
        Parity::Even,
    )
    .image();
    let (mut cent, mut comp) = (Vec::new(), Vec::new());
    for (&k, piece) in grading.pieces.range(0..) {
        let part = piece.parity_part(which);
        let c = part.intersect(&ge)?;
        let d = part.intersect(&im_f)?;
        if c.dim() + d.dim() != part.dim() {
            return Err(Error::DimensionMismatch {
                expected: part.dim() as u64,
                found: (c.dim() + d.dim()) as u64,
                context: format!("g({k}) = g^e(k) + [f, g](k)"),
            });
        }
        cent.extend(c.basis.into_iter().map(|v| (v, k)));
        comp.extend(d.basis.into_iter().map(|v| (v, k)));
    }
    let l = cent.len();
    let (basis, degrees) = cent.into_iter().chain(comp).unzip();
    Ok((basis, degrees, l))
}

/// Builds the Darboux frame and the subalgebras `m`, `m'`, `p~`, `a`.
pub fn darboux_frame<F: Field>(
    alg: &SuperAlgebraData<F>,
    grading: &DynkinGrading<F>,
) -> Result<NilpotentFrame<F>> {
    let f = &alg.field;
    let t = &grading.triple;
    let inv = invariants(alg, grading)?;
    let u_basis = symplectic_basis(alg, t, grading.basis_of(-1, Parity::Even))?;
    let (v_basis, middle_norm) = orthogonal_basis(alg, t, grading.basis_of(-1, Parity::Odd))?;
    let (x_basis, x_degrees, l) = adapted_basis(alg, grading, Parity::Even)?;
    let (y_basis, y_degrees, q) = adapted_basis(alg, grading, Parity::Odd)?;
    debug_assert_eq!((l, q), (inv.l, inv.q));

    let mut m_basis = Vec::new();
    for (_, piece) in grading.pieces.range(..-1) {
        m_basis.extend(piece.homogeneous_basis());
    }
    m_basis.extend(u_basis[inv.s..].iter().cloned());
    m_basis.extend(v_basis[inv.t_up..].iter().cloned());
    let space = || alg.space.clone();
    let m = Subspace::from_spanning(f.clone(), space(), m_basis.iter().cloned());
    let middle: Vec<Vec<F::Elem>> = (inv.r % 2 == 1)
        .then(|| v_basis[inv.r / 2].clone())
        .into_iter()
        .collect();
    let m_prime =
        Subspace::from_spanning(f.clone(), space(), m_basis.iter().chain(&middle).cloned());
    let a_vecs: Vec<Vec<F::Elem>> = x_basis[l..]
        .iter()
        .chain(&y_basis[q..])
        .chain(&u_basis[..inv.s])
        .chain(&v_basis[..inv.t])
        .cloned()
        .collect();
    let a = Subspace::from_spanning(f.clone(), space(), a_vecs.iter().cloned());
    let p_tilde = Subspace::from_spanning(
        f.clone(),
        space(),
        a_vecs
            .iter()
            .chain(&x_basis[..l])
            .chain(&y_basis[..q])
            .chain(&middle)
            .cloned(),
    );

    let mut values = alg.zero_vec();
    for j in alg.even_indices() {
        values[j] = t.form(alg, &t.e, &alg.unit(j));
    }
    let chi = PCharacter {
        values,
        dual_element: Some(t.e.clone()),
    };
    let frame = NilpotentFrame {
        grading: grading.clone(),
        invariants: inv,
        chi,
        u_basis,
        v_basis,
        middle_norm,
        x_basis,
        x_degrees,
        y_basis,
        y_degrees,
        m_basis,
        m,
        m_prime,
        p_tilde,
        a,
    };
    if frame.m.graded_dims() != inv.m_dims() || frame.m_prime.graded_dims() != inv.m_prime_dims() {
        return Err(Error::DimensionMismatch {
            expected: (inv.d0 + inv.d1) as u64 / 2,
            found: frame.m.dim() as u64,
            context: "dim m".into(),
        });
    }
    if frame.m.dim() + frame.p_tilde.dim() != alg.dim()
        || frame.m.sum(&frame.p_tilde)?.dim() != alg.dim()
    {
        return Err(Error::DimensionMismatch {
            expected: alg.dim() as u64,
            found: (frame.m.dim() + frame.p_tilde.dim()) as u64,
            context: "g = m + p~".into(),
        });
    }
    if !frame.chi_vanishes_on_m(alg) {
        return Err(Error::DegeneratePairing(
            "chi does not vanish on [m, m]".into(),
        ));
    }
    Ok(frame)
}

/// sl2-completion, grading and frame of `e` in one call.
pub fn nilpotent_frame<F: Field>(
    alg: &SuperAlgebraData<F>,
    e: &[F::Elem],
) -> Result<NilpotentFrame<F>> {
    let triple = super::complete_sl2(alg, e)?;
    let grading = grade(alg, &triple)?;
    darboux_frame(alg, &grading)
}

impl NilpotentFrame<Rationals> {
    /// Reduction modulo `p`; the middle vector is renormalized when its norm becomes a square.
    /// Fails with `NotAdmissibleAtP` when a denominator is divisible by `p`.
    pub fn reduce_mod_p(
        &self,
        alg: &SuperAlgebraData<PrimeField>,
    ) -> Result<NilpotentFrame<PrimeField>> {
        let fp = alg.field;
        let vecs = |vs: &[Vec<<Rationals as Field>::Elem>]| {
            vs.iter()
                .map(|v| reduce_vec(&fp, v))
                .collect::<Result<Vec<_>>>()
        };
        let sub = |s: &Subspace<Rationals>| reduce_subspace(&fp, alg, s);
        let pieces = self
            .grading
            .pieces
            .iter()
            .map(|(k, s)| Ok((*k, sub(s)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let grading = DynkinGrading {
            pieces,
            triple: self.grading.triple.reduce_mod_p(&fp)?,
        };
        let mut v_basis = vecs(&self.v_basis)?;
        let mut middle_norm = self
            .middle_norm
            .as_ref()
            .map(|c| fp.from_rational(c))
            .transpose()?;
        if let Some(c) = &middle_norm {
            if fp.is_zero(c) {
                return Err(Error::BadPrime {
                    p: fp.p(),
                    reason: "middle vector becomes isotropic".into(),
                });
            }
            if let Some(root) = fp.sqrt(c) {
                let mid = self.invariants.r / 2;
                v_basis[mid] =
                    linalg::scale_vec(&fp, &fp.inv(&root).expect("nonzero"), &v_basis[mid]);
                middle_norm = Some(fp.one());
            }
        }
        let frame = NilpotentFrame {
            grading,
            invariants: self.invariants,
            chi: PCharacter {
                values: reduce_vec(&fp, &self.chi.values)?,
                dual_element: self
                    .chi
                    .dual_element
                    .as_ref()
                    .map(|v| reduce_vec(&fp, v))
                    .transpose()?,
            },
            u_basis: vecs(&self.u_basis)?,
            v_basis,
            middle_norm,
            x_basis: vecs(&self.x_basis)?,
            x_degrees: self.x_degrees.clone(),
            y_basis: vecs(&self.y_basis)?,
            y_degrees: self.y_degrees.clone(),
            m_basis: vecs(&self.m_basis)?,
            m: sub(&self.m)?,
            m_prime: sub(&self.m_prime)?,
            p_tilde: sub(&self.p_tilde)?,
            a: sub(&self.a)?,
        };
        // The letters must stay a basis: `g^e ⊕ [f, g]` can collapse when `p` is small
        // against the sl2-strings (the identity of gl(3) lies in `[f, g]` mod 3).
        let inv = &frame.invariants;
        let letters = frame
            .x_basis
            .iter()
            .chain(&frame.y_basis)
            .chain(&frame.u_basis[..inv.s])
            .chain(&frame.v_basis[..inv.t_up])
            .chain(&frame.m_basis);
        if Subspace::from_spanning(fp, alg.space.clone(), letters.cloned()).dim() != alg.dim() {
            return Err(Error::BadPrime {
                p: fp.p(),
                reason: "the adapted basis degenerates".into(),
            });
        }
        if !frame.gram_holds(alg) || !frame.chi_vanishes_on_m(alg) {
            return Err(Error::BadPrime {
                p: fp.p(),
                reason: "frame conditions fail after reduction".into(),
            });
        }
        Ok(frame)
    }
}

/// `p^{d0/2} 2^{ceil(d1/2)}`.
pub fn kw_bound(d: &DInvariants, p: u64) -> u128 {
    (p as u128).pow((d.d0 / 2) as u32) * 2u128.pow(d.d1.div_ceil(2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{nilpotent_element, JordanType};
    use crate::lie::{build_catalog, build_q};

    fn frame_of(k: &str, jt: &str) -> (SuperAlgebraData<Rationals>, NilpotentFrame<Rationals>) {
        let g = build_q(&k.parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        (g, fr)
    }

    #[test]
    fn five_dimensional_string_is_bad_at_three() {
        let (g, fr) = frame_of("gl(3|1)", "jordan:3|1");
        assert!(matches!(
            fr.reduce_mod_p(&g.reduce_mod_p(3).unwrap()),
            Err(Error::BadPrime { p: 3, .. })
        ));
        assert!(fr.reduce_mod_p(&g.reduce_mod_p(5).unwrap()).is_ok());
    }

    #[test]
    fn osp12_regular() {
        let (g, fr) = frame_of("osp(1|2)", "jordan:1|2");
        let dims: Vec<(i32, (usize, usize))> = fr
            .grading
            .pieces
            .keys()
            .map(|&i| (i, fr.grading.dims(i)))
            .collect();
        assert_eq!(
            dims,
            vec![
                (-2, (1, 0)),
                (-1, (0, 1)),
                (0, (1, 0)),
                (1, (0, 1)),
                (2, (1, 0))
            ]
        );
        let d = fr.invariants;
        assert_eq!(
            (d.d0, d.d1, d.r, d.s, d.l, d.q, d.q_prime),
            (2, 1, 1, 0, 1, 1, 2)
        );
        assert_eq!(fr.m.graded_dims(), (1, 0));
        assert_eq!(fr.m_prime.graded_dims(), (1, 1));
        assert!(fr.gram_holds(&g));
        assert_eq!(kw_bound(&d, 3), 6);
    }

    #[test]
    fn gl21_e12() {
        let (g, fr) = frame_of("gl(2|1)", "jordan:2|1");
        let d = fr.invariants;
        assert_eq!((d.d0, d.d1, d.r, d.l, d.q), (2, 2, 2, 3, 2));
        assert_eq!(fr.m.graded_dims(), (1, 1));
        assert_eq!(fr.v_basis.len(), 2);
        assert!(fr.middle_norm.is_none());
        assert!(fr.gram_holds(&g));
        assert_eq!(kw_bound(&d, 5), 10);
        let sum: usize = fr.grading.pieces.values().map(Subspace::dim).sum();
        assert_eq!(sum, 9);
    }

    #[test]
    fn zero_nilpotent() {
        let g = build_q(&"gl(1|1)".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &g.zero_vec()).unwrap();
        assert_eq!(
            fr.grading.pieces.keys().copied().collect::<Vec<_>>(),
            vec![0]
        );
        let d = fr.invariants;
        assert_eq!((d.d0, d.d1, d.l, d.q, d.q_prime), (0, 0, 2, 2, 2));
        assert_eq!(fr.m.dim(), 0);
        assert_eq!(kw_bound(&d, 7), 1);
    }

    #[test]
    fn every_gl_jordan_type_up_to_rank_four() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)] {
            let kind = crate::lie::AlgebraKind::Gl { m, n };
            let g = build_q(&kind).unwrap();
            for jt in JordanType::enumerate(&kind).unwrap() {
                let e = nilpotent_element(&g, &jt).unwrap();
                let fr = nilpotent_frame(&g, &e).unwrap();
                let d = fr.invariants;
                assert_eq!(d.d1 % 2, d.r % 2, "{kind} {jt}");
                assert_eq!(fr.m.graded_dims(), d.m_dims(), "{kind} {jt}");
                assert!(fr.gram_holds(&g), "{kind} {jt}");
                for (&i, a) in &fr.grading.pieces {
                    for (&j, b) in &fr.grading.pieces {
                        for x in &a.basis {
                            for y in &b.basis {
                                let z = g.bracket(x, y);
                                let ok = linalg::is_zero_vec(&Rationals, &z)
                                    || fr.grading.piece(i + j).is_some_and(|s| s.contains(&z));
                                assert!(ok, "[g({i}), g({j})] in {kind} {jt}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_keeps_gram_conditions() {
        let (_, fr) = frame_of("osp(1|2)", "jordan:1|2");
        for p in [3, 5, 7] {
            let gp = build_catalog(&"osp(1|2)".parse().unwrap(), p).unwrap();
            let fp = fr.reduce_mod_p(&gp).unwrap();
            assert!(fp.gram_holds(&gp));
            let c = fp.middle_norm.unwrap();
            assert!(gp.field.is_one(&c) || !gp.field.is_square(c));
        }
    }
}
