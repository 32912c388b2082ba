use super::{Echelon, GradedSpace, Mat, Parity};
use crate::arith::Field;
use crate::error::{Error, Result};

/// Subspace of a graded ambient space, stored as its reduced row-echelon basis.
///
/// Pivot columns are strictly increasing and each pivot column is a unit vector
/// within the basis, so equal subspaces have identical `basis` fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    pub field: F,
    pub ambient: GradedSpace,
    pub basis: Vec<Vec<F::Elem>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: GradedSpace) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: F, ambient: GradedSpace) -> Self {
        let n = ambient.dim();
        let basis = (0..n).map(|i| super::unit(&field, n, i)).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..n).collect(),
        }
    }

    pub fn from_spanning(
        field: F,
        ambient: GradedSpace,
        vectors: impl IntoIterator<Item = Vec<F::Elem>>,
    ) -> Self {
        let mut e = Echelon::new(field.clone(), ambient.dim());
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        Self::from_echelon(ambient, &e)
    }

    pub fn from_echelon(ambient: GradedSpace, e: &Echelon<F>) -> Self {
        let (basis, pivots) = e.rref();
        Subspace {
            field: e.field().clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.field.clone(), self.ambient_dim());
        for v in &self.basis {
            e.insert(v.clone());
        }
        e
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` against `basis`, or `None` when `v` lies outside.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        // In RREF the coordinates are the pivot entries of v.
        let c: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rem = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            super::axpy(f, &mut rem, &f.neg(ci), b);
        }
        super::is_zero_vec(f, &rem).then_some(c)
    }

    fn check_ambient(&self, o: &Self) -> Result<()> {
        if self.ambient_dim() != o.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), o.ambient_dim()));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.check_ambient(o)?;
        let vecs = self.basis.iter().chain(&o.basis).cloned();
        Ok(Self::from_spanning(
            self.field.clone(),
            self.ambient.clone(),
            vecs,
        ))
    }

    /// `a ∩ b` via the kernel of `(x, y) ↦ x·A − y·B` on coordinate pairs.
    pub fn intersect(&self, o: &Self) -> Result<Self> {
        self.check_ambient(o)?;
        let f = &self.field;
        let (da, db) = (self.dim(), o.dim());
        if da == 0 || db == 0 {
            return Ok(Self::zero(f.clone(), self.ambient.clone()));
        }
        // Rows of the system are ambient coordinates; unknowns are the da + db coefficients.
        let n = self.ambient_dim();
        let mut e = Echelon::new(f.clone(), da + db);
        for c in 0..n {
            let mut row: Vec<F::Elem> = self.basis.iter().map(|b| b[c].clone()).collect();
            row.extend(o.basis.iter().map(|b| f.neg(&b[c])));
            e.insert(row);
        }
        let vecs = e.null_basis().into_iter().map(|k| {
            let mut v = super::zeros(f, n);
            for (ci, b) in k[..da].iter().zip(&self.basis) {
                super::axpy(f, &mut v, ci, b);
            }
            v
        });
        Ok(Self::from_spanning(f.clone(), self.ambient.clone(), vecs))
    }

    /// Part of the subspace lying in the span of basis vectors of parity `which`.
    pub fn parity_part(&self, which: Parity) -> Self {
        let f = &self.field;
        let vecs = self
            .basis
            .iter()
            .map(|v| super::parity_part(f, v, &self.ambient.parity, which));
        let proj = Self::from_spanning(f.clone(), self.ambient.clone(), vecs);
        proj.intersect(self).expect("same ambient")
    }

    /// True when the subspace is spanned by its even and odd parts.
    pub fn is_graded(&self) -> bool {
        let (e, o) = self.graded_dims();
        e + o == self.dim()
    }

    /// `(dim of even part, dim of odd part)`.
    pub fn graded_dims(&self) -> (usize, usize) {
        (
            self.parity_part(Parity::Even).dim(),
            self.parity_part(Parity::Odd).dim(),
        )
    }

    /// Homogeneous basis (even vectors first) of a graded subspace.
    pub fn homogeneous_basis(&self) -> Vec<Vec<F::Elem>> {
        let mut out = self.parity_part(Parity::Even).basis;
        out.extend(self.parity_part(Parity::Odd).basis);
        out
    }

    /// Basis of a complement, built from ambient unit vectors on non-pivot columns.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.basis.iter().all(|v| o.contains(v))
    }

    /// Extends this basis to the whole of `o` (assumed to contain `self`), returning the new vectors.
    pub fn extend_within(&self, o: &Self) -> Vec<Vec<F::Elem>> {
        let mut e = self.echelon();
        o.basis
            .iter()
            .filter(|v| e.insert((*v).clone()).is_some())
            .cloned()
            .collect()
    }
}

/// Linear map between superspaces, acting on column vectors.
#[derive(Clone, Debug)]
pub struct GradedMap<F: Field> {
    pub matrix: Mat<F>,
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub parity: Parity,
}

impl<F: Field> GradedMap<F> {
    pub fn new(matrix: Mat<F>, source: GradedSpace, target: GradedSpace, parity: Parity) -> Self {
        assert_eq!(matrix.cols, source.dim());
        assert_eq!(matrix.rows, target.dim());
        GradedMap {
            matrix,
            source,
            target,
            parity,
        }
    }

    /// Map on an anonymous purely even space; used for plain linear systems.
    pub fn plain(matrix: Mat<F>) -> Self {
        let source = GradedSpace::anonymous(vec![Parity::Even; matrix.cols]);
        let target = GradedSpace::anonymous(vec![Parity::Even; matrix.rows]);
        GradedMap {
            matrix,
            source,
            target,
            parity: Parity::Even,
        }
    }

    /// Checks that every nonzero entry connects basis vectors whose parities differ by `parity`.
    pub fn respects_parity(&self) -> bool {
        let f = &self.matrix.field;
        (0..self.matrix.rows).all(|i| {
            (0..self.matrix.cols).all(|j| {
                f.is_zero(self.matrix.get(i, j))
                    || self.source.parity[j].plus(self.parity) == self.target.parity[i]
            })
        })
    }

    pub fn image(&self) -> Subspace<F> {
        let t = self.matrix.transpose();
        Subspace::from_spanning(self.matrix.field.clone(), self.target.clone(), t.row_vecs())
    }
}

pub fn kernel<F: Field>(map: &GradedMap<F>) -> Subspace<F> {
    let e = map.matrix.echelon();
    Subspace::from_spanning(map.matrix.field.clone(), map.source.clone(), e.null_basis())
}

/// Affine solution set `particular + span(kernel)`.
#[derive(Clone, Debug)]
pub struct Solution<F: Field> {
    pub particular: Vec<F::Elem>,
    pub kernel: Subspace<F>,
}

pub fn solve_right<F: Field>(map: &GradedMap<F>, b: &[F::Elem]) -> Result<Solution<F>> {
    let a = &map.matrix;
    let f = &a.field;
    assert_eq!(b.len(), a.rows, "right-hand side length");
    let mut e = Echelon::new(f.clone(), a.cols + 1);
    for i in 0..a.rows {
        let mut row = a.row(i).to_vec();
        row.push(b[i].clone());
        e.insert(row);
    }
    let (rows, pivots) = e.rref();
    if pivots.last() == Some(&a.cols) {
        return Err(Error::NoSolution);
    }
    let mut x = super::zeros(f, a.cols);
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[a.cols].clone();
    }
    Ok(Solution {
        particular: x,
        kernel: kernel(map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn even(n: usize) -> GradedSpace {
        GradedSpace::anonymous(vec![Parity::Even; n])
    }

    #[test]
    fn zero_and_identity_kernels() {
        let f = Rationals;
        let sp = GradedSpace::anonymous(vec![Parity::Even, Parity::Even, Parity::Odd]);
        let z = GradedMap::new(Mat::zeros(f, 3, 3), sp.clone(), sp.clone(), Parity::Even);
        let k = kernel(&z);
        assert_eq!(k.dim(), 3);
        assert_eq!(k.graded_dims(), (2, 1));
        let id = GradedMap::new(Mat::identity(f, 3), sp.clone(), sp, Parity::Even);
        assert_eq!(kernel(&id).dim(), 0);
    }

    #[test]
    fn ad_e12_kernel_on_gl2() {
        // Basis E11, E12, E21, E22 (row-major); ad(E12) computed by hand.
        // [E12,E11] = -E12, [E12,E12] = 0, [E12,E21] = E11 - E22, [E12,E22] = E12.
        let f = Rationals;
        let m = Mat::from_i64(
            f,
            &[&[0, 0, 1, 0], &[-1, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, -1, 0]],
        );
        let k = kernel(&GradedMap::plain(m));
        let q = |n| f.from_i64(n);
        let expected = Subspace::from_spanning(
            f,
            even(4),
            vec![vec![q(0), q(1), q(0), q(0)], vec![q(1), q(0), q(0), q(1)]],
        );
        assert_eq!(k, expected);
    }

    #[test]
    fn intersections() {
        let f = Rationals;
        let q = |n| f.from_i64(n);
        let v = Subspace::whole(f, even(3));
        assert_eq!(v.intersect(&v).unwrap(), v);
        let x = Subspace::from_spanning(f, even(3), vec![vec![q(1), q(0), q(0)]]);
        let y = Subspace::from_spanning(f, even(3), vec![vec![q(0), q(1), q(0)]]);
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        let a = Subspace::from_spanning(
            f,
            even(3),
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]],
        );
        let b = Subspace::from_spanning(
            f,
            even(3),
            vec![vec![q(1), q(1), q(1)], vec![q(0), q(1), q(2)]],
        );
        let c = a.intersect(&b).unwrap();
        // (1,1,1)*2 - (0,1,2) = (2,1,0) is the common line.
        assert_eq!(
            c,
            Subspace::from_spanning(f, even(3), vec![vec![q(2), q(1), q(0)]])
        );
        let w = Subspace::whole(f, even(2));
        assert_eq!(a.intersect(&w), Err(Error::AmbientMismatch(3, 2)));
    }

    #[test]
    fn solve_cases() {
        let f = Rationals;
        let q = |n| f.from_i64(n);
        let b = vec![q(3), q(-1)];
        let s = solve_right(&GradedMap::plain(Mat::identity(f, 2)), &b).unwrap();
        assert_eq!(s.particular, b);
        assert!(matches!(
            solve_right(&GradedMap::plain(Mat::zeros(f, 2, 2)), &b),
            Err(Error::NoSolution)
        ));
        // x + y = 3, x - y = 1, 2x + y = 5  =>  x = 2, y = 1.
        let a = Mat::from_i64(f, &[&[1, 1], &[1, -1], &[2, 1]]);
        let s = solve_right(&GradedMap::plain(a), &[q(3), q(1), q(5)]).unwrap();
        assert_eq!(s.particular, vec![q(2), q(1)]);
        assert_eq!(s.kernel.dim(), 0);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
        (1usize..6, 1usize..6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(0u64..5, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, data) in arb_matrix()) {
            let f = PrimeField::new(5).unwrap();
            let m = Mat { field: f, rows: r, cols: c, data };
            let map = GradedMap::plain(m);
            prop_assert_eq!(kernel(&map).dim() + map.image().dim(), c);
        }

        #[test]
        fn echelon_basis_is_canonical((r, c, data) in arb_matrix(), mix in prop::collection::vec(0u64..5, 36)) {
            let f = PrimeField::new(5).unwrap();
            let m = Mat { field: f, rows: r, cols: c, data };
            let rows = m.row_vecs();
            let a = Subspace::from_spanning(f, even(c), rows.clone());
            // Random recombinations of the same rows, plus the originals, span the same space.
            let mut others: Vec<Vec<u64>> = (0..r).map(|i| {
                let mut v = vec![0u64; c];
                for (j, row) in rows.iter().enumerate() {
                    crate::linalg::axpy(&f, &mut v, &mix[(i * 6 + j) % 36], row);
                }
                v
            }).collect();
            others.extend(rows.into_iter().rev());
            let b = Subspace::from_spanning(f, even(c), others);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn even_map_kernel_is_graded(data in prop::collection::vec(0u64..3, 16)) {
            let f = PrimeField::new(3).unwrap();
            let par = vec![Parity::Even, Parity::Odd, Parity::Even, Parity::Odd];
            let mut m = Mat { field: f, rows: 4, cols: 4, data };
            for i in 0..4 {
                for j in 0..4 {
                    if par[i] != par[j] {
                        m.set(i, j, 0);
                    }
                }
            }
            let sp = GradedSpace::anonymous(par);
            let map = GradedMap::new(m, sp.clone(), sp, Parity::Even);
            prop_assert!(map.respects_parity());
            let k = kernel(&map);
            prop_assert!(k.is_graded());
        }

        #[test]
        fn intersection_dimension_formula((r, c, data) in arb_matrix(), data2 in prop::collection::vec(0u64..5, 36)) {
            let f = PrimeField::new(5).unwrap();
            let a = Subspace::from_spanning(f, even(c), Mat { field: f, rows: r, cols: c, data }.row_vecs());
            let rows2: Vec<Vec<u64>> = (0..r).map(|i| (0..c).map(|j| data2[(i * 6 + j) % 36]).collect()).collect();
            let b = Subspace::from_spanning(f, even(c), rows2);
            let i = a.intersect(&b).unwrap();
            let s = a.sum(&b).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
            prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        }
    }
}
