//! Exact linear algebra over any [`Field`]: dense and sparse matrices, an incremental
//! echelon builder, canonical subspaces, and parity bookkeeping for superspaces.
//!
//! Pivoting always takes the lowest available column, so every basis produced here
//! is reproducible. Subspaces are stored in reduced row-echelon form; equal subspaces
//! compare equal syntactically.

mod coords;
mod echelon;
mod graded;
mod mat;
mod sparse;
mod subspace;

pub use coords::Coordinates;
pub use echelon::Echelon;
pub use graded::{GradedSpace, Parity};
pub use mat::Mat;
pub use sparse::SparseMat;
pub use subspace::{kernel, solve_right, GradedMap, Solution, Subspace};

use crate::arith::Field;

pub fn zeros<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    vec![f.zero(); n]
}

pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = zeros(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// `y += a * x`.
pub fn axpy<F: Field>(f: &F, y: &mut [F::Elem], a: &F::Elem, x: &[F::Elem]) {
    if f.is_zero(a) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !f.is_zero(xi) {
            f.add_mul_assign(yi, a, xi);
        }
    }
}

pub fn add_vec<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().zip(y).map(|(a, b)| f.add(a, b)).collect()
}

pub fn sub_vec<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().zip(y).map(|(a, b)| f.sub(a, b)).collect()
}

pub fn scale_vec<F: Field>(f: &F, a: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().map(|b| f.mul(a, b)).collect()
}

pub fn dot<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (a, b) in x.iter().zip(y) {
        if !f.is_zero(a) && !f.is_zero(b) {
            f.add_mul_assign(&mut acc, a, b);
        }
    }
    acc
}

/// Linear combination `sum c_i v_i` of equal-length vectors.
pub fn combine<F: Field>(f: &F, n: usize, terms: &[(F::Elem, &[F::Elem])]) -> Vec<F::Elem> {
    let mut acc = zeros(f, n);
    for (c, v) in terms {
        axpy(f, &mut acc, c, v);
    }
    acc
}

/// Parity of a vector whose support is homogeneous; `None` for zero or mixed vectors.
pub fn vec_parity<F: Field>(f: &F, v: &[F::Elem], parity: &[Parity]) -> Option<Parity> {
    let mut seen: Option<Parity> = None;
    for (x, p) in v.iter().zip(parity) {
        if !f.is_zero(x) {
            match seen {
                None => seen = Some(*p),
                Some(q) if q != *p => return None,
                _ => {}
            }
        }
    }
    seen
}

/// Projection onto the coordinates of the given parity.
pub fn parity_part<F: Field>(
    f: &F,
    v: &[F::Elem],
    parity: &[Parity],
    which: Parity,
) -> Vec<F::Elem> {
    v.iter()
        .zip(parity)
        .map(|(x, p)| if *p == which { x.clone() } else { f.zero() })
        .collect()
}
