use super::Echelon;
use crate::arith::Field;
use crate::error::{Error, Result};

/// Coordinates against a fixed, linearly independent list of vectors.
///
/// Stores the reduced echelon form of `[B | I]`; the pivot entries of a vector in
/// the span of `B` then select the rows whose right halves sum to its coordinates.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Coordinates<F> {
    pub fn new(field: F, ambient: usize, basis: &[Vec<F::Elem>]) -> Result<Self> {
        let k = basis.len();
        let mut e = Echelon::new(field.clone(), ambient + k);
        for (i, b) in basis.iter().enumerate() {
            let mut row = b.clone();
            row.extend((0..k).map(|j| if i == j { field.one() } else { field.zero() }));
            e.insert(row);
        }
        let (rows, pivots) = e.rref();
        if pivots.iter().any(|&p| p >= ambient) {
            return Err(Error::DimensionMismatch {
                expected: k as u64,
                found: pivots.iter().filter(|&&p| p < ambient).count() as u64,
                context: "basis vectors are linearly dependent".into(),
            });
        }
        Ok(Coordinates {
            field,
            ambient,
            rows,
            pivots,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let k = self.rows.len();
        let mut rebuilt = super::zeros(f, self.ambient);
        let mut out = super::zeros(f, k);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = &v[pc];
            if f.is_zero(c) {
                continue;
            }
            super::axpy(f, &mut rebuilt, c, &row[..self.ambient]);
            super::axpy(f, &mut out, c, &row[self.ambient..]);
        }
        (rebuilt.as_slice() == v).then_some(out)
    }

    /// Like [`coords`](Self::coords) for a sparse vector.
    pub fn coords_sparse(&self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        let mut dense = super::zeros(&self.field, self.ambient);
        for (i, x) in v {
            dense[*i] = x.clone();
        }
        self.coords(&dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;

    #[test]
    fn recovers_coefficients() {
        let f = Rationals;
        let q = |n| f.from_i64(n);
        let basis = vec![vec![q(1), q(1), q(0)], vec![q(0), q(2), q(1)]];
        let c = Coordinates::new(f, 3, &basis).unwrap();
        // 3*b0 - 2*b1 = (3, -1, -2)
        assert_eq!(c.coords(&[q(3), q(-1), q(-2)]), Some(vec![q(3), q(-2)]));
        assert_eq!(c.coords(&[q(1), q(0), q(0)]), None);
        assert!(Coordinates::new(f, 3, &[basis[0].clone(), basis[0].clone()]).is_err());
    }
}
