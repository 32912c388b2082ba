use crate::arith::Field;

/// Stored rows switch to dense storage once more than this fraction of entries is nonzero.
const DENSE_FILL: f64 = 0.3;

#[derive(Clone, Debug)]
enum Row<E> {
    Sparse(Vec<(usize, E)>),
    Dense(Vec<E>),
}

/// Incremental semi-echelon form.
///
/// Each stored row has a distinct leading column (its pivot) holding 1. Incoming
/// vectors are reduced densely and stored sparse or dense depending on fill.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Row<F::Elem>>,
    row_pivot: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            row_pivot: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.row_pivot
    }

    /// Stored row `i` as a dense vector.
    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        match &self.rows[i] {
            Row::Dense(v) => v.clone(),
            Row::Sparse(s) => {
                let mut v = vec![self.field.zero(); self.ncols];
                for (c, x) in s {
                    v[*c] = x.clone();
                }
                v
            }
        }
    }

    fn sub_row(&self, v: &mut [F::Elem], r: usize, coef: &F::Elem) {
        let f = &self.field;
        let neg = f.neg(coef);
        match &self.rows[r] {
            Row::Dense(row) => {
                let start = self.row_pivot[r];
                for c in start..self.ncols {
                    if !f.is_zero(&row[c]) {
                        f.add_mul_assign(&mut v[c], &neg, &row[c]);
                    }
                }
            }
            Row::Sparse(row) => {
                for (c, x) in row {
                    f.add_mul_assign(&mut v[*c], &neg, x);
                }
            }
        }
    }

    /// Reduces `v` in place; returns the coefficients used on each stored row.
    pub fn reduce_with_coords(&self, v: &mut [F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut coords = vec![f.zero(); self.rows.len()];
        for c in 0..self.ncols {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = v[c].clone();
                self.sub_row(v, r, &coef);
                coords[r] = coef;
            }
        }
        coords
    }

    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for c in 0..self.ncols {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = v[c].clone();
                self.sub_row(v, r, &coef);
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`; returns the new pivot column when `v` was independent.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        self.push_reduced(v)
    }

    /// Stores an already reduced vector.
    fn push_reduced(&mut self, mut v: Vec<F::Elem>) -> Option<usize> {
        let f = self.field.clone();
        let lead = v.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&v[lead]).expect("nonzero leading entry");
        let mut nnz = 0usize;
        for x in v.iter_mut().skip(lead) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
                nnz += 1;
            }
        }
        let row = if (nnz as f64) > DENSE_FILL * self.ncols as f64 {
            Row::Dense(v)
        } else {
            Row::Sparse(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .collect(),
            )
        };
        self.pivot_row[lead] = Some(self.rows.len());
        self.row_pivot.push(lead);
        self.rows.push(row);
        Some(lead)
    }

    /// Reduced row-echelon basis sorted by pivot, together with the pivots.
    pub fn rref(&self) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
        let f = &self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.row_pivot[r]);
        let mut out: Vec<Vec<F::Elem>> = order.iter().map(|&r| self.row(r)).collect();
        let pivots: Vec<usize> = order.iter().map(|&r| self.row_pivot[r]).collect();
        // Clear above each pivot, working from the last pivot backwards.
        for k in (0..out.len()).rev() {
            let pc = pivots[k];
            let (above, rest) = out.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if !f.is_zero(&row[pc]) {
                    let coef = f.neg(&row[pc]);
                    for c in pc..self.ncols {
                        if !f.is_zero(&pivot_row[c]) {
                            f.add_mul_assign(&mut row[c], &coef, &pivot_row[c]);
                        }
                    }
                }
            }
        }
        (out, pivots)
    }

    /// Basis vectors of `{x : <row_i, x> = 0 for all rows}`, one per free column.
    pub fn null_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                if !f.is_zero(&row[free]) {
                    v[pc] = f.neg(&row[free]);
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn rank_and_rref_over_fp() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(f, 3);
        assert_eq!(e.insert(vec![1, 2, 3]), Some(0));
        assert_eq!(e.insert(vec![2, 4, 1]), None);
        assert_eq!(e.insert(vec![0, 1, 1]), Some(1));
        let (rows, piv) = e.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], vec![1, 0, 1]);
        assert_eq!(rows[1], vec![0, 1, 1]);
        let null = e.null_basis();
        assert_eq!(null, vec![vec![4, 4, 1]]);
    }

    #[test]
    fn coordinates_reconstruct_vector() {
        let f = Rationals;
        let q = |n: i64| f.from_i64(n);
        let mut e = Echelon::new(f, 3);
        e.insert(vec![q(2), q(1), q(0)]);
        e.insert(vec![q(0), q(3), q(1)]);
        let target = vec![q(4), q(5), q(1)];
        let mut w = target.clone();
        let coords = e.reduce_with_coords(&mut w);
        assert!(w.iter().all(|x| f.is_zero(x)));
        let mut back = vec![q(0); 3];
        for (i, c) in coords.iter().enumerate() {
            crate::linalg::axpy(&f, &mut back, c, &e.row(i));
        }
        assert_eq!(back, target);
    }

    #[test]
    fn dense_and_sparse_rows_agree() {
        let f = PrimeField::new(7).unwrap();
        let mut sparse = Echelon::new(f, 20);
        let mut v = vec![0u64; 20];
        v[3] = 2;
        v[17] = 5;
        sparse.insert(v.clone());
        let mut dense = Echelon::new(f, 20);
        let w: Vec<u64> = (0..20).map(|i| (i % 7) as u64).collect();
        dense.insert(w.clone());
        dense.insert(v.clone());
        sparse.insert(w);
        assert_eq!(sparse.rref(), dense.rref());
    }
}
