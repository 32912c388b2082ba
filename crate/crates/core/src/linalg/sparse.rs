use super::Mat;
use crate::arith::Field;

/// Row-compressed sparse matrix; every stored entry is nonzero and rows are sorted by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<F: Field> {
    pub field: F,
    pub rows: usize,
    pub cols: usize,
    pub row_data: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseMat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        SparseMat {
            field,
            rows,
            cols,
            row_data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let row_data = (0..n).map(|i| vec![(i, one.clone())]).collect();
        SparseMat {
            field,
            rows: n,
            cols: n,
            row_data,
        }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]` (given as sparse entries).
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<(usize, F::Elem)>]) -> Self {
        let mut row_data: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                if !field.is_zero(x) {
                    row_data[*i].push((j, x.clone()));
                }
            }
        }
        SparseMat {
            field,
            rows,
            cols: columns.len(),
            row_data,
        }
    }

    pub fn from_dense(m: &Mat<F>) -> Self {
        let f = &m.field;
        let row_data = (0..m.rows)
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            field: f.clone(),
            rows: m.rows,
            cols: m.cols,
            row_data,
        }
    }

    pub fn to_dense(&self) -> Mat<F> {
        let mut m = Mat::zeros(self.field.clone(), self.rows, self.cols);
        for (i, row) in self.row_data.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.row_data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.row_data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.row_data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.row_data
            .iter()
            .map(|row| {
                let mut acc = f.zero();
                for (j, x) in row {
                    if !f.is_zero(&v[*j]) {
                        f.add_mul_assign(&mut acc, x, &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut row_data: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.row_data.iter().enumerate() {
            for (j, x) in row {
                row_data[*j].push((i, x.clone()));
            }
        }
        SparseMat {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            row_data,
        }
    }

    fn merge_rows(
        &self,
        a: &[(usize, F::Elem)],
        ca: &F::Elem,
        b: &[(usize, F::Elem)],
        cb: &F::Elem,
    ) -> Vec<(usize, F::Elem)> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            let (col, val) = if take_a {
                let r = (a[i].0, f.mul(ca, &a[i].1));
                i += 1;
                r
            } else if take_b {
                let r = (b[j].0, f.mul(cb, &b[j].1));
                j += 1;
                r
            } else {
                let r = (a[i].0, f.add(&f.mul(ca, &a[i].1), &f.mul(cb, &b[j].1)));
                i += 1;
                j += 1;
                r
            };
            if !f.is_zero(&val) {
                out.push((col, val));
            }
        }
        out
    }

    /// `ca * self + cb * o`.
    pub fn lin_comb(&self, ca: &F::Elem, o: &SparseMat<F>, cb: &F::Elem) -> SparseMat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let row_data = self
            .row_data
            .iter()
            .zip(&o.row_data)
            .map(|(a, b)| self.merge_rows(a, ca, b, cb))
            .collect();
        SparseMat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            row_data,
        }
    }

    pub fn add(&self, o: &SparseMat<F>) -> SparseMat<F> {
        let one = self.field.one();
        self.lin_comb(&one, o, &one)
    }

    pub fn sub(&self, o: &SparseMat<F>) -> SparseMat<F> {
        let one = self.field.one();
        self.lin_comb(&one, o, &self.field.neg(&one))
    }

    pub fn scale(&self, c: &F::Elem) -> SparseMat<F> {
        let zero = self.field.zero();
        let empty = SparseMat::zeros(self.field.clone(), self.rows, self.cols);
        self.lin_comb(c, &empty, &zero)
    }

    pub fn mul(&self, o: &SparseMat<F>) -> SparseMat<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let f = &self.field;
        let mut acc = vec![f.zero(); o.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; o.cols];
        let mut row_data = Vec::with_capacity(self.rows);
        for row in &self.row_data {
            for (k, a) in row {
                for (j, b) in &o.row_data[*k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    f.add_mul_assign(&mut acc[*j], a, b);
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = std::mem::replace(&mut acc[j], f.zero());
                mark[j] = false;
                if !f.is_zero(&v) {
                    out.push((j, v));
                }
            }
            touched.clear();
            row_data.push(out);
        }
        SparseMat {
            field: f.clone(),
            rows: self.rows,
            cols: o.cols,
            row_data,
        }
    }

    /// `AB - BA`, or `AB + BA` when `anti` is set.
    pub fn supercommutator(&self, o: &SparseMat<F>, anti: bool) -> SparseMat<F> {
        let ab = self.mul(o);
        let ba = o.mul(self);
        if anti {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn pow(&self, e: u64) -> SparseMat<F> {
        let mut acc = SparseMat::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Rows of the matrix as dense vectors.
    pub fn dense_rows(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        self.row_data
            .iter()
            .map(|row| {
                let mut v = vec![f.zero(); self.cols];
                for (j, x) in row {
                    v[*j] = x.clone();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn sparse_matches_dense() {
        let f = PrimeField::new(7).unwrap();
        let a = Mat::from_i64(f, &[&[1, 0, 2], &[0, 0, 3], &[4, 5, 0]]);
        let b = Mat::from_i64(f, &[&[0, 1, 0], &[6, 0, 0], &[0, 2, 1]]);
        let sa = SparseMat::from_dense(&a);
        let sb = SparseMat::from_dense(&b);
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.add(&sb).to_dense(), a.add(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        assert_eq!(sa.mul_vec(&[1, 2, 3]), a.mul_vec(&[1, 2, 3]));
        assert_eq!(sa.pow(4).to_dense(), a.pow(4));
        assert_eq!(
            sa.supercommutator(&sb, true).to_dense(),
            a.supercommutator(&b, true)
        );
    }
}
