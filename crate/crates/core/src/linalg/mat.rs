use super::{axpy, Echelon};
use crate::arith::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    pub field: F,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat {
            field,
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Mat::from_rows(field, cols, data)
    }

    /// Matrix with the given vectors as columns.
    pub fn from_cols(field: F, nrows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Mat::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, o.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                axpy(f, orow, a, o.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| super::dot(&self.field, self.row(i), v))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![self.field.zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            axpy(&self.field, &mut out, x, self.row(i));
        }
        out
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, c: &F::Elem, o: &Mat<F>) {
        axpy(&self.field, &mut self.data, c, &o.data);
    }

    pub fn pow(&self, mut e: u64) -> Mat<F> {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field.clone(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> F::Elem {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = self.field.add(&t, self.get(i, i));
        }
        t
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let f = &self.field;
        // Row-reduce [A | I].
        let mut e = Echelon::new(f.clone(), 2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            e.insert(row);
        }
        let (rows, pivots) = e.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let inv_rows: Vec<Vec<F::Elem>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Mat::from_rows(f.clone(), n, inv_rows))
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !f.is_zero(&a[r * n + c])) else {
                return f.zero();
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pv = a[c * n + c].clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).expect("nonzero pivot");
            for r in (c + 1)..n {
                if f.is_zero(&a[r * n + c]) {
                    continue;
                }
                let factor = f.neg(&f.mul(&a[r * n + c], &inv));
                for j in c..n {
                    let t = a[c * n + j].clone();
                    f.add_mul_assign(&mut a[r * n + j], &factor, &t);
                }
            }
        }
        det
    }

    /// Commutator `AB - BA`, or anticommutator when `anti` is set.
    pub fn supercommutator(&self, o: &Mat<F>, anti: bool) -> Mat<F> {
        let ab = self.mul(o);
        let ba = o.mul(self);
        if anti {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn map_field<G: Field>(
        &self,
        g: &G,
        mut h: impl FnMut(&F::Elem) -> crate::error::Result<G::Elem>,
    ) -> crate::error::Result<Mat<G>> {
        let data = self
            .data
            .iter()
            .map(&mut h)
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(Mat {
            field: g.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn inverse_and_det() {
        let f = Rationals;
        let a = Mat::from_i64(f, &[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), f.from_i64(1));
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Mat::identity(f, 2));
        let s = Mat::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), f.zero());
    }

    #[test]
    fn power_matches_repeated_product() {
        let f = PrimeField::new(3).unwrap();
        let a = Mat::from_i64(f, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let mut b = Mat::identity(f, 3);
        for _ in 0..5 {
            b = b.mul(&a);
        }
        assert_eq!(a.pow(5), b);
        // (1 + N)^3 = 1 + N^3 in characteristic 3.
        assert_eq!(a.pow(3), Mat::identity(f, 3));
    }
}
