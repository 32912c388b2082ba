use rand::Rng;

use super::prime::tonelli_shanks;
use super::{Field, FieldDescriptor, PrimeField, Rational};
use crate::error::Result;

/// `F_{p^2} = F_p[x]/(x^2 - nu)` with `nu` the smallest non-residue mod `p`.
///
/// An element `[c0, c1]` stands for `c0 + c1*x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    base: PrimeField,
    nu: u64,
}

impl QuadField {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(QuadField {
            base,
            nu: base.non_residue(),
        })
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn embed(&self, a: u64) -> [u64; 2] {
        [a % self.p(), 0]
    }

    /// Conjugation `c0 + c1 x -> c0 - c1 x`, which is the Frobenius map.
    pub fn conj(&self, a: &[u64; 2]) -> [u64; 2] {
        [a[0], self.base.neg(&a[1])]
    }

    fn non_square(&self) -> [u64; 2] {
        let q = (self.p() as u128) * (self.p() as u128);
        let p = self.p();
        for c1 in 1..p {
            for c0 in 0..p {
                let z = [c0, c1];
                if !self.is_one(&pow128(self, &z, (q - 1) / 2)) {
                    return z;
                }
            }
        }
        unreachable!("F_p^2 has non-squares")
    }
}

fn pow128(f: &QuadField, a: &[u64; 2], mut e: u128) -> [u64; 2] {
    let mut base = *a;
    let mut acc = f.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = f.mul(&acc, &base);
        }
        base = f.mul(&base, &base);
        e >>= 1;
    }
    acc
}

impl Field for QuadField {
    type Elem = [u64; 2];

    fn zero(&self) -> [u64; 2] {
        [0, 0]
    }
    fn one(&self) -> [u64; 2] {
        [1, 0]
    }
    fn is_zero(&self, a: &[u64; 2]) -> bool {
        *a == [0, 0]
    }
    fn add(&self, a: &[u64; 2], b: &[u64; 2]) -> [u64; 2] {
        [self.base.add(&a[0], &b[0]), self.base.add(&a[1], &b[1])]
    }
    fn sub(&self, a: &[u64; 2], b: &[u64; 2]) -> [u64; 2] {
        [self.base.sub(&a[0], &b[0]), self.base.sub(&a[1], &b[1])]
    }
    fn mul(&self, a: &[u64; 2], b: &[u64; 2]) -> [u64; 2] {
        let f = &self.base;
        let c0 = f.add(&f.mul(&a[0], &b[0]), &f.mul(&f.mul(&a[1], &b[1]), &self.nu));
        let c1 = f.add(&f.mul(&a[0], &b[1]), &f.mul(&a[1], &b[0]));
        [c0, c1]
    }
    fn neg(&self, a: &[u64; 2]) -> [u64; 2] {
        [self.base.neg(&a[0]), self.base.neg(&a[1])]
    }
    fn inv(&self, a: &[u64; 2]) -> Option<[u64; 2]> {
        // a * conj(a) = c0^2 - nu c1^2 lies in F_p.
        let f = &self.base;
        let norm = f.sub(&f.mul(&a[0], &a[0]), &f.mul(&self.nu, &f.mul(&a[1], &a[1])));
        let ni = f.inv(&norm)?;
        let c = self.conj(a);
        Some([f.mul(&c[0], &ni), f.mul(&c[1], &ni)])
    }
    fn from_i64(&self, n: i64) -> [u64; 2] {
        [self.base.from_i64(n), 0]
    }
    fn from_rational(&self, q: &Rational) -> Result<[u64; 2]> {
        Ok([self.base.from_rational(q)?, 0])
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp2 { p: self.p() }
    }
    fn format_elem(&self, a: &[u64; 2]) -> String {
        format!("{}+{}x", a[0], a[1])
    }
    fn sqrt(&self, a: &[u64; 2]) -> Option<[u64; 2]> {
        let q = (self.p() as u128) * (self.p() as u128);
        let r = tonelli_shanks(self, a, q, &self.non_square())?;
        Some(r.min(self.neg(&r)))
    }
    fn elements(&self) -> Option<Vec<[u64; 2]>> {
        let p = self.p();
        Some((0..p).flat_map(|a| (0..p).map(move |b| [a, b])).collect())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u64; 2] {
        [rng.gen_range(0..self.p()), rng.gen_range(0..self.p())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![3u64, 5, 7, 11]),
                        a in any::<[u64; 2]>(), b in any::<[u64; 2]>(), c in any::<[u64; 2]>()) {
            let f = QuadField::new(p).unwrap();
            let r = |v: [u64; 2]| [v[0] % p, v[1] % p];
            let (a, b, c) = (r(a), r(b), r(c));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            prop_assert_eq!(f.pow(&a, p), f.conj(&a));
        }
    }

    #[test]
    fn every_element_is_a_square() {
        for p in [3u64, 5, 7] {
            let f = QuadField::new(p).unwrap();
            let mut squares = std::collections::BTreeSet::new();
            for a in f.elements().unwrap() {
                squares.insert(f.mul(&a, &a));
            }
            for a in f.elements().unwrap() {
                match f.sqrt(&a) {
                    Some(r) => assert_eq!(f.mul(&r, &r), a),
                    None => assert!(!squares.contains(&a)),
                }
            }
            // Elements of the prime field are all squares in the extension.
            for c in 0..p {
                assert!(f.sqrt(&[c, 0]).is_some());
            }
        }
    }
}
