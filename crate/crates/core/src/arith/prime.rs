use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{check_odd_prime, Field, FieldDescriptor, Rational};
use crate::error::{Error, Result};

/// The prime field `F_p`, `p` odd and below `2^31`; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(&a, (self.p - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&a| !self.is_square(a))
            .expect("odd prime has non-residues")
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits")
    }
}

/// Tonelli-Shanks in a finite field of order `q` with a known non-square `z`.
pub(super) fn tonelli_shanks<F: Field>(
    f: &F,
    a: &F::Elem,
    q: u128,
    z: &F::Elem,
) -> Option<F::Elem> {
    if f.is_zero(a) {
        return Some(f.zero());
    }
    let mut s = 0u32;
    let mut t = q - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let euler = pow_big(f, a, (q - 1) / 2);
    if !f.is_one(&euler) {
        return None;
    }
    let mut m = s;
    let mut c = pow_big(f, z, t);
    let mut tt = pow_big(f, a, t);
    let mut r = pow_big(f, a, t.div_ceil(2));
    while !f.is_one(&tt) {
        let mut i = 0u32;
        let mut probe = tt.clone();
        while !f.is_one(&probe) {
            probe = f.mul(&probe, &probe);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = f.mul(&b, &b);
        }
        m = i;
        c = f.mul(&b, &b);
        tt = f.mul(&tt, &c);
        r = f.mul(&r, &b);
    }
    Some(r)
}

fn pow_big<F: Field>(f: &F, a: &F::Elem, mut e: u128) -> F::Elem {
    let mut base = a.clone();
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

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(t.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Result<u64> {
        let d = self.reduce_big(q.denom());
        if d == 0 {
            return Err(Error::NotAdmissibleAtP {
                p: self.p,
                value: q.to_string(),
            });
        }
        let n = self.reduce_big(q.numer());
        Ok(self.mul(&n, &self.inv(&d).expect("nonzero")))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp { p: self.p }
    }
    fn format_elem(&self, a: &u64) -> String {
        format!("{a}/1")
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        let z = self.non_residue();
        let r = tonelli_shanks(self, a, self.p as u128, &z)?;
        Some(r.min(self.neg(&r)))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverses_and_squares() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        for a in 0..7 {
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), a);
                assert!(r <= f.neg(&r) || r == 0);
            } else {
                assert!(!f.is_square(a));
            }
        }
        assert_eq!(f.non_residue(), 3);
    }

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![3u64, 5, 7, 11]), a in 0u64..11, b in 0u64..11, c in 0u64..11) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (a % p, b % p, c % p);
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn reduction_is_a_ring_map(p in prop::sample::select(vec![3u64, 5, 7, 11]),
                                   n1 in -50i64..50, d1 in 1i64..40, n2 in -50i64..50, d2 in 1i64..40) {
            let f = PrimeField::new(p).unwrap();
            prop_assume!(d1 % p as i64 != 0 && d2 % p as i64 != 0);
            let x = crate::arith::ratio(n1, d1);
            let y = crate::arith::ratio(n2, d2);
            let rx = f.from_rational(&x).unwrap();
            let ry = f.from_rational(&y).unwrap();
            prop_assert_eq!(f.from_rational(&(&x + &y)).unwrap(), f.add(&rx, &ry));
            prop_assert_eq!(f.from_rational(&(&x * &y)).unwrap(), f.mul(&rx, &ry));
        }
    }

    #[test]
    fn every_residue_has_a_root_somewhere() {
        for p in [3u64, 5, 7, 11] {
            for c in 0..p {
                let e = crate::arith::FieldElement::in_fp(c, p).unwrap();
                let s = crate::arith::sqrt_in_field(&e);
                assert_eq!(s.mul(&s).value, [c, 0]);
            }
        }
    }
}
