//! Exact scalars: the rationals, prime fields `F_p` and quadratic extensions `F_{p^2}`.
//!
//! Every algorithm in the crate is generic over [`Field`]. Elements are plain
//! values; the field object carries the modulus, so `F_p` elements are bare `u64`s.

mod prime;
mod quad;
mod rational;

pub use prime::PrimeField;
pub use quad::QuadField;
pub use rational::{parse_rational, Rationals};

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    Q,
    Fp { p: u64 },
    Fp2 { p: u64 },
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "Q"),
            FieldDescriptor::Fp { p } => write!(f, "F_{p}"),
            FieldDescriptor::Fp2 { p } => write!(f, "F_{p}^2"),
        }
    }
}

/// A field of coefficients. Implementations are cheap to clone.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational; fails when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    /// Canonical `"a/b"` text form used by the JSON formats.
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Square root inside this field, if one exists (smallest representative).
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// A pseudo-random element; over Q a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `acc += a * b`.
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    /// `1/2`, which exists because every field here has characteristic 0 or odd.
    fn half(&self) -> Self::Elem {
        self.inv(&self.from_i64(2))
            .expect("characteristic is never 2")
    }
}

/// Trial-division primality test; moduli in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar of `F_p` or `F_{p^2}` carried together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    /// Coordinates `(c0, c1)` of `c0 + c1*x` with `x^2 = nu`; `c1 = 0` in `F_p`.
    pub value: [u64; 2],
    pub modulus: u64,
    /// 1 for `F_p`, 2 for `F_{p^2}`.
    pub extension_degree: u8,
}

impl FieldElement {
    pub fn in_fp(v: u64, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(FieldElement {
            value: [v % p, 0],
            modulus: p,
            extension_degree: 1,
        })
    }

    pub fn in_fp2(c0: u64, c1: u64, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(FieldElement {
            value: [c0 % p, c1 % p],
            modulus: p,
            extension_degree: 2,
        })
    }

    fn quad(&self) -> QuadField {
        QuadField::new(self.modulus).expect("modulus validated at construction")
    }

    fn with(&self, value: [u64; 2], degree: u8) -> Self {
        FieldElement {
            value,
            modulus: self.modulus,
            extension_degree: degree,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.with(
            self.quad().add(&self.value, &o.value),
            self.extension_degree.max(o.extension_degree),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.with(
            self.quad().mul(&self.value, &o.value),
            self.extension_degree.max(o.extension_degree),
        )
    }

    pub fn neg(&self) -> Self {
        self.with(self.quad().neg(&self.value), self.extension_degree)
    }

    pub fn inv(&self) -> Option<Self> {
        self.quad()
            .inv(&self.value)
            .map(|v| self.with(v, self.extension_degree))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.quad().pow(&self.value, e), self.extension_degree)
    }

    pub fn is_zero(&self) -> bool {
        self.value == [0, 0]
    }
}

/// Rejects moduli that are not odd primes below `2^31`.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p <= 2 || !is_prime(p) || p >= 1 << 31 {
        return Err(Error::BadPrime {
            p,
            reason: "modulus must be an odd prime below 2^31".into(),
        });
    }
    Ok(())
}

/// Image of `q` in `F_p`; `NotAdmissibleAtP` when `p` divides the denominator.
pub fn reduce_mod_p(q: &Rational, p: u64) -> Result<FieldElement> {
    check_odd_prime(p)?;
    let f = PrimeField::new(p)?;
    let v = f.from_rational(q)?;
    Ok(FieldElement {
        value: [v, 0],
        modulus: p,
        extension_degree: 1,
    })
}

/// A square root of `c`, in `F_p` when `c` is a square there, otherwise in `F_{p^2}`.
///
/// Of the two roots the one with the lexicographically smaller coordinates is returned.
pub fn sqrt_in_field(c: &FieldElement) -> FieldElement {
    let q = c.quad();
    let root = q
        .sqrt(&c.value)
        .expect("every element of F_p has a square root in F_p^2");
    let deg = if root[1] == 0 { 1 } else { 2 };
    FieldElement {
        value: root,
        modulus: c.modulus,
        extension_degree: deg.max(c.extension_degree),
    }
}

/// The Frobenius map `c -> c^p`; the identity on `F_p`.
pub fn frobenius(c: &FieldElement) -> FieldElement {
    c.pow(c.modulus)
}

/// Converts a small rational to `i64` when it is an integer.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Rational from a pair of machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Whether `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&ratio(1, 2), 3).unwrap().value, [2, 0]);
        assert_eq!(reduce_mod_p(&ratio(1, 2), 5).unwrap().value, [3, 0]);
        assert!(matches!(
            reduce_mod_p(&ratio(3, 5), 5),
            Err(Error::NotAdmissibleAtP { .. })
        ));
        assert!(matches!(
            reduce_mod_p(&ratio(1, 1), 2),
            Err(Error::BadPrime { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let four = FieldElement::in_fp(4, 5).unwrap();
        assert_eq!(sqrt_in_field(&four).value, [2, 0]);
        let zero = FieldElement::in_fp(0, 7).unwrap();
        assert_eq!(sqrt_in_field(&zero).value, [0, 0]);
        let two = FieldElement::in_fp(2, 5).unwrap();
        let s = sqrt_in_field(&two);
        assert_eq!(s.extension_degree, 2);
        assert_eq!(s.mul(&s).value, [2, 0]);
    }

    #[test]
    fn sqrt_of_two_in_f25_matches_exhaustive_search() {
        // Oracle: square all 25 elements of F_25 and collect the roots of 2.
        let q = QuadField::new(5).unwrap();
        let mut roots = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                if q.mul(&[a, b], &[a, b]) == [2, 0] {
                    roots.push([a, b]);
                }
            }
        }
        roots.sort();
        assert_eq!(roots.len(), 2);
        let s = sqrt_in_field(&FieldElement::in_fp(2, 5).unwrap());
        assert_eq!(s.value, roots[0]);
    }

    #[test]
    fn frobenius_examples() {
        let three = FieldElement::in_fp(3, 5).unwrap();
        assert_eq!(frobenius(&three).value, [3, 0]);
        // F_9 = F_3[x]/(x^2 + 1): x^2 = -1, and x^3 = -x.
        let q = QuadField::new(3).unwrap();
        assert_eq!(q.nu(), 2);
        let x = FieldElement::in_fp2(0, 1, 3).unwrap();
        assert_eq!(x.mul(&x).value, [2, 0]);
        assert_eq!(frobenius(&x).value, x.neg().value);
        let zero = FieldElement::in_fp(0, 7).unwrap();
        assert!(frobenius(&zero).is_zero());
    }

    #[test]
    fn rational_squares() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
    }
}
