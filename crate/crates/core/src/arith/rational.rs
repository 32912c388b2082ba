use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::{rational_sqrt, Field, FieldDescriptor, Rational};
use crate::error::{Error, Result};

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Q
    }
    fn format_elem(&self, a: &Rational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        rational_sqrt(a)
    }
    fn elements(&self) -> Option<Vec<Rational>> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn add_mul_assign(&self, acc: &mut Rational, a: &Rational, b: &Rational) {
        *acc += a * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn parse_and_format_round_trip() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(q, ratio(-3, 2));
        assert_eq!(Rationals.format_elem(&q), "-3/2");
        assert_eq!(parse_rational(&Rationals.format_elem(&q)).unwrap(), q);
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn big_denominators_stay_exact() {
        let mut acc = Rationals.zero();
        for k in 1..60 {
            acc = Rationals.add(&acc, &ratio(1, k));
        }
        let mut back = acc.clone();
        for k in 1..60 {
            back = Rationals.sub(&back, &ratio(1, k));
        }
        assert!(Rationals.is_zero(&back));
        assert!(acc.denom().bits() > 64);
    }
}
