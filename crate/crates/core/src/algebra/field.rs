use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Dyn, Error};

/// Exact rational numbers; always reduced with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational in the input grammar (`3`, `-1/2`).
pub fn q_to_string(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// A coefficient field in which every element is either zero or a unit, up to
/// dynamic evaluation: `inv` may report that the present presentation of the
/// field is a product of fields and must split first.
pub trait Field {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_q(&self, v: &Q) -> Self::E;
    /// Structural zero test. Representations are canonical, so this is exact
    /// for "zero in every component".
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Dyn<Self::E>;
    fn render(&self, a: &Self::E) -> String;
    /// Returns the rational value when the element lies in the prime field.
    fn as_q(&self, a: &Self::E) -> Option<Q>;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::E {
        self.from_q(&q(n))
    }

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    /// `Ok(true)` for zero, `Ok(false)` for a unit; a zero divisor splits.
    fn zero_or_unit(&self, a: &Self::E) -> Dyn<bool> {
        if self.is_zero(a) {
            Ok(true)
        } else {
            self.inv(a)?;
            Ok(false)
        }
    }

    fn div(&self, a: &Self::E, b: &Self::E) -> Dyn<Self::E> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::E, mut e: u64) -> Self::E {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_q(&self, v: &Q) -> Q {
        v.clone()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Dyn<Q> {
        if a.is_zero() {
            Err(Error::DivisionByZero.into())
        } else {
            Ok(a.recip())
        }
    }
    fn render(&self, a: &Q) -> String {
        q_to_string(a)
    }
    fn as_q(&self, a: &Q) -> Option<Q> {
        Some(a.clone())
    }
}

pub fn q_is_negative(v: &Q) -> bool {
    v.is_negative()
}
