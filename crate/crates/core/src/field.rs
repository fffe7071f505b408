//! A minimal scalar-field abstraction so series and identities can be
//! evaluated over Q, Q(i) or Q(zeta_5) with one code path.

use std::fmt;

use num_traits::{One, Zero};

use crate::rationals::BigRational;

/// Field operations on an element type that may carry runtime shape
/// (e.g. the cyclotomic order). Elements from different fields must never be
/// mixed within one computation.
pub trait Field: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, q: &BigRational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn add_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.add(a, &self.embed(&BigRational::from_integer(n.into())))
    }

    fn scale(&self, a: &Self::Elem, q: &BigRational) -> Self::Elem {
        self.mul(a, &self.embed(q))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Rising factorial over this field.
    fn pochhammer(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut factor = a.clone();
        for _ in 0..n {
            acc = self.mul(&acc, &factor);
            factor = self.add_int(&factor, 1);
        }
        acc
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}
