//! Arithmetic in Q(ζ_n) = Q[x]/Φ_n(x) for the orders that occur here:
//! n = 1 (plain Q), n = 4 (x plays i) and n = 5 (x plays a primitive fifth
//! root of unity).
//!
//! Elements are stored in the power basis `1, x, ..., x^{φ(n)-1}`, which is
//! an integral basis of Z[ζ_n]. Congruences of cyclotomic integers are
//! therefore tested coefficientwise.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::Field;
use crate::padic::{vp, Valuation};
use crate::qring::QPolynomial;
use crate::rationals::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("unsupported cyclotomic order {0} (expected 1, 4 or 5)")]
    UnsupportedOrder(u32),
    #[error("root power sum check is defined for order 5 only, got {0}")]
    NotFifthRoots(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycOrder {
    One,
    Four,
    Five,
}

impl CycOrder {
    pub fn from_n(n: u32) -> Result<Self, CycError> {
        match n {
            1 => Ok(Self::One),
            4 => Ok(Self::Four),
            5 => Ok(Self::Five),
            _ => Err(CycError::UnsupportedOrder(n)),
        }
    }

    pub fn n(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Four => 4,
            Self::Five => 5,
        }
    }

    /// Euler's φ(n), the dimension over Q.
    pub fn degree(self) -> usize {
        match self {
            Self::One => 1,
            Self::Four => 2,
            Self::Five => 4,
        }
    }

    /// Φ_n as a polynomial.
    pub fn minimal_polynomial(self) -> QPolynomial {
        match self {
            Self::One => QPolynomial::from_ints(&[-1, 1]),
            Self::Four => QPolynomial::from_ints(&[1, 0, 1]),
            Self::Five => QPolynomial::geometric(5),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CycElement {
    order: CycOrder,
    coeffs: Vec<BigRational>,
}

impl CycElement {
    /// Reduces an arbitrary coefficient vector modulo Φ_n.
    pub fn from_coeffs(order: CycOrder, coeffs: Vec<BigRational>) -> Self {
        Self::from_poly(order, &QPolynomial::new(coeffs))
    }

    pub fn from_ints(order: CycOrder, coeffs: &[i64]) -> Self {
        Self::from_poly(order, &QPolynomial::from_ints(coeffs))
    }

    fn from_poly(order: CycOrder, poly: &QPolynomial) -> Self {
        let reduced = poly
            .rem(&order.minimal_polynomial())
            .expect("minimal polynomial is nonzero");
        let coeffs = (0..order.degree()).map(|i| reduced.coeff(i)).collect();
        Self { order, coeffs }
    }

    fn to_poly(&self) -> QPolynomial {
        QPolynomial::new(self.coeffs.clone())
    }

    pub fn rational(order: CycOrder, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); order.degree()];
        coeffs[0] = q;
        Self { order, coeffs }
    }

    pub fn zero(order: CycOrder) -> Self {
        Self::rational(order, BigRational::zero())
    }

    pub fn one(order: CycOrder) -> Self {
        Self::rational(order, BigRational::one())
    }

    /// The generator `x^e`, i.e. ζ^e.
    pub fn root_power(order: CycOrder, e: u32) -> Self {
        Self::from_poly(order, &QPolynomial::monomial(BigRational::one(), e as usize))
    }

    pub fn order(&self) -> CycOrder {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Minimum p-adic valuation over the power-basis coordinates.
    pub fn valuation(&self, p: u64) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| vp(c, p))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    fn check_order(&self, other: &Self) -> Result<(), CycError> {
        if self.order != other.order {
            return Err(CycError::OrderMismatch(self.order.n(), other.order.n()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

impl fmt::Debug for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ{})[", self.order.n())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Product reduced modulo Φ_n.
pub fn cyc_mul(u: &CycElement, v: &CycElement) -> Result<CycElement, CycError> {
    u.check_order(v)?;
    Ok(CycElement::from_poly(u.order, &(&u.to_poly() * &v.to_poly())))
}

/// Inverse by extended Euclid against Φ_n over Q.
pub fn cyc_inverse(u: &CycElement) -> Result<CycElement, CycError> {
    if u.is_zero() {
        return Err(CycError::ZeroInverse);
    }
    let inv = u
        .to_poly()
        .inverse_mod(&u.order.minimal_polynomial())
        .expect("Φ_n is irreducible, so every nonzero element is a unit");
    Ok(CycElement::from_poly(u.order, &inv))
}

/// The sum `1 + x + ... + x^{n-1}` in Q[x]/Φ_n.
pub fn root_power_sum(order: CycOrder) -> CycElement {
    CycElement::from_poly(order, &QPolynomial::geometric(order.n() as usize))
}

/// Whether `1 + ζ + ζ² + ζ³ + ζ⁴` reduces to zero; only order 5 is accepted.
pub fn root_power_sum_check(n: u32) -> Result<bool, CycError> {
    if n != 5 {
        return Err(CycError::NotFifthRoots(n));
    }
    Ok(root_power_sum(CycOrder::Five).is_zero())
}

/// Q(ζ_n) as a [`Field`].
#[derive(Clone, Copy, Debug)]
pub struct CyclotomicField {
    order: CycOrder,
}

impl CyclotomicField {
    pub fn new(order: CycOrder) -> Self {
        Self { order }
    }

    pub fn order(&self) -> CycOrder {
        self.order
    }

    /// ζ^e in this field.
    pub fn root(&self, e: u32) -> CycElement {
        CycElement::root_power(self.order, e)
    }
}

impl Field for CyclotomicField {
    type Elem = CycElement;

    fn zero(&self) -> CycElement {
        CycElement::zero(self.order)
    }
    fn one(&self) -> CycElement {
        CycElement::one(self.order)
    }
    fn embed(&self, q: &BigRational) -> CycElement {
        CycElement::rational(self.order, q.clone())
    }
    fn add(&self, a: &CycElement, b: &CycElement) -> CycElement {
        a.try_add(b).expect("elements of one field")
    }
    fn sub(&self, a: &CycElement, b: &CycElement) -> CycElement {
        a.try_sub(b).expect("elements of one field")
    }
    fn mul(&self, a: &CycElement, b: &CycElement) -> CycElement {
        cyc_mul(a, b).expect("elements of one field")
    }
    fn inv(&self, a: &CycElement) -> Option<CycElement> {
        cyc_inverse(a).ok()
    }
    fn is_zero(&self, a: &CycElement) -> bool {
        a.is_zero()
    }
    fn add_int(&self, a: &CycElement, n: i64) -> CycElement {
        let mut out = a.clone();
        out.coeffs[0] += BigRational::from_integer(n.into());
        out
    }
    fn scale(&self, a: &CycElement, q: &BigRational) -> CycElement {
        a.scale(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationals::{int, pochhammer, ratio};
    use proptest::prelude::*;

    /// Schoolbook reduction oracle: repeatedly replace the top monomial
    /// using x^{deg Φ} = -(lower terms of Φ).
    fn reduce_oracle(mut coeffs: Vec<i64>, phi: &[i64]) -> Vec<i64> {
        let d = phi.len() - 1;
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            let shift = coeffs.len() - d;
            for (j, &c) in phi[..d].iter().enumerate() {
                coeffs[shift + j] -= top * c;
            }
        }
        coeffs.resize(d, 0);
        coeffs
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycElement::root_power(CycOrder::Four, 1);
        assert_eq!(cyc_mul(&i, &i).unwrap(), CycElement::rational(CycOrder::Four, int(-1)));
    }

    #[test]
    fn zeta_to_the_fifth_is_one() {
        let z = CycElement::root_power(CycOrder::Five, 1);
        let z4 = CycElement::root_power(CycOrder::Five, 4);
        assert_eq!(cyc_mul(&z4, &z).unwrap(), CycElement::one(CycOrder::Five));
    }

    #[test]
    fn geometric_times_x4_is_minus_x3() {
        let oracle = reduce_oracle(vec![0, 0, 0, 0, 0, 0, 0, 0, -1], &[1, 1, 1, 1, 1]);
        assert_eq!(oracle, vec![0, 0, 0, -1]);
        let s = CycElement::from_ints(CycOrder::Five, &[1, 1, 1, 1]);
        let z4 = CycElement::root_power(CycOrder::Five, 4);
        let got = cyc_mul(&s, &z4).unwrap();
        assert_eq!(got, CycElement::from_ints(CycOrder::Five, &oracle));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CycElement::one(CycOrder::Four);
        let b = CycElement::one(CycOrder::Five);
        assert_eq!(cyc_mul(&a, &b), Err(CycError::OrderMismatch(4, 5)));
    }

    #[test]
    fn inverse_examples() {
        let i = CycElement::root_power(CycOrder::Four, 1);
        assert_eq!(cyc_inverse(&i).unwrap(), i.scale(&int(-1)));
        let q = CycElement::rational(CycOrder::One, ratio(2, 3));
        assert_eq!(cyc_inverse(&q).unwrap(), CycElement::rational(CycOrder::One, ratio(3, 2)));
        let u = CycElement::from_ints(CycOrder::Five, &[1, -1]);
        let inv = cyc_inverse(&u).unwrap();
        assert_eq!(cyc_mul(&u, &inv).unwrap(), CycElement::one(CycOrder::Five));
        // (1-ζ)(4+3ζ+2ζ²+ζ³) = 4 - (ζ+ζ²+ζ³+ζ⁴) = 5
        let expected = CycElement::from_ints(CycOrder::Five, &[4, 3, 2, 1]).scale(&ratio(1, 5));
        assert_eq!(inv, expected);
        assert_eq!(cyc_inverse(&CycElement::zero(CycOrder::Five)), Err(CycError::ZeroInverse));
    }

    #[test]
    fn root_power_sums() {
        assert_eq!(root_power_sum_check(5), Ok(true));
        assert_eq!(root_power_sum_check(4), Err(CycError::NotFifthRoots(4)));
        assert_eq!(root_power_sum_check(1), Err(CycError::NotFifthRoots(1)));
        // Order 4 analogue: 1 + x + x² + x³ mod x²+1, via the schoolbook oracle.
        let oracle = reduce_oracle(vec![1, 1, 1, 1], &[1, 0, 1]);
        assert_eq!(oracle, vec![0, 0]);
        assert_eq!(root_power_sum(CycOrder::Four), CycElement::from_ints(CycOrder::Four, &oracle));
    }

    #[test]
    fn valuation_is_coordinatewise_minimum() {
        let e = CycElement::from_coeffs(CycOrder::Four, vec![int(49), ratio(7, 3)]);
        assert_eq!(e.valuation(7), Valuation::Finite(1));
        assert_eq!(CycElement::zero(CycOrder::Five).valuation(7), Valuation::Infinite);
    }

    fn element(order: CycOrder) -> impl Strategy<Value = CycElement> {
        proptest::collection::vec((-20i64..20, 1i64..7), order.degree())
            .prop_map(move |cs| {
                CycElement::from_coeffs(order, cs.into_iter().map(|(n, d)| ratio(n, d)).collect())
            })
    }

    fn conjugate_pochhammer_product(
        field: &CyclotomicField,
        a: &BigRational,
        b: &BigRational,
        k: u64,
    ) -> CycElement {
        let n = field.order().n();
        (0..n).fold(field.one(), |acc, j| {
            let param = field.add(&field.embed(a), &field.root(j).scale(b));
            field.mul(&acc, &field.pochhammer(&param, k))
        })
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(u in prop_oneof![element(CycOrder::Four), element(CycOrder::Five), element(CycOrder::One)]) {
            prop_assume!(!u.is_zero());
            let inv = cyc_inverse(&u).unwrap();
            prop_assert_eq!(cyc_mul(&u, &inv).unwrap(), CycElement::one(u.order()));
        }

        #[test]
        fn galois_orbit_products_are_rational(a in (-12i64..12, 1i64..6), b in (-12i64..12, 1i64..6), p in prop::sample::select(vec![3i64, 7, 11]), k in 0u64..=6) {
            let a = ratio(a.0, a.1);
            let b = ratio(b.0 * p, b.1);
            for order in [CycOrder::Four, CycOrder::Five] {
                let field = CyclotomicField::new(order);
                let prod = conjugate_pochhammer_product(&field, &a, &b, k);
                prop_assert!(prod.as_rational().is_some(), "{:?}", prod);
            }
            // Sanity check the b = 0 degenerate case against the scalar Pochhammer.
            let field = CyclotomicField::new(CycOrder::Four);
            let prod = conjugate_pochhammer_product(&field, &a, &int(0), k);
            prop_assert_eq!(prod.as_rational().unwrap(), pochhammer(&a, k).pow(4));
        }
    }
}
