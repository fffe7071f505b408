//! Integer Laurent polynomials with the few sparse updates the
//! clear-denominator check needs: multiply or exactly divide by `1 - q^a`,
//! shift by `q^e`, add.

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Laurent {
    /// Exponent of `coeffs[0]`.
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub(crate) fn one() -> Self {
        Self { low: 0, coeffs: vec![BigInt::from(1)] }
    }

    pub(crate) fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    /// `self · q^e`.
    pub(crate) fn shift(mut self, e: i64) -> Self {
        self.low += e;
        self
    }

    /// `self · (1 - q^a)`.
    pub(crate) fn mul_one_minus(&self, a: i64) -> Self {
        if a == 0 || self.coeffs.is_empty() {
            return Self::zero();
        }
        let low = self.low.min(self.low + a);
        let len = self.coeffs.len() + a.unsigned_abs() as usize;
        let mut out = vec![BigInt::zero(); len];
        let base = (self.low - low) as usize;
        let moved = (self.low + a - low) as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            out[base + i] += c;
            out[moved + i] -= c;
        }
        Self { low, coeffs: out }.trim()
    }

    /// `self / (1 - q^a)` for `a > 0`; `None` if the division is not exact.
    pub(crate) fn div_one_minus(&self, a: i64) -> Option<Self> {
        assert!(a > 0, "divisor exponent must be positive");
        let a = a as usize;
        if self.coeffs.is_empty() {
            return Some(Self::zero());
        }
        if self.coeffs.len() <= a {
            return None;
        }
        let qlen = self.coeffs.len() - a;
        let mut quot: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut v = self.coeffs[i].clone();
            if i >= a {
                v += &quot[i - a];
            }
            quot.push(v);
        }
        // Past the quotient's length only the `-q^a` copy contributes.
        for i in qlen..self.coeffs.len() {
            let expected = if i >= a { -&quot[i - a] } else { BigInt::zero() };
            if self.coeffs[i] != expected {
                return None;
            }
        }
        Some(Self { low: self.low, coeffs: quot }.trim())
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (high - low) as usize];
        for src in [self, other] {
            let base = (src.low - low) as usize;
            for (i, c) in src.coeffs.iter().enumerate() {
                out[base + i] += c;
            }
        }
        Self { low, coeffs: out }.trim()
    }

    #[cfg(test)]
    pub(crate) fn low(&self) -> i64 {
        self.low
    }

    /// Coefficients of `q^{-low} · self`, an ordinary polynomial.
    pub(crate) fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    #[cfg(test)]
    pub(crate) fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// Remainder of `num` modulo a monic integer polynomial (ascending coefficients).
pub(crate) fn rem_monic(num: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let d = divisor.len() - 1;
    debug_assert!(divisor[d] == BigInt::from(1));
    let mut r = num.to_vec();
    while r.len() > d {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = r.len() - d;
        for (j, c) in divisor[..d].iter().enumerate() {
            r[base + j] -= &top * c;
        }
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}
