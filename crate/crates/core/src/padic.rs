//! p-adic valuations, residues modulo `p^k`, and the congruence predicate.
//!
//! `a ≡ b (mod p^k)` for rationals always means `v_p(a - b) >= k`. That makes
//! a statement such as "the sum is ≡ 0 (mod p^4)" checkable even when the
//! individual summands are not p-integral.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rationals::{is_prime, BigRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{value} is not a {p}-adic integer")]
    NonIntegralInput { value: String, p: u64 },
}

/// A p-adic valuation; `Infinite` is the valuation of zero and compares
/// above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

pub fn vp(x: &BigRational, p: u64) -> Valuation {
    match vp_int(x.numer(), p) {
        None => Valuation::Infinite,
        Some(num) => {
            let den = vp_int(x.denom(), p).expect("denominator is nonzero");
            Valuation::Finite(num as i64 - den as i64)
        }
    }
}

/// A prime power modulus `p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    k: u32,
    modulus: BigUint,
}

impl PadicContext {
    pub fn new(p: u64, k: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if k == 0 {
            return Err(PadicError::ZeroExponent);
        }
        Ok(Self {
            p,
            k,
            modulus: BigUint::from(p).pow(k),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// The modulus as a machine word, when it fits.
    pub fn modulus_u64(&self) -> Option<u64> {
        self.modulus.to_u64()
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, k: u32) -> Result<Self, PadicError> {
        Self::new(self.p, k)
    }

    pub fn residue(&self, value: impl Into<BigUint>) -> Residue {
        Residue {
            value: value.into() % &self.modulus,
            ctx: self.clone(),
        }
    }

    pub fn residue_signed(&self, value: &BigInt) -> Residue {
        let m = BigInt::from(self.modulus.clone());
        let v = value.mod_floor(&m);
        Residue {
            value: v.to_biguint().expect("mod_floor is nonnegative"),
            ctx: self.clone(),
        }
    }
}

/// A value in `[0, p^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    value: BigUint,
    ctx: PadicContext,
}

impl Residue {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// The canonical representative as a rational integer.
    pub fn lift(&self) -> BigRational {
        BigRational::from_integer(BigInt::from_biguint(Sign::Plus, self.value.clone()))
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "residues from different contexts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.ctx.residue(&self.value + &other.value)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.ctx
            .residue(&self.value + &self.ctx.modulus - &other.value)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.ctx.residue(&self.value * &other.value)
    }

    pub fn neg(&self) -> Self {
        self.ctx.residue(&self.ctx.modulus - &self.value)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.ctx
            .residue(self.value.modpow(&BigUint::from(e), &self.ctx.modulus))
    }

    /// `None` when the value is divisible by `p`.
    pub fn inverse(&self) -> Option<Self> {
        self.value
            .modinv(&self.ctx.modulus)
            .map(|v| self.ctx.residue(v))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one() || (self.ctx.modulus.is_one() && self.value.is_zero())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The residue of a p-adic integer: `numerator * denominator^{-1} mod p^k`.
pub fn reduce(x: &BigRational, ctx: &PadicContext) -> Result<Residue, PadicError> {
    if x.is_zero() {
        return Ok(ctx.residue(0u32));
    }
    if vp_int(x.denom(), ctx.p).unwrap_or(0) > 0 {
        return Err(PadicError::NonIntegralInput {
            value: x.to_string(),
            p: ctx.p,
        });
    }
    let num = ctx.residue_signed(x.numer());
    let den = ctx.residue_signed(x.denom());
    let den_inv = den.inverse().expect("denominator coprime to p");
    Ok(num.mul(&den_inv))
}

/// Outcome of a congruence test, with the exact valuation of the difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub holds: bool,
    pub witness: Valuation,
}

pub fn congruent(a: &BigRational, b: &BigRational, ctx: &PadicContext) -> Congruence {
    congruent_to_power(a, b, ctx.p, ctx.k as i64)
}

/// The same predicate without building a context; `k` may be any integer.
pub fn congruent_to_power(a: &BigRational, b: &BigRational, p: u64, k: i64) -> Congruence {
    let witness = vp(&(a - b), p);
    Congruence {
        holds: witness.at_least(k),
        witness,
    }
}
