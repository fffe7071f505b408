//! Exact rational scalars, rising factorials and prime enumeration.
//!
//! Every other module builds on [`BigRational`]; it is always kept in
//! canonical form (positive denominator, coprime numerator).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`, normalised.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The rising factorial `(a)_n = a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
///
/// A negative integer `a` with `n > -a` yields zero, which is how terminating
/// series end.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return BigRational::zero();
        }
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, j| acc * j)
}

/// All primes in `lo..=hi`, ascending. Empty when `hi < 2` or `lo > hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi)
        .filter(|&p| !composite[p as usize])
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
