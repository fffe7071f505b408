//! Morita's p-adic Gamma function modulo `p^k`.
//!
//! `Γ_p(m) = (-1)^m ∏_{0<j<m, p∤j} j` on nonnegative integers, extended to
//! Z_p by continuity. A rational `x ∈ Z_p` is evaluated through its
//! representative `m ∈ [0, p^k)`, which is sound because Γ_p is 1-Lipschitz.
//!
//! The product costs O(p^k) modular multiplications. For large moduli the
//! running product is checkpointed every [`CHECKPOINT_STRIDE`] steps and the
//! checkpoints are shared process-wide, so every later query against the same
//! `(p, k)` costs at most one stride.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::padic::{reduce, vp, PadicContext, PadicError, Residue};
use crate::rationals::BigRational;

pub const CHECKPOINT_STRIDE: u64 = 1 << 16;

/// Moduli below this are always swept directly.
const CHECKPOINT_THRESHOLD: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("the p-adic Gamma kernel supports odd primes only")]
    EvenPrime,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("{a} + {offset} lies in pZ_p for p = {p}")]
    SpanHitsMultipleOfP { a: String, offset: u64, p: u64 },
}

/// `a_p(x)`: the representative of `x mod p` in `{1, ..., p}`.
pub fn ap(x: &BigRational, p: u64) -> Result<u64, GammaError> {
    let ctx = PadicContext::new(p, 1)?;
    let r = reduce(x, &ctx)?
        .value()
        .to_u64()
        .expect("residue below p");
    Ok(if r == 0 { p } else { r })
}

/// Multiplication modulo a word-sized modulus. Below 2^32 products fit in a
/// u64 and are reduced with a Barrett quotient estimate.
#[derive(Clone, Copy, Debug)]
struct WordModulus {
    m: u64,
    mu: u64,
}

impl WordModulus {
    fn new(m: u64) -> Self {
        Self { m, mu: u64::MAX / m }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.m < (1 << 32) {
            let x = a * b;
            let q = ((x as u128 * self.mu as u128) >> 64) as u64;
            let mut r = x - q * self.m;
            while r >= self.m {
                r -= self.m;
            }
            r
        } else {
            ((a as u128 * b as u128) % self.m as u128) as u64
        }
    }

    /// `∏ j` over `lo <= j < hi` with `p ∤ j`; requires `hi <= m`.
    fn unit_range_product(&self, p: u64, lo: u64, hi: u64) -> u64 {
        debug_assert!(hi <= self.m);
        let mut acc = 1 % self.m;
        let mut j = lo;
        while j < hi {
            if j.is_multiple_of(p) {
                j += 1;
                continue;
            }
            let block_end = hi.min((j / p + 1) * p);
            for t in j..block_end {
                acc = self.mul(acc, t);
            }
            j = block_end;
        }
        acc
    }
}

/// Running products `∏_{0<j<i·STRIDE, p∤j} j mod p^k`, extended on demand.
type Checkpoints = Arc<Mutex<Vec<u64>>>;

fn checkpoint_table(p: u64, k: u32) -> Checkpoints {
    static TABLES: OnceLock<Mutex<HashMap<(u64, u32), Checkpoints>>> = OnceLock::new();
    let mut tables = TABLES
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    tables.entry((p, k)).or_default().clone()
}

/// Checkpoint `idx` of the table for `(p, k)`, computing any missing ones.
fn checkpoint(p: u64, k: u32, word: &WordModulus, idx: u64) -> u64 {
    let table = checkpoint_table(p, k);
    let mut values = table.lock().unwrap_or_else(|e| e.into_inner());
    if values.is_empty() {
        values.push(1 % word.m);
    }
    while (values.len() as u64) <= idx {
        let i = values.len() as u64;
        let seg = word.unit_range_product(p, (i - 1) * CHECKPOINT_STRIDE, i * CHECKPOINT_STRIDE);
        let next = word.mul(*values.last().expect("nonempty"), seg);
        values.push(next);
    }
    values[idx as usize]
}

/// `∏_{0<j<m, p∤j} j mod p^k` for `m <= p^k`, using checkpoints when worthwhile.
fn unit_prefix_product(ctx: &PadicContext, word: &WordModulus, m: u64) -> u64 {
    let p = ctx.p();
    if word.m < CHECKPOINT_THRESHOLD {
        return word.unit_range_product(p, 1.min(m), m);
    }
    let idx = m / CHECKPOINT_STRIDE;
    let base = checkpoint(p, ctx.k(), word, idx);
    word.mul(base, word.unit_range_product(p, idx * CHECKPOINT_STRIDE, m))
}

/// The Morita product `(-1)^m ∏_{0<j<m, p∤j} j mod p^k` for any `m >= 0`,
/// including representatives beyond `p^k`. Products over whole periods of
/// `p^k` are computed, not assumed.
pub fn morita_product(m: &BigUint, ctx: &PadicContext) -> Result<Residue, GammaError> {
    if ctx.p() == 2 {
        return Err(GammaError::EvenPrime);
    }
    let modulus = ctx.modulus();
    let periods = m / modulus;
    let tail = m % modulus;
    let odd = m.bit(0);
    let product = match ctx.modulus_u64() {
        Some(mw) => {
            let word = WordModulus::new(mw);
            let tail = tail.to_u64().expect("below modulus");
            let mut acc = ctx.residue(unit_prefix_product(ctx, &word, tail));
            if !periods.is_zero() {
                let full = ctx.residue(unit_prefix_product(ctx, &word, mw));
                acc = acc.mul(&ctx.residue(full.value().modpow(&periods, modulus)));
            }
            acc
        }
        None => {
            let mut acc = BigUint::one();
            let mut j = BigUint::one();
            let p = BigUint::from(ctx.p());
            while &j < m {
                if !(&j % &p).is_zero() {
                    acc = acc * &j % modulus;
                }
                j += 1u32;
            }
            ctx.residue(acc)
        }
    };
    Ok(if odd { product.neg() } else { product })
}

/// Straight-line product with no checkpoints or word arithmetic; the
/// reference the fast path is tested against.
pub fn morita_product_naive(m: u64, ctx: &PadicContext) -> Residue {
    let p = ctx.p();
    let modulus = ctx.modulus();
    let mut acc = BigUint::one() % modulus;
    for j in 1..m {
        if j % p != 0 {
            acc = acc * j % modulus;
        }
    }
    let r = ctx.residue(acc);
    if m % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

/// Γ_p(x) mod p^k for `x ∈ Z_p`.
pub fn gamma_p(x: &BigRational, ctx: &PadicContext) -> Result<Residue, GammaError> {
    if ctx.p() == 2 {
        return Err(GammaError::EvenPrime);
    }
    let rep = reduce(x, ctx)?;
    morita_product(rep.value(), ctx)
}

/// `(a)_n mod p^k` computed as `(-1)^n Γ_p(a+n)/Γ_p(a)`.
pub fn pochhammer_residue_via_gamma(
    a: &BigRational,
    n: u64,
    ctx: &PadicContext,
) -> Result<Residue, GammaError> {
    let p = ctx.p();
    if p == 2 {
        return Err(GammaError::EvenPrime);
    }
    for offset in 0..n {
        let term = a + BigRational::from_integer(offset.into());
        if vp(&term, p).at_least(1) {
            return Err(GammaError::SpanHitsMultipleOfP {
                a: a.to_string(),
                offset,
                p,
            });
        }
    }
    let end = a + BigRational::from_integer(n.into());
    let ratio = gamma_p(&end, ctx)?.mul(
        &gamma_p(a, ctx)?
            .inverse()
            .expect("Γ_p values are units"),
    );
    Ok(if n % 2 == 1 { ratio.neg() } else { ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::reduce;
    use crate::rationals::{int, pochhammer, ratio};

    fn ctx(p: u64, k: u32) -> PadicContext {
        PadicContext::new(p, k).unwrap()
    }

    fn minus_one(c: &PadicContext) -> Residue {
        c.residue(1u32).neg()
    }

    #[test]
    fn ap_examples() {
        assert_eq!(ap(&int(2), 5), Ok(2));
        assert_eq!(ap(&int(0), 5), Ok(5));
        assert_eq!(ap(&ratio(1, 4), 7), Ok(2));
        assert!(matches!(ap(&ratio(1, 5), 5), Err(GammaError::Padic(_))));
    }

    #[test]
    fn special_values() {
        for (p, k) in [(3, 1), (5, 3), (7, 2), (11, 4)] {
            let c = ctx(p, k);
            assert_eq!(gamma_p(&int(0), &c).unwrap(), c.residue(1u32));
            assert_eq!(gamma_p(&int(1), &c).unwrap(), minus_one(&c));
        }
        assert_eq!(gamma_p(&int(4), &ctx(5, 2)).unwrap().value(), &BigUint::from(6u32));
    }

    #[test]
    fn rejects_even_prime_and_non_integral_input() {
        assert_eq!(gamma_p(&int(1), &ctx(2, 3)), Err(GammaError::EvenPrime));
        assert!(matches!(
            gamma_p(&ratio(1, 7), &ctx(7, 2)),
            Err(GammaError::Padic(PadicError::NonIntegralInput { .. }))
        ));
    }

    #[test]
    fn fast_kernel_matches_naive_product() {
        for (p, k) in [(3, 5), (5, 4), (7, 3), (13, 2)] {
            let c = ctx(p, k);
            let m = c.modulus_u64().unwrap();
            for rep in [0, 1, 2, p, p + 1, m / 2, m - 1] {
                assert_eq!(
                    morita_product(&BigUint::from(rep), &c).unwrap(),
                    morita_product_naive(rep, &c),
                    "p={p} k={k} m={rep}"
                );
            }
        }
    }

    #[test]
    fn checkpointed_kernel_matches_naive_product() {
        // 3^13 = 1594323 exceeds the checkpoint threshold.
        let c = ctx(3, 13);
        let m = c.modulus_u64().unwrap();
        for rep in [CHECKPOINT_STRIDE - 1, CHECKPOINT_STRIDE, 3 * CHECKPOINT_STRIDE + 17, m - 2] {
            assert_eq!(
                morita_product(&BigUint::from(rep), &c).unwrap(),
                morita_product_naive(rep, &c),
                "m={rep}"
            );
        }
    }

    #[test]
    fn word_modulus_above_32_bits() {
        // 7^12 > 2^32 exercises the u128 branch.
        let c = ctx(7, 12);
        let rep = 5_000u64;
        assert_eq!(
            morita_product(&BigUint::from(rep), &c).unwrap(),
            morita_product_naive(rep, &c)
        );
    }

    #[test]
    fn pochhammer_via_gamma_examples() {
        let c71 = ctx(7, 1);
        let r = pochhammer_residue_via_gamma(&ratio(1, 2), 3, &c71).unwrap();
        // 15 ≡ 1 and 8 ≡ 1 (mod 7)
        assert_eq!(r.value(), &BigUint::from(1u32));
        assert_eq!(r, reduce(&ratio(15, 8), &c71).unwrap());
        assert_eq!(
            pochhammer_residue_via_gamma(&int(1), 0, &ctx(11, 3)).unwrap(),
            ctx(11, 3).residue(1u32)
        );
        let c52 = ctx(5, 2);
        assert_eq!(
            pochhammer_residue_via_gamma(&ratio(1, 3), 2, &c52).unwrap(),
            reduce(&pochhammer(&ratio(1, 3), 2), &c52).unwrap()
        );
    }

    #[test]
    fn pochhammer_via_gamma_rejects_span_through_p() {
        // 1/3 + 3 = 10/3 is divisible by 5
        assert_eq!(
            pochhammer_residue_via_gamma(&ratio(1, 3), 4, &ctx(5, 2)),
            Err(GammaError::SpanHitsMultipleOfP { a: "1/3".into(), offset: 3, p: 5 })
        );
    }
}
