//! The quotient ring Q[q]/(Φ_p(q)^e), q-integers, q-shifted factorials, and
//! the checker for the q-analogue of the `thm1` family:
//!
//! ```text
//! Σ_{k<p} [10k+r] (q^r;q^5)_k^5 / (q^5;q^5)_k^5 · q^{5(3-r)k/2} ≡ 0  (mod Φ_p(q)^4)
//! ```
//!
//! Two independent methods are used: arithmetic in the quotient ring with
//! denominators inverted there, and clearing denominators to get an integer
//! Laurent polynomial that is then divided by Φ_p^4.

mod laurent;
pub mod poly;

use num_bigint::BigInt;
use thiserror::Error;

use crate::claims::{admissible, ClaimId};
use crate::rationals::is_prime;
use laurent::{rem_monic, Laurent};
pub use poly::QPolynomial;

/// Exponent of Φ_p in the conjectured congruence.
pub const Q_CONJECTURE_EXPONENT: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QRingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the ring exponent must be positive")]
    ZeroExponent,
    #[error("1 - q^{exponent} is not a unit modulo Phi_{p}")]
    NonUnitFactor { exponent: i64, p: u64 },
    #[error("(p={p}, r={r}) is not admissible: {reason}")]
    Inadmissible { p: u64, r: i64, reason: String },
    #[error("p = 5 makes every denominator factor 1 - q^(5j) vanish modulo Phi_5")]
    FiveExcluded,
    #[error("elements of Q[q]/Phi_{0}^{1} and Q[q]/Phi_{2}^{3} cannot be combined")]
    RingMismatch(u64, u32, u64, u32),
}

/// `Q[q]/(Φ_p(q)^exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRing {
    p: u64,
    exponent: u32,
    modulus: QPolynomial,
    q_inv: QPolynomial,
}

/// A residue of degree below `exponent·(p-1)`, tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRingElement {
    residue: QPolynomial,
    p: u64,
    exponent: u32,
}

impl QRingElement {
    pub fn residue(&self) -> &QPolynomial {
        &self.residue
    }

    pub fn modulus_descriptor(&self) -> (u64, u32) {
        (self.p, self.exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

/// `Φ_p(q) = 1 + q + ... + q^{p-1}` for prime p.
pub fn cyclotomic_prime(p: u64) -> QPolynomial {
    QPolynomial::geometric(p as usize)
}

impl QRing {
    pub fn new(p: u64, exponent: u32) -> Result<Self, QRingError> {
        if !is_prime(p) {
            return Err(QRingError::NotPrime(p));
        }
        if exponent == 0 {
            return Err(QRingError::ZeroExponent);
        }
        let modulus = cyclotomic_prime(p).pow(exponent);
        let q_inv = QPolynomial::from_ints(&[0, 1])
            .inverse_mod(&modulus)
            .expect("q is a unit since Phi_p(0) = 1");
        Ok(Self { p, exponent, modulus, q_inv })
    }

    /// The ring of the q-analogue congruence, exponent 4.
    pub fn standard(p: u64) -> Result<Self, QRingError> {
        Self::new(p, Q_CONJECTURE_EXPONENT)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> &QPolynomial {
        &self.modulus
    }

    pub fn element(&self, poly: &QPolynomial) -> QRingElement {
        QRingElement {
            residue: poly.rem(&self.modulus).expect("nonzero modulus"),
            p: self.p,
            exponent: self.exponent,
        }
    }

    pub fn zero(&self) -> QRingElement {
        self.element(&QPolynomial::zero())
    }

    pub fn one(&self) -> QRingElement {
        self.element(&QPolynomial::one())
    }

    fn check(&self, x: &QRingElement) -> Result<(), QRingError> {
        if (x.p, x.exponent) == (self.p, self.exponent) {
            Ok(())
        } else {
            Err(QRingError::RingMismatch(x.p, x.exponent, self.p, self.exponent))
        }
    }

    pub fn add(&self, x: &QRingElement, y: &QRingElement) -> Result<QRingElement, QRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(&(&x.residue + &y.residue)))
    }

    pub fn sub(&self, x: &QRingElement, y: &QRingElement) -> Result<QRingElement, QRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(&(&x.residue - &y.residue)))
    }

    pub fn mul(&self, x: &QRingElement, y: &QRingElement) -> Result<QRingElement, QRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(&(&x.residue * &y.residue)))
    }

    /// `None` when `x` shares a factor with Φ_p.
    pub fn inverse(&self, x: &QRingElement) -> Option<QRingElement> {
        self.check(x).ok()?;
        x.residue.inverse_mod(&self.modulus).map(|r| self.element(&r))
    }

    pub fn pow(&self, x: &QRingElement, e: u64) -> QRingElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base).expect("same ring");
            }
        }
        acc
    }

    /// `q^e`, using the ring inverse of q for `e < 0`.
    pub fn q_power(&self, e: i64) -> QRingElement {
        let base = if e >= 0 {
            self.element(&QPolynomial::from_ints(&[0, 1]))
        } else {
            self.element(&self.q_inv)
        };
        self.pow(&base, e.unsigned_abs())
    }

    /// `1 - q^e`.
    pub fn one_minus_q_power(&self, e: i64) -> QRingElement {
        self.sub(&self.one(), &self.q_power(e)).expect("same ring")
    }

    /// `[n] = (1 - q^n)/(1 - q)`; for `n < 0` this is `-q^n [-n]`.
    pub fn q_integer(&self, n: i64) -> QRingElement {
        let positive = |m: i64| self.element(&QPolynomial::geometric(m as usize));
        if n >= 0 {
            positive(n)
        } else {
            let neg = self.mul(&self.q_power(n), &positive(-n)).expect("same ring");
            self.sub(&self.zero(), &neg).expect("same ring")
        }
    }

    /// `∏_{j<k} (1 - q^{a + step·j})`, refusing non-unit factors.
    pub fn q_pochhammer(&self, a_exponent: i64, step: u64, k: u64) -> Result<QRingElement, QRingError> {
        let p = self.p as i64;
        for j in 0..k {
            let e = a_exponent + (step * j) as i64;
            if e.rem_euclid(p) == 0 {
                return Err(QRingError::NonUnitFactor { exponent: e, p: self.p });
            }
        }
        Ok(self.q_product(a_exponent, step, k))
    }

    /// Same product without the unit check; used for numerators, where a
    /// factor divisible by Φ_p is legitimate.
    pub fn q_product(&self, a_exponent: i64, step: u64, k: u64) -> QRingElement {
        (0..k).fold(self.one(), |acc, j| {
            let f = self.one_minus_q_power(a_exponent + (step * j) as i64);
            self.mul(&acc, &f).expect("same ring")
        })
    }
}

/// How the two methods judged one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVerdict {
    /// Both methods find the sum divisible by Φ_p^4.
    Holds,
    /// Both methods find it is not: a counterexample to the conjecture.
    ConjectureViolated,
    /// The methods disagree, which indicates a defect in this code.
    MethodsDisagree,
}

impl QVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            QVerdict::Holds => "holds",
            QVerdict::ConjectureViolated => "conjecture violated",
            QVerdict::MethodsDisagree => "internal error: methods disagree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QConjectureReport {
    pub p: u64,
    pub r: i64,
    /// The q-exponent is `5(3-r)k/2 + exponent_shift·k`; nonzero only for
    /// negative controls. (A constant shift would only multiply the sum by
    /// the unit q.)
    pub exponent_shift: i64,
    pub ring_zero: bool,
    pub cleared_divisible: bool,
    /// Largest `j <= 8` with Φ_p^j dividing the cleared numerator.
    pub phi_multiplicity: u32,
    pub verdict: QVerdict,
}

impl QConjectureReport {
    pub fn holds(&self) -> bool {
        self.verdict == QVerdict::Holds
    }
}

/// The exponent `5(3-r)k/2`; integral because r is odd.
fn q_weight_exponent(r: i64, k: i64) -> i64 {
    5 * (3 - r) * k / 2
}

/// Checks the q-analogue at an admissible `(p, r)`.
pub fn verify_q_conjecture(p: u64, r: i64) -> Result<QConjectureReport, QRingError> {
    verify_q_conjecture_shifted(p, r, 0)
}

/// As [`verify_q_conjecture`] with the k-th q-exponent raised by `shift·k`.
pub fn verify_q_conjecture_shifted(p: u64, r: i64, shift: i64) -> Result<QConjectureReport, QRingError> {
    let verdict = admissible(ClaimId::Thm1, p, r);
    if !verdict.admissible {
        return Err(QRingError::Inadmissible { p, r, reason: verdict.reason });
    }
    if p == 5 {
        return Err(QRingError::FiveExcluded);
    }
    let ring_zero = q_sum_in_ring(p, r, shift)?.is_zero();
    let phi_multiplicity = cleared_multiplicity(p, r, shift, 8);
    let cleared_divisible = phi_multiplicity >= Q_CONJECTURE_EXPONENT;
    let verdict = match (ring_zero, cleared_divisible) {
        (true, true) => QVerdict::Holds,
        (false, false) => QVerdict::ConjectureViolated,
        _ => QVerdict::MethodsDisagree,
    };
    Ok(QConjectureReport { p, r, exponent_shift: shift, ring_zero, cleared_divisible, phi_multiplicity, verdict })
}

/// The sum evaluated in `Q[q]/Φ_p^4`, dividing by `(q^5;q^5)_k^5` there.
pub fn q_sum_in_ring(p: u64, r: i64, shift: i64) -> Result<QRingElement, QRingError> {
    let ring = QRing::standard(p)?;
    let mut total = ring.zero();
    let mut ratio = ring.one();
    for k in 0..p as i64 {
        if k > 0 {
            let num = ring.one_minus_q_power(r + 5 * (k - 1));
            let den = ring.q_pochhammer(5 * k, 5, 1)?;
            let den_inv = ring.inverse(&den).ok_or(QRingError::NonUnitFactor { exponent: 5 * k, p })?;
            let step = ring.mul(&num, &den_inv)?;
            ratio = ring.mul(&ratio, &ring.pow(&step, 5))?;
        }
        let weight = ring.mul(&ring.q_integer(10 * k + r), &ring.q_power(q_weight_exponent(r, k) + shift * k))?;
        total = ring.add(&total, &ring.mul(&weight, &ratio)?)?;
    }
    Ok(total)
}

/// The sum times `(q^5;q^5)_{p-1}^5 (1 - q)` as an integer Laurent polynomial.
fn cleared_numerator(p: u64, r: i64, shift: i64) -> Laurent {
    let p = p as i64;
    // core_k = (q^r;q^5)_k^5 · (q^{5(k+1)};q^5)_{p-1-k}^5
    let mut core = Laurent::one();
    for j in 1..p {
        for _ in 0..5 {
            core = core.mul_one_minus(5 * j);
        }
    }
    let mut total = Laurent::zero();
    for k in 0..p {
        if k > 0 {
            for _ in 0..5 {
                core = core.mul_one_minus(r + 5 * (k - 1));
                core = core.div_one_minus(5 * k).expect("complementary factor is present");
            }
        }
        let term = core.mul_one_minus(10 * k + r).shift(q_weight_exponent(r, k) + shift * k);
        total = total.add(&term);
    }
    total
}

/// Multiplicity of Φ_p in the cleared sum, capped at `cap`. Since p ≠ 5,
/// Φ_p does not divide `(q^5;q^5)_{p-1}` and the multiplicity is that of
/// the sum itself.
fn cleared_multiplicity(p: u64, r: i64, shift: i64, cap: u32) -> u32 {
    let numerator = cleared_numerator(p, r, shift);
    if numerator.is_zero() {
        return cap;
    }
    let poly = numerator
        .div_one_minus(1)
        .expect("each [n] contributes a factor 1 - q^n")
        .into_coeffs();
    let phi: Vec<BigInt> = vec![BigInt::from(1); p as usize];
    let mut current = poly;
    let mut count = 0;
    while count < cap {
        let (quot, rem) = div_rem_monic(&current, &phi);
        if !rem.is_empty() {
            break;
        }
        current = quot;
        count += 1;
    }
    count
}

/// Quotient and remainder by a monic integer polynomial.
fn div_rem_monic(num: &[BigInt], divisor: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = divisor.len() - 1;
    if num.len() <= d {
        return (Vec::new(), rem_monic(num, divisor));
    }
    let mut r = num.to_vec();
    let mut quot = vec![BigInt::from(0); num.len() - d];
    for i in (0..quot.len()).rev() {
        let c = r[i + d].clone();
        if c == BigInt::from(0) {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    r.truncate(d);
    while r.last().is_some_and(|c| *c == BigInt::from(0)) {
        r.pop();
    }
    (quot, r)
}
