//! Exact evaluation of truncated, weighted hypergeometric sums and exact
//! checks of the terminating identities used by the proof chains:
//! Whipple's well-poised ₇F₆ → ₄F₃ transformation, the Karlsson–Minton
//! vanishing sum, and a second ₇F₆ → ₄F₃ transformation with an extra
//! integer parameter `m` (see [`check_d1`]).
//!
//! Everything is generic over a [`Field`], so the same code runs over Q,
//! Q(i) and Q(ζ₅).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclotomic::{CycOrder, CyclotomicField};
use crate::field::{Field, Rationals};
use crate::padic::{congruent_to_power, vp, Congruence};
use crate::rationals::{int, ratio, BigRational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("lower parameter #{parameter} vanishes at offset {offset} inside the truncation range")]
    PoleInRange { parameter: usize, offset: u64 },
    #[error("a prefactor denominator vanishes: {0}")]
    VanishingDenominator(&'static str),
    #[error("Karlsson–Minton needs n > m1 + ... + mr, got n = {n}, sum = {total}")]
    KarlssonMintonPrecondition { n: u64, total: u64 },
    #[error("b and m must have equal length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("{0} is not a p-adic integer for p = {1}")]
    NotPadicInteger(String, u64),
    #[error("conjugate products are defined for orders 4 and 5, got {0}")]
    UnsupportedOrder(u32),
}

/// `Σ_{k<N} (m·k + r) · ∏(aᵢ)ₖ / (k!^e ∏(bⱼ)ₖ) · z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec<E> {
    pub upper: Vec<E>,
    pub lower: Vec<E>,
    pub argument: E,
    pub terms: u64,
    /// `(m, r)` for the linear weight `m·k + r`; `None` means weight 1.
    pub weight: Option<(i64, i64)>,
    pub factorial_power: u32,
}

impl<E: Clone> SeriesSpec<E> {
    /// A terminating `_{r+1}F_r` at unit argument, summed over `k < terms`.
    pub fn hypergeometric(upper: Vec<E>, lower: Vec<E>, one: E, terms: u64) -> Self {
        Self {
            upper,
            lower,
            argument: one,
            terms,
            weight: None,
            factorial_power: 1,
        }
    }
}

/// The first `(parameter index, offset)` at which a lower Pochhammer factor
/// vanishes inside the truncation range, if any.
pub fn first_pole<F: Field>(field: &F, spec: &SeriesSpec<F::Elem>) -> Option<(usize, u64)> {
    let span = spec.terms.saturating_sub(1);
    for (idx, b) in spec.lower.iter().enumerate() {
        let mut factor = b.clone();
        for offset in 0..span {
            if field.is_zero(&factor) {
                return Some((idx, offset));
            }
            factor = field.add_int(&factor, 1);
        }
    }
    None
}

pub fn eval_truncated<F: Field>(field: &F, spec: &SeriesSpec<F::Elem>) -> Result<F::Elem, SeriesError> {
    if let Some((parameter, offset)) = first_pole(field, spec) {
        return Err(SeriesError::PoleInRange { parameter, offset });
    }
    let mut sum = field.zero();
    let mut term = field.one();
    for k in 0..spec.terms {
        let weighted = match spec.weight {
            None => term.clone(),
            Some((m, r)) => field.scale(&term, &int(m * k as i64 + r)),
        };
        sum = field.add(&sum, &weighted);
        if k + 1 == spec.terms {
            break;
        }
        let mut num = spec.argument.clone();
        for a in &spec.upper {
            num = field.mul(&num, &field.add_int(a, k as i64));
        }
        if field.is_zero(&num) {
            break;
        }
        let mut den = field.embed(&int(k as i64 + 1).pow(spec.factorial_power as i32));
        for b in &spec.lower {
            den = field.mul(&den, &field.add_int(b, k as i64));
        }
        let den_inv = field.inv(&den).expect("poles were screened");
        term = field.mul(&field.mul(&term, &num), &den_inv);
    }
    Ok(sum)
}

/// Both sides of an exact identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<E> {
    pub lhs: E,
    pub rhs: E,
    pub holds: bool,
}

impl<E: PartialEq> IdentityCheck<E> {
    fn new(lhs: E, rhs: E) -> Self {
        let holds = lhs == rhs;
        Self { lhs, rhs, holds }
    }
}

fn half<F: Field>(field: &F, x: &F::Elem) -> F::Elem {
    field.scale(x, &ratio(1, 2))
}

fn nonzero_pochhammer<F: Field>(
    field: &F,
    x: &F::Elem,
    n: u64,
    what: &'static str,
) -> Result<F::Elem, SeriesError> {
    let v = field.pochhammer(x, n);
    if field.is_zero(&v) {
        return Err(SeriesError::VanishingDenominator(what));
    }
    Ok(v)
}

/// Parameters `a, b, c, d, e` of Whipple's transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct WhippleParams<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub e: E,
}

/// The terminating well-poised ₇F₆ of Whipple's transformation as a series.
pub fn whipple_lhs_series<F: Field>(field: &F, w: &WhippleParams<F::Elem>, n: u64) -> SeriesSpec<F::Elem> {
    let one = field.one();
    let a1 = field.add(&w.a, &one);
    let minus_n = field.embed(&-int(n as i64));
    let upper = vec![
        w.a.clone(),
        field.add(&one, &half(field, &w.a)),
        w.b.clone(),
        w.c.clone(),
        w.d.clone(),
        w.e.clone(),
        minus_n,
    ];
    let lower = vec![
        half(field, &w.a),
        field.sub(&a1, &w.b),
        field.sub(&a1, &w.c),
        field.sub(&a1, &w.d),
        field.sub(&a1, &w.e),
        field.add_int(&a1, n as i64),
    ];
    SeriesSpec::hypergeometric(upper, lower, one, n + 1)
}

/// The ₄F₃ on the right of Whipple's transformation.
pub fn whipple_rhs_series<F: Field>(field: &F, w: &WhippleParams<F::Elem>, n: u64) -> SeriesSpec<F::Elem> {
    let one = field.one();
    let a1 = field.add(&w.a, &one);
    let upper = vec![
        field.sub(&field.sub(&a1, &w.b), &w.c),
        w.d.clone(),
        w.e.clone(),
        field.embed(&-int(n as i64)),
    ];
    let lower = vec![
        field.add_int(&field.sub(&field.add(&w.d, &w.e), &w.a), -(n as i64)),
        field.sub(&a1, &w.b),
        field.sub(&a1, &w.c),
    ];
    SeriesSpec::hypergeometric(upper, lower, one, n + 1)
}

/// The ₄F₃ prefactor `(a+1)_n (a-d-e+1)_n / ((a-d+1)_n (a-e+1)_n)`.
pub fn whipple_prefactor<F: Field>(field: &F, w: &WhippleParams<F::Elem>, n: u64) -> Result<F::Elem, SeriesError> {
    let a1 = field.add_int(&w.a, 1);
    let num = field.mul(
        &field.pochhammer(&a1, n),
        &field.pochhammer(&field.sub(&field.sub(&a1, &w.d), &w.e), n),
    );
    let den = field.mul(
        &nonzero_pochhammer(field, &field.sub(&a1, &w.d), n, "(a-d+1)_n")?,
        &nonzero_pochhammer(field, &field.sub(&a1, &w.e), n, "(a-e+1)_n")?,
    );
    Ok(field.div(&num, &den).expect("nonzero"))
}

/// Whipple's transformation, checked exactly at one parameter point.
pub fn check_whipple<F: Field>(
    field: &F,
    w: &WhippleParams<F::Elem>,
    n: u64,
) -> Result<IdentityCheck<F::Elem>, SeriesError> {
    let lhs = eval_truncated(field, &whipple_lhs_series(field, w, n))?;
    let pre = whipple_prefactor(field, w, n)?;
    let rhs = field.mul(&pre, &eval_truncated(field, &whipple_rhs_series(field, w, n))?);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// The Karlsson–Minton sum `_{r+1}F_r[-n, b₁+m₁, ...; b₁, ...; 1]`.
pub fn karlsson_minton_series<F: Field>(field: &F, n: u64, b: &[F::Elem], m: &[u64]) -> SeriesSpec<F::Elem> {
    let mut upper = vec![field.embed(&-int(n as i64))];
    upper.extend(b.iter().zip(m).map(|(bi, &mi)| field.add_int(bi, mi as i64)));
    SeriesSpec::hypergeometric(upper, b.to_vec(), field.one(), n + 1)
}

/// Checks that the Karlsson–Minton sum vanishes; `rhs` is always zero.
pub fn check_karlsson_minton<F: Field>(
    field: &F,
    n: u64,
    b: &[F::Elem],
    m: &[u64],
) -> Result<IdentityCheck<F::Elem>, SeriesError> {
    if b.len() != m.len() {
        return Err(SeriesError::LengthMismatch(b.len(), m.len()));
    }
    let total: u64 = m.iter().sum();
    if n <= total {
        return Err(SeriesError::KarlssonMintonPrecondition { n, total });
    }
    let lhs = eval_truncated(field, &karlsson_minton_series(field, n, b, m))?;
    Ok(IdentityCheck::new(lhs, field.zero()))
}

/// Parameters of the `m`-shifted ₇F₆ transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct D1Params<E> {
    pub t: E,
    pub a: E,
    pub b: E,
    pub c: E,
}

/// Shared linear combinations `x + y + 1 - m - t` etc.
struct D1Derived<E> {
    abc: E,
    ab1: E,
    ac1: E,
    bc1: E,
}

fn d1_derived<F: Field>(field: &F, p: &D1Params<F::Elem>, m: u64) -> D1Derived<F::Elem> {
    let shift = |x: &F::Elem| field.add_int(&field.sub(x, &p.t), 1 - m as i64);
    D1Derived {
        abc: field.add(&field.add(&p.a, &p.b), &p.c),
        ab1: shift(&field.add(&p.a, &p.b)),
        ac1: shift(&field.add(&p.a, &p.c)),
        bc1: shift(&field.add(&p.b, &p.c)),
    }
}

pub fn d1_lhs_series<F: Field>(field: &F, p: &D1Params<F::Elem>, n: u64, m: u64) -> SeriesSpec<F::Elem> {
    let one = field.one();
    let d = d1_derived(field, p, m);
    let (n_i, m_i) = (n as i64, m as i64);
    let upper = vec![
        p.t.clone(),
        field.add(&one, &half(field, &p.t)),
        field.embed(&-int(n_i)),
        field.sub(&p.t, &p.a),
        field.sub(&p.t, &p.b),
        field.sub(&p.t, &p.c),
        // 1 - t - m + n + a + b + c
        field.add_int(&field.sub(&d.abc, &p.t), 1 - m_i + n_i),
    ];
    let lower = vec![
        half(field, &p.t),
        field.add_int(&p.t, 1 + n_i),
        field.add_int(&p.a, 1),
        field.add_int(&p.b, 1),
        field.add_int(&p.c, 1),
        // 2t + m - n - a - b - c
        field.add_int(&field.sub(&field.add(&p.t, &p.t), &d.abc), m_i - n_i),
    ];
    SeriesSpec::hypergeometric(upper, lower, one, n + 1)
}

pub fn d1_rhs_series<F: Field>(field: &F, p: &D1Params<F::Elem>, n: u64, m: u64) -> SeriesSpec<F::Elem> {
    let d = d1_derived(field, p, m);
    let (n_i, m_i) = (n as i64, m as i64);
    let abc_2t = field.add_int(&field.sub(&field.sub(&d.abc, &p.t), &p.t), 1 - m_i);
    let upper = vec![
        field.embed(&-int(m_i)),
        field.embed(&-int(n_i)),
        abc_2t,
        field.add_int(&field.sub(&d.abc, &p.t), 1 + n_i - m_i),
    ];
    let lower = vec![d.ab1, d.ac1, d.bc1];
    SeriesSpec::hypergeometric(upper, lower, field.one(), n.min(m) + 1)
}

/// The Pochhammer prefactor of the transformation's right-hand side.
pub fn d1_pochhammer_prefactor<F: Field>(
    field: &F,
    p: &D1Params<F::Elem>,
    n: u64,
    m: u64,
) -> Result<F::Elem, SeriesError> {
    let d = d1_derived(field, p, m);
    let abc_2t = field.add_int(&field.sub(&field.sub(&d.abc, &p.t), &p.t), 1 - m as i64);
    let num = [
        field.add_int(&p.t, 1),
        field.add_int(&d.ab1, 1),
        field.add_int(&d.ac1, 1),
        field.add_int(&d.bc1, 1),
    ]
    .iter()
    .fold(field.one(), |acc, x| field.mul(&acc, &field.pochhammer(x, n)));
    let mut den = field.one();
    for (x, what) in [
        (field.add_int(&p.a, 1), "(1+a)_n"),
        (field.add_int(&p.b, 1), "(1+b)_n"),
        (field.add_int(&p.c, 1), "(1+c)_n"),
        (abc_2t, "(a+b+c+1-m-2t)_n"),
    ] {
        den = field.mul(&den, &nonzero_pochhammer(field, &x, n, what)?);
    }
    Ok(field.div(&num, &den).expect("nonzero"))
}

/// The ratio of the three linear factors `(x+y+1-m-t)/(x+y+n+1-m-t)`.
pub fn d1_linear_ratio<F: Field>(
    field: &F,
    p: &D1Params<F::Elem>,
    n: u64,
    m: u64,
) -> Result<F::Elem, SeriesError> {
    let d = d1_derived(field, p, m);
    let num = field.mul(&field.mul(&d.ab1, &d.ac1), &d.bc1);
    let den = [&d.ab1, &d.ac1, &d.bc1]
        .iter()
        .fold(field.one(), |acc, x| field.mul(&acc, &field.add_int(x, n as i64)));
    field
        .div(&num, &den)
        .ok_or(SeriesError::VanishingDenominator("(x+y+n+1-m-t)"))
}

/// The `m`-shifted ₇F₆ → ₄F₃ transformation, checked exactly.
pub fn check_d1<F: Field>(
    field: &F,
    p: &D1Params<F::Elem>,
    n: u64,
    m: u64,
) -> Result<IdentityCheck<F::Elem>, SeriesError> {
    let lhs = eval_truncated(field, &d1_lhs_series(field, p, n, m))?;
    let pre = d1_pochhammer_prefactor(field, p, n, m)?;
    let lin = d1_linear_ratio(field, p, n, m)?;
    let f43 = eval_truncated(field, &d1_rhs_series(field, p, n, m))?;
    let rhs = field.mul(&field.mul(&pre, &lin), &f43);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// Result of a conjugate-product congruence check.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateProductCheck {
    /// Whether the full Galois-orbit product is rational.
    pub rational: bool,
    /// Full product vs `(a)_k^{order}` modulo `p^{order}`; `None` when the
    /// product is not rational.
    pub full: Option<Congruence>,
    /// Order 4 only: `(a+bp)_k (a-bp)_k` and `(a+bip)_k (a-bip)_k` vs `(a)_k²` mod p².
    pub pairs: Vec<Congruence>,
}

impl ConjugateProductCheck {
    pub fn holds(&self) -> bool {
        self.rational && self.full.is_some_and(|c| c.holds) && self.pairs.iter().all(|c| c.holds)
    }
}

/// `∏_j (a + b·ζ^j·p)_k ≡ (a)_k^{n} (mod p^n)` over the n-th roots of unity,
/// n ∈ {4, 5}; for n = 4 also the two-factor versions modulo p².
pub fn conjugate_product_congruence(
    a: &BigRational,
    b: &BigRational,
    p: u64,
    k: u64,
    order: u32,
) -> Result<ConjugateProductCheck, SeriesError> {
    for x in [a, b] {
        if !vp(x, p).at_least(0) {
            return Err(SeriesError::NotPadicInteger(x.to_string(), p));
        }
    }
    let cyc = match order {
        4 => CycOrder::Four,
        5 => CycOrder::Five,
        other => return Err(SeriesError::UnsupportedOrder(other)),
    };
    let field = CyclotomicField::new(cyc);
    let bp = b * int(p as i64);
    let factor = |j: u32| {
        let param = field.add(&field.embed(a), &field.root(j).scale(&bp));
        field.pochhammer(&param, k)
    };
    let factors: Vec<_> = (0..order).map(factor).collect();
    let full = factors.iter().fold(field.one(), |acc, f| field.mul(&acc, f));
    let base = Rationals.pochhammer(a, k);
    let Some(full) = full.as_rational() else {
        return Ok(ConjugateProductCheck {
            rational: false,
            full: None,
            pairs: vec![],
        });
    };
    let full_cong = congruent_to_power(&full, &base.pow(order as i32), p, order as i64);
    let mut pairs = Vec::new();
    let mut rational = true;
    if order == 4 {
        let base2 = base.pow(2);
        // i^0 with i^2, and i^1 with i^3
        for (x, y) in [(0, 2), (1, 3)] {
            match field.mul(&factors[x], &factors[y]).as_rational() {
                Some(v) => pairs.push(congruent_to_power(&v, &base2, p, 2)),
                None => rational = false,
            }
        }
    }
    Ok(ConjugateProductCheck {
        rational,
        full: Some(full_cong),
        pairs,
    })
}

/// Which identity a fuzzing run exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Whipple,
    KarlssonMinton,
    D1,
}

impl IdentityName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Whipple => "whipple",
            Self::KarlssonMinton => "km",
            Self::D1 => "d1",
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for IdentityName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "whipple" => Ok(Self::Whipple),
            "km" | "karlsson-minton" => Ok(Self::KarlssonMinton),
            "d1" => Ok(Self::D1),
            other => Err(format!("unknown identity {other:?} (expected whipple, km or d1)")),
        }
    }
}

/// One fuzzing trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTrial {
    pub identity: IdentityName,
    pub trial: u64,
    pub parameters: String,
    /// Parameter draws rejected by pole screening before this one.
    pub resamples: u32,
    pub holds: bool,
}

const DENOMINATORS: [i64; 5] = [1, 2, 3, 5, 7];
const MAX_RESAMPLES: u32 = 10_000;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let den = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    ratio(rng.gen_range(-12..=12), den)
}

/// Per-trial RNG derived from the master seed and the trial index, so trials
/// can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn list(xs: &[BigRational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn draw_trial(identity: IdentityName, rng: &mut ChaCha8Rng) -> Option<(String, bool)> {
    let f = Rationals;
    match identity {
        IdentityName::Whipple => {
            let v: Vec<_> = (0..5).map(|_| random_rational(rng)).collect();
            let n = rng.gen_range(0..=6);
            let w = WhippleParams { a: v[0].clone(), b: v[1].clone(), c: v[2].clone(), d: v[3].clone(), e: v[4].clone() };
            let check = check_whipple(&f, &w, n).ok()?;
            Some((format!("a,b,c,d,e={};n={n}", list(&v)), check.holds))
        }
        IdentityName::KarlssonMinton => {
            let r = rng.gen_range(1..=3);
            let m: Vec<u64> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
            let total: u64 = m.iter().sum();
            if total >= 6 {
                return None;
            }
            let n = rng.gen_range(total + 1..=6);
            let b: Vec<_> = (0..r).map(|_| random_rational(rng)).collect();
            let check = check_karlsson_minton(&f, n, &b, &m).ok()?;
            let ms = m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            Some((format!("n={n};b={};m={ms}", list(&b)), check.holds))
        }
        IdentityName::D1 => {
            let v: Vec<_> = (0..4).map(|_| random_rational(rng)).collect();
            let n = rng.gen_range(0..=6);
            let m = rng.gen_range(0..=6);
            let p = D1Params { t: v[0].clone(), a: v[1].clone(), b: v[2].clone(), c: v[3].clone() };
            let check = check_d1(&f, &p, n, m).ok()?;
            Some((format!("t,a,b,c={};n={n};m={m}", list(&v)), check.holds))
        }
    }
}

/// Runs one seeded trial, resampling parameters until no pole is hit.
pub fn identity_trial(identity: IdentityName, seed: u64, trial: u64) -> IdentityTrial {
    let mut rng = trial_rng(seed, trial);
    for resamples in 0..MAX_RESAMPLES {
        if let Some((parameters, holds)) = draw_trial(identity, &mut rng) {
            return IdentityTrial { identity, trial, parameters, resamples, holds };
        }
    }
    panic!("pole screening rejected {MAX_RESAMPLES} consecutive draws");
}

/// `trials` seeded trials, evaluated in parallel, returned in trial order.
pub fn fuzz_identity(identity: IdentityName, seed: u64, trials: u64) -> Vec<IdentityTrial> {
    (0..trials)
        .into_par_iter()
        .map(|t| identity_trial(identity, seed, t))
        .collect()
}

/// Sum of a rational series; convenience for callers that only work over Q.
pub fn eval_rational(spec: &SeriesSpec<BigRational>) -> Result<BigRational, SeriesError> {
    eval_truncated(&Rationals, spec)
}
