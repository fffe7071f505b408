//! Replay of the argument for the `thm1` family at one `(p, r)`.
//!
//! Whipple's transformation is specialised over Q(i) at
//! `a = r/5, b = (r+5)/10, c = (r+3p)/5, d = (r+3ip)/5, e = (r-3ip)/5`,
//! `n = (3p-r)/5`; the left side reduces to the truncated sum modulo p⁴,
//! the ₄F₃ prefactor carries p², and the ₄F₃ itself vanishes modulo p²
//! after two parameter substitutions and a Karlsson–Minton evaluation.

use super::{admissible, lhs_value, ClaimError, ClaimId, ProofChain, StepReport};
use crate::cyclotomic::{CycElement, CycOrder, CyclotomicField};
use crate::field::{Field, Rationals};
use crate::hyperkernel::{
    check_karlsson_minton, eval_truncated, whipple_lhs_series, whipple_prefactor, whipple_rhs_series,
    SeriesSpec, WhippleParams,
};
use crate::padic::{vp, Valuation};
use crate::rationals::{int, pochhammer, ratio, BigRational};

fn diff_valuation(field: &CyclotomicField, x: &CycElement, y: &CycElement, p: u64) -> Valuation {
    field.sub(x, y).valuation(p)
}

/// The ₄F₃ of the transformation with `d, e` replaced by `d2, e2`.
fn f43_with(field: &CyclotomicField, w: &WhippleParams<CycElement>, d2: &CycElement, e2: &CycElement, n: u64) -> SeriesSpec<CycElement> {
    let mut spec = whipple_rhs_series(field, w, n);
    spec.upper[1] = d2.clone();
    spec.upper[2] = e2.clone();
    spec
}

pub fn proof_chain_thm1(p: u64, r: i64) -> Result<ProofChain, ClaimError> {
    let verdict = admissible(ClaimId::Thm1, p, r);
    if !verdict.admissible {
        return Err(ClaimError::Inadmissible { claim: ClaimId::Thm1, p, r, reason: verdict.reason });
    }
    let mut chain = ProofChain { claim: ClaimId::Thm1, p, r, steps: Vec::new(), skipped: None };
    if p == 2 {
        chain.skipped = Some("the Q(i) reductions need an odd prime".into());
        return Ok(chain);
    }

    let field = CyclotomicField::new(CycOrder::Four);
    let q = |x: BigRational| field.embed(&x);
    let pi = p as i64;
    let n = ((3 * pi - r) / 5) as u64;
    let three_ip = field.root(1).scale(&ratio(3 * pi, 5));
    let w = WhippleParams {
        a: q(ratio(r, 5)),
        b: q(ratio(r + 5, 10)),
        c: q(ratio(r + 3 * pi, 5)),
        d: field.add(&q(ratio(r, 5)), &three_ip),
        e: field.sub(&q(ratio(r, 5)), &three_ip),
    };
    let steps = &mut chain.steps;

    let lhs = eval_truncated(&field, &whipple_lhs_series(&field, &w, n))?;
    let pre = whipple_prefactor(&field, &w, n)?;
    let f_a = eval_truncated(&field, &whipple_rhs_series(&field, &w, n))?;
    steps.push(StepReport::exact(
        "whipple-instance",
        format!("well-poised 7F6 equals prefactor times 4F3 over Q(i), n = {n}"),
        diff_valuation(&field, &lhs, &field.mul(&pre, &f_a), p),
    ));

    let sum = lhs_value(ClaimId::Thm1, p, r);
    let sum_over_r = q(&sum / int(r));
    steps.push(StepReport::modular(
        "lhs-matches-truncated-sum",
        "7F6 agrees with (1/r) times the sum over k < p",
        4,
        diff_valuation(&field, &lhs, &sum_over_r, p),
    ));

    let unit_ratio = |k: u64| pochhammer(&ratio(r, 5), k) / pochhammer(&int(1), k);
    let tail: Vec<u64> = (n + 1..p).collect();
    let tail_min = |f: &dyn Fn(u64) -> Valuation| tail.iter().map(|&k| f(k)).min().unwrap_or(Valuation::Infinite);
    steps.push(StepReport::modular(
        "tail-ratio-divisible-by-p",
        format!("(r/5)_k / k! has positive valuation for {} < k < p", n),
        1,
        tail_min(&|k| vp(&unit_ratio(k), p)),
    ));
    steps.push(StepReport::modular(
        "tail-summands-divisible-by-p5",
        "each omitted summand (10k+r)(r/5)_k^5/k!^5 has valuation at least 5",
        5,
        tail_min(&|k| vp(&(int(10 * k as i64 + r) * unit_ratio(k).pow(5)), p)),
    ));

    steps.push(StepReport::modular(
        "prefactor-divisible-by-p2",
        "(1+r/5)_n (1-r/5)_n / (1+9p^2/25 products) carries p^2",
        2,
        pre.valuation(p),
    ));

    let fifth = q(ratio(r, 5));
    let f_b = eval_truncated(&field, &f43_with(&field, &w, &fifth, &fifth, n))?;
    steps.push(StepReport::modular(
        "imaginary-pair-to-base",
        "replacing (r±3ip)/5 by r/5 in the 4F3 changes it by a multiple of p^2",
        2,
        diff_valuation(&field, &f_a, &f_b, p),
    ));
    let (d_c, e_c) = (q(ratio(r + pi, 5)), q(ratio(r - pi, 5)));
    let f_c = eval_truncated(&field, &f43_with(&field, &w, &d_c, &e_c, n))?;
    steps.push(StepReport::modular(
        "base-to-real-pair",
        "replacing r/5 by (r±p)/5 in the 4F3 changes it by a multiple of p^2",
        2,
        diff_valuation(&field, &f_b, &f_c, p),
    ));

    // The shifted 4F3 is the Karlsson–Minton sum with these b and m.
    let b = [ratio(2 * r - 3 * pi, 5), ratio(r + 5, 10), ratio(5 - 3 * pi, 5)];
    let m = [((1 - r) / 2) as u64, ((2 * pi + r - 5) / 10) as u64, ((2 * pi + r - 5) / 5) as u64];
    let km = check_karlsson_minton(&Rationals, n, &b, &m)?;
    let km_witness = match f_c.as_rational() {
        Some(v) if v == km.lhs && km.holds => Valuation::Infinite,
        Some(v) => vp(&v, p),
        None => Valuation::Finite(0),
    };
    steps.push(StepReport::exact(
        "karlsson-minton-vanishing",
        format!("the real-pair 4F3 is the Karlsson-Minton sum with m = {m:?} < n = {n}, hence 0"),
        km_witness,
    ));

    steps.push(StepReport::modular(
        "transformed-series-divisible-by-p2",
        "the original 4F3 vanishes modulo p^2",
        2,
        f_a.valuation(p),
    ));
    steps.push(StepReport::modular(
        "assembled-product-divisible-by-p4",
        "prefactor times 4F3 vanishes modulo p^4",
        4,
        field.mul(&pre, &f_a).valuation(p),
    ));
    steps.push(StepReport::modular(
        "sum-divisible-by-p4",
        "the sum over k < p vanishes modulo p^4",
        4,
        vp(&sum, p),
    ));
    Ok(chain)
}
