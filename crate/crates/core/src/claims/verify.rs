use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{admissible, lhs_value, rhs_form, ClaimError, ClaimId};
use crate::padic::{congruent, reduce, PadicContext, Valuation};
use crate::rationals::primes_in;

/// One checked instance of a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub claim: ClaimId,
    pub p: u64,
    /// `None` for families without an `r` parameter.
    pub r: Option<i64>,
    pub modulus_exponent: u32,
    pub case_label: String,
    pub lhs_residue: BigUint,
    pub rhs_residue: BigUint,
    /// `v_p(lhs - rhs)` with the right side lifted to its canonical
    /// representative in `[0, p^k)`.
    pub witness: Valuation,
    pub pass: bool,
    pub elapsed: Duration,
}

impl CongruenceReport {
    /// `holds`, `violated`, or `conjecture violated` for conjectural families.
    pub fn verdict(&self) -> &'static str {
        match (self.pass, self.claim.is_conjecture()) {
            (true, _) => "holds",
            (false, false) => "violated",
            (false, true) => "conjecture violated",
        }
    }
}

/// Verifies one admissible instance at the family's exponent, or at a lower
/// `exponent` if given. Raising the exponent is refused.
pub fn verify(claim: ClaimId, p: u64, r: i64, exponent: Option<u32>) -> Result<CongruenceReport, ClaimError> {
    let default = claim.default_exponent();
    let k = match exponent {
        Some(k) if k > default => {
            return Err(ClaimError::ExponentAboveDefault { claim, requested: k, default })
        }
        Some(k) => k,
        None => default,
    };
    verify_at(claim, p, r, k)
}

/// Like [`verify`] but at an arbitrary exponent, for exploring how far a
/// congruence extends (for instance showing that it stops holding).
pub fn verify_at(claim: ClaimId, p: u64, r: i64, k: u32) -> Result<CongruenceReport, ClaimError> {
    let verdict = admissible(claim, p, r);
    if !verdict.admissible {
        return Err(ClaimError::Inadmissible { claim, p, r, reason: verdict.reason });
    }
    if p == 2 && matches!(claim, ClaimId::Thm2) {
        return Err(ClaimError::DeferredToManualCheck);
    }
    let start = Instant::now();
    let ctx = PadicContext::new(p, k)?;
    let lhs = lhs_value(claim, p, r);
    let form = rhs_form(claim, p, r);
    let rhs = form.residue(&ctx)?;
    let check = congruent(&lhs, &rhs.lift(), &ctx);
    Ok(CongruenceReport {
        claim,
        p,
        r: claim.takes_r().then_some(r),
        modulus_exponent: k,
        case_label: form.case_label,
        lhs_residue: reduce(&lhs, &ctx)?.value().clone(),
        rhs_residue: rhs.value().clone(),
        witness: check.witness,
        pass: check.holds,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanOutcome {
    /// Sorted by `(p, r)`.
    pub reports: Vec<CongruenceReport>,
    pub inadmissible: usize,
    /// Instances excluded from automated checking (thm2 at p = 2).
    pub deferred: usize,
}

impl ScanOutcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// Verifies every admissible `(p, r)` with `p_min <= p <= p_max` and `r` in
/// `r_set` (ignored for families without `r`). Instances run on the current
/// rayon pool; the result does not depend on the pool size.
pub fn scan(
    claim: ClaimId,
    p_min: u64,
    p_max: u64,
    r_set: &[i64],
    exponent: Option<u32>,
) -> Result<ScanOutcome, ClaimError> {
    let mut rs: Vec<i64> = if claim.takes_r() { r_set.to_vec() } else { vec![0] };
    rs.sort_unstable();
    rs.dedup();
    let candidates: Vec<(u64, i64)> = primes_in(p_min, p_max)
        .into_iter()
        .flat_map(|p| rs.iter().map(move |&r| (p, r)))
        .collect();
    let results: Vec<Result<CongruenceReport, ClaimError>> = candidates
        .par_iter()
        .map(|&(p, r)| verify(claim, p, r, exponent))
        .collect();
    let mut outcome = ScanOutcome::default();
    for res in results {
        match res {
            Ok(report) => outcome.reports.push(report),
            Err(ClaimError::Inadmissible { .. }) => outcome.inadmissible += 1,
            Err(ClaimError::DeferredToManualCheck) => outcome.deferred += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm1_instances() {
        let rep = verify(ClaimId::Thm1, 7, 1, None).unwrap();
        assert!(rep.pass);
        assert!(rep.witness.at_least(4));
        assert_eq!(rep.r, Some(1));
        assert!(verify(ClaimId::Thm1, 19, -3, None).unwrap().pass);
    }

    #[test]
    fn d2_at_eleven() {
        let rep = verify(ClaimId::D2, 11, 0, None).unwrap();
        assert_eq!(rep.case_label, "p=5 mod 6");
        assert_eq!(rep.modulus_exponent, 6);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.r, None);
    }

    #[test]
    fn lowering_is_allowed_raising_is_not() {
        assert_eq!(verify(ClaimId::Thm1, 7, 1, Some(2)).unwrap().modulus_exponent, 2);
        assert_eq!(
            verify(ClaimId::Thm1, 7, 1, Some(5)),
            Err(ClaimError::ExponentAboveDefault { claim: ClaimId::Thm1, requested: 5, default: 4 })
        );
    }

    #[test]
    fn inadmissible_and_deferred() {
        assert!(matches!(verify(ClaimId::Thm1, 3, 1, None), Err(ClaimError::Inadmissible { .. })));
        assert_eq!(verify(ClaimId::Thm2, 2, 1, None), Err(ClaimError::DeferredToManualCheck));
    }

    #[test]
    fn scan_lr3_small() {
        let out = scan(ClaimId::Lr3, 2, 10, &[], None).unwrap();
        let ps: Vec<u64> = out.reports.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![3, 5, 7]);
        assert!(out.all_pass());
        assert_eq!(out.inadmissible, 1); // p = 2
    }

    #[test]
    fn scan_thm1_membership_follows_predicate() {
        let rs = [1, -1, -3];
        let out = scan(ClaimId::Thm1, 2, 30, &rs, None).unwrap();
        let got: Vec<(u64, i64)> = out.reports.iter().map(|r| (r.p, r.r.unwrap())).collect();
        let mut expected = Vec::new();
        for p in primes_in(2, 30) {
            for r in [-3, -1, 1] {
                if admissible(ClaimId::Thm1, p, r).admissible {
                    expected.push((p, r));
                }
            }
        }
        assert_eq!(got, expected);
        assert!(got.contains(&(7, 1)) && got.contains(&(13, -1)) && got.contains(&(19, -3)));
        assert!(out.all_pass());
    }
}
