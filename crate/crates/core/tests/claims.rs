use num_bigint::BigInt;
use proptest::prelude::*;
use sclab_core::claims::{
    admissible, lhs_value, proof_chain_thm1, proof_chain_thm2, rhs_residue, scan, verify, verify_at, ClaimId,
};
use sclab_core::padic::{congruent, reduce, vp, PadicContext};
use sclab_core::pgamma::gamma_p;
use sclab_core::rationals::{int, primes_in, ratio};

#[test]
fn thm2_closed_form_specialises_to_the_classical_cases() {
    for p in primes_in(5, 60) {
        let c = PadicContext::new(p, 5).unwrap();
        if admissible(ClaimId::Thm2, p, 1).admissible {
            let classical = reduce(&(-ratio(10, 27) * int(p as i64).pow(4)), &c)
                .unwrap()
                .mul(&gamma_p(&ratio(1, 3), &c).unwrap().pow(9));
            assert_eq!(rhs_residue(ClaimId::Thm2, p, 1, &c).unwrap(), classical, "p = {p}");
        }
        if admissible(ClaimId::Thm2, p, -1).admissible {
            let classical = reduce(&(int(140) * int(p as i64).pow(4)), &c)
                .unwrap()
                .mul(&gamma_p(&ratio(2, 3), &c).unwrap().pow(9));
            assert_eq!(rhs_residue(ClaimId::Thm2, p, -1, &c).unwrap(), classical, "p = {p}");
        }
    }
}

#[test]
fn d2_mod_p5_agrees_with_thm2_at_r_one() {
    for p in primes_in(5, 41).into_iter().filter(|p| p % 6 == 5) {
        let d2 = verify(ClaimId::D2, p, 0, Some(5)).unwrap();
        let thm2 = verify(ClaimId::Thm2, p, 1, None).unwrap();
        assert_eq!(d2.pass, thm2.pass, "p = {p}");
        assert!(d2.pass);
    }
}

#[test]
fn thm1_witness_and_perturbed_summand() {
    let out = scan(ClaimId::Thm1, 2, 80, &ClaimId::Thm1.default_r_set(), None).unwrap();
    assert!(!out.reports.is_empty());
    for rep in &out.reports {
        assert!(rep.witness.at_least(4), "{rep:?}");
    }
    // Adding p^3 to one summand leaves a difference of valuation exactly 3.
    for (p, r) in [(7, 1), (13, -1), (19, -3)] {
        let perturbed = lhs_value(ClaimId::Thm1, p, r) + int(p as i64).pow(3);
        let w = vp(&perturbed, p);
        assert!(!w.at_least(4), "({p},{r}) perturbed witness {w}");
    }
}

#[test]
fn conj3_holds_mod_p2_where_proved() {
    for r in ClaimId::Conj3.default_r_set() {
        for p in primes_in(7, 47) {
            if admissible(ClaimId::Conj3, p, r).admissible {
                let rep = verify(ClaimId::Conj3, p, r, Some(2)).unwrap();
                assert!(rep.pass, "({p},{r}): {rep:?}");
            }
        }
    }
}

#[test]
fn d2_fails_mod_p7_somewhere() {
    let failing = primes_in(5, 23).into_iter().find(|&p| !verify_at(ClaimId::D2, p, 0, 7).unwrap().pass);
    assert!(failing.is_some());
}

#[test]
fn proof_chains_at_the_listed_instances() {
    for (p, r) in [(7, 1), (13, -1), (19, -3)] {
        let chain = proof_chain_thm1(p, r).unwrap();
        assert!(chain.passed(), "{chain:#?}");
    }
    for (p, r) in [(5, 1), (7, -1), (13, -1), (11, -2)] {
        let chain = proof_chain_thm2(p, r).unwrap();
        assert!(chain.passed(), "{chain:#?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The verdict does not depend on which representative of the right side is used.
    #[test]
    fn congruence_is_representative_independent(
        p in prop::sample::select(vec![3u64, 5, 7, 11]),
        k in 1u32..6,
        a in -10_000i64..10_000,
        b in -10_000i64..10_000,
        t in -5i64..5,
    ) {
        let c = PadicContext::new(p, k).unwrap();
        let shifted = int(b) + int(t) * int(p as i64).pow(k as i32);
        let lifted = c.residue_signed(&BigInt::from(b)).lift();
        let base = congruent(&int(a), &int(b), &c);
        prop_assert_eq!(base.holds, congruent(&int(a), &shifted, &c).holds);
        prop_assert_eq!(base.holds, congruent(&int(a), &lifted, &c).holds);
    }
}
