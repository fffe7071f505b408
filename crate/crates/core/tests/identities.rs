use proptest::prelude::*;
use sclab_core::claims::{proof_chain_thm1, proof_chain_thm2, ClaimError};
use sclab_core::hyperkernel::{conjugate_product_congruence, fuzz_identity, IdentityName};
use sclab_core::rationals::ratio;

#[test]
fn seeded_fuzzing_of_each_identity() {
    for name in [IdentityName::Whipple, IdentityName::KarlssonMinton, IdentityName::D1] {
        let trials = fuzz_identity(name, 20240601, 200);
        assert_eq!(trials.len(), 200);
        let failed: Vec<_> = trials.iter().filter(|t| !t.holds).collect();
        assert!(failed.is_empty(), "{name}: {failed:#?}");
    }
}

#[test]
fn fuzzing_is_reproducible() {
    assert_eq!(fuzz_identity(IdentityName::D1, 7, 25), fuzz_identity(IdentityName::D1, 7, 25));
    assert_ne!(fuzz_identity(IdentityName::D1, 7, 25), fuzz_identity(IdentityName::D1, 8, 25));
}

#[test]
fn whipple_specialisation_over_gaussian_rationals() {
    for (p, r) in [(7, 1), (13, -1)] {
        let chain = proof_chain_thm1(p, r).unwrap();
        let step = chain.step("whipple-instance").unwrap();
        assert!(step.pass, "({p},{r}): {step:?}");
    }
}

#[test]
fn shifted_transformation_specialisation_over_q_zeta5() {
    for (p, r) in [(5, 1), (7, -1), (13, -1)] {
        let chain = proof_chain_thm2(p, r).unwrap();
        let step = chain.step("transformation-instance").unwrap();
        assert!(step.pass, "({p},{r}): {step:?}");
    }
    // n = (2p - r)/3 is not an integer here.
    assert!(matches!(proof_chain_thm2(11, -1), Err(ClaimError::Inadmissible { .. })));
}

fn small_ratio() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..40, 1i64..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn conjugate_products_order_four(
        a in small_ratio(),
        b in small_ratio(),
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
        k in 0u64..8,
    ) {
        prop_assume!(a.1 % p as i64 != 0 && b.1 % p as i64 != 0);
        let check = conjugate_product_congruence(&ratio(a.0, a.1), &ratio(b.0, b.1), p, k, 4).unwrap();
        prop_assert!(check.holds(), "{check:?}");
        prop_assert_eq!(check.pairs.len(), 2);
    }

    #[test]
    fn conjugate_products_order_five(
        a in small_ratio(),
        b in small_ratio(),
        p in prop::sample::select(vec![3u64, 7, 11, 13]),
        k in 0u64..7,
    ) {
        prop_assume!(a.1 % p as i64 != 0 && b.1 % p as i64 != 0);
        let check = conjugate_product_congruence(&ratio(a.0, a.1), &ratio(b.0, b.1), p, k, 5).unwrap();
        prop_assert!(check.holds(), "{check:?}");
    }
}
