use proptest::prelude::*;
use sclab_core::claims::{admissible, ClaimId};
use sclab_core::qring::{verify_q_conjecture, verify_q_conjecture_shifted, QPolynomial, QRing, QVerdict};

#[test]
fn listed_instances_hold_by_both_methods() {
    for (p, r) in [(2, 1), (7, 1), (17, 1), (3, -1), (13, -1), (23, -1)] {
        if !admissible(ClaimId::Thm1, p, r).admissible {
            continue;
        }
        let rep = verify_q_conjecture(p, r).unwrap();
        assert!(rep.ring_zero && rep.cleared_divisible, "{rep:?}");
        assert_eq!(rep.verdict, QVerdict::Holds);
    }
}

#[test]
fn perturbed_exponent_is_detected() {
    let caught = [(7, 1), (13, -1)]
        .into_iter()
        .map(|(p, r)| verify_q_conjecture_shifted(p, r, 1).unwrap())
        .filter(|rep| rep.verdict == QVerdict::ConjectureViolated)
        .count();
    assert!(caught >= 1);
}

fn element(p: u64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..9, 0..(4 * (p as usize - 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        x in element(5), y in element(5), z in element(5),
    ) {
        let ring = QRing::standard(5).unwrap();
        let (x, y, z) = (
            ring.element(&QPolynomial::from_ints(&x)),
            ring.element(&QPolynomial::from_ints(&y)),
            ring.element(&QPolynomial::from_ints(&z)),
        );
        prop_assert_eq!(ring.mul(&x, &y).unwrap(), ring.mul(&y, &x).unwrap());
        let left = ring.mul(&ring.mul(&x, &y).unwrap(), &z).unwrap();
        let right = ring.mul(&x, &ring.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn screened_q_pochhammer_values_are_invertible(
        p in prop::sample::select(vec![3u64, 7, 11]),
        a in -12i64..12,
        step in 1u64..7,
        k in 0u64..5,
    ) {
        let ring = QRing::standard(p).unwrap();
        if let Ok(v) = ring.q_pochhammer(a, step, k) {
            let inv = ring.inverse(&v).unwrap();
            prop_assert_eq!(ring.mul(&v, &inv).unwrap(), ring.one());
        }
    }
}
