use isocrystal_lab::arith::{rat, Q};
use isocrystal_lab::weil::{albert_classify, honda_tate, AlbertType, WeilCase, WeilNumber};
use isocrystal_lab::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn flipped(s: &[Q]) -> Vec<Q> {
    s.iter().rev().map(|b| rat(1, 1) - b).collect()
}

fn isqrt_ceil(x: i64) -> i64 {
    (0..).find(|b| b * b >= x).unwrap()
}

proptest! {
    #[test]
    fn quadratic_invariants(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 1u32..5, t in 0.0f64..1.0) {
        let q = (p as i64).pow(n);
        let bound = isqrt_ceil(4 * q);
        let beta = -(bound - 1) + ((2 * bound - 1) as f64 * t) as i64;
        let w = WeilNumber::from_real_trace(beta, p, n).unwrap();
        prop_assert_eq!(w.case(), WeilCase::C);
        prop_assert_eq!(flipped(&w.root_slopes()), w.root_slopes());
        let ht = honda_tate(&w).unwrap();
        prop_assert_eq!(2 * ht.g, ht.e * ht.d);
        prop_assert_eq!(ht.slopes.len() as u32, 2 * ht.g);
        prop_assert_eq!(flipped(&ht.slopes), ht.slopes.clone());
        prop_assert_eq!(ht.slopes == vec![rat(0, 1), rat(1, 1)], beta % p as i64 != 0);
    }

    /// Random quartics `T⁴ + aT³ + bT² + qaT + q²`: every accepted one has
    /// symmetric slopes, and classification either succeeds with 2g = e·d or
    /// declines explicitly.
    #[test]
    fn quartic_invariants(p in prop::sample::select(vec![2u64, 3]), n in 1u32..4, a in -12i64..12, b in -40i64..40) {
        let q = (p as i64).pow(n);
        let coeffs: Vec<BigInt> = [1, a, b, q * a, q * q].into_iter().map(BigInt::from).collect();
        match WeilNumber::verify(&coeffs, p, n) {
            Ok(w) => {
                prop_assert_eq!(w.case(), WeilCase::C);
                prop_assert_eq!(flipped(&w.root_slopes()), w.root_slopes());
                match honda_tate(&w) {
                    Ok(ht) => {
                        prop_assert_eq!(2 * ht.g, ht.e * ht.d);
                        prop_assert!(ht.newton_polygon().is_ok());
                    }
                    Err(Error::PlaceResolutionUnsupported(_)) => {}
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }
            Err(Error::WeilRejected { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn case_classification_is_exclusive() {
    // T − 3 with q = 9 is real even, T² − 8 with q = 8 real odd, T² + 2 with
    // q = 2 non-real; each has exactly one case and the others reject it.
    let re = WeilNumber::verify(&[1, -3].map(BigInt::from), 3, 2).unwrap();
    let ro = WeilNumber::verify(&[1, 0, -8].map(BigInt::from), 2, 3).unwrap();
    let c = WeilNumber::verify(&[1, 0, 2].map(BigInt::from), 2, 1).unwrap();
    assert_eq!(
        [re.case(), ro.case(), c.case()],
        [WeilCase::Re, WeilCase::Ro, WeilCase::C]
    );
    // T² − 9 is reducible, T − 3 is not a 3-Weil number.
    assert!(WeilNumber::verify(&[1, 0, -9].map(BigInt::from), 3, 2).is_err());
    assert!(WeilNumber::verify(&[1, -3].map(BigInt::from), 3, 1).is_err());
}

#[test]
fn albert_examples() {
    assert_eq!(albert_classify(1, 1, 1, true, None).unwrap(), AlbertType::I(1));
    assert_eq!(albert_classify(1, 1, 2, true, Some(true)).unwrap(), AlbertType::III(1));
    assert_eq!(albert_classify(1, 1, 2, true, Some(false)).unwrap(), AlbertType::II(1));
    assert_eq!(albert_classify(1, 2, 1, false, None).unwrap(), AlbertType::IV(1, 1));
    assert!(albert_classify(1, 3, 1, false, None).is_err());
    assert!(albert_classify(1, 1, 3, true, None).is_err());
}

#[test]
fn documented_examples() {
    let w = WeilNumber::from_real_trace(0, 3, 1).unwrap();
    assert_eq!(w.minpoly(), [1, 0, 3].map(BigInt::from));
    assert_eq!(w.root_slopes(), vec![rat(1, 2), rat(1, 2)]);
    let w = WeilNumber::from_real_trace(5, 5, 2).unwrap();
    assert_eq!(w.root_slopes(), vec![rat(1, 2), rat(1, 2)]);
    assert!(WeilNumber::from_real_trace(5, 2, 2).is_err());
}
