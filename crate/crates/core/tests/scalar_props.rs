mod common;

use common::fixed_config;
use hopfg::scalar::CycNumber;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const MODULI: [u32; 4] = [8, 12, 18, 24];

fn cyc(modulus: u32) -> impl Strategy<Value = CycNumber> {
    proptest::collection::vec((-6i64..=6, 1i64..=4), modulus as usize).prop_map(move |cs| {
        let coeffs: Vec<BigRational> = cs
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        CycNumber::from_coeffs(modulus, &coeffs)
    })
}

fn triple() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
    proptest::sample::select(MODULI.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs() + a.1.abs();
    (a.0 - b.0).abs() < 1e-9 * scale && (a.1 - b.1).abs() < 1e-9 * scale
}

proptest! {
    #![proptest_config(fixed_config(1200, 0x5ca1a2))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        let n = x.modulus();
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &CycNumber::zero(n), x.clone());
        prop_assert_eq!(&x * &CycNumber::one(n), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &(-&x), CycNumber::zero(n));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!(x.try_div(&x).unwrap(), CycNumber::one(n));
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn complex_embedding_is_a_ring_map((x, y, _z) in triple()) {
        let (a, b) = (x.to_complex(), y.to_complex());
        let s = (&x + &y).to_complex();
        let p = (&x * &y).to_complex();
        prop_assert!(close(s, (a.0 + b.0, a.1 + b.1)));
        prop_assert!(close(p, (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)));
        let c = x.conj().to_complex();
        prop_assert!(close(c, (a.0, -a.1)));
    }

    #[test]
    fn conjugation_and_embedding_are_homomorphisms((x, y, _z) in triple()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        let target = 2 * x.modulus();
        let (ex, ey) = (x.embed(target).unwrap(), y.embed(target).unwrap());
        prop_assert_eq!((&x * &y).embed(target).unwrap(), &ex * &ey);
        prop_assert_eq!((&x + &y).embed(target).unwrap(), &ex + &ey);
    }

    #[test]
    fn roots_of_unity_compose(n in proptest::sample::select(MODULI.to_vec()), j in -50i64..50, k in -50i64..50) {
        let z = |e| CycNumber::root_of_unity(n, e);
        prop_assert_eq!(&z(j) * &z(k), z(j + k));
        prop_assert!(z(n as i64 * j).is_one());
        prop_assert_eq!(z(1).pow(k).unwrap(), z(k));
    }
}
