//! Property tests for the exact scalar layer: field axioms, Galois
//! composition, embedding homomorphism, root-of-unity certification.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use tqftrep::cyclo::{euler_phi, gcd_u64, CycloScalar};

const M: u64 = 20;

fn scalar_strategy(m: u64) -> impl Strategy<Value = CycloScalar> {
    let phi = euler_phi(m) as usize;
    prop::collection::vec((-9i64..=9, 1i64..=6), phi).prop_map(move |coords| {
        let rat: Vec<BigRational> = coords
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        CycloScalar::from_coords(m, &rat).expect("valid coordinates")
    })
}

fn unit_strategy(m: u64) -> impl Strategy<Value = u64> {
    (1..m).prop_filter("coprime", move |t| gcd_u64(*t, m) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn multiplicative_inverse_is_exact(x in scalar_strategy(M)) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn addition_and_multiplication_commute_and_associate(
        x in scalar_strategy(M),
        y in scalar_strategy(M),
        z in scalar_strategy(M),
    ) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn galois_composition(
        xs in prop::collection::vec(scalar_strategy(M), 10),
        t in unit_strategy(M),
        u in unit_strategy(M),
    ) {
        for x in xs {
            let lhs = x.galois(u).unwrap().galois(t).unwrap();
            let rhs = x.galois((t * u) % M).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn galois_is_a_ring_map(
        x in scalar_strategy(M),
        y in scalar_strategy(M),
        t in unit_strategy(M),
    ) {
        prop_assert_eq!(x.add(&y).galois(t).unwrap(), x.galois(t).unwrap().add(&y.galois(t).unwrap()));
        prop_assert_eq!(x.mul(&y).galois(t).unwrap(), x.galois(t).unwrap().mul(&y.galois(t).unwrap()));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(
        x in scalar_strategy(M),
        y in scalar_strategy(M),
        k in unit_strategy(M),
    ) {
        let ex = x.embed(k).unwrap();
        let ey = y.embed(k).unwrap();
        let sum = x.add(&y).embed(k).unwrap();
        let prod = x.mul(&y).embed(k).unwrap();
        // Inputs have coordinates of magnitude <= 9, so absolute tolerance
        // 1e-12 follows from the relative bound.
        prop_assert!((sum - (ex + ey)).norm() < 1e-12);
        prop_assert!((prod - ex * ey).norm() < 1e-12);
    }

    #[test]
    fn root_of_unity_order_is_certified(s in unit_strategy(M), k in 1u64..40) {
        // Random elements of the root group generated by -1 and zeta_m.
        let x = CycloScalar::primitive_root(M, s)
            .unwrap()
            .pow(k as i64)
            .unwrap();
        let n = x.root_of_unity_order().unwrap().expect("a power of a root");
        prop_assert!(x.pow(n as i64).unwrap().is_one());
        for d in 1..n {
            if n % d == 0 {
                prop_assert!(!x.pow(d as i64).unwrap().is_one(), "divisor {d} of {n}");
            }
        }
    }

    #[test]
    fn non_roots_are_rejected(x in scalar_strategy(M)) {
        prop_assume!(!x.is_zero());
        if let Some(n) = x.root_of_unity_order().unwrap() {
            prop_assert!(x.pow(n as i64).unwrap().is_one());
        } else {
            // Spot-check the certificate: the group of roots of unity in
            // Q(zeta_20) has order 20.
            prop_assert!(!x.pow(20).unwrap().is_one());
        }
    }
}
