mod common;

use common::{agree, inverse_round_trip, ring_axioms, series, unit};
use proptest::prelude::*;
use qshelf::partitions::{enumerate, violations, PartitionConstraint};
use qshelf::{Family, Series};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(ring_axioms(&a, &b, &c), Ok(()));
    }

    #[test]
    fn inverse(u in unit()) {
        prop_assert_eq!(inverse_round_trip(&u), Ok(()));
    }

    #[test]
    fn mul_matches_convolution(a in series(), b in series()) {
        let prod = &a * &b;
        let p = prod.precision().min(40);
        for n in prod.valuation().min(p)..p {
            let mut expect = num_bigint::BigInt::from(0);
            for (e, c) in a.terms() {
                if let Some(d) = b.coeff(n - e) {
                    expect += c * d;
                }
            }
            prop_assert_eq!(prod.coeff(n), Some(expect), "q^{}", n);
        }
    }

    #[test]
    fn dump_round_trip(a in series()) {
        let back = Series::parse_dump(&a.dump()).unwrap();
        prop_assert!(agree(&a, &back));
    }

    #[test]
    fn shift_is_monomial_product(a in series(), m in -6i64..=6) {
        prop_assert!(agree(&a.shift(m), &(&a * &Series::q_pow(m))));
    }

    #[test]
    fn truncation_commutes_with_add(a in series(), b in series(), p in 0i64..=20) {
        prop_assert!(agree(&(&a + &b).truncate(p), &(&a.truncate(p) + &b.truncate(p))));
    }

    #[test]
    fn enumerated_partitions_are_sound(
        gordon in prop::bool::ANY,
        k in 2i64..=4,
        i_seed in 0i64..4,
        big_j in 0i64..=2,
        n in 0i64..=24,
    ) {
        let family = if gordon { Family::Gordon } else { Family::Gga };
        let i = 1 + i_seed % k;
        let c = PartitionConstraint::new(family, k, i, big_j).unwrap();
        for p in enumerate(&c, n) {
            prop_assert_eq!(p.iter().sum::<i64>(), n);
            prop_assert!(violations(&c, &p).is_empty(), "{:?}", p);
        }
    }
}
