mod common;

use std::cmp::Ordering;

use hatguess::bounds::TowerValue;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn tower() -> impl Strategy<Value = TowerValue> {
    (0u32..=5, 1i64..400, 1i64..50).prop_map(|(h, n, d)| {
        let top = BigRational::new(BigInt::from(n), BigInt::from(d));
        let top = if h > 0 && top < BigRational::from_integer(1.into()) { BigRational::from_integer(1.into()) } else { top };
        TowerValue::new(h, top).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn tower_order_is_total(a in tower(), b in tower(), c in tower()) {
        let ab = a.try_cmp(&b).unwrap();
        prop_assert_eq!(b.try_cmp(&a).unwrap(), ab.reverse());
        let bc = b.try_cmp(&c).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert!(a.try_cmp(&c).unwrap() != Ordering::Greater);
        }
        if ab == Ordering::Less && bc == Ordering::Less {
            prop_assert_eq!(a.try_cmp(&c).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn small_towers_agree_with_integers(h in 0u32..=2, top in 0u64..12, other in 0u64..100_000) {
        let t = TowerValue::new(h, BigRational::from_integer(top.into())).unwrap();
        let mut v = BigUint::from(top);
        for _ in 0..h {
            v = BigUint::from(1u32) << v.to_u64_digits().first().copied().unwrap_or(0);
        }
        let o = TowerValue::integer(BigInt::from(other));
        prop_assert_eq!(t.try_cmp(&o).unwrap(), v.cmp(&BigUint::from(other)));
    }
}

#[test]
fn bounds_agree_with_each_other_and_the_closed_form() {
    common::bounds::cross_identities(8).unwrap();
}

#[test]
fn headline_values() {
    common::bounds::headline().unwrap();
}

#[test]
fn layered_chain_holds_for_small_s() {
    common::bounds::chain_holds(12).unwrap();
}
