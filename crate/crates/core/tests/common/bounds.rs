use hatguess::bounds::{layered_chain, outerplanar_bound, petunia_bound, verify_appendix_inequalities, Power, TowerValue};
use hatguess::composition::theorem25_bound;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::{lib, Check};

/// `(r l)^(r l^(r-1))`, the tree-partition bound written out.
pub fn tree_partition_closed_form(r: u32, l: u64) -> Power {
    Power::new(BigUint::from(r as u64 * l), BigUint::from(r as u64) * BigUint::from(l).pow(r - 1))
}

/// The outerplanar bound at `s = 1` as an integer below `2^125000`, the
/// layered chain at `s = 1` ending in a five-fold logarithm of 149, and the
/// appendix estimates up to `s = 20`.
pub fn headline() -> Check {
    let b = outerplanar_bound(1);
    ensure!(b == Power::new(219u32, 15987u32), "outerplanar bound at 1 is {b}");
    let value = BigUint::from(219u32).pow(15987);
    ensure!(value < BigUint::one() << 125_000u32, "219^15987 is not below 2^125000");
    ensure!(b.to_biguint(200_000) == Some(value), "expansion of {b} disagrees");
    let chain = lib(layered_chain(1), "layered chain")?;
    for e in &chain.entries {
        ensure!(e.holds, "layered chain at 1: {} upper {} is not below {}", e.name, e.upper, e.stated);
    }
    let last = chain.entries.last().ok_or("empty chain")?;
    let expected = lib(TowerValue::new(4, BigRational::from_integer(BigInt::one() << 149u32)), "tower")?;
    ensure!(last.name == "l1" && last.stated == expected, "chain ends at {} against {}", last.name, last.stated);
    ensure!(chain.five_fold_log == BigRational::from_integer(149.into()), "five-fold log is {}", chain.five_fold_log);
    let report = lib(verify_appendix_inequalities(20), "appendix")?;
    ensure!(report.all_hold(), "appendix estimates fail: {report:?}");
    Ok(())
}

/// Exact identities between the petunia, outerplanar and tree-partition
/// bounds for `1 <= s <= s_max`.
pub fn cross_identities(s_max: u64) -> Check {
    for s in 1..=s_max {
        let l = s * (s + 1) + 1;
        let p = petunia_bound(s);
        ensure!(p == lib(theorem25_bound(3, BigUint::from(l)), "bound")?, "s = {s}: petunia bound differs from the tree bound");
        ensure!(p == tree_partition_closed_form(3, l), "s = {s}: petunia bound differs from the closed form");
        let t = (s + 1).pow(3);
        let o = outerplanar_bound(s);
        ensure!(o == petunia_bound(t), "s = {s}: outerplanar bound differs from the petunia bound at {t}");
        ensure!(o == tree_partition_closed_form(3, t * (t + 1) + 1), "s = {s}: outerplanar bound differs from the closed form");
    }
    Ok(())
}

/// The chain holds at every `s` in `1..=s_max`.
pub fn chain_holds(s_max: u64) -> Check {
    for s in 1..=s_max {
        for e in &lib(layered_chain(s), format!("chain at {s}"))?.entries {
            ensure!(e.holds, "s = {s}: {} upper {} is not below {}", e.name, e.upper, e.stated);
        }
    }
    Ok(())
}
