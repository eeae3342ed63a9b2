//! Exact evaluation of the bound formulas: symbolic powers, iterated
//! exponentials and the appendix estimates.

use std::fmt;

use num_bigint::BigUint;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub mod tower;

pub use tower::TowerValue;

use crate::error::Result;
use tower::{add, add_const, log2_tower, log2_ub, mul_const, rat};

/// Exact value `base^exponent`, kept symbolic because the exponents of
/// interest reach billions.
///
/// Canonical form: `base` is not a perfect power (or is 0 or 1, with
/// exponent 1), so two values are equal iff their fields are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Power {
    base: BigUint,
    exponent: BigUint,
}

impl Power {
    pub fn new(base: impl Into<BigUint>, exponent: impl Into<BigUint>) -> Self {
        let mut base = base.into();
        let mut exponent = exponent.into();
        if exponent.is_zero() || base.is_one() {
            return Power { base: BigUint::one(), exponent: BigUint::one() };
        }
        if base.is_zero() {
            return Power { base, exponent: BigUint::one() };
        }
        loop {
            let mut reduced = false;
            let bits = base.bits() as u32;
            for j in (2..=bits).rev() {
                let root = base.nth_root(j);
                if root.pow(j) == base {
                    base = root;
                    exponent *= j;
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                return Power { base, exponent };
            }
        }
    }

    pub fn integer(v: impl Into<BigUint>) -> Self {
        Power::new(v, 1u32)
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    /// Upper bound on the bit length of the value.
    pub fn bit_bound(&self) -> BigUint {
        &self.exponent * BigUint::from(self.base.bits())
    }

    /// The exact integer, if its bit length is at most `max_bits`.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        if self.bit_bound() > BigUint::from(max_bits) {
            return None;
        }
        Some(self.base.pow(self.exponent.to_u32()?))
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_one() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.exponent)
        }
    }
}

/// The r = 3 tree-partition bound at ℓ = s(s+1)+1: `(3s²+3s+3)^(3(s²+s+1)²)`.
pub fn petunia_bound(s: u64) -> Power {
    let l = BigUint::from(s) * BigUint::from(s + 1) + 1u32;
    Power::new(BigUint::from(3u32) * &l, BigUint::from(3u32) * &l * &l)
}

/// [`petunia_bound`] at the inflated guess count `(s+1)^3`.
pub fn outerplanar_bound(s: u64) -> Power {
    let t = BigUint::from(s + 1).pow(3);
    let l = &t * &t + &t + 1u32;
    Power::new(BigUint::from(3u32) * &l, BigUint::from(3u32) * &l * &l)
}

/// The guess count `3^(2(6^g−1)) · s^(6^g)` after peeling `g` handles.
pub fn genus_bound_param(g: u32, s: u64) -> BigUint {
    let six = BigUint::from(6u32).pow(g);
    let e3 = ((&six - 1u32) * 2u32).to_u32().expect("genus too large");
    let es = six.to_u32().expect("genus too large");
    BigUint::from(3u32).pow(e3) * BigUint::from(s).pow(es)
}

/// One quantity of the layered planar chain: a certified upper bound and the
/// closed-form bound it is checked against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainEntry {
    pub name: String,
    pub upper: TowerValue,
    pub stated: TowerValue,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayeredChain {
    pub s: u64,
    pub l5: BigUint,
    pub s4: BigUint,
    /// `l4 - 1` exactly.
    pub l4_minus_one: Power,
    pub entries: Vec<ChainEntry>,
    /// Upper bound on the five-fold base-2 logarithm of `l1`.
    pub five_fold_log: BigRational,
}

fn big(x: &BigUint) -> BigRational {
    rat(BigInt::from(x.clone()))
}

/// `s · t^e` for `t ≥ 1`.
fn scaled_power(s: u64, e: u32, t: &TowerValue) -> Result<TowerValue> {
    let inner = mul_const(&rat(e), &log2_tower(t)?)?;
    add_const(&log2_ub(&rat(s)), &inner)?.exp2()
}

/// Upper bound on `(3(x+1)^6+3(x+1)^3+3)^(3((x+1)^6+(x+1)^3+1)^2) + 1` for
/// `1 ≤ x ≤ t`, through `log2 log2 ≤ log2(27·2^12) + 12 log2 x + log2(log2 577 + 6 log2 x)`.
fn outerplanar_tower(t: &TowerValue) -> Result<TowerValue> {
    let lambda = log2_tower(t)?;
    let a = mul_const(&rat(12), &lambda)?;
    let inner = add_const(&log2_ub(&rat(577)), &mul_const(&rat(6), &lambda)?)?;
    let b = log2_tower(&inner)?;
    let loglog = add_const(&log2_ub(&rat(27 * 4096)), &add(&a, &b)?)?;
    loglog.exp2()?.exp2()
}

/// The values `l5, s4, l4, s3, l3, s2, l2, s1, l1` of the layered planar
/// bound, each past `s4` as a certified upper bound compared against the
/// closed forms `2^(2^138 s^30)`, `2^(2^141 s^35)`, …, `2^2^2^2^(2^149 s^35)`.
pub fn layered_chain(s: u64) -> Result<LayeredChain> {
    if s == 0 {
        return Err(crate::error::HatError::Parameter("s must be at least 1".into()));
    }
    let l5 = BigUint::from(20u32) * s;
    let s4 = BigUint::from(s) * l5.pow(6);
    let q = &s4 * &s4 + &s4 + 1u32;
    let x = BigUint::from(3u32) * &q;
    let y = BigUint::from(3u32) * &q * &q;
    let l4_minus_one = Power::new(x.clone(), y.clone());
    let l4 = TowerValue::new(1, big(&y) * log2_ub(&big(&(&x + 1u32))))?;
    let s3 = scaled_power(s, 6, &l4)?;
    let l3 = outerplanar_tower(&s3)?;
    let s2 = scaled_power(s, 6, &l3)?;
    let l2 = outerplanar_tower(&s2)?;
    let s1 = scaled_power(s, 5, &l2)?;
    let l1 = outerplanar_tower(&s1)?;
    let sb = BigUint::from(s);
    let stated = |h: u32, c: u32, e: u32| TowerValue::new(h, big(&((BigUint::one() << c) * sb.pow(e))));
    let rows = [
        ("l4", l4, stated(1, 138, 30)?),
        ("s3", s3, stated(1, 141, 35)?),
        ("l3", l3, stated(2, 145, 35)?),
        ("s2", s2, stated(2, 146, 35)?),
        ("l2", l2, stated(3, 147, 35)?),
        ("s1", s1, stated(3, 148, 35)?),
        ("l1", l1, stated(4, 149, 35)?),
    ];
    let mut entries = Vec::new();
    for (name, upper, stated) in rows {
        let holds = upper.lt(&stated)?;
        entries.push(ChainEntry { name: name.into(), upper, stated, holds });
    }
    let five_fold_log = rat(149) + rat(35) * log2_ub(&rat(s));
    Ok(LayeredChain { s, l5, s4, l4_minus_one, entries, five_fold_log })
}

/// How an appendix inequality was settled at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    /// Both sides expanded as integers.
    Exact,
    /// Certified rational upper bound on the base-2 logarithm.
    Logarithmic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AppendixRow {
    pub s: u64,
    pub petunia_estimate: bool,
    pub petunia_method: CheckMethod,
    pub outerplanar_estimate: bool,
    pub outerplanar_method: CheckMethod,
    /// `log2 l4 < (3 s4)^5 = 3^5 2^60 5^30 s^35`.
    pub l4_log: bool,
    /// `log2 s3 < 2^141 s^35`.
    pub s3_log: bool,
    /// `13 log2 3 + 13 log2 s3 < 2^145 s^35`.
    pub l3_loglog: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AppendixReport {
    /// `3^5 · 2^60 · 5^30 < 2^138`.
    pub constant: bool,
    pub rows: Vec<AppendixRow>,
}

impl AppendixReport {
    pub fn all_hold(&self) -> bool {
        self.constant
            && self.rows.iter().all(|r| r.petunia_estimate && r.outerplanar_estimate && r.l4_log && r.s3_log && r.l3_loglog)
    }
}

/// Largest `exponent · bits(base)` expanded exactly.
pub const EXACT_BITS: u64 = 1 << 21;

/// Decides `x^y + 1 < 2^e`.
fn power_below_pow2(x: &BigUint, y: &BigUint, e: &BigUint) -> (bool, CheckMethod) {
    let bits = y.to_u64().map(|y| y.saturating_mul(x.bits()));
    if let (Some(b), Some(yy), Some(ee)) = (bits, y.to_u32(), e.to_u64()) {
        if b <= EXACT_BITS {
            let lhs = x.pow(yy) + 1u32;
            return (lhs.bits() <= ee && lhs != BigUint::one() << ee, CheckMethod::Exact);
        }
    }
    // x^y + 1 ≤ (x+1)^y ≤ 2^(y · ub) < 2^e
    let ub = big(y) * log2_ub(&big(&(x + 1u32)));
    (ub < big(e), CheckMethod::Logarithmic)
}

/// Checks the two estimates `(3s²+3s+3)^(3(s²+s+1)²) + 1 < 2^((3s)^5)` and
/// `(3(s+1)^6+3(s+1)^3+3)^(3((s+1)^6+(s+1)^3+1)^2) + 1 < 2^((3s)^13)` for every
/// `s ≤ s_max`, with the chain steps that use them.
pub fn verify_appendix_inequalities(s_max: u64) -> Result<AppendixReport> {
    let constant = BigUint::from(3u32).pow(5) * (BigUint::one() << 60u32) * BigUint::from(5u32).pow(30)
        < BigUint::one() << 138u32;
    let mut rows = Vec::new();
    for s in 1..=s_max {
        let sb = BigUint::from(s);
        let q = &sb * &sb + &sb + 1u32;
        let (petunia_estimate, petunia_method) =
            power_below_pow2(&(BigUint::from(3u32) * &q), &(BigUint::from(3u32) * &q * &q), &(BigUint::from(3 * s).pow(5)));
        let t = (&sb + 1u32).pow(3);
        let q = &t * &t + &t + 1u32;
        let (outerplanar_estimate, outerplanar_method) =
            power_below_pow2(&(BigUint::from(3u32) * &q), &(BigUint::from(3u32) * &q * &q), &(BigUint::from(3 * s).pow(13)));
        let s4 = BigUint::from(20u32).pow(6) * sb.pow(7);
        let bound4 = (BigUint::from(3u32) * &s4).pow(5);
        let identity = bound4 == BigUint::from(3u32).pow(5) * (BigUint::one() << 60u32) * BigUint::from(5u32).pow(30) * sb.pow(35);
        let q4 = &s4 * &s4 + &s4 + 1u32;
        let (x4, y4) = (BigUint::from(3u32) * &q4, BigUint::from(3u32) * &q4 * &q4);
        let l4_log = identity && big(&y4) * log2_ub(&big(&(&x4 + 1u32))) < big(&bound4);
        let log_s3 = log2_ub(&rat(s)) + rat(6) * big(&bound4);
        let c141 = big(&((BigUint::one() << 141u32) * sb.pow(35)));
        let s3_log = log_s3 < c141;
        let c145 = big(&((BigUint::one() << 145u32) * sb.pow(35)));
        let l3_loglog = rat(13) * log2_ub(&rat(3)) + rat(13) * &c141 < c145;
        rows.push(AppendixRow {
            s,
            petunia_estimate,
            petunia_method,
            outerplanar_estimate,
            outerplanar_method,
            l4_log,
            s3_log,
            l3_loglog,
        });
    }
    Ok(AppendixReport { constant, rows })
}
