//! Iterated powers of two with an exact rational on top, compared exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HatError, Result};

/// Precision ceiling (fractional bits of log2) before a comparison gives up.
pub const MAX_PRECISION: u32 = 1 << 14;

/// `2^2^…^2^top` with `height` twos; height 0 is `top` itself.
///
/// For height at least 1 the top is at least 1; integer tops small enough
/// to expand are lowered into the next height down.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TowerDoc", into = "TowerDoc")]
pub struct TowerValue {
    height: u32,
    top: BigRational,
}

#[derive(Serialize, Deserialize)]
struct TowerDoc {
    height: u32,
    top: String,
}

impl TryFrom<TowerDoc> for TowerValue {
    type Error = HatError;

    fn try_from(d: TowerDoc) -> Result<Self> {
        let top: BigRational = d.top.parse().map_err(|_| HatError::Input(format!("bad rational {}", d.top)))?;
        TowerValue::new(d.height, top)
    }
}

impl From<TowerValue> for TowerDoc {
    fn from(t: TowerValue) -> Self {
        TowerDoc { height: t.height, top: t.top.to_string() }
    }
}

/// Largest integer top expanded when normalizing.
const EXPAND_LIMIT: i64 = 64;

impl TowerValue {
    pub fn new(height: u32, top: BigRational) -> Result<Self> {
        let mut t = TowerValue { height, top };
        while t.height > 0 && t.top.is_integer() && t.top.to_integer() <= BigInt::from(EXPAND_LIMIT) {
            let e = t.top.to_integer().to_i64().unwrap();
            t.top = pow2(e);
            t.height -= 1;
        }
        if t.height > 0 && t.top < BigRational::one() {
            return Err(HatError::Parameter(format!("tower top {} below 1 at height {}", t.top, t.height)));
        }
        Ok(t)
    }

    pub fn rational(x: BigRational) -> Self {
        TowerValue { height: 0, top: x }
    }

    pub fn integer(x: impl Into<BigInt>) -> Self {
        TowerValue::rational(BigRational::from_integer(x.into()))
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn top(&self) -> &BigRational {
        &self.top
    }

    /// `2^self`.
    pub fn exp2(&self) -> Result<Self> {
        TowerValue::new(self.height + 1, self.top.clone())
    }

    /// The exact value when it is a rational of at most `max_bits` bits.
    pub fn to_rational(&self, max_bits: u64) -> Option<BigRational> {
        let mut v = self.top.clone();
        for _ in 0..self.height {
            if !v.is_integer() || v > BigRational::from_integer(BigInt::from(max_bits)) {
                return None;
            }
            v = pow2(v.to_integer().to_i64()?);
        }
        Some(v)
    }

    /// Exact comparison; fails only when two values agree to
    /// [`MAX_PRECISION`] bits without being provably equal.
    pub fn try_cmp(&self, other: &TowerValue) -> Result<Ordering> {
        match self.height.cmp(&other.height) {
            Ordering::Equal => Ok(self.top.cmp(&other.top)),
            Ordering::Greater => cmp_with_rational(self.height - other.height, &self.top, &other.top),
            Ordering::Less => Ok(cmp_with_rational(other.height - self.height, &other.top, &self.top)?.reverse()),
        }
    }

    pub fn lt(&self, other: &TowerValue) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &TowerValue) -> Result<bool> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }
}

impl PartialEq for TowerValue {
    fn eq(&self, other: &Self) -> bool {
        self.try_cmp(other) == Ok(Ordering::Equal)
    }
}

impl PartialOrd for TowerValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.height {
            write!(f, "2^")?;
        }
        if self.height > 0 {
            write!(f, "({})", self.top)
        } else {
            write!(f, "{}", self.top)
        }
    }
}

fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `Some(k)` when `x = 2^k`.
fn exact_log2(x: &BigRational) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let (n, d) = (x.numer().magnitude(), x.denom().magnitude());
    let is_pow2 = |v: &BigUint| v.count_ones() == 1;
    if !is_pow2(n) || !is_pow2(d) {
        return None;
    }
    Some(n.bits() as i64 - d.bits() as i64)
}

/// Compares `T(h, a)` with the rational `b`, `h ≥ 1`.
fn cmp_with_rational(h: u32, a: &BigRational, b: &BigRational) -> Result<Ordering> {
    if h == 0 {
        return Ok(a.cmp(b));
    }
    if !b.is_positive() {
        return Ok(Ordering::Greater);
    }
    if let Some(k) = exact_log2(b) {
        return cmp_with_rational(h - 1, a, &BigRational::from_integer(BigInt::from(k)));
    }
    // log2 b is irrational here, so it lies strictly inside every bracket
    let mut prec = 32;
    while prec <= MAX_PRECISION {
        let (lo, hi) = log2_bounds(b, prec);
        if cmp_with_rational(h - 1, a, &lo)? != Ordering::Greater {
            return Ok(Ordering::Less);
        }
        if cmp_with_rational(h - 1, a, &hi)? != Ordering::Less {
            return Ok(Ordering::Greater);
        }
        prec *= 2;
    }
    Err(HatError::Budget { nodes: MAX_PRECISION as u64, reason: "tower comparison precision".into() })
}

/// Integers `(lo, hi)` with `lo / 2^k ≤ log2 p ≤ hi / 2^k`.
fn log2_int_bounds(p: &BigUint, k: u32) -> (BigInt, BigInt) {
    assert!(!p.is_zero());
    let e = p.bits() - 1;
    if p.count_ones() == 1 {
        let exact = BigInt::from(e) << k;
        return (exact.clone(), exact);
    }
    let w = k as u64 + 32;
    let one = BigUint::one() << w;
    let two = &one << 1u32;
    // mantissa p / 2^e scaled by 2^w, rounded down and up
    let scaled = p << w;
    let (q, r) = scaled.div_rem(&(BigUint::one() << e));
    let mut lo_m = q.clone();
    let mut hi_m = if r.is_zero() { q } else { q + 1u32 };
    let (mut lo_bits, mut hi_bits) = (BigInt::zero(), BigInt::zero());
    for _ in 0..k {
        lo_m = (&lo_m * &lo_m) >> w;
        let sq = &hi_m * &hi_m;
        hi_m = (&sq >> w) + if (&sq & (&one - 1u32)).is_zero() { 0u32 } else { 1u32 };
        lo_bits <<= 1;
        hi_bits <<= 1;
        if lo_m >= two {
            lo_m >>= 1;
            lo_bits += 1;
        }
        if hi_m >= two {
            hi_m = (&hi_m + 1u32) >> 1;
            hi_bits += 1;
        }
    }
    let base = BigInt::from(e) << k;
    (&base + lo_bits, base + hi_bits + 1)
}

/// Rational bracket of `log2 x` of width at most `2^(1-k)`, for `x > 0`.
pub fn log2_bounds(x: &BigRational, k: u32) -> (BigRational, BigRational) {
    let (nl, nh) = log2_int_bounds(x.numer().magnitude(), k);
    let (dl, dh) = log2_int_bounds(x.denom().magnitude(), k);
    let den = BigInt::one() << k;
    (BigRational::new(nl - dh, den.clone()), BigRational::new(nh - dl, den))
}

/// Upper bound on `log2 x` within `2^-60`.
pub fn log2_ub(x: &BigRational) -> BigRational {
    if let Some(k) = exact_log2(x) {
        return BigRational::from_integer(BigInt::from(k));
    }
    log2_bounds(x, 62).1
}

pub fn log2_lb(x: &BigRational) -> BigRational {
    if let Some(k) = exact_log2(x) {
        return BigRational::from_integer(BigInt::from(k));
    }
    log2_bounds(x, 62).0
}

pub(crate) fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// An upper bound on `c + t` with the height of `t`, for `c ≥ 0`.
pub fn add_const(c: &BigRational, t: &TowerValue) -> Result<TowerValue> {
    if t.height == 0 {
        return Ok(TowerValue::rational(&t.top + c));
    }
    // c + t ≤ 2t once c ≤ t
    if !TowerValue::rational(c.clone()).le(t)? {
        return Err(HatError::precondition(format!("constant {c} exceeds {t}")));
    }
    let below = TowerValue::new(t.height - 1, t.top.clone())?;
    add_const(&rat(1), &below)?.exp2()
}

/// An upper bound on `c · t` with the height of `t`, for `c ≥ 1`.
pub fn mul_const(c: &BigRational, t: &TowerValue) -> Result<TowerValue> {
    if t.height == 0 {
        return Ok(TowerValue::rational(&t.top * c));
    }
    let below = TowerValue::new(t.height - 1, t.top.clone())?;
    add_const(&log2_ub(c), &below)?.exp2()
}

/// An upper bound on `log2 t`, for `t ≥ 1`.
pub fn log2_tower(t: &TowerValue) -> Result<TowerValue> {
    if t.height == 0 {
        return Ok(TowerValue::rational(log2_ub(&t.top)));
    }
    TowerValue::new(t.height - 1, t.top.clone())
}

/// An upper bound on `a + b`, for `b ≤ a` or both rational.
pub fn add(a: &TowerValue, b: &TowerValue) -> Result<TowerValue> {
    if a.height == 0 && b.height == 0 {
        return Ok(TowerValue::rational(&a.top + &b.top));
    }
    let big = if b.le(a)? { a } else { b };
    mul_const(&rat(2), big)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn log2_brackets_contain_the_value() {
        for (x, v) in [(3i64, 3f64.log2()), (1000, 1000f64.log2()), (7, 7f64.log2())] {
            let (lo, hi) = log2_bounds(&rat(x), 40);
            assert!(lo.to_f64().unwrap() <= v + 1e-12 && v <= hi.to_f64().unwrap() + 1e-12);
            assert!((&hi - &lo) <= r(1, 1 << 38));
        }
        let (lo, hi) = log2_bounds(&r(1, 3), 30);
        assert!(lo < rat(0) && hi < r(-3, 2) + r(1, 10));
        assert_eq!(log2_ub(&rat(1024)), rat(10));
    }

    #[test]
    fn normalization_and_exact_values() {
        let t = TowerValue::new(2, rat(3)).unwrap();
        assert_eq!(t.height(), 0);
        assert_eq!(t.to_rational(100), Some(rat(256)));
        assert!(TowerValue::new(1, r(1, 2)).is_err());
        let big = TowerValue::new(1, rat(100)).unwrap();
        assert_eq!(big.height(), 1);
        assert_eq!(big.to_rational(200), Some(rat(BigInt::one() << 100u32)));
    }

    #[test]
    fn comparisons_across_heights() {
        let a = TowerValue::new(1, rat(100)).unwrap();
        let b = TowerValue::integer(BigInt::one() << 100u32);
        assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Equal);
        let c = TowerValue::integer((BigInt::one() << 100u32) + 1);
        assert!(a.lt(&c).unwrap());
        let d = TowerValue::new(1, r(201, 2)).unwrap();
        assert!(c.lt(&d).unwrap());
        let e = TowerValue::new(3, rat(70)).unwrap();
        let f = TowerValue::new(2, rat(BigInt::one() << 70u32)).unwrap();
        assert_eq!(f.try_cmp(&e).unwrap(), Ordering::Equal);
        assert!(TowerValue::new(2, rat((BigInt::one() << 70u32) - 1)).unwrap().lt(&e).unwrap());
        assert_eq!(TowerValue::new(2, rat(70)).unwrap().try_cmp(&TowerValue::new(3, r(62, 10)).unwrap()).unwrap(), Ordering::Less);
    }

    #[test]
    fn arithmetic_bounds() {
        let t = TowerValue::new(1, rat(100)).unwrap();
        let s = add_const(&rat(5), &t).unwrap();
        assert!(t.lt(&s).unwrap());
        let m = mul_const(&rat(7), &t).unwrap();
        let exact = TowerValue::integer(BigInt::from(7) << 100u32);
        assert!(exact.le(&m).unwrap());
        assert_eq!(log2_tower(&t).unwrap().to_rational(10), Some(rat(100)));
    }

    #[test]
    fn serde_round_trip() {
        let t = TowerValue::new(3, r(1234567, 3)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: TowerValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back.height(), 3);
        assert_eq!(back.top(), t.top());
    }
}
