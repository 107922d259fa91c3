//! Exact dyadic rationals `m · 2^e` and outward-rounded intervals over them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An exact dyadic rational `mantissa · 2^exponent`, kept with an odd mantissa
/// (or zero mantissa and zero exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Dyadic {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    /// `n · 2^-bits`.
    pub fn from_scaled(n: BigInt, bits: u64) -> Self {
        Self::new(n, -(bits as i64))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Multiply by `2^shift`.
    pub fn ldexp(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + shift,
        }
    }

    /// Number of fractional bits needed to write the value exactly.
    pub fn fractional_bits(&self) -> u64 {
        if self.exponent < 0 {
            (-self.exponent) as u64
        } else {
            0
        }
    }

    /// The integer `self · 2^bits` when that is exact, i.e. `bits >= fractional_bits()`.
    pub fn scaled_numerator(&self, bits: u64) -> BigInt {
        let shift = self.exponent + bits as i64;
        assert!(shift >= 0, "dyadic value is not exact at {bits} fractional bits");
        &self.mantissa << shift as usize
    }

    /// Largest multiple of `2^-bits` not exceeding `self`.
    pub fn floor_to(&self, bits: u64) -> Self {
        let shift = self.exponent + bits as i64;
        if shift >= 0 {
            return self.clone();
        }
        let q = self.mantissa.div_floor(&(BigInt::one() << (-shift) as usize));
        Self::from_scaled(q, bits)
    }

    /// Smallest multiple of `2^-bits` not below `self`.
    pub fn ceil_to(&self, bits: u64) -> Self {
        let shift = self.exponent + bits as i64;
        if shift >= 0 {
            return self.clone();
        }
        let q = self.mantissa.div_ceil(&(BigInt::one() << (-shift) as usize));
        Self::from_scaled(q, bits)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Midpoint of two dyadics (always exact).
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).ldexp(-1)
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mantissa.bits() as i64 - 1 + self.exponent)
        }
    }

    /// Nearest `f64`, for diagnostics and heuristics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 60).max(0);
        let top: BigInt = &self.mantissa >> drop as usize;
        let m = i64::try_from(&top).expect("top bits fit in i64") as f64;
        m * 2f64.powi((self.exponent + drop).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Quotient `a / b` rounded down to a multiple of `2^-bits`.
    pub fn div_floor(a: &Dyadic, b: &Dyadic, bits: u64) -> Dyadic {
        let (n, d) = Self::quotient_parts(a, b, bits);
        Self::from_scaled(n.div_floor(&d), bits)
    }

    /// Quotient `a / b` rounded up to a multiple of `2^-bits`.
    pub fn div_ceil(a: &Dyadic, b: &Dyadic, bits: u64) -> Dyadic {
        let (n, d) = Self::quotient_parts(a, b, bits);
        Self::from_scaled(n.div_ceil(&d), bits)
    }

    // a / b * 2^bits == n / d with d > 0
    fn quotient_parts(a: &Dyadic, b: &Dyadic, bits: u64) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero dyadic");
        let shift = a.exponent - b.exponent + bits as i64;
        let (mut n, mut d) = (a.mantissa.clone(), b.mantissa.clone());
        if shift >= 0 {
            n <<= shift as usize;
        } else {
            d <<= (-shift) as usize;
        }
        if d.is_negative() {
            (-n, -d)
        } else {
            (n, d)
        }
    }

    /// Decimal rendering with `digits` fractional digits, rounded toward
    /// negative infinity (`round_up == false`) or positive infinity.
    pub fn to_decimal(&self, digits: usize, round_up: bool) -> String {
        let scaled = &self.mantissa * BigInt::from(10u32).pow(digits as u32);
        let q = if self.exponent >= 0 {
            scaled << self.exponent as usize
        } else {
            let d = BigInt::one() << (-self.exponent) as usize;
            if round_up {
                scaled.div_ceil(&d)
            } else {
                scaled.div_floor(&d)
            }
        };
        format_fixed(&q, digits)
    }
}

fn format_fixed(q: &BigInt, digits: usize) -> String {
    let neg = q.is_negative();
    let mut s = q.abs().to_string();
    if digits == 0 {
        return if neg { format!("-{s}") } else { s };
    }
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &rhs.mantissa << (rhs.exponent - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << self.exponent as usize)
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyadicInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified strict comparison: `Some(Less)` when every point of `self`
    /// is below every point of `other`, `None` when the intervals overlap.
    pub fn certified_cmp(&self, other: &DyadicInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &DyadicInterval) -> DyadicInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        DyadicInterval::new(lo, hi)
    }

    pub fn scale_int(&self, n: i64) -> DyadicInterval {
        self.mul(&DyadicInterval::from_int(n))
    }

    /// Interval quotient with endpoints rounded outward to `2^-bits`.
    /// Panics if `other` contains zero.
    pub fn div(&self, other: &DyadicInterval, bits: u64) -> DyadicInterval {
        assert!(
            other.lo.signum() == other.hi.signum() && !other.lo.is_zero(),
            "interval divisor contains zero"
        );
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| Dyadic::div_floor(a, b, bits))
            .min()
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| Dyadic::div_ceil(a, b, bits))
            .max()
            .unwrap();
        DyadicInterval::new(lo, hi)
    }

    /// `1 / self` rounded outward to `2^-bits`.
    pub fn recip(&self, bits: u64) -> DyadicInterval {
        DyadicInterval::from_int(1).div(self, bits)
    }

    /// Enclosure of the natural logarithm, accurate to roughly `2^-bits`.
    /// Panics unless `lo > 0`.
    pub fn ln(&self, bits: u64) -> DyadicInterval {
        let lower = ln_enclosure(&self.lo, bits).lo;
        let upper = ln_enclosure(&self.hi, bits).hi;
        DyadicInterval::new(lower, upper)
    }

    /// Decimal endpoints rounded outward to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_decimal(digits, false),
            self.hi.to_decimal(digits, true),
        )
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(12);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Enclosure of `ln x` for a single positive dyadic `x`.
///
/// Writes `x = 2^e · m` with `m ∈ [1, 2)` and uses
/// `ln m = 2 atanh((m-1)/(m+1))`, `ln 2 = 2 atanh(1/3)`, both series summed in
/// fixed point with directed rounding and an explicit geometric tail bound.
pub fn ln_enclosure(x: &Dyadic, bits: u64) -> DyadicInterval {
    assert!(x.signum() > 0, "logarithm of a non-positive value");
    let p = bits + 32;
    let e = x.ilog2().unwrap();
    let m = x.ldexp(-e);

    // u = (m-1)/(m+1) in [0, 1/3), fixed point with 2^p scaling
    let num = &m - &Dyadic::one();
    let den = &m + &Dyadic::one();
    let u_lo = Dyadic::div_floor(&num, &den, p).scaled_numerator(p);
    let u_hi = Dyadic::div_ceil(&num, &den, p).scaled_numerator(p);
    let (m_lo, m_hi) = atanh_fixed(&u_lo, &u_hi, p);

    let third_lo = (BigInt::one() << p as usize).div_floor(&BigInt::from(3));
    let third_hi = third_lo.clone() + 1;
    let (l2_lo, l2_hi) = atanh_fixed(&third_lo, &third_hi, p);

    // ln x = 2 atanh(u) + 2 e atanh(1/3)
    let (e_lo, e_hi) = if e >= 0 {
        (&l2_lo * e, &l2_hi * e)
    } else {
        (&l2_hi * e, &l2_lo * e)
    };
    let lo = (m_lo + e_lo) << 1usize;
    let hi = (m_hi + e_hi) << 1usize;
    DyadicInterval::new(Dyadic::from_scaled(lo, p), Dyadic::from_scaled(hi, p))
}

/// Bounds on `atanh(u) · 2^p` given `u_lo ≤ u·2^p ≤ u_hi` with `0 ≤ u < 1/3`.
fn atanh_fixed(u_lo: &BigInt, u_hi: &BigInt, p: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << p as usize;
    let u2_lo = (u_lo * u_lo) >> p as usize;
    let u2_hi = (u_hi * u_hi).div_ceil(&one);
    let (mut pow_lo, mut pow_hi) = (u_lo.clone(), u_hi.clone());
    let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
    let mut j: u64 = 0;
    loop {
        let d = BigInt::from(2 * j + 1);
        s_lo += pow_lo.div_floor(&d);
        s_hi += pow_hi.div_ceil(&d);
        pow_lo = (&pow_lo * &u2_lo) >> p as usize;
        pow_hi = (&pow_hi * &u2_hi).div_ceil(&one);
        j += 1;
        if pow_hi <= BigInt::one() {
            break;
        }
    }
    // tail: sum_{i>=j} u^(2i+1)/(2i+1) <= u^(2j+1)/(2j+1) / (1-u^2) <= 9/8 of the first term
    let tail = (pow_hi * BigInt::from(9)).div_ceil(&BigInt::from(8 * (2 * j + 1))) + 1;
    (s_lo, s_hi + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_mantissa() {
        let x = d(12, 0);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(d(0, 7), Dyadic::zero());
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d(3, -1) < d(2, 0));
        assert!(d(-1, 5) < d(1, -5));
        assert_eq!(d(4, -1).cmp(&d(1, 1)), Ordering::Equal);
    }

    #[test]
    fn floor_and_ceil() {
        let x = d(7, -3); // 0.875
        assert_eq!(x.floor_to(1), d(1, -1));
        assert_eq!(x.ceil_to(1), d(1, 0));
        assert_eq!(d(-7, -3).floor_to(1), d(-1, 0));
    }

    #[test]
    fn decimal_rounding_is_directed() {
        let x = d(1, -2); // 0.25
        assert_eq!(x.to_decimal(1, false), "0.2");
        assert_eq!(x.to_decimal(1, true), "0.3");
        assert_eq!(d(-1, -2).to_decimal(1, false), "-0.3");
        assert_eq!(d(5, 0).to_decimal(3, false), "5.000");
        assert_eq!(d(1, -10).to_decimal(2, true), "0.01");
    }

    #[test]
    fn ln_of_two_and_e_powers() {
        let ln2 = ln_enclosure(&Dyadic::from_int(2), 80);
        assert!(ln2.lo.to_f64() <= std::f64::consts::LN_2 + 1e-15);
        assert!(ln2.hi.to_f64() >= std::f64::consts::LN_2 - 1e-15);
        assert!(ln2.width() < d(1, -78));

        let one = ln_enclosure(&Dyadic::one(), 64);
        assert!(one.contains(&Dyadic::zero()));

        let half = ln_enclosure(&d(1, -1), 64);
        assert!((half.lo.to_f64() + std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn interval_division_is_outward() {
        let one = DyadicInterval::from_int(1);
        let three = DyadicInterval::from_int(3);
        let q = one.div(&three, 20);
        assert!(q.lo.to_f64() <= 1.0 / 3.0 && q.hi.to_f64() >= 1.0 / 3.0);
        assert!(q.width() <= d(1, -20));
    }
}
