//! Sparse univariate polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;

/// A polynomial `Σ c_e t^e` stored as a map from exponent to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: u32, coeff: i64) -> Self {
        Self::from_terms([(exp, coeff)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zero results.
    pub fn from_terms<I: IntoIterator<Item = (u32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn from_big_terms<I: IntoIterator<Item = (u32, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients `c_0, …, c_n` of a dense representation.
    pub fn from_dense(coeffs: &[BigInt]) -> Self {
        Self::from_big_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u32, c.clone())),
        )
    }

    pub fn add_term(&mut self, exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let n = match self.degree() {
            Some(n) => n as usize,
            None => return Vec::new(),
        };
        let mut v = vec![BigInt::zero(); n + 1];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(pe) = prev {
                acc *= x.pow(pe - e);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(pe) = prev {
            acc *= x.pow(pe);
        }
        acc
    }

    /// Exact sign of the value at a positive dyadic point, by Horner's rule
    /// over the sparse terms after clearing the power-of-two denominator.
    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        assert!(x.signum() > 0, "sparse sign evaluation needs a positive point");
        let top = match self.degree() {
            Some(n) => n,
            None => return 0,
        };
        let d = x.fractional_bits();
        let m = x.scaled_numerator(d);
        // acc_j = acc_{j-1} · m^(e_{j-1} - e_j) + c_j · 2^(d (e_1 - e_j))
        let mut acc = BigInt::zero();
        let mut prev = top;
        for (e, c) in self.terms.iter().rev() {
            if prev != *e {
                acc *= m.pow(prev - e);
            }
            acc += c << (d as usize * (top - e) as usize);
            prev = *e;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// `t^n · p(1/t)` with `n = deg p`.
    pub fn reciprocal(&self) -> Self {
        let n = match self.degree() {
            Some(n) => n,
            None => return Self::zero(),
        };
        Self::from_big_terms(self.terms.iter().map(|(e, c)| (n - e, c.clone())))
    }

    /// Removes the largest power of `t` dividing the polynomial.
    pub fn strip_t_power(&self) -> Self {
        let low = match self.terms.keys().next() {
            Some(low) => *low,
            None => return Self::zero(),
        };
        Self::from_big_terms(self.terms.iter().map(|(e, c)| (e - low, c.clone())))
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coefficient().unwrap().is_negative() {
            g = -g;
        }
        Self::from_big_terms(self.terms.iter().map(|(e, c)| (*e, c / &g)))
    }

    pub fn derivative(&self) -> Self {
        Self::from_big_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * BigInt::from(*e))),
        )
    }

    /// Pseudo-remainder of `self` by `divisor` (sign-preserving variant:
    /// the multiplier is `|lc(divisor)|^k`).
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dn = divisor.degree().expect("pseudo-division by zero polynomial");
        let lc = divisor.leading_coefficient().unwrap().abs();
        let sign = divisor.leading_coefficient().unwrap().signum();
        let mut r = self.to_dense();
        let d = divisor.to_dense();
        while r.len() > dn as usize && !r.is_empty() {
            let top = r.len() - 1;
            let q = r[top].clone() * &sign;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dn as usize;
            for (i, c) in d.iter().enumerate() {
                r[i + shift] -= &q * c;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::from_dense(&r)
    }

    /// Greatest common divisor over the integers, normalized primitive with
    /// positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Exact division; `None` unless `divisor` divides `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dn = divisor.degree()? as usize;
        let lc = divisor.leading_coefficient().unwrap().clone();
        let mut r = self.to_dense();
        let d = divisor.to_dense();
        if r.len() <= dn {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for top in (dn..r.len()).rev() {
            let (qc, rem) = r[top].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = top - dn;
            for (i, c) in d.iter().enumerate() {
                r[i + shift] -= &qc * c;
            }
            q[shift] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&q))
    }

    /// Canonical `"exp:coeff"` list sorted by exponent, e.g. `"0:1,1:-3,2:1"`.
    pub fn canonical_string(&self) -> String {
        self.terms
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Error from parsing a canonical polynomial string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed polynomial term list: {0}")]
pub struct ParsePolynomialError(pub String);

impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    /// Parses the canonical form produced by [`IntPolynomial::canonical_string`].
    /// Exponents must be strictly increasing and coefficients nonzero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Self::zero();
        if s.is_empty() {
            return Ok(p);
        }
        let mut last: Option<u32> = None;
        for item in s.split(',') {
            let err = || ParsePolynomialError(item.to_string());
            let (e, c) = item.split_once(':').ok_or_else(err)?;
            let e: u32 = e.parse().map_err(|_| err())?;
            let c: BigInt = c.parse().map_err(|_| err())?;
            if c.is_zero() || last.is_some_and(|l| l >= e) {
                return Err(err());
            }
            last = Some(e);
            p.terms.insert(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = a.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                p.add_term(ea + eb, ca * cb);
            }
        }
        p
    }
}

/// `f_{(x,y,z)}(t) = t^{x+y-z} - t^x - t^y - t^{x-z} - t^{y-z} + 1`, with
/// exponents required to be positive (cone membership is checked by callers).
pub(crate) fn fiber_polynomial(x: i64, y: i64, z: i64) -> IntPolynomial {
    let e = |v: i64| u32::try_from(v).expect("exponent out of range");
    IntPolynomial::from_terms([
        (e(x + y - z), 1),
        (e(x), -1),
        (e(y), -1),
        (e(x - z), -1),
        (e(y - z), -1),
        (0, 1),
    ])
}

/// `t^n + 1`.
pub fn t_pow_plus_one(n: u32) -> IntPolynomial {
    IntPolynomial::from_terms([(n, 1), (0, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, i64)]) -> IntPolynomial {
        IntPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn merges_and_drops_zero_terms() {
        let q = p(&[(1, -1), (1, -1), (1, -1), (2, 1), (0, 1), (3, 0)]);
        assert_eq!(q.canonical_string(), "0:1,1:-3,2:1");
        assert_eq!(q.to_string(), "t^2 - 3t + 1");
        assert_eq!(p(&[(2, 1), (2, -1)]), IntPolynomial::zero());
    }

    #[test]
    fn canonical_round_trip() {
        let q = p(&[(9, 1), (7, -1), (5, -1), (4, -1), (2, -1), (0, 1)]);
        let s = q.canonical_string();
        assert_eq!(s.parse::<IntPolynomial>().unwrap(), q);
        assert!("1:2,0:1".parse::<IntPolynomial>().is_err());
        assert!("0:0".parse::<IntPolynomial>().is_err());
        assert!("x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn sign_at_dyadic_matches_integer_evaluation() {
        let q = p(&[(4, 1), (3, -1), (2, -1), (1, -1), (0, 1)]);
        for n in 1..6i64 {
            let v = q.eval_int(&BigInt::from(n));
            let expected = if v.is_negative() { -1 } else if v.is_zero() { 0 } else { 1 };
            assert_eq!(q.sign_at(&Dyadic::from_int(n)), expected);
        }
        // q(3/2) = 81/16 - 27/8 - 9/4 - 3/2 + 1 = -17/16
        assert_eq!(q.sign_at(&Dyadic::new(BigInt::from(3), -1)), -1);
        assert_eq!(q.sign_at(&Dyadic::new(BigInt::from(7), -2)), 1);
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[(3, 1), (0, 1)]);
        let b = p(&[(2, 1), (1, -1), (0, 1)]);
        let c = p(&[(1, 1), (0, 2)]);
        let g = (&a * &c).gcd(&(&b * &c));
        // gcd(t^3+1, t^2-t+1) = t^2-t+1
        assert_eq!(g, &b * &c);
        let one = p(&[(1, 1), (0, -1)]).gcd(&p(&[(1, 1), (0, 1)]));
        assert_eq!(one, IntPolynomial::one());
    }

    #[test]
    fn exact_division() {
        let a = p(&[(3, 1), (0, 1)]);
        let b = p(&[(1, 1), (0, 1)]);
        assert_eq!(a.div_exact(&b), Some(p(&[(2, 1), (1, -1), (0, 1)])));
        assert_eq!(a.div_exact(&p(&[(1, 1), (0, -1)])), None);
    }
}
