//! Isolation and refinement of the largest real root above 1.
//!
//! The search runs the Vincent–Collins–Akritas bisection on `(1, 1 + 2^m)`,
//! where `1 + 2^m` exceeds every root modulus, visiting right halves first so
//! the first cell with exactly one sign variation holds the largest root.
//! Cells are aligned dyadic intervals, which makes every bracket derived from
//! them independent of how it was reached.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use crate::dyadic::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};

/// Hard ceiling on fractional bits used by refinement.
pub const MAX_BITS: u64 = 8192;

/// Depth after which isolation switches to the square-free part.
const SQUAREFREE_DEPTH: u32 = 256;
const MAX_DEPTH: u32 = 16384;

/// How the absence of roots to the right of the isolation cell was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailCertificate {
    /// Only the right-first subdivision sweep discarded everything to the right.
    Sweep,
    /// Additionally, `p(x + hi)` has no sign variation (Budan–Fourier count 0).
    Budan,
    /// The root is a dyadic rational found exactly.
    Exact,
}

impl fmt::Display for TailCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailCertificate::Sweep => "sweep",
            TailCertificate::Budan => "budan",
            TailCertificate::Exact => "exact",
        })
    }
}

/// A certified bracket `[lo, hi]` around the largest real root.
///
/// `(iso_lo, iso_hi)` is the isolation cell: it holds exactly one real root,
/// `p(iso_hi) > 0`, and no root exceeds `iso_hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub iso_lo: Dyadic,
    pub iso_hi: Dyadic,
    pub certificate: TailCertificate,
}

impl RootInterval {
    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn interval(&self) -> DyadicInterval {
        DyadicInterval::new(self.lo.clone(), self.hi.clone())
    }

    /// Decimal endpoints rounded outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        self.interval().to_decimal(digits)
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.interval())
    }
}

/// The largest real root of a polynomial together with its current bracket.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    poly: IntPolynomial,
    iso_lo: Dyadic,
    iso_hi: Dyadic,
    certificate: TailCertificate,
    lo: Dyadic,
    hi: Dyadic,
}

impl CertifiedRoot {
    /// Isolates the largest real root of `p`, which must exceed 1.
    pub fn isolate(p: &IntPolynomial) -> Result<Self> {
        let poly = normalize(p);
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::NoRootAboveOne(p.to_string()));
        }
        let mut work = poly.clone();
        let mut squarefree = false;
        loop {
            match vca_rightmost(&work, if squarefree { MAX_DEPTH } else { SQUAREFREE_DEPTH }) {
                Search::Cell(lo, hi) => {
                    let mut root = CertifiedRoot {
                        poly: work,
                        iso_lo: lo.clone(),
                        iso_hi: hi.clone(),
                        certificate: TailCertificate::Sweep,
                        lo,
                        hi,
                    };
                    if budan_count(&root.poly, &root.iso_hi) == 0 {
                        root.certificate = TailCertificate::Budan;
                    }
                    return Ok(root);
                }
                Search::Exact(x) => return Ok(Self::exact(work, x)),
                Search::Empty => return Err(Error::NoRootAboveOne(p.to_string())),
                Search::TooDeep(lo, hi) if squarefree => {
                    let best = RootInterval {
                        lo: lo.clone(),
                        hi: hi.clone(),
                        iso_lo: lo,
                        iso_hi: hi,
                        certificate: TailCertificate::Sweep,
                    };
                    return Err(Error::PrecisionExhausted {
                        bits: MAX_DEPTH as u64,
                        best: Box::new(best),
                    });
                }
                Search::TooDeep(..) => {
                    work = work.gcd(&work.derivative());
                    work = poly.div_exact(&work).expect("square-free quotient is exact");
                    work = work.primitive_part();
                    squarefree = true;
                }
            }
        }
    }

    /// Rebuilds a root from a previously computed isolation cell, verifying
    /// the cell from scratch: a sign change with `p(hi) > 0`, exactly one
    /// Descartes variation on the cell and a zero Budan count at `hi`.
    pub fn from_isolation_cell(p: &IntPolynomial, lo: Dyadic, hi: Dyadic) -> Option<Self> {
        let poly = normalize(p);
        let one = Dyadic::one();
        if lo < one || hi <= lo {
            return None;
        }
        if poly.sign_at(&hi) <= 0 || poly.sign_at(&lo) > 0 {
            return None;
        }
        if descartes_count(&poly, &lo, &hi) != 1 || budan_count(&poly, &hi) != 0 {
            return None;
        }
        Some(CertifiedRoot {
            poly,
            iso_lo: lo.clone(),
            iso_hi: hi.clone(),
            certificate: TailCertificate::Budan,
            lo,
            hi,
        })
    }

    fn exact(poly: IntPolynomial, x: Dyadic) -> Self {
        CertifiedRoot {
            poly,
            iso_lo: x.clone(),
            iso_hi: x.clone(),
            certificate: TailCertificate::Exact,
            lo: x.clone(),
            hi: x,
        }
    }

    /// The polynomial whose root is tracked (normalized; possibly the
    /// square-free part of the input).
    pub fn polynomial(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn isolation_cell(&self) -> (&Dyadic, &Dyadic) {
        (&self.iso_lo, &self.iso_hi)
    }

    pub fn certificate(&self) -> TailCertificate {
        self.certificate
    }

    pub fn is_exact(&self) -> bool {
        self.certificate == TailCertificate::Exact
    }

    /// The finest bracket known so far.
    pub fn bracket(&self) -> RootInterval {
        self.make_interval(self.lo.clone(), self.hi.clone())
    }

    fn make_interval(&self, lo: Dyadic, hi: Dyadic) -> RootInterval {
        RootInterval {
            lo,
            hi,
            iso_lo: self.iso_lo.clone(),
            iso_hi: self.iso_hi.clone(),
            certificate: self.certificate,
        }
    }

    /// Bisects until the bracket is at most `2^-bits` wide.
    pub fn refine(&mut self, bits: u64) -> Result<()> {
        if bits > MAX_BITS {
            self.refine(MAX_BITS)?;
            return Err(Error::PrecisionExhausted {
                bits: MAX_BITS,
                best: Box::new(self.bracket()),
            });
        }
        let target = Dyadic::new(BigInt::one(), -(bits as i64));
        while self.hi.clone() - self.lo.clone() > target {
            let mid = Dyadic::midpoint(&self.lo, &self.hi);
            match self.poly.sign_at(&mid) {
                0 => {
                    self.lo = mid.clone();
                    self.hi = mid;
                }
                s if s > 0 => self.hi = mid,
                _ => self.lo = mid,
            }
        }
        Ok(())
    }

    /// The canonical bracket of width `2^-bits`: the aligned grid cell that
    /// contains the root, or the isolation cell if that is already narrower.
    pub fn interval(&mut self, bits: u64) -> Result<RootInterval> {
        let target = Dyadic::new(BigInt::one(), -(bits as i64));
        if self.iso_hi.clone() - self.iso_lo.clone() <= target {
            return Ok(self.make_interval(self.iso_lo.clone(), self.iso_hi.clone()));
        }
        self.refine(bits)?;
        if self.lo == self.hi {
            return Ok(self.bracket());
        }
        let lo = self.lo.floor_to(bits);
        let hi = &lo + &target;
        Ok(self.make_interval(lo, hi))
    }
}

/// Positive leading coefficient, no factor of `t`.
fn normalize(p: &IntPolynomial) -> IntPolynomial {
    let q = p.strip_t_power();
    match q.leading_coefficient() {
        Some(c) if c.is_negative() => -&q,
        _ => q,
    }
}

enum Search {
    Cell(Dyadic, Dyadic),
    Exact(Dyadic),
    Empty,
    TooDeep(Dyadic, Dyadic),
}

enum Task {
    // q(x) is a positive multiple of p(lo + w x) on the cell with index c at depth level
    Cell {
        q: Vec<BigInt>,
        c: BigInt,
        level: u32,
    },
    Point(Dyadic),
}

fn vca_rightmost(p: &IntPolynomial, max_depth: u32) -> Search {
    let bound = p.max_abs_coefficient();
    let lead = p.leading_coefficient().unwrap().clone();
    let mut m: u32 = 0;
    while (&lead << m as usize) < bound {
        m += 1;
    }
    let one = Dyadic::one();
    let cell = |c: &BigInt, level: u32| {
        let w = Dyadic::new(BigInt::one(), m as i64 - level as i64);
        let lo = &one + &(&Dyadic::from_bigint(c.clone()) * &w);
        let hi = &lo + &w;
        (lo, hi)
    };

    let q0 = shifted_scaled(&p.to_dense(), &one, &Dyadic::new(BigInt::one(), m as i64));
    let mut stack = vec![Task::Cell {
        q: q0,
        c: BigInt::zero(),
        level: 0,
    }];
    while let Some(task) = stack.pop() {
        let (q, c, level) = match task {
            Task::Point(x) => return Search::Exact(x),
            Task::Cell { q, c, level } => (q, c, level),
        };
        match unit_interval_variations(&q) {
            0 => continue,
            1 => {
                let (lo, hi) = cell(&c, level);
                return Search::Cell(lo, hi);
            }
            _ => {}
        }
        if level >= max_depth {
            let (lo, hi) = cell(&c, level);
            return Search::TooDeep(lo, hi);
        }
        let n = q.len() - 1;
        // left half: 2^n q(x/2); right half: that shifted by 1
        let mut left: Vec<BigInt> = q
            .iter()
            .enumerate()
            .map(|(i, a)| a << (n - i))
            .collect();
        strip_two_content(&mut left);
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        strip_two_content(&mut right);
        let c2 = &c << 1usize;
        let mid_is_root = right[0].is_zero();
        stack.push(Task::Cell {
            q: left,
            c: c2.clone(),
            level: level + 1,
        });
        if mid_is_root {
            let (_, mid) = cell(&c2, level + 1);
            stack.push(Task::Point(mid));
        }
        stack.push(Task::Cell {
            q: right,
            c: c2 + 1,
            level: level + 1,
        });
    }
    Search::Empty
}

/// Coefficients of a positive multiple of `p(lo + w·x)`.
fn shifted_scaled(p: &[BigInt], lo: &Dyadic, w: &Dyadic) -> Vec<BigInt> {
    let s = lo.fractional_bits().max(w.fractional_bits());
    let n = p.len() - 1;
    let l = lo.scaled_numerator(s);
    let wn = w.scaled_numerator(s);
    let mut c: Vec<BigInt> = p
        .iter()
        .enumerate()
        .map(|(i, a)| a << (s as usize * (n - i)))
        .collect();
    taylor_shift(&mut c, &l);
    if !wn.is_one() {
        let mut pw = BigInt::one();
        for a in c.iter_mut() {
            *a *= &pw;
            pw *= &wn;
        }
    }
    strip_two_content(&mut c);
    c
}

/// `c(x) ← c(x + a)` in place.
fn taylor_shift(c: &mut [BigInt], a: &BigInt) {
    if a.is_zero() {
        return;
    }
    if a.is_one() {
        return taylor_shift_one(c);
    }
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let t = a * &c[j + 1];
            c[j] += t;
        }
    }
}

fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let (lo, hi) = c.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

fn strip_two_content(c: &mut [BigInt]) {
    let tz = c.iter().filter_map(|a| a.trailing_zeros()).min().unwrap_or(0);
    if tz > 0 {
        for a in c.iter_mut() {
            *a >>= tz as usize;
        }
    }
}

fn sign_variations(c: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for a in c {
        let s = if a.is_positive() {
            1
        } else if a.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound for roots of `q` in `(0, 1)`: variations of `(x+1)^n q(1/(x+1))`.
fn unit_interval_variations(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// Descartes bound for the number of roots of `p` in `(lo, hi)`.
pub fn descartes_count(p: &IntPolynomial, lo: &Dyadic, hi: &Dyadic) -> usize {
    let q = shifted_scaled(&p.to_dense(), lo, &(hi - lo));
    unit_interval_variations(&q)
}

/// Budan–Fourier bound for the number of roots of `p` in `(a, ∞)`.
pub fn budan_count(p: &IntPolynomial, a: &Dyadic) -> usize {
    sign_variations(&shifted_scaled(&p.to_dense(), a, &Dyadic::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, i64)]) -> IntPolynomial {
        IntPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn golden_quadratic() {
        // t^2 - 3t + 1, largest root (3 + sqrt 5)/2
        let mut r = CertifiedRoot::isolate(&p(&[(2, 1), (1, -3), (0, 1)])).unwrap();
        let b = r.interval(40).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(b.lo.to_f64() <= phi2 && phi2 <= b.hi.to_f64());
        assert_eq!(b.width(), Dyadic::new(BigInt::one(), -40));
        assert_eq!(r.certificate(), TailCertificate::Budan);
    }

    #[test]
    fn picks_largest_of_several_real_roots() {
        // (t - 3)(2t - 3)(t - 5/4) scaled: roots 3, 1.5, 1.25
        let q = &(&p(&[(1, 1), (0, -3)]) * &p(&[(1, 2), (0, -3)])) * &p(&[(1, 4), (0, -5)]);
        let mut r = CertifiedRoot::isolate(&q).unwrap();
        let b = r.interval(30).unwrap();
        assert!(b.contains(&Dyadic::from_int(3)));
    }

    #[test]
    fn exact_dyadic_root() {
        // (t - 3/2)(t + 1)
        let q = &p(&[(1, 2), (0, -3)]) * &p(&[(1, 1), (0, 1)]);
        let mut r = CertifiedRoot::isolate(&q).unwrap();
        let b = r.interval(20).unwrap();
        assert_eq!(b.lo, Dyadic::new(BigInt::from(3), -1));
        assert_eq!(b.lo, b.hi);
    }

    #[test]
    fn repeated_largest_root() {
        // (t^2 - 3t + 1)^2 (t - 1/2)
        let base = p(&[(2, 1), (1, -3), (0, 1)]);
        let q = &(&base * &base) * &p(&[(1, 2), (0, -1)]);
        let mut r = CertifiedRoot::isolate(&q).unwrap();
        let b = r.interval(30).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(b.lo.to_f64() <= phi2 && phi2 <= b.hi.to_f64());
    }

    #[test]
    fn no_root_above_one() {
        assert!(matches!(
            CertifiedRoot::isolate(&p(&[(2, 1), (0, 1)])),
            Err(Error::NoRootAboveOne(_))
        ));
        assert!(matches!(
            CertifiedRoot::isolate(&p(&[(1, 2), (0, -1)])),
            Err(Error::NoRootAboveOne(_))
        ));
    }

    #[test]
    fn isolation_cell_round_trip() {
        let q = p(&[(4, 1), (3, -1), (2, -1), (1, -1), (0, 1)]);
        let r = CertifiedRoot::isolate(&q).unwrap();
        let (lo, hi) = r.isolation_cell();
        let again = CertifiedRoot::from_isolation_cell(&q, lo.clone(), hi.clone()).unwrap();
        assert_eq!(again.isolation_cell(), r.isolation_cell());
        // a cell that misses the root is rejected
        assert!(CertifiedRoot::from_isolation_cell(&q, Dyadic::from_int(2), Dyadic::from_int(3)).is_none());
        // a cell with the right signs but extra roots to its right is rejected
        let three = &(&p(&[(1, 1), (0, -3)]) * &p(&[(1, 1), (0, -2)])) * &p(&[(1, 2), (0, -3)]);
        let cell = (Dyadic::new(BigInt::from(5), -2), Dyadic::new(BigInt::from(7), -2));
        assert!(CertifiedRoot::from_isolation_cell(&three, cell.0, cell.1).is_none());
    }

    #[test]
    fn brackets_nest_across_widths() {
        let q = p(&[(18, 1), (11, -1), (9, -1), (7, -1), (0, 1)]);
        let mut a = CertifiedRoot::isolate(&q).unwrap();
        let fine = a.interval(60).unwrap();
        let coarse = a.interval(20).unwrap();
        let mut b = CertifiedRoot::isolate(&q).unwrap();
        assert_eq!(b.interval(20).unwrap(), coarse);
        assert!(coarse.lo <= fine.lo && fine.hi <= coarse.hi);
    }
}
