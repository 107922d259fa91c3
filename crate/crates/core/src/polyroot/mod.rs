//! Dilatation polynomials, certified largest-root brackets and comparisons.

mod isolate;
mod poly;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

pub use isolate::{budan_count, descartes_count, CertifiedRoot, RootInterval, TailCertificate, MAX_BITS};
pub use poly::{t_pow_plus_one, IntPolynomial, ParsePolynomialError};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::fillings::Family;
use crate::homology::FiberedClass;

/// Fractional bits at which comparisons start refining.
pub const START_BITS: u64 = 64;

/// A requested bracket width `2^-bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Width {
    bits: u64,
}

impl Width {
    pub fn from_bits(bits: u64) -> Self {
        Width { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn as_dyadic(&self) -> Dyadic {
        Dyadic::new(1.into(), -(self.bits as i64))
    }
}

impl Default for Width {
    fn default() -> Self {
        Width { bits: 40 }
    }
}

impl FromStr for Width {
    type Err = Error;

    /// Accepts `2^-40`, `2**-40`, or a bare bit count `40`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let exp = t
            .strip_prefix("2^")
            .or_else(|| t.strip_prefix("2**"))
            .map(|e| e.strip_prefix('-').map(|b| b.to_string()))
            .unwrap_or_else(|| Some(t.to_string()));
        let bits = exp
            .and_then(|b| b.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidWidth(s.to_string()))?;
        if bits > MAX_BITS {
            return Err(Error::InvalidWidth(s.to_string()));
        }
        Ok(Width { bits })
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^-{}", self.bits)
    }
}

/// `f_{(x,y,z)}` for a class of the fibered cone.
pub fn teichmuller_poly(x: i64, y: i64, z: i64) -> Result<IntPolynomial> {
    let c = FiberedClass::new(x, y, z)?;
    Ok(poly::fiber_polynomial(c.x(), c.y(), c.z()))
}

/// `f_{(k,l)}(t) = t^{2k} - t^{k+l} - t^k - t^{k-l} + 1`, defined for `k > 0`, `-k < l < k`.
pub fn pair_poly(k: i64, l: i64) -> Result<IntPolynomial> {
    if k <= 0 {
        return Err(Error::FamilyRange {
            k,
            l,
            reason: "k must be positive",
        });
    }
    if l <= -k || l >= k {
        return Err(Error::FamilyRange {
            k,
            l,
            reason: "l must satisfy -k < l < k",
        });
    }
    let e = |v: i64| v as u32;
    Ok(IntPolynomial::from_terms([
        (e(2 * k), 1),
        (e(k + l), -1),
        (e(k), -1),
        (e(k - l), -1),
        (0, 1),
    ]))
}

/// Certified bracket of the largest real root of `p`, at most `width` wide.
pub fn largest_real_root(p: &IntPolynomial, width: Width) -> Result<RootInterval> {
    CertifiedRoot::isolate(p)?.interval(width.bits())
}

/// Outcome of a certified comparison of two largest roots.
#[derive(Clone, Debug)]
pub struct RootComparison {
    pub ordering: Ordering,
    pub left: RootInterval,
    pub right: RootInterval,
    /// For `Equal`: the common factor whose largest root equals both.
    pub common_factor: Option<IntPolynomial>,
    /// Fractional bits reached while separating the brackets.
    pub bits: u64,
}

/// Compares the largest real roots of `p` and `q`.
pub fn compare_roots(p: &IntPolynomial, q: &IntPolynomial) -> Result<RootComparison> {
    let mut a = CertifiedRoot::isolate(p)?;
    let mut b = CertifiedRoot::isolate(q)?;
    compare_certified(&mut a, &mut b)
}

/// Compares two isolated roots, refining both in place.
///
/// Brackets are refined together from [`START_BITS`], doubling up to
/// [`MAX_BITS`]. At the first overlap the exact test runs once: the roots are
/// equal iff `g = gcd(p, q)` has a largest root lying above both isolation
/// cells' left ends (each input has a single root there).
pub fn compare_certified(a: &mut CertifiedRoot, b: &mut CertifiedRoot) -> Result<RootComparison> {
    let mut bits = START_BITS;
    let mut tried_gcd = false;
    loop {
        a.refine(bits)?;
        b.refine(bits)?;
        let (ra, rb) = (a.bracket(), b.bracket());
        let ordering = if a.is_exact() && b.is_exact() {
            Some(ra.lo.cmp(&rb.lo))
        } else if ra.hi <= rb.lo {
            Some(Ordering::Less)
        } else if rb.hi <= ra.lo {
            Some(Ordering::Greater)
        } else {
            None
        };
        if let Some(ordering) = ordering {
            return Ok(RootComparison {
                ordering,
                left: ra,
                right: rb,
                common_factor: None,
                bits,
            });
        }
        if !tried_gcd {
            tried_gcd = true;
            if let Some(g) = common_largest_root(a, b)? {
                return Ok(RootComparison {
                    ordering: Ordering::Equal,
                    left: ra,
                    right: rb,
                    common_factor: Some(g),
                    bits,
                });
            }
        }
        if bits >= MAX_BITS {
            return Err(Error::Undecidable { bits });
        }
        bits = (bits * 2).min(MAX_BITS);
    }
}

// Each input has exactly one root above its isolation cell's left end, so a
// common root above both left ends is the largest root of each.
fn common_largest_root(a: &CertifiedRoot, b: &CertifiedRoot) -> Result<Option<IntPolynomial>> {
    let g = a.polynomial().gcd(b.polynomial());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    for (exact, other) in [(a, b), (b, a)] {
        if exact.is_exact() {
            let x = exact.bracket().lo;
            let hit = other.polynomial().sign_at(&x) == 0 && &x > other.isolation_cell().0;
            return Ok(hit.then_some(g));
        }
    }
    let mut r = match CertifiedRoot::isolate(&g) {
        Ok(r) => r,
        Err(Error::NoRootAboveOne(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let floor = a.isolation_cell().0.max(b.isolation_cell().0).clone();
    let mut bits = START_BITS;
    loop {
        let br = r.bracket();
        if r.is_exact() {
            return Ok((br.lo > floor).then_some(g));
        }
        if br.lo >= floor {
            return Ok(Some(g));
        }
        if br.hi <= floor || bits > MAX_BITS {
            return Ok(None);
        }
        r.refine(bits)?;
        bits *= 2;
    }
}

/// Verifies, by exact expansion, the three factorizations
/// `f_A = (t^{k+l} + 1) f_{(k,l)}` or `(t^{k-l} + 1) f_{(k,l)}`,
/// `f_P` likewise, and `f_R = (t^k + 1) f_{(k,l)}`, where `f_F` is the fiber
/// polynomial of the family class `F(k, l)`.
pub fn factor_check(k: i64, l: i64) -> bool {
    if !(0 < l && l < k) {
        return false;
    }
    let base = match pair_poly(k, l) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let candidates_for = |family: Family| -> Vec<IntPolynomial> {
        match family {
            Family::A | Family::P => vec![
                &t_pow_plus_one((k + l) as u32) * &base,
                &t_pow_plus_one((k - l) as u32) * &base,
            ],
            Family::R => vec![&t_pow_plus_one(k as u32) * &base],
        }
    };
    [Family::A, Family::P, Family::R].into_iter().all(|family| {
        let (x, y, z) = family.coordinates(k, l);
        let f = poly::fiber_polynomial(x, y, z);
        candidates_for(family).contains(&f)
    })
}

/// Concurrent memo table of isolated roots keyed by canonical polynomial.
///
/// Reads run in parallel; writes are serialized and last-write-wins. Values
/// are deterministic functions of the key, so racing writers store the same
/// isolation cell.
#[derive(Debug, Default)]
pub struct RootCache {
    map: RwLock<HashMap<String, CertifiedRoot>>,
}

/// Serializable isolation cell `(lo_mantissa · 2^e, hi_mantissa · 2^e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheCell {
    pub lo_mantissa: num_bigint::BigInt,
    pub hi_mantissa: num_bigint::BigInt,
    pub exponent_of_two: i64,
}

impl RootCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A copy of the cached root for `p`, isolating and recording it on a miss.
    pub fn root(&self, p: &IntPolynomial) -> Result<CertifiedRoot> {
        let key = p.canonical_string();
        if let Some(r) = self.map.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let r = CertifiedRoot::isolate(p)?;
        self.map.write().unwrap().insert(key, r.clone());
        Ok(r)
    }

    /// Bracket of width `2^-bits` for the largest root of `p`.
    pub fn interval(&self, p: &IntPolynomial, width: Width) -> Result<RootInterval> {
        self.root(p)?.interval(width.bits())
    }

    /// Certified comparison through the cache.
    pub fn compare(&self, p: &IntPolynomial, q: &IntPolynomial) -> Result<RootComparison> {
        let mut a = self.root(p)?;
        let mut b = self.root(q)?;
        compare_certified(&mut a, &mut b)
    }

    /// Inserts a root rebuilt from a stored isolation cell after re-verifying it.
    /// Returns `false` (and stores nothing) when verification fails.
    pub fn insert_cell(&self, p: &IntPolynomial, cell: &CacheCell) -> bool {
        let lo = Dyadic::new(cell.lo_mantissa.clone(), cell.exponent_of_two);
        let hi = Dyadic::new(cell.hi_mantissa.clone(), cell.exponent_of_two);
        match CertifiedRoot::from_isolation_cell(p, lo, hi) {
            Some(r) if r.polynomial() == p => {
                self.map.write().unwrap().insert(p.canonical_string(), r);
                true
            }
            _ => false,
        }
    }

    /// Budan-certified isolation cells, sorted by key, suitable for persistence.
    pub fn cells(&self) -> Vec<(String, CacheCell)> {
        let map = self.map.read().unwrap();
        let mut out: Vec<(String, CacheCell)> = map
            .iter()
            .filter(|(key, r)| {
                r.certificate() == TailCertificate::Budan
                    && r.polynomial().canonical_string() == **key
            })
            .map(|(key, r)| {
                let (lo, hi) = r.isolation_cell();
                let e = lo.exponent().min(hi.exponent());
                let cell = CacheCell {
                    lo_mantissa: lo.mantissa() << (lo.exponent() - e) as usize,
                    hi_mantissa: hi.mantissa() << (hi.exponent() - e) as usize,
                    exponent_of_two: e,
                };
                (key.clone(), cell)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}
