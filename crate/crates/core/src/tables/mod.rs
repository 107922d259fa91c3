//! Minimal-dilatation enumeration over the fillings, bounds on `δ_g`,
//! normalized-entropy scans and the claim verification suites.

mod verify;

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use verify::{verify_claims, ClaimItem, ClaimReport, ClaimStatus, Suite, VerifyConfig};

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::fillings::{
    capped_orientable, closed_genus, has_one_prong, FamilyClass, Filling,
};
use crate::homology::{self, gcd, FiberedClass};
use crate::polyroot::{
    compare_certified, pair_poly, teichmuller_poly, CertifiedRoot, RootCache, RootInterval, Width,
    MAX_BITS, START_BITS,
};

/// Family classes on `N(r)` whose capped fiber has genus `g`, without
/// 1-pronged singularities, optionally restricted to orientable monodromies.
/// Only `l > 0` is listed; `±l` give the same genus and dilatation.
pub fn candidate_set(filling: Filling, g: i64, orientable_only: bool) -> Vec<FamilyClass> {
    let family = filling.family();
    let mut out = Vec::new();
    for k in g..=g + 2 {
        for l in 1..k {
            if gcd(k, l) != 1 {
                continue;
            }
            let fc = FamilyClass::new(family, k, l).expect("range checked");
            if closed_genus(&fc) != g || has_one_prong(&fc) {
                continue;
            }
            if orientable_only && !capped_orientable(&fc) {
                continue;
            }
            out.push(fc);
        }
    }
    out
}

/// `min Λ_g(r)` (or `min Λ_g^+(r)`) with its certified bracket.
#[derive(Clone, Debug)]
pub struct MinTableRow {
    pub genus: i64,
    pub filling: Filling,
    pub orientable_only: bool,
    /// All minimizers, sorted by `(family, k, l)`; empty when there are no candidates.
    pub argmins: Vec<FamilyClass>,
    pub interval: Option<RootInterval>,
    pub candidates_examined: usize,
}

impl MinTableRow {
    pub fn is_empty(&self) -> bool {
        self.argmins.is_empty()
    }

    pub fn argmin(&self) -> Option<&FamilyClass> {
        self.argmins.first()
    }

    /// Argmins as `(k, l)` pairs.
    pub fn argmin_pairs(&self) -> Vec<(i64, i64)> {
        self.argmins.iter().map(|fc| (fc.k(), fc.l())).collect()
    }
}

/// Certified minimum of `λ_{(k,l)}` over [`candidate_set`].
///
/// Candidates are isolated in parallel; the minimum is then taken in list
/// order with exact comparisons, so the result does not depend on scheduling.
pub fn min_lambda(
    cache: &RootCache,
    filling: Filling,
    g: i64,
    orientable_only: bool,
    width: Width,
) -> Result<MinTableRow> {
    let candidates = candidate_set(filling, g, orientable_only);
    let roots: Vec<CertifiedRoot> = candidates
        .par_iter()
        .map(|fc| cache.root(&pair_poly(fc.k(), fc.l())?))
        .collect::<Result<_>>()?;
    let mut row = MinTableRow {
        genus: g,
        filling,
        orientable_only,
        argmins: Vec::new(),
        interval: None,
        candidates_examined: candidates.len(),
    };
    if candidates.is_empty() {
        return Ok(row);
    }
    let mut best = vec![0usize];
    for i in 1..roots.len() {
        let mut a = roots[i].clone();
        let mut b = roots[best[0]].clone();
        match compare_certified(&mut a, &mut b)?.ordering {
            Ordering::Less => best = vec![i],
            Ordering::Equal => best.push(i),
            Ordering::Greater => {}
        }
    }
    row.interval = Some(roots[best[0]].clone().interval(width.bits())?);
    row.argmins = best.into_iter().map(|i| candidates[i]).collect();
    row.argmins.sort();
    Ok(row)
}

/// Where an upper bound on `δ_g` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundSource {
    Filling {
        filling: Filling,
        argmins: Vec<FamilyClass>,
    },
    MagicClass(FiberedClass),
}

/// Classes of the magic manifold itself that beat every filling bound at
/// genus 8 and 13.
pub fn special_classes(g: i64) -> Vec<FiberedClass> {
    let coords: &[(i64, i64, i64)] = match g {
        8 => &[(18, 17, 7)],
        13 => &[(27, 21, 8)],
        _ => &[],
    };
    coords
        .iter()
        .map(|&(x, y, z)| FiberedClass::new(x, y, z).expect("special classes lie in the cone"))
        .collect()
}

/// The smallest dilatation over the three fillings (and the special classes).
#[derive(Clone, Debug)]
pub struct DeltaBound {
    pub genus: i64,
    pub orientable_only: bool,
    pub interval: Option<RootInterval>,
    /// Every source attaining the bound.
    pub sources: Vec<BoundSource>,
    pub rows: Vec<MinTableRow>,
    /// Special classes considered, with their brackets.
    pub specials: Vec<(FiberedClass, RootInterval)>,
}

pub fn delta_upper_bound(
    cache: &RootCache,
    g: i64,
    orientable_only: bool,
    width: Width,
) -> Result<DeltaBound> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("genus must be at least 2, got {g}")));
    }
    let rows = Filling::ALL
        .iter()
        .map(|&r| min_lambda(cache, r, g, orientable_only, width))
        .collect::<Result<Vec<_>>>()?;

    let mut contenders: Vec<(BoundSource, IntPolynomialRef)> = Vec::new();
    for row in &rows {
        if let Some(fc) = row.argmin() {
            contenders.push((
                BoundSource::Filling {
                    filling: row.filling,
                    argmins: row.argmins.clone(),
                },
                IntPolynomialRef::Pair(fc.k(), fc.l()),
            ));
        }
    }
    let mut specials = Vec::new();
    for c in special_classes(g) {
        let genus = homology::fiber_type(&c)?.genus;
        let capped_one_prong = homology::singularity_data(&c).has_one_prong();
        if genus != g || capped_one_prong || (orientable_only && !homology::orientable(&c)) {
            continue;
        }
        let p = teichmuller_poly(c.x(), c.y(), c.z())?;
        specials.push((c, cache.interval(&p, width)?));
        contenders.push((BoundSource::MagicClass(c), IntPolynomialRef::Class(c)));
    }

    let mut best: Vec<usize> = Vec::new();
    for i in 0..contenders.len() {
        if best.is_empty() {
            best.push(i);
            continue;
        }
        let a = contenders[i].1.poly()?;
        let b = contenders[best[0]].1.poly()?;
        match cache.compare(&a, &b)?.ordering {
            Ordering::Less => best = vec![i],
            Ordering::Equal => best.push(i),
            Ordering::Greater => {}
        }
    }
    let interval = match best.first() {
        Some(&i) => Some(cache.interval(&contenders[i].1.poly()?, width)?),
        None => None,
    };
    Ok(DeltaBound {
        genus: g,
        orientable_only,
        interval,
        sources: best.into_iter().map(|i| contenders[i].0.clone()).collect(),
        rows,
        specials,
    })
}

enum IntPolynomialRef {
    Pair(i64, i64),
    Class(FiberedClass),
}

impl IntPolynomialRef {
    fn poly(&self) -> Result<crate::polyroot::IntPolynomial> {
        match self {
            IntPolynomialRef::Pair(k, l) => pair_poly(*k, *l),
            IntPolynomialRef::Class(c) => teichmuller_poly(c.x(), c.y(), c.z()),
        }
    }
}

/// Fractional bits used for logarithms relative to the bracket width.
const LOG_GUARD_BITS: u64 = 16;

/// Enclosure of `log λ_{(k,l)}` from a bracket of width `2^-bits`.
pub fn log_lambda(cache: &RootCache, k: i64, l: i64, bits: u64) -> Result<DyadicInterval> {
    let r = cache.interval(&pair_poly(k, l.abs())?, Width::from_bits(bits))?;
    Ok(r.interval().ln(bits + LOG_GUARD_BITS))
}

/// `k · log λ_{(k,l)}`.
pub fn k_log_lambda(cache: &RootCache, k: i64, l: i64, bits: u64) -> Result<DyadicInterval> {
    Ok(log_lambda(cache, k, l, bits)?.scale_int(k))
}

/// `log((3 + √5)/2) = log λ_{(1,0)}`, the limit of `k log λ_{(k,l)}`.
pub fn golden_log(cache: &RootCache, bits: u64) -> Result<DyadicInterval> {
    log_lambda(cache, 1, 0, bits)
}

/// A point `s = l/k` of the fibered face of a filling with its normalized entropy.
#[derive(Clone, Debug)]
pub struct EntFacePoint {
    pub k: i64,
    pub l: i64,
    /// `Ent = 2 max(|k|, |l|) log λ_{(k,|l|)}`.
    pub ent: DyadicInterval,
}

impl EntFacePoint {
    pub fn parameter(&self) -> Ratio<i64> {
        Ratio::new(self.l, self.k)
    }
}

#[derive(Clone, Debug)]
pub struct EntFaceScan {
    pub filling: Filling,
    pub max_denominator: i64,
    pub points: Vec<EntFacePoint>,
    /// Index of the certified unique minimizer, if one was separated.
    pub minimum: Option<usize>,
    pub bits: u64,
}

/// `Ent` at every reduced `s = l/k ∈ (-1, 1)` with `k ≤ max_denominator`.
pub fn ent_face_scan(cache: &RootCache, filling: Filling, max_denominator: i64) -> Result<EntFaceScan> {
    if max_denominator < 1 {
        return Err(Error::InvalidArgument("denominator bound must be at least 1".into()));
    }
    let mut pairs = Vec::new();
    for k in 1..=max_denominator {
        for l in (1 - k)..k {
            if gcd(k, l) == 1 {
                pairs.push((k, l));
            }
        }
    }
    let mut bits = START_BITS;
    loop {
        let points = pairs
            .par_iter()
            .map(|&(k, l)| {
                Ok(EntFacePoint {
                    k,
                    l,
                    ent: log_lambda(cache, k, l, bits)?.scale_int(2 * k.max(l.abs())),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let minimum = unique_minimum(points.iter().map(|p| &p.ent));
        if minimum.is_some() || bits >= 1024 {
            return Ok(EntFaceScan {
                filling,
                max_denominator,
                points,
                minimum,
                bits,
            });
        }
        bits *= 2;
    }
}

fn unique_minimum<'a, I: Iterator<Item = &'a DyadicInterval>>(values: I) -> Option<usize> {
    let values: Vec<&DyadicInterval> = values.collect();
    let (idx, best) = values.iter().enumerate().min_by(|a, b| a.1.lo.cmp(&b.1.lo))?;
    let separated = values
        .iter()
        .enumerate()
        .all(|(j, v)| j == idx || best.hi < v.lo);
    separated.then_some(idx)
}

/// A fibered class of the magic manifold with its normalized entropy.
#[derive(Clone, Debug)]
pub struct MagicEntPoint {
    pub class: FiberedClass,
    pub ent: DyadicInterval,
}

#[derive(Clone, Debug)]
pub struct MagicEntScan {
    pub max_norm: i64,
    pub points: Vec<MagicEntPoint>,
    pub minimum: Option<usize>,
}

/// `Ent = ‖c‖ log λ_c` over primitive cone classes of norm at most `max_norm`.
pub fn magic_ent_scan(cache: &RootCache, max_norm: i64) -> Result<MagicEntScan> {
    let mut classes = Vec::new();
    for z in (2 - max_norm)..max_norm {
        for x in (z + 1).max(1)..=max_norm + z {
            for y in (z + 1).max(1)..=max_norm + z - x {
                if let Ok(c) = FiberedClass::new(x, y, z) {
                    if c.is_primitive() && homology::thurston_norm(&c) <= max_norm {
                        classes.push(c);
                    }
                }
            }
        }
    }
    classes.sort();
    let bits = START_BITS;
    let points = classes
        .par_iter()
        .map(|&c| {
            let p = teichmuller_poly(c.x(), c.y(), c.z())?;
            let r = cache.interval(&p, Width::from_bits(bits))?;
            Ok(MagicEntPoint {
                class: c,
                ent: r.interval().ln(bits + LOG_GUARD_BITS).scale_int(homology::thurston_norm(&c)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minimum = unique_minimum(points.iter().map(|p| &p.ent));
    Ok(MagicEntScan {
        max_norm,
        points,
        minimum,
    })
}

/// Normalized entropy at a face parameter `s = p/q ∈ (-1, 1)`: `2q log λ_{(q,|p|)}`.
pub fn ent_face(cache: &RootCache, s: Ratio<i64>, bits: u64) -> Result<DyadicInterval> {
    let (p, q) = (*s.numer(), *s.denom());
    if p.abs() >= q {
        return Err(Error::InvalidArgument(format!("face parameter {s} is outside (-1, 1)")));
    }
    Ok(log_lambda(cache, q, p, bits)?.scale_int(2 * q))
}

/// Certifies `1/Ent(s) > t/Ent(s1) + (1-t)/Ent(s2)` for `s = t s1 + (1-t) s2`.
/// Returns the certified truth value; equality-like ties exhaust the
/// precision and raise [`Error::Undecidable`].
pub fn concavity_check(
    cache: &RootCache,
    s1: Ratio<i64>,
    s2: Ratio<i64>,
    t: Ratio<i64>,
) -> Result<bool> {
    let one = Ratio::from_integer(1);
    if t <= Ratio::zero() || t >= one {
        return Err(Error::InvalidArgument(format!("weight {t} is outside (0, 1)")));
    }
    if s1 == s2 {
        return Err(Error::InvalidArgument("the two face parameters coincide".into()));
    }
    for s in [s1, s2] {
        if s.abs() >= one {
            return Err(Error::InvalidArgument(format!("face parameter {s} is outside (-1, 1)")));
        }
    }
    let s = t * s1 + (one - t) * s2;
    let (a, b) = (*t.numer(), *t.denom());
    let mut bits = START_BITS;
    loop {
        let prec = bits + LOG_GUARD_BITS;
        let lhs = ent_face(cache, s, bits)?.recip(prec);
        let r1 = ent_face(cache, s1, bits)?.recip(prec);
        let r2 = ent_face(cache, s2, bits)?.recip(prec);
        let rhs = r1
            .scale_int(a)
            .add(&r2.scale_int(b - a))
            .div(&DyadicInterval::from_int(b), prec);
        match lhs.certified_cmp(&rhs) {
            Some(Ordering::Greater) => return Ok(true),
            Some(_) => return Ok(false),
            None if bits >= MAX_BITS / 2 => return Err(Error::Undecidable { bits }),
            None => bits *= 2,
        }
    }
}
