//! The three two-cusped fillings `N(-3/2)`, `N(-1/2)`, `N(2)` and their
//! fibered classes `k·u + l·v`.
//!
//! Family A uses the basis `𝔞, 𝔟` (slope −3/2 filled on the β torus), family
//! P uses `𝔭, 𝔮` (−1/2 on β) and family R uses `𝔯, 𝔰` (2 on γ).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::homology::{
    self, gcd, FiberType, FiberedClass, SingularityData, SingularityEntry, Slope, Torus,
};
use crate::polyroot::{pair_poly, RootCache, RootInterval, Width};

/// Which filling a family class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    P,
    R,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::P, Family::R];

    /// Cone coordinates of `k·u + l·v`, with no range checks.
    pub fn coordinates(self, k: i64, l: i64) -> (i64, i64, i64) {
        match self {
            Family::A => (2 * k + l, 2 * k + 2 * l, k + 2 * l),
            Family::P => (k, 2 * k + 2 * l, l),
            Family::R => (k + l, k - l, -k),
        }
    }

    pub fn filling(self) -> Filling {
        match self {
            Family::A => Filling::MinusThreeHalves,
            Family::P => Filling::MinusOneHalf,
            Family::R => Filling::Two,
        }
    }

    /// The torus that is filled.
    pub fn filled_torus(self) -> Torus {
        match self {
            Family::A | Family::P => Torus::Beta,
            Family::R => Torus::Gamma,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::P => "P",
            Family::R => "R",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "P" | "p" => Ok(Family::P),
            "R" | "r" => Ok(Family::R),
            _ => Err(Error::InvalidArgument(format!(
                "unknown family `{s}` (expected A, P or R)"
            ))),
        }
    }
}

/// A filling slope `r ∈ {-3/2, -1/2, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filling {
    MinusThreeHalves,
    MinusOneHalf,
    Two,
}

impl Filling {
    pub const ALL: [Filling; 3] = [Filling::MinusThreeHalves, Filling::MinusOneHalf, Filling::Two];

    pub fn family(self) -> Family {
        match self {
            Filling::MinusThreeHalves => Family::A,
            Filling::MinusOneHalf => Family::P,
            Filling::Two => Family::R,
        }
    }

    pub fn slope(self) -> Slope {
        match self {
            Filling::MinusThreeHalves => Slope::new(-3, 2),
            Filling::MinusOneHalf => Slope::new(-1, 2),
            Filling::Two => Slope::integer(2),
        }
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.slope())
    }
}

impl FromStr for Filling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-3/2" => Ok(Filling::MinusThreeHalves),
            "-1/2" => Ok(Filling::MinusOneHalf),
            "2" | "2/1" => Ok(Filling::Two),
            _ => Err(Error::InvalidArgument(format!(
                "unknown filling `{s}` (expected -3/2, -1/2 or 2)"
            ))),
        }
    }
}

/// `k·u + l·v` on one of the three fillings, with `k > 0`, `-k < l < k`,
/// `gcd(k, |l|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyClass {
    family: Family,
    k: i64,
    l: i64,
}

impl FamilyClass {
    pub fn new(family: Family, k: i64, l: i64) -> Result<Self> {
        if k <= 0 {
            return Err(Error::FamilyRange { k, l, reason: "k must be positive" });
        }
        if l <= -k || l >= k {
            return Err(Error::FamilyRange { k, l, reason: "l must satisfy -k < l < k" });
        }
        if gcd(k, l) != 1 {
            return Err(Error::FamilyRange { k, l, reason: "gcd(k, |l|) must be 1" });
        }
        Ok(FamilyClass { family, k, l })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn to_fibered_class(&self) -> FiberedClass {
        let (x, y, z) = self.family.coordinates(self.k, self.l);
        FiberedClass::new(x, y, z).expect("family classes lie in the fibered cone")
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.family, self.k, self.l)
    }
}

pub fn to_fibered_class(fc: &FamilyClass) -> FiberedClass {
    fc.to_fibered_class()
}

/// Genus of the closed fiber after capping every boundary component.
pub fn closed_genus(fc: &FamilyClass) -> i64 {
    let (k, l) = (fc.k, fc.l);
    match fc.family {
        Family::A if (2 * k + l) % 5 == 0 || (k + 2 * l) % 5 == 0 => k - 2,
        Family::P if k % 3 == 0 || l % 3 == 0 => k - 1,
        _ => k,
    }
}

/// Residue-class form of the family-A genus drop, by `l mod 5`:
/// `l ≡ 0` needs `k ≡ 0`; `l ≡ 1, 4` need `k ≡ 2, 3`; `l ≡ 2, 3` need `k ≡ 1, 4`.
pub fn genus_drop_by_residues(k: i64, l: i64) -> bool {
    let k5 = k.rem_euclid(5);
    match l.rem_euclid(5) {
        0 => k5 == 0,
        1 | 4 => k5 == 2 || k5 == 3,
        _ => k5 == 1 || k5 == 4,
    }
}

/// Fiber of the two-cusped filling: genus `closed_genus`, with the boundary
/// components on the two unfilled tori.
pub fn one_cusp_filled_fiber(fc: &FamilyClass) -> FiberType {
    let (k, l) = (fc.k, fc.l);
    let genus = closed_genus(fc);
    match fc.family {
        Family::A => FiberType {
            genus,
            b_alpha: gcd(2 * k + l, 5),
            b_beta: 0,
            b_gamma: gcd(5, k + 2 * l),
        },
        Family::P => FiberType {
            genus,
            b_alpha: gcd(k, 3),
            b_beta: 0,
            b_gamma: gcd(3, l),
        },
        Family::R => FiberType {
            genus,
            b_alpha: 1,
            b_beta: 1,
            b_gamma: 0,
        },
    }
}

/// The capped monodromy has a 1-pronged singularity.
pub fn has_one_prong(fc: &FamilyClass) -> bool {
    let (k, l) = (fc.k, fc.l.abs());
    match fc.family {
        Family::A => matches!((k, l), (2, 1) | (3, 1) | (4, 3)),
        Family::P => matches!((k, l), (1, 0) | (3, 1) | (3, 2)),
        Family::R => fc.k + fc.l == 1 || fc.k - fc.l == 1,
    }
}

/// Orientability of the invariant foliations of the capped monodromy.
pub fn capped_orientable(fc: &FamilyClass) -> bool {
    let odd = |n: i64| n.rem_euclid(2) == 1;
    match fc.family {
        Family::A => odd(fc.k) && !odd(fc.l),
        Family::P => !odd(fc.k) && odd(fc.l),
        Family::R => odd(fc.k) && odd(fc.l),
    }
}

/// Singularity data of the capped monodromy, per family:
///
/// * A: `gcd(2k+l, 5)` points with `(2k+l)/gcd` prongs from α, `|k+l|`
///   regular points from β, `gcd(5, k+2l)` points with `(2k-l)/gcd` prongs from γ;
/// * P: `gcd(k, 3)` points with `k/gcd` prongs, `|k+l|` regular points,
///   `gcd(3, l)` points with `3k/gcd` prongs;
/// * R: one `(k+l)`-prong, one `(k-l)`-prong and `k` four-pronged points.
pub fn capped_singularity_data(fc: &FamilyClass) -> SingularityData {
    let (k, l) = (fc.k, fc.l);
    let entry = |torus, prongs, multiplicity| SingularityEntry {
        torus,
        prongs,
        multiplicity,
    };
    let entries = match fc.family {
        Family::A => {
            let (ga, gc) = (gcd(2 * k + l, 5), gcd(5, k + 2 * l));
            [
                entry(Torus::Alpha, (2 * k + l) / ga, ga),
                entry(Torus::Beta, 2, (k + l).abs()),
                entry(Torus::Gamma, (2 * k - l) / gc, gc),
            ]
        }
        Family::P => {
            let (ga, gc) = (gcd(k, 3), gcd(3, l));
            [
                entry(Torus::Alpha, k / ga, ga),
                entry(Torus::Beta, 2, (k + l).abs()),
                entry(Torus::Gamma, 3 * k / gc, gc),
            ]
        }
        Family::R => [
            entry(Torus::Alpha, k + l, 1),
            entry(Torus::Beta, k - l, 1),
            entry(Torus::Gamma, 4, k),
        ],
    };
    SingularityData::from_entries(entries)
}

/// Status of a hyperbolicity verdict for a fully filled manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperbolicityStatus {
    Hyperbolic,
    NonHyperbolic,
    NecessaryConditionFails,
    Undetermined,
}

impl fmt::Display for HyperbolicityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperbolicityStatus::Hyperbolic => "Hyperbolic",
            HyperbolicityStatus::NonHyperbolic => "NonHyperbolic",
            HyperbolicityStatus::NecessaryConditionFails => "NecessaryConditionFails",
            HyperbolicityStatus::Undetermined => "Undetermined",
        })
    }
}

/// What certifies a failure of hyperbolicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// A filling slope from `{∞, -3, -2, -1, 0}`.
    Slope(Torus, Slope),
    /// Two slopes forming one of the pairs `(1, 1)`, `(-4, -1/2)`, `(-3/2, -5/2)`.
    Pair((Torus, Slope), (Torus, Slope)),
    /// Listed among the non-hyperbolic family classes.
    FamilyList,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Slope(t, s) => write!(f, "slope {s} on {}", t.name()),
            Witness::Pair((t1, s1), (t2, s2)) => {
                write!(f, "pair ({s1}, {s2}) on ({}, {})", t1.name(), t2.name())
            }
            Witness::FamilyList => write!(f, "exceptional family class"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HyperbolicityVerdict {
    pub status: HyperbolicityStatus,
    pub witness: Option<Witness>,
}

impl fmt::Display for HyperbolicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} ({w})", self.status),
            None => write!(f, "{}", self.status),
        }
    }
}

fn exceptional_slopes() -> [Slope; 5] {
    [
        Slope::INFINITY,
        Slope::integer(-3),
        Slope::integer(-2),
        Slope::integer(-1),
        Slope::integer(0),
    ]
}

fn exceptional_pairs() -> [(Slope, Slope); 3] {
    [
        (Slope::integer(1), Slope::integer(1)),
        (Slope::integer(-4), Slope::new(-1, 2)),
        (Slope::new(-3, 2), Slope::new(-5, 2)),
    ]
}

/// Necessary condition for `N(r_α, r_β, r_γ)` to be hyperbolic: no slope is
/// exceptional and no two slopes form an exceptional pair (in either order,
/// on any two tori). Fails with a witness, or is `Undetermined`.
pub fn necessary_condition(slopes: [(Torus, Slope); 3]) -> HyperbolicityVerdict {
    let fail = |w| HyperbolicityVerdict {
        status: HyperbolicityStatus::NecessaryConditionFails,
        witness: Some(w),
    };
    for (t, s) in slopes {
        if exceptional_slopes().contains(&s) {
            return fail(Witness::Slope(t, s));
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (a, b) = (slopes[i].1, slopes[j].1);
            if exceptional_pairs()
                .iter()
                .any(|&(p, q)| (a, b) == (p, q) || (a, b) == (q, p))
            {
                return fail(Witness::Pair(slopes[i], slopes[j]));
            }
        }
    }
    HyperbolicityVerdict {
        status: HyperbolicityStatus::Undetermined,
        witness: None,
    }
}

/// Slopes of the fully filled manifold: the family's filling slope on the
/// filled torus and the fiber's boundary slopes on the other two.
pub fn filled_slopes(fc: &FamilyClass) -> [(Torus, Slope); 3] {
    let (a, b, g) = homology::boundary_slopes(&fc.to_fibered_class());
    let filled = fc.family.filled_torus();
    let r = fc.family.filling().slope();
    let pick = |t: Torus, s: Slope| if t == filled { r } else { s };
    [
        (Torus::Alpha, pick(Torus::Alpha, a)),
        (Torus::Beta, pick(Torus::Beta, b)),
        (Torus::Gamma, pick(Torus::Gamma, g)),
    ]
}

/// Hyperbolicity of the manifold obtained by filling every cusp of `N` along
/// the fiber's boundary slopes (and the family's slope).
///
/// The exact classification lists for the three families decide the answer;
/// the exceptional-slope test is also run, and any failure of it is reported
/// as non-hyperbolic with its witness.
pub fn hyperbolicity(fc: &FamilyClass) -> HyperbolicityVerdict {
    let (k, l) = (fc.k, fc.l.abs());
    let listed = match fc.family {
        Family::A => matches!((k, l), (2, 1) | (3, 1) | (4, 3)),
        Family::P => matches!((k, l), (1, 0) | (3, 1) | (3, 2)),
        Family::R => matches!((k, l), (2, 1) | (3, 2) | (4, 3)),
    };
    let generic = necessary_condition(filled_slopes(fc));
    if generic.status == HyperbolicityStatus::NecessaryConditionFails {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::NonHyperbolic,
            witness: generic.witness,
        };
    }
    if listed {
        return HyperbolicityVerdict {
            status: HyperbolicityStatus::NonHyperbolic,
            witness: Some(Witness::FamilyList),
        };
    }
    HyperbolicityVerdict {
        status: HyperbolicityStatus::Hyperbolic,
        witness: None,
    }
}

/// Certified dilatation `λ_{(k,|l|)}` of the capped monodromy.
pub fn dilatation(fc: &FamilyClass, width: Width) -> Result<RootInterval> {
    crate::polyroot::largest_real_root(&pair_poly(fc.k, fc.l.abs())?, width)
}

/// As [`dilatation`], through a shared cache.
pub fn dilatation_cached(cache: &RootCache, fc: &FamilyClass, width: Width) -> Result<RootInterval> {
    cache.interval(&pair_poly(fc.k, fc.l.abs())?, width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(f: Family, k: i64, l: i64) -> FamilyClass {
        FamilyClass::new(f, k, l).unwrap()
    }

    #[test]
    fn coordinates_of_basis_combinations() {
        assert_eq!(fc(Family::A, 1, 0).to_fibered_class().coordinates(), (2, 2, 1));
        assert_eq!(fc(Family::P, 2, 1).to_fibered_class().coordinates(), (2, 6, 1));
        assert_eq!(fc(Family::R, 3, 1).to_fibered_class().coordinates(), (4, 2, -3));
    }

    #[test]
    fn range_checks() {
        assert!(FamilyClass::new(Family::A, 4, 2).is_err());
        assert!(FamilyClass::new(Family::A, 2, 0).is_err());
        assert!(FamilyClass::new(Family::A, 3, 3).is_err());
        assert!(FamilyClass::new(Family::A, 0, 0).is_err());
        assert!(FamilyClass::new(Family::A, 1, 0).is_ok());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(closed_genus(&fc(Family::A, 9, 2)), 7);
        assert_eq!(closed_genus(&fc(Family::A, 3, 2)), 3);
        assert_eq!(closed_genus(&fc(Family::A, 4, 1)), 4);
        assert_eq!(closed_genus(&fc(Family::P, 3, 1)), 2);
        assert_eq!(closed_genus(&fc(Family::R, 5, 2)), 5);
    }

    #[test]
    fn two_cusped_fibers() {
        let f = one_cusp_filled_fiber(&fc(Family::A, 9, 2));
        assert_eq!((f.genus, f.boundary_total()), (7, 6));
        let f = one_cusp_filled_fiber(&fc(Family::P, 2, 1));
        assert_eq!((f.genus, f.boundary_total()), (2, 2));
        let f = one_cusp_filled_fiber(&fc(Family::R, 3, 1));
        assert_eq!((f.genus, f.boundary_total()), (3, 2));
    }

    #[test]
    fn one_prong_examples() {
        assert!(has_one_prong(&fc(Family::A, 2, 1)));
        assert!(!has_one_prong(&fc(Family::R, 3, 1)));
        assert!(has_one_prong(&fc(Family::P, 3, 2)));
        assert!(has_one_prong(&fc(Family::R, 5, 4)));
    }

    #[test]
    fn orientability_examples() {
        assert!(capped_orientable(&fc(Family::A, 9, 2)));
        assert!(capped_orientable(&fc(Family::P, 2, 1)));
        assert!(!capped_orientable(&fc(Family::R, 4, 1)));
    }

    #[test]
    fn capped_data_examples() {
        assert_eq!(capped_singularity_data(&fc(Family::A, 7, 4)).data(), vec![16]);
        let r31 = capped_singularity_data(&fc(Family::R, 3, 1));
        assert_eq!(r31.data(), vec![2, 2, 2, 2]);
        assert_eq!(r31.excess_total(), 4 * 3 - 4);
        let p21 = capped_singularity_data(&fc(Family::P, 2, 1));
        assert_eq!(p21.data(), vec![4]);
        assert_eq!(p21.excess_total(), 4);
    }

    #[test]
    fn hyperbolicity_examples() {
        let h = |f, k, l| hyperbolicity(&fc(f, k, l)).status;
        assert_eq!(h(Family::A, 2, 1), HyperbolicityStatus::NonHyperbolic);
        assert_eq!(h(Family::R, 2, 1), HyperbolicityStatus::NonHyperbolic);
        assert_eq!(h(Family::A, 9, 2), HyperbolicityStatus::Hyperbolic);
        assert_eq!(h(Family::A, 4, -3), HyperbolicityStatus::NonHyperbolic);
        assert_eq!(h(Family::R, 5, 4), HyperbolicityStatus::Hyperbolic);
    }

    #[test]
    fn generic_test_is_only_necessary() {
        let v = necessary_condition([
            (Torus::Alpha, Slope::new(-4, 3)),
            (Torus::Beta, Slope::new(-25, 17)),
            (Torus::Gamma, Slope::integer(-5)),
        ]);
        assert_eq!(v.status, HyperbolicityStatus::Undetermined);
        let v = necessary_condition([
            (Torus::Alpha, Slope::integer(7)),
            (Torus::Beta, Slope::new(-1, 2)),
            (Torus::Gamma, Slope::integer(-4)),
        ]);
        assert_eq!(v.status, HyperbolicityStatus::NecessaryConditionFails);
    }

    #[test]
    fn filling_parse_round_trip() {
        for f in Filling::ALL {
            assert_eq!(f.to_string().parse::<Filling>().unwrap(), f);
        }
        assert!("1/2".parse::<Filling>().is_err());
    }
}
