//! Integral classes in the fibered cone of the magic manifold and the closed
//! formulas for their fibers.
//!
//! A class is `xα + yβ + zγ` in `H_2(N, ∂N)`; the fibered cone considered is
//! `x > 0, y > 0, x > z, y > z`, on which the Thurston norm is `x + y - z`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polyroot::IntPolynomial;

/// `gcd(|a|, |b|)` with `gcd(0, w) = |w|`.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// A class `(x, y, z)` inside the open fibered cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberedClass {
    x: i64,
    y: i64,
    z: i64,
}

impl FiberedClass {
    /// Checks cone membership, reporting the first violated inequality.
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self> {
        let checks: [(bool, &'static str); 4] = [
            (x > 0, "x > 0"),
            (y > 0, "y > 0"),
            (x > z, "x > z"),
            (y > z, "y > z"),
        ];
        for (ok, violated) in checks {
            if !ok {
                return Err(Error::ConeViolation { x, y, z, violated });
            }
        }
        Ok(FiberedClass { x, y, z })
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn coordinates(&self) -> (i64, i64, i64) {
        (self.x, self.y, self.z)
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.x, self.y), self.z) == 1
    }
}

impl fmt::Display for FiberedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// One of the three boundary tori of the magic manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Torus {
    Alpha,
    Beta,
    Gamma,
}

impl Torus {
    pub const ALL: [Torus; 3] = [Torus::Alpha, Torus::Beta, Torus::Gamma];

    pub fn name(&self) -> &'static str {
        match self {
            Torus::Alpha => "alpha",
            Torus::Beta => "beta",
            Torus::Gamma => "gamma",
        }
    }
}

/// A boundary slope `numerator / denominator` in lowest terms, sign on the
/// numerator; `1/0` is the slope ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    numerator: i64,
    denominator: i64,
}

impl Slope {
    /// Reduces `p/q`. Panics on `0/0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(p != 0 || q != 0, "0/0 is not a slope");
        if q == 0 {
            return Slope::INFINITY;
        }
        let g = gcd(p, q);
        let s = q.signum();
        Slope {
            numerator: s * p / g,
            denominator: s * q / g,
        }
    }

    pub const INFINITY: Slope = Slope {
        numerator: 1,
        denominator: 0,
    };

    pub fn integer(n: i64) -> Self {
        Slope::new(n, 1)
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn is_infinite(&self) -> bool {
        self.denominator == 0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// Genus and per-torus boundary counts of a fiber `Σ_{g, b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiberType {
    pub genus: i64,
    pub b_alpha: i64,
    pub b_beta: i64,
    pub b_gamma: i64,
}

impl FiberType {
    pub fn boundary_total(&self) -> i64 {
        self.b_alpha + self.b_beta + self.b_gamma
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus - self.boundary_total()
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sigma_{{{},{}}}", self.genus, self.boundary_total())
    }
}

/// Singularities sharing a torus and a prong count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityEntry {
    pub torus: Torus,
    pub prongs: i64,
    pub multiplicity: i64,
}

impl SingularityEntry {
    /// A 2-pronged point is a regular point of the foliation.
    pub fn is_regular(&self) -> bool {
        self.prongs == 2
    }
}

/// Boundary singularities of the stable foliation. There are no interior
/// singularities for the monodromies handled here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SingularityData {
    pub entries: Vec<SingularityEntry>,
    pub interior: Vec<i64>,
}

impl SingularityData {
    /// Entries merged by `(torus, prongs)`, zero multiplicities dropped, sorted.
    pub fn from_entries<I: IntoIterator<Item = SingularityEntry>>(entries: I) -> Self {
        let mut merged: BTreeMap<(Torus, i64), i64> = BTreeMap::new();
        for e in entries {
            if e.multiplicity > 0 {
                *merged.entry((e.torus, e.prongs)).or_default() += e.multiplicity;
            }
        }
        SingularityData {
            entries: merged
                .into_iter()
                .map(|((torus, prongs), multiplicity)| SingularityEntry {
                    torus,
                    prongs,
                    multiplicity,
                })
                .collect(),
            interior: Vec::new(),
        }
    }

    /// `Σ multiplicity · prongs`.
    pub fn prong_total(&self) -> i64 {
        self.entries.iter().map(|e| e.multiplicity * e.prongs).sum()
    }

    /// `Σ multiplicity · (prongs - 2)`.
    pub fn excess_total(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity * (e.prongs - 2))
            .sum::<i64>()
            + self.interior.iter().map(|p| p - 2).sum::<i64>()
    }

    pub fn multiplicity_on(&self, torus: Torus) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.torus == torus)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn has_one_prong(&self) -> bool {
        self.entries.iter().any(|e| e.prongs == 1)
    }

    /// The singularity data vector: one value `p - 2` per point, tori in
    /// order α, β, γ, regular points omitted.
    pub fn data(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for e in self.entries.iter().filter(|e| !e.is_regular()) {
            out.extend(std::iter::repeat(e.prongs - 2).take(e.multiplicity as usize));
        }
        out
    }
}

/// `‖xα + yβ + zγ‖ = x + y - z`.
pub fn thurston_norm(c: &FiberedClass) -> i64 {
    c.x + c.y - c.z
}

/// `(gcd(x, y+z), gcd(y, z+x), gcd(z, x+y))`.
pub fn boundary_counts(c: &FiberedClass) -> (i64, i64, i64) {
    (
        gcd(c.x, c.y + c.z),
        gcd(c.y, c.z + c.x),
        gcd(c.z, c.x + c.y),
    )
}

/// `(-(y+z)/x, -(z+x)/y, -(x+y)/z)`.
pub fn boundary_slopes(c: &FiberedClass) -> (Slope, Slope, Slope) {
    (
        Slope::new(-(c.y + c.z), c.x),
        Slope::new(-(c.z + c.x), c.y),
        Slope::new(-(c.x + c.y), c.z),
    )
}

/// Genus and boundary counts of the fiber, from `2 - 2g - b = -‖c‖`.
pub fn fiber_type(c: &FiberedClass) -> Result<FiberType> {
    if !c.is_primitive() {
        return Err(Error::NotPrimitive {
            x: c.x,
            y: c.y,
            z: c.z,
        });
    }
    let (b_alpha, b_beta, b_gamma) = boundary_counts(c);
    let twice = thurston_norm(c) - (b_alpha + b_beta + b_gamma) + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InconsistentGenus {
            x: c.x,
            y: c.y,
            z: c.z,
        });
    }
    Ok(FiberType {
        genus: twice / 2,
        b_alpha,
        b_beta,
        b_gamma,
    })
}

/// Prong counts `x/gcd(x, y+z)`, `y/gcd(y, x+z)`, `(x+y-2z)/gcd(z, x+y)` on
/// each boundary component of the respective torus.
pub fn singularity_data(c: &FiberedClass) -> SingularityData {
    let (ba, bb, bg) = boundary_counts(c);
    SingularityData::from_entries([
        SingularityEntry {
            torus: Torus::Alpha,
            prongs: c.x / ba,
            multiplicity: ba,
        },
        SingularityEntry {
            torus: Torus::Beta,
            prongs: c.y / bb,
            multiplicity: bb,
        },
        SingularityEntry {
            torus: Torus::Gamma,
            prongs: (c.x + c.y - 2 * c.z) / bg,
            multiplicity: bg,
        },
    ])
}

/// The monodromy has orientable invariant foliations iff `x, y` are even and `z` odd.
pub fn orientable(c: &FiberedClass) -> bool {
    c.x % 2 == 0 && c.y % 2 == 0 && c.z.rem_euclid(2) == 1
}

/// Symbolic check of `P(t^x, t^y, t^z) = A((-t)^x, (-t)^y, (-t)^z)` where
/// `P = -t1 - t2 + t3 + t1 t2 - t1 t3 - t2 t3` and
/// `A = t1 t2 + t2 t3 + t3 t1 - t1 - t2 - t3`, after clearing the common
/// lowest power of `t`.
pub fn orientability_identity_check(c: &FiberedClass) -> bool {
    let (x, y, z) = (c.x, c.y, c.z);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let p_side = [
        (x, -1),
        (y, -1),
        (z, 1),
        (x + y, 1),
        (x + z, -1),
        (y + z, -1),
    ];
    let a_side = [
        (x + y, sign(x) * sign(y)),
        (y + z, sign(y) * sign(z)),
        (z + x, sign(z) * sign(x)),
        (x, -sign(x)),
        (y, -sign(y)),
        (z, -sign(z)),
    ];
    let low = p_side.iter().chain(a_side.iter()).map(|t| t.0).min().unwrap();
    let expand = |terms: &[(i64, i64)]| {
        IntPolynomial::from_terms(terms.iter().map(|(e, k)| ((e - low) as u32, *k)))
    };
    expand(&p_side) == expand(&a_side)
}
