//! JSON fragments for certified values.

use magicfiber::dyadic::DyadicInterval;
use magicfiber::fillings::FamilyClass;
use magicfiber::homology::{FiberType, FiberedClass, SingularityData, Slope};
use magicfiber::polyroot::{RootInterval, Width};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Fractional decimal digits that resolve a bracket of width `2^-bits`.
pub fn digits_for(bits: u64) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).floor() as usize + 2
}

/// `"c ± r"` with `[c - r, c + r] = [lo, hi]` exactly; `lo`, `hi` carry
/// `digits` fractional digits.
pub fn plus_minus(lo: &str, hi: &str, digits: usize) -> String {
    let parse = |s: &str| -> BigInt { s.replace('.', "").parse().expect("decimal rendering") };
    let (a, b) = (parse(lo), parse(hi));
    // one extra digit keeps the midpoint exact
    let center = (&a + &b) * 5;
    let radius = (&b - &a) * 5;
    format!("{} ± {}", fixed(&center, digits + 1), fixed(&radius, digits + 1))
}

fn fixed(n: &BigInt, digits: usize) -> String {
    let neg = n.sign() == num_bigint::Sign::Minus;
    let mut s = n.magnitude().to_string();
    if s.len() <= digits {
        s = format!("{}{s}", "0".repeat(digits + 1 - s.len()));
    }
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

pub fn interval_json(lo: &str, hi: &str, digits: usize) -> Value {
    json!({
        "lo": lo,
        "hi": hi,
        "value": plus_minus(lo, hi, digits),
    })
}

/// A certified root bracket, rendered outward at the precision of `width`.
pub fn root_json(r: &RootInterval, width: Width) -> Value {
    let digits = digits_for(width.bits());
    let (lo, hi) = r.to_decimal(digits);
    let mut v = interval_json(&lo, &hi, digits);
    v["width"] = json!(width.to_string());
    v["tail_certificate"] = json!(r.certificate.to_string());
    v
}

pub fn dyadic_interval_json(v: &DyadicInterval, digits: usize) -> Value {
    let (lo, hi) = v.to_decimal(digits);
    interval_json(&lo, &hi, digits)
}

pub fn slope_json(s: &Slope) -> Value {
    json!(s.to_string())
}

pub fn class_json(c: &FiberedClass) -> Value {
    json!({ "x": c.x(), "y": c.y(), "z": c.z() })
}

pub fn family_class_json(fc: &FamilyClass) -> Value {
    json!({ "family": fc.family().to_string(), "k": fc.k(), "l": fc.l() })
}

pub fn fiber_json(f: &FiberType) -> Value {
    json!({
        "genus": f.genus,
        "boundary": { "alpha": f.b_alpha, "beta": f.b_beta, "gamma": f.b_gamma },
        "euler_characteristic": f.euler_characteristic(),
        "surface": f.to_string(),
    })
}

pub fn singularities_json(d: &SingularityData) -> Value {
    let entries: Vec<Value> = d
        .entries
        .iter()
        .map(|e| json!({ "torus": e.torus.name(), "prongs": e.prongs, "multiplicity": e.multiplicity }))
        .collect();
    json!({
        "entries": entries,
        "prong_total": d.prong_total(),
        "excess_total": d.excess_total(),
        "one_prong": d.has_one_prong(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_minus_is_exact() {
        assert_eq!(plus_minus("1.10403", "1.10404", 5), "1.104035 ± 0.000005");
        assert_eq!(plus_minus("0.5", "0.5", 1), "0.50 ± 0.00");
    }

    #[test]
    fn digits_cover_the_width() {
        assert_eq!(digits_for(40), 14);
        assert_eq!(digits_for(10), 5);
    }
}
