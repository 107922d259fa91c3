//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion, with timings.
//!
//! Tolerances are fixed here: a cited value with `d` decimals must lie within
//! `10^-d` of the certified bracket (covers rounding and truncation).

use std::cmp::Ordering;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use magicfiber::dyadic::Dyadic;
use magicfiber::fillings::{self, Family, FamilyClass};
use magicfiber::homology::{self, gcd, FiberedClass, Torus};
use magicfiber::polyroot::{
    compare_roots, factor_check, pair_poly, teichmuller_poly, IntPolynomial, RootCache,
    RootInterval, Width,
};
use magicfiber::tables::{self, ClaimStatus, Suite, VerifyConfig};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "published value regression", budget: Duration::from_secs(5), run: values },
        Criterion { id: 2, name: "high-precision separations", budget: Duration::from_secs(30), run: separations },
        Criterion { id: 3, name: "equality certificates", budget: Duration::from_secs(1), run: equalities },
        Criterion { id: 4, name: "congruence tables g = 3..50", budget: Duration::from_secs(120), run: congruences },
        Criterion { id: 5, name: "property suites", budget: Duration::from_secs(180), run: properties },
        Criterion { id: 6, name: "asymptotics of k log lambda(k,1)", budget: Duration::from_secs(30), run: asymptotics },
        Criterion { id: 7, name: "flagged discrepancy", budget: Duration::from_secs(30), run: flagged },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {}: {} ({:.3} s, budget {} s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `10^digits · x` compared with the integer `m`.
fn cmp_scaled(x: &Dyadic, m: &BigInt, digits: u32) -> Ordering {
    let lhs = Dyadic::new(x.mantissa() * BigInt::from(10).pow(digits), x.exponent());
    lhs.cmp(&Dyadic::from_bigint(m.clone()))
}

/// Whether the cited decimal lies within one unit of its last digit of `[lo, hi]`.
fn near(r: &RootInterval, cited: &str) -> bool {
    let digits = cited.split('.').nth(1).map_or(0, str::len) as u32;
    let m: BigInt = cited.replace('.', "").parse().unwrap();
    cmp_scaled(&r.lo, &(&m + 1), digits) != Ordering::Greater
        && cmp_scaled(&r.hi, &(&m - 1), digits) != Ordering::Less
}

fn within(r: &RootInterval, bits: u64) -> bool {
    r.width() <= Width::from_bits(bits).as_dyadic()
}

fn values() -> Check {
    // 2^-17 < 10^-5
    let width = Width::from_bits(17);
    let cache = RootCache::new();

    let golden = cache.interval(&pair_poly(1, 0).unwrap(), width).unwrap();
    // (3 + √5)/2 is the larger root of t^2 - 3t + 1; check the sign change directly
    let quadratic = IntPolynomial::from_terms([(0, 1), (1, -3), (2, 1)]);
    ensure(
        within(&golden, 17)
            && quadratic.sign_at(&golden.lo) <= 0
            && quadratic.sign_at(&golden.hi) >= 0
            && golden.lo > Dyadic::new(BigInt::from(3), -1),
        || format!("lambda(1,0) bracket {golden} misses (3+sqrt5)/2"),
    )?;

    let pairs: &[((i64, i64), &str)] = &[
        ((2, 1), "1.72208"),
        ((3, 1), "1.40127"),
        ((4, 1), "1.28064"),
        ((6, 1), "1.17628"),
        ((8, 1), "1.12876"),
        ((9, 2), "1.11548"),
        ((5, 2), "1.23039"),
        ((5, 3), "1.26123"),
        ((7, 1), "1.14879"),
        ((8, 4), "1.14555"),
        ((3, 2), "1.50614"),
        ((9, 1), "1.11350"),
        ((14, 3), "1.07266"),
    ];
    let classes: &[((i64, i64, i64), &str)] = &[((18, 17, 7), "1.10403"), ((27, 21, 8), "1.07169")];
    let mut checked = 1;
    for &((k, l), cited) in pairs {
        let r = cache.interval(&pair_poly(k, l).unwrap(), width).unwrap();
        ensure(within(&r, 17) && near(&r, cited), || format!("lambda({k},{l}) = {r}, cited {cited}"))?;
        checked += 1;
    }
    for &((x, y, z), cited) in classes {
        let r = cache.interval(&teichmuller_poly(x, y, z).unwrap(), width).unwrap();
        ensure(within(&r, 17) && near(&r, cited), || format!("lambda({x},{y},{z}) = {r}, cited {cited}"))?;
        checked += 1;
    }
    Ok(format!("{checked} values inside brackets of width 2^-17"))
}

fn separations() -> Check {
    // 2^-30 < 10^-9
    let width = Width::from_bits(30);
    let cases = [
        ((73, 13), "1.013457447", (72, 1), "1.013457858"),
        ((125, 17), "1.007791640", (124, 1), "1.007791898"),
    ];
    let mut lines = Vec::new();
    for (a, ca, b, cb) in cases {
        let p = pair_poly(a.0, a.1).unwrap();
        let q = pair_poly(b.0, b.1).unwrap();
        let cmp = compare_roots(&p, &q).map_err(|e| e.to_string())?;
        ensure(cmp.ordering == Ordering::Less, || format!("lambda{a:?} vs lambda{b:?}: {:?}", cmp.ordering))?;
        let ra = magicfiber::polyroot::largest_real_root(&p, width).unwrap();
        let rb = magicfiber::polyroot::largest_real_root(&q, width).unwrap();
        ensure(within(&ra, 30) && near(&ra, ca), || format!("lambda{a:?} = {ra}, cited {ca}"))?;
        ensure(within(&rb, 30) && near(&rb, cb), || format!("lambda{b:?} = {rb}, cited {cb}"))?;
        lines.push(format!("lambda{a:?} < lambda{b:?} at {} bits", cmp.bits));
    }
    Ok(lines.join(", "))
}

fn equalities() -> Check {
    let mut lines = Vec::new();
    for (a, b) in [((3, 1), (4, 3)), ((6, 1), (7, 4))] {
        let p = pair_poly(a.0, a.1).unwrap();
        let q = pair_poly(b.0, b.1).unwrap();
        let cmp = compare_roots(&p, &q).map_err(|e| e.to_string())?;
        let g = cmp
            .common_factor
            .filter(|_| cmp.ordering == Ordering::Equal)
            .ok_or_else(|| format!("lambda{a:?} vs lambda{b:?}: {:?} without certificate", cmp.ordering))?;
        ensure(
            g.degree().unwrap_or(0) > 0 && p.div_exact(&g).is_some() && q.div_exact(&g).is_some(),
            || format!("common factor {g} does not divide both"),
        )?;
        lines.push(format!("lambda{a:?} = lambda{b:?} via {g}"));
    }
    Ok(lines.join("; "))
}

fn congruences() -> Check {
    let cache = RootCache::new();
    let config = VerifyConfig::default();
    let report = tables::verify_claims(&cache, &[Suite::Congruences], &config).map_err(|e| e.to_string())?;
    let failures: Vec<_> = report.items.iter().filter(|i| i.status != ClaimStatus::Pass && i.status != ClaimStatus::Note).collect();
    ensure(failures.is_empty(), || format!("{} failing rows, first: {} {}", failures.len(), failures[0].id, failures[0].detail))?;
    for prefix in [
        "min-3/2-mod10(1)",
        "min-3/2-mod10(2)",
        "min-3/2-mod10(3)",
        "min-3/2-mod10(4)(i)",
        "min-3/2-mod10(4)(ii)",
        "min-3/2-divisible(1)",
        "min-3/2-divisible(2)",
        "min-1/2 g",
        "ori-min-1/2",
        "ori-min-3/2(1)",
        "ori-min-3/2(2)",
        "ori-min-3/2(3)",
    ] {
        let present = report.items.iter().any(|i| i.id.starts_with(prefix));
        ensure(present, || format!("no rows checked for {prefix}"))?;
    }
    Ok(format!(
        "{} rows passed, {} outside the published hypotheses",
        report.count(ClaimStatus::Pass),
        report.count(ClaimStatus::Note)
    ))
}

fn random_class(rng: &mut ChaCha8Rng) -> FiberedClass {
    loop {
        let x = rng.gen_range(1..=200);
        let y = rng.gen_range(1..=200);
        let z = rng.gen_range(-200..=200);
        if let Ok(c) = FiberedClass::new(x, y, z) {
            if c.is_primitive() {
                return c;
            }
        }
    }
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6769_6366);
    let mut parts = Vec::new();

    for _ in 0..1000 {
        let c = random_class(&mut rng);
        let data = homology::singularity_data(&c);
        let fiber = homology::fiber_type(&c).map_err(|e| e.to_string())?;
        ensure(
            data.prong_total() == 2 * homology::thurston_norm(&c) && data.excess_total() == 4 * fiber.genus - 4,
            || format!("Euler-Poincare fails at {c:?}"),
        )?;
    }
    parts.push("Euler-Poincare 1000".to_string());

    for _ in 0..500 {
        let c = random_class(&mut rng);
        ensure(homology::orientable(&c) == homology::orientability_identity_check(&c), || {
            format!("orientability identity fails at {c:?}")
        })?;
    }
    parts.push("orientability 500".to_string());

    let mut n = 0;
    for k in 2..=25 {
        for l in 1..k {
            ensure(factor_check(k, l), || format!("factor_check({k}, {l}) fails"))?;
            n += 1;
        }
    }
    parts.push(format!("factor_check {n}"));

    let cache = RootCache::new();
    let config = VerifyConfig {
        monotone_k_max: 40,
        conditional_k_max: 30,
        ..VerifyConfig::default()
    };
    let report = tables::verify_claims(&cache, &[Suite::Monotone], &config).map_err(|e| e.to_string())?;
    for item in &report.items {
        ensure(item.status == ClaimStatus::Pass, || format!("{}: {}", item.id, item.detail))?;
    }
    parts.push(format!("monotonicity grids {}", report.items.len()));

    let mut m = 0;
    while m < 100 {
        let d1 = rng.gen_range(1..=6);
        let d2 = rng.gen_range(1..=6);
        let s1 = num_rational::Ratio::new(rng.gen_range(1 - d1..d1), d1);
        let s2 = num_rational::Ratio::new(rng.gen_range(1 - d2..d2), d2);
        let dt = rng.gen_range(2..=5);
        let t = num_rational::Ratio::new(rng.gen_range(1..dt), dt);
        if s1 == s2 {
            continue;
        }
        let holds = tables::concavity_check(&cache, s1, s2, t).map_err(|e| e.to_string())?;
        ensure(holds, || format!("concavity fails at s1 = {s1}, s2 = {s2}, t = {t}"))?;
        m += 1;
    }
    parts.push("concavity 100".to_string());

    let mut classes = 0;
    for family in Family::ALL {
        for k in 1..=30 {
            for l in (1 - k)..k {
                if gcd(k, l) != 1 {
                    continue;
                }
                let fc = FamilyClass::new(family, k, l).unwrap();
                cross_consistent(&fc)?;
                classes += 1;
            }
        }
    }
    parts.push(format!("fillings vs homology {classes}"));
    Ok(parts.join(", "))
}

fn cross_consistent(fc: &FamilyClass) -> Result<(), String> {
    let c = fc.to_fibered_class();
    let fiber = homology::fiber_type(&c).map_err(|e| e.to_string())?;
    let sort = |d: &homology::SingularityData| {
        let mut v: Vec<_> = d.entries.iter().map(|e| (e.torus, e.prongs, e.multiplicity)).collect();
        v.sort();
        v
    };
    let direct = homology::singularity_data(&c);
    let capped = fillings::capped_singularity_data(fc);
    let (sa, sb, sg) = homology::boundary_slopes(&c);
    let filled = match fc.family().filled_torus() {
        Torus::Alpha => sa,
        Torus::Beta => sb,
        Torus::Gamma => sg,
    };
    ensure(
        fiber.genus == fillings::closed_genus(fc)
            && sort(&direct) == sort(&capped)
            && fillings::has_one_prong(fc) == direct.has_one_prong()
            && fillings::capped_orientable(fc) == homology::orientable(&c)
            && filled == fc.family().filling().slope(),
        || format!("{fc} disagrees with its cone class {c:?}"),
    )
}

fn asymptotics() -> Check {
    let cache = RootCache::new();
    let report = tables::verify_claims(&cache, &[Suite::Asymptotic], &VerifyConfig::default())
        .map_err(|e| e.to_string())?;
    for item in &report.items {
        ensure(item.status == ClaimStatus::Pass, || format!("{}: {}", item.id, item.detail))?;
    }
    let values: Vec<String> = [50, 100, 200]
        .iter()
        .map(|&k| {
            let v = tables::k_log_lambda(&cache, k, 1, 64).unwrap();
            format!("k={k}: {}", v.to_decimal(7).0)
        })
        .collect();
    Ok(values.join(", "))
}

fn flagged() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_magicfiber"))
        .args(["--no-cache", "verify", "--suite=inequalities", "--format", "text"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let flags: Vec<&str> = stdout.lines().filter(|l| l.starts_with("[FLAG]")).collect();
    ensure(flags.len() == 1, || format!("{} FLAG lines", flags.len()))?;
    ensure(
        flags[0].contains("compare(1)") && flags[0].contains("lambda(9, 7) > lambda(8, 1)"),
        || format!("unexpected FLAG line: {}", flags[0]),
    )?;
    ensure(!stdout.lines().any(|l| l.starts_with("[FAIL]")), || "FAIL lines present".into())?;
    Ok("one FLAG: certified lambda(9,7) > lambda(8,1)".into())
}
