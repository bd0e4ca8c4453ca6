//! Acceptance suite: every criterion below is exact (tolerance zero) and
//! prints one pass/fail line.  The whole file is one test so the summary
//! comes out in order.

use std::time::Instant;

use bcsym::cli::{run_suite, SuiteConfig};
use bcsym::report::Report;

struct Outcome {
    label: &'static str,
    pass: bool,
    checks: usize,
    failures: Vec<String>,
}

fn run(label: &'static str, suites: &[(&str, SuiteConfig)]) -> Outcome {
    let started = Instant::now();
    let mut pass = true;
    let mut checks = 0;
    let mut failures = Vec::new();
    for (name, cfg) in suites {
        let report: Report = match run_suite(name, cfg) {
            Ok(r) => r,
            Err(e) => {
                pass = false;
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        checks += report.items.len();
        for item in report.failures().take(3) {
            failures.push(format!(
                "{} [{}]: {} != {}",
                item.identity, item.shapes, item.lhs, item.rhs
            ));
        }
        pass &= report.all_pass();
    }
    println!(
        "criterion {:<38} {} ({} checks, {:.1?})",
        label,
        if pass { "PASS" } else { "FAIL" },
        checks,
        started.elapsed()
    );
    for f in &failures {
        println!("    {f}");
    }
    Outcome {
        label,
        pass,
        checks,
        failures,
    }
}

fn cfg(max_size: u32, max_n: usize, spec_count: u64, seed: u64) -> SuiteConfig {
    SuiteConfig {
        max_size,
        max_n,
        series_order: 3,
        spec_count,
        seed,
        strict: false,
        threads: None,
    }
}

#[test]
fn acceptance() {
    let started = Instant::now();
    let mut outcomes = Vec::new();

    // 1. product-function and skew-specialization lemmas, |λ| ≤ 6,
    //    3 specializations
    outcomes.push(run("1-product-and-skew-lemmas", &[("cnorm", cfg(6, 3, 3, 101))]));

    // 2. interpolation core: extra vanishing, diagonal normalization,
    //    symmetry lemmas, variable/index reduction, |λ| ≤ 5, n ≤ 3
    outcomes.push(run("2-interpolation-core", &[("interp-core", cfg(5, 3, 1, 102))]));

    // 3. interpolation identity suite, |λ| ≤ 4, n ≤ 3, series order 3
    outcomes.push(run("3-interpolation-identities", &[("interp", cfg(4, 3, 1, 103))]));

    // 4. hypergeometric transformation suite, all κ ⊆ λ with |λ| ≤ 5,
    //    3 specializations, Jackson sums on boxes up to 2×2
    outcomes.push(run("4-hypergeometric-suite", &[("hyperg", cfg(5, 3, 3, 104))]));

    // 5. Koornwinder: construction, evaluation symmetry (|λ|,|μ| ≤ 3,
    //    n = 2), all 24 parameter permutations, q-Racah orthogonality on
    //    the 2×2 grid, virtual-integral agreement, Kadell-type integrals
    //    (|λ| ≤ 4), inverse binomial, connections, quasi-branching,
    //    Cauchy (m,n ≤ 2), very-well-poised integral representation (m ≤ 2)
    outcomes.push(run("5-koornwinder-suite", &[("koorn", cfg(4, 2, 1, 105))]));

    // 6. lifted families at generic T: restriction (n ≤ 2), duality,
    //    Macdonald triangularity (|λ| ≤ 4), connection, one-column formula
    //    (n ≤ 4), Cauchy identities to degree 4, lifted Koornwinder
    //    restriction and orthogonality at random T (|λ| ≤ 2)
    outcomes.push(run(
        "6-lifted-families-generic-T",
        &[("lifting-generic", cfg(4, 2, 1, 106))],
    ));

    // 7. T = 0: Gaussian functional equals the virtual integral on all
    //    p_λ with |λ| ≤ 4, generating-function orthogonality to degree 4,
    //    branching, both Pieri rules, plethystic symmetry
    outcomes.push(run("7-t0-gaussian-theory", &[("lifting-t0", cfg(4, 2, 1, 107))]));

    // 8. vanishing integrals: T = 0 results for |λ| ≤ 6; the two conjecture
    //    families at T = tⁿ (n ≤ 3) and random T with the proved shape
    //    constraints, |λ| ≤ 6; Schur-case values equal 1; rank-1/rank-2
    //    orthogonal results for |λ| ≤ 4; D-type combinations (m ≤ 3);
    //    open-conjecture families advisory with exact off-pattern zeros
    outcomes.push(run(
        "8-vanishing-integrals",
        &[
            ("vanishing-t0", cfg(6, 3, 1, 108)),
            ("vanishing-usp", cfg(6, 3, 1, 108)),
            ("vanishing-uo", cfg(6, 3, 1, 108)),
            ("vanishing-schur", cfg(5, 3, 1, 108)),
            ("vanishing-o1", cfg(4, 3, 1, 108)),
            ("vanishing-o2", cfg(4, 3, 1, 108)),
            ("vanishing-dm", cfg(4, 3, 1, 108)),
            ("vanishing-ograss", cfg(4, 3, 1, 108)),
            ("vanishing-spgrass", cfg(4, 3, 1, 108)),
            ("vanishing-ugrass1", cfg(3, 3, 1, 108)),
            ("vanishing-ugrass2", cfg(3, 3, 1, 108)),
        ],
    ));

    // 9. determinism: identical (config, seed) produces identical reports
    {
        let started9 = Instant::now();
        let config = cfg(3, 2, 1, 109);
        let a = run_suite("hyperg", &config).expect("first run");
        let b = run_suite("hyperg", &config).expect("second run");
        let to_bytes = |r: &Report| serde_json::to_vec(&r.items).expect("serialize");
        let pass = to_bytes(&a) == to_bytes(&b) && !a.items.is_empty();
        println!(
            "criterion {:<38} {} ({} checks, {:.1?})",
            "9-determinism",
            if pass { "PASS" } else { "FAIL" },
            a.items.len(),
            started9.elapsed()
        );
        outcomes.push(Outcome {
            label: "9-determinism",
            pass,
            checks: a.items.len(),
            failures: Vec::new(),
        });
    }

    let total: usize = outcomes.iter().map(|o| o.checks).sum();
    println!(
        "acceptance total: {total} checks in {:.1?}",
        started.elapsed()
    );
    let failed: Vec<&Outcome> = outcomes.iter().filter(|o| !o.pass).collect();
    assert!(
        failed.is_empty(),
        "failed criteria: {:?}",
        failed
            .iter()
            .map(|o| (o.label, o.failures.clone()))
            .collect::<Vec<_>>()
    );
}
