//! Acceptance criteria 1-10. Prints one line per criterion and exits nonzero
//! when a criterion passes or fails other than pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mcmkit::HomalgConfig;
use mcmkit_cli::input::from_catalog;
use mcmkit_cli::reference::UNVERIFIED;
use mcmkit_cli::report::{analyze, Label};
use mcmkit_cli::suites::{self, Check, LinesMode};
use mcmkit_cli::Suite;

/// Every comparison is exact.
const TOLERANCE: usize = 0;

/// Failing checks that are expected, as `(criterion, check id prefix, got)`.
const EXPECTED_FAILURES: &[(u8, &str, &str)] = &[
    (1, "Ext1(M1,M1)", "2"),
    (8, "D4 (2,(2 3))", "ct false, rigid true"),
    (8, "D4 (2,(0 2))", "ct false, rigid true"),
    (8, "D4 (2,(0 3))", "ct false, rigid true"),
    (8, "E8 (4,id)", "ct true, rigid true"),
];

struct Criterion {
    number: u8,
    title: &'static str,
    limit: Duration,
    run: fn(&HomalgConfig) -> Vec<Check>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion10(_: &HomalgConfig) -> Vec<Check> {
    let mut out = vec![Check::new("declared statements", 4, UNVERIFIED.len())];
    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
    for word in ["tame", "tube", "gldim", "resolution"] {
        out.push(Check::new(format!("no suite checks {word}"), false, names.iter().any(|n| n.contains(word))));
    }
    let cfg = HomalgConfig::default();
    let r = from_catalog("T44", &Default::default()).unwrap();
    let rep = analyze(&r, &cfg, false).unwrap();
    let json = rep.to_json();
    out.push(Check::new("report lists the declared statements", UNVERIFIED.len(), json["unverified"].as_array().map_or(0, |a| a.len())));
    let geometric: Vec<Label> = rep.quadruple.iter().filter(|(k, _)| k.contains("exceptional") || k.contains("NCCR")).map(|(_, n)| n.label).collect();
    out.push(Check::new("geometric quantities labelled unverified", "[Unverified, Unverified]", format!("{geometric:?}")));
    out
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, title: "E7 Ext^1 on A, C, M1 (symbolic, precision <= 32)", limit: secs(60), run: suites::e7_ext },
        Criterion { number: 2, title: "curve table via the mesh engine", limit: secs(30), run: |_| suites::curves() },
        Criterion {
            number: 3,
            title: "distinct lines n=2,3,4 and the mutation graph",
            limit: secs(300),
            run: |c| suites::lines(c, LinesMode::default()),
        },
        Criterion { number: 4, title: "T-singularities", limit: secs(120), run: suites::t_singularities },
        Criterion { number: 5, title: "golden hammocks", limit: secs(60), run: |_| suites::hammocks() },
        Criterion {
            number: 6,
            title: "E7 mesh against symbolic",
            limit: secs(60),
            run: |c| suites::cross_engine(c).into_iter().filter(|k| k.id.starts_with("E7 ")).collect(),
        },
        Criterion { number: 7, title: "endomorphism algebras and relations", limit: secs(120), run: suites::relations },
        Criterion { number: 8, title: "quotients ZΔ/G, rank <= 8, <= 200 vertices", limit: secs(300), run: |_| suites::quotients(8, 200) },
        Criterion { number: 9, title: "structural properties across the catalog", limit: secs(300), run: suites::properties },
        Criterion { number: 10, title: "declared unverified statements", limit: secs(10), run: criterion10 },
    ]
}

fn main() -> ExitCode {
    let cfg = HomalgConfig::default();
    let mut unexpected = Vec::new();
    println!("acceptance criteria (tolerance {TOLERANCE}, exact match)");
    for c in criteria() {
        let start = Instant::now();
        let checks = (c.run)(&cfg);
        let elapsed = start.elapsed();
        let failing: Vec<&Check> = checks.iter().filter(|k| !k.pass).collect();
        let pinned: Vec<&(u8, &str, &str)> = EXPECTED_FAILURES.iter().filter(|e| e.0 == c.number).collect();
        let in_time = elapsed <= c.limit;
        let status = if failing.is_empty() && in_time { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2}: {status} {} ({} checks, {:.1} s of {} s)",
            c.number,
            c.title,
            checks.len(),
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for f in &failing {
            line.push_str(&format!("\n    failing: {} expected {}, got {}", f.id, f.expected, f.got));
        }
        if !pinned.is_empty() {
            line.push_str("\n    pinned expected failure, see the decisions record");
        }
        println!("{line}");

        if !in_time {
            unexpected.push(format!("criterion {} exceeded {} s", c.number, c.limit.as_secs()));
        }
        if checks.is_empty() {
            unexpected.push(format!("criterion {} ran no checks", c.number));
        }
        let matches_pin = |k: &Check| pinned.iter().any(|p| k.id.starts_with(p.1) && k.got == p.2);
        for f in &failing {
            if !matches_pin(f) {
                unexpected.push(format!("criterion {}: {} expected {}, got {}", c.number, f.id, f.expected, f.got));
            }
        }
        for p in &pinned {
            if !failing.iter().any(|f| f.id.starts_with(p.1) && f.got == p.2) {
                unexpected.push(format!("criterion {}: pinned failure `{}` no longer fails as analysed", c.number, p.1));
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as pinned ({} expected failures)", EXPECTED_FAILURES.len());
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("UNEXPECTED: {u}");
        }
        ExitCode::FAILURE
    }
}
