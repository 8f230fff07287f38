//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::Instant;

use tccc::harness::{hom_table_check, run_suite, SuiteConfig, VerificationResult};

struct Line {
    id: usize,
    pass: bool,
    what: String,
}

fn suite(name: &str) -> VerificationResult {
    run_suite(name, &SuiteConfig::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn summary(r: &VerificationResult) -> String {
    let mut s = format!("{} {}/{}", r.suite, r.passed, r.instances);
    if let Some(f) = r.failures.first() {
        s.push_str(&format!("; first failure {}: {}", f.key, f.detail));
    }
    s
}

fn main() {
    let t0 = Instant::now();
    let mut lines = Vec::new();

    let r = suite("p1-examples");
    lines.push(Line { id: 1, pass: r.ok() && r.instances == 27, what: summary(&r) });

    let r = suite("p2-example");
    lines.push(Line { id: 2, pass: r.ok() && r.instances == 28, what: summary(&r) });

    let planar: [(&[i64], i64); 4] = [(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1), (&[1, -1], 0)];
    let (cells, bad) = hom_table_check(&planar, 2).expect("hom table");
    lines.push(Line {
        id: 3,
        pass: cells >= 20 && bad.is_empty(),
        what: format!("hom table {} cells, {} pairs, {} mismatches", cells, cells * cells, bad.len()),
    });

    let r = suite("degree-bounds");
    lines.push(Line { id: 4, pass: r.ok(), what: summary(&r) });

    let (e, o) = (suite("convolution-euler"), suite("convolution-1d"));
    lines.push(Line { id: 5, pass: e.ok() && o.ok(), what: format!("{}; {}", summary(&e), summary(&o)) });

    let (s, p) = (suite("ss-certificates"), suite("path-certificates"));
    lines.push(Line { id: 6, pass: s.ok() && p.ok(), what: format!("{}; {}", summary(&s), summary(&p)) });

    let ccc = suite("ccc-hom");
    lines.push(Line { id: 7, pass: ccc.ok(), what: summary(&ccc) });

    let core = suite("corepresentability");
    lines.push(Line {
        id: 8,
        pass: core.ok() && core.instances >= 500,
        what: format!("{}; offset {}", summary(&core), core.info["calibrated_offset"]),
    });

    let r = suite("probe-collection");
    lines.push(Line { id: 9, pass: r.ok(), what: format!("{}; {}", summary(&r), r.info) });

    // The categorical statement is out of reach; 7 and 8 stand in for it, and
    // the README must say so.
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap_or_default();
    let honest = readme.contains("## What is not reproduced");
    lines.push(Line {
        id: 10,
        pass: honest && ccc.instances > 0 && core.instances >= 500,
        what: format!(
            "substitute checks ran ({} + {} instances); README scope section {}",
            ccc.instances,
            core.instances,
            if honest { "present" } else { "missing" }
        ),
    });

    for l in &lines {
        println!("criterion {:>2}: {} | {}", l.id, if l.pass { "PASS" } else { "FAIL" }, l.what);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("acceptance: {}/{} passed in {:.1}s", lines.len() - failed, lines.len(), t0.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
