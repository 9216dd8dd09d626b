//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines appear in plain `cargo test` output.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tropgen_cli::verify::{
    check_census, check_labels, check_linear_campaign, check_oracle_equivalence, check_principal_campaign,
    check_skeleton_campaign, check_support_stability, check_symmetry_lineality, check_w_structure,
    check_zero_dimensional, load_corpus, run_generic_campaign, verify_corpus, CheckResult,
};
use tropgen_cli::Global;

const REQUIRED: [&str; 11] = [
    "monomial_x1x2",
    "coordinate_axes_n3",
    "two_planes_nonprime",
    "prime_ci_n4",
    "linear_r1_n3",
    "linear_r2_n3",
    "linear_r1_n4",
    "linear_r2_n4",
    "linear_r3_n4",
    "principal_n3_generic",
    "principal_n4_quartic",
];

struct Line {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn from_check(id: u32, name: &'static str, c: &CheckResult, elapsed: Duration, limit: Duration, extra: &[String]) -> Line {
    let mut problems: Vec<String> = c.failures.clone();
    problems.extend(extra.iter().cloned());
    if elapsed > limit {
        problems.push(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
    }
    let detail = if problems.is_empty() { c.summary.clone() } else { problems.join("; ") };
    Line { id, name, passed: problems.is_empty(), detail, elapsed }
}

fn main() -> ExitCode {
    let g = Global::default();
    let dir = corpus_dir();
    let corpus = load_corpus(&dir).expect("corpus loads");
    let mut lines = Vec::new();

    let (c, t) = timed(check_w_structure);
    lines.push(from_check(1, "W_n structure", &c, t, Duration::from_secs(1), &[]));

    let (entries, t2) = timed(|| run_generic_campaign(&corpus, &g).expect("generic campaign runs"));
    let labels = check_labels(&corpus).expect("labels");
    let mut extra: Vec<String> = labels.failures.clone();
    let positive = entries.iter().filter(|e| e.dim >= 1).count();
    if positive < 12 {
        extra.push(format!("only {positive} ideals of positive dimension"));
    }
    for name in REQUIRED {
        if !entries.iter().any(|e| e.name == name && e.dim >= 1) {
            extra.push(format!("missing corpus entry {name}"));
        }
    }
    let c = check_skeleton_campaign(&entries);
    lines.push(from_check(2, "skeleton equality campaign", &c, t2, Duration::from_secs(600), &extra));

    let c = check_zero_dimensional(&entries);
    let zero = entries.iter().filter(|e| e.dim == 0).count();
    let extra = if zero < 3 { vec![format!("only {zero} zero-dimensional ideals")] } else { vec![] };
    lines.push(from_check(3, "dim 0 emptiness", &c, Duration::ZERO, Duration::MAX, &extra));

    let c = check_symmetry_lineality(&entries);
    lines.push(from_check(4, "symmetry and lineality", &c, Duration::ZERO, Duration::MAX, &[]));

    let (c, t) = timed(|| check_principal_campaign(&g, 10).expect("principal campaign runs"));
    lines.push(from_check(5, "principal ideals", &c, t, Duration::from_secs(300), &[]));

    let (c, t) = timed(|| check_linear_campaign(&g, 10).expect("linear campaign runs"));
    lines.push(from_check(6, "linear ideals", &c, t, Duration::from_secs(300), &[]));

    let (c, t) = timed(check_census);
    lines.push(from_check(7, "more Groebner cones than gT cones", &c, t, Duration::MAX, &[]));

    let (c, t) = timed(|| check_support_stability(&corpus, &g).expect("stability runs"));
    let picked = corpus.iter().filter(|e| e.stability).count();
    let extra = if picked < 5 { vec![format!("only {picked} ideals tagged for stability")] } else { vec![] };
    lines.push(from_check(8, "Groebner basis support stability", &c, t, Duration::MAX, &extra));

    let (c, t) = timed(check_oracle_equivalence);
    lines.push(from_check(9, "oracle equivalence", &c, t, Duration::MAX, &[]));

    let (runs, t) = timed(|| {
        let a = serde_json::to_string_pretty(&verify_corpus(&g, &dir).expect("first run")).unwrap();
        let b = serde_json::to_string_pretty(&verify_corpus(&g, &dir).expect("second run")).unwrap();
        (a, b)
    });
    let identical = runs.0 == runs.1;
    lines.push(Line {
        id: 10,
        name: "reproducibility",
        passed: identical,
        detail: if identical { format!("two runs, {} bytes each", runs.0.len()) } else { "JSON differs".into() },
        elapsed: t,
    });

    for l in &lines {
        println!(
            "criterion {:>2} {} {} ({:.2} s): {}",
            l.id,
            if l.passed { "PASS" } else { "FAIL" },
            l.name,
            l.elapsed.as_secs_f64(),
            l.detail
        );
    }
    if lines.iter().all(|l| l.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
