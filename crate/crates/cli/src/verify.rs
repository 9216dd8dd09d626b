//! Corpus campaigns. `verify-corpus` runs all of them and emits one
//! machine-readable summary.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use tropgen::fans::{build_w, lineality_space};
use tropgen::generic::{gb_support_stability, generic_membership_map_on, grid_points};
use tropgen::groebner::{contains_monomial, krull_dimension, monomial_by_enumeration};
use tropgen::io::read_input;
use tropgen::linalg::RationalMatrix;
use tropgen::special::{check_linear_theorem, check_principal_theorem, cut_patterns, LinearIdealMatrix};
use tropgen::{Error, Ideal, Monomial, Polynomial, Result, TermOrder, VERSION};

use crate::commands::{check_options, GenericVerdicts};
use crate::{exit, Global, Outcome};

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub ideal: Ideal,
    pub expected_dim: Option<usize>,
    pub stability: bool,
}

/// Every non-hidden file of the directory, sorted by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<Entry>> {
    let listing = std::fs::read_dir(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Invalid(format!("empty corpus: {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let file = read_input(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            let expected_dim = match file.meta("expect-dim") {
                Some(v) => Some(v.parse().map_err(|_| Error::Invalid(format!("{}: bad expect-dim `{v}`", p.display())))?),
                None => None,
            };
            Ok(Entry {
                name: p.file_name().expect("listed files have names").to_string_lossy().into_owned(),
                ideal: file.ideal()?,
                expected_dim,
                stability: file.meta("stability") == Some("yes"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(id: u32, name: &str, summary: String, failures: Vec<String>) -> Self {
        CheckResult { id, name: name.into(), passed: failures.is_empty(), summary, failures }
    }
}

/// Per-ideal outcome of the generic campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub n: usize,
    pub dim: usize,
    pub grid_points: usize,
    pub members: usize,
    pub agreed: bool,
    pub retries: usize,
    pub bounds: Vec<i64>,
    pub skeleton_equality: bool,
    pub symmetry: bool,
    pub lineality: bool,
}

/// Declared dimensions against computed ones.
pub fn check_labels(corpus: &[Entry]) -> Result<CheckResult> {
    let mut failures = Vec::new();
    for e in corpus {
        let dim = krull_dimension(&e.ideal)?;
        if let Some(x) = e.expected_dim {
            if x != dim {
                failures.push(format!("{}: labeled dim {x}, computed dim {dim}", e.name));
            }
        }
    }
    Ok(CheckResult::new(0, "corpus labels", format!("{} entries", corpus.len()), failures))
}

pub fn check_w_structure() -> CheckResult {
    let mut failures = Vec::new();
    for n in 2..=8usize {
        let w = build_w(n);
        for k in 1..=n {
            let expected = binomial(n, k - 1);
            let got = w.cones_of_dim(k).len();
            if got != expected {
                failures.push(format!("n = {n}: {got} cones of dim {k}, expected {expected}"));
            }
        }
        let lin = lineality_space(&w);
        let ones = vec![1.into(); n];
        if lin != vec![ones] {
            failures.push(format!("n = {n}: lineality space {lin:?}"));
        }
    }
    CheckResult::new(1, "W_n cone counts and lineality", "n = 2..8".into(), failures)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Generic membership maps of every corpus ideal on the full grid.
pub fn run_generic_campaign(corpus: &[Entry], g: &Global) -> Result<Vec<EntryResult>> {
    corpus
        .iter()
        .map(|e| {
            let dim = krull_dimension(&e.ideal)?;
            let n = e.ideal.nvars();
            let report = generic_membership_map_on(&e.ideal, grid_points(n, g.grid, true), g.trials as usize, g.bound, g.seed)?;
            let v = GenericVerdicts::of(&report, dim, true);
            Ok(EntryResult {
                name: e.name.clone(),
                n,
                dim,
                grid_points: report.grid.len(),
                members: report.member_count(),
                agreed: report.agreed,
                retries: report.retries,
                bounds: report.history.iter().map(|h| h.bound).collect(),
                skeleton_equality: report.agreed && v.skeleton,
                symmetry: report.agreed && v.symmetry == Some(true),
                lineality: report.agreed && v.lineality,
            })
        })
        .collect()
}

pub fn check_skeleton_campaign(results: &[EntryResult]) -> CheckResult {
    let pos: Vec<&EntryResult> = results.iter().filter(|r| r.dim >= 1).collect();
    let failures = pos
        .iter()
        .filter(|r| !r.skeleton_equality)
        .map(|r| format!("{}: map differs from W_{}^{} (agreed: {})", r.name, r.n, r.dim, r.agreed))
        .collect();
    CheckResult::new(2, "generic tropical variety = W_n^dim", format!("{} ideals of positive dimension", pos.len()), failures)
}

pub fn check_zero_dimensional(results: &[EntryResult]) -> CheckResult {
    let zero: Vec<&EntryResult> = results.iter().filter(|r| r.dim == 0).collect();
    let failures =
        zero.iter().filter(|r| !r.skeleton_equality).map(|r| format!("{}: {} grid points in gT", r.name, r.members)).collect();
    CheckResult::new(3, "dim 0 gives empty gT", format!("{} zero-dimensional ideals", zero.len()), failures)
}

pub fn check_symmetry_lineality(results: &[EntryResult]) -> CheckResult {
    let mut failures = Vec::new();
    for r in results.iter().filter(|r| r.dim >= 1 && r.agreed) {
        if !r.symmetry {
            failures.push(format!("{}: not permutation invariant", r.name));
        }
        if !r.lineality {
            failures.push(format!("{}: not invariant under shifts by (1,...,1)", r.name));
        }
    }
    CheckResult::new(4, "symmetry and lineality", "permutations and shifts c = -2..2".into(), failures)
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    loop {
        let d = rng.gen_range(1..=4u32);
        let monos = Monomial::all_of_degree(n, d);
        let k = rng.gen_range(2..=monos.len().min(5));
        let mut chosen = Vec::new();
        while chosen.len() < k {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            if !chosen.contains(&m) {
                chosen.push(m);
            }
        }
        let f = Polynomial::from_terms(
            n,
            chosen.into_iter().map(|m| {
                let c = loop {
                    let c: i64 = rng.gen_range(-9..=9);
                    if c != 0 {
                        break c;
                    }
                };
                (tropgen::poly::rat(c), m)
            }),
        );
        if f.len() >= 2 {
            return f;
        }
    }
}

pub fn check_principal_campaign(g: &Global, count: usize) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed ^ 0x5052_494e);
    let opts = check_options(g);
    let mut failures = Vec::new();
    let mut forms = Vec::new();
    for _ in 0..count {
        let f = random_form(&mut rng, 3);
        let rep = check_principal_theorem(&f, &opts)?;
        if !rep.passed {
            failures.push(format!("{f}: {:?}", rep.trials));
        }
        forms.push(f.to_string());
    }
    Ok(CheckResult::new(5, "principal ideals", format!("{count} random forms in 3 variables: {}", forms.join("; ")), failures))
}

pub fn random_full_rank(rng: &mut ChaCha8Rng, r: usize, n: usize) -> LinearIdealMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let a = LinearIdealMatrix::new(RationalMatrix::from_ints(&rows));
        if a.rank == r {
            return a;
        }
    }
}

pub fn check_linear_campaign(g: &Global, count: usize) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed ^ 0x4c49_4e45);
    let opts = check_options(g);
    let mut failures = Vec::new();
    for k in 0..count {
        let r = 1 + k % 3;
        let a = random_full_rank(&mut rng, r, 4);
        let rep = check_linear_theorem(&a, &opts)?;
        if !rep.passed {
            failures.push(format!("matrix {:?}: {rep:?}", a.matrix.to_string()));
        }
    }
    Ok(CheckResult::new(6, "linear ideals", format!("{count} random matrices, n = 4, r = 1..3"), failures))
}

pub fn check_census() -> CheckResult {
    let pats = cut_patterns(4, 2);
    let two = pats.iter().filter(|p| p.dim() == 2).count();
    let skeleton_cones = binomial(4, 3);
    let failures = if two > skeleton_cones {
        vec![]
    } else {
        vec![format!("{two} two-dimensional Groebner cones, not more than {skeleton_cones}")]
    };
    CheckResult::new(
        7,
        "Groebner fan has more m-cones than gT",
        format!("n = 4, m = 2: {two} two-dimensional Groebner cone patterns vs {skeleton_cones} maximal cones of W_4^2"),
        failures,
    )
}

pub fn stability_orders(n: usize) -> Vec<(String, TermOrder)> {
    let w: Vec<i64> = (0..n as i64).map(|i| (n as i64 - 1 - i) * (n as i64 - 1 - i)).collect();
    vec![
        ("lex".into(), TermOrder::lex(n)),
        ("grlex".into(), TermOrder::graded_lex(n)),
        (format!("weight {w:?}"), TermOrder::weighted(&tropgen::WeightVector::from_ints(&w))),
    ]
}

pub fn check_support_stability(corpus: &[Entry], g: &Global) -> Result<CheckResult> {
    let picked: Vec<&Entry> = corpus.iter().filter(|e| e.stability).collect();
    let mut failures = Vec::new();
    for e in &picked {
        for (name, ord) in stability_orders(e.ideal.nvars()) {
            if !gb_support_stability(&e.ideal, &ord, g.trials as usize, g.bound, g.seed)? {
                failures.push(format!("{} under {name}", e.name));
            }
        }
    }
    let names: Vec<&str> = picked.iter().map(|e| e.name.as_str()).collect();
    Ok(CheckResult::new(8, "Groebner basis support stability", format!("{} ideals x 3 orders: {}", picked.len(), names.join(", ")), failures))
}

/// Small ideals, some inhomogeneous, with and without monomials.
pub const ORACLE_IDEALS: [(usize, &[&str]); 20] = [
    (2, &["x1*x2"]),
    (2, &["x1 + x2"]),
    (2, &["x1^2 - x2^2"]),
    (2, &["x1^2 - x1*x2", "x2^2 - x1*x2"]),
    (3, &["x1*x2 - x3^2", "x1*x3"]),
    (3, &["x1 - x2", "x2*x3 - x1*x3 + x3^2"]),
    (3, &["x1*x2 - x3^2"]),
    (3, &["x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3"]),
    (3, &["x1^2 - x2*x3", "x2^2 - x1*x3", "x3^2 - x1*x2"]),
    (3, &["x1*x2 + x3^2", "x1*x3"]),
    (2, &["x1^2 + x2^2", "x1*x2"]),
    (2, &["x1 - x2", "x1 - 2*x2"]),
    (2, &["x1^2 - x2^2", "x1^2 - 2*x2^2"]),
    (2, &["x1^2 + x1*x2 + x2^2"]),
    (2, &["x1 - 1"]),
    (2, &["x1*x2 - 1"]),
    (2, &["x1*x2 - x1", "x1*x2"]),
    (3, &["x1^2*x2 - x3^3", "x1*x3 - x2^2"]),
    (3, &["x1*x2*x3 - x1^3", "x2^2 - x3^2"]),
    (3, &["x1 + x2 + x3", "x1^2 + x2^2 + x3^2", "x1^3 + x2^3 + x3^3"]),
];

pub fn oracle_ideals() -> Vec<Ideal> {
    ORACLE_IDEALS
        .iter()
        .map(|(n, gens)| {
            let polys = gens.iter().map(|s| tropgen::poly::parse_polynomial(s, *n).expect("valid literal")).collect();
            Ideal::auxiliary(*n, polys).expect("valid literal")
        })
        .collect()
}

pub fn check_oracle_equivalence() -> CheckResult {
    let ideals = oracle_ideals();
    let mut failures = Vec::new();
    let mut with = 0;
    for (k, i) in ideals.iter().enumerate() {
        let fast = contains_monomial(i);
        let brute = monomial_by_enumeration(i, 6);
        with += usize::from(fast);
        if fast != brute.is_some() {
            failures.push(format!("ideal {}: saturation says {fast}, enumeration found {brute:?}", k + 1));
        }
    }
    CheckResult::new(9, "monomial containment oracle", format!("{} ideals, {with} containing a monomial", ideals.len()), failures)
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub command: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub bound: i64,
    pub grid_radius: i64,
    pub corpus: Vec<String>,
    pub entries: Vec<EntryResult>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn verify_corpus(g: &Global, dir: &Path) -> Result<Summary> {
    let corpus = load_corpus(dir)?;
    let entries = run_generic_campaign(&corpus, g)?;
    let checks = vec![
        check_labels(&corpus)?,
        check_w_structure(),
        check_skeleton_campaign(&entries),
        check_zero_dimensional(&entries),
        check_symmetry_lineality(&entries),
        check_principal_campaign(g, 10)?,
        check_linear_campaign(g, 10)?,
        check_census(),
        check_support_stability(&corpus, g)?,
        check_oracle_equivalence(),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(Summary {
        command: "verify-corpus",
        version: VERSION,
        seed: g.seed,
        trials: g.trials,
        bound: g.bound,
        grid_radius: g.grid,
        corpus: corpus.iter().map(|e| e.name.clone()).collect(),
        entries,
        checks,
        passed,
    })
}

pub fn cmd_verify_corpus(g: &Global, dir: &Path) -> Result<Outcome> {
    let summary = verify_corpus(g, dir)?;
    let mut text = String::new();
    for e in &summary.entries {
        text.push_str(&format!(
            "{:<24} n={} dim={} members={:>4}/{} retries={}\n",
            e.name, e.n, e.dim, e.members, e.grid_points, e.retries
        ));
    }
    for c in &summary.checks {
        text.push_str(&format!("[{}] {:>2} {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.summary));
        for f in &c.failures {
            text.push_str(&format!("       - {f}\n"));
        }
    }
    text.push_str(if summary.passed { "all checks passed" } else { "some checks failed" });
    let code = if summary.passed { exit::OK } else { exit::FAILED };
    Ok(Outcome::new(code, text, json!(summary)))
}
