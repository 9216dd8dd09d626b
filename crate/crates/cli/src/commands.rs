use std::path::Path;

use serde_json::{json, Value};
use tropgen::fans::{build_w, skeleton, Fan};
use tropgen::generic::{
    check_lineality, check_skeleton_equality, check_symmetry, generic_membership_map_on, grid_points, GenericityReport,
};
use tropgen::groebner::{contains_one, krull_dimension};
use tropgen::io::{read_input, Input};
use tropgen::special::{check_linear_theorem, check_principal_theorem, CheckOptions, LinearIdealMatrix};
use tropgen::weights::{enumerate_groebner_fan, tropical_certificate};
use tropgen::{Error, Ideal, Rational, Result, WeightVector, VERSION};

use crate::{exit, Global, Outcome};

const SHIFTS: [i64; 5] = [-2, -1, 0, 1, 2];

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_options(g: &Global) -> CheckOptions {
    CheckOptions { trials: g.trials as usize, bound: g.bound, seed: g.seed, grid_radius: g.grid, ..CheckOptions::default() }
}

fn load_ideal(file: &Path) -> Result<Ideal> {
    read_input(file)?.ideal()
}

fn proper_dimension(ideal: &Ideal) -> Result<usize> {
    if contains_one(ideal) {
        return Err(Error::ImproperIdeal);
    }
    krull_dimension(ideal)
}

pub fn cmd_dim(file: &Path) -> Result<Outcome> {
    let input = read_input(file)?;
    let ideal = input.ideal()?;
    let dim = proper_dimension(&ideal)?;
    let mut j = json!({
        "command": "dim",
        "version": VERSION,
        "input": file.display().to_string(),
        "n": ideal.nvars(),
        "dim": dim,
    });
    if let Input::Matrix(m) = &input.input {
        j["rank"] = json!(m.rank);
    }
    Ok(Outcome::new(exit::OK, dim.to_string(), j))
}

fn parse_weight(text: &str, n: usize) -> Result<WeightVector> {
    let entries = text
        .split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| Error::Invalid(format!("bad weight entry `{}`", s.trim()))))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: entries.len() });
    }
    Ok(WeightVector::new(entries))
}

pub fn cmd_member(file: &Path, weight: &str) -> Result<Outcome> {
    let ideal = load_ideal(file)?;
    proper_dimension(&ideal)?;
    let w = parse_weight(weight, ideal.nvars())?;
    let mut j = json!({
        "command": "member",
        "version": VERSION,
        "input": file.display().to_string(),
        "weight": w.to_string(),
    });
    let text = match tropical_certificate(&ideal, &w) {
        Ok(()) => {
            j["member"] = json!(true);
            "true".to_string()
        }
        Err(m) => {
            j["member"] = json!(false);
            j["certificate"] = json!(m.to_string());
            format!("false\ncertificate: {m}")
        }
    };
    Ok(Outcome::new(exit::OK, text, j))
}

/// Verdicts on an agreed report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericVerdicts {
    pub skeleton: bool,
    pub symmetry: Option<bool>,
    pub lineality: bool,
}

impl GenericVerdicts {
    pub fn of(report: &GenericityReport, dim: usize, full_grid: bool) -> Self {
        GenericVerdicts {
            skeleton: check_skeleton_equality(report, dim),
            symmetry: full_grid.then(|| check_symmetry(report)),
            lineality: check_lineality(report, &SHIFTS),
        }
    }

    pub fn passed(&self) -> bool {
        self.skeleton && self.symmetry != Some(false) && self.lineality
    }
}

fn skeleton_name(n: usize, dim: usize) -> String {
    if dim == 0 {
        "empty".into()
    } else {
        format!("W_{n}^{dim}")
    }
}

pub fn cmd_generic(g: &Global, file: &Path, full_grid: bool) -> Result<Outcome> {
    let ideal = load_ideal(file)?;
    let dim = proper_dimension(&ideal)?;
    let n = ideal.nvars();
    let grid = grid_points(n, g.grid, full_grid);
    let report = generic_membership_map_on(&ideal, grid, g.trials as usize, g.bound, g.seed)?;
    let mut j = json!({
        "command": "generic",
        "version": VERSION,
        "input": file.display().to_string(),
        "n": n,
        "dim": dim,
        "grid_radius": g.grid,
        "full_grid": full_grid,
        "bound": g.bound,
        "trials": g.trials,
        "report": report.to_record(),
    });
    let mut text = format!(
        "ideal in {n} variables, dim {dim}\ntransforms agreed: {} ({} trials, {} escalations)\ngrid: {} points, {} in gT\n",
        if report.agreed { "yes" } else { "no" },
        g.trials,
        report.retries,
        report.grid.len(),
        report.member_count(),
    );
    if !report.agreed {
        let e = report.ensure_agreed().unwrap_err();
        j["error"] = json!(e.to_string());
        text.push_str(&format!("error: {e}\n"));
        return Ok(Outcome::new(exit::DISAGREEMENT, text, j));
    }
    let v = GenericVerdicts::of(&report, dim, full_grid);
    j["verdicts"] = json!({
        "expected": skeleton_name(n, dim),
        "skeleton_equality": v.skeleton,
        "symmetry": v.symmetry,
        "lineality": v.lineality,
    });
    j["passed"] = json!(v.passed());
    text.push_str(&format!("gT = {} on grid: {}\n", skeleton_name(n, dim), verdict(v.skeleton)));
    match v.symmetry {
        Some(s) => text.push_str(&format!("symmetry: {}\n", verdict(s))),
        None => text.push_str("symmetry: skipped (reduced grid)\n"),
    }
    text.push_str(&format!("lineality: {}", verdict(v.lineality)));
    Ok(Outcome::new(if v.passed() { exit::OK } else { exit::FAILED }, text, j))
}

fn fan_summary(fan: &Fan) -> (Value, String) {
    let maximal = fan.maximal_cones();
    let by_dim: Vec<usize> = (0..=fan.ambient_dim()).map(|d| fan.cones_of_dim(d).len()).collect();
    let mut text = format!("{} cones, {} maximal\n", fan.len(), maximal.len());
    for c in &maximal {
        text.push_str(&format!("  {}\n", c.describe()));
    }
    let j = json!({
        "cones_by_dim": by_dim,
        "maximal_cones": maximal.len(),
        "fan": fan.to_record(),
    });
    (j, text)
}

pub fn cmd_fan_wn(n: usize, skel: Option<usize>) -> Result<Outcome> {
    let w = build_w(n);
    let fan = match skel {
        Some(t) => skeleton(&w, t)?,
        None => w,
    };
    let (mut j, text) = fan_summary(&fan);
    j["command"] = json!("fan wn");
    j["version"] = json!(VERSION);
    j["n"] = json!(n);
    j["skeleton"] = json!(skel);
    Ok(Outcome::new(exit::OK, text, j))
}

pub fn cmd_fan_groebner(file: &Path, budget: usize) -> Result<Outcome> {
    let ideal = load_ideal(file)?;
    proper_dimension(&ideal)?;
    let fan = enumerate_groebner_fan(&ideal, budget)?;
    let equals_wn = fan.same_fan(&build_w(ideal.nvars()));
    let (mut j, mut text) = fan_summary(&fan);
    j["command"] = json!("fan groebner");
    j["version"] = json!(VERSION);
    j["input"] = json!(file.display().to_string());
    j["n"] = json!(ideal.nvars());
    j["budget"] = json!(budget);
    j["equals_wn"] = json!(equals_wn);
    text.push_str(&format!("equal to W_{} as a fan: {}", ideal.nvars(), if equals_wn { "yes" } else { "no" }));
    Ok(Outcome::new(exit::OK, text, j))
}

pub fn cmd_linear(g: &Global, file: &Path) -> Result<Outcome> {
    let input = read_input(file)?;
    let a = match &input.input {
        Input::Matrix(m) => m.clone(),
        Input::Ideal(i) => LinearIdealMatrix::from_ideal(i)?,
    };
    let rep = check_linear_theorem(&a, &check_options(g))?;
    let mut text = format!("linear ideal: n = {}, rank {}, dim {}\n", rep.n, rep.rank, rep.dim);
    text.push_str(&format!("rank = n - dim: {}\n", verdict(rep.dim_matches_rank)));
    for (k, t) in rep.trials.iter().enumerate() {
        text.push_str(&format!(
            "transform {}: matrix Ag {}, minors {}, right block {}, closed-form cones {}, skeleton cones {}\n",
            k + 1,
            verdict(t.matrix_identity && t.rank_preserved),
            verdict(t.minors_nonzero),
            verdict(t.right_block_nonzero),
            verdict(t.cones_agree),
            verdict(t.skeleton_cones_are_groebner),
        ));
    }
    text.push_str(&format!(
        "gT = {} on grid: {}\n{}-dimensional cones: {} Groebner vs {} in gT\nresult: {}",
        skeleton_name(rep.n, rep.dim),
        verdict(rep.grid_matches_skeleton),
        rep.dim,
        rep.groebner_cones_of_dim,
        rep.skeleton_cones_of_dim,
        verdict(rep.passed)
    ));
    let code = if !rep.grid_agreed {
        exit::DISAGREEMENT
    } else if rep.passed {
        exit::OK
    } else {
        exit::FAILED
    };
    let j = json!({
        "command": "linear",
        "version": VERSION,
        "input": file.display().to_string(),
        "seed": g.seed,
        "report": rep,
    });
    Ok(Outcome::new(code, text, j))
}

pub fn cmd_principal(g: &Global, file: &Path) -> Result<Outcome> {
    let ideal = load_ideal(file)?;
    let [f] = ideal.generators() else {
        return Err(Error::Invalid(format!("expected one generator, found {}", ideal.generators().len())));
    };
    let rep = check_principal_theorem(f, &check_options(g))?;
    let mut text = format!("f = {}\n", rep.polynomial);
    for (k, t) in rep.trials.iter().enumerate() {
        text.push_str(&format!(
            "transform {}: pure powers {}, gT = W_{}^{} on grid {}{}\n",
            k + 1,
            verdict(t.pure_powers_nonzero),
            rep.n,
            rep.n - 1,
            verdict(t.grid_agrees),
            match t.fan_agrees {
                Some(ok) => format!(", Groebner fan = W_{} {}", rep.n, verdict(ok)),
                None => String::new(),
            }
        ));
    }
    text.push_str(&format!("result: {}", verdict(rep.passed)));
    let j = json!({
        "command": "principal",
        "version": VERSION,
        "input": file.display().to_string(),
        "seed": g.seed,
        "report": rep,
    });
    Ok(Outcome::new(if rep.passed { exit::OK } else { exit::FAILED }, text, j))
}
