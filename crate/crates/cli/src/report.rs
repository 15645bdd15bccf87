//! Running problems and rendering results.

use std::fmt::Write as _;
use std::time::Instant;

use rtmp_core::rational::{rational_to_power, solve_rtmp, verify_rtmp, RtmpSolution};
use rtmp_core::solver::{
    positivity_certificate, solve, verify_measure, AtomicMeasure, InfeasibleReason, Outcome,
    PositivityCertificate, SolvePath, Solution, SolverConfig, Verdict,
};
use rtmp_core::special::{
    bivariate_square_positive, circle_power_moments, circle_relation_violation, circle_solve,
    circle_verify, strong_hamburger_solve, CircleMeasure,
};
use rtmp_core::{MomentSequence, PsdReport, PsdStatus, Rat};
use serde_json::{json, Map, Value};

use crate::problem::{Problem, ProblemFile};

/// Tolerance used when checking a measure against a problem file.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Solved,
    Infeasible,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Solved => "solved",
            Status::Infeasible => "infeasible",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Solved => 0,
            Status::Infeasible => 2,
            Status::Error => 1,
        }
    }
}

/// One result document together with the atom table for `--emit-csv`.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub status: Status,
    pub doc: Value,
    pub table: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub x: f64,
    pub y: Option<f64>,
    pub density: f64,
}

/// 17 significant digits; parsing the string gives back the same `f64`.
pub fn dec(x: f64) -> String {
    format!("{x:.16e}")
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn measure_json(mu: &AtomicMeasure) -> Value {
    json!({
        "atoms": mu.atoms.iter().map(|&x| dec(x)).collect::<Vec<_>>(),
        "densities": mu.densities.iter().map(|&r| dec(r)).collect::<Vec<_>>(),
    })
}

fn circle_measure_json(mu: &CircleMeasure) -> Value {
    json!({
        "atoms": mu.atoms.iter().map(|&(x, y)| vec![dec(x), dec(y)]).collect::<Vec<_>>(),
        "densities": mu.densities.iter().map(|&r| dec(r)).collect::<Vec<_>>(),
    })
}

fn rows(mu: &AtomicMeasure) -> Vec<Row> {
    mu.atoms
        .iter()
        .zip(&mu.densities)
        .map(|(&x, &density)| Row { x, y: None, density })
        .collect()
}

fn psd_name(s: PsdStatus) -> &'static str {
    match s {
        PsdStatus::PositiveDefinite => "positive_definite",
        PsdStatus::PsdSingular => "positive_singular",
        PsdStatus::Indefinite => "indefinite",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::StrictlyPositive => "strictly_positive",
        Verdict::PositiveSingular => "positive_singular",
        Verdict::Violated => "violated",
    }
}

fn psd_json(rep: &PsdReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("status".into(), psd_name(rep.status).into());
    m.insert("rank".into(), rep.rank.into());
    m.insert(
        "eigenvalue_estimates".into(),
        rep.eigenvalue_estimates.iter().map(|&e| dec(e)).collect::<Vec<_>>().into(),
    );
    if !rep.kernel_basis.is_empty() {
        m.insert(
            "kernel".into(),
            rep.kernel_basis.iter().map(|p| p.to_string()).collect::<Vec<_>>().into(),
        );
    }
    m
}

pub fn certificate_json(cert: &PositivityCertificate) -> Value {
    let products: Vec<Value> = cert
        .per_product
        .iter()
        .map(|(p, rep)| {
            let mut m = psd_json(rep);
            m.insert("f".into(), p.f.to_string().into());
            Value::Object(m)
        })
        .collect();
    json!({
        "verdict": verdict_name(cert.verdict),
        "witness": cert.witness_product().map(|p| p.f.to_string()),
        "products": products,
    })
}

fn path_json(path: &SolvePath) -> Value {
    match path {
        SolvePath::Singular { f0, p } => json!({
            "kind": "singular",
            "singular_product": f0.to_string(),
            "generating_polynomial": p.to_string(),
        }),
        SolvePath::Nonsingular {
            extension,
            working_set,
            binding,
            attempts,
        } => json!({
            "kind": "nonsingular",
            "extension": rats(extension),
            "working_set": working_set.to_string(),
            "binding_product": binding.to_string(),
            "attempts": attempts,
        }),
    }
}

pub fn reason_json(r: &InfeasibleReason) -> Value {
    let mut m = Map::new();
    m.insert("code".into(), r.code().into());
    m.insert("message".into(), r.to_string().into());
    match r {
        InfeasibleReason::PositivityViolated { witness } => {
            m.insert("witness".into(), witness.to_string().into());
        }
        InfeasibleReason::PoleHit { pole, measure } => {
            m.insert("pole".into(), pole.to_string().into());
            if let Some(mu) = measure {
                m.insert("measure".into(), measure_json(mu));
            }
        }
        InfeasibleReason::UnboundedKernelConditionFailed { f0, p, shift, value } => {
            m.insert("product".into(), f0.to_string().into());
            m.insert("generating_polynomial".into(), p.to_string().into());
            m.insert("shift".into(), (*shift).into());
            m.insert("value".into(), value.to_string().into());
        }
        InfeasibleReason::CircleRelationViolated { i, j } => {
            m.insert("index".into(), json!([i, j]));
        }
        InfeasibleReason::VerificationFailed { .. } | InfeasibleReason::NotSquarePositive => {}
    }
    Value::Object(m)
}

pub fn config_json(cfg: &SolverConfig) -> Value {
    json!({
        "tol": cfg.tol,
        "density_floor": cfg.density_floor,
        "max_retries": cfg.max_retries,
        "max_extension_steps": cfg.max_extension_steps,
        "rng_seed": cfg.rng_seed,
        "fixed_extension": cfg.fixed_extension.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect::<Vec<_>>(),
    })
}

/// Power moments `γ` the problem reduces to.
pub fn power_moments(problem: &Problem) -> Result<MomentSequence, String> {
    match problem {
        Problem::PowerTmp { gamma, .. } => Ok(gamma.clone()),
        Problem::Rtmp { spec, data, .. } | Problem::StrongHamburger { spec, data } => {
            rational_to_power(data, spec).map_err(|e| e.to_string())
        }
        Problem::Circle { beta } => circle_power_moments(beta).map_err(|e| e.to_string()),
    }
}

fn base_doc(kind: &str, status: Status, cfg: &SolverConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), kind.into());
    m.insert("status".into(), status.as_str().into());
    m.insert("config".into(), config_json(cfg));
    m
}

fn error_result(kind: &str, cfg: &SolverConfig, message: String) -> RunResult {
    let mut m = base_doc(kind, Status::Error, cfg);
    m.insert("error".into(), message.into());
    RunResult {
        status: Status::Error,
        doc: Value::Object(m),
        table: Vec::new(),
    }
}

fn infeasible_result(kind: &str, cfg: &SolverConfig, reason: &InfeasibleReason, cert: Option<&PositivityCertificate>) -> RunResult {
    let mut m = base_doc(kind, Status::Infeasible, cfg);
    m.insert("reason".into(), reason_json(reason));
    if let Some(c) = cert {
        m.insert("certificate".into(), certificate_json(c));
    }
    let table = match reason {
        InfeasibleReason::PoleHit { measure: Some(mu), .. } => rows(mu),
        _ => Vec::new(),
    };
    RunResult {
        status: Status::Infeasible,
        doc: Value::Object(m),
        table,
    }
}

fn solved_power(m: &mut Map<String, Value>, sol: &Solution) {
    m.insert("certificate".into(), certificate_json(&sol.certificate));
    m.insert("path".into(), path_json(&sol.path));
}

/// Runs the full pipeline on one problem.
pub fn run_solve(file: &ProblemFile, cfg: &SolverConfig) -> RunResult {
    let kind = file.problem.kind();
    let start = Instant::now();
    let mut result = match &file.problem {
        Problem::PowerTmp { gamma, k, avoid } => {
            // The certificate rides along on infeasible outcomes too.
            let cert = positivity_certificate(gamma, k).ok();
            match solve(gamma, k, avoid, cfg) {
                Err(e) => error_result(kind, cfg, e.to_string()),
                Ok(Outcome::Infeasible(r)) => infeasible_result(kind, cfg, &r, cert.as_ref()),
                Ok(Outcome::Solved(sol)) => {
                    let rep = verify_measure(&sol.measure, gamma, k, avoid, VERIFY_TOL);
                    let mut m = base_doc(kind, Status::Solved, cfg);
                    m.insert("measure".into(), measure_json(&sol.measure));
                    solved_power(&mut m, &sol);
                    m.insert(
                        "residuals".into(),
                        json!({"max": dec(rep.max_residual()), "tol": VERIFY_TOL, "passed": rep.passed()}),
                    );
                    RunResult {
                        status: Status::Solved,
                        doc: Value::Object(m),
                        table: rows(&sol.measure),
                    }
                }
            }
        }
        Problem::Rtmp { spec, data, k } => {
            let out = solve_rtmp(data, spec, k, cfg);
            rtmp_result(kind, cfg, out, &file.problem)
        }
        Problem::StrongHamburger { spec, data } => {
            let out = strong_hamburger_solve(data, spec, cfg);
            rtmp_result(kind, cfg, out, &file.problem)
        }
        Problem::Circle { beta } => match circle_solve(beta, cfg) {
            Err(e) => error_result(kind, cfg, e.to_string()),
            Ok(Outcome::Infeasible(r)) => infeasible_result(kind, cfg, &r, None),
            Ok(Outcome::Solved(sol)) => {
                let rep = circle_verify(&sol.measure, beta, VERIFY_TOL);
                let mut m = base_doc(kind, Status::Solved, cfg);
                m.insert("measure".into(), circle_measure_json(&sol.measure));
                m.insert("univariate_measure".into(), measure_json(&sol.univariate));
                m.insert("deficit".into(), dec(sol.deficit).into());
                m.insert(
                    "residuals".into(),
                    json!({"max": dec(rep.max_residual()), "tol": VERIFY_TOL, "passed": rep.passed()}),
                );
                let table = sol
                    .measure
                    .atoms
                    .iter()
                    .zip(&sol.measure.densities)
                    .map(|(&(x, y), &density)| Row { x, y: Some(y), density })
                    .collect();
                RunResult {
                    status: Status::Solved,
                    doc: Value::Object(m),
                    table,
                }
            }
        },
    };
    if let Value::Object(m) = &mut result.doc {
        m.insert("timings".into(), json!({"seconds": start.elapsed().as_secs_f64()}));
    }
    result
}

fn rtmp_result(
    kind: &str,
    cfg: &SolverConfig,
    out: Result<Outcome<RtmpSolution>, rtmp_core::solver::SolverError>,
    problem: &Problem,
) -> RunResult {
    let (spec, data, set) = match problem {
        Problem::Rtmp { spec, data, k } => (spec, data, Some(k)),
        Problem::StrongHamburger { spec, data } => (spec, data, None),
        _ => unreachable!("rational problems only"),
    };
    match out {
        Err(e) => error_result(kind, cfg, e.to_string()),
        Ok(Outcome::Infeasible(r)) => {
            let cert = match (power_moments(problem), set) {
                (Ok(g), Some(k)) => positivity_certificate(&g, k).ok(),
                (Ok(g), None) => positivity_certificate(&g, &rtmp_core::ClosedSet::real_line()).ok(),
                _ => None,
            };
            infeasible_result(kind, cfg, &r, cert.as_ref())
        }
        Ok(Outcome::Solved(sol)) => {
            let rep = verify_rtmp(&sol.measure, data, spec, VERIFY_TOL);
            let mut m = base_doc(kind, Status::Solved, cfg);
            m.insert("measure".into(), measure_json(&sol.measure));
            m.insert("power_measure".into(), measure_json(&sol.power.measure));
            m.insert("power_moments".into(), rats(sol.gamma.values()).into());
            solved_power(&mut m, &sol.power);
            m.insert(
                "residuals".into(),
                json!({"max": dec(rep.max_residual()), "tol": VERIFY_TOL, "passed": rep.passed()}),
            );
            RunResult {
                status: Status::Solved,
                doc: Value::Object(m),
                table: rows(&sol.measure),
            }
        }
    }
}

/// Positivity certificate only.
pub fn run_check(file: &ProblemFile) -> RunResult {
    let cfg = SolverConfig::default();
    let kind = file.problem.kind();
    if let Problem::Circle { beta } = &file.problem {
        let mut m = base_doc(kind, Status::Solved, &cfg);
        m.remove("config");
        let rel = circle_relation_violation(beta);
        let psd = bivariate_square_positive(beta);
        let ok = rel.is_none() && psd.is_psd();
        m.insert("status".into(), (if ok { "pass" } else { "fail" }).into());
        m.insert("relations_hold".into(), rel.is_none().into());
        if let Some((i, j)) = rel {
            m.insert("relation_violated_at".into(), json!([i, j]));
        }
        m.insert("moment_matrix".into(), Value::Object(psd_json(&psd)));
        let status = if ok { Status::Solved } else { Status::Infeasible };
        return RunResult { status, doc: Value::Object(m), table: Vec::new() };
    }
    let gamma = match power_moments(&file.problem) {
        Ok(g) => g,
        Err(e) => return error_result(kind, &cfg, e),
    };
    let set = match &file.problem {
        Problem::PowerTmp { k, .. } | Problem::Rtmp { k, .. } => k.clone(),
        _ => rtmp_core::ClosedSet::real_line(),
    };
    match positivity_certificate(&gamma, &set) {
        Err(e) => error_result(kind, &cfg, e.to_string()),
        Ok(cert) => {
            let ok = cert.verdict != Verdict::Violated;
            let mut m = Map::new();
            m.insert("kind".into(), kind.into());
            m.insert("status".into(), (if ok { "pass" } else { "fail" }).into());
            m.insert("power_moments".into(), rats(gamma.values()).into());
            m.insert("certificate".into(), certificate_json(&cert));
            let status = if ok { Status::Solved } else { Status::Infeasible };
            RunResult { status, doc: Value::Object(m), table: Vec::new() }
        }
    }
}

/// A measure read back from a result document.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedMeasure {
    Line(AtomicMeasure),
    Circle(CircleMeasure),
}

pub fn parse_measure(doc: &Value) -> Result<ParsedMeasure, String> {
    let m = doc.get("measure").unwrap_or(doc);
    let num = |v: &Value, at: String| -> Result<f64, String> {
        v.as_str()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .or_else(|| v.as_f64())
            .ok_or_else(|| format!("{at}: expected a decimal number"))
    };
    let densities = m
        .get("densities")
        .and_then(Value::as_array)
        .ok_or("/measure/densities: expected an array")?
        .iter()
        .enumerate()
        .map(|(i, v)| num(v, format!("/measure/densities/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let atoms = m
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or("/measure/atoms: expected an array")?;
    if atoms.len() != densities.len() {
        return Err("/measure: atoms and densities differ in length".into());
    }
    if atoms.iter().any(Value::is_array) {
        let mut pts = Vec::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            let xy = a.as_array().filter(|a| a.len() == 2).ok_or(format!("/measure/atoms/{i}: expected [x, y]"))?;
            pts.push((num(&xy[0], format!("/measure/atoms/{i}/0"))?, num(&xy[1], format!("/measure/atoms/{i}/1"))?));
        }
        Ok(ParsedMeasure::Circle(CircleMeasure { atoms: pts, densities }))
    } else {
        let xs = atoms
            .iter()
            .enumerate()
            .map(|(i, v)| num(v, format!("/measure/atoms/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedMeasure::Line(AtomicMeasure::new(xs, densities)))
    }
}

/// Checks a measure against a problem at `tol`.
pub fn run_verify(measure: &ParsedMeasure, file: &ProblemFile, tol: f64) -> RunResult {
    let kind = file.problem.kind();
    let (passed, max, extra) = match (&file.problem, measure) {
        (Problem::PowerTmp { gamma, k, avoid }, ParsedMeasure::Line(mu)) => {
            let rep = verify_measure(mu, gamma, k, avoid, tol);
            (rep.passed(), rep.max_residual(), rep.describe())
        }
        (Problem::Rtmp { spec, data, k }, ParsedMeasure::Line(mu)) => {
            let rep = verify_rtmp(mu, data, spec, tol);
            let in_k = mu.atoms.iter().all(|&x| k.contains(x, tol));
            let detail = if in_k { String::new() } else { "an atom lies outside K".into() };
            (rep.passed() && in_k, rep.max_residual(), detail)
        }
        (Problem::StrongHamburger { spec, data }, ParsedMeasure::Line(mu)) => {
            let rep = verify_rtmp(mu, data, spec, tol);
            (rep.passed(), rep.max_residual(), String::new())
        }
        (Problem::Circle { beta }, ParsedMeasure::Circle(mu)) => {
            let rep = circle_verify(mu, beta, tol);
            (rep.passed(), rep.max_residual(), String::new())
        }
        _ => {
            return error_result(kind, &SolverConfig::default(), "measure does not match the problem kind".into());
        }
    };
    let mut m = Map::new();
    m.insert("kind".into(), kind.into());
    m.insert("status".into(), (if passed { "pass" } else { "fail" }).into());
    m.insert("max_residual".into(), dec(max).into());
    m.insert("tol".into(), tol.into());
    if !passed && !extra.is_empty() {
        m.insert("detail".into(), extra.into());
    }
    let status = if passed { Status::Solved } else { Status::Infeasible };
    RunResult { status, doc: Value::Object(m), table: Vec::new() }
}

/// Rational data converted to power moments.
pub fn run_convert(file: &ProblemFile) -> RunResult {
    let kind = file.problem.kind();
    match power_moments(&file.problem) {
        Err(e) => error_result(kind, &SolverConfig::default(), e),
        Ok(g) => RunResult {
            status: Status::Solved,
            doc: json!({"kind": kind, "status": "converted", "power_moments": rats(g.values())}),
            table: Vec::new(),
        },
    }
}

/// Plain-text rendering of a result document.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, doc, 0);
    out
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_into(out, v, depth + 1);
                    }
                    Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for (i, x) in a.iter().enumerate() {
                            let _ = writeln!(out, "{pad}  [{i}]");
                            render_into(out, x, depth + 2);
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(v));
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                let _ = writeln!(out, "{pad}[{i}]");
                render_into(out, x, depth + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// `input,x,y,density` rows; `y` is empty for measures on the line.
pub fn render_csv(tables: &[(String, &[Row])]) -> String {
    let mut out = String::from("input,x,y,density\n");
    for (name, rows) in tables {
        for r in *rows {
            let y = r.y.map(dec).unwrap_or_default();
            let _ = writeln!(out, "{name},{},{y},{}", dec(r.x), dec(r.density));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_round_trip() {
        for x in [1.0 / 3.0, -2.5e-300, 6.02e23, 0.1 + 0.2] {
            assert_eq!(dec(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn measure_reads_back() {
        let mu = AtomicMeasure::new(vec![0.0, 0.5, 1.0], vec![1.0 / 3.0; 3]);
        let doc = json!({ "measure": measure_json(&mu) });
        assert_eq!(parse_measure(&doc).unwrap(), ParsedMeasure::Line(mu));
    }

    #[test]
    fn text_lists_nested_fields() {
        let t = render_text(&json!({"status": "solved", "measure": {"atoms": ["1"]}}));
        assert!(t.contains("status: solved"));
        assert!(t.contains("  atoms: [1]"));
    }
}
