//! Bundled worked examples.

use rtmp_core::quadratic::{Quadratic, SurdSet};
use rtmp_core::solver::{extension_region, ExtensionRegion, SolverConfig};
use serde_json::{json, Map, Value};

use crate::problem::{parse_problem_str, Problem, ProblemFile};
use crate::report::{dec, run_solve, RunResult};
use crate::{effective_config, Flags};

pub const NAMES: [&str; 2] = ["example-3x", "example-4x"];

/// Problem file text of a preset.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "example-3x" => Some(include_str!("../presets/example-3x.json")),
        "example-4x" => Some(include_str!("../presets/example-4x.json")),
        _ => None,
    }
}

pub fn load(name: &str) -> Option<ProblemFile> {
    source(name).map(|s| parse_problem_str(s).expect("bundled presets parse"))
}

/// Solves the preset; example-4x also reports the exact extension bounds.
pub fn run(name: &str, flags: &Flags) -> Option<RunResult> {
    let file = load(name)?;
    let cfg = effective_config(&file, flags);
    let mut result = run_solve(&file, &cfg);
    if name == "example-4x" {
        let analysis = extension_analysis(&file, &cfg);
        if let Value::Object(m) = &mut result.doc {
            m.insert("extension_analysis".into(), analysis);
        }
    }
    if let Value::Object(m) = &mut result.doc {
        m.insert("preset".into(), name.into());
    }
    Some(result)
}

fn quadratic_json(q: &Quadratic) -> Value {
    json!({"a": q.a.to_string(), "b": q.b.to_string(), "c": q.c.to_string()})
}

fn set_json(s: &SurdSet) -> Value {
    s.bounds_f64()
        .into_iter()
        .map(|(lo, hi)| vec![dec(lo), dec(hi)])
        .collect::<Vec<_>>()
        .into()
}

fn region_json(region: &ExtensionRegion) -> Value {
    let bounds = |terms: &[rtmp_core::solver::BoundTerm]| -> Vec<Value> {
        terms
            .iter()
            .map(|t| json!({"product": t.product.f.to_string(), "bound": quadratic_json(&t.bound)}))
            .collect()
    };
    let mut m = Map::new();
    m.insert("x_interval".into(), region.x_interval.to_string().into());
    m.insert("lower_bounds".into(), bounds(&region.y_lower).into());
    m.insert("upper_bounds".into(), bounds(&region.y_upper).into());
    m.insert("feasible_x".into(), set_json(&region.feasible_x()));
    if let Some(i0) = region.y_lower.iter().position(|t| t.product.degree() == 0) {
        m.insert("constant_bound_dominates_on".into(), set_json(&region.lower_dominance_set(i0)));
    }
    Value::Object(m)
}

/// Bounds on `(γ_{2k+1}, γ_{2k+2})` before and after the fixed extension.
fn extension_analysis(file: &ProblemFile, cfg: &SolverConfig) -> Value {
    let Problem::Rtmp { spec, data, k } = &file.problem else {
        return Value::Null;
    };
    let Ok(mut gamma) = rtmp_core::rational::rational_to_power(data, spec) else {
        return Value::Null;
    };
    let mut steps = Vec::new();
    let mut push = |gamma: &rtmp_core::MomentSequence| {
        let d = gamma.degree();
        let entry = match extension_region(gamma, k) {
            Ok(r) => {
                let mut v = region_json(&r);
                v["moments"] = json!([format!("gamma{}", d + 1), format!("gamma{}", d + 2)]);
                v
            }
            Err(e) => json!({"moments": [format!("gamma{}", d + 1), format!("gamma{}", d + 2)], "error": e.to_string()}),
        };
        steps.push(entry);
    };
    push(&gamma);
    for (x, y) in &cfg.fixed_extension {
        gamma = gamma.extended(&[x.clone(), y.clone()]);
        push(&gamma);
    }
    Value::Array(steps)
}
