//! Command-line front end: problem files in, result documents out.

pub mod presets;
pub mod problem;
pub mod report;

use rtmp_core::solver::SolverConfig;

use problem::ProblemFile;

/// Settings given on the command line; they take precedence over a problem
/// file's `config` block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Flags {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub max_retries: Option<usize>,
}

/// Defaults, then the file's overrides, then the flags.
pub fn effective_config(file: &ProblemFile, flags: &Flags) -> SolverConfig {
    let mut cfg = SolverConfig::default();
    file.config.apply(&mut cfg);
    if let Some(t) = flags.tol {
        cfg.tol = t;
    }
    if let Some(s) = flags.seed {
        cfg.rng_seed = s;
    }
    if let Some(r) = flags.max_retries {
        cfg.max_retries = r;
    }
    cfg
}
