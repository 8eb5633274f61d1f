//! Plans and runs verification jobs for one model.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog;
use crate::dsl::{parse_model, ModelError};
use crate::geometry::{GeometryError, ManifoldModel};
use crate::report::{Format, Report};
use crate::sampling::{job_seed, SampleSet};
use crate::theorems::{run_check, Check, CheckReport, Target, Verdict, MODEL_FIELD};

/// Tolerance used by the theorem checks when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Built-in model name or path to a model file.
    pub manifold: String,
    pub fields: Vec<String>,
    pub checks: Vec<String>,
    pub all: bool,
    pub samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            manifold: String::new(),
            fields: Vec::new(),
            checks: Vec::new(),
            all: false,
            samples: 100,
            seed: 42,
            tol: None,
            format: Format::Text,
            out: None,
        }
    }
}

/// Problems with the request itself; nothing has been computed yet.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("model not found: {0}")]
    ModelNotFound(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ModelError },
    #[error("{path}: {source}")]
    Model { path: String, source: GeometryError },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("model `{model}` has no field, one-form or tensor named `{name}`")]
    UnknownField { model: String, name: String },
    #[error("check `{check}` has nothing to run on: it needs {needs}")]
    NoTargets { check: String, needs: &'static str },
    #[error("--samples must be positive")]
    NoSamples,
    #[error("--tol must be a non-negative number")]
    BadTolerance,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: Report,
    /// Human-readable notes on checks whose verdict contradicts the
    /// declared expectation, or which produced non-finite numbers.
    pub problems: Vec<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.problems.is_empty() {
            0
        } else {
            1
        }
    }
}

/// Resolves a built-in name, then a file path.
pub fn load_model(selector: &str) -> Result<(ManifoldModel, bool), ConfigError> {
    if let Some(m) = catalog::builtin(selector) {
        return Ok((m, true));
    }
    let path = Path::new(selector);
    if !path.is_file() {
        return Err(ConfigError::ModelNotFound(selector.to_string()));
    }
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: selector.to_string(),
        source,
    })?;
    let doc = parse_model(&text).map_err(|source| ConfigError::Parse {
        path: selector.to_string(),
        source,
    })?;
    let model = doc.to_model().map_err(|source| ConfigError::Model {
        path: selector.to_string(),
        source,
    })?;
    Ok((model, false))
}

struct Job {
    check: Check,
    target: String,
}

fn plan(config: &RunConfig, model: &ManifoldModel) -> Result<Vec<Job>, ConfigError> {
    let checks: Vec<Check> = if config.all || config.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        config
            .checks
            .iter()
            .map(|id| Check::from_id(id).ok_or_else(|| ConfigError::UnknownCheck(id.clone())))
            .collect::<Result<_, _>>()?
    };
    for name in &config.fields {
        let known = model.vector_fields.contains_key(name)
            || model.one_forms.contains_key(name)
            || model.tensors11.contains_key(name);
        if !known {
            return Err(ConfigError::UnknownField {
                model: model.name.clone(),
                name: name.clone(),
            });
        }
    }
    let pick = |names: Vec<&String>| -> Vec<String> {
        names
            .into_iter()
            .filter(|n| config.fields.is_empty() || config.fields.contains(n))
            .cloned()
            .collect()
    };
    let explicit = !config.all && !config.checks.is_empty();
    let mut jobs = Vec::new();
    for check in checks {
        let (targets, needs) = match check.target() {
            Target::Model => (vec![MODEL_FIELD.to_string()], ""),
            Target::VectorField => (pick(model.vector_fields.keys().collect()), "a vector field"),
            Target::Tensor11 => (pick(model.tensors11.keys().collect()), "a (1,1) tensor field"),
        };
        if targets.is_empty() && explicit {
            return Err(ConfigError::NoTargets {
                check: check.id().to_string(),
                needs,
            });
        }
        jobs.extend(targets.into_iter().map(|target| Job { check, target }));
    }
    Ok(jobs)
}

fn run_job(job: &Job, model: &ManifoldModel, config: &RunConfig) -> CheckReport {
    let seed = job_seed(config.seed, &format!("{}/{}", job.check.id(), job.target));
    let result = SampleSet::draw(model, config.samples, seed)
        .and_then(|set| run_check(job.check, model, &job.target, &set, seed, config.tol));
    result.unwrap_or_else(|err| {
        // Evaluation broke down (e.g. a field undefined at a sample point);
        // report it as a non-finite failure rather than aborting the run.
        let mut sub = std::collections::BTreeMap::new();
        sub.insert(format!("error: {err}"), f64::NAN);
        CheckReport {
            id: job.check.id().to_string(),
            manifold: model.name.clone(),
            field: job.target.clone(),
            seed,
            samples: 0,
            rejected_samples: 0,
            max_condition: f64::NAN,
            max_residual: f64::NAN,
            tolerance: config.tol.unwrap_or(job.check.default_tolerance()),
            verdict: Verdict::Fail,
            sub_residuals: sub,
        }
    })
}

/// Validates the configuration, runs every planned job and compares the
/// verdicts against the built-in expectations.
pub fn run(config: &RunConfig) -> Result<RunOutcome, ConfigError> {
    if config.samples == 0 {
        return Err(ConfigError::NoSamples);
    }
    if matches!(config.tol, Some(t) if t.is_nan() || t < 0.0) {
        return Err(ConfigError::BadTolerance);
    }
    let (model, builtin) = load_model(&config.manifold)?;
    let jobs = plan(config, &model)?;

    let mut checks: Vec<CheckReport> = jobs.par_iter().map(|job| run_job(job, &model, config)).collect();
    checks.sort_by(|a, b| (&a.id, &a.field).cmp(&(&b.id, &b.field)));

    let mut problems = Vec::new();
    for c in &checks {
        if c.has_non_finite() {
            problems.push(format!("{} {}: non-finite residual", c.id, c.field));
            continue;
        }
        let expected = if builtin {
            catalog::expectation(&model.name, &c.id, &c.field)
        } else {
            None
        };
        if let Some(pass) = expected {
            if pass != c.verdict.passed() {
                problems.push(format!(
                    "{} {}: expected {}, got {} (residual {:.3e})",
                    c.id,
                    c.field,
                    if pass { "pass" } else { "fail" },
                    if c.verdict.passed() { "pass" } else { "fail" },
                    c.max_residual
                ));
            }
        }
    }

    let report = Report {
        seed: config.seed,
        manifold: Some(model.name.clone()),
        samples: Some(config.samples),
        tolerance_default: Some(config.tol.unwrap_or(DEFAULT_TOLERANCE)),
        checks,
    };
    Ok(RunOutcome { report, problems })
}
