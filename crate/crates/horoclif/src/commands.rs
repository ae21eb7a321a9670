//! The subcommands as functions from input text to report text.

use horoclif_core::hyperbolic::horosphere;
use horoclif_core::lambda::{ptolemy_residual, LambdaMatrix, RelationReport};
use horoclif_core::lipschitz::LipschitzSpinor;
use horoclif_core::minkowski::multiflag;
use horoclif_core::random::{random_sl2, random_spinor};
use horoclif_core::MAX_DIM;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::output::{to_csv_flat, to_csv_table, to_json};
use crate::suites;
use crate::wire::{HorosphereJson, LambdaJson, MatrixJson, MultiflagJson, RelationJson, SpinorJson};

pub const DEFAULT_PTOLEMY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RandomKind {
    Spinor,
    Matrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub format: Format,
    pub cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { n: None, seed: 0, samples: None, tol: None, format: Format::Json, cap: MAX_DIM }
    }
}

impl RunConfig {
    fn dim(&self, default: usize) -> Result<usize, CliError> {
        let n = self.n.unwrap_or(default);
        if n > self.cap {
            return Err(CliError::input(format!("dimension {n} exceeds cap {}", self.cap)));
        }
        Ok(n)
    }

    fn samples(&self, default: usize) -> Result<usize, CliError> {
        match self.samples.unwrap_or(default) {
            0 => Err(CliError::input("--samples must be at least 1")),
            s => Ok(s),
        }
    }
}

/// Text to print and the exit status (0, or 1 for a failed check).
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

/// Output of `random --kind spinor`, also accepted as input by every
/// spinor-reading command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorBatch {
    pub n: usize,
    pub spinors: Vec<SpinorJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixBatch {
    pub n: usize,
    pub matrices: Vec<MatrixJson>,
}

/// Reads one spinor, an array of spinors, or any object with a `spinors`
/// array (random and lambda output). The flag is true for a single spinor.
pub fn parse_spinors(text: &str, n: Option<usize>) -> Result<(Vec<LipschitzSpinor>, bool), CliError> {
    parse_spinors_capped(text, n, MAX_DIM)
}

fn parse_spinors_capped(text: &str, n: Option<usize>, cap: usize) -> Result<(Vec<LipschitzSpinor>, bool), CliError> {
    let v: Value = serde_json::from_str(text)?;
    let (items, single) = match v {
        Value::Array(items) => (items, false),
        Value::Object(mut map) => match map.remove("spinors") {
            Some(Value::Array(items)) => (items, false),
            Some(_) => return Err(CliError::input("\"spinors\" must be an array")),
            None => (vec![Value::Object(map)], true),
        },
        _ => return Err(CliError::input("expected a spinor object or an array of spinors")),
    };
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let s: SpinorJson = serde_json::from_value(item)?;
        if s.n > cap {
            return Err(CliError::input(format!("dimension {} exceeds cap {cap}", s.n)));
        }
        let expected = n.or(out.first().map(|k: &LipschitzSpinor| k.n()));
        if let Some(e) = expected.filter(|&e| e != s.n) {
            return Err(CliError::input(format!("spinor over n = {} where n = {e} was expected", s.n)));
        }
        out.push(s.to_spinor()?);
    }
    Ok((out, single))
}

fn emit<T: Serialize>(value: &T, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(value),
        Format::Csv => to_csv_flat(value),
    }
}

fn horospheres(text: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let (spinors, single) = parse_spinors_capped(text, cfg.n, cfg.cap)?;
    let hs: Vec<HorosphereJson> = spinors.iter().map(|k| (&horosphere(k)).into()).collect();
    if single {
        emit(&hs[0], cfg.format)
    } else {
        emit(&hs, cfg.format)
    }
}

pub fn cmd_horosphere(text: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    horospheres(text, cfg).map(Report::ok)
}

pub fn cmd_lambda(text: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let (spinors, _) = parse_spinors_capped(text, cfg.n, cfg.cap)?;
    let m = LambdaMatrix::new(spinors)?;
    emit(&LambdaJson::from(&m), cfg.format).map(Report::ok)
}

pub fn cmd_ptolemy(text: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let (k, _) = parse_spinors_capped(text, cfg.n, cfg.cap)?;
    if k.len() != 4 {
        return Err(CliError::input(format!("ptolemy needs 4 spinors, got {}", k.len())));
    }
    let (residual, conditioning) = ptolemy_residual(&k[0], &k[1], &k[2], &k[3])?;
    let r = RelationReport::new("ptolemy", residual, conditioning, cfg.tol.unwrap_or(DEFAULT_PTOLEMY_TOL));
    let json = RelationJson::from(&r);
    let text = match cfg.format {
        Format::Json => to_json(&json)?,
        Format::Csv => to_csv_table(&[json])?,
    };
    Ok(Report { text, code: if r.pass { 0 } else { 1 } })
}

pub fn cmd_flags(text: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let (spinors, single) = parse_spinors_capped(text, cfg.n, cfg.cap)?;
    let flags: Vec<MultiflagJson> = spinors.iter().map(|k| (&multiflag(k)).into()).collect();
    let text = if single { emit(&flags[0], cfg.format)? } else { emit(&flags, cfg.format)? };
    Ok(Report::ok(text))
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let run = suites::Config { n: cfg.dim(2)?, seed: cfg.seed, samples: cfg.samples(200)?, tol: cfg.tol };
    let report = suites::run(&run);
    let text = match cfg.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let rows: Vec<_> = report.suites.iter().flat_map(|s| s.properties.iter().cloned()).collect();
            to_csv_table(&rows)?
        }
    };
    Ok(Report { text, code: if report.pass { 0 } else { 1 } })
}

pub fn cmd_random(cfg: &RunConfig, kind: RandomKind) -> Result<Report, CliError> {
    let n = cfg.dim(2)?;
    let count = cfg.samples(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let text = match kind {
        RandomKind::Spinor => {
            let spinors = (0..count).map(|_| random_spinor(n, &mut rng)).collect::<Result<Vec<_>, _>>()?;
            emit(&batch(n, &spinors), cfg.format)?
        }
        RandomKind::Matrix => {
            let matrices = (0..count)
                .map(|_| random_sl2(n, &mut rng).map(|m| MatrixJson::from_matrix(&m)))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&MatrixBatch { n, matrices }, cfg.format)?
        }
    };
    Ok(Report::ok(text))
}

fn batch(n: usize, spinors: &[LipschitzSpinor]) -> SpinorBatch {
    SpinorBatch { n, spinors: spinors.iter().map(SpinorJson::from_spinor).collect() }
}

// Shortcuts used by the cli suite.

pub fn spinors_to_json(spinors: &[LipschitzSpinor]) -> Result<String, CliError> {
    to_json(&batch(spinors.first().map_or(0, |k| k.n()), spinors))
}

pub fn random_spinors_json(n: usize, seed: u64, count: usize) -> Result<String, CliError> {
    let cfg = RunConfig { n: Some(n), seed, samples: Some(count), ..RunConfig::default() };
    cmd_random(&cfg, RandomKind::Spinor).map(|r| r.text)
}

pub fn horosphere_json(text: &str) -> Result<String, CliError> {
    horospheres(text, &RunConfig::default())
}

pub fn lambda_json(text: &str) -> Result<String, CliError> {
    cmd_lambda(text, &RunConfig::default()).map(|r| r.text)
}
