use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use nanoloop_core::{CircuitSpec, ScanOptions};

use crate::args::{CircuitArgs, Model, ScanArgs};
use crate::error::{CliError, CliResult};

/// Defaults read from `--config`. Angles use the same unit as the flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<Model>,
    #[serde(rename = "E")]
    pub energy: Option<f64>,
    #[serde(rename = "V0")]
    pub height: Option<f64>,
    #[serde(rename = "b")]
    pub width: Option<f64>,
    #[serde(rename = "c")]
    pub length: Option<f64>,
    pub alpha: Option<f64>,
    pub xi: Option<f64>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub grid_step: Option<f64>,
    pub tol: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<ConfigFile> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn need(value: Option<f64>, flag: &str, model: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --model {model}")))
}

/// Circuit built from flags, falling back to the config file.
pub fn resolve_circuit(args: &CircuitArgs, cfg: &ConfigFile) -> CliResult<(CircuitSpec, Value)> {
    let model = args
        .model
        .or(cfg.model)
        .ok_or_else(|| CliError::Usage("--model is required (rect, tri, delta or scaled)".into()))?;
    let e = args.energy.or(cfg.energy);
    let v0 = args.height.or(cfg.height);
    let b = args.width.or(cfg.width);
    let c = args.length.or(cfg.length);
    let alpha = args.alpha.or(cfg.alpha);
    let xi = args.xi.or(cfg.xi);
    let (circuit, echo) = match model {
        Model::Rect => {
            let (e, v0, b) = (need(e, "E", "rect")?, need(v0, "V0", "rect")?, need(b, "b", "rect")?);
            (CircuitSpec::rectangular(e, v0, b), json!({"model": "rect", "E_eV": e, "V0_eV": v0, "b_nm": b}))
        }
        Model::Tri => {
            let (e, v0, c) = (need(e, "E", "tri")?, need(v0, "V0", "tri")?, need(c, "c", "tri")?);
            (CircuitSpec::triangular(e, v0, c), json!({"model": "tri", "E_eV": e, "V0_eV": v0, "c_nm": c}))
        }
        Model::Delta => {
            let (e, alpha) = (need(e, "E", "delta")?, need(alpha, "alpha", "delta")?);
            (CircuitSpec::delta(e, alpha), json!({"model": "delta", "E_eV": e, "alpha_eV_nm": alpha}))
        }
        Model::Scaled => {
            let (e, v0, b, xi) = (
                need(e, "E", "scaled")?,
                need(v0, "V0", "scaled")?,
                need(b, "b", "scaled")?,
                need(xi, "xi", "scaled")?,
            );
            (
                CircuitSpec::scaled_rectangular(e, v0, b, xi),
                json!({"model": "scaled", "E_eV": e, "V0_eV": v0, "b_nm": b, "xi": xi}),
            )
        }
    };
    circuit.validate()?;
    Ok((circuit, echo))
}

/// Scan options in radians; `to_rad` converts user angles.
pub fn resolve_scan(args: &ScanArgs, cfg: &ConfigFile, to_rad: f64) -> CliResult<(ScanOptions, Value)> {
    let mut opts = ScanOptions::default();
    if let Some(v) = args.theta_min.or(cfg.theta_min) {
        opts.theta_min = v * to_rad;
    }
    if let Some(v) = args.theta_max.or(cfg.theta_max) {
        opts.theta_max = v * to_rad;
    }
    if let Some(v) = args.grid_step.or(cfg.grid_step) {
        opts.grid_step = v * to_rad;
    }
    if let Some(v) = args.tol.or(cfg.tol) {
        opts.tolerance = v;
    }
    opts.validate()?;
    let echo = json!({
        "theta_min_rad": opts.theta_min,
        "theta_max_rad": opts.theta_max,
        "grid_step_rad": opts.grid_step,
        "tolerance": opts.tolerance,
    });
    Ok((opts, echo))
}
