use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hyplab_core::{FamilySpec, Thresholds};

use crate::error::CliError;

/// Output encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Tolerance overrides; unset fields keep the library defaults.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub decay_tail: Option<f64>,
    pub decay_slope: Option<f64>,
    pub convergent: Option<f64>,
    pub divergent: Option<f64>,
    pub trivial: Option<f64>,
    pub parity: Option<f64>,
    pub join: Option<f64>,
}

impl Tolerances {
    /// `self` wins over `lower` field by field.
    pub fn or(self, lower: Tolerances) -> Tolerances {
        Tolerances {
            decay_tail: self.decay_tail.or(lower.decay_tail),
            decay_slope: self.decay_slope.or(lower.decay_slope),
            convergent: self.convergent.or(lower.convergent),
            divergent: self.divergent.or(lower.divergent),
            trivial: self.trivial.or(lower.trivial),
            parity: self.parity.or(lower.parity),
            join: self.join.or(lower.join),
        }
    }

    pub fn thresholds(&self) -> Result<Thresholds, CliError> {
        let mut th = Thresholds::default();
        for (name, v) in [
            ("decay-tail", self.decay_tail),
            ("convergent", self.convergent),
            ("divergent", self.divergent),
            ("trivial", self.trivial),
            ("parity", self.parity),
            ("join", self.join),
        ] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(CliError::config(format!("--tol-{name} must be positive, got {v}")));
                }
            }
        }
        if let Some(v) = self.decay_slope {
            if !(v < 0.0) {
                return Err(CliError::config(format!("--tol-decay-slope must be negative, got {v}")));
            }
            th.decay_slope = v;
        }
        if let Some(v) = self.decay_tail {
            th.decay_tail_max = v;
        }
        if let Some(v) = self.convergent {
            th.convergent_ratio = v;
        }
        if let Some(v) = self.divergent {
            th.divergent_ratio = v;
        }
        if th.convergent_ratio >= th.divergent_ratio {
            return Err(CliError::config("convergent ratio must be below the divergent ratio"));
        }
        if let Some(v) = self.trivial {
            th.trivial_tol = v;
        }
        if let Some(v) = self.parity {
            th.parity_tol = v;
        }
        Ok(th)
    }
}

/// Settings read from `--config`. Every field is optional; command-line
/// flags take precedence, then this file, then built-in defaults.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: Option<String>,
    pub params: Option<BTreeMap<String, f64>>,
    pub n: Option<usize>,
    pub grid: Option<String>,
    pub points: Option<Vec<String>>,
    pub x: Option<String>,
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub c_radius: Option<usize>,
    pub support: Option<usize>,
    pub curve: Option<Vec<usize>>,
    pub depth: Option<usize>,
    pub h: Option<String>,
    pub j: Option<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("bad config {}: {e}", path.display())))
    }
}

/// `a=2,b=4` into a parameter map.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("parameter '{part}' is not key=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("parameter '{part}' has a non-numeric value")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

pub fn family_spec(name: Option<String>, params: BTreeMap<String, f64>) -> Result<FamilySpec, CliError> {
    let family = name.ok_or_else(|| CliError::config("no family given (use --family)"))?;
    Ok(FamilySpec { family, params })
}

/// Grid `lo:hi:steps`, endpoints included.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::config(format!("grid '{s}' is not lo:hi:steps")));
    }
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::config(format!("bad grid bound '{t}'")))
    };
    let lo = num(parts[0])?;
    let hi = num(parts[1])?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| CliError::config(format!("bad grid step count '{}'", parts[2])))?;
    if !(lo < hi) {
        return Err(CliError::config(format!("grid needs lo < hi, got {lo}:{hi}")));
    }
    if steps < 2 {
        return Err(CliError::config("grid needs at least 2 steps"));
    }
    Ok((0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect())
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| CliError::config(format!("bad {what} '{p}'"))))
        .collect()
}
