//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Oscillator with the identity map (isospectral reference).
    HoIdentity,
    /// Oscillator with the square-root map.
    HoSqrt,
    /// Oscillator under the energy-dependent force.
    Edp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    Seed,
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// `start:end:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err(format!("grid `{s}` is not start:end:count"));
        };
        let start: f64 = start.trim().parse().map_err(|_| format!("bad grid start `{start}`"))?;
        let end: f64 = end.trim().parse().map_err(|_| format!("bad grid end `{end}`"))?;
        let count: usize = count.trim().parse().map_err(|_| format!("bad grid count `{count}`"))?;
        if !(start.is_finite() && end.is_finite() && start < end) || count < 3 {
            return Err(format!("grid `{s}` needs start < end and count ≥ 3"));
        }
        Ok(Self { start, end, count })
    }
}

impl TryFrom<String> for GridSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<GridSpec> for String {
    fn from(g: GridSpec) -> String {
        format!("{}:{}:{}", g.start, g.end, g.count)
    }
}

/// Level selection: `3`, `0,2,4`, `0..3` (inclusive) or a mix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LevelSet(pub Vec<usize>);

impl FromStr for LevelSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut levels = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((a, b)) = item.split_once("..") {
                let b = b.strip_prefix('=').unwrap_or(b);
                let a: usize = a.trim().parse().map_err(|_| format!("bad level `{a}`"))?;
                let b: usize = b.trim().parse().map_err(|_| format!("bad level `{b}`"))?;
                if a > b {
                    return Err(format!("empty level range `{item}`"));
                }
                levels.extend(a..=b);
            } else {
                levels.push(item.parse().map_err(|_| format!("bad level `{item}`"))?);
            }
        }
        if levels.is_empty() {
            return Err("no levels given".into());
        }
        Ok(Self(levels))
    }
}

impl TryFrom<String> for LevelSet {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<LevelSet> for String {
    fn from(l: LevelSet) -> String {
        l.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Flags shared by every subcommand. Each one also has a key of the same
/// name (with underscores) in the `--config` JSON file; flags win.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Model family [default: ho-sqrt]
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Energy-dependent force strength λ [default: 0]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Mass m [default: 1]
    #[arg(long)]
    pub m: Option<f64>,
    /// Frequency ω [default: 1]
    #[arg(long)]
    pub omega: Option<f64>,
    /// Levels: `2`, `0,2,4` or the inclusive range `0..3`
    #[arg(long)]
    pub n: Option<LevelSet>,
    /// Highest level when --n is absent [default: 5]
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Sampling grid start:end:count [default: 0.001:8:8001 on the
    /// half-line, -6:6:1201 on the line]
    #[arg(long)]
    pub grid: Option<GridSpec>,
    /// Wavefunction branch [default: minus]
    #[arg(long, value_enum)]
    pub branch: Option<BranchKind>,
    /// Verification suite, or `all` [default: all]
    #[arg(long)]
    pub suite: Option<String>,
    /// Output format [default: csv; json for verify]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (directory for export) [default: stdout, `figures` for export]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Integration constant C of the general Riccati solution
    #[arg(long, allow_hyphen_values = true)]
    pub constant: Option<f64>,
    /// Put one column pair per level instead of one row block per level
    #[arg(long)]
    #[serde(default)]
    pub wide: bool,
    /// JSON file with defaults for any of the flags above
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Options {
    /// Fills unset flags from the `--config` file, if any.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => read_config(path)?,
            None => Options::default(),
        };
        let merged = Options {
            model: self.model.or(file.model),
            lambda: self.lambda.or(file.lambda),
            m: self.m.or(file.m),
            omega: self.omega.or(file.omega),
            n: self.n.or(file.n),
            n_max: self.n_max.or(file.n_max),
            grid: self.grid.or(file.grid),
            branch: self.branch.or(file.branch),
            suite: self.suite.or(file.suite),
            format: self.format.or(file.format),
            out: self.out.or(file.out),
            constant: self.constant.or(file.constant),
            wide: self.wide || file.wide,
            config: None,
        };
        RunConfig::from_options(merged)
    }
}

fn read_config(path: &Path) -> Result<Options, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub lambda: f64,
    pub mass: f64,
    pub omega: f64,
    /// Explicit `--n`.
    pub levels: Option<Vec<usize>>,
    /// Explicit `--n-max`.
    pub n_max: Option<usize>,
    pub grid: Option<GridSpec>,
    pub branch: BranchKind,
    pub suite: String,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub constant: Option<f64>,
    pub wide: bool,
}

impl RunConfig {
    fn from_options(o: Options) -> Result<Self, CliError> {
        let mass = o.m.unwrap_or(1.0);
        let omega = o.omega.unwrap_or(1.0);
        let lambda = o.lambda.unwrap_or(0.0);
        if !(mass > 0.0 && mass.is_finite() && omega > 0.0 && omega.is_finite()) {
            return Err(CliError::Config("m and ω must be positive".into()));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(CliError::Config("λ must be finite and nonnegative".into()));
        }
        Ok(Self {
            model: o.model.unwrap_or(ModelKind::HoSqrt),
            lambda,
            mass,
            omega,
            levels: o.n.map(|l| l.0),
            n_max: o.n_max,
            grid: o.grid,
            branch: o.branch.unwrap_or(BranchKind::Minus),
            suite: o.suite.unwrap_or_else(|| "all".into()),
            format: o.format,
            out: o.out,
            constant: o.constant,
            wide: o.wide,
        })
    }
}

impl RunConfig {
    /// `--n`, else `0..=--n-max`, else `0..=default_max`.
    pub fn levels_or(&self, default_max: usize) -> Vec<usize> {
        match &self.levels {
            Some(l) => l.clone(),
            None => (0..=self.n_max.unwrap_or(default_max)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_sets() {
        assert_eq!("0..3".parse::<LevelSet>().unwrap().0, [0, 1, 2, 3]);
        assert_eq!("0..=2".parse::<LevelSet>().unwrap().0, [0, 1, 2]);
        assert_eq!("1,3, 5".parse::<LevelSet>().unwrap().0, [1, 3, 5]);
        assert_eq!("0,4..5".parse::<LevelSet>().unwrap().0, [0, 4, 5]);
        assert!("3..1".parse::<LevelSet>().is_err());
        assert!("x".parse::<LevelSet>().is_err());
    }

    #[test]
    fn grid_specs() {
        let g: GridSpec = "0.001:8:8001".parse().unwrap();
        assert_eq!((g.start, g.end, g.count), (0.001, 8.0, 8001));
        assert!("1:0:10".parse::<GridSpec>().is_err());
        assert!("0:1:2".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("susy-pct-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        std::fs::write(&path, r#"{"model": "edp", "lambda": 0.5, "n": "0..2", "grid": "0.1:2:20"}"#).unwrap();
        let opts = Options {
            lambda: Some(0.25),
            config: Some(path),
            ..Options::default()
        };
        let cfg = opts.resolve().unwrap();
        assert_eq!(cfg.model, ModelKind::Edp);
        assert_eq!(cfg.lambda, 0.25);
        assert_eq!(cfg.levels_or(5), [0, 1, 2]);
        assert_eq!(cfg.grid.unwrap().count, 20);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let err = serde_json::from_str::<Options>(r#"{"modle": "edp"}"#);
        assert!(err.is_err());
    }
}
