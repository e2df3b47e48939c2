//! Run configuration: defaults, a flat TOML file, and validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{series_modes, SERIES_CAP, SERIES_TOL};
use crate::error::{Error, Result};
use crate::report::parse_complex;

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "OSP22_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Matrix identities and exact cancellations.
    pub algebra: f64,
    /// Anything integrated numerically over x.
    pub quadrature: f64,
    /// Agreement between routes to the coherent state and its symbols.
    pub coherent: f64,
    /// Finite-difference Schrödinger residuals.
    pub residual: f64,
    /// Superisometry of the truncated displacement operator.
    pub isometry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: 1e-12,
            quadrature: 1e-10,
            coherent: 1e-8,
            residual: 1e-6,
            isometry: 1e-6,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 5] = ["algebra", "quadrature", "coherent", "residual", "isometry"];

    pub fn get_mut(&mut self, name: &str) -> Result<&mut f64> {
        match name {
            "algebra" => Ok(&mut self.algebra),
            "quadrature" => Ok(&mut self.quadrature),
            "coherent" => Ok(&mut self.coherent),
            "residual" => Ok(&mut self.residual),
            "isometry" => Ok(&mut self.isometry),
            other => Err(Error::Config(format!("unknown tolerance {other:?}"))),
        }
    }

    fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> {
        Self::NAMES.into_iter().zip([self.algebra, self.quadrature, self.coherent, self.residual, self.isometry])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub nmax: usize,
    pub nodes: usize,
    pub tolerances: Tolerances,
    #[serde(with = "crate::report::complex_vec")]
    pub z_samples: Vec<Complex64>,
    pub t_samples: Vec<f64>,
    /// Times at which the odd-sector trajectory is sampled.
    pub times: Vec<f64>,
    /// Coefficient of the generator α used wherever a nonzero α is needed.
    #[serde(with = "crate::report::complex_obj")]
    pub alpha: Complex64,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    /// Largest number of modes per sector a coherent-state series may use.
    pub series_cap: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let quarter = std::f64::consts::FRAC_PI_4;
        Self {
            nmax: 32,
            nodes: 200,
            tolerances: Tolerances::default(),
            z_samples: vec![
                Complex64::new(0.3, 0.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(-0.7, 0.0),
                Complex64::from_polar(0.8, quarter),
                Complex64::new(0.0, 0.0),
            ],
            t_samples: vec![0.0, 1.0],
            times: vec![0.0, 1.0, 2.0, 3.0],
            alpha: Complex64::new(1.0, 0.0),
            out_dir: PathBuf::from("osp22-out"),
            format: OutputFormat::Json,
            series_cap: SERIES_CAP,
            seed: 20_240_601,
        }
    }
}

/// On-disk form: every key optional, flat, unknown keys rejected. Complex
/// numbers are `"a+bi"` strings.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    nmax: Option<usize>,
    nodes: Option<usize>,
    tol_algebra: Option<f64>,
    tol_quadrature: Option<f64>,
    tol_coherent: Option<f64>,
    tol_residual: Option<f64>,
    tol_isometry: Option<f64>,
    z_samples: Option<Vec<String>>,
    t_samples: Option<Vec<f64>>,
    times: Option<Vec<f64>>,
    alpha: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
    series_cap: Option<usize>,
    seed: Option<u64>,
}

impl RunConfig {
    /// Defaults overlaid with the TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = Self::default();
        macro_rules! take {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = file.$field { $target = v; })*
            };
        }
        take!(
            nmax => cfg.nmax,
            nodes => cfg.nodes,
            tol_algebra => cfg.tolerances.algebra,
            tol_quadrature => cfg.tolerances.quadrature,
            tol_coherent => cfg.tolerances.coherent,
            tol_residual => cfg.tolerances.residual,
            tol_isometry => cfg.tolerances.isometry,
            t_samples => cfg.t_samples,
            times => cfg.times,
            out => cfg.out_dir,
            series_cap => cfg.series_cap,
            seed => cfg.seed,
        );
        if let Some(zs) = file.z_samples {
            cfg.z_samples = zs.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
        }
        if let Some(a) = file.alpha {
            cfg.alpha = parse_complex(&a)?;
        }
        if let Some(f) = file.format {
            cfg.format = f.parse()?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Explicit path, else the file named by [`CONFIG_ENV`], else defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        if let Some(p) = path {
            return Self::from_file(p);
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.nmax < 4 {
            return bad(format!("nmax = {} leaves no interior modes; use at least 4", self.nmax));
        }
        if self.nodes < 2 {
            return bad(format!("nodes = {} is too few for a quadrature rule", self.nodes));
        }
        for (name, tol) in self.tolerances.iter() {
            if !(tol.is_finite() && tol > 0.0) {
                return bad(format!("tolerance {name} = {tol} must be positive and finite"));
            }
        }
        if self.z_samples.is_empty() {
            return bad("z_samples is empty".into());
        }
        for z in &self.z_samples {
            if !(z.norm() < 1.0) {
                return bad(format!("z sample {z} lies outside the unit disk"));
            }
            series_modes(*z, self.series_cap, SERIES_TOL).map_err(|e| {
                Error::Config(format!(
                    "z sample {z} is too close to the boundary for a certified series within {} modes ({e})",
                    self.series_cap
                ))
            })?;
        }
        if self.t_samples.is_empty() || self.t_samples.iter().any(|t| !t.is_finite()) {
            return bad("t_samples must be a non-empty list of finite times".into());
        }
        if self.times.len() < 3 || self.times.iter().any(|t| !t.is_finite()) {
            return bad("times needs at least three finite entries for the affine fit".into());
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return bad(format!("alpha = {} is not finite", self.alpha));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn file_overrides_defaults() {
        let cfg = RunConfig::from_toml_str(
            r#"
            nmax = 12
            tol_coherent = 1e-7
            z_samples = ["0.1+0.2i", "-0.4"]
            alpha = "0.5i"
            format = "csv"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.nmax, 12);
        assert_eq!(cfg.nodes, 200);
        assert_eq!(cfg.tolerances.coherent, 1e-7);
        assert_eq!(cfg.z_samples, vec![Complex64::new(0.1, 0.2), Complex64::new(-0.4, 0.0)]);
        assert_eq!(cfg.alpha, Complex64::new(0.0, 0.5));
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(RunConfig::from_toml_str("nmaxx = 3"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_toml_str("z_samples = [\"q\"]"), Err(Error::Config(_))));
    }

    #[test]
    fn invalid_values_rejected() {
        let mut cfg = RunConfig::default();
        cfg.tolerances.algebra = 0.0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));

        let mut cfg = RunConfig::default();
        cfg.z_samples = vec![Complex64::new(0.99, 0.0)];
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));

        let mut cfg = RunConfig::default();
        cfg.z_samples = vec![Complex64::new(1.0, 0.0)];
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));

        let mut cfg = RunConfig::default();
        cfg.nmax = 3;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }
}
