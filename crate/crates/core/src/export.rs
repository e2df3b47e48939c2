//! Data files: wave-function profiles, trajectories and symbol tables.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::coherent::{coherent_closed, CoherentParams};
use crate::config::OutputFormat;
use crate::error::{Error, Result};
use crate::harness::{csv_error, SymbolReport, TrajectoryReport};

/// Uniform grid `min:max:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) || points < 2 {
            return Err(Error::Config(format!("bad grid {min}:{max}:{points}")));
        }
        Ok(Self { min, max, points })
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|k| self.min + self.step() * k as f64)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("grid must look like min:max:points, got {s:?}"));
        let parts: Vec<_> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        let min = a.trim().parse().map_err(|_| bad())?;
        let max = b.trim().parse().map_err(|_| bad())?;
        let points = n.trim().parse().map_err(|_| bad())?;
        Self::new(min, max, points)
    }
}

#[derive(Debug, Clone)]
pub struct ProfileRow {
    pub x: f64,
    pub psi: Complex64,
    pub phi: Complex64,
}

#[derive(Debug, Clone)]
pub struct Profile {
    pub params: CoherentParams,
    pub t: f64,
    pub sigma: Complex64,
    /// Display form of the Grassmann normalizer.
    pub normalizer: String,
    pub grid: Grid,
    pub rows: Vec<ProfileRow>,
}

impl Profile {
    /// `Σ |ψ|² Δx` over the grid.
    pub fn psi_mass(&self) -> f64 {
        self.rows.iter().map(|r| r.psi.norm_sqr()).sum::<f64>() * self.grid.step()
    }
}

/// Samples ψ_z and φ_z; without a grid, eight envelope widths each side.
pub fn profile(p: &CoherentParams, t: f64, grid: Option<Grid>) -> Result<Profile> {
    let closed = coherent_closed(p, t)?;
    let grid = match grid {
        Some(g) => g,
        None => {
            let w = 8.0 * closed.envelope_scale();
            Grid::new(-w, w, 801)?
        }
    };
    let rows = grid
        .iter()
        .map(|x| ProfileRow {
            x,
            psi: closed.psi(x),
            phi: closed.phi(x),
        })
        .collect();
    Ok(Profile {
        params: *p,
        t,
        sigma: closed.sigma,
        normalizer: closed.normalizer.to_string(),
        grid,
        rows,
    })
}

fn fmt_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn csv_bytes(header: &[String], columns: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut out: Vec<u8> = header.iter().map(|h| format!("# {h}\n")).collect::<String>().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(columns).map_err(csv_error)?;
        for row in rows {
            w.write_record(&row).map_err(csv_error)?;
        }
        w.flush()?;
    }
    Ok(out)
}

pub fn profile_csv(profile: &Profile) -> Result<Vec<u8>> {
    let header = vec![
        format!("z = {}", fmt_complex(profile.params.z)),
        format!("alpha = {}", fmt_complex(profile.params.alpha)),
        format!("t = {}", profile.t),
        format!("N = {}", profile.normalizer),
        format!("sigma = {}", fmt_complex(profile.sigma)),
    ];
    csv_bytes(
        &header,
        &["x", "re_psi", "im_psi", "re_phi", "im_phi"],
        profile.rows.iter().map(|r| {
            [r.x, r.psi.re, r.psi.im, r.phi.re, r.phi.im]
                .iter()
                .map(|v| format!("{v:e}"))
                .collect()
        }),
    )
}

pub fn trajectory_csv(report: &TrajectoryReport) -> Result<Vec<u8>> {
    let header = vec![
        format!("z = {}", fmt_complex(report.params.z)),
        format!("alpha = {}", fmt_complex(report.params.alpha)),
        format!("intercept = {}", fmt_complex(report.intercept)),
        format!("slope = {}", fmt_complex(report.slope)),
        format!("fit_residual = {:e}", report.fit_residual),
    ];
    csv_bytes(
        &header,
        &[
            "t", "re_x_theta", "im_x_theta", "re_p_theta", "im_p_theta", "re_x0", "im_x0", "re_p0", "im_p0",
            "mean_x", "mean_p", "fit_residual",
        ],
        report.points.iter().map(|pt| {
            let fitted = report.intercept + report.slope * pt.t;
            [
                pt.t,
                pt.x_theta.re,
                pt.x_theta.im,
                pt.p_theta.re,
                pt.p_theta.im,
                pt.x0.re,
                pt.x0.im,
                pt.p0.re,
                pt.p0.im,
                pt.mean_x,
                pt.mean_p,
                (pt.x_theta - fitted).norm(),
            ]
            .iter()
            .map(|v| format!("{v:e}"))
            .collect()
        }),
    )
}

pub fn symbols_bytes(report: &SymbolReport, format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        OutputFormat::Csv => {
            let soul = |terms: &[crate::grassmann::Term]| {
                terms
                    .iter()
                    .map(|t| format!("{}:{}{:+}i", t.monomial, t.re, t.im))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            csv_bytes(
                &[
                    format!("convention = {:?}", report.convention).to_lowercase(),
                    format!("calibration_z = {}", fmt_complex(report.calibration_z)),
                ],
                &[
                    "generator", "re_z", "im_z", "re_alpha", "im_alpha", "re_body", "im_body", "soul",
                    "re_closed_body", "im_closed_body", "closed_soul", "defect",
                ],
                report.records.iter().map(|r| {
                    vec![
                        r.generator.clone(),
                        r.z.re.to_string(),
                        r.z.im.to_string(),
                        r.alpha_coeff.re.to_string(),
                        r.alpha_coeff.im.to_string(),
                        format!("{:e}", r.computed_body.re),
                        format!("{:e}", r.computed_body.im),
                        soul(&r.computed_soul),
                        format!("{:e}", r.closed_form_body.re),
                        format!("{:e}", r.closed_form_body.im),
                        soul(&r.closed_form_soul),
                        format!("{:e}", r.defect),
                    ]
                }),
            )
        }
    }
}

/// Writes `bytes` to `dir/name`, creating `dir`.
pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, bytes)?;
    Ok(path)
}
