//! Covariant Berezin symbols `S(H) = (Ψ|HΨ)/(Ψ|Ψ)` in supercoherent states,
//! their closed forms, and the odd-sector trajectory.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{coherent_closed, coherent_series, CoherentParams};
use crate::error::{Error, Result};
use crate::generators::{build_generator, build_generator_at, GeneratorName};
use crate::grassmann::{GeneratorSet, GrassmannElement, Term};
use crate::operator::SuperOperator;
use crate::superspace::{super_inner, SuperVector};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Symbol of `op` in the (not necessarily normalized) state `psi`.
pub fn berezin_symbol(op: &SuperOperator, psi: &SuperVector) -> Result<GrassmannElement> {
    let numerator = super_inner(psi, &op.apply(psi)?)?;
    let denominator = super_inner(psi, psi)?;
    numerator.mul(&denominator.inv()?)
}

/// Symbol of a named generator in the series coherent state at `p`.
pub fn generator_symbol(name: GeneratorName, p: &CoherentParams, cap: usize) -> Result<GrassmannElement> {
    let psi = coherent_series(p, cap)?;
    berezin_symbol(&build_generator(name, psi.nmax())?, &psi)
}

/// How the closed-form symbol table is read: as functions of `(z, α)`, or
/// of the conjugate label with `z → z̄` and `α ↔ ᾱ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Identity,
    Conjugate,
}

/// Closed-form symbol of a basic generator, evaluated under `convention`.
pub fn closed_form_symbol(
    name: GeneratorName,
    p: &CoherentParams,
    convention: Convention,
) -> Result<GrassmannElement> {
    let alg = GeneratorSet::standard();
    let (z, alpha, alpha_bar) = match convention {
        Convention::Identity => (p.z, p.alpha_element(&alg), p.alpha_bar_element(&alg)),
        Convention::Conjugate => (p.z.conj(), p.alpha_bar_element(&alg), p.alpha_element(&alg)),
    };
    let gap = 1.0 - z.norm_sqr();
    let bar_alpha_alpha = alpha_bar.mul(&alpha)?;
    // K_α = 1 + i ᾱα / (1 - |z|²)
    let k_alpha = GrassmannElement::one(&alg).add(&bar_alpha_alpha.scale(I / gap))?;
    let denom = 2.0 * gap;
    let symbol = match name {
        GeneratorName::K0 => k_alpha.scale(re(0.25 * (1.0 + z.norm_sqr()) / gap)),
        GeneratorName::KPlus => k_alpha.scale(z / denom),
        GeneratorName::KMinus => k_alpha.scale(z.conj() / denom),
        GeneratorName::B => GrassmannElement::one(&alg)
            .sub(&bar_alpha_alpha.scale(I / gap))?
            .scale(re(-0.25)),
        GeneratorName::VPlus => alpha.scale(I / denom),
        GeneratorName::VMinus => alpha.scale(I * z.conj() / denom),
        GeneratorName::WPlus => alpha_bar.scale(-z / denom),
        GeneratorName::WMinus => alpha_bar.scale(re(-1.0 / denom)),
        other => {
            return Err(Error::UnknownGenerator(format!(
                "no closed-form symbol for {other}"
            )))
        }
    };
    Ok(symbol)
}

/// Decides the reading of the closed-form table from `S(K₊)` at a non-real `z`.
pub fn convention_calibration(z: Complex64, cap: usize) -> Result<Convention> {
    if z.im.abs() < 1e-6 || z.norm() == 0.0 || z.norm() >= 0.9 {
        return Err(Error::Domain(format!(
            "calibration needs a non-real z with 0 < |z| < 0.9, got {z}"
        )));
    }
    let p = CoherentParams::new(z, re(1.0))?;
    let computed = generator_symbol(GeneratorName::KPlus, &p, cap)?;
    let mut matches = Vec::new();
    for convention in [Convention::Identity, Convention::Conjugate] {
        let expected = closed_form_symbol(GeneratorName::KPlus, &p, convention)?;
        if computed.distance(&expected) < 1e-8 {
            matches.push(convention);
        }
    }
    match matches.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Calibration(format!("S(K+) = {computed} matches neither reading"))),
        _ => Err(Error::Calibration("both readings match; z is effectively real".into())),
    }
}

/// One row of the symbol report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolRecord {
    pub generator: String,
    #[serde(with = "crate::report::complex_obj")]
    pub z: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub alpha_coeff: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub computed_body: Complex64,
    pub computed_soul: Vec<Term>,
    #[serde(with = "crate::report::complex_obj")]
    pub closed_form_body: Complex64,
    pub closed_form_soul: Vec<Term>,
    pub defect: f64,
}

/// Computed against closed-form symbols of all eight basic generators.
pub fn symbol_table(
    samples: &[CoherentParams],
    convention: Convention,
    cap: usize,
) -> Result<Vec<SymbolRecord>> {
    let mut rows = Vec::new();
    for p in samples {
        let psi = coherent_series(p, cap)?;
        for name in GeneratorName::BASIC {
            let op = build_generator(name, psi.nmax())?;
            let computed = berezin_symbol(&op, &psi)?;
            let expected = closed_form_symbol(name, p, convention)?;
            rows.push(SymbolRecord {
                generator: name.label(),
                z: p.z,
                alpha_coeff: p.alpha,
                computed_body: computed.body(),
                computed_soul: computed.soul().to_terms(),
                closed_form_body: expected.body(),
                closed_form_soul: expected.soul().to_terms(),
                defect: computed.distance(&expected),
            });
        }
    }
    Ok(rows)
}

/// `x₀ = -(1 - z)/(√2 (1 - |z|²))`
pub fn trajectory_x0(z: Complex64) -> Complex64 {
    -(re(1.0) - z) / (std::f64::consts::SQRT_2 * (1.0 - z.norm_sqr()))
}

/// `p₀ = -i(1 + z)/(2√2 (1 - |z|²))`
pub fn trajectory_p0(z: Complex64) -> Complex64 {
    -I * (re(1.0) + z) / (2.0 * std::f64::consts::SQRT_2 * (1.0 - z.norm_sqr()))
}

/// Expectation values along the free motion at one time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// Coefficient of `ᾱ_gen` in `S(pθ)`.
    #[serde(with = "crate::report::complex_obj")]
    pub p_theta: Complex64,
    /// Coefficient of `ᾱ_gen` in `S(xθ)`.
    #[serde(with = "crate::report::complex_obj")]
    pub x_theta: Complex64,
    /// Closed-form coefficients `p₀ ᾱ` and `(2p₀t + x₀) ᾱ` at the same point.
    #[serde(with = "crate::report::complex_obj")]
    pub p_theta_closed: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub x_theta_closed: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub x0: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub p0: Complex64,
    /// Largest of `|⟨ψ|x|ψ⟩|`, `|⟨φ|x|φ⟩|`.
    pub mean_x: f64,
    /// Largest of `|⟨ψ|p|ψ⟩|`, `|⟨φ|p|φ⟩|`.
    pub mean_p: f64,
    /// Body and other nilpotent content of the two symbols, which must vanish.
    pub spurious: f64,
}

fn alpha_bar_coefficient(s: &GrassmannElement, alg: &Arc<GeneratorSet>) -> (Complex64, f64) {
    let gen = crate::grassmann::Monomial::generator(crate::grassmann::ALPHA_BAR);
    let coeff = s.coeff(gen);
    let rest = s.sub(&GrassmannElement::word(alg, &[crate::grassmann::ALPHA_BAR], coeff))
        .map(|r| r.max_abs())
        .unwrap_or(f64::INFINITY);
    (coeff, rest)
}

pub fn trajectory(p: &CoherentParams, times: &[f64], cap: usize, nodes: usize) -> Result<Vec<TrajectoryPoint>> {
    let psi = coherent_series(p, cap)?;
    let alg = GeneratorSet::standard();
    let nmax = psi.nmax();
    let p_theta = berezin_symbol(&build_generator(GeneratorName::PTheta, nmax)?, &psi)?;
    let (pc, p_rest) = alpha_bar_coefficient(&p_theta, &alg);
    let x0 = trajectory_x0(p.z);
    let p0 = trajectory_p0(p.z);
    let a_bar = p.alpha.conj();
    let mut out = Vec::new();
    for &t in times {
        let x_theta = berezin_symbol(&build_generator_at(GeneratorName::XTheta, nmax, t)?, &psi)?;
        let (xc, x_rest) = alpha_bar_coefficient(&x_theta, &alg);
        let means = coherent_closed(p, t)?.position_momentum_means(nodes);
        out.push(TrajectoryPoint {
            t,
            p_theta: pc,
            x_theta: xc,
            p_theta_closed: p0 * a_bar,
            x_theta_closed: (2.0 * p0 * t + x0) * a_bar,
            x0,
            p0,
            mean_x: means[0].norm().max(means[1].norm()),
            mean_p: means[2].norm().max(means[3].norm()),
            spurious: p_rest.max(x_rest),
        });
    }
    Ok(out)
}

/// Least-squares line through complex samples `(t, y)`: `(intercept, slope,
/// largest residual)`.
pub fn affine_fit(points: &[(f64, Complex64)]) -> (Complex64, Complex64, f64) {
    let n = points.len() as f64;
    let mean_t = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<Complex64>() / n;
    let var: f64 = points.iter().map(|p| (p.0 - mean_t).powi(2)).sum();
    let slope = if var > 0.0 {
        points.iter().map(|p| (p.1 - mean_y) * (p.0 - mean_t)).sum::<Complex64>() / var
    } else {
        Complex64::default()
    };
    let intercept = mean_y - slope * mean_t;
    let residual = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).norm())
        .fold(0.0, f64::max);
    (intercept, slope, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::SERIES_CAP;

    #[test]
    fn vacuum_symbol_of_k0() {
        let p = CoherentParams::new(re(0.0), re(0.0)).unwrap();
        let s = generator_symbol(GeneratorName::K0, &p, 64).unwrap();
        assert!((s.body() - re(0.25)).norm() < 1e-15);
    }

    #[test]
    fn identity_symbol_is_one() {
        let p = CoherentParams::new(Complex64::new(0.3, 0.4), re(0.8)).unwrap();
        let psi = coherent_series(&p, SERIES_CAP).unwrap();
        let s = berezin_symbol(&SuperOperator::identity(psi.nmax()), &psi).unwrap();
        assert!(s.distance(&GrassmannElement::one(s.algebra())) < 1e-14);
        assert!(super_inner(&psi, &psi).unwrap().distance(&GrassmannElement::one(s.algebra())) < 1e-12);
    }

    #[test]
    fn calibration_selects_conjugate() {
        assert_eq!(convention_calibration(Complex64::new(0.3, 0.4), SERIES_CAP).unwrap(), Convention::Conjugate);
        assert!(matches!(convention_calibration(re(0.3), SERIES_CAP), Err(Error::Domain(_))));
    }

    #[test]
    fn all_symbols_match_under_calibrated_reading() {
        let samples: Vec<_> = [Complex64::new(0.5, 0.0), Complex64::new(-0.2, 0.6)]
            .iter()
            .flat_map(|&z| [re(0.0), re(1.0)].map(|a| CoherentParams::new(z, a).unwrap()))
            .collect();
        for row in symbol_table(&samples, Convention::Conjugate, SERIES_CAP).unwrap() {
            assert!(row.defect < 1e-8, "{row:?}");
        }
        let identity = symbol_table(&samples[3..], Convention::Identity, SERIES_CAP).unwrap();
        assert!(identity.iter().any(|r| r.defect > 1e-3));
    }

    #[test]
    fn k0_symbol_at_half() {
        let p = CoherentParams::new(re(0.5), re(1.0)).unwrap();
        let s = generator_symbol(GeneratorName::K0, &p, SERIES_CAP).unwrap();
        assert!((s.body() - re(0.25 * 1.25 / 0.75)).norm() < 1e-12);
    }

    #[test]
    fn trajectory_is_a_straight_line() {
        let p = CoherentParams::new(Complex64::new(0.2, -0.3), Complex64::new(0.6, 0.2)).unwrap();
        let pts = trajectory(&p, &[0.0, 1.0, 2.0, 3.0], SERIES_CAP, 200).unwrap();
        let (b, m, res) = affine_fit(&pts.iter().map(|q| (q.t, q.x_theta)).collect::<Vec<_>>());
        assert!(res < 1e-9);
        let a_bar = p.alpha.conj();
        assert!((b - pts[0].x0 * a_bar).norm() < 1e-9);
        assert!((m - 2.0 * pts[0].p0 * a_bar).norm() < 1e-9);
        for q in &pts {
            assert!((q.p_theta - q.p_theta_closed).norm() < 1e-10);
            assert!(q.mean_x < 1e-10 && q.mean_p < 1e-10 && q.spurious < 1e-12);
        }
    }

    #[test]
    fn trajectory_constants_at_origin() {
        let r2 = std::f64::consts::SQRT_2;
        assert!((trajectory_x0(re(0.0)) - re(-1.0 / r2)).norm() < 1e-15);
        assert!((trajectory_p0(re(0.0)) - Complex64::new(0.0, -1.0 / (2.0 * r2))).norm() < 1e-15);
    }
}
