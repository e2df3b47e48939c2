//! Verification suites. Each group function returns the checks for one
//! family of properties; suites bundle groups, and [`run_suite`] turns any
//! computation error into a failed check so a suite always yields a report.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::basis::{
    apply_k0_pointwise, apply_ladder, apply_ladder_pointwise, eval_chi, eval_chi_derivatives, schrodinger_residual,
    BasisMode, Ladder,
};
use crate::coherent::{
    coherent_closed, coherent_crosscheck, coherent_series, displacement_label, displacement_prime, CoherentParams,
};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::generators::{build_generator, GeneratorName};
use crate::grassmann::{GeneratorSet, GrassmannElement, Monomial, Parity, ALPHA, ALPHA_BAR, THETA, THETA_BAR, XI, XI_BAR};
use crate::quadrature::{quad_inner, QuadratureSpec};
use crate::report::{all_pass, Check};
use crate::structure;
use crate::superspace::{super_inner, super_inner_berezin, superadjoint_defect, SuperVector};
use crate::symbols::{self, affine_fit, Convention, SymbolRecord};

/// Truncation at which the displacement operator is tested.
pub const ISOMETRY_NMAX: usize = 64;
/// Vectors fed to the displacement operator live on modes `n ≤ ISOMETRY_SUPPORT`.
pub const ISOMETRY_SUPPORT: usize = 8;
/// Randomized cases for the Grassmann axioms.
pub const GRASSMANN_CASES: usize = 1000;
/// Random vector pairs for the Berezin-integral oracle.
pub const ORACLE_PAIRS: usize = 100;
pub const JACOBI_TRIPLES: usize = 20;
/// Highest basis mode in orthonormality, residual and ladder checks.
pub const BASIS_MAX_MODE: usize = 20;
/// Highest mode in the pointwise Hamiltonian check.
pub const HAMILTONIAN_MAX_MODE: usize = 6;

const BASIS_TIMES: [f64; 3] = [0.0, 0.5, 2.0];
const SOUL_GENERATORS: [usize; 4] = [ALPHA, ALPHA_BAR, XI, XI_BAR];
const ALL_GENERATORS: [usize; 6] = [THETA, THETA_BAR, ALPHA, ALPHA_BAR, XI, XI_BAR];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Grassmann,
    Basis,
    Superspace,
    Algebra,
    Coherent,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Grassmann, Suite::Basis, Suite::Superspace, Suite::Algebra, Suite::Coherent];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Grassmann => "grassmann",
            Suite::Basis => "basis",
            Suite::Superspace => "superspace",
            Suite::Algebra => "algebra",
            Suite::Coherent => "coherent",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_coeff(rng: &mut impl Rng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Sparse random element over `gens`; `parity` forces every monomial to that
/// parity.
pub fn random_element(
    alg: &std::sync::Arc<GeneratorSet>,
    rng: &mut impl Rng,
    gens: &[usize],
    parity: Option<Parity>,
    max_terms: usize,
) -> GrassmannElement {
    let count = rng.random_range(1..=max_terms);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let mut bits = 0u32;
        for &g in gens {
            if rng.random_bool(0.5) {
                bits |= 1 << g;
            }
        }
        if let Some(p) = parity {
            if Parity::from_degree(bits.count_ones()) != p {
                bits ^= 1 << gens[rng.random_range(0..gens.len())];
            }
        }
        terms.push((Monomial::from_bits(bits), random_coeff(rng)));
    }
    GrassmannElement::from_terms(alg, terms)
}

/// Random vector on modes `n < support` with coefficients over α, ᾱ, ξ, ξ̄.
/// With `parity` set the vector is homogeneous of that parity.
pub fn random_vector(nmax: usize, support: usize, parity: Option<Parity>, rng: &mut impl Rng) -> Result<SuperVector> {
    let alg = GeneratorSet::standard();
    let mut v = SuperVector::zeros_in(&alg, nmax);
    for n in 0..support.min(nmax) {
        for sector in [Parity::Even, Parity::Odd] {
            let coeff_parity = parity.map(|p| p.add(sector));
            v.set_coeff(sector, n, &random_element(&alg, rng, &SOUL_GENERATORS, coeff_parity, 3))?;
        }
    }
    Ok(v)
}

fn random_parity(rng: &mut impl Rng) -> Parity {
    if rng.random_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn relative(d: f64, scale: f64) -> f64 {
    d / scale.max(1.0)
}

fn quadrature(cfg: &RunConfig) -> QuadratureSpec {
    QuadratureSpec::default().with_nodes(cfg.nodes)
}

fn alpha_choices(cfg: &RunConfig) -> [Complex64; 2] {
    [Complex64::default(), cfg.alpha]
}

/// Associativity, supercommutativity, conjugation and Berezin integration
/// on randomized elements.
pub fn grassmann_axioms(cfg: &RunConfig, cases: usize) -> Result<Vec<Check>> {
    let alg = GeneratorSet::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let anchor = "Grassmann axioms";
    let mut worst = [0.0f64; 5];
    let theta_bar_theta = GrassmannElement::word(&alg, &[THETA_BAR, THETA], c(1.0, 0.0));
    let normalization = theta_bar_theta.berezin(&[THETA, THETA_BAR])?.distance(&GrassmannElement::one(&alg));
    for _ in 0..cases {
        let a = random_element(&alg, &mut rng, &ALL_GENERATORS, None, 6);
        let b = random_element(&alg, &mut rng, &ALL_GENERATORS, None, 6);
        let d = random_element(&alg, &mut rng, &ALL_GENERATORS, None, 6);
        let lhs = a.mul(&b)?.mul(&d)?;
        worst[0] = worst[0].max(relative(lhs.distance(&a.mul(&b.mul(&d)?)?), lhs.max_abs()));

        let (pa, pb) = (random_parity(&mut rng), random_parity(&mut rng));
        let ha = random_element(&alg, &mut rng, &ALL_GENERATORS, Some(pa), 6);
        let hb = random_element(&alg, &mut rng, &ALL_GENERATORS, Some(pb), 6);
        let ab = ha.mul(&hb)?;
        let ba = hb.mul(&ha)?.scale(c(pa.sign_with(pb), 0.0));
        worst[1] = worst[1].max(relative(ab.distance(&ba), ab.max_abs()));

        let conj_ab = a.mul(&b)?.conj();
        worst[2] = worst[2].max(relative(conj_ab.distance(&a.conj().mul(&b.conj())?), conj_ab.max_abs()));
        worst[3] = worst[3].max(a.conj().conj().distance(&a));

        // ∫ (f θ̄θ + g) dθ dθ̄ = f when f is free of θ, θ̄ and g lacks θ̄.
        let f = random_element(&alg, &mut rng, &SOUL_GENERATORS, None, 6);
        let g = random_element(&alg, &mut rng, &[THETA, ALPHA, ALPHA_BAR, XI, XI_BAR], None, 6);
        let integrand = f.mul(&theta_bar_theta)?.add(&g)?;
        let integral = integrand.berezin(&[THETA, THETA_BAR])?;
        worst[4] = worst[4].max(relative(integral.distance(&f), f.max_abs()));
    }
    let tol = 1e-14;
    Ok(vec![
        Check::new(format!("associativity, {cases} cases"), anchor, worst[0], tol),
        Check::new(format!("supercommutativity, {cases} cases"), anchor, worst[1], tol),
        Check::new(format!("conj(ab) = conj(a) conj(b), {cases} cases"), anchor, worst[2], tol),
        Check::new(format!("conj is an involution, {cases} cases"), anchor, worst[3], tol),
        Check::new("∫ θ̄θ dθ dθ̄ = 1", anchor, normalization, tol),
        Check::new(format!("Berezin linearity and annihilation, {cases} cases"), anchor, worst[4], tol),
    ])
}

/// Orthonormality of χ_m at several times and the Schrödinger residual.
pub fn basis_integrity(cfg: &RunConfig) -> Result<Vec<Check>> {
    let q = quadrature(cfg);
    let anchor = "basis functions";
    let mut checks = Vec::new();
    for t in BASIS_TIMES {
        let mut worst: f64 = 0.0;
        for m in 0..=BASIS_MAX_MODE {
            for n in m..=BASIS_MAX_MODE {
                let g = quad_inner(|x| eval_chi(BasisMode::new(m), x, t), |x| eval_chi(BasisMode::new(n), x, t), t, &q)?;
                let expected = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((g - expected).norm());
            }
        }
        checks.push(
            Check::new(format!("⟨χ_m|χ_n⟩ = δ_mn at t = {t}"), anchor, worst, cfg.tolerances.quadrature)
                .with_modes(BASIS_MAX_MODE + 1),
        );
    }
    let mut residual: f64 = 0.0;
    for m in 0..=BASIS_MAX_MODE {
        for x in [-3.0, -1.5, 0.0, 1.5, 3.0] {
            for t in [0.0, 0.5, 1.0, 1.5, 2.0] {
                residual = residual.max(schrodinger_residual(|x, t| eval_chi(BasisMode::new(m), x, t), x, t)?);
            }
        }
    }
    checks.push(
        Check::new("Schrödinger residual on a 5×5 (x, t) grid", anchor, residual, cfg.tolerances.residual)
            .with_modes(BASIS_MAX_MODE + 1),
    );
    Ok(checks)
}

/// Quadrature matrix elements of a± and k₀ against the frozen ladder table.
pub fn ladder_derivation(cfg: &RunConfig) -> Result<Vec<Check>> {
    let q = quadrature(cfg);
    let anchor = "ladder operators";
    let mut raise: f64 = 0.0;
    let mut lower: f64 = 0.0;
    let mut k0: f64 = 0.0;
    let mut lowest = [f64::NAN; 2];
    for t in BASIS_TIMES {
        for m in 0..=BASIS_MAX_MODE {
            let jet = move |x: f64| eval_chi_derivatives(BasisMode::new(m), x, t);
            for k in 0..=BASIS_MAX_MODE + 1 {
                let bra = |x: f64| eval_chi(BasisMode::new(k), x, t);
                for (sign, worst) in [(Ladder::Raise, &mut raise), (Ladder::Lower, &mut lower)] {
                    let numeric = quad_inner(bra, |x| apply_ladder_pointwise(sign, &jet(x), x, t), t, &q)?;
                    let (coef, target) = apply_ladder(sign, BasisMode::new(m));
                    let expected = if target.m() == k { coef } else { 0.0 };
                    *worst = worst.max((numeric - expected).norm());
                }
                let numeric = quad_inner(bra, |x| apply_k0_pointwise(&jet(x), x, t), t, &q)?;
                let expected = if k == m { m as f64 / 2.0 + 0.25 } else { 0.0 };
                k0 = k0.max((numeric - expected).norm());
                if t == 0.0 && k == m && m < 2 {
                    lowest[m] = numeric.re;
                }
            }
        }
    }
    let tol = cfg.tolerances.quadrature;
    let weights = (lowest[0] - 0.25).abs().max((lowest[1] - 0.75).abs());
    Ok(vec![
        Check::new("⟨χ_k|a⁺χ_m⟩ = ½√(m+1) δ_{k,m+1}", anchor, raise, tol).with_modes(BASIS_MAX_MODE + 1),
        Check::new("⟨χ_k|a⁻χ_m⟩ = ½√m δ_{k,m-1}", anchor, lower, tol).with_modes(BASIS_MAX_MODE + 1),
        Check::new("⟨χ_k|k₀χ_m⟩ = (m/2 + ¼) δ_km", anchor, k0, tol).with_modes(BASIS_MAX_MODE + 1),
        Check::new("lowest k₀ weights ¼ (even) and ¾ (odd)", anchor, weights, tol),
    ])
}

/// Berezin-integral oracle against the fast form, plus the algebraic
/// properties of the super-Hermitian form and the superadjoint test.
pub fn superspace_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let anchor = "super-Hermitian form";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let q = quadrature(cfg);
    let small = 6;
    let mut oracle: f64 = 0.0;
    for _ in 0..ORACLE_PAIRS {
        let a = random_vector(small, small, None, &mut rng)?;
        let b = random_vector(small, small, None, &mut rng)?;
        let t = cfg.t_samples[rng.random_range(0..cfg.t_samples.len())];
        oracle = oracle.max(super_inner(&a, &b)?.distance(&super_inner_berezin(&a, &b, t, &q)?));
    }

    let mut symmetry: f64 = 0.0;
    let mut scalar_rule: f64 = 0.0;
    let mut orthogonal = true;
    let alg = GeneratorSet::standard();
    for _ in 0..ORACLE_PAIRS {
        let (p1, p2) = (random_parity(&mut rng), random_parity(&mut rng));
        let a = random_vector(small, small, Some(p1), &mut rng)?;
        let b = random_vector(small, small, Some(p2), &mut rng)?;
        let lhs = super_inner(&a, &b)?.conj();
        let rhs = super_inner(&b, &a)?.scale(c(p1.sign_with(p2), 0.0));
        symmetry = symmetry.max(lhs.distance(&rhs));

        let (q1, q2) = (random_parity(&mut rng), random_parity(&mut rng));
        let beta1 = random_element(&alg, &mut rng, &[XI, XI_BAR], Some(q1), 2);
        let beta2 = random_element(&alg, &mut rng, &[XI, XI_BAR], Some(q2), 2);
        let pure1 = random_vector(small, small, Some(p1), &mut rng)?;
        let pure2 = random_vector(small, small, Some(p2), &mut rng)?;
        let lhs = super_inner(&pure1.scale_left(&beta1)?, &pure2.scale_left(&beta2)?)?;
        let rhs = beta1
            .conj()
            .mul(&beta2)?
            .mul(&super_inner(&pure1, &pure2)?)?
            .scale(c(p1.sign_with(q2), 0.0));
        scalar_rule = scalar_rule.max(lhs.distance(&rhs));

        let mut even_only = SuperVector::zeros(small);
        let mut odd_only = SuperVector::zeros(small);
        for n in 0..small {
            even_only.set_coeff(Parity::Even, n, &a.coeff(Parity::Even, n))?;
            odd_only.set_coeff(Parity::Odd, n, &b.coeff(Parity::Odd, n))?;
        }
        orthogonal &= super_inner(&even_only, &odd_only)?.is_zero();
    }

    let nmax = cfg.nmax;
    let support = nmax - 2;
    let mut adjoint: f64 = 0.0;
    let mut control: f64 = 0.0;
    let k0 = build_generator(GeneratorName::K0, nmax)?;
    let vp = build_generator(GeneratorName::VPlus, nmax)?;
    let wm_i = build_generator(GeneratorName::WMinus, nmax)?.scale(c(0.0, 1.0));
    let kp = build_generator(GeneratorName::KPlus, nmax)?;
    for _ in 0..20 {
        let phi1 = random_vector(nmax, support, Some(random_parity(&mut rng)), &mut rng)?;
        let phi2 = random_vector(nmax, support, None, &mut rng)?;
        adjoint = adjoint.max(superadjoint_defect(&k0, &phi1, &phi2, &k0)?.max_abs());
        adjoint = adjoint.max(superadjoint_defect(&vp, &phi1, &phi2, &wm_i)?.max_abs());
        control = control.max(superadjoint_defect(&kp, &phi1, &phi2, &kp)?.max_abs());
    }

    let tol = cfg.tolerances.algebra;
    Ok(vec![
        Check::new(format!("Berezin-integral oracle = fast form, {ORACLE_PAIRS} pairs"), anchor, oracle, cfg.tolerances.quadrature)
            .with_modes(small),
        Check::new("conj((Φ₁|Φ₂)) = (-1)^{p₁p₂} (Φ₂|Φ₁)", anchor, symmetry, tol),
        Check::new("(β₁Φ₁|β₂Φ₂) = (-1)^{p(Φ₁)p(β₂)} conj(β₁)β₂ (Φ₁|Φ₂)", anchor, scalar_rule, tol),
        Check::predicate("even and odd slots are orthogonal", anchor, orthogonal),
        Check::new("superadjoint test certifies K₀⁺ = K₀ and V₊⁺ = iW₋", anchor, adjoint, tol).with_modes(support),
        Check::predicate("superadjoint test rejects K₊⁺ = K₊", anchor, control > 1e-6),
    ])
}

/// Supercommutator table and super-Jacobi identity.
pub fn structure_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    structure::verify_structure(cfg.nmax, cfg.tolerances.algebra, JACOBI_TRIPLES, cfg.seed)
}

pub fn vacuum_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = structure::vacuum_checks(cfg.nmax)?;
    checks.push(structure::atypicality_check(cfg.nmax)?);
    Ok(checks)
}

/// Superadjoint table, product and commutator rules, and the
/// super-Hermitian base.
pub fn adjoint_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = cfg.tolerances.algebra;
    let mut checks = structure::superadjoint_table(cfg.nmax, tol)?;
    checks.extend(structure::superadjoint_relations(cfg.nmax, 20, cfg.seed, tol)?);
    checks.push(structure::hermitian_base_check(cfg.nmax, tol)?);
    Ok(checks)
}

pub fn hamiltonian_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    structure::hamiltonian_check(
        cfg.nmax,
        HAMILTONIAN_MAX_MODE,
        &quadrature(cfg),
        cfg.tolerances.algebra,
        cfg.tolerances.quadrature,
    )
}

fn z_label(z: Complex64) -> String {
    format!("{:.4}{:+.4}i", z.re, z.im)
}

/// Closed form, exponential series and Γ expansion agree; the closed form
/// solves the Schrödinger equation; the super-norm is exactly one.
pub fn coherent_route_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let anchor = "supercoherent state";
    let tol = cfg.tolerances;
    let mut checks = Vec::new();
    for &z in &cfg.z_samples {
        let mut routes: f64 = 0.0;
        let mut residual: f64 = 0.0;
        let mut closed_norm: f64 = 0.0;
        let mut series_norm: f64 = 0.0;
        let mut modes = 0;
        for alpha in alpha_choices(cfg) {
            let p = CoherentParams::new(z, alpha)?;
            let series = coherent_series(&p, cfg.series_cap)?;
            let one = GrassmannElement::one(series.algebra());
            series_norm = series_norm.max(super_inner(&series, &series)?.distance(&one));
            for &t in &cfg.t_samples {
                let report = coherent_crosscheck(&p, t, cfg.series_cap)?;
                routes = routes.max(report.max_route_defect());
                residual = residual.max(report.residual);
                modes = report.modes;
                closed_norm = closed_norm.max(coherent_closed(&p, t)?.super_norm(cfg.nodes)?.distance(&one));
            }
        }
        let label = z_label(z);
        checks.push(Check::new(format!("three routes agree at z = {label}"), anchor, routes, tol.coherent).with_modes(modes));
        checks.push(Check::new(format!("closed form solves i∂ₜ = -∂ₓ² at z = {label}"), anchor, residual, tol.residual));
        checks.push(Check::new(format!("(Ψ|Ψ) = 1 by Berezin quadrature at z = {label}"), anchor, closed_norm, tol.algebra));
        checks.push(Check::new(format!("(Ψ|Ψ) = 1 for the series at z = {label}"), anchor, series_norm, tol.algebra).with_modes(modes));
    }
    Ok(checks)
}

/// Symbols of the eight generators with the calibrated convention.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolReport {
    pub convention: Convention,
    #[serde(with = "crate::report::complex_obj")]
    pub calibration_z: Complex64,
    pub records: Vec<SymbolRecord>,
}

pub fn symbol_report(cfg: &RunConfig) -> Result<SymbolReport> {
    let calibration_z = cfg
        .z_samples
        .iter()
        .copied()
        .find(|z| z.im.abs() >= 1e-6 && z.norm() > 0.0 && z.norm() < 0.9)
        .unwrap_or(c(0.0, 0.5));
    let convention = symbols::convention_calibration(calibration_z, cfg.series_cap)?;
    let mut samples = Vec::new();
    for &z in &cfg.z_samples {
        for alpha in alpha_choices(cfg) {
            samples.push(CoherentParams::new(z, alpha)?);
        }
    }
    let records = symbols::symbol_table(&samples, convention, cfg.series_cap)?;
    Ok(SymbolReport {
        convention,
        calibration_z,
        records,
    })
}

pub fn symbol_checks_from(report: &SymbolReport, tol: f64) -> Vec<Check> {
    let anchor = "Berezin symbols";
    let mut checks = vec![Check::predicate(
        format!("one reading of the closed forms fits ({:?})", report.convention).to_lowercase(),
        anchor,
        true,
    )];
    for name in GeneratorName::BASIC {
        let worst = report
            .records
            .iter()
            .filter(|r| r.generator == name.label())
            .map(|r| r.defect)
            .fold(0.0, f64::max);
        checks.push(Check::new(format!("S({name}) matches its closed form"), anchor, worst, tol));
    }
    checks
}

pub fn symbol_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(symbol_checks_from(&symbol_report(cfg)?, cfg.tolerances.coherent))
}

/// Odd-sector trajectory along the free motion, with its affine fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryReport {
    pub params: CoherentParams,
    pub points: Vec<symbols::TrajectoryPoint>,
    #[serde(with = "crate::report::complex_obj")]
    pub intercept: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub slope: Complex64,
    pub fit_residual: f64,
}

pub fn trajectory_report(p: &CoherentParams, times: &[f64], cfg: &RunConfig) -> Result<TrajectoryReport> {
    let points = symbols::trajectory(p, times, cfg.series_cap, cfg.nodes)?;
    let samples: Vec<_> = points.iter().map(|pt| (pt.t, pt.x_theta)).collect();
    let (intercept, slope, fit_residual) = affine_fit(&samples);
    Ok(TrajectoryReport {
        params: *p,
        points,
        intercept,
        slope,
        fit_residual,
    })
}

pub fn trajectory_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let anchor = "odd-sector trajectory";
    let tol = cfg.tolerances;
    let mut spread: f64 = 0.0;
    let mut p_closed: f64 = 0.0;
    let mut fit: f64 = 0.0;
    let mut line: f64 = 0.0;
    let mut means: f64 = 0.0;
    let mut spurious: f64 = 0.0;
    for &z in &cfg.z_samples {
        let p = CoherentParams::new(z, cfg.alpha)?;
        let report = trajectory_report(&p, &cfg.times, cfg)?;
        let first = report.points[0].p_theta;
        let a_bar = cfg.alpha.conj();
        let (x0, p0) = (report.points[0].x0, report.points[0].p0);
        for pt in &report.points {
            spread = spread.max((pt.p_theta - first).norm());
            p_closed = p_closed.max((pt.p_theta - pt.p_theta_closed).norm());
            means = means.max(pt.mean_x).max(pt.mean_p);
            spurious = spurious.max(pt.spurious);
        }
        fit = fit.max(report.fit_residual);
        line = line
            .max((report.intercept - x0 * a_bar).norm())
            .max((report.slope - 2.0 * p0 * a_bar).norm());
    }
    Ok(vec![
        Check::new("S(pθ) is constant in t", anchor, spread, tol.quadrature),
        Check::new("S(pθ) = p₀ᾱ", anchor, p_closed, tol.coherent),
        Check::new("S(xθ) is affine in t", anchor, fit, tol.quadrature),
        Check::new("S(xθ) intercept x₀ᾱ and slope 2p₀ᾱ", anchor, line, tol.coherent),
        Check::new("⟨x⟩ = ⟨p⟩ = 0 in both components", anchor, means, tol.quadrature),
        Check::new("symbols of pθ, xθ carry only ᾱ", anchor, spurious, tol.algebra),
    ])
}

/// `D′(z, α)` preserves the super-Hermitian form and maps the vacuum onto
/// the series coherent state at the label `e^{i arg z} tanh|z|`.
pub fn isometry_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let anchor = "displacement operator";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd15c);
    let mut points: Vec<Complex64> = vec![c(0.3, 0.0), c(0.0, 0.25), c(-0.2, 0.15)];
    points.extend(cfg.z_samples.iter().filter(|z| z.norm() <= 0.3));
    let mut isometry: f64 = 0.0;
    let mut overlap: f64 = 0.0;
    let vacuum = SuperVector::basis(ISOMETRY_NMAX, Parity::Even, 0);
    for &z in &points {
        for alpha in [cfg.alpha, random_coeff(&mut rng)] {
            let d = displacement_prime(&CoherentParams::new(z, alpha)?, ISOMETRY_NMAX)?;
            for _ in 0..5 {
                let a = random_vector(ISOMETRY_NMAX, ISOMETRY_SUPPORT + 1, Some(random_parity(&mut rng)), &mut rng)?;
                let b = random_vector(ISOMETRY_NMAX, ISOMETRY_SUPPORT + 1, Some(random_parity(&mut rng)), &mut rng)?;
                let before = super_inner(&a, &b)?;
                let after = super_inner(&d.apply(&a)?, &d.apply(&b)?)?;
                isometry = isometry.max(after.distance(&before));
            }
        }
        let d = displacement_prime(&CoherentParams::new(z, Complex64::default())?, ISOMETRY_NMAX)?;
        let image = d.apply(&vacuum)?;
        let target = coherent_series(&CoherentParams::new(displacement_label(z), Complex64::default())?, cfg.series_cap)?
            .resized(ISOMETRY_NMAX);
        overlap = overlap.max((super_inner(&target, &image)?.body().norm() - 1.0).abs());
    }
    let tol = cfg.tolerances.isometry;
    Ok(vec![
        Check::new("(D′Φ₁|D′Φ₂) = (Φ₁|Φ₂), |z| ≤ 0.3", anchor, isometry, tol).with_modes(ISOMETRY_NMAX),
        Check::new("|(Ψ_w|D′(z,0)Ψ₀⁰)| = 1 at w = e^{i arg z} tanh|z|", anchor, overlap, tol).with_modes(ISOMETRY_NMAX),
    ])
}

type Group = fn(&RunConfig) -> Result<Vec<Check>>;

fn groups(suite: Suite) -> Vec<(&'static str, Group)> {
    match suite {
        Suite::Grassmann => vec![("Grassmann axioms", |cfg| grassmann_axioms(cfg, GRASSMANN_CASES))],
        Suite::Basis => vec![("basis functions", basis_integrity), ("ladder operators", ladder_derivation)],
        Suite::Superspace => vec![("super-Hermitian form", superspace_checks)],
        Suite::Algebra => vec![
            ("supercommutator table", structure_checks),
            ("vacuum", vacuum_checks),
            ("superadjoint", adjoint_checks),
            ("Hamiltonian element", hamiltonian_checks),
        ],
        Suite::Coherent => vec![
            ("supercoherent state", coherent_route_checks),
            ("Berezin symbols", symbol_checks),
            ("odd-sector trajectory", trajectory_checks),
            ("displacement operator", isometry_checks),
        ],
        Suite::All => Suite::PARTS.into_iter().flat_map(groups).collect(),
    }
}

/// Runs one group; a computation error becomes a single failed check.
pub fn run_group(anchor: &str, group: Group, cfg: &RunConfig) -> Vec<Check> {
    match group(cfg) {
        Ok(checks) => checks,
        Err(e) => vec![Check::failed(format!("{anchor}: {e}"), anchor, 0.0)],
    }
}

/// Validates the configuration, then runs every group of the suite on its
/// own thread. Check order is deterministic.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    let groups = groups(suite);
    let results: Vec<Vec<Check>> = std::thread::scope(|scope| {
        let handles: Vec<_> = groups
            .iter()
            .map(|&(anchor, group)| scope.spawn(move || run_group(anchor, group, cfg)))
            .collect();
        handles
            .into_iter()
            .zip(&groups)
            .map(|(h, &(anchor, _))| {
                h.join()
                    .unwrap_or_else(|_| vec![Check::failed(format!("{anchor}: panicked"), anchor, 0.0)])
            })
            .collect()
    });
    Ok(results.into_iter().flatten().collect())
}

/// The checksummed part of a report: everything except timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPayload {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub payload: ReportPayload,
    /// Hex SHA-256 of the compact JSON encoding of `payload`.
    pub checksum: String,
    /// Kept out of the written file so repeated runs are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

pub fn payload_checksum(payload: &ReportPayload) -> Result<String> {
    let bytes = serde_json::to_vec(payload).map_err(|e| Error::Io(e.to_string()))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

impl VerificationReport {
    pub fn new(suite: Suite, checks: Vec<Check>, cfg: &RunConfig, wall_time: Duration) -> Result<Self> {
        let payload = ReportPayload {
            suite,
            pass: all_pass(&checks),
            checks,
            config: cfg.clone(),
        };
        let checksum = payload_checksum(&payload)?;
        Ok(Self {
            payload,
            checksum,
            wall_time,
        })
    }

    /// Runs the suite and assembles the report.
    pub fn run(suite: Suite, cfg: &RunConfig) -> Result<Self> {
        let start = Instant::now();
        let checks = run_suite(suite, cfg)?;
        Self::new(suite, checks, cfg, start.elapsed())
    }

    pub fn pass(&self) -> bool {
        self.payload.pass
    }

    pub fn checksum_valid(&self) -> bool {
        payload_checksum(&self.payload).is_ok_and(|c| c == self.checksum)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// Writes `verify-<suite>.json` or `.csv` into `dir`.
    pub fn write(&self, dir: &Path, format: OutputFormat) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("verify-{}.{format}", self.payload.suite));
        match format {
            OutputFormat::Json => std::fs::write(&path, self.to_json()? + "\n")?,
            OutputFormat::Csv => {
                let mut out = format!(
                    "# suite = {}\n# pass = {}\n# checksum = {}\n",
                    self.payload.suite, self.payload.pass, self.checksum
                )
                .into_bytes();
                {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["id", "anchor", "defect", "tolerance", "pass", "modes_checked"])
                        .map_err(csv_error)?;
                    for ch in &self.payload.checks {
                        w.write_record([
                            ch.id.clone(),
                            ch.anchor.clone(),
                            format!("{:e}", ch.defect),
                            format!("{:e}", ch.tolerance),
                            ch.pass.to_string(),
                            ch.modes_checked.map(|m| m.to_string()).unwrap_or_default(),
                        ])
                        .map_err(csv_error)?;
                    }
                    w.flush()?;
                }
                std::fs::write(&path, out)?;
            }
        }
        Ok(path)
    }
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::PARTS.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Config(_))));
    }

    #[test]
    fn random_elements_respect_parity() {
        let alg = GeneratorSet::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = random_parity(&mut rng);
            let e = random_element(&alg, &mut rng, &ALL_GENERATORS, Some(p), 5);
            assert_eq!(e.grade().homogeneous(), Some(p));
        }
    }

    #[test]
    fn grassmann_group_passes() {
        for ch in grassmann_axioms(&RunConfig::default(), 100).unwrap() {
            assert!(ch.pass, "{ch:?}");
        }
    }

    #[test]
    fn report_checksum_detects_edits() {
        let cfg = RunConfig::default();
        let checks = vec![Check::new("a", "b", 0.0, 1.0)];
        let mut report = VerificationReport::new(Suite::Basis, checks, &cfg, Duration::ZERO).unwrap();
        assert!(report.checksum_valid());
        report.payload.checks[0].defect = 0.5;
        assert!(!report.checksum_valid());
    }

    #[test]
    fn failing_group_becomes_failed_check() {
        let checks = run_group("x", |_| Err(Error::Domain("boom".into())), &RunConfig::default());
        assert_eq!(checks.len(), 1);
        assert!(!checks[0].pass);
    }
}
