//! Supercoherent states of the free particle: closed-form evaluators, the
//! exponential series in the superspace basis, the Γ-coefficient expansion
//! and the displacement operator.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::schrodinger_residual;
use crate::error::{Error, Result};
use crate::generators::{build_generator, GeneratorName};
use crate::grassmann::{GeneratorSet, GrassmannElement, Monomial, Parity, ALPHA, ALPHA_BAR, THETA, THETA_BAR};
use crate::operator::SuperOperator;
use crate::quadrature::gauss_hermite;
use crate::superspace::{super_inner, SuperVector};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default ceiling on the number of modes per sector of the series state.
pub const SERIES_CAP: usize = 512;
/// Target for the certified tail of the exponential series.
pub const SERIES_TOL: f64 = 1e-16;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Point `(z, α)` of the superunit disk; `α = alpha · α_gen`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    #[serde(with = "crate::report::complex_obj")]
    pub z: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub alpha: Complex64,
}

impl CoherentParams {
    pub fn new(z: Complex64, alpha: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("|z| = {} is not inside the unit disk", z.norm())));
        }
        Ok(Self { z, alpha })
    }

    /// Accepts a Grassmann parameter, which must be a multiple of α.
    pub fn from_grassmann(z: Complex64, alpha: &GrassmannElement) -> Result<Self> {
        let alpha_gen = Monomial::generator(ALPHA);
        if alpha.terms().any(|(m, _)| m != alpha_gen) {
            return Err(Error::Contract(format!(
                "Grassmann parameter {alpha} must be supported on the single generator α"
            )));
        }
        Self::new(z, alpha.coeff(alpha_gen))
    }

    /// `1 - |z|²`
    pub fn gap(&self) -> f64 {
        1.0 - self.z.norm_sqr()
    }

    pub fn alpha_element(&self, alg: &std::sync::Arc<GeneratorSet>) -> GrassmannElement {
        GrassmannElement::generator(alg, ALPHA).scale(self.alpha)
    }

    /// Complex conjugate `ᾱ` of the Grassmann parameter.
    pub fn alpha_bar_element(&self, alg: &std::sync::Arc<GeneratorSet>) -> GrassmannElement {
        GrassmannElement::generator(alg, ALPHA_BAR).scale(self.alpha.conj())
    }

    /// Cayley image `σ = (1 - z)/(1 + z)`, with `Re σ > 0` on the disk.
    pub fn sigma(&self) -> Complex64 {
        (re(1.0) - self.z) / (re(1.0) + self.z)
    }
}

/// Closed-form coherent state at a fixed time.
#[derive(Debug, Clone)]
pub struct CoherentClosedForm {
    pub params: CoherentParams,
    pub t: f64,
    pub sigma: Complex64,
    /// `N = 1 + i ᾱα / (4(1 - |z|²))`
    pub normalizer: GrassmannElement,
}

pub fn coherent_closed(p: &CoherentParams, t: f64) -> Result<CoherentClosedForm> {
    let p = CoherentParams::new(p.z, p.alpha)?;
    let alg = GeneratorSet::standard();
    let bar_alpha_alpha = p.alpha_bar_element(&alg).mul(&p.alpha_element(&alg))?;
    let normalizer = GrassmannElement::one(&alg).add(&bar_alpha_alpha.scale(I / (4.0 * p.gap())))?;
    Ok(CoherentClosedForm {
        params: p,
        t,
        sigma: p.sigma(),
        normalizer,
    })
}

/// `ψ_z(x, t) = ((σ+σ̄)/4π)^{1/4} (σ+it)^{-1/2} exp[-x²/(4(σ+it))]`
pub fn closed_psi(sigma: Complex64, x: f64, t: f64) -> Complex64 {
    let s = sigma + I * t;
    let amplitude = (2.0 * sigma.re / (4.0 * PI)).powf(0.25);
    s.powf(-0.5) * amplitude * (-(x * x) / (4.0 * s)).exp()
}

/// `φ_z = a⁺ψ_z = -(ix/4) (1+σ)/(σ+it) ψ_z`
pub fn closed_phi(sigma: Complex64, x: f64, t: f64) -> Complex64 {
    let s = sigma + I * t;
    -(I * x / 4.0) * (1.0 + sigma) / s * closed_psi(sigma, x, t)
}

fn closed_psi_dx(sigma: Complex64, x: f64, t: f64) -> Complex64 {
    -x / (2.0 * (sigma + I * t)) * closed_psi(sigma, x, t)
}

fn closed_phi_dx(sigma: Complex64, x: f64, t: f64) -> Complex64 {
    let s = sigma + I * t;
    let c = -(I / 4.0) * (1.0 + sigma) / s;
    c * (closed_psi(sigma, x, t) + x * closed_psi_dx(sigma, x, t))
}

impl CoherentClosedForm {
    pub fn psi(&self, x: f64) -> Complex64 {
        closed_psi(self.sigma, x, self.t)
    }

    pub fn phi(&self, x: f64) -> Complex64 {
        closed_phi(self.sigma, x, self.t)
    }

    /// Gauss–Hermite length scale matched to `|ψ_z|²`.
    pub fn envelope_scale(&self) -> f64 {
        let s = self.sigma + I * self.t;
        (2.0 * s.norm_sqr() / self.sigma.re).sqrt()
    }

    /// `N (ψ_z + √2 α θ φ_z)` at `x` as a Grassmann element.
    pub fn evaluate(&self, x: f64) -> Result<GrassmannElement> {
        let alg = self.normalizer.algebra().clone();
        let alpha_theta = GrassmannElement::word(&alg, &[ALPHA, THETA], self.params.alpha);
        let inner = GrassmannElement::scalar(&alg, self.psi(x))
            .add(&alpha_theta.scale(SQRT_2 * self.phi(x)))?;
        self.normalizer.mul(&inner)
    }

    /// `(Ψ|Ψ)` by Berezin integration of the closed form and Gauss–Hermite
    /// quadrature in x; equals one through the nilpotent cancellation.
    pub fn super_norm(&self, nodes: usize) -> Result<GrassmannElement> {
        let alg = self.normalizer.algebra().clone();
        let tb_t = GrassmannElement::word(&alg, &[THETA_BAR, THETA], re(1.0));
        let weight = GrassmannElement::one(&alg).sub(&tb_t.scale(I))?.scale(I);
        let rule = gauss_hermite(nodes);
        let scale = self.envelope_scale();
        let mut acc = GrassmannElement::zero(&alg);
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let f = self.evaluate(scale * s)?;
            let integrand = f.conj().mul(&f)?.mul(&weight)?.berezin(&[THETA, THETA_BAR])?;
            acc = acc.add(&integrand.scale(re(w * scale)))?;
        }
        Ok(acc)
    }

    /// `⟨ψ_z|ψ_z⟩` and `⟨φ_z|φ_z⟩` by quadrature.
    pub fn component_norms(&self, nodes: usize) -> (f64, f64) {
        let rule = gauss_hermite(nodes);
        let scale = self.envelope_scale();
        let (mut a, mut b) = (0.0, 0.0);
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let x = scale * s;
            a += w * scale * self.psi(x).norm_sqr();
            b += w * scale * self.phi(x).norm_sqr();
        }
        (a, b)
    }

    /// `(⟨ψ|x|ψ⟩, ⟨φ|x|φ⟩, ⟨ψ|p|ψ⟩, ⟨φ|p|φ⟩)` with `p = -i∂ₓ`.
    pub fn position_momentum_means(&self, nodes: usize) -> [Complex64; 4] {
        let rule = gauss_hermite(nodes);
        let scale = self.envelope_scale();
        let mut out = [Complex64::default(); 4];
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let x = scale * s;
            let wt = w * scale;
            let (psi, phi) = (self.psi(x), self.phi(x));
            out[0] += wt * x * psi.norm_sqr();
            out[1] += wt * x * phi.norm_sqr();
            out[2] += wt * psi.conj() * (-I) * closed_psi_dx(self.sigma, x, self.t);
            out[3] += wt * phi.conj() * (-I) * closed_phi_dx(self.sigma, x, self.t);
        }
        out
    }
}

/// Relative Schrödinger residual of `ψ_z` and `φ_z` at `(x, t)`.
pub fn closed_form_residuals(p: &CoherentParams, x: f64, t: f64) -> Result<(f64, f64)> {
    let sigma = p.sigma();
    Ok((
        schrodinger_residual(|x, t| closed_psi(sigma, x, t), x, t)?,
        schrodinger_residual(|x, t| closed_phi(sigma, x, t), x, t)?,
    ))
}

/// Literal expansion coefficients of `ψ_z` and `φ_z` in `ψ_n`, `φ_n`:
/// `(1-|z|²)^{1/4} zⁿ √(Γ(n+½)/(n!Γ(½)))` and
/// `½(1-|z|²)^{1/4} zⁿ √(Γ(n+3/2)/(n!Γ(3/2)))`.
pub fn coherent_expansion_coeffs(z: Complex64, nmax: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    // Logarithms of Γ(n+½), Γ(n+3/2) and n! through Γ(x+1) = xΓ(x).
    let ln_gamma_half = PI.sqrt().ln();
    let ln_gamma_three_halves = ln_gamma_half + 0.5f64.ln();
    let (mut lg_half, mut lg_three, mut ln_fact) = (ln_gamma_half, ln_gamma_three_halves, 0.0);
    let gap = (1.0 - z.norm_sqr()).powf(0.25);
    let mut even = Vec::with_capacity(nmax);
    let mut odd = Vec::with_capacity(nmax);
    let mut zn = re(1.0);
    for n in 0..nmax {
        if n > 0 {
            let nf = n as f64;
            lg_half += (nf - 0.5).ln();
            lg_three += (nf + 0.5).ln();
            ln_fact += nf.ln();
            zn *= z;
        }
        let e = (0.5 * (lg_half - ln_fact - ln_gamma_half)).exp();
        let o = (0.5 * (lg_three - ln_fact - ln_gamma_three_halves)).exp();
        even.push(zn * gap * e);
        odd.push(zn * gap * 0.5 * o);
    }
    (even, odd)
}

/// The closed form expressed in the superspace basis through the Γ expansion:
/// `N (Σ e_n Ψ_n⁰ + √2 α Σ f_n Ψ_n¹)`.
pub fn gamma_state(p: &CoherentParams, nmax: usize) -> Result<SuperVector> {
    let closed = coherent_closed(p, 0.0)?;
    let alg = closed.normalizer.algebra().clone();
    let (even, odd) = coherent_expansion_coeffs(p.z, nmax);
    let alpha = p.alpha_element(&alg);
    let mut v = SuperVector::zeros(nmax);
    for n in 0..nmax {
        v.set_coeff(Parity::Even, n, &GrassmannElement::scalar(&alg, even[n]))?;
        v.set_coeff(Parity::Odd, n, &alpha.scale(SQRT_2 * odd[n]))?;
    }
    v.scale_left(&closed.normalizer)
}

/// Number of modes per sector needed for a series tail below `tol`, with the
/// certified geometric bound at that size; `Truncation` if beyond `cap`.
pub fn series_modes(z: Complex64, cap: usize, tol: f64) -> Result<(usize, f64)> {
    let r = z.norm();
    if r == 0.0 {
        return Ok((3, 0.0));
    }
    // Odd-sector magnitudes dominate: |z|ⁿ √(Γ(n+3/2)/(n!Γ(3/2))) (1-|z|²)^{1/4}.
    let mut mag = (1.0 - r * r).powf(0.25);
    let mut bound = f64::INFINITY;
    for n in 0..cap {
        let nf = n as f64;
        let ratio = r * ((nf + 1.5) / (nf + 1.0)).sqrt();
        if ratio < 1.0 {
            bound = mag * ratio / (1.0 - ratio);
            // Two extra modes keep the raising leakage at the top negligible.
            if bound < tol && n + 3 <= cap {
                return Ok((n + 3, bound));
            }
        }
        mag *= ratio;
    }
    Err(Error::Truncation { nmax: cap, bound })
}

/// `N′ exp(zK₊)(1 + αV₊)Ψ₀⁰` with `N′ = (Ψ|Ψ)^{-1/2}`, summing the
/// exponential until the next term is below [`SERIES_TOL`].
pub fn coherent_series(p: &CoherentParams, cap: usize) -> Result<SuperVector> {
    let p = CoherentParams::new(p.z, p.alpha)?;
    let (nmax, _) = series_modes(p.z, cap, SERIES_TOL)?;
    let raw = unnormalized_series(&p, nmax)?;
    let norm = super_inner(&raw, &raw)?;
    raw.scale_left(&norm.powf(-0.5))
}

fn unnormalized_series(p: &CoherentParams, nmax: usize) -> Result<SuperVector> {
    let alg = GeneratorSet::standard();
    let vac = SuperVector::basis(nmax, Parity::Even, 0);
    let vp = build_generator(GeneratorName::VPlus, nmax)?;
    let kp = build_generator(GeneratorName::KPlus, nmax)?;
    let start = vac.add(&vp.scale_left(&p.alpha_element(&alg))?.apply(&vac)?)?;
    let mut sum = start.clone();
    let mut term = start;
    for k in 1..=(4 * nmax + 64) {
        term = kp.apply(&term)?.scale(p.z / k as f64);
        sum = sum.add(&term)?;
        let size = term
            .parts()
            .values()
            .flat_map(|v| v.iter().map(|c| c.norm()))
            .fold(0.0, f64::max);
        if size < SERIES_TOL {
            return Ok(sum);
        }
    }
    Err(Error::Truncation {
        nmax,
        bound: SERIES_TOL,
    })
}

/// Phase `((1+z)/|1+z|)^{1/2}` by which the closed form exceeds the series.
pub fn closed_form_phase(z: Complex64) -> Complex64 {
    let w = re(1.0) + z;
    (w / w.norm()).sqrt()
}

/// Pairwise sup-norm differences of the three routes to the coherent state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckReport {
    #[serde(with = "crate::report::complex_obj")]
    pub z: Complex64,
    #[serde(with = "crate::report::complex_obj")]
    pub alpha: Complex64,
    pub t: f64,
    pub modes: usize,
    pub closed_vs_series: f64,
    pub closed_vs_gamma: f64,
    pub series_vs_gamma: f64,
    /// Closed form against series without removing the constant phase.
    pub closed_vs_series_literal: f64,
    /// Largest relative Schrödinger residual of the ψ_z and φ_z components.
    pub residual: f64,
}

impl CrosscheckReport {
    pub fn max_route_defect(&self) -> f64 {
        self.closed_vs_series.max(self.closed_vs_gamma).max(self.series_vs_gamma)
    }
}

pub fn coherent_crosscheck(p: &CoherentParams, t: f64, cap: usize) -> Result<CrosscheckReport> {
    let closed = coherent_closed(p, t)?;
    let series = coherent_series(p, cap)?;
    let nmax = series.nmax();
    let gamma = gamma_state(p, nmax)?;
    let phase = closed_form_phase(p.z);

    let width = 4.0 * closed.envelope_scale();
    let points = 41;
    let (mut cs, mut cg, mut sg, mut lit): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..points {
        let x = -width + 2.0 * width * k as f64 / (points - 1) as f64;
        let a = closed.evaluate(x)?;
        let a_aligned = a.scale(phase.conj());
        let b = series.evaluate(x, t);
        let c = gamma.evaluate(x, t);
        cs = cs.max(a_aligned.distance(&b));
        cg = cg.max(a_aligned.distance(&c));
        sg = sg.max(b.distance(&c));
        lit = lit.max(a.distance(&b));
    }
    sg = sg.max(series.distance(&gamma)?);

    let mut residual: f64 = 0.0;
    for x in [-2.0, -0.6, 0.45, 1.7] {
        let (r1, r2) = closed_form_residuals(p, x, t)?;
        residual = residual.max(r1).max(r2);
    }
    Ok(CrosscheckReport {
        z: p.z,
        alpha: p.alpha,
        t,
        modes: nmax,
        closed_vs_series: cs,
        closed_vs_gamma: cg,
        series_vs_gamma: sg,
        closed_vs_series_literal: lit,
        residual,
    })
}

/// `D′(z, α) = exp(zK₊ - z̄K₋ + αV₊ - iᾱW₋)`.
pub fn displacement_prime(p: &CoherentParams, nmax: usize) -> Result<SuperOperator> {
    let p = CoherentParams::new(p.z, p.alpha)?;
    let alg = GeneratorSet::standard();
    let kp = build_generator(GeneratorName::KPlus, nmax)?;
    let km = build_generator(GeneratorName::KMinus, nmax)?;
    let vp = build_generator(GeneratorName::VPlus, nmax)?;
    let wm = build_generator(GeneratorName::WMinus, nmax)?;
    let exponent = kp
        .scale(p.z)
        .sub(&km.scale(p.z.conj()))?
        .add(&vp.scale_left(&p.alpha_element(&alg))?)?
        .sub(&wm.scale_left(&p.alpha_bar_element(&alg))?.scale(I))?;
    Ok(exponent.exp()?.renamed("D′"))
}

/// Disk label reached by `exp(zK₊ - z̄K₋)Ψ₀⁰`: `e^{i arg z} tanh|z|`.
pub fn displacement_label(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return z;
    }
    z / r * r.tanh()
}
