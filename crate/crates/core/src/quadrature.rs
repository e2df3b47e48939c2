//! L² scalar products of Gaussian-tailed functions on the real line.
//!
//! The primary scheme is Gauss–Hermite on the rescaled variable
//! `x = scale · s`, exact for polynomial × matching-Gaussian integrands. Its
//! accuracy is estimated by re-running with three quarters of the nodes;
//! when the two disagree, an adaptive Simpson rule on `[-W, W]` takes over.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    GaussHermite,
    AdaptiveSimpson,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub scheme: Scheme,
    /// Gaussian length scale; `None` picks `√(2(1+t²))`, the envelope of
    /// `|χ_m(·, t)|²`.
    pub scale: Option<f64>,
    /// Half-width of the Simpson interval; `None` uses `8 · scale`.
    pub half_width: Option<f64>,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 200,
            scheme: Scheme::GaussHermite,
            scale: None,
            half_width: None,
            abs_tol: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = Some(scale);
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    /// Exact polynomial integration of `χ̄_m χ_n` at `t = 0` needs
    /// `nodes ≥ m + 1`; this checks the stricter `2·max_mode + 2` budget.
    pub fn covers_mode(&self, max_mode: usize) -> bool {
        self.nodes >= 2 * max_mode + 2
    }

    pub fn resolved_scale(&self, t: f64) -> f64 {
        self.scale.unwrap_or_else(|| (2.0 * (1.0 + t * t)).sqrt())
    }
}

/// Gauss–Hermite rule for weight `e^{-s²}`: nodes and the weights already
/// multiplied by `e^{s²}`.
#[derive(Debug)]
pub struct GaussHermiteRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Cached rule with `n` nodes (Newton iteration on orthonormal Hermite
/// polynomials with asymptotic starting guesses).
pub fn gauss_hermite(n: usize) -> Arc<GaussHermiteRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermiteRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return rule.clone();
    }
    let rule = Arc::new(compute_gauss_hermite(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn compute_gauss_hermite(n: usize) -> GaussHermiteRule {
    assert!(n >= 1);
    // Eigenvalues of the Jacobi matrix seed a Newton polish on the
    // orthonormal recurrence, which also yields weights with full relative
    // precision in the tails.
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut seeds: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    seeds.sort_by(f64::total_cmp);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for seed in seeds {
        let mut z = seed;
        let mut derivative = 1.0;
        for _ in 0..20 {
            let (p_n, p_prev) = orthonormal_hermite(n, z);
            derivative = (2.0 * n as f64).sqrt() * p_prev;
            let step = p_n / derivative;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes.push(z);
        // w e^{z²}, computed from the scaled polynomials so tails do not underflow.
        weights.push(2.0 / (derivative * derivative));
    }
    GaussHermiteRule { nodes, weights }
}

/// `(p_n(z), p_{n-1}(z)) · e^{-z²/2}` for the Hermite polynomials
/// orthonormal under `e^{-s²}`.
fn orthonormal_hermite(n: usize, z: f64) -> (f64, f64) {
    const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    let mut p1 = PIM4 * (-0.5 * z * z).exp();
    let mut p2 = 0.0;
    for j in 0..n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}

/// `∫ h(x) dx` with Gauss–Hermite at the given scale.
pub fn gauss_hermite_integral<F>(h: F, nodes: usize, scale: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let rule = gauss_hermite(nodes);
    let mut acc = Complex64::default();
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += h(scale * s) * w;
    }
    acc * scale
}

/// Adaptive Simpson on `[a, b]`; fails with the last error estimate when
/// the recursion depth is exhausted.
pub fn adaptive_simpson<F>(h: F, a: f64, b: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    struct Ctx<'a, F> {
        h: &'a F,
        worst: f64,
        failed: bool,
    }

    fn recurse<F: Fn(f64) -> Complex64>(
        ctx: &mut Ctx<'_, F>,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (ctx.h)(lm);
        let frm = (ctx.h)(rm);
        let left = (m - a) / 6.0 * (fa + flm * 4.0 + fm);
        let right = (b - m) / 6.0 * (fm + frm * 4.0 + fb);
        let delta = left + right - whole;
        if delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        if depth == 0 {
            ctx.failed = true;
            ctx.worst = ctx.worst.max(delta.norm());
            return left + right + delta / 15.0;
        }
        recurse(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }

    let mut ctx = Ctx {
        h: &h,
        worst: 0.0,
        failed: false,
    };
    // Split first so a narrow central peak is always sampled.
    let pieces = 64;
    let step = (b - a) / pieces as f64;
    let mut total = Complex64::default();
    for k in 0..pieces {
        let lo = a + k as f64 * step;
        let hi = lo + step;
        let fa = h(lo);
        let fm = h(0.5 * (lo + hi));
        let fb = h(hi);
        let whole = (hi - lo) / 6.0 * (fa + fm * 4.0 + fb);
        total += recurse(&mut ctx, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 40);
    }
    if ctx.failed {
        return Err(Error::Numeric {
            message: "adaptive Simpson did not converge".into(),
            estimate: ctx.worst,
        });
    }
    Ok(total)
}

/// `⟨f|g⟩ = ∫ conj(f(x)) g(x) dx`.
pub fn quad_inner<F, G>(f: F, g: G, t: f64, q: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let integrand = |x: f64| f(x).conj() * g(x);
    integrate(integrand, t, q)
}

/// `∫ h(x) dx` under the same policy as [`quad_inner`].
pub fn integrate<H>(h: H, t: f64, q: &QuadratureSpec) -> Result<Complex64>
where
    H: Fn(f64) -> Complex64,
{
    let scale = q.resolved_scale(t);
    let half_width = q.half_width.unwrap_or(8.0 * scale);
    if q.scheme == Scheme::AdaptiveSimpson {
        return adaptive_simpson(&h, -half_width, half_width, q.abs_tol);
    }
    let full = gauss_hermite_integral(&h, q.nodes, scale);
    let coarse_nodes = (q.nodes * 3 / 4).max(2);
    let coarse = gauss_hermite_integral(&h, coarse_nodes, scale);
    let estimate = (full - coarse).norm();
    if estimate <= q.abs_tol.max(1e-15 * full.norm()) {
        return Ok(full);
    }
    adaptive_simpson(&h, -half_width, half_width, q.abs_tol)
}
