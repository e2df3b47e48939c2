//! Free-particle solution basis χ_m(x, t), its ladder structure and the
//! pointwise symmetry operators of the free Schrödinger equation
//! `i ∂_t χ = -∂_x² χ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::Parity;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Raw index `m` of χ_m. The even functions ψ_n = χ_{2n} form sector 0,
/// the odd functions φ_n = χ_{2n+1} sector 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisMode(usize);

impl BasisMode {
    pub fn new(m: usize) -> Self {
        BasisMode(m)
    }

    pub fn from_sector(sector: Parity, n: usize) -> Self {
        BasisMode(2 * n + sector.bit() as usize)
    }

    pub fn m(self) -> usize {
        self.0
    }

    pub fn sector(self) -> Parity {
        Parity::from_degree(self.0 as u32)
    }

    pub fn n(self) -> usize {
        self.0 / 2
    }
}

/// Probabilists' Hermite polynomial He_n by the three-term recurrence.
pub fn hermite_he(n: usize, z: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = z * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `He_k(z)/√k!` for `k = m, m-1, m-2` (zero where the index is negative).
fn normalized_hermite_tail(m: usize, z: f64) -> [f64; 3] {
    let mut h = [1.0, 0.0, 0.0];
    for k in 0..m {
        let kf = k as f64;
        let next = (z * h[0] - kf.sqrt() * h[1]) / (kf + 1.0).sqrt();
        h = [next, h[0], h[1]];
    }
    h
}

fn minus_i_pow(m: usize) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Value and first two x-derivatives of a basis function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiJet {
    pub value: Complex64,
    pub dx: Complex64,
    pub dxx: Complex64,
}

/// Closed form of χ_m(x, t), using the principal branch of
/// `(1 + i t)^{-1/2}` and of `arctan t`.
pub fn eval_chi(mode: BasisMode, x: f64, t: f64) -> Complex64 {
    eval_chi_derivatives(mode, x, t).value
}

pub fn eval_chi_derivatives(mode: BasisMode, x: f64, t: f64) -> ChiJet {
    let m = mode.m();
    let one_it = Complex64::new(1.0, t);
    let s = 1.0 / (1.0 + t * t).sqrt();
    let prefactor = minus_i_pow(m)
        * (one_it * (2.0 * std::f64::consts::PI).sqrt()).powf(-0.5)
        * (-I * (m as f64) * t.atan()).exp();
    let envelope = (-(x * x) / (one_it * 4.0)).exp();
    let [h0, h1, h2] = normalized_hermite_tail(m, s * x);
    let mf = m as f64;
    let p = h0;
    let dp = s * mf.sqrt() * h1;
    let ddp = s * s * (mf * (mf - 1.0)).max(0.0).sqrt() * h2;
    let g = -x / (one_it * 2.0);
    let dg = -1.0 / (one_it * 2.0);
    let base = prefactor * envelope;
    ChiJet {
        value: base * p,
        dx: base * (g * p + dp),
        dxx: base * ((g * g + dg) * p + g * dp * 2.0 + ddp),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ladder {
    Raise,
    Lower,
}

/// Frozen action of the Heisenberg–Weyl ladder operators on the basis:
/// `a⁺ χ_m = ½√(m+1) χ_{m+1}`, `a⁻ χ_m = ½√m χ_{m-1}`. Lowering the
/// ground mode returns coefficient zero and the ground mode as target.
pub fn apply_ladder(sign: Ladder, mode: BasisMode) -> (f64, BasisMode) {
    let m = mode.m();
    match sign {
        Ladder::Raise => (0.5 * ((m + 1) as f64).sqrt(), BasisMode(m + 1)),
        Ladder::Lower if m == 0 => (0.0, BasisMode(0)),
        Ladder::Lower => (0.5 * (m as f64).sqrt(), BasisMode(m - 1)),
    }
}

/// `a^± = ½(i K_{-1} ∓ K_1)` applied as a first-order differential operator,
/// with `K_1 = -t ∂_x + i x/2` and `K_{-1} = ∂_x`.
pub fn apply_ladder_pointwise(sign: Ladder, jet: &ChiJet, x: f64, t: f64) -> Complex64 {
    let k_m1 = jet.dx;
    let k_1 = -t * jet.dx + I * (x / 2.0) * jet.value;
    match sign {
        Ladder::Raise => 0.5 * (I * k_m1 - k_1),
        Ladder::Lower => 0.5 * (I * k_m1 + k_1),
    }
}

/// `k₀ = a⁺a⁻ + a⁻a⁺ = -½(K_{-1}² + K_1²)` as a second-order differential
/// operator: `-½[(1+t²)χ'' - i t x χ' - (i t/2)χ - (x²/4)χ]`.
pub fn apply_k0_pointwise(jet: &ChiJet, x: f64, t: f64) -> Complex64 {
    -0.5 * ((1.0 + t * t) * jet.dxx
        - I * (t * x) * jet.dx
        - I * (t / 2.0) * jet.value
        - (x * x / 4.0) * jet.value)
}

/// Symmetry operators of the free Schrödinger equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryOp {
    /// `-t² ∂_t - t x ∂_x - t/2 + i x²/4`
    K2,
    /// `-t ∂_x + i x/2`
    K1,
    /// the central element `i`
    K0Central,
    /// `∂_x`
    KMinus1,
    /// `∂_t`
    KMinus2,
    /// the dilation `x ∂_x + 2t ∂_t + 1/2`
    Dilation,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 6] = [
        SymmetryOp::K2,
        SymmetryOp::K1,
        SymmetryOp::K0Central,
        SymmetryOp::KMinus1,
        SymmetryOp::KMinus2,
        SymmetryOp::Dilation,
    ];
}

/// Pointwise action on χ_m. On solutions `∂_t = i ∂_x²`, which replaces
/// every time derivative.
pub fn apply_symmetry_op(op: SymmetryOp, mode: BasisMode, x: f64, t: f64) -> Complex64 {
    apply_symmetry_op_to_jet(op, &eval_chi_derivatives(mode, x, t), x, t)
}

pub fn apply_symmetry_op_to_jet(op: SymmetryOp, jet: &ChiJet, x: f64, t: f64) -> Complex64 {
    let dt = I * jet.dxx;
    match op {
        SymmetryOp::K2 => {
            -t * t * dt - t * x * jet.dx - (t / 2.0) * jet.value + I * (x * x / 4.0) * jet.value
        }
        SymmetryOp::K1 => -t * jet.dx + I * (x / 2.0) * jet.value,
        SymmetryOp::K0Central => I * jet.value,
        SymmetryOp::KMinus1 => jet.dx,
        SymmetryOp::KMinus2 => dt,
        SymmetryOp::Dilation => x * jet.dx + 2.0 * t * dt + 0.5 * jet.value,
    }
}

pub const FD_STEP: f64 = 1e-3;

/// Relative residual `|i ∂_t χ + ∂_x² χ| / max(|χ|, 1e-30)` with fourth-order
/// central differences in both variables. The normalizer is the largest
/// modulus over the stencil points.
pub fn schrodinger_residual<F>(state: F, x: f64, t: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let h = FD_STEP;
    if x + h == x || t + h == t {
        return Err(Error::Numeric {
            message: format!("finite-difference step underflows at (x, t) = ({x}, {t})"),
            estimate: h,
        });
    }
    let f0 = state(x, t);
    let fxp1 = state(x + h, t);
    let fxm1 = state(x - h, t);
    let fxp2 = state(x + 2.0 * h, t);
    let fxm2 = state(x - 2.0 * h, t);
    let ftp1 = state(x, t + h);
    let ftm1 = state(x, t - h);
    let ftp2 = state(x, t + 2.0 * h);
    let ftm2 = state(x, t - 2.0 * h);
    let dxx = (-fxp2 + fxp1 * 16.0 - f0 * 30.0 + fxm1 * 16.0 - fxm2) / (12.0 * h * h);
    let dt = (-ftp2 + ftp1 * 8.0 - ftm1 * 8.0 + ftm2) / (12.0 * h);
    let scale = [f0, fxp1, fxm1, fxp2, fxm2, ftp1, ftm1, ftp2, ftm2]
        .iter()
        .map(|v| v.norm())
        .fold(1e-30, f64::max);
    Ok((I * dt + dxx).norm() / scale)
}
