//! Matrix realization of the osp(2/2) generators on the truncated superspace.
//!
//! Everything is derived from the frozen ladder action on the χ basis:
//! `K± = 2(a±)²`, `K₀ = a⁺a⁻ + a⁻a⁺`, `V± = √2 a±` restricted to even
//! sources and `W± = √2 a±` restricted to odd sources. Products are formed on
//! two extra modes so that only raising entries leaving the truncation are
//! lost.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{apply_ladder, BasisMode, Ladder};
use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::operator::SuperOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorName {
    K0,
    KPlus,
    KMinus,
    B,
    VPlus,
    VMinus,
    WPlus,
    WMinus,
    /// Super-Hermitian base element `X_j`, `j ∈ 1..=8`.
    X(u8),
    /// Free Hamiltonian `h = -∂ₓ²`.
    Hamiltonian,
    PTheta,
    /// `x θ` at the time passed to [`build_generator_at`].
    XTheta,
    /// Ladder operators; they swap sectors like odd operators but carry no θ.
    APlus,
    AMinus,
}

use GeneratorName::*;

impl GeneratorName {
    pub const BASIC: [GeneratorName; 8] = [K0, KPlus, KMinus, B, VPlus, VMinus, WPlus, WMinus];

    pub fn parity(self) -> Parity {
        match self {
            K0 | KPlus | KMinus | B | Hamiltonian => Parity::Even,
            X(j) if j <= 4 => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn label(self) -> String {
        match self {
            K0 => "K0".into(),
            KPlus => "K+".into(),
            KMinus => "K-".into(),
            B => "B".into(),
            VPlus => "V+".into(),
            VMinus => "V-".into(),
            WPlus => "W+".into(),
            WMinus => "W-".into(),
            X(j) => format!("X{j}"),
            Hamiltonian => "h".into(),
            PTheta => "ptheta".into(),
            XTheta => "xtheta".into(),
            APlus => "a+".into(),
            AMinus => "a-".into(),
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = match s.trim() {
            "K0" | "K₀" => K0,
            "K+" | "Kp" | "K₊" => KPlus,
            "K-" | "Km" | "K₋" => KMinus,
            "B" => B,
            "V+" | "Vp" | "V₊" => VPlus,
            "V-" | "Vm" | "V₋" => VMinus,
            "W+" | "Wp" | "W₊" => WPlus,
            "W-" | "Wm" | "W₋" => WMinus,
            "h" => Hamiltonian,
            "ptheta" | "pθ" => PTheta,
            "xtheta" | "xθ" => XTheta,
            "a+" | "a⁺" => APlus,
            "a-" | "a⁻" => AMinus,
            other => {
                let j = other
                    .strip_prefix('X')
                    .and_then(|d| d.parse::<u8>().ok())
                    .filter(|j| (1..=8).contains(j))
                    .ok_or_else(|| Error::UnknownGenerator(other.to_string()))?;
                X(j)
            }
        };
        Ok(name)
    }
}

/// Ladder matrix on the first `modes` χ modes; raising out of range is dropped.
fn ladder_matrix(sign: Ladder, modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(modes, modes);
    for j in 0..modes {
        let (c, target) = apply_ladder(sign, BasisMode::new(j));
        if c != 0.0 && target.m() < modes {
            m[(target.m(), j)] = c;
        }
    }
    m
}

fn slot_of_mode(m: usize, nmax: usize) -> usize {
    let mode = BasisMode::new(m);
    match mode.sector() {
        Parity::Even => mode.n(),
        Parity::Odd => nmax + mode.n(),
    }
}

/// Restricts a χ-basis matrix to `2 nmax` modes in superspace slot order,
/// keeping only columns whose source mode passes `keep_source`.
fn to_superspace(chi: &DMatrix<f64>, nmax: usize, keep_source: impl Fn(usize) -> bool) -> DMatrix<Complex64> {
    let dim = 2 * nmax;
    let mut out = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        if !keep_source(j) {
            continue;
        }
        for i in 0..dim {
            out[(slot_of_mode(i, nmax), slot_of_mode(j, nmax))] = Complex64::new(chi[(i, j)], 0.0);
        }
    }
    out
}

pub fn build_generator(name: GeneratorName, nmax: usize) -> Result<SuperOperator> {
    build_generator_at(name, nmax, 0.0)
}

pub fn build_generator_at(name: GeneratorName, nmax: usize, t: f64) -> Result<SuperOperator> {
    if nmax < 2 {
        return Err(Error::Dimension(format!("truncation {nmax} below the minimum of 2")));
    }
    let ext = 2 * nmax + 2;
    let up = ladder_matrix(Ladder::Raise, ext);
    let down = ladder_matrix(Ladder::Lower, ext);
    let sqrt2 = std::f64::consts::SQRT_2;
    let all = |_: usize| true;
    let even = |m: usize| m % 2 == 0;
    let odd = |m: usize| m % 2 == 1;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let basic = |g| build_generator_at(g, nmax, t);

    let matrix = match name {
        K0 => to_superspace(&(&up * &down + &down * &up), nmax, all),
        KPlus => to_superspace(&(&up * &up * 2.0), nmax, all),
        KMinus => to_superspace(&(&down * &down * 2.0), nmax, all),
        B => {
            let diag = DMatrix::from_fn(ext, ext, |i, j| match (i == j, i % 2) {
                (false, _) => 0.0,
                (true, 0) => -0.25,
                (true, _) => 0.25,
            });
            to_superspace(&diag, nmax, all)
        }
        VPlus => to_superspace(&(&up * sqrt2), nmax, even),
        VMinus => to_superspace(&(&down * sqrt2), nmax, even),
        WPlus => to_superspace(&(&up * sqrt2), nmax, odd),
        WMinus => to_superspace(&(&down * sqrt2), nmax, odd),
        APlus => to_superspace(&up, nmax, all),
        AMinus => to_superspace(&down, nmax, all),
        X(j) => {
            let op = match j {
                1 => basic(K0)?,
                2 => basic(B)?,
                3 => basic(KPlus)?.add(&basic(KMinus)?)?,
                4 => basic(KPlus)?.sub(&basic(KMinus)?)?.scale(c(0.0, 1.0)),
                5 => basic(VPlus)?.sub(&basic(WMinus)?.scale(c(0.0, 1.0)))?,
                6 => basic(VMinus)?.sub(&basic(WPlus)?.scale(c(0.0, 1.0)))?,
                7 => basic(WPlus)?.sub(&basic(VMinus)?.scale(c(0.0, 1.0)))?,
                8 => basic(WMinus)?.sub(&basic(VPlus)?.scale(c(0.0, 1.0)))?,
                _ => return Err(Error::UnknownGenerator(format!("X{j}"))),
            };
            return Ok(op.renamed(name.label()));
        }
        Hamiltonian => {
            let op = basic(KPlus)?
                .add(&basic(KMinus)?)?
                .scale(c(0.5, 0.0))
                .add(&basic(K0)?)?;
            return Ok(op.renamed(name.label()));
        }
        PTheta => {
            let op = basic(VPlus)?
                .add(&basic(VMinus)?)?
                .scale(c(-1.0 / sqrt2, 0.0));
            return Ok(op.renamed(name.label()));
        }
        XTheta => {
            let op = basic(PTheta)?.scale(c(2.0 * t, 0.0)).add(
                &basic(VPlus)?
                    .sub(&basic(VMinus)?)?
                    .scale(c(0.0, sqrt2)),
            )?;
            return Ok(op.renamed(name.label()));
        }
    };
    SuperOperator::from_complex(nmax, name.parity(), name.label(), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::SuperVector;

    fn coeff(op: &SuperOperator, to: (Parity, usize), from: (Parity, usize)) -> Complex64 {
        let v = op.apply(&SuperVector::basis(op.nmax(), from.0, from.1)).unwrap();
        v.coeff(to.0, to.1).body()
    }

    #[test]
    fn frozen_matrix_entries() {
        let n = 6;
        let k0 = build_generator(K0, n).unwrap();
        let kp = build_generator(KPlus, n).unwrap();
        let vp = build_generator(VPlus, n).unwrap();
        let vm = build_generator(VMinus, n).unwrap();
        let wp = build_generator(WPlus, n).unwrap();
        let wm = build_generator(WMinus, n).unwrap();
        let (e, o) = (Parity::Even, Parity::Odd);
        for k in 0..n - 1 {
            let kf = k as f64;
            assert!((coeff(&k0, (e, k), (e, k)).re - (kf + 0.25)).abs() < 1e-14);
            assert!((coeff(&k0, (o, k), (o, k)).re - (kf + 0.75)).abs() < 1e-14);
            assert!((coeff(&kp, (e, k + 1), (e, k)).re - ((kf + 1.0) * (kf + 0.5)).sqrt()).abs() < 1e-13);
            assert!((coeff(&kp, (o, k + 1), (o, k)).re - ((kf + 1.0) * (kf + 1.5)).sqrt()).abs() < 1e-13);
            assert!((coeff(&vp, (o, k), (e, k)).re - (kf + 0.5).sqrt()).abs() < 1e-14);
            assert!((coeff(&wp, (e, k + 1), (o, k)).re - (kf + 1.0).sqrt()).abs() < 1e-14);
            assert!((coeff(&wm, (e, k), (o, k)).re - (kf + 0.5).sqrt()).abs() < 1e-14);
            if k > 0 {
                assert!((coeff(&vm, (o, k - 1), (e, k)).re - kf.sqrt()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn top_mode_of_k0_is_exact() {
        let k0 = build_generator(K0, 4).unwrap();
        assert!((coeff(&k0, (Parity::Odd, 3), (Parity::Odd, 3)).re - 3.75).abs() < 1e-14);
    }

    #[test]
    fn parse_names() {
        assert_eq!("K+".parse::<GeneratorName>().unwrap(), KPlus);
        assert_eq!("X7".parse::<GeneratorName>().unwrap(), X(7));
        assert!(matches!("X9".parse::<GeneratorName>(), Err(Error::UnknownGenerator(_))));
        assert!(matches!("Q".parse::<GeneratorName>(), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn odd_generators_kill_other_sector() {
        let v = SuperVector::basis(5, Parity::Odd, 2);
        assert!(build_generator(VPlus, 5).unwrap().apply(&v).unwrap().support_max_n().is_none());
        let v = SuperVector::basis(5, Parity::Even, 2);
        assert!(build_generator(WMinus, 5).unwrap().apply(&v).unwrap().support_max_n().is_none());
    }

    #[test]
    fn tiny_truncation_rejected() {
        assert!(matches!(build_generator(K0, 1), Err(Error::Dimension(_))));
    }
}
