//! Truncated Hilbert superspace spanned by Ψ_n⁰ = ψ_n and Ψ_n¹ = θ φ_n,
//! with Grassmann-valued coefficients.
//!
//! Slot `k < nmax` holds Ψ_k⁰ and slot `nmax + k` holds Ψ_k¹. A coefficient
//! multiplies its basis function from the left, so `β Ψ_n¹ = β θ φ_n`.
//! Coefficients live in the algebra minus (θ, θ̄): those two generators are
//! carried by the slot structure.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::basis::{eval_chi, BasisMode};
use crate::error::{Error, Result};
use crate::grassmann::{
    GeneratorSet, Grade, GrassmannElement, Monomial, Parity, THETA, THETA_BAR,
};
use crate::operator::SuperOperator;
use crate::quadrature::{gauss_hermite, QuadratureSpec};

pub type SectorParity = Parity;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parity of slot `index` in a truncation with `nmax` modes per sector.
pub(crate) fn slot_parity(index: usize, nmax: usize) -> Parity {
    if index < nmax {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Debug, Clone)]
pub struct SuperVector {
    nmax: usize,
    algebra: Arc<GeneratorSet>,
    /// Coefficient vectors of each Grassmann monomial, length `2 nmax`.
    parts: BTreeMap<Monomial, DVector<Complex64>>,
}

impl SuperVector {
    pub fn zeros(nmax: usize) -> Self {
        Self::zeros_in(&GeneratorSet::standard(), nmax)
    }

    pub fn zeros_in(algebra: &Arc<GeneratorSet>, nmax: usize) -> Self {
        Self {
            nmax,
            algebra: algebra.clone(),
            parts: BTreeMap::new(),
        }
    }

    /// The basis vector Ψ_n^sector.
    pub fn basis(nmax: usize, sector: SectorParity, n: usize) -> Self {
        let mut v = Self::zeros(nmax);
        v.set_coeff(sector, n, &GrassmannElement::one(&v.algebra.clone()))
            .expect("basis coefficient is valid");
        v
    }

    pub fn from_coefficients(
        even: &[GrassmannElement],
        odd: &[GrassmannElement],
    ) -> Result<Self> {
        if even.len() != odd.len() {
            return Err(Error::Dimension(format!(
                "even and odd sectors differ in length ({} vs {})",
                even.len(),
                odd.len()
            )));
        }
        let algebra = even
            .first()
            .map(|c| c.algebra().clone())
            .unwrap_or_else(GeneratorSet::standard);
        let mut v = Self::zeros_in(&algebra, even.len());
        for (n, c) in even.iter().enumerate() {
            v.set_coeff(Parity::Even, n, c)?;
        }
        for (n, c) in odd.iter().enumerate() {
            v.set_coeff(Parity::Odd, n, c)?;
        }
        Ok(v)
    }

    /// Vector with pure complex coefficients.
    pub fn from_complex(nmax: usize, values: DVector<Complex64>) -> Result<Self> {
        if values.len() != 2 * nmax {
            return Err(Error::Dimension(format!(
                "expected {} coefficients, got {}",
                2 * nmax,
                values.len()
            )));
        }
        let mut v = Self::zeros(nmax);
        v.parts.insert(Monomial::ONE, values);
        Ok(v)
    }

    pub(crate) fn from_parts(
        algebra: &Arc<GeneratorSet>,
        nmax: usize,
        parts: BTreeMap<Monomial, DVector<Complex64>>,
    ) -> Self {
        let mut v = Self {
            nmax,
            algebra: algebra.clone(),
            parts,
        };
        v.prune();
        v
    }

    pub(crate) fn parts(&self) -> &BTreeMap<Monomial, DVector<Complex64>> {
        &self.parts
    }

    fn prune(&mut self) {
        self.parts.retain(|_, v| v.iter().any(|c| *c != Complex64::default()));
    }

    /// Same coefficients on a different truncation: pads with zeros or drops
    /// the top modes.
    pub fn resized(&self, nmax: usize) -> Self {
        let keep = self.nmax.min(nmax);
        let parts = self
            .parts
            .iter()
            .map(|(&m, v)| {
                let mut out = DVector::zeros(2 * nmax);
                for k in 0..keep {
                    out[k] = v[k];
                    out[nmax + k] = v[self.nmax + k];
                }
                (m, out)
            })
            .collect();
        Self::from_parts(&self.algebra, nmax, parts)
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    fn slot(&self, sector: SectorParity, n: usize) -> usize {
        match sector {
            Parity::Even => n,
            Parity::Odd => self.nmax + n,
        }
    }

    pub fn set_coeff(&mut self, sector: SectorParity, n: usize, c: &GrassmannElement) -> Result<()> {
        if n >= self.nmax {
            return Err(Error::Dimension(format!("mode {n} beyond truncation {}", self.nmax)));
        }
        if c.algebra() != &self.algebra && **c.algebra() != *self.algebra {
            return Err(Error::Config("coefficient from a different generator set".into()));
        }
        if c.mentions(THETA) || c.mentions(THETA_BAR) {
            return Err(Error::Contract(
                "super-vector coefficients may not contain θ or θ̄".into(),
            ));
        }
        let slot = self.slot(sector, n);
        for v in self.parts.values_mut() {
            v[slot] = Complex64::default();
        }
        let dim = 2 * self.nmax;
        for (m, val) in c.terms() {
            self.parts
                .entry(m)
                .or_insert_with(|| DVector::zeros(dim))[slot] = val;
        }
        self.prune();
        Ok(())
    }

    pub fn coeff(&self, sector: SectorParity, n: usize) -> GrassmannElement {
        let slot = self.slot(sector, n);
        GrassmannElement::from_terms(
            &self.algebra,
            self.parts.iter().map(|(&m, v)| (m, v[slot])),
        )
    }

    pub fn even_coefficients(&self) -> Vec<GrassmannElement> {
        (0..self.nmax).map(|n| self.coeff(Parity::Even, n)).collect()
    }

    pub fn odd_coefficients(&self) -> Vec<GrassmannElement> {
        (0..self.nmax).map(|n| self.coeff(Parity::Odd, n)).collect()
    }

    /// Pure-number part of every coefficient.
    pub fn body(&self) -> DVector<Complex64> {
        self.parts
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(|| DVector::zeros(2 * self.nmax))
    }

    /// Total parity `p(coefficient) + p(slot)`, which must agree over all
    /// nonzero entries for a homogeneous vector.
    pub fn grade(&self) -> Grade {
        let mut seen: Option<Parity> = None;
        for (m, v) in &self.parts {
            for (slot, c) in v.iter().enumerate() {
                if *c == Complex64::default() {
                    continue;
                }
                let p = m.parity().add(slot_parity(slot, self.nmax));
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return Grade::Mixed,
                    _ => {}
                }
            }
        }
        match seen.unwrap_or(Parity::Even) {
            Parity::Even => Grade::Even,
            Parity::Odd => Grade::Odd,
        }
    }

    pub fn is_mixed(&self) -> bool {
        self.grade() == Grade::Mixed
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nmax != other.nmax {
            return Err(Error::Dimension(format!(
                "truncations differ ({} vs {})",
                self.nmax, other.nmax
            )));
        }
        if *self.algebra != *other.algebra {
            return Err(Error::Config("vectors over different generator sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut parts = self.parts.clone();
        for (m, v) in &other.parts {
            match parts.get_mut(m) {
                Some(acc) => *acc += v,
                None => {
                    parts.insert(*m, v.clone());
                }
            }
        }
        Ok(Self::from_parts(&self.algebra, self.nmax, parts))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let parts = self.parts.iter().map(|(&m, v)| (m, v * c)).collect();
        Self::from_parts(&self.algebra, self.nmax, parts)
    }

    /// `β · Φ`, multiplying every coefficient from the left.
    pub fn scale_left(&self, beta: &GrassmannElement) -> Result<Self> {
        if **beta.algebra() != *self.algebra {
            return Err(Error::Config("scalar from a different generator set".into()));
        }
        if beta.mentions(THETA) || beta.mentions(THETA_BAR) {
            return Err(Error::Contract("scalar may not contain θ or θ̄".into()));
        }
        let mut parts: BTreeMap<Monomial, DVector<Complex64>> = BTreeMap::new();
        for (mb, cb) in beta.terms() {
            for (&mv, v) in &self.parts {
                if let Some((m, s)) = mb.mul(mv) {
                    let add = v * (cb * s);
                    match parts.get_mut(&m) {
                        Some(acc) => *acc += add,
                        None => {
                            parts.insert(m, add);
                        }
                    }
                }
            }
        }
        Ok(Self::from_parts(&self.algebra, self.nmax, parts))
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d
            .parts
            .values()
            .flat_map(|v| v.iter().map(|c| c.norm()))
            .fold(0.0, f64::max))
    }

    /// Highest occupied mode index in either sector, if any.
    pub fn support_max_n(&self) -> Option<usize> {
        let mut best = None;
        for v in self.parts.values() {
            for (slot, c) in v.iter().enumerate() {
                if *c != Complex64::default() {
                    let n = slot % self.nmax;
                    best = Some(best.map_or(n, |b: usize| b.max(n)));
                }
            }
        }
        best
    }

    /// Value at `(x, t)` as a Grassmann element that contains θ explicitly.
    pub fn evaluate(&self, x: f64, t: f64) -> GrassmannElement {
        let chis: Vec<Complex64> = (0..2 * self.nmax)
            .map(|m| eval_chi(BasisMode::new(m), x, t))
            .collect();
        let theta = Monomial::generator(THETA);
        let mut terms = Vec::new();
        for (&m, v) in &self.parts {
            let mut even = Complex64::default();
            let mut odd = Complex64::default();
            for n in 0..self.nmax {
                even += v[n] * chis[2 * n];
                odd += v[self.nmax + n] * chis[2 * n + 1];
            }
            terms.push((m, even));
            if let Some((mt, s)) = m.mul(theta) {
                terms.push((mt, odd * s));
            }
        }
        GrassmannElement::from_terms(&self.algebra, terms)
    }
}

/// Super-Hermitian form from the orthonormality of the basis:
/// `(Φ|Φ') = Σ conj(c_n) c'_n + i Σ (-1)^{p(d'_n)} conj(d_n) d'_n`.
pub fn super_inner(a: &SuperVector, b: &SuperVector) -> Result<GrassmannElement> {
    a.check_compatible(b)?;
    let nmax = a.nmax;
    let alg = &a.algebra;
    let mut terms = Vec::new();
    for (&m1, v1) in &a.parts {
        let (cm1, s1) = m1.conj(alg);
        for (&m2, v2) in &b.parts {
            let Some((m, s)) = cm1.mul(m2) else { continue };
            let odd_sign = if m2.parity() == Parity::Odd { -1.0 } else { 1.0 };
            let mut even_sum = Complex64::default();
            let mut odd_sum = Complex64::default();
            for k in 0..nmax {
                even_sum += v1[k].conj() * v2[k];
                odd_sum += v1[nmax + k].conj() * v2[nmax + k];
            }
            let total = even_sum + I * odd_sum * odd_sign;
            terms.push((m, total * s * s1));
        }
    }
    Ok(GrassmannElement::from_terms(alg, terms))
}

/// Independent route to the super-Hermitian form: evaluates the full
/// integrand `conj(Φ₁) Φ₂ · i e^{-iθ̄θ}` as a Grassmann element at each
/// Gauss–Hermite node, integrates out θ and θ̄ and sums over x.
pub fn super_inner_berezin(
    a: &SuperVector,
    b: &SuperVector,
    t: f64,
    q: &QuadratureSpec,
) -> Result<GrassmannElement> {
    a.check_compatible(b)?;
    let alg = a.algebra.clone();
    let theta_bar_theta = GrassmannElement::word(&alg, &[THETA_BAR, THETA], Complex64::new(1.0, 0.0));
    // i · e^{-iθ̄θ} = i (1 - iθ̄θ)
    let weight = GrassmannElement::one(&alg)
        .sub(&theta_bar_theta.scale(I))?
        .scale(I);
    let rule = gauss_hermite(q.nodes);
    let scale = q.resolved_scale(t);
    let mut acc = GrassmannElement::zero(&alg);
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = scale * s;
        let f = a.evaluate(x, t);
        let g = b.evaluate(x, t);
        let integrand = f.conj().mul(&g)?.mul(&weight)?;
        let grassmann_integral = integrand.berezin(&[THETA, THETA_BAR])?;
        acc = acc.add(&grassmann_integral.scale(Complex64::new(w * scale, 0.0)))?;
    }
    Ok(acc)
}

/// `√(‖χ⁰‖² + ‖χ¹‖²)` over the pure-number parts of the coefficients.
pub fn norm(v: &SuperVector) -> f64 {
    v.body().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `(A⁺ Φ₁ | Φ₂) - (-1)^{p(Φ₁) p(A)} (Φ₁ | A Φ₂)`; zero certifies the claimed
/// superadjoint on this pair.
pub fn superadjoint_defect(
    op: &SuperOperator,
    phi1: &SuperVector,
    phi2: &SuperVector,
    claimed_adjoint: &SuperOperator,
) -> Result<GrassmannElement> {
    let p1 = phi1.grade().homogeneous().ok_or_else(|| {
        Error::Contract("superadjoint test needs a homogeneous first vector".into())
    })?;
    let pa = op
        .grade()
        .homogeneous()
        .ok_or_else(|| Error::Contract("operator must be homogeneous".into()))?;
    if claimed_adjoint.grade().homogeneous() != Some(pa) {
        return Err(Error::Contract(
            "claimed adjoint must have the parity of the operator".into(),
        ));
    }
    let lhs = super_inner(&claimed_adjoint.apply(phi1)?, phi2)?;
    let rhs = super_inner(phi1, &op.apply(phi2)?)?.scale(Complex64::new(p1.sign_with(pa), 0.0));
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{ALPHA, ALPHA_BAR};

    fn alg() -> Arc<GeneratorSet> {
        GeneratorSet::standard()
    }

    #[test]
    fn basis_products() {
        let e = SuperVector::basis(4, Parity::Even, 0);
        let o = SuperVector::basis(4, Parity::Odd, 0);
        assert_eq!(super_inner(&e, &e).unwrap().body(), Complex64::new(1.0, 0.0));
        assert_eq!(super_inner(&o, &o).unwrap().body(), I);
        assert!(super_inner(&e, &o).unwrap().is_zero());
    }

    #[test]
    fn odd_coefficient_sign() {
        let alpha = GrassmannElement::generator(&alg(), ALPHA);
        let v = SuperVector::basis(3, Parity::Odd, 0).scale_left(&alpha).unwrap();
        let got = super_inner(&v, &v).unwrap();
        // -i ᾱα
        let expected = GrassmannElement::word(&alg(), &[ALPHA_BAR, ALPHA], -I);
        assert!(got.distance(&expected) < 1e-15, "{got}");
        let oracle = super_inner_berezin(&v, &v, 0.0, &QuadratureSpec::default()).unwrap();
        assert!(oracle.distance(&expected) < 1e-12, "{oracle}");
    }

    #[test]
    fn norms() {
        assert!((norm(&SuperVector::basis(5, Parity::Even, 3)) - 1.0).abs() < 1e-15);
        let v = SuperVector::basis(5, Parity::Even, 0)
            .add(&SuperVector::basis(5, Parity::Odd, 0))
            .unwrap();
        assert!((norm(&v).powi(2) - 2.0).abs() < 1e-15);
        assert_eq!(norm(&SuperVector::zeros(5)), 0.0);
    }

    #[test]
    fn theta_coefficients_rejected() {
        let mut v = SuperVector::zeros(2);
        let th = GrassmannElement::generator(&alg(), THETA);
        assert!(matches!(v.set_coeff(Parity::Even, 0, &th), Err(Error::Contract(_))));
    }

    #[test]
    fn truncation_mismatch() {
        let a = SuperVector::zeros(2);
        let b = SuperVector::zeros(3);
        assert!(matches!(super_inner(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn resize_round_trip() {
        let v = SuperVector::basis(3, Parity::Odd, 2).add(&SuperVector::basis(3, Parity::Even, 1)).unwrap();
        let wide = v.resized(6);
        assert_eq!(wide.coeff(Parity::Odd, 2).body(), Complex64::new(1.0, 0.0));
        assert!(wide.resized(3).distance(&v).unwrap() == 0.0);
        assert!(v.resized(2).support_max_n() == Some(1));
    }

    #[test]
    fn grade_of_vectors() {
        let alpha = GrassmannElement::generator(&alg(), ALPHA);
        let even = SuperVector::basis(3, Parity::Even, 1);
        let odd_by_coeff = SuperVector::basis(3, Parity::Even, 1).scale_left(&alpha).unwrap();
        let envelope = even.add(&SuperVector::basis(3, Parity::Odd, 0).scale_left(&alpha).unwrap()).unwrap();
        assert_eq!(even.grade(), Grade::Even);
        assert_eq!(odd_by_coeff.grade(), Grade::Odd);
        assert_eq!(envelope.grade(), Grade::Even);
        assert!(even.add(&SuperVector::basis(3, Parity::Odd, 0)).unwrap().is_mixed());
    }
}
