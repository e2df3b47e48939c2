//! Supermatrices with Grassmann-valued entries acting on [`SuperVector`]s.
//!
//! An operator is stored as `Σ_m m · A_m`, a dense complex matrix per
//! Grassmann monomial. Entry `(i, j)` passes a scalar through with the grade
//! involution raised to `p_i + p_j`, so for an odd monomial `m'` the left
//! factor of a product picks up the sign flip of its off-diagonal blocks.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorSet, Grade, GrassmannElement, Monomial, Parity, THETA, THETA_BAR};
use crate::superspace::{slot_parity, SuperVector};

#[derive(Debug, Clone)]
pub struct SuperOperator {
    nmax: usize,
    grade: Grade,
    name: String,
    algebra: Arc<GeneratorSet>,
    parts: BTreeMap<Monomial, DMatrix<Complex64>>,
}

fn flip_off_diagonal(m: &DMatrix<Complex64>, nmax: usize) -> DMatrix<Complex64> {
    let mut out = m.clone();
    for j in 0..out.ncols() {
        for i in 0..out.nrows() {
            if (i < nmax) != (j < nmax) {
                out[(i, j)] = -out[(i, j)];
            }
        }
    }
    out
}

/// Complex product through four real products, which use the blocked
/// real kernel instead of the generic triple loop.
fn complex_matmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

fn grade_of(p: Parity) -> Grade {
    match p {
        Parity::Even => Grade::Even,
        Parity::Odd => Grade::Odd,
    }
}

fn accumulate<T>(map: &mut BTreeMap<Monomial, T>, m: Monomial, value: T)
where
    T: std::ops::AddAssign,
{
    match map.get_mut(&m) {
        Some(acc) => *acc += value,
        None => {
            map.insert(m, value);
        }
    }
}

impl SuperOperator {
    pub fn zeros(nmax: usize, parity: Parity, name: impl Into<String>) -> Self {
        Self {
            nmax,
            grade: grade_of(parity),
            name: name.into(),
            algebra: GeneratorSet::standard(),
            parts: BTreeMap::new(),
        }
    }

    pub fn identity(nmax: usize) -> Self {
        let mut op = Self::zeros(nmax, Parity::Even, "1");
        op.parts.insert(Monomial::ONE, DMatrix::identity(2 * nmax, 2 * nmax));
        op
    }

    /// Operator with complex entries; the block pattern must match `parity`.
    pub fn from_complex(
        nmax: usize,
        parity: Parity,
        name: impl Into<String>,
        matrix: DMatrix<Complex64>,
    ) -> Result<Self> {
        if matrix.nrows() != 2 * nmax || matrix.ncols() != 2 * nmax {
            return Err(Error::Dimension(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                2 * nmax,
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let mut op = Self::zeros(nmax, parity, name);
        op.parts.insert(Monomial::ONE, matrix);
        op.prune();
        if !op.block_pattern_ok() {
            return Err(Error::Contract(format!(
                "matrix entries of {} violate its declared parity",
                op.name
            )));
        }
        Ok(op)
    }

    fn prune(&mut self) {
        self.parts.retain(|_, a| a.iter().any(|c| *c != Complex64::default()));
    }

    fn with_parts(&self, grade: Grade, name: String, parts: BTreeMap<Monomial, DMatrix<Complex64>>) -> Self {
        let mut op = Self {
            nmax: self.nmax,
            grade,
            name,
            algebra: self.algebra.clone(),
            parts,
        };
        op.prune();
        op
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        2 * self.nmax
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    /// Modes `n` below this limit are unaffected by dropping the raising
    /// entries that leave the truncation.
    pub fn interior_limit(&self) -> usize {
        self.nmax.saturating_sub(2)
    }

    pub fn is_pure(&self) -> bool {
        self.parts.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn body(&self) -> DMatrix<Complex64> {
        self.parts
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.dim(), self.dim()))
    }

    pub fn entry(&self, i: usize, j: usize) -> GrassmannElement {
        GrassmannElement::from_terms(&self.algebra, self.parts.iter().map(|(&m, a)| (m, a[(i, j)])))
    }

    /// Every nonzero entry of the `m` part sits where
    /// `p_i + p_j + p(m)` equals the declared parity.
    pub fn block_pattern_ok(&self) -> bool {
        let Some(p) = self.grade.homogeneous() else {
            return true;
        };
        self.parts.iter().all(|(m, a)| {
            (0..a.nrows()).all(|i| {
                (0..a.ncols()).all(|j| {
                    a[(i, j)] == Complex64::default()
                        || slot_parity(i, self.nmax)
                            .add(slot_parity(j, self.nmax))
                            .add(m.parity())
                            == p
                })
            })
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nmax != other.nmax {
            return Err(Error::Dimension(format!(
                "truncations differ ({} vs {})",
                self.nmax, other.nmax
            )));
        }
        if *self.algebra != *other.algebra {
            return Err(Error::Config("operators over different generator sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let grade = if other.parts.is_empty() || self.grade == other.grade {
            self.grade
        } else if self.parts.is_empty() {
            other.grade
        } else {
            Grade::Mixed
        };
        let mut parts = self.parts.clone();
        for (&m, a) in &other.parts {
            accumulate(&mut parts, m, a.clone());
        }
        Ok(self.with_parts(grade, format!("({} + {})", self.name, other.name), parts))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let neg = other.scale(Complex64::new(-1.0, 0.0));
        Ok(self.add(&neg)?.renamed(format!("({} - {})", self.name, other.name)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let parts = self.parts.iter().map(|(&m, a)| (m, a * c)).collect();
        self.with_parts(self.grade, self.name.clone(), parts)
    }

    /// `β · A`: the scalar multiplies every entry from the left.
    pub fn scale_left(&self, beta: &GrassmannElement) -> Result<Self> {
        if **beta.algebra() != *self.algebra {
            return Err(Error::Config("scalar from a different generator set".into()));
        }
        if beta.mentions(THETA) || beta.mentions(THETA_BAR) {
            return Err(Error::Contract("scalar may not contain θ or θ̄".into()));
        }
        let grade = match (beta.grade().homogeneous(), self.grade.homogeneous()) {
            _ if beta.is_zero() => self.grade,
            (Some(pb), Some(pa)) => grade_of(pb.add(pa)),
            _ => Grade::Mixed,
        };
        let mut parts = BTreeMap::new();
        for (mb, cb) in beta.terms() {
            for (&ma, a) in &self.parts {
                if let Some((m, s)) = mb.mul(ma) {
                    accumulate(&mut parts, m, a * (cb * s));
                }
            }
        }
        Ok(self.with_parts(grade, format!("β·{}", self.name), parts))
    }

    /// Operator product `self ∘ other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let grade = match (self.grade.homogeneous(), other.grade.homogeneous()) {
            (Some(a), Some(b)) => grade_of(a.add(b)),
            _ => Grade::Mixed,
        };
        let mut parts = BTreeMap::new();
        for (&m1, a) in &self.parts {
            let twisted = flip_off_diagonal(a, self.nmax);
            for (&m2, b) in &other.parts {
                let Some((m, s)) = m1.mul(m2) else { continue };
                let left = if m2.parity() == Parity::Odd { &twisted } else { a };
                accumulate(&mut parts, m, complex_matmul(left, b) * Complex64::new(s, 0.0));
            }
        }
        Ok(self.with_parts(grade, format!("{}{}", self.name, other.name), parts))
    }

    pub fn apply(&self, v: &SuperVector) -> Result<SuperVector> {
        if v.nmax() != self.nmax {
            return Err(Error::Dimension(format!(
                "operator truncation {} applied to vector truncation {}",
                self.nmax,
                v.nmax()
            )));
        }
        let mut parts: BTreeMap<Monomial, DVector<Complex64>> = BTreeMap::new();
        for (&m1, a) in &self.parts {
            let twisted = flip_off_diagonal(a, self.nmax);
            for (&m2, x) in v.parts() {
                let Some((m, s)) = m1.mul(m2) else { continue };
                let left = if m2.parity() == Parity::Odd { &twisted } else { a };
                accumulate(&mut parts, m, (left * x) * Complex64::new(s, 0.0));
            }
        }
        Ok(SuperVector::from_parts(&self.algebra, self.nmax, parts))
    }

    /// `[A, C] = AC - (-1)^{p(A)p(C)} CA`.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        let (Some(pa), Some(pc)) = (self.grade.homogeneous(), other.grade.homogeneous()) else {
            return Err(Error::Contract(format!(
                "supercommutator of mixed-parity operators {} and {}",
                self.name, other.name
            )));
        };
        let ac = self.mul(other)?;
        let ca = other.mul(self)?.scale(Complex64::new(pa.sign_with(pc), 0.0));
        let mut out = ac.sub(&ca)?;
        out.grade = grade_of(pa.add(pc));
        Ok(out.renamed(format!("[{},{}]", self.name, other.name)))
    }

    /// Superadjoint with respect to the super-Hermitian form, whose Gram
    /// matrix is `1` on even slots and `i` on odd ones.
    pub fn superadjoint(&self) -> Result<Self> {
        let Some(pa) = self.grade.homogeneous() else {
            return Err(Error::Contract(format!("superadjoint of mixed-parity {}", self.name)));
        };
        if !self.is_pure() {
            return Err(Error::Contract(format!(
                "superadjoint of {} requires complex matrix entries",
                self.name
            )));
        }
        let a = self.body();
        let gram = |k: usize| match slot_parity(k, self.nmax) {
            Parity::Even => Complex64::new(1.0, 0.0),
            Parity::Odd => Complex64::new(0.0, 1.0),
        };
        let dim = self.dim();
        let adj = DMatrix::from_fn(dim, dim, |k, j| {
            let sign = slot_parity(j, self.nmax).sign_with(pa);
            gram(j).conj() * a[(j, k)].conj() / gram(k).conj() * sign
        });
        let mut out = Self::zeros(self.nmax, pa, format!("{}⁺", self.name));
        out.parts.insert(Monomial::ONE, adj);
        out.prune();
        Ok(out)
    }

    /// Largest entry modulus over all monomials.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_on_columns(self.dim())
    }

    /// Largest entry modulus restricted to columns of modes `n < limit` in
    /// both sectors.
    pub fn max_abs_on_columns(&self, limit: usize) -> f64 {
        let mut best: f64 = 0.0;
        for a in self.parts.values() {
            for j in 0..a.ncols() {
                if j % self.nmax >= limit {
                    continue;
                }
                for i in 0..a.nrows() {
                    best = best.max(a[(i, j)].norm());
                }
            }
        }
        best
    }

    fn norm1(&self) -> f64 {
        let dim = self.dim();
        (0..dim)
            .map(|j| {
                self.parts
                    .values()
                    .map(|a| (0..dim).map(|i| a[(i, j)].norm()).sum::<f64>())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// `exp(A)` for an even operator by scaling and squaring a Taylor series.
    pub fn exp(&self) -> Result<Self> {
        if self.grade != Grade::Even {
            return Err(Error::Contract(format!("exponential of non-even {}", self.name)));
        }
        let norm = self.norm1();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let scaled = self.scale(Complex64::new(0.5f64.powi(squarings), 0.0));
        let mut result = Self::identity(self.nmax);
        let mut term = Self::identity(self.nmax);
        for k in 1..=60 {
            term = term.mul(&scaled)?.scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term)?;
            if term.max_abs() < 1e-18 * result.max_abs().max(1.0) {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result)?;
        }
        result.grade = Grade::Even;
        Ok(result.renamed(format!("exp({})", self.name)))
    }
}
