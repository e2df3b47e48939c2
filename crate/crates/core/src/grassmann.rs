//! Finite complex exterior algebra over an ordered set of odd generators.
//!
//! Monomials are stored as bitmasks whose bit order is the canonical
//! generator order of the owning [`GeneratorSet`]; a monomial always denotes
//! the product of its generators taken in ascending bit order. All signs come
//! from counting transpositions against that order, so two elements are equal
//! iff their coefficient maps are equal.
//!
//! Conjugation maps `conj(ab) = conj(a) conj(b)` without reversing factors,
//! and the Berezin integral is normalized by `∫ θ̄θ dθ dθ̄ = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const THETA: usize = 0;
pub const THETA_BAR: usize = 1;
pub const ALPHA: usize = 2;
pub const ALPHA_BAR: usize = 3;
pub const XI: usize = 4;
pub const XI_BAR: usize = 5;

const MAX_GENERATORS: usize = 32;

/// Ordered list of odd generators together with their conjugation partners.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    names: Vec<String>,
    partner: Vec<usize>,
    drop_tol: f64,
}

impl GeneratorSet {
    /// Builds a generator set from names in canonical order and the list of
    /// conjugate pairs. Generators absent from `pairs` are self-conjugate.
    pub fn new<S: Into<String>>(names: Vec<S>, pairs: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_GENERATORS {
            return Err(Error::Config(format!(
                "at most {MAX_GENERATORS} generators are supported, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Config(format!("duplicate generator name {n:?}")));
            }
        }
        let mut partner: Vec<usize> = (0..names.len()).collect();
        let mut seen = vec![false; names.len()];
        for &(a, b) in pairs {
            if a >= names.len() || b >= names.len() {
                return Err(Error::Config(format!("pair ({a}, {b}) out of range")));
            }
            if seen[a] || seen[b] {
                return Err(Error::Config(format!(
                    "generator paired twice in ({a}, {b})"
                )));
            }
            seen[a] = true;
            seen[b] = true;
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Self {
            names,
            partner,
            drop_tol: 0.0,
        })
    }

    /// The set (θ, θ̄, α, ᾱ, ξ, ξ̄) used throughout the crate.
    pub fn standard() -> Arc<GeneratorSet> {
        static STANDARD: OnceLock<Arc<GeneratorSet>> = OnceLock::new();
        STANDARD
            .get_or_init(|| {
                Arc::new(
                    GeneratorSet::new(
                        vec!["θ", "θ̄", "α", "ᾱ", "ξ", "ξ̄"],
                        &[(THETA, THETA_BAR), (ALPHA, ALPHA_BAR), (XI, XI_BAR)],
                    )
                    .expect("standard generator set is valid"),
                )
            })
            .clone()
    }

    /// Coefficients with modulus at or below `tol` are dropped after every
    /// operation. Zero keeps arithmetic exact.
    pub fn with_drop_tol(mut self, tol: f64) -> Self {
        self.drop_tol = tol.max(0.0);
        self
    }

    pub fn drop_tol(&self) -> f64 {
        self.drop_tol
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    /// Looks up a generator by its name or an ASCII alias such as
    /// `theta_bar` or `alphabar`.
    pub fn index(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i);
        }
        let canonical = match name.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "theta" => "θ",
            "thetabar" => "θ̄",
            "alpha" => "α",
            "alphabar" => "ᾱ",
            "xi" => "ξ",
            "xibar" => "ξ̄",
            _ => return Err(Error::UnknownGenerator(name.to_string())),
        };
        self.names
            .iter()
            .position(|n| n == canonical)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// Product of distinct generators, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(i: usize) -> Self {
        Monomial(1 << i)
    }

    pub fn from_bits(bits: u32) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> Parity {
        Parity::from_degree(self.degree())
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Generator indices in canonical order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_GENERATORS).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// `self · other` rewritten in canonical order, or `None` when a
    /// generator repeats.
    pub fn mul(self, other: Monomial) -> Option<(Monomial, f64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` moves left past the higher generators of `self`.
        let mut swaps = 0;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
        Some((Monomial(self.0 | other.0), sign))
    }

    /// Replaces each generator by its partner in place and re-sorts.
    pub fn conj(self, set: &GeneratorSet) -> (Monomial, f64) {
        let mapped: Vec<usize> = self.indices().map(|i| set.partner(i)).collect();
        let mut inversions = 0;
        for a in 0..mapped.len() {
            for b in a + 1..mapped.len() {
                if mapped[a] > mapped[b] {
                    inversions += 1;
                }
            }
        }
        let bits = mapped.iter().fold(0u32, |acc, &i| acc | (1 << i));
        (Monomial(bits), if inversions % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn display(self, set: &GeneratorSet) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices().map(|i| set.name(i)).collect()
    }
}

/// Z₂ grade of a homogeneous object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_degree(d: u32) -> Self {
        if d % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_degree(self.bit() + other.bit())
    }

    /// `(-1)^(p(a) p(b))`.
    pub fn sign_with(self, other: Parity) -> f64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1.0
        } else {
            1.0
        }
    }
}

/// Result of a parity query on a possibly inhomogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Even,
    Odd,
    Mixed,
}

impl Grade {
    pub fn homogeneous(self) -> Option<Parity> {
        match self {
            Grade::Even => Some(Parity::Even),
            Grade::Odd => Some(Parity::Odd),
            Grade::Mixed => None,
        }
    }
}

/// One serialized term of a Grassmann element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub monomial: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone)]
pub struct GrassmannElement {
    algebra: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Complex64>,
}

impl GrassmannElement {
    pub fn zero(algebra: &Arc<GeneratorSet>) -> Self {
        Self {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(algebra: &Arc<GeneratorSet>, c: Complex64) -> Self {
        Self::from_terms(algebra, [(Monomial::ONE, c)])
    }

    pub fn one(algebra: &Arc<GeneratorSet>) -> Self {
        Self::scalar(algebra, Complex64::new(1.0, 0.0))
    }

    pub fn generator(algebra: &Arc<GeneratorSet>, i: usize) -> Self {
        assert!(i < algebra.len(), "generator index {i} out of range");
        Self::from_terms(algebra, [(Monomial::generator(i), Complex64::new(1.0, 0.0))])
    }

    /// Builds an element from `(monomial, coefficient)` pairs; repeated
    /// monomials accumulate.
    pub fn from_terms<I>(algebra: &Arc<GeneratorSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut out = Self::zero(algebra);
        for (m, c) in terms {
            *out.terms.entry(m).or_default() += c;
        }
        out.prune();
        out
    }

    /// Product of the named generators in the given (not necessarily
    /// canonical) order, times `c`.
    pub fn word(algebra: &Arc<GeneratorSet>, gens: &[usize], c: Complex64) -> Self {
        let mut m = Monomial::ONE;
        let mut sign = 1.0;
        for &g in gens {
            match m.mul(Monomial::generator(g)) {
                Some((next, s)) => {
                    m = next;
                    sign *= s;
                }
                None => return Self::zero(algebra),
            }
        }
        Self::from_terms(algebra, [(m, c * sign)])
    }

    pub fn algebra(&self) -> &Arc<GeneratorSet> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The pure-number part.
    pub fn body(&self) -> Complex64 {
        self.coeff(Monomial::ONE)
    }

    /// Everything but the body.
    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Monomial::ONE);
        out
    }

    fn prune(&mut self) {
        let tol = self.algebra.drop_tol();
        self.terms.retain(|_, c| c.norm() > tol || (tol == 0.0 && *c != Complex64::default()));
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::Config(
                "Grassmann elements belong to different generator sets".into(),
            ))
        }
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.algebra);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if let Some((m, s)) = ma.mul(mb) {
                    *out.terms.entry(m).or_default() += ca * cb * s;
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            *out.terms.entry(m).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    /// Complex conjugation: coefficients are conjugated and every generator
    /// is replaced by its partner without reversing the factor order.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (&m, &c) in &self.terms {
            let (mc, s) = m.conj(&self.algebra);
            *out.terms.entry(mc).or_default() += c.conj() * s;
        }
        out.prune();
        out
    }

    /// Iterated Berezin integral `∫ a d g₁ d g₂ …`, innermost (`g₁`) first.
    /// Each step moves the generator to the right end of the monomial and
    /// strips it, so `∫ θ̄θ dθ dθ̄ = 1`.
    pub fn berezin(&self, over: &[usize]) -> Result<Self> {
        let mut cur = self.clone();
        for &g in over {
            if g >= self.algebra.len() {
                return Err(Error::Config(format!("generator index {g} out of range")));
            }
            let mut next = Self::zero(&self.algebra);
            for (&m, &c) in &cur.terms {
                if !m.contains(g) {
                    continue;
                }
                let after = (m.bits() >> (g + 1)).count_ones();
                let s = if after % 2 == 0 { 1.0 } else { -1.0 };
                let rest = Monomial::from_bits(m.bits() & !(1 << g));
                *next.terms.entry(rest).or_default() += c * s;
            }
            next.prune();
            cur = next;
        }
        Ok(cur)
    }

    pub fn grade(&self) -> Grade {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            match m.parity() {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        match (even, odd) {
            (_, false) => Grade::Even,
            (false, true) => Grade::Odd,
            (true, true) => Grade::Mixed,
        }
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.parity() == Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.parity() == Parity::Odd)
    }

    /// Grade involution: flips the sign of the odd part.
    pub fn involute(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in out.terms.iter_mut() {
            if m.parity() == Parity::Odd {
                *c = -*c;
            }
        }
        out
    }

    fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|&m, _| keep(m));
        out
    }

    /// True when some monomial contains generator `i`.
    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.contains(i))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for (&m, &c) in &self.terms {
            d = d.max((c - other.coeff(m)).norm());
        }
        for (&m, &c) in &other.terms {
            if !self.terms.contains_key(&m) {
                d = d.max(c.norm());
            }
        }
        d
    }

    /// Evaluates an analytic function on an element with nonzero body via
    /// `f(b + s) = Σ f⁽ᵏ⁾(b) sᵏ / k!`; the sum stops once `sᵏ` vanishes.
    /// `derivs(b, k)` must return `f⁽ᵏ⁾(b)`.
    pub fn apply_fn(&self, derivs: impl Fn(Complex64, usize) -> Complex64) -> Self {
        let b = self.body();
        let s = self.soul();
        let mut out = Self::scalar(&self.algebra, derivs(b, 0));
        let mut power = Self::one(&self.algebra);
        let mut fact = 1.0;
        for k in 1.. {
            power = power.mul(&s).expect("same algebra");
            if power.is_zero() {
                break;
            }
            fact *= k as f64;
            out = out
                .add(&power.scale(derivs(b, k) / fact))
                .expect("same algebra");
        }
        out
    }

    /// `self^p` for an element with nonzero body, principal branch.
    pub fn powf(&self, p: f64) -> Self {
        self.apply_fn(|b, k| {
            let mut falling = 1.0;
            for j in 0..k {
                falling *= p - j as f64;
            }
            b.powf(p - k as f64) * falling
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.body() == Complex64::default() {
            return Err(Error::Domain("element with zero body is not invertible".into()));
        }
        Ok(self.powf(-1.0))
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                monomial: m.display(&self.algebra),
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    pub fn from_serialized(algebra: &Arc<GeneratorSet>, terms: &[Term]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let m = parse_monomial(algebra, &t.monomial)?;
            out.push((m, Complex64::new(t.re, t.im)));
        }
        Ok(Self::from_terms(algebra, out))
    }
}

/// Parses a canonical-order monomial string such as `"αᾱ"` or `"1"`.
pub fn parse_monomial(algebra: &GeneratorSet, s: &str) -> Result<Monomial> {
    if s == "1" || s.is_empty() {
        return Ok(Monomial::ONE);
    }
    let mut rest = s;
    let mut bits = 0u32;
    let mut last: Option<usize> = None;
    while !rest.is_empty() {
        // Longest name first so "θ̄" is not read as "θ".
        let hit = (0..algebra.len())
            .filter(|&i| rest.starts_with(algebra.name(i)))
            .max_by_key(|&i| algebra.name(i).len())
            .ok_or_else(|| Error::UnknownGenerator(rest.to_string()))?;
        if last.is_some_and(|l| l >= hit) {
            return Err(Error::Config(format!("monomial {s:?} is not in canonical order")));
        }
        bits |= 1 << hit;
        last = Some(hit);
        rest = &rest[algebra.name(hit).len()..];
    }
    Ok(Monomial::from_bits(bits))
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == Monomial::ONE {
                    format!("({c})")
                } else {
                    format!("({c}){}", m.display(&self.algebra))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;

    /// Panics on mismatched generator sets; use [`GrassmannElement::mul`] to
    /// get an error instead.
    fn mul(self, rhs: Self) -> GrassmannElement {
        GrassmannElement::mul(self, rhs).expect("mismatched generator sets")
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, rhs: Self) -> GrassmannElement {
        GrassmannElement::add(self, rhs).expect("mismatched generator sets")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, rhs: Self) -> GrassmannElement {
        GrassmannElement::sub(self, rhs).expect("mismatched generator sets")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g(i: usize) -> GrassmannElement {
        GrassmannElement::generator(&GeneratorSet::standard(), i)
    }

    fn one() -> GrassmannElement {
        GrassmannElement::one(&GeneratorSet::standard())
    }

    #[test]
    fn nilpotency() {
        assert!((&g(THETA) * &g(THETA)).is_zero());
    }

    #[test]
    fn anticommutation_against_canonical_order() {
        let lhs = &g(THETA_BAR) * &g(THETA);
        let rhs = -&(&g(THETA) * &g(THETA_BAR));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.coeff(Monomial::from_bits(0b11)), c(-1.0, 0.0));
    }

    #[test]
    fn expansion_without_sign_flips() {
        let a = &one() + &g(THETA);
        let b = &one() + &g(THETA_BAR);
        let expected = &(&(&one() + &g(THETA)) + &g(THETA_BAR)) + &(&g(THETA) * &g(THETA_BAR));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn conj_of_theta_bar_is_theta() {
        assert_eq!(g(THETA_BAR).conj(), g(THETA));
    }

    #[test]
    fn conj_keeps_factor_order() {
        // Hand expansion: conj(i ᾱα) = (-i) α ᾱ = (-i)(-ᾱα) = i ᾱα.
        let alg = GeneratorSet::standard();
        let a = GrassmannElement::word(&alg, &[ALPHA_BAR, ALPHA], c(0.0, 1.0));
        assert_eq!(a.conj(), a);
        // and the canonical form is -i αᾱ
        assert_eq!(a.coeff(Monomial::from_bits(0b1100)), c(0.0, -1.0));
    }

    #[test]
    fn conj_of_scalar() {
        let alg = GeneratorSet::standard();
        let s = GrassmannElement::scalar(&alg, c(1.5, -2.0));
        assert_eq!(s.conj().body(), c(1.5, 2.0));
    }

    #[test]
    fn berezin_normalization() {
        let alg = GeneratorSet::standard();
        let tbt = GrassmannElement::word(&alg, &[THETA_BAR, THETA], c(1.0, 0.0));
        assert_eq!(tbt.berezin(&[THETA, THETA_BAR]).unwrap(), one());
        assert!(one().berezin(&[THETA, THETA_BAR]).unwrap().is_zero());
        let mixed = &tbt.scale(c(0.5, 2.0)) + &g(THETA).scale(c(3.0, 0.0));
        let r = mixed.berezin(&[THETA, THETA_BAR]).unwrap();
        assert_eq!(r, GrassmannElement::scalar(&alg, c(0.5, 2.0)));
    }

    #[test]
    fn grade_queries() {
        assert_eq!((&g(THETA) * &g(THETA_BAR)).grade(), Grade::Even);
        assert_eq!(g(ALPHA).grade(), Grade::Odd);
        assert_eq!((&one() + &g(THETA)).grade(), Grade::Mixed);
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let other = Arc::new(GeneratorSet::new(vec!["η"], &[]).unwrap());
        let a = GrassmannElement::generator(&other, 0);
        assert!(matches!(a.mul(&g(THETA)), Err(Error::Config(_))));
    }

    #[test]
    fn drop_tolerance_prunes() {
        let alg = Arc::new(
            GeneratorSet::new(vec!["a", "b"], &[(0, 1)])
                .unwrap()
                .with_drop_tol(1e-8),
        );
        let x = GrassmannElement::from_terms(
            &alg,
            [(Monomial::ONE, c(1.0, 0.0)), (Monomial::generator(0), c(1e-10, 0.0))],
        );
        assert_eq!(x.terms().count(), 1);
    }

    #[test]
    fn powf_of_nilpotent_shift() {
        let alg = GeneratorSet::standard();
        let aa = GrassmannElement::word(&alg, &[ALPHA_BAR, ALPHA], c(0.0, 0.5));
        let x = &one().scale(c(4.0, 0.0)) + &aa;
        let r = x.powf(-0.5);
        let back = &(&r * &r) * &x;
        assert!(back.distance(&one()) < 1e-15);
    }

    #[test]
    fn serialization_round_trip() {
        let alg = GeneratorSet::standard();
        let x = &GrassmannElement::word(&alg, &[ALPHA, ALPHA_BAR], c(0.25, -1.0))
            + &g(THETA_BAR).scale(c(2.0, 0.0));
        let terms = x.to_terms();
        assert_eq!(terms[0].monomial, "θ̄");
        assert_eq!(terms[1].monomial, "αᾱ");
        assert_eq!(GrassmannElement::from_serialized(&alg, &terms).unwrap(), x);
    }

    #[test]
    fn ascii_aliases() {
        let alg = GeneratorSet::standard();
        assert_eq!(alg.index("alpha_bar").unwrap(), ALPHA_BAR);
        assert_eq!(alg.index("θ̄").unwrap(), THETA_BAR);
        assert!(alg.index("zeta").is_err());
    }
}
