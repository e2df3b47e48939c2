//! Verification of the superalgebra structure realized by the generator
//! matrices: supercommutator table, Jacobi identity, vacuum properties,
//! superadjoints and the free Hamiltonian.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{eval_chi_derivatives, BasisMode};
use crate::error::Result;
use crate::generators::{build_generator, GeneratorName, GeneratorName::*};
use crate::grassmann::{Grade, Parity};
use crate::operator::SuperOperator;
use crate::quadrature::{quad_inner, QuadratureSpec};
use crate::report::Check;
use crate::superspace::SuperVector;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Combination = Vec<(Complex64, GeneratorName)>;

/// The nonzero supercommutators, grouped into relation families.
pub fn relation_table() -> Vec<(&'static str, Vec<(GeneratorName, GeneratorName, Combination)>)> {
    let half = 0.5;
    vec![
        ("[K0,K±] = ±K±", vec![
            (K0, KPlus, vec![(c(1.0, 0.0), KPlus)]),
            (K0, KMinus, vec![(c(-1.0, 0.0), KMinus)]),
        ]),
        ("[K-,K+] = 2K0", vec![(KMinus, KPlus, vec![(c(2.0, 0.0), K0)])]),
        ("[K0,V±] = ±½V±", vec![
            (K0, VPlus, vec![(c(half, 0.0), VPlus)]),
            (K0, VMinus, vec![(c(-half, 0.0), VMinus)]),
        ]),
        ("[K0,W±] = ±½W±", vec![
            (K0, WPlus, vec![(c(half, 0.0), WPlus)]),
            (K0, WMinus, vec![(c(-half, 0.0), WMinus)]),
        ]),
        ("[K±,V∓] = ∓V±", vec![
            (KPlus, VMinus, vec![(c(-1.0, 0.0), VPlus)]),
            (KMinus, VPlus, vec![(c(1.0, 0.0), VMinus)]),
        ]),
        ("[K±,W∓] = ∓W±", vec![
            (KPlus, WMinus, vec![(c(-1.0, 0.0), WPlus)]),
            (KMinus, WPlus, vec![(c(1.0, 0.0), WMinus)]),
        ]),
        ("[B,V±] = ½V±", vec![
            (B, VPlus, vec![(c(half, 0.0), VPlus)]),
            (B, VMinus, vec![(c(half, 0.0), VMinus)]),
        ]),
        ("[B,W±] = -½W±", vec![
            (B, WPlus, vec![(c(-half, 0.0), WPlus)]),
            (B, WMinus, vec![(c(-half, 0.0), WMinus)]),
        ]),
        ("[V±,W±] = K±", vec![
            (VPlus, WPlus, vec![(c(1.0, 0.0), KPlus)]),
            (VMinus, WMinus, vec![(c(1.0, 0.0), KMinus)]),
        ]),
        ("[V±,W∓] = K0 ∓ B", vec![
            (VPlus, WMinus, vec![(c(1.0, 0.0), K0), (c(-1.0, 0.0), B)]),
            (VMinus, WPlus, vec![(c(1.0, 0.0), K0), (c(1.0, 0.0), B)]),
        ]),
    ]
}

/// The eight basic generators at one truncation, indexed like
/// [`GeneratorName::BASIC`].
pub struct GeneratorSetMatrices {
    pub nmax: usize,
    ops: Vec<SuperOperator>,
}

impl GeneratorSetMatrices {
    pub fn new(nmax: usize) -> Result<Self> {
        let ops = GeneratorName::BASIC
            .iter()
            .map(|&g| build_generator(g, nmax))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nmax, ops })
    }

    pub fn get(&self, name: GeneratorName) -> &SuperOperator {
        let idx = GeneratorName::BASIC
            .iter()
            .position(|&g| g == name)
            .expect("basic generator");
        &self.ops[idx]
    }

    pub fn combination(&self, terms: &[(Complex64, GeneratorName)], parity: Parity) -> Result<SuperOperator> {
        let mut acc = SuperOperator::zeros(self.nmax, parity, "0");
        for &(coef, g) in terms {
            acc = acc.add(&self.get(g).scale(coef))?;
        }
        Ok(acc)
    }

    /// Random complex combination of the basic generators of one parity.
    pub fn random_element(&self, parity: Parity, rng: &mut impl Rng) -> Result<SuperOperator> {
        let terms: Vec<_> = GeneratorName::BASIC
            .iter()
            .filter(|g| g.parity() == parity)
            .map(|&g| (c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), g))
            .collect();
        Ok(self.combination(&terms, parity)?.renamed(format!("rand{}", parity.bit())))
    }
}

/// Expected value of `[A, C]` from the table, using super-antisymmetry for
/// reversed pairs. `None` means the pair must vanish.
fn expected_commutator(a: GeneratorName, b: GeneratorName) -> Option<(Complex64, Combination)> {
    for (_, rels) in relation_table() {
        for (x, y, rhs) in rels {
            if (x, y) == (a, b) {
                return Some((c(1.0, 0.0), rhs));
            }
            if (x, y) == (b, a) {
                let sign = -x.parity().sign_with(y.parity());
                return Some((c(sign, 0.0), rhs));
            }
        }
    }
    None
}

/// Checks every listed relation family, the vanishing of all other pairs,
/// parity bookkeeping and the super-Jacobi identity on random triples.
pub fn verify_structure(nmax: usize, tol: f64, jacobi_triples: usize, seed: u64) -> Result<Vec<Check>> {
    let gens = GeneratorSetMatrices::new(nmax)?;
    let interior = nmax.saturating_sub(2);
    let mut checks = Vec::new();

    for (family, rels) in relation_table() {
        let mut worst: f64 = 0.0;
        for (a, b, rhs) in rels {
            let lhs = gens.get(a).supercommutator(gens.get(b))?;
            let parity = a.parity().add(b.parity());
            let rhs = gens.combination(&rhs, parity)?;
            worst = worst.max(lhs.sub(&rhs)?.max_abs_on_columns(interior));
        }
        checks.push(Check::new(family, "supercommutator table", worst, tol).with_modes(interior));
    }

    let mut worst: f64 = 0.0;
    let mut parity_ok = true;
    for &a in &GeneratorName::BASIC {
        for &b in &GeneratorName::BASIC {
            let comm = gens.get(a).supercommutator(gens.get(b))?;
            parity_ok &= comm.grade() == grade_of(a.parity().add(b.parity())) && comm.block_pattern_ok();
            match expected_commutator(a, b) {
                None => worst = worst.max(comm.max_abs_on_columns(interior)),
                Some((sign, rhs)) => {
                    let rhs = gens.combination(&rhs, a.parity().add(b.parity()))?.scale(sign);
                    worst = worst.max(comm.sub(&rhs)?.max_abs_on_columns(interior));
                }
            }
        }
    }
    checks.push(
        Check::new("all 64 ordered pairs (unlisted pairs vanish)", "supercommutator table", worst, tol)
            .with_modes(interior),
    );
    checks.push(Check::predicate("p([A,C]) = p(A) + p(C)", "parity bookkeeping", parity_ok));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..jacobi_triples {
        let ps: Vec<Parity> = (0..3)
            .map(|_| if rng.random_bool(0.5) { Parity::Odd } else { Parity::Even })
            .collect();
        let a = gens.random_element(ps[0], &mut rng)?;
        let b = gens.random_element(ps[1], &mut rng)?;
        let d = gens.random_element(ps[2], &mut rng)?;
        worst = worst.max(jacobi_defect(&a, &b, &d)?);
    }
    checks.push(Check::new(
        format!("super-Jacobi identity on {jacobi_triples} random triples"),
        "generalized Jacobi identity",
        worst,
        tol,
    ));
    Ok(checks)
}

fn grade_of(p: Parity) -> Grade {
    match p {
        Parity::Even => Grade::Even,
        Parity::Odd => Grade::Odd,
    }
}

/// `(-1)^{p_A p_D}[A,[B,D]] + (-1)^{p_B p_A}[B,[D,A]] + (-1)^{p_D p_B}[D,[A,B]]`,
/// measured relative to the largest single term.
pub fn jacobi_defect(a: &SuperOperator, b: &SuperOperator, d: &SuperOperator) -> Result<f64> {
    let pa = a.grade().homogeneous().expect("homogeneous");
    let pb = b.grade().homogeneous().expect("homogeneous");
    let pd = d.grade().homogeneous().expect("homogeneous");
    let t1 = a.supercommutator(&b.supercommutator(d)?)?.scale(c(pa.sign_with(pd), 0.0));
    let t2 = b.supercommutator(&d.supercommutator(a)?)?.scale(c(pb.sign_with(pa), 0.0));
    let t3 = d.supercommutator(&a.supercommutator(b)?)?.scale(c(pd.sign_with(pb), 0.0));
    let scale = t1.max_abs().max(t2.max_abs()).max(t3.max_abs()).max(1.0);
    Ok(t1.add(&t2)?.add(&t3)?.max_abs() / scale)
}

fn vector_defect(v: &SuperVector, expected: &SuperVector) -> Result<f64> {
    v.distance(expected)
}

/// Lowest-weight properties of the vacuum Ψ₀⁰, required to hold exactly.
pub fn vacuum_checks(nmax: usize) -> Result<Vec<Check>> {
    let gens = GeneratorSetMatrices::new(nmax)?;
    let vac = SuperVector::basis(nmax, Parity::Even, 0);
    let zero = SuperVector::zeros(nmax);
    let mut checks = Vec::new();
    let eigen = [(K0, 0.25), (B, -0.25)];
    for (g, value) in eigen {
        let d = vector_defect(&gens.get(g).apply(&vac)?, &vac.scale(c(value, 0.0)))?;
        checks.push(Check::new(format!("{g} Ψ₀⁰ = {value} Ψ₀⁰"), "vacuum", d, 0.0));
    }
    for g in [KMinus, VMinus, WPlus, WMinus] {
        let d = vector_defect(&gens.get(g).apply(&vac)?, &zero)?;
        checks.push(Check::new(format!("{g} Ψ₀⁰ = 0"), "vacuum", d, 0.0));
    }
    let raised = gens.get(VPlus).apply(&vac)?;
    checks.push(Check::predicate("V+ Ψ₀⁰ ≠ 0", "vacuum", raised.support_max_n().is_some()));
    Ok(checks)
}

/// The generators that leave Ψ₀⁰ invariant up to a scalar must be exactly
/// {K0, B, K-, V-, W+, W-}.
pub fn atypicality_check(nmax: usize) -> Result<Check> {
    let gens = GeneratorSetMatrices::new(nmax)?;
    let vac = SuperVector::basis(nmax, Parity::Even, 0);
    let mut isotropy = Vec::new();
    for &g in &GeneratorName::BASIC {
        let image = gens.get(g).apply(&vac)?;
        let along = image.coeff(Parity::Even, 0);
        let rest = image.sub(&vac.scale_left(&along)?)?;
        if rest.support_max_n().is_none() {
            isotropy.push(g);
        }
    }
    let expected = vec![K0, KMinus, B, VMinus, WPlus, WMinus];
    let mut got = isotropy.clone();
    got.sort();
    let mut want = expected;
    want.sort();
    let labels: Vec<String> = isotropy.iter().map(|g| g.label()).collect();
    Ok(Check::predicate(
        format!("isotropy of Ψ₀⁰ = {{{}}}", labels.join(", ")),
        "atypical representation",
        got == want,
    ))
}

/// Superadjoints of the basic generators against their expected partners.
pub fn superadjoint_table(nmax: usize, tol: f64) -> Result<Vec<Check>> {
    let gens = GeneratorSetMatrices::new(nmax)?;
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let table = [
        (K0, one, K0),
        (KPlus, one, KMinus),
        (KMinus, one, KPlus),
        (B, one, B),
        (VPlus, i, WMinus),
        (VMinus, i, WPlus),
        (WPlus, i, VMinus),
        (WMinus, i, VPlus),
    ];
    let mut checks = Vec::new();
    for (g, coef, partner) in table {
        let adj = gens.get(g).superadjoint()?;
        let expected = gens.get(partner).scale(coef);
        let prefix = if coef == i { "i" } else { "" };
        checks.push(Check::new(
            format!("{g}⁺ = {prefix}{partner}"),
            "conjugation properties",
            adj.sub(&expected)?.max_abs(),
            tol,
        ));
    }
    Ok(checks)
}

/// `(AC)⁺ = (-1)^{p(A)p(C)} C⁺A⁺` and `[A,C]⁺ = -[A⁺,C⁺]` on random
/// homogeneous combinations, plus involutivity.
pub fn superadjoint_relations(nmax: usize, pairs: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let gens = GeneratorSetMatrices::new(nmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut prod, mut comm, mut invol): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..pairs {
        let pa = if rng.random_bool(0.5) { Parity::Odd } else { Parity::Even };
        let pc = if rng.random_bool(0.5) { Parity::Odd } else { Parity::Even };
        let a = gens.random_element(pa, &mut rng)?;
        let cc = gens.random_element(pc, &mut rng)?;
        let scale = a.max_abs() * cc.max_abs() * nmax as f64;
        let lhs = a.mul(&cc)?.superadjoint()?;
        let rhs = cc.superadjoint()?.mul(&a.superadjoint()?)?.scale(c(pa.sign_with(pc), 0.0));
        prod = prod.max(lhs.sub(&rhs)?.max_abs() / scale);
        let lhs = a.supercommutator(&cc)?.superadjoint()?;
        let rhs = a.superadjoint()?.supercommutator(&cc.superadjoint()?)?.scale(c(-1.0, 0.0));
        comm = comm.max(lhs.sub(&rhs)?.max_abs() / scale);
        invol = invol.max(a.superadjoint()?.superadjoint()?.sub(&a)?.max_abs());
    }
    Ok(vec![
        Check::new("(AC)⁺ = (-1)^{p(A)p(C)} C⁺A⁺", "superadjoint algebra", prod, tol),
        Check::new("[A,C]⁺ = -[A⁺,C⁺]", "superadjoint algebra", comm, tol),
        Check::new("(A⁺)⁺ = A", "superadjoint algebra", invol, tol),
    ])
}

/// `X_j⁺ = (-1)^{p(X_j)} X_j` for the super-Hermitian base.
pub fn hermitian_base_check(nmax: usize, tol: f64) -> Result<Check> {
    let interior = nmax.saturating_sub(2);
    let mut worst: f64 = 0.0;
    for j in 1..=8u8 {
        let x = build_generator(X(j), nmax)?;
        let sign = if X(j).parity() == Parity::Odd { -1.0 } else { 1.0 };
        let d = x.superadjoint()?.sub(&x.scale(c(sign, 0.0)))?;
        worst = worst.max(d.max_abs_on_columns(interior));
    }
    Ok(Check::new("X_j⁺ = (-1)^{p(X_j)} X_j, j = 1..8", "super-Hermitian base", worst, tol).with_modes(interior))
}

/// The Hamiltonian two ways, plus the pointwise identity `h χ_m = -∂ₓ² χ_m`
/// and its quadrature matrix elements.
pub fn hamiltonian_check(
    nmax: usize,
    max_mode: usize,
    q: &QuadratureSpec,
    tol_matrix: f64,
    tol_pointwise: f64,
) -> Result<Vec<Check>> {
    let interior = nmax.saturating_sub(2);
    let h = build_generator(Hamiltonian, nmax)?;
    let a = build_generator(APlus, nmax)?.add(&build_generator(AMinus, nmax)?)?;
    let squared = a.mul(&a)?;
    let mut checks = vec![
        Check::new("½K+ + ½K- + K0 = (a⁺ + a⁻)²", "Hamiltonian element", h.sub(&squared)?.max_abs_on_columns(interior), tol_matrix)
            .with_modes(interior),
        Check::predicate("h preserves sectors", "Hamiltonian element", h.grade() == Grade::Even && h.block_pattern_ok()),
    ];

    let chi_slot = |m: usize| {
        let mode = BasisMode::new(m);
        (mode.sector(), mode.n())
    };
    let mut pointwise: f64 = 0.0;
    let mut elements: f64 = 0.0;
    for m in 0..=max_mode.min(2 * nmax - 3) {
        let (sector, n) = chi_slot(m);
        let image = h.apply(&SuperVector::basis(nmax, sector, n))?;
        let expansion = |x: f64, t: f64| {
            let mut acc = Complex64::default();
            for k in 0..(2 * nmax) {
                let (s, j) = chi_slot(k);
                let coef = image.coeff(s, j).body();
                if coef != Complex64::default() {
                    acc += coef * crate::basis::eval_chi(BasisMode::new(k), x, t);
                }
            }
            acc
        };
        for &t in &[0.0, 0.5, 1.5] {
            for &x in &[-2.5, -0.7, 0.0, 0.9, 3.1] {
                let direct = -eval_chi_derivatives(BasisMode::new(m), x, t).dxx;
                pointwise = pointwise.max((expansion(x, t) - direct).norm());
            }
            for k in 0..=(m + 2) {
                let numeric = quad_inner(
                    |x| crate::basis::eval_chi(BasisMode::new(k), x, t),
                    |x| -eval_chi_derivatives(BasisMode::new(m), x, t).dxx,
                    t,
                    q,
                )?;
                let (s, j) = chi_slot(k);
                elements = elements.max((numeric - image.coeff(s, j).body()).norm());
            }
        }
    }
    checks.push(Check::new(
        format!("h χ_m = -∂ₓ² χ_m pointwise, m ≤ {max_mode}"),
        "Hamiltonian element",
        pointwise,
        tol_pointwise,
    ));
    checks.push(Check::new(
        format!("⟨χ_k| -∂ₓ² |χ_m⟩ by quadrature, m ≤ {max_mode}"),
        "Hamiltonian element",
        elements,
        tol_pointwise,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_holds_at_default_truncation() {
        for check in verify_structure(32, 1e-12, 20, 7).unwrap() {
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn structure_holds_at_small_truncation() {
        for check in verify_structure(8, 1e-12, 5, 1).unwrap() {
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn wrong_relation_detected() {
        let gens = GeneratorSetMatrices::new(10).unwrap();
        let comm = gens.get(VPlus).supercommutator(gens.get(WMinus)).unwrap();
        let wrong = gens.get(K0).add(gens.get(B)).unwrap();
        assert!(comm.sub(&wrong).unwrap().max_abs_on_columns(8) > 0.1);
    }

    #[test]
    fn vacuum_and_atypicality() {
        for check in vacuum_checks(6).unwrap() {
            assert!(check.pass, "{check:?}");
        }
        assert!(atypicality_check(6).unwrap().pass);
    }

    #[test]
    fn adjoints() {
        for check in superadjoint_table(12, 1e-12).unwrap() {
            assert!(check.pass, "{check:?}");
        }
        for check in superadjoint_relations(12, 10, 3, 1e-12).unwrap() {
            assert!(check.pass, "{check:?}");
        }
        assert!(hermitian_base_check(12, 1e-12).unwrap().pass);
    }

    #[test]
    fn k_plus_is_not_self_adjoint() {
        let kp = build_generator(KPlus, 8).unwrap();
        assert!(kp.superadjoint().unwrap().sub(&kp).unwrap().max_abs() > 0.5);
    }

    #[test]
    fn hamiltonian() {
        let q = QuadratureSpec::default();
        for check in hamiltonian_check(12, 6, &q, 1e-12, 1e-8).unwrap() {
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn vacuum_energy_by_quadrature() {
        let q = QuadratureSpec::default();
        let v = quad_inner(
            |x| crate::basis::eval_chi(BasisMode::new(0), x, 0.0),
            |x| -eval_chi_derivatives(BasisMode::new(0), x, 0.0).dxx,
            0.0,
            &q,
        )
        .unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-12);
    }
}
