use num_complex::Complex64;
use osp22::generators::{build_generator, GeneratorName};
use osp22::grassmann::{GeneratorSet, Parity};
use osp22::harness::{random_element, random_vector};
use osp22::operator::SuperOperator;
use osp22::quadrature::QuadratureSpec;
use osp22::structure::GeneratorSetMatrices;
use osp22::superspace::{norm, super_inner, super_inner_berezin, superadjoint_defect, SuperVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NMAX: usize = 6;

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_fast_form(seed in any::<u64>(), t in -2.0..2.0f64) {
        let mut r = rng(seed);
        let a = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let b = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let fast = super_inner(&a, &b).unwrap();
        let oracle = super_inner_berezin(&a, &b, t, &QuadratureSpec::default()).unwrap();
        prop_assert!(fast.distance(&oracle) < 1e-10);
    }

    #[test]
    fn conjugate_symmetry(seed in any::<u64>(), p1 in parity(), p2 in parity()) {
        let mut r = rng(seed);
        let a = random_vector(NMAX, NMAX, Some(p1), &mut r).unwrap();
        let b = random_vector(NMAX, NMAX, Some(p2), &mut r).unwrap();
        let left = super_inner(&a, &b).unwrap().conj();
        let right = super_inner(&b, &a).unwrap().scale(Complex64::new(p1.sign_with(p2), 0.0));
        prop_assert!(left.distance(&right) < 1e-12);
    }

    #[test]
    fn form_is_additive_in_each_slot(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let b = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let c = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let left = super_inner(&a, &b.add(&c).unwrap()).unwrap();
        let right = super_inner(&a, &b).unwrap().add(&super_inner(&a, &c).unwrap()).unwrap();
        prop_assert!(left.distance(&right) < 1e-12);
    }

    #[test]
    fn norm_is_a_norm(seed in any::<u64>(), s in -3.0..3.0f64) {
        let mut r = rng(seed);
        let a = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let b = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        prop_assert!(norm(&a.add(&b).unwrap()) <= norm(&a) + norm(&b) + 1e-12);
        prop_assert!((norm(&a.scale(Complex64::new(s, 0.0))) - s.abs() * norm(&a)).abs() < 1e-12);
    }

    #[test]
    fn claimed_adjoints_pass_the_test(seed in any::<u64>(), p1 in parity(), which in 0usize..8) {
        let mut r = rng(seed);
        let name = GeneratorName::BASIC[which];
        let op = build_generator(name, NMAX).unwrap();
        let phi1 = random_vector(NMAX, NMAX, Some(p1), &mut r).unwrap();
        let phi2 = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let d = superadjoint_defect(&op, &phi1, &phi2, &op.superadjoint().unwrap()).unwrap();
        prop_assert!(d.max_abs() < 1e-12);
    }

    #[test]
    fn superadjoint_reverses_products(seed in any::<u64>(), pa in parity(), pc in parity()) {
        let gens = GeneratorSetMatrices::new(NMAX).unwrap();
        let mut r = rng(seed);
        let a = gens.random_element(pa, &mut r).unwrap();
        let c = gens.random_element(pc, &mut r).unwrap();
        let left = a.mul(&c).unwrap().superadjoint().unwrap();
        let right = c.superadjoint().unwrap()
            .mul(&a.superadjoint().unwrap()).unwrap()
            .scale(Complex64::new(pa.sign_with(pc), 0.0));
        prop_assert!(left.sub(&right).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn supercommutator_is_super_antisymmetric(seed in any::<u64>(), pa in parity(), pc in parity()) {
        let gens = GeneratorSetMatrices::new(NMAX).unwrap();
        let mut r = rng(seed);
        let a = gens.random_element(pa, &mut r).unwrap();
        let c = gens.random_element(pc, &mut r).unwrap();
        let ac = a.supercommutator(&c).unwrap();
        let ca = c.supercommutator(&a).unwrap().scale(Complex64::new(-pa.sign_with(pc), 0.0));
        prop_assert!(ac.sub(&ca).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn operators_act_linearly_over_grassmann_scalars(seed in any::<u64>(), which in 0usize..8, pb in parity()) {
        let alg = GeneratorSet::standard();
        let mut r = rng(seed);
        let name = GeneratorName::BASIC[which];
        let op = build_generator(name, NMAX).unwrap();
        let beta = random_element(&alg, &mut r, &[4, 5], Some(pb), 2);
        let v = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let left = op.apply(&v.scale_left(&beta).unwrap()).unwrap();
        let right = op
            .apply(&v)
            .unwrap()
            .scale_left(&beta)
            .unwrap()
            .scale(Complex64::new(pb.sign_with(name.parity()), 0.0));
        prop_assert!(left.distance(&right).unwrap() < 1e-12);
    }

    #[test]
    fn product_is_composition(seed in any::<u64>(), pa in parity(), pc in parity()) {
        let gens = GeneratorSetMatrices::new(NMAX).unwrap();
        let mut r = rng(seed);
        let a = gens.random_element(pa, &mut r).unwrap();
        let c = gens.random_element(pc, &mut r).unwrap();
        let v = random_vector(NMAX, NMAX, None, &mut r).unwrap();
        let left = a.mul(&c).unwrap().apply(&v).unwrap();
        let right = a.apply(&c.apply(&v).unwrap()).unwrap();
        prop_assert!(left.distance(&right).unwrap() < 1e-12);
    }
}

#[test]
fn exponential_of_antihermitian_generator_is_unitary() {
    let n = 10;
    let kp = build_generator(GeneratorName::KPlus, n).unwrap();
    let km = build_generator(GeneratorName::KMinus, n).unwrap();
    let z = Complex64::new(0.2, -0.1);
    let u = kp.scale(z).sub(&km.scale(z.conj())).unwrap().exp().unwrap();
    let product = u.superadjoint().unwrap().mul(&u).unwrap();
    assert!(product.sub(&SuperOperator::identity(n)).unwrap().max_abs() < 1e-12);
    let v = SuperVector::basis(n, Parity::Odd, 3);
    let image = u.apply(&v).unwrap();
    let before = super_inner(&v, &v).unwrap();
    assert!(super_inner(&image, &image).unwrap().distance(&before) < 1e-12);
}
