use num_complex::Complex64;
use osp22::coherent::{coherent_closed, coherent_crosscheck, coherent_series, CoherentParams, SERIES_CAP};
use osp22::export::{profile, Grid};
use osp22::generators::GeneratorName;
use osp22::grassmann::GrassmannElement;
use osp22::superspace::super_inner;
use osp22::symbols::{affine_fit, closed_form_symbol, generator_symbol, trajectory, Convention};
use proptest::prelude::*;

fn disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, phase)| Complex64::from_polar(r, phase))
}

fn alpha() -> impl Strategy<Value = Complex64> {
    (-1.5..1.5f64, -1.5..1.5f64).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn routes_agree(z in disk(0.75), a in alpha(), t in -1.5..1.5f64) {
        let r = coherent_crosscheck(&CoherentParams::new(z, a).unwrap(), t, SERIES_CAP).unwrap();
        prop_assert!(r.max_route_defect() < 1e-8, "{r:?}");
        prop_assert!(r.residual < 1e-6, "{r:?}");
    }

    #[test]
    fn states_are_normalized(z in disk(0.8), a in alpha(), t in -1.0..1.0f64) {
        let p = CoherentParams::new(z, a).unwrap();
        let s = coherent_series(&p, SERIES_CAP).unwrap();
        let one = GrassmannElement::one(s.algebra());
        prop_assert!(super_inner(&s, &s).unwrap().distance(&one) < 1e-12);
        let closed = coherent_closed(&p, t).unwrap().super_norm(200).unwrap();
        prop_assert!(closed.distance(&one) < 1e-12);
    }

    #[test]
    fn symbols_match_closed_forms(z in disk(0.7), a in alpha(), which in 0usize..8) {
        let p = CoherentParams::new(z, a).unwrap();
        let name = GeneratorName::BASIC[which];
        let computed = generator_symbol(name, &p, SERIES_CAP).unwrap();
        let expected = closed_form_symbol(name, &p, Convention::Conjugate).unwrap();
        prop_assert!(computed.distance(&expected) < 1e-8, "{name}: {computed} vs {expected}");
    }

    #[test]
    fn k_plus_and_k_minus_bodies_are_conjugate(z in disk(0.7)) {
        let p = CoherentParams::new(z, Complex64::default()).unwrap();
        let kp = generator_symbol(GeneratorName::KPlus, &p, SERIES_CAP).unwrap().body();
        let km = generator_symbol(GeneratorName::KMinus, &p, SERIES_CAP).unwrap().body();
        prop_assert!((km - kp.conj()).norm() < 1e-12);
    }

    #[test]
    fn odd_trajectory_is_a_line(z in disk(0.7), a in alpha()) {
        let p = CoherentParams::new(z, a).unwrap();
        let pts = trajectory(&p, &[0.0, 0.7, 1.9, 3.2], SERIES_CAP, 200).unwrap();
        let samples: Vec<_> = pts.iter().map(|pt| (pt.t, pt.x_theta)).collect();
        let (intercept, slope, residual) = affine_fit(&samples);
        prop_assert!(residual < 1e-10);
        let a_bar = a.conj();
        prop_assert!((intercept - pts[0].x0 * a_bar).norm() < 1e-8);
        prop_assert!((slope - 2.0 * pts[0].p0 * a_bar).norm() < 1e-8);
        for pt in &pts {
            prop_assert!(pt.mean_x < 1e-10 && pt.mean_p < 1e-10);
        }
    }

    #[test]
    fn profile_normalization_and_node(z in disk(0.8), t in -2.0..2.0f64) {
        let p = CoherentParams::new(z, Complex64::new(1.0, 0.0)).unwrap();
        prop_assert!((profile(&p, t, None).unwrap().psi_mass() - 1.0).abs() < 1e-8);
        let at_origin = profile(&p, t, Some(Grid::new(-1.0, 1.0, 3).unwrap())).unwrap();
        prop_assert!(at_origin.rows[1].phi.norm() < 1e-15);
    }
}

#[test]
fn boundary_points_are_rejected() {
    assert!(CoherentParams::new(Complex64::new(0.6, 0.8), Complex64::default()).is_err());
    let near = CoherentParams::new(Complex64::new(0.99, 0.0), Complex64::default()).unwrap();
    assert!(coherent_series(&near, SERIES_CAP).is_err());
}
