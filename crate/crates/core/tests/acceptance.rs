//! Acceptance gate: every criterion at its stated tolerance, one line each.
//! Runs without the libtest harness so the summary is always printed.

use std::time::Instant;

use num_complex::Complex64;
use osp22::config::RunConfig;
use osp22::harness::{self, GRASSMANN_CASES};
use osp22::report::Check;
use osp22::Result;

struct Criterion {
    number: usize,
    title: &'static str,
    run: fn(&RunConfig) -> Result<Vec<Check>>,
}

fn grassmann(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::grassmann_axioms(cfg, GRASSMANN_CASES)
}

fn basis(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::basis_integrity(cfg)
}

fn ladder(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::ladder_derivation(cfg)
}

fn table(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::structure_checks(cfg)
}

fn vacuum(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::vacuum_checks(cfg)
}

fn adjoints(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = harness::adjoint_checks(cfg)?;
    checks.extend(harness::superspace_checks(cfg)?);
    Ok(checks)
}

fn routes(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::coherent_route_checks(cfg)
}

fn symbols(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::symbol_checks(cfg)
}

fn trajectory(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::trajectory_checks(cfg)
}

fn isometry(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::isometry_checks(cfg)
}

fn hamiltonian(cfg: &RunConfig) -> Result<Vec<Check>> {
    harness::hamiltonian_checks(cfg)
}

const CRITERIA: [Criterion; 11] = [
    Criterion { number: 1, title: "Grassmann axioms", run: grassmann },
    Criterion { number: 2, title: "basis integrity", run: basis },
    Criterion { number: 3, title: "ladder derivation", run: ladder },
    Criterion { number: 4, title: "supercommutator table and super-Jacobi", run: table },
    Criterion { number: 5, title: "vacuum and atypicality", run: vacuum },
    Criterion { number: 6, title: "superadjoint table and Berezin oracle", run: adjoints },
    Criterion { number: 7, title: "coherent-state routes and normalization", run: routes },
    Criterion { number: 8, title: "Berezin symbols", run: symbols },
    Criterion { number: 9, title: "odd-sector trajectory", run: trajectory },
    Criterion { number: 10, title: "displacement superisometry", run: isometry },
    Criterion { number: 11, title: "Hamiltonian element", run: hamiltonian },
];

/// The gate's own configuration, written out so a change of defaults
/// cannot silently loosen it.
fn gate_config() -> RunConfig {
    let mut cfg = RunConfig::default();
    cfg.nmax = 32;
    cfg.nodes = 200;
    cfg.tolerances.algebra = 1e-12;
    cfg.tolerances.quadrature = 1e-10;
    cfg.tolerances.coherent = 1e-8;
    cfg.tolerances.residual = 1e-6;
    cfg.tolerances.isometry = 1e-6;
    cfg.z_samples = vec![
        Complex64::new(0.3, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.7, 0.0),
        Complex64::from_polar(0.8, std::f64::consts::FRAC_PI_4),
    ];
    cfg.t_samples = vec![0.0, 1.0];
    cfg
}

fn main() {
    let cfg = gate_config();
    cfg.validate().expect("gate configuration is valid");
    let start = Instant::now();
    let outcomes: Vec<(usize, &str, Vec<Check>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|c| {
                let cfg = &cfg;
                scope.spawn(move || (c.number, c.title, harness::run_group(c.title, c.run, cfg)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });

    let mut failures = 0;
    for (number, title, checks) in &outcomes {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        let worst = checks
            .iter()
            .filter(|c| c.tolerance > 0.0)
            .map(|c| c.defect / c.tolerance)
            .fold(0.0, f64::max);
        println!(
            "criterion {number:>2} {}: {title} ({} checks, worst defect/tolerance {worst:.2e})",
            if pass { "PASS" } else { "FAIL" },
            checks.len()
        );
        if !pass {
            failures += 1;
            for c in checks.iter().filter(|c| !c.pass) {
                println!("    failed: {} [{}] defect {:e} > tolerance {:e}", c.id, c.anchor, c.defect, c.tolerance);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass in {:.1}s",
        outcomes.len() - failures,
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
