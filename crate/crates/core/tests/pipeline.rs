use approx::assert_relative_eq;
use proptest::prelude::*;

use xplate::config::RunConfig;
use xplate::eigen::SolverKind;
use xplate::par::Execution;
use xplate::pipeline::{expand_sweep, run, sweep};
use xplate::post::{read_vtk, sample_mode, tabulate, write_vtk, GAP};

fn config(extra_crack: &str, mesh: usize) -> RunConfig {
    RunConfig::from_toml(&format!(
        r#"
        bc = "SS"
        [geometry]
        a_over_h = 10
        [material]
        ceramic = "si3n4"
        metal = "sus304"
        n = 2
        {extra_crack}
        [mesh]
        nx = {mesh}
        ny = {mesh}
        [solver]
        modes = 4
        "#
    ))
    .unwrap()
}

fn center(d: f64, theta: f64) -> String {
    format!("[[cracks]]\nkind = \"center\"\nd_over_a = {d}\ntheta = {theta}")
}

#[test]
fn sequential_and_parallel_runs_agree_exactly() {
    let mut cfg = config(&center(0.5, 20.0), 12);
    cfg.solver.execution = Execution::Sequential;
    let a = run(&cfg).unwrap();
    cfg.solver.execution = Execution::Parallel;
    let b = run(&cfg).unwrap();
    assert_eq!(a.frequencies, b.frequencies);
}

#[test]
fn dense_and_band_solvers_agree() {
    let mut cfg = config(&center(0.4, 0.0), 10);
    cfg.solver.kind = SolverKind::Dense;
    let a = run(&cfg).unwrap();
    cfg.solver.kind = SolverKind::Band;
    let b = run(&cfg).unwrap();
    for (x, y) in a.frequencies.iter().zip(&b.frequencies) {
        assert_relative_eq!(x, y, max_relative = 1e-9);
    }
    assert!(b.modal.residuals.iter().all(|r| *r < 1e-8));
}

#[test]
fn a_crack_lowers_every_frequency() {
    let intact = run(&config("", 12)).unwrap().frequencies;
    let cracked = run(&config(&center(0.6, 0.0), 12)).unwrap().frequencies;
    for (c, i) in cracked.iter().zip(&intact) {
        assert!(c <= &(i * (1.0 + 1e-9)), "{c} > {i}");
    }
    assert!(cracked[0] < intact[0]);
}

#[test]
fn sweep_keeps_going_past_failed_cells() {
    let mut cfg = config(&center(0.5, 0.0), 8);
    cfg.solver.modes = 2;
    cfg.sweep.cx = vec![0.5, 1.5];
    cfg.sweep.n = vec![0.0, 1.0];
    assert_eq!(expand_sweep(&cfg).unwrap().len(), 4);
    let records = sweep(&cfg, 2, Execution::Parallel).unwrap();
    let failed: Vec<_> = records.iter().filter(|r| r.outcome.is_err()).collect();
    assert_eq!(failed.len(), 2);
    let table = tabulate(&records);
    let col = table.column("Omega_1").unwrap();
    let err = table.column("error").unwrap();
    let gaps = table.rows.iter().filter(|r| r[col] == GAP).count();
    assert_eq!(gaps, 2);
    assert!(table.rows.iter().all(|r| (r[col] == GAP) == !r[err].is_empty()));
}

#[test]
fn mode_shape_survives_a_vtk_round_trip() {
    let out = run(&config(&center(0.5, 45.0), 10)).unwrap();
    let mut field = sample_mode(&out.model, &out.modal.vectors[0], 15).unwrap();
    field.normalize().unwrap();
    assert_relative_eq!(field.max_abs_w(), 1.0, epsilon = 1e-12);
    let mut buf = Vec::new();
    write_vtk(&field, "mode 1", &mut buf).unwrap();
    let back = read_vtk(std::str::from_utf8(&buf).unwrap()).unwrap();
    assert_eq!((back.nx, back.ny), (15, 15));
    for (a, b) in field.w().zip(back.w()) {
        assert_relative_eq!(a, b, epsilon = 1e-9);
    }
}

#[test]
fn effective_config_round_trips_through_toml() {
    let cfg = config(&center(0.3, 10.0), 12);
    let eff = cfg.effective().unwrap();
    let again = RunConfig::from_toml(&eff.to_toml().unwrap()).unwrap();
    assert_eq!(eff, again);
    assert_eq!(run(&cfg).unwrap().frequencies, run(&again).unwrap().frequencies);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// A centred crack and its mirror image about the x axis give the same spectrum.
    #[test]
    fn mirrored_crack_has_the_same_spectrum(theta in 5.0f64..85.0, d in 0.2f64..0.6) {
        let a = run(&config(&center(d, theta), 8)).unwrap().frequencies;
        let b = run(&config(&center(d, -theta), 8)).unwrap().frequencies;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-6 * x, "{} vs {}", x, y);
        }
    }
}
