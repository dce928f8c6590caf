//! End-to-end analyses: materials → section → cracks → assembly → eigen
//! solution → nondimensional frequencies, and parametric sweeps over them.

use std::path::Path;
use std::time::Instant;

use crate::assembly::{build_model, BoundaryCondition, EnrichedModel};
use crate::config::{normalization_constants, CrackConfig, Geometry, RunConfig};
use crate::crack::CrackSet;
use crate::eigen::{solve_generalized, ModalResult};
use crate::error::{Error, Result};
use crate::materials::FgmComposition;
use crate::mesh::{generate_mesh, Mesh};
use crate::par::{self, Execution};
use crate::post::{self, tabulate, InputValue, SweepRecord, Table};
use crate::section::{integrate_section, SectionMatrices};

/// Everything derived from a configuration before assembly.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub geometry: Geometry,
    pub composition: FgmComposition,
    pub section: SectionMatrices,
    pub cracks: CrackSet,
    pub mesh: Mesh,
    /// Ceramic modulus and density used for Ω.
    pub e_c: f64,
    pub rho_c: f64,
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared> {
    cfg.validate()?;
    let geometry = cfg.geometry.resolve()?;
    let composition = cfg.material.composition()?;
    let section = integrate_section(
        &composition,
        geometry.h,
        cfg.solver.shear_correction,
        cfg.solver.thickness_order,
    )
    .map_err(|e| e.context("section"))?;
    let cracks = cfg.crack_set(&geometry)?;
    let (nx, ny) = cfg.mesh.resolve(&geometry)?;
    let mesh = generate_mesh(geometry.a, geometry.b, nx, ny).map_err(|e| e.context("mesh"))?;
    let (e_c, rho_c) = normalization_constants(&composition, cfg.material.normalization)?;
    Ok(Prepared {
        geometry,
        composition,
        section,
        cracks,
        mesh,
        e_c,
        rho_c,
    })
}

/// Result of one analysis.
#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Effective configuration (all defaults resolved).
    pub config: RunConfig,
    pub geometry: Geometry,
    pub model: EnrichedModel,
    pub modal: ModalResult,
    /// Ω per mode, ascending.
    pub frequencies: Vec<f64>,
    pub seconds: f64,
}

/// Run one analysis.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let effective = cfg.effective()?;
    let p = prepare(cfg)?;
    let model = build_model(p.mesh, &p.cracks, p.section, cfg.bc, cfg.solver.execution)
        .map_err(|e| e.context("assembly"))?;
    log::info!(
        "model: {} free unknowns, {} Heaviside nodes, {} tip blocks",
        model.n_free(),
        model.layout.n_heaviside_nodes(),
        model.layout.n_tip_node_blocks()
    );
    let dofs = &model.layout.dofs;
    let modal = solve_generalized(&model.k, &model.m, cfg.solver.modes, cfg.solver.kind, &|f| {
        dofs.describe_free(f)
    })
    .map_err(|e| e.context("eigen"))?;
    let frequencies = modal
        .omegas
        .iter()
        .map(|&w| post::nondimensionalize(w, p.geometry.b, p.geometry.h, p.rho_c, p.e_c))
        .collect::<Result<Vec<_>>>()?;
    let seconds = start.elapsed().as_secs_f64();
    log::info!("frequencies {frequencies:?} in {seconds:.2} s");
    Ok(RunOutput {
        config: effective,
        geometry: p.geometry,
        model,
        modal,
        frequencies,
        seconds,
    })
}

/// Resolved inputs reported alongside frequencies. A crack set that cannot
/// be built is reported as a gap so failed sweep cells keep their columns.
pub fn resolved_inputs(cfg: &RunConfig) -> Result<Vec<(String, InputValue)>> {
    let g = cfg.geometry.resolve()?;
    let (nx, ny) = cfg.mesh.resolve(&g)?;
    let cracks = match cfg.crack_set(&g) {
        Ok(c) => InputValue::Number(c.len() as f64),
        Err(_) => InputValue::Text(post::GAP.into()),
    };
    let num = |k: &str, v: f64| (k.to_string(), InputValue::Number(v));
    Ok(vec![
        num("a", g.a),
        num("b_over_a", g.b / g.a),
        num("a_over_h", g.a / g.h),
        num("n", cfg.material.n),
        ("bc".into(), InputValue::Text(cfg.bc.label().into())),
        ("cracks".into(), cracks),
        num("nx", nx as f64),
        num("ny", ny as f64),
    ])
}

impl RunOutput {
    /// One-row frequency table.
    pub fn table(&self) -> Result<Table> {
        Ok(tabulate(&[SweepRecord {
            inputs: resolved_inputs(&self.config)?,
            swept: 0,
            outcome: Ok(self.frequencies.clone()),
        }]))
    }

    /// Write `mode_<i>.vtk` for every computed mode into `dir`.
    pub fn write_modes(&self, dir: &Path, grid: usize) -> Result<Vec<std::path::PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for (i, v) in self.modal.vectors.iter().enumerate() {
            let field = post::sample_mode(&self.model, v, grid)?;
            let path = dir.join(format!("mode_{}.vtk", i + 1));
            let title = format!("mode {} Omega={:.6}", i + 1, self.frequencies[i]);
            post::write_vtk_file(&field, &title, &path)?;
            paths.push(path);
        }
        Ok(paths)
    }

    /// Write the artifacts requested by the configuration's output section.
    pub fn write_artifacts(&self) -> Result<()> {
        if let Some(csv) = &self.config.output.csv {
            self.table()?.write_csv_file(csv)?;
        }
        if let Some(dir) = &self.config.output.vtk {
            self.write_modes(dir, self.config.output.grid)?;
        }
        Ok(())
    }
}

fn set_crack_value(cfg: &mut RunConfig, axis: &str, v: f64) -> Result<()> {
    let mut touched = false;
    for c in &mut cfg.cracks {
        match (c, axis) {
            (CrackConfig::Center { d_over_a, .. } | CrackConfig::Side { d_over_a, .. }, "d_over_a") => {
                *d_over_a = v;
                touched = true;
            }
            (CrackConfig::Center { theta, .. } | CrackConfig::Side { theta, .. }, "theta") => {
                *theta = v;
                touched = true;
            }
            (CrackConfig::Center { cx, .. }, "cx") => {
                *cx = v;
                touched = true;
            }
            (CrackConfig::Center { cy, .. }, "cy") => {
                *cy = v;
                touched = true;
            }
            (CrackConfig::Side { at, edge, .. }, "cy")
                if matches!(edge, crate::config::Edge::Left | crate::config::Edge::Right) =>
            {
                *at = v;
                touched = true;
            }
            _ => {}
        }
    }
    if let Some(p) = &mut cfg.crack_pair {
        match axis {
            "d_over_a" => {
                p.d_over_a = v;
                touched = true;
            }
            "theta1" => {
                p.theta1 = v;
                touched = true;
            }
            "theta2" => {
                p.theta2 = v;
                touched = true;
            }
            _ => {}
        }
    }
    if touched {
        Ok(())
    } else {
        Err(Error::Config(format!("sweep.{axis}: no crack in the configuration has this parameter")))
    }
}

/// Apply one sweep-axis value to a configuration.
pub fn apply_axis(cfg: &mut RunConfig, axis: &str, v: &InputValue) -> Result<()> {
    match (axis, v) {
        ("n", InputValue::Number(x)) => cfg.material.n = *x,
        ("a_over_h", InputValue::Number(x)) => {
            cfg.geometry.h = None;
            cfg.geometry.b_over_h = None;
            cfg.geometry.a_over_h = Some(*x);
        }
        ("b_over_a", InputValue::Number(x)) => {
            cfg.geometry.b = None;
            cfg.geometry.b_over_a = Some(*x);
        }
        ("bc", InputValue::Text(t)) => cfg.bc = t.parse::<BoundaryCondition>()?,
        (axis, InputValue::Number(x)) => set_crack_value(cfg, axis, *x)?,
        (axis, v) => return Err(Error::Config(format!("sweep.{axis}: unexpected value {v:?}"))),
    }
    Ok(())
}

/// One cell of a sweep: the swept values and the configuration to run.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub values: Vec<(String, InputValue)>,
    pub config: RunConfig,
}

/// Cartesian product of the configuration's sweep axes (a single cell if none).
pub fn expand_sweep(cfg: &RunConfig) -> Result<Vec<SweepCell>> {
    let s = &cfg.sweep;
    let num = |v: &[f64]| v.iter().map(|&x| InputValue::Number(x)).collect::<Vec<_>>();
    let axes: Vec<(&str, Vec<InputValue>)> = [
        ("n", num(&s.n)),
        ("d_over_a", num(&s.d_over_a)),
        ("theta", num(&s.theta)),
        ("theta1", num(&s.theta1)),
        ("theta2", num(&s.theta2)),
        ("cx", num(&s.cx)),
        ("cy", num(&s.cy)),
        ("a_over_h", num(&s.a_over_h)),
        ("b_over_a", num(&s.b_over_a)),
        ("bc", s.bc.iter().map(|b| InputValue::Text(b.label().into())).collect()),
    ]
    .into_iter()
    .filter(|(_, v)| !v.is_empty())
    .collect();
    let mut base = cfg.clone();
    base.sweep = Default::default();
    let mut cells = vec![SweepCell {
        values: Vec::new(),
        config: base,
    }];
    for (axis, values) in &axes {
        let mut next = Vec::with_capacity(cells.len() * values.len());
        for cell in &cells {
            for v in values {
                let mut c = cell.clone();
                apply_axis(&mut c.config, axis, v)?;
                c.values.push((axis.to_string(), v.clone()));
                next.push(c);
            }
        }
        cells = next;
    }
    Ok(cells)
}

/// Run one sweep cell, capturing failures.
pub fn run_cell(cell: &SweepCell) -> SweepRecord {
    let mut inputs = cell.values.clone();
    let swept = inputs.len();
    let outcome = match resolved_inputs(&cell.config) {
        Ok(fixed) => {
            inputs.extend(fixed.into_iter().filter(|(k, _)| !cell.values.iter().any(|(s, _)| s == k)));
            run(&cell.config).map(|r| r.frequencies).map_err(|e| e.to_string())
        }
        Err(e) => Err(e.to_string()),
    };
    if let Err(e) = &outcome {
        log::warn!("sweep cell {:?} failed: {e}", cell.values);
    }
    SweepRecord { inputs, swept, outcome }
}

/// Run every cell with at most `workers` concurrent cells.
pub fn sweep(cfg: &RunConfig, workers: usize, exec: Execution) -> Result<Vec<SweepRecord>> {
    let cells = expand_sweep(cfg)?;
    log::info!("sweep of {} cells on {} workers", cells.len(), workers.max(1));
    par::with_workers(workers, || par::map(exec, &cells, run_cell))
}

/// Sweep and tabulate.
pub fn sweep_table(cfg: &RunConfig, workers: usize, exec: Execution) -> Result<Table> {
    Ok(tabulate(&sweep(cfg, workers, exec)?))
}
