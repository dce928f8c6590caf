//! Reproduction of the published frequency tables.
//!
//! Reference values live in `data/validation.toml`, which quotes each table's
//! caption. A table passes when every compared frequency is within the
//! table's relative tolerance.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::pipeline::{apply_axis, run};
use crate::post::{InputValue, Table};

const DATA: &str = include_str!("../data/validation.toml");

/// Table identifiers, in the order they are reported.
pub const TABLE_IDS: [&str; 6] = [
    "rect-isotropic",
    "ss-side-crack",
    "cantilever-side-crack",
    "ss-center-crack",
    "aspect-thickness",
    "cantilever-orientation",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ParamValue {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
struct CellSpec {
    expected: Vec<f64>,
    #[serde(flatten)]
    params: BTreeMap<String, ParamValue>,
}

#[derive(Debug, Clone, Deserialize)]
struct TableSpec {
    id: String,
    caption: String,
    tolerance: f64,
    base: String,
    cells: Vec<CellSpec>,
}

#[derive(Debug, Clone, Deserialize)]
struct DataFile {
    version: u32,
    tables: Vec<TableSpec>,
}

/// One reference table with its ready-to-run configurations.
#[derive(Debug, Clone)]
pub struct ReferenceTable {
    pub id: String,
    pub caption: String,
    pub tolerance: f64,
    pub cells: Vec<ReferenceCell>,
}

#[derive(Debug, Clone)]
pub struct ReferenceCell {
    /// Parameters overriding the table's base configuration, in file order.
    pub params: Vec<(String, InputValue)>,
    pub config: RunConfig,
    /// Expected Ω of modes 1, 2, ...
    pub expected: Vec<f64>,
}

fn data() -> Result<DataFile> {
    let d: DataFile =
        toml::from_str(DATA).map_err(|e| Error::Config(format!("embedded validation data: {e}")))?;
    if d.version != 1 {
        return Err(Error::Config(format!("unsupported validation data version {}", d.version)));
    }
    Ok(d)
}

/// Version of the embedded reference data.
pub fn data_version() -> u32 {
    data().map(|d| d.version).unwrap_or(0)
}

/// Parameter order used when applying overrides; matches the sweep axes.
const PARAM_ORDER: [&str; 10] = [
    "n", "d_over_a", "theta", "theta1", "theta2", "cx", "cy", "a_over_h", "b_over_a", "bc",
];

/// Load a reference table by id.
pub fn reference_table(id: &str) -> Result<ReferenceTable> {
    let d = data()?;
    let spec = d.tables.into_iter().find(|t| t.id == id).ok_or_else(|| {
        Error::Config(format!("unknown table `{id}` (known: {})", TABLE_IDS.join(", ")))
    })?;
    let base = RunConfig::from_toml(&spec.base).map_err(|e| e.context(&format!("table {id}")))?;
    let mut cells = Vec::with_capacity(spec.cells.len());
    for c in spec.cells {
        let mut config = base.clone();
        config.solver.modes = config.solver.modes.max(c.expected.len());
        let mut params = Vec::new();
        for key in PARAM_ORDER {
            if let Some(v) = c.params.get(key) {
                let v = match v {
                    ParamValue::Number(x) => InputValue::Number(*x),
                    ParamValue::Text(t) => InputValue::Text(t.clone()),
                };
                apply_axis(&mut config, key, &v)?;
                params.push((key.to_string(), v));
            }
        }
        if let Some(k) = c.params.keys().find(|k| !PARAM_ORDER.contains(&k.as_str())) {
            return Err(Error::Config(format!("table {id}: unknown parameter `{k}`")));
        }
        config.validate()?;
        cells.push(ReferenceCell {
            params,
            config,
            expected: c.expected,
        });
    }
    Ok(ReferenceTable {
        id: spec.id,
        caption: spec.caption,
        tolerance: spec.tolerance,
        cells,
    })
}

/// Comparison of one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub params: Vec<(String, InputValue)>,
    pub mode: usize,
    pub expected: f64,
    /// Computed value, or the error that prevented it.
    pub computed: std::result::Result<f64, String>,
    pub rel_error: f64,
    pub pass: bool,
}

/// Outcome of one table.
#[derive(Debug, Clone)]
pub struct TableReport {
    pub id: String,
    pub caption: String,
    pub tolerance: f64,
    /// Meshes used, as `nx×ny`.
    pub meshes: Vec<String>,
    pub cells: Vec<CellResult>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn max_rel_error(&self) -> f64 {
        self.cells.iter().map(|c| c.rel_error).fold(0.0, f64::max)
    }

    /// Per-cell CSV rendering.
    pub fn table(&self) -> Table {
        let mut names: Vec<String> = Vec::new();
        for c in &self.cells {
            for (k, _) in &c.params {
                if !names.contains(k) {
                    names.push(k.clone());
                }
            }
        }
        let mut header = names.clone();
        header.extend(["mode", "expected", "computed", "rel_error", "tolerance", "status"].map(String::from));
        let rows = self
            .cells
            .iter()
            .map(|c| {
                let mut row: Vec<String> = names
                    .iter()
                    .map(|n| {
                        c.params
                            .iter()
                            .find(|(k, _)| k == n)
                            .map(|(_, v)| match v {
                                InputValue::Number(x) => format!("{x}"),
                                InputValue::Text(t) => t.clone(),
                            })
                            .unwrap_or_default()
                    })
                    .collect();
                row.push(c.mode.to_string());
                row.push(format!("{}", c.expected));
                row.push(match &c.computed {
                    Ok(v) => format!("{v:.4}"),
                    Err(e) => format!("error: {e}"),
                });
                row.push(format!("{:.4}", c.rel_error));
                row.push(format!("{}", self.tolerance));
                row.push(if c.pass { "PASS" } else { "FAIL" }.into());
                row
            })
            .collect();
        Table { header, rows }
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let failed = self.cells.iter().filter(|c| !c.pass).count();
        format!(
            "{} {}: {} of {} values within {:.1}% (max error {:.2}%), mesh {}\n  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.cells.len() - failed,
            self.cells.len(),
            100.0 * self.tolerance,
            100.0 * self.max_rel_error(),
            self.meshes.join(", "),
            self.caption
        )
    }
}

/// Run one table with up to `workers` concurrent analyses. Identical
/// configurations are solved once.
pub fn validate(id: &str, workers: usize, exec: Execution) -> Result<TableReport> {
    let table = reference_table(id)?;
    let mut unique: BTreeMap<String, usize> = BTreeMap::new();
    let mut configs = Vec::new();
    let mut which = Vec::with_capacity(table.cells.len());
    for c in &table.cells {
        let key = c.config.effective()?.to_toml()?;
        let idx = *unique.entry(key).or_insert_with(|| {
            configs.push(c.config.clone());
            configs.len() - 1
        });
        which.push(idx);
    }
    log::info!("table {id}: {} cells, {} distinct analyses", table.cells.len(), configs.len());
    let results = par::with_workers(workers, || {
        par::map(exec, &configs, |c| run(c).map(|r| r.frequencies).map_err(|e| e.to_string()))
    })?;
    let mut meshes: Vec<String> = Vec::new();
    for c in &configs {
        let g = c.geometry.resolve()?;
        let (nx, ny) = c.mesh.resolve(&g)?;
        let m = format!("{nx}x{ny}");
        if !meshes.contains(&m) {
            meshes.push(m);
        }
    }
    let mut cells = Vec::new();
    for (c, &idx) in table.cells.iter().zip(&which) {
        for (mode, &expected) in c.expected.iter().enumerate() {
            let computed = match &results[idx] {
                Ok(f) => f
                    .get(mode)
                    .copied()
                    .ok_or_else(|| format!("mode {} not computed", mode + 1)),
                Err(e) => Err(e.clone()),
            };
            let rel_error = match computed {
                Ok(v) => (v - expected).abs() / expected.abs(),
                Err(_) => f64::INFINITY,
            };
            cells.push(CellResult {
                params: c.params.clone(),
                mode: mode + 1,
                expected,
                computed,
                rel_error,
                pass: rel_error <= table.tolerance,
            });
        }
    }
    Ok(TableReport {
        id: table.id,
        caption: table.caption,
        tolerance: table.tolerance,
        meshes,
        cells,
    })
}
