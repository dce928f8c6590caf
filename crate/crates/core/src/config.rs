//! Run configuration: a TOML document describing one analysis, optionally
//! with sweep axes.
//!
//! Lengths are in metres; every other quantity is a ratio. Any of the
//! thickness forms (`h`, `a_over_h`, `b_over_h`) may be used, but only one.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assembly::BoundaryCondition;
use crate::crack::{CrackSegment, CrackSet};
use crate::eigen::SolverKind;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::materials::{self, FgmComposition, Homogenization, MaterialPhase, PoissonMode, DEFAULT_T_REF};
use crate::par::Execution;
use crate::section::{ShearCorrection, DEFAULT_THICKNESS_ORDER};

/// Largest number of modes a run may request.
pub const MAX_MODES: usize = 20;

/// Divisions along the shorter plate side when the mesh is not given.
pub const DEFAULT_BASE_DIVISIONS: usize = 34;

/// Edge cracks are extended this fraction of the shorter side outside the plate.
pub const SIDE_CRACK_OVERHANG: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub geometry: GeometryConfig,
    pub material: MaterialConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cracks: Vec<CrackConfig>,
    /// Two equal cracks separated horizontally by `h` and vertically by `v`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crack_pair: Option<CrackPairConfig>,
    #[serde(default = "default_bc")]
    pub bc: BoundaryCondition,
    #[serde(default)]
    pub mesh: MeshConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "SweepAxes::is_empty")]
    pub sweep: SweepAxes,
}

fn default_bc() -> BoundaryCondition {
    BoundaryCondition::Ss
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    /// Plate length along x (m); defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_over_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_over_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_over_h: Option<f64>,
}

/// Absolute plate dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub a: f64,
    pub b: f64,
    pub h: f64,
}

impl GeometryConfig {
    pub fn resolve(&self) -> Result<Geometry> {
        let a = self.a.unwrap_or(1.0);
        positive("geometry.a", a)?;
        let b = match (self.b, self.b_over_a) {
            (Some(_), Some(_)) => return Err(cfg("geometry", "give either b or b_over_a, not both")),
            (Some(b), None) => positive("geometry.b", b)?,
            (None, Some(r)) => positive("geometry.b_over_a", r)? * a,
            (None, None) => a,
        };
        let h = match (self.h, self.a_over_h, self.b_over_h) {
            (Some(h), None, None) => positive("geometry.h", h)?,
            (None, Some(r), None) => a / positive("geometry.a_over_h", r)?,
            (None, None, Some(r)) => b / positive("geometry.b_over_h", r)?,
            (None, None, None) => return Err(cfg("geometry", "thickness missing: give h, a_over_h or b_over_h")),
            _ => return Err(cfg("geometry", "give only one of h, a_over_h, b_over_h")),
        };
        if h >= a.min(b) {
            return Err(cfg("geometry.h", &format!("thickness {h} is not smaller than the plate sides")));
        }
        Ok(Geometry { a, b, h })
    }
}

/// A phase given by library key or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhaseRef {
    Key(String),
    Inline(MaterialPhase),
}

/// Through-thickness Poisson ratio selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PoissonSetting {
    /// A fixed ratio.
    Value(f64),
    /// `"auto"` (constant when the phases share one ratio) or `"homogenized"`
    /// (the ratio produced by the homogenization scheme).
    Named(PoissonName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoissonName {
    Auto,
    #[serde(alias = "mori-tanaka")]
    Homogenized,
}

impl Default for PoissonSetting {
    fn default() -> Self {
        PoissonSetting::Named(PoissonName::Auto)
    }
}

/// Which ceramic modulus normalizes frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// The temperature-independent coefficient P0.
    #[default]
    P0,
    /// The modulus evaluated at the reference temperature.
    TRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub ceramic: PhaseRef,
    /// Defaults to the ceramic (homogeneous plate).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metal: Option<PhaseRef>,
    /// Gradient index.
    #[serde(default)]
    pub n: f64,
    #[serde(default = "default_t_ref")]
    pub t_ref: f64,
    #[serde(default)]
    pub poisson: PoissonSetting,
    #[serde(default)]
    pub homogenization: Homogenization,
    #[serde(default)]
    pub normalization: Normalization,
    /// Extra phase library merged over the built-in one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub library: Option<PathBuf>,
}

fn default_t_ref() -> f64 {
    DEFAULT_T_REF
}

impl MaterialConfig {
    fn phase(&self, r: &PhaseRef, lib: &BTreeMap<String, MaterialPhase>, path: &str) -> Result<MaterialPhase> {
        match r {
            PhaseRef::Key(k) => lib.get(&k.to_ascii_lowercase()).cloned().ok_or_else(|| {
                let known: Vec<&str> = lib.keys().map(String::as_str).collect();
                cfg(path, &format!("unknown phase `{k}` (known: {})", known.join(", ")))
            }),
            PhaseRef::Inline(p) => {
                p.validate().map_err(|e| e.context(path))?;
                Ok(p.clone())
            }
        }
    }

    /// Phases looked up and combined into a composition.
    pub fn composition(&self) -> Result<FgmComposition> {
        let lib = match &self.library {
            Some(p) => materials::load_library(p).map_err(|e| e.context("material.library"))?,
            None => materials::builtin_library(),
        };
        let ceramic = self.phase(&self.ceramic, &lib, "material.ceramic")?;
        let metal = match &self.metal {
            Some(m) => self.phase(m, &lib, "material.metal")?,
            None => ceramic.clone(),
        };
        if !(self.n >= 0.0) || !self.n.is_finite() {
            return Err(cfg("material.n", &format!("gradient index must be finite and >= 0, got {}", self.n)));
        }
        positive("material.t_ref", self.t_ref)?;
        let comp = match self.poisson {
            PoissonSetting::Named(PoissonName::Auto) => FgmComposition::new(ceramic, metal, self.n, self.t_ref),
            PoissonSetting::Named(PoissonName::Homogenized) => {
                FgmComposition::with_poisson(ceramic, metal, self.n, self.t_ref, PoissonMode::MoriTanaka)
            }
            PoissonSetting::Value(nu) => {
                FgmComposition::with_poisson(ceramic, metal, self.n, self.t_ref, PoissonMode::Constant(nu))
            }
        };
        comp.map(|c| c.with_homogenization(self.homogenization))
            .map_err(|e| e.context("material"))
    }
}

/// Ceramic modulus and density used to nondimensionalize frequencies.
pub fn normalization_constants(comp: &FgmComposition, norm: Normalization) -> Result<(f64, f64)> {
    let e = match norm {
        Normalization::P0 => comp.ceramic.e.p0,
        Normalization::TRef => comp.ceramic.youngs_at(comp.t_ref)?,
    };
    Ok((e, comp.ceramic.rho))
}

/// Plate edge an edge crack starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    #[default]
    Left,
    Right,
    Bottom,
    Top,
}

fn half() -> f64 {
    0.5
}

/// One crack. Positions are fractions of the plate sides, lengths fractions
/// of `a`, angles in degrees from the x axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CrackConfig {
    /// Centred at `(cx·a, cy·b)`.
    Center {
        d_over_a: f64,
        #[serde(default)]
        theta: f64,
        #[serde(default = "half")]
        cx: f64,
        #[serde(default = "half")]
        cy: f64,
    },
    /// Starts on an edge at the fractional position `at` along it and runs
    /// inward, tilted by `theta` from the inward normal direction rotated
    /// onto the x axis for the left edge.
    Side {
        d_over_a: f64,
        #[serde(default)]
        theta: f64,
        #[serde(default)]
        edge: Edge,
        #[serde(default = "half")]
        at: f64,
    },
    /// Explicit tips, as fractions of `(a, b)`.
    Tips { x0: f64, y0: f64, x1: f64, y1: f64 },
}

impl CrackConfig {
    fn check_fraction(path: &str, v: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&v) {
            return Err(cfg(path, &format!("must lie in [0, 1], got {v}")));
        }
        Ok(())
    }

    /// Segment in plate coordinates; `None` for a zero-length crack.
    pub fn segment(&self, g: &Geometry, path: &str) -> Result<Option<CrackSegment>> {
        let seg = match *self {
            CrackConfig::Center { d_over_a, theta, cx, cy } => {
                if d_over_a == 0.0 {
                    return Ok(None);
                }
                positive(&format!("{path}.d_over_a"), d_over_a)?;
                Self::check_fraction(&format!("{path}.cx"), cx)?;
                Self::check_fraction(&format!("{path}.cy"), cy)?;
                CrackSegment::centered(Vec2::new(cx * g.a, cy * g.b), d_over_a * g.a, theta.to_radians())
                    .map_err(|e| e.context(path))?
            }
            CrackConfig::Side { d_over_a, theta, edge, at } => {
                if d_over_a == 0.0 {
                    return Ok(None);
                }
                positive(&format!("{path}.d_over_a"), d_over_a)?;
                Self::check_fraction(&format!("{path}.at"), at)?;
                let (start, inward) = match edge {
                    Edge::Left => (Vec2::new(0.0, at * g.b), 0.0),
                    Edge::Right => (Vec2::new(g.a, at * g.b), 180.0),
                    Edge::Bottom => (Vec2::new(at * g.a, 0.0), 90.0),
                    Edge::Top => (Vec2::new(at * g.a, g.b), -90.0),
                };
                if theta.abs() >= 90.0 {
                    return Err(cfg(&format!("{path}.theta"), "side crack angle must lie in (-90, 90) degrees"));
                }
                let dir = Vec2::from_angle((inward + theta).to_radians());
                let outside = SIDE_CRACK_OVERHANG * g.a.min(g.b);
                let tip = start + dir * (d_over_a * g.a);
                let root = start - dir * outside;
                CrackSegment::from_tips(root, tip).map_err(|e| e.context(path))?.clip_to_plate(g.a, g.b)
            }
            CrackConfig::Tips { x0, y0, x1, y1 } => {
                let p0 = Vec2::new(x0 * g.a, y0 * g.b);
                let p1 = Vec2::new(x1 * g.a, y1 * g.b);
                CrackSegment::from_tips(p0, p1).map_err(|e| e.context(path))?.clip_to_plate(g.a, g.b)
            }
        };
        if !seg.interior.iter().any(|&i| i) {
            return Err(cfg(path, "crack has no tip inside the plate"));
        }
        Ok(Some(seg))
    }
}

/// Two cracks of equal length; crack 1 lies to the lower left of crack 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrackPairConfig {
    /// Horizontal gap between the facing tips, fraction of `a`.
    pub h: f64,
    /// Vertical offset between the crack centres, fraction of `b`.
    pub v: f64,
    pub d_over_a: f64,
    #[serde(default)]
    pub theta1: f64,
    #[serde(default)]
    pub theta2: f64,
}

impl CrackPairConfig {
    pub fn segments(&self, g: &Geometry) -> Result<[CrackSegment; 2]> {
        positive("crack_pair.d_over_a", self.d_over_a)?;
        let d = self.d_over_a * g.a;
        let cx = 0.5 * g.a;
        let cy = 0.5 * g.b;
        let dx = 0.5 * (self.h * g.a + d);
        let dy = 0.5 * self.v * g.b;
        let c1 = Vec2::new(cx - dx, cy - dy);
        let c2 = Vec2::new(cx + dx, cy + dy);
        let mk = |c: Vec2, t: f64, p: &str| -> Result<CrackSegment> {
            let s = CrackSegment::centered(c, d, t.to_radians()).map_err(|e| e.context(p))?;
            let inside = |q: Vec2| q.x > 0.0 && q.x < g.a && q.y > 0.0 && q.y < g.b;
            if !inside(s.tips[0]) || !inside(s.tips[1]) {
                return Err(cfg(p, "crack leaves the plate"));
            }
            Ok(s)
        };
        Ok([mk(c1, self.theta1, "crack_pair.theta1")?, mk(c2, self.theta2, "crack_pair.theta2")?])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ny: Option<usize>,
    /// Divisions along the shorter side when `nx`/`ny` are absent; the
    /// longer side gets proportionally more.
    #[serde(default = "default_base")]
    pub base: usize,
}

fn default_base() -> usize {
    DEFAULT_BASE_DIVISIONS
}

impl Default for MeshConfig {
    fn default() -> Self {
        Self {
            nx: None,
            ny: None,
            base: DEFAULT_BASE_DIVISIONS,
        }
    }
}

impl MeshConfig {
    pub fn resolve(&self, g: &Geometry) -> Result<(usize, usize)> {
        if self.base == 0 {
            return Err(cfg("mesh.base", "must be at least 1"));
        }
        let short = g.a.min(g.b);
        let scaled = |len: f64| ((self.base as f64) * len / short).round().max(1.0) as usize;
        let nx = self.nx.unwrap_or_else(|| scaled(g.a));
        let ny = self.ny.unwrap_or_else(|| scaled(g.b));
        if nx == 0 {
            return Err(cfg("mesh.nx", "must be at least 1"));
        }
        if ny == 0 {
            return Err(cfg("mesh.ny", "must be at least 1"));
        }
        Ok((nx, ny))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default)]
    pub kind: SolverKind,
    #[serde(default)]
    pub shear_correction: ShearCorrection,
    #[serde(default = "default_order")]
    pub thickness_order: usize,
    #[serde(default)]
    pub execution: Execution,
}

fn default_modes() -> usize {
    5
}

fn default_order() -> usize {
    DEFAULT_THICKNESS_ORDER
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            modes: default_modes(),
            kind: SolverKind::default(),
            shear_correction: ShearCorrection::default(),
            thickness_order: DEFAULT_THICKNESS_ORDER,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Frequency table path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    /// Directory for mode-shape VTK files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vtk: Option<PathBuf>,
    /// Samples per side of the mode-shape grid.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// `error`, `warn`, `info`, `debug` or `trace`.
    #[serde(default = "default_verbosity")]
    pub verbosity: String,
}

fn default_grid() -> usize {
    101
}

fn default_verbosity() -> String {
    "warn".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            csv: None,
            vtk: None,
            grid: default_grid(),
            verbosity: default_verbosity(),
        }
    }
}

/// Values to sweep; empty axes are not swept.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxes {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_over_a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta2: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cx: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cy: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a_over_h: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b_over_a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bc: Vec<BoundaryCondition>,
}

impl SweepAxes {
    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
            && self.d_over_a.is_empty()
            && self.theta.is_empty()
            && self.theta1.is_empty()
            && self.theta2.is_empty()
            && self.cx.is_empty()
            && self.cy.is_empty()
            && self.a_over_h.is_empty()
            && self.b_over_a.is_empty()
            && self.bc.is_empty()
    }
}

impl RunConfig {
    /// Parse and validate a TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let de = toml::Deserializer::new(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let msg = inner.message().trim().to_string();
            if path.is_empty() || path == "." {
                Error::Config(msg)
            } else {
                Error::Config(format!("{path}: {msg}"))
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Checks that do not need the material library.
    pub fn validate(&self) -> Result<()> {
        if self.solver.modes == 0 || self.solver.modes > MAX_MODES {
            return Err(cfg("solver.modes", &format!("must lie in 1..={MAX_MODES}, got {}", self.solver.modes)));
        }
        if self.output.grid < 2 {
            return Err(cfg("output.grid", "needs at least 2 samples per side"));
        }
        let g = self.geometry.resolve()?;
        self.mesh.resolve(&g)?;
        self.crack_set(&g)?;
        Ok(())
    }

    /// All cracks as segments in plate coordinates.
    pub fn crack_set(&self, g: &Geometry) -> Result<CrackSet> {
        let mut segs = Vec::new();
        for (i, c) in self.cracks.iter().enumerate() {
            if let Some(s) = c.segment(g, &format!("cracks[{i}]"))? {
                segs.push(s);
            }
        }
        if let Some(p) = &self.crack_pair {
            if p.d_over_a != 0.0 {
                segs.extend(p.segments(g)?);
            }
        }
        Ok(CrackSet::new(segs))
    }

    /// The configuration with every default written out, absolute
    /// dimensions and an explicit mesh; re-running it gives identical results.
    pub fn effective(&self) -> Result<RunConfig> {
        let g = self.geometry.resolve()?;
        let (nx, ny) = self.mesh.resolve(&g)?;
        let mut out = self.clone();
        out.geometry = GeometryConfig {
            a: Some(g.a),
            b: Some(g.b),
            h: Some(g.h),
            ..Default::default()
        };
        out.mesh.nx = Some(nx);
        out.mesh.ny = Some(ny);
        out.sweep = SweepAxes::default();
        Ok(out)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(format!("cannot serialize configuration: {e}")))
    }
}

fn cfg(path: &str, msg: &str) -> Error {
    Error::Config(format!("{path}: {msg}"))
}

fn positive(path: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(cfg(path, &format!("must be positive and finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
        bc = "SS"
        [geometry]
        a_over_h = 10
        [material]
        ceramic = "si3n4"
        metal = "sus304"
        n = 1
        [[cracks]]
        kind = "center"
        d_over_a = 0.4
        theta = 30
    "#;

    #[test]
    fn parses_and_resolves() {
        let c = RunConfig::from_toml(BASIC).unwrap();
        let g = c.geometry.resolve().unwrap();
        assert_eq!((g.a, g.b, g.h), (1.0, 1.0, 0.1));
        assert_eq!(c.mesh.resolve(&g).unwrap(), (34, 34));
        assert_eq!(c.solver.modes, 5);
        let cracks = c.crack_set(&g).unwrap();
        assert_eq!(cracks.len(), 1);
        assert!((cracks.segments[0].length() - 0.4).abs() < 1e-14);
    }

    #[test]
    fn proportional_mesh() {
        let g = Geometry { a: 2.0, b: 1.0, h: 0.01 };
        assert_eq!(MeshConfig::default().resolve(&g).unwrap(), (68, 34));
    }

    #[test]
    fn errors_name_the_field() {
        let bad = BASIC.replace("n = 1", "n = \"one\"");
        let e = RunConfig::from_toml(&bad).unwrap_err().to_string();
        assert!(e.contains("material.n"), "{e}");
        let bad = format!("{BASIC}\n[solver]\nmodes = 30\n");
        let e = RunConfig::from_toml(&bad).unwrap_err().to_string();
        assert!(e.contains("solver.modes"), "{e}");
        let bad = BASIC.replace("bc = \"SS\"", "bc = \"XX\"");
        let e = RunConfig::from_toml(&bad).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("bc"), "{e}");
        let bad = BASIC.replace("a_over_h = 10", "a_over_h = 10\nh = 0.1");
        assert!(RunConfig::from_toml(&bad).unwrap_err().to_string().contains("geometry"));
    }

    #[test]
    fn effective_config_round_trips() {
        let c = RunConfig::from_toml(BASIC).unwrap();
        let eff = c.effective().unwrap();
        let text = eff.to_toml().unwrap();
        let back = RunConfig::from_toml(&text).unwrap();
        assert_eq!(back, eff);
        assert_eq!(back.effective().unwrap(), eff);
    }

    #[test]
    fn side_crack_spans_from_outside() {
        let g = Geometry { a: 1.0, b: 1.0, h: 0.1 };
        let c = CrackConfig::Side {
            d_over_a: 0.5,
            theta: 0.0,
            edge: Edge::Left,
            at: 0.5,
        };
        let s = c.segment(&g, "c").unwrap().unwrap();
        assert_eq!(s.interior, [false, true]);
        assert!(s.tips[0].x < 0.0);
        assert!((s.tips[1].x - 0.5).abs() < 1e-14);
    }

    #[test]
    fn crack_pair_layout() {
        let g = Geometry { a: 1.0, b: 1.0, h: 0.1 };
        let p = CrackPairConfig { h: 0.2, v: 0.1, d_over_a: 0.2, theta1: 0.0, theta2: 0.0 };
        let [c1, c2] = p.segments(&g).unwrap();
        // facing tips are 0.2 apart horizontally
        let gap = c2.tips[0].x.min(c2.tips[1].x) - c1.tips[0].x.max(c1.tips[1].x);
        assert!((gap - 0.2).abs() < 1e-12);
        assert!(((c2.tips[0].y - c1.tips[0].y) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn zero_length_crack_means_uncracked() {
        let t = BASIC.replace("d_over_a = 0.4", "d_over_a = 0");
        let c = RunConfig::from_toml(&t).unwrap();
        assert!(c.crack_set(&c.geometry.resolve().unwrap()).unwrap().is_empty());
    }

    #[test]
    fn normalization_choices() {
        let c = RunConfig::from_toml(BASIC).unwrap();
        let comp = c.material.composition().unwrap();
        let (e0, rho) = normalization_constants(&comp, Normalization::P0).unwrap();
        assert_eq!(e0, 348.43e9);
        assert_eq!(rho, 2370.0);
        let (et, _) = normalization_constants(&comp, Normalization::TRef).unwrap();
        assert!(et < e0);
    }
}
