//! Frequency scaling, mode-shape sampling and export, and result tables.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::assembly::EnrichedModel;
use crate::element::{interpolate, inverse_map, ElementInput, QuadraturePlan};
use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Default samples per side of a mode-shape grid.
pub const DEFAULT_GRID: usize = 101;

/// `Ω = ω (b²/h) √(ρ_c/E_c)`.
pub fn nondimensionalize(omega: f64, b: f64, h: f64, rho_c: f64, e_c: f64) -> Result<f64> {
    if !(omega >= 0.0) || !(b > 0.0) || !(h > 0.0) || !(rho_c > 0.0) || !(e_c > 0.0) {
        return Err(Error::Domain(format!(
            "nondimensionalize needs ω >= 0 and positive b, h, ρ, E (got {omega}, {b}, {h}, {rho_c}, {e_c})"
        )));
    }
    Ok(omega * b * b / h * (rho_c / e_c).sqrt())
}

/// `(u, v, w, θx, θy)` sampled on a regular grid, scaled so that `max|w| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeShapeField {
    /// Samples along x and y.
    pub nx: usize,
    pub ny: usize,
    /// Row-major by y, then x.
    pub points: Vec<Vec2>,
    pub values: Vec<[f64; 5]>,
}

impl ModeShapeField {
    pub fn w(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(|v| v[2])
    }

    pub fn max_abs_w(&self) -> f64 {
        self.w().fold(0.0, |m, w| m.max(w.abs()))
    }

    /// Scale so that the largest |w| is 1 and positive.
    pub fn normalize(&mut self) -> Result<()> {
        let mut peak = 0.0f64;
        for w in self.w() {
            if w.abs() > peak.abs() {
                peak = w;
            }
        }
        if peak == 0.0 || !peak.is_finite() {
            return Err(Error::Numerical("mode shape has no transverse displacement to normalize".into()));
        }
        if peak == 1.0 {
            return Ok(());
        }
        for v in &mut self.values {
            for c in v.iter_mut() {
                *c /= peak;
            }
        }
        Ok(())
    }
}

/// Field of the global (unconstrained-order) vector `global` at `p`, using element `e`.
pub fn evaluate_in(model: &EnrichedModel, global: &[f64], e: usize, p: Vec2) -> Result<[f64; 5]> {
    let layout = &model.layout;
    let coords = layout.mesh.element_coords(e);
    let xi = inverse_map(&coords, p)?;
    let xi = [xi[0].clamp(-1.0, 1.0), xi[1].clamp(-1.0, 1.0)];
    let plan = QuadraturePlan::standard(&coords)?;
    let dofs: Vec<f64> = layout
        .dofs
        .element_dofs(&layout.mesh.elements[e])
        .into_iter()
        .map(|g| global[g])
        .collect();
    interpolate(
        &ElementInput {
            coords: &coords,
            layout: &layout.layouts[e],
            cracks: &layout.cracks,
            plan: &plan,
        },
        &dofs,
        xi,
        &[],
    )
}

/// Move `p` off crack lines (toward +normal) and away from tips (radially).
fn nudge(model: &EnrichedModel, mut p: Vec2) -> Vec2 {
    let mesh = &model.layout.mesh;
    let tol = 1e-9 * mesh.element_size();
    for seg in &model.layout.cracks.segments {
        for end in 0..2 {
            let (tip, e1, _) = seg.tip_frame(end);
            if (p - tip).norm() < tol {
                p = tip + e1 * tol;
            }
        }
        let s = seg.abscissa(p);
        if s >= 0.0 && s <= seg.length() {
            let d = seg.signed_distance(p);
            if d.abs() < tol {
                p = p + seg.normal() * (tol - d);
            }
        }
    }
    Vec2::new(p.x.clamp(0.0, mesh.a), p.y.clamp(0.0, mesh.b))
}

/// Field of `global` at an arbitrary plate point.
pub fn evaluate_at(model: &EnrichedModel, global: &[f64], p: Vec2) -> Result<[f64; 5]> {
    let q = nudge(model, p);
    let e = model
        .layout
        .mesh
        .locate(q)
        .ok_or_else(|| Error::Domain(format!("sample point ({}, {}) outside the plate", p.x, p.y)))?;
    evaluate_in(model, global, e, q)
}

/// Sample a mode (given over free unknowns) on an `n × n` grid.
pub fn sample_mode(model: &EnrichedModel, free_vector: &[f64], n: usize) -> Result<ModeShapeField> {
    if n < 2 {
        return Err(Error::Domain("mode-shape grid needs at least 2 samples per side".into()));
    }
    if free_vector.len() != model.n_free() {
        return Err(Error::Domain(format!(
            "mode vector has {} entries, model has {} free unknowns",
            free_vector.len(),
            model.n_free()
        )));
    }
    let global = model.layout.dofs.expand(free_vector);
    let (a, b) = (model.layout.mesh.a, model.layout.mesh.b);
    let mut points = Vec::with_capacity(n * n);
    let mut values = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let p = Vec2::new(a * i as f64 / (n - 1) as f64, b * j as f64 / (n - 1) as f64);
            values.push(evaluate_at(model, &global, p)?);
            points.push(p);
        }
    }
    let mut field = ModeShapeField {
        nx: n,
        ny: n,
        points,
        values,
    };
    field.normalize()?;
    Ok(field)
}

/// Legacy-VTK ASCII structured grid with `w` scalars and rotation/membrane vectors.
pub fn write_vtk(field: &ModeShapeField, title: &str, out: &mut impl Write) -> Result<()> {
    let np = field.points.len();
    let mut s = String::with_capacity(np * 80);
    let title: String = title.chars().filter(|c| *c != '\n').take(255).collect();
    let _ = writeln!(s, "# vtk DataFile Version 3.0\n{title}\nASCII\nDATASET STRUCTURED_GRID");
    let _ = writeln!(s, "DIMENSIONS {} {} 1\nPOINTS {np} double", field.nx, field.ny);
    for p in &field.points {
        let _ = writeln!(s, "{} {} 0", p.x, p.y);
    }
    let _ = writeln!(s, "POINT_DATA {np}\nSCALARS w double 1\nLOOKUP_TABLE default");
    for v in &field.values {
        let _ = writeln!(s, "{}", v[2]);
    }
    let _ = writeln!(s, "VECTORS rotation double");
    for v in &field.values {
        let _ = writeln!(s, "{} {} 0", v[3], v[4]);
    }
    let _ = writeln!(s, "VECTORS membrane double");
    for v in &field.values {
        let _ = writeln!(s, "{} {} 0", v[0], v[1]);
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_vtk_file(field: &ModeShapeField, title: &str, path: &Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_vtk(field, title, &mut f)?;
    f.flush()?;
    Ok(())
}

struct Tokens<'a> {
    it: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
}

impl<'a> Tokens<'a> {
    fn err(m: &str) -> Error {
        Error::Domain(format!("malformed VTK file: {m}"))
    }

    fn word(&mut self, expected: &str) -> Result<()> {
        match self.it.next() {
            Some(t) if t == expected => Ok(()),
            other => Err(Self::err(&format!("expected `{expected}`, found {other:?}"))),
        }
    }

    fn num(&mut self) -> Result<f64> {
        let t = self.it.next().ok_or_else(|| Self::err("unexpected end of file"))?;
        t.parse().map_err(|_| Self::err(&format!("`{t}` is not a number")))
    }

    fn count(&mut self) -> Result<usize> {
        let v = self.num()?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Self::err(&format!("bad count {v}")));
        }
        Ok(v as usize)
    }
}

/// Read a file produced by [`write_vtk`].
pub fn read_vtk(text: &str) -> Result<ModeShapeField> {
    // the first two lines are the version banner and a free-form title
    let body = text.splitn(3, '\n').nth(2).unwrap_or("");
    let mut t = Tokens {
        it: body.split_whitespace().peekable(),
    };
    for w in ["ASCII", "DATASET", "STRUCTURED_GRID", "DIMENSIONS"] {
        t.word(w)?;
    }
    let (nx, ny) = (t.count()?, t.count()?);
    if t.count()? != 1 {
        return Err(Tokens::err("only planar grids are supported"));
    }
    let np = nx * ny;
    t.word("POINTS")?;
    if t.count()? != np {
        return Err(Tokens::err("point count does not match dimensions"));
    }
    t.word("double")?;
    let mut points = Vec::with_capacity(np);
    for _ in 0..np {
        points.push(Vec2::new(t.num()?, t.num()?));
        t.num()?;
    }
    t.word("POINT_DATA")?;
    t.count()?;
    for w in ["SCALARS", "w", "double", "1", "LOOKUP_TABLE", "default"] {
        t.word(w)?;
    }
    let mut values = vec![[0.0; 5]; np];
    for v in values.iter_mut() {
        v[2] = t.num()?;
    }
    while let Some(&kw) = t.it.peek() {
        t.word(kw)?;
        let name = t.it.next().unwrap_or_default();
        t.word("double")?;
        let slots = match (kw, name) {
            ("VECTORS", "rotation") => [3, 4],
            ("VECTORS", "membrane") => [0, 1],
            _ => return Err(Tokens::err(&format!("unexpected section {kw} {name}"))),
        };
        for v in values.iter_mut() {
            v[slots[0]] = t.num()?;
            v[slots[1]] = t.num()?;
            t.num()?;
        }
    }
    Ok(ModeShapeField { nx, ny, points, values })
}

/// One input of a sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub enum InputValue {
    Number(f64),
    Text(String),
}

impl InputValue {
    fn render(&self) -> String {
        match self {
            InputValue::Number(v) => format!("{v}"),
            InputValue::Text(t) => t.clone(),
        }
    }
}

/// Outcome of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// Swept inputs first (these define the row order), then fixed ones.
    pub inputs: Vec<(String, InputValue)>,
    /// Number of leading `inputs` that were swept.
    pub swept: usize,
    pub outcome: std::result::Result<Vec<f64>, String>,
}

/// A rendered result table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Marker written for frequencies of failed cells.
pub const GAP: &str = "NA";

fn cmp_input(name: &str, a: &InputValue, b: &InputValue) -> Ordering {
    match (a, b) {
        (InputValue::Number(x), InputValue::Number(y)) => {
            if name.starts_with("theta") {
                // symmetric orientations side by side
                x.abs().total_cmp(&y.abs()).then(x.total_cmp(y))
            } else {
                x.total_cmp(y)
            }
        }
        (InputValue::Text(x), InputValue::Text(y)) => x.cmp(y),
        (InputValue::Number(_), InputValue::Text(_)) => Ordering::Less,
        (InputValue::Text(_), InputValue::Number(_)) => Ordering::Greater,
    }
}

/// Sort records by their swept inputs and render them as a table: inputs,
/// `Omega_1..Omega_K` (4 decimals), then an `error` column.
pub fn tabulate(records: &[SweepRecord]) -> Table {
    let mut recs: Vec<&SweepRecord> = records.iter().collect();
    recs.sort_by(|a, b| {
        for ((na, va), (_, vb)) in a.inputs.iter().zip(&b.inputs).take(a.swept.min(b.swept)) {
            let o = cmp_input(na, va, vb);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    });
    let k = recs
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(Vec::len))
        .max()
        .unwrap_or(0);
    // Input columns in first-seen order; records missing one get a gap.
    let mut names: Vec<&str> = Vec::new();
    for r in &recs {
        for (n, _) in &r.inputs {
            if !names.contains(&n.as_str()) {
                names.push(n);
            }
        }
    }
    let mut header: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    header.extend((1..=k).map(|i| format!("Omega_{i}")));
    header.push("error".into());
    let rows = recs
        .iter()
        .map(|r| {
            let mut row: Vec<String> = names
                .iter()
                .map(|n| {
                    r.inputs
                        .iter()
                        .find(|(m, _)| m == n)
                        .map_or(GAP.to_string(), |(_, v)| v.render())
                })
                .collect();
            match &r.outcome {
                Ok(om) => {
                    row.extend((0..k).map(|i| om.get(i).map_or(GAP.to_string(), |v| format!("{v:.4}"))));
                    row.push(String::new());
                }
                Err(e) => {
                    row.extend((0..k).map(|_| GAP.to_string()));
                    row.push(e.clone());
                }
            }
            row
        })
        .collect();
    Table { header, rows }
}

impl Table {
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        self.write_csv(std::fs::File::create(path)?)
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}
