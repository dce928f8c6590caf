//! Field-consistent four-node Mindlin plate element with crack enrichment.

mod enrichment;
mod plan;
mod shape;

pub use enrichment::{
    enrichment_f, enrichment_g, tip_values, Block, BlockFunction, EnrichmentEval, PolarBasis, TipValues,
};
pub use plan::{quadrature_plan, PlanKind, QuadPoint, QuadraturePlan, TIP_RULE_ORDER};
pub use shape::{inverse_map, jacobian, map_point, shape_q4, AssumedShear, Mapping, ShearRows, CORNERS};

use crate::crack::CrackSet;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::section::SectionMatrices;

/// Unknowns per block: `u, v, w, θx, θy`.
pub const BLOCK_DOFS: usize = 5;

/// Enrichment blocks carried by each of the four element nodes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ElementLayout {
    pub blocks: [Vec<Block>; 4],
}

impl ElementLayout {
    pub fn standard() -> Self {
        Self {
            blocks: std::array::from_fn(|_| vec![Block::Standard]),
        }
    }

    pub fn n_dofs(&self) -> usize {
        BLOCK_DOFS * self.blocks.iter().map(Vec::len).sum::<usize>()
    }

    pub fn is_standard(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1 && b[0].is_standard())
    }

    pub fn has_tip_blocks(&self) -> bool {
        self.blocks.iter().flatten().any(|b| b.tip().is_some())
    }

    /// `(node, block)` of each block in element dof order.
    pub fn block_list(&self) -> impl Iterator<Item = (usize, Block)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(k, bs)| bs.iter().map(move |b| (k, *b)))
    }
}

/// Dense row-major element stiffness and mass matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementMatrices {
    pub n: usize,
    pub k: Vec<f64>,
    pub m: Vec<f64>,
}

/// Everything needed to evaluate one element.
#[derive(Debug, Clone, Copy)]
pub struct ElementInput<'a> {
    pub coords: &'a [Vec2; 4],
    pub layout: &'a ElementLayout,
    pub cracks: &'a CrackSet,
    pub plan: &'a QuadraturePlan,
}

/// Strain (8 rows: membrane, bending, shear) and displacement (5 rows) columns per dof.
struct PointOperators {
    mapping: Mapping,
    b: Vec<[f64; 8]>,
    n: Vec<[f64; 5]>,
}

fn point_operators(
    input: &ElementInput,
    shear: &AssumedShear,
    xi: [f64; 2],
    sides: &[(usize, f64)],
) -> Result<PointOperators> {
    let m = map_point(input.coords, xi[0], xi[1])?;
    let rows = shear.rows(xi[0], xi[1], &m);
    let nd = input.layout.n_dofs();
    let mut b = Vec::with_capacity(nd);
    let mut n = Vec::with_capacity(nd);
    let mut eval = EnrichmentEval::new(input.cracks, m.x, sides);
    for (k, block) in input.layout.block_list() {
        let f = eval.block(block)?;
        let phi = m.n[k];
        let dphi = m.dn[k];
        let ft = phi * f.psi_t;
        let gt = dphi * f.psi_t + f.grad_t * phi;
        let fr = phi * f.psi_r;
        let gr = dphi * f.psi_r + f.grad_r * phi;
        // shear contributions of (w, θx, θy) to (γxz, γyz)
        let s: [[f64; 2]; 3] = match block {
            Block::Standard => std::array::from_fn(|d| [rows[0][k][d], rows[1][k][d]]),
            Block::Heaviside { .. } => std::array::from_fn(|d| [f.psi_t * rows[0][k][d], f.psi_t * rows[1][k][d]]),
            Block::Tip { .. } => [[gt.x, gt.y], [fr, 0.0], [0.0, fr]],
        };
        b.push([gt.x, 0.0, gt.y, 0.0, 0.0, 0.0, 0.0, 0.0]);
        b.push([0.0, gt.y, gt.x, 0.0, 0.0, 0.0, 0.0, 0.0]);
        b.push([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, s[0][0], s[0][1]]);
        b.push([0.0, 0.0, 0.0, gr.x, 0.0, gr.y, s[1][0], s[1][1]]);
        b.push([0.0, 0.0, 0.0, 0.0, gr.y, gr.x, s[2][0], s[2][1]]);
        n.push([ft, 0.0, 0.0, 0.0, 0.0]);
        n.push([0.0, ft, 0.0, 0.0, 0.0]);
        n.push([0.0, 0.0, ft, 0.0, 0.0]);
        n.push([0.0, 0.0, 0.0, fr, 0.0]);
        n.push([0.0, 0.0, 0.0, 0.0, fr]);
    }
    Ok(PointOperators { mapping: m, b, n })
}

/// Stiffness and mass matrices of one (possibly enriched) element.
pub fn element_matrices(input: &ElementInput, section: &SectionMatrices) -> Result<ElementMatrices> {
    let nd = input.layout.n_dofs();
    let d = section.constitutive();
    let inertia = [section.i0, section.i0, section.i0, section.i1, section.i1];
    let shear = AssumedShear::new(input.coords)?;
    let mut k = vec![0.0; nd * nd];
    let mut m = vec![0.0; nd * nd];
    let mut db = vec![[0.0; 8]; nd];
    for qp in &input.plan.points {
        let ops = point_operators(input, &shear, qp.xi, &qp.sides)?;
        let w = qp.weight * ops.mapping.det;
        for (j, col) in ops.b.iter().enumerate() {
            for r in 0..8 {
                let mut s = 0.0;
                for c in 0..8 {
                    s += d[r][c] * col[c];
                }
                db[j][r] = s;
            }
        }
        for i in 0..nd {
            let bi = &ops.b[i];
            let ni = &ops.n[i];
            for j in i..nd {
                let mut s = 0.0;
                for r in 0..8 {
                    s += bi[r] * db[j][r];
                }
                k[i * nd + j] += w * s;
                let nj = &ops.n[j];
                let mut t = 0.0;
                for r in 0..5 {
                    t += ni[r] * inertia[r] * nj[r];
                }
                m[i * nd + j] += w * t;
            }
        }
    }
    for i in 0..nd {
        for j in 0..i {
            k[i * nd + j] = k[j * nd + i];
            m[i * nd + j] = m[j * nd + i];
        }
    }
    if k.iter().chain(&m).any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite entry in element matrices".into()));
    }
    Ok(ElementMatrices { n: nd, k, m })
}

pub fn element_stiffness(input: &ElementInput, section: &SectionMatrices) -> Result<Vec<f64>> {
    element_matrices(input, section).map(|e| e.k)
}

pub fn element_mass(input: &ElementInput, section: &SectionMatrices) -> Result<Vec<f64>> {
    element_matrices(input, section).map(|e| e.m)
}

/// Unenriched 20-dof element integrated with 2x2 Gauss.
pub fn standard_matrices(coords: &[Vec2; 4], section: &SectionMatrices) -> Result<ElementMatrices> {
    let layout = ElementLayout::standard();
    let plan = QuadraturePlan::standard(coords)?;
    let cracks = CrackSet::default();
    element_matrices(
        &ElementInput {
            coords,
            layout: &layout,
            cracks: &cracks,
            plan: &plan,
        },
        section,
    )
}

/// Interpolated `(u, v, w, θx, θy)` at a parent point.
pub fn interpolate(input: &ElementInput, dofs: &[f64], xi: [f64; 2], sides: &[(usize, f64)]) -> Result<[f64; 5]> {
    let shear = AssumedShear::new(input.coords)?;
    let ops = point_operators(input, &shear, xi, sides)?;
    let mut out = [0.0; 5];
    for (col, &q) in ops.n.iter().zip(dofs) {
        for r in 0..5 {
            out[r] += col[r] * q;
        }
    }
    Ok(out)
}

/// Generalized strains `(εp, εb, γ)` at a parent point.
pub fn strains(input: &ElementInput, dofs: &[f64], xi: [f64; 2], sides: &[(usize, f64)]) -> Result<[f64; 8]> {
    let shear = AssumedShear::new(input.coords)?;
    let ops = point_operators(input, &shear, xi, sides)?;
    let mut out = [0.0; 8];
    for (col, &q) in ops.b.iter().zip(dofs) {
        for r in 0..8 {
            out[r] += col[r] * q;
        }
    }
    Ok(out)
}
