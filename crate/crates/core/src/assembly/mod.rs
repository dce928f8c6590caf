//! Degree-of-freedom numbering, boundary conditions and global assembly.

mod sparse;

pub use sparse::{check_square, Profile, SymSparse};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::crack::{classify_nodes, regularize, CrackSet, ElementCut, NodeClassification, AREA_TOLERANCE};
use crate::element::{element_matrices, quadrature_plan, Block, ElementInput, ElementLayout, ElementMatrices, BLOCK_DOFS};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::mesh::Mesh;
use crate::par::{self, Execution};
use crate::section::SectionMatrices;

/// Plate edge support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// Simply supported on all edges.
    #[serde(rename = "SS")]
    Ss,
    /// Simply supported with the in-plane displacement tangential to each
    /// edge held instead of the normal one (the Navier-solution support).
    #[serde(rename = "SS2")]
    Ss2,
    /// Clamped on all edges.
    #[serde(rename = "CC")]
    Cc,
    /// Clamped at `x = 0`, other edges free.
    #[serde(rename = "CFFF")]
    Cfff,
    /// No supports (used for checks on the free-free matrices).
    #[serde(rename = "FREE")]
    Free,
}

impl BoundaryCondition {
    /// Constrained components `(u, v, w, θx, θy)` of a node at `p`.
    pub fn mask(&self, p: Vec2, a: f64, b: f64) -> [bool; 5] {
        let tol = 1e-12 * a.max(b);
        let on_x = p.x.abs() <= tol || (p.x - a).abs() <= tol;
        let on_y = p.y.abs() <= tol || (p.y - b).abs() <= tol;
        match self {
            BoundaryCondition::Ss => {
                let mut m = [false; 5];
                if on_x {
                    m[0] = true;
                    m[2] = true;
                    m[4] = true;
                }
                if on_y {
                    m[1] = true;
                    m[2] = true;
                    m[3] = true;
                }
                m
            }
            BoundaryCondition::Ss2 => {
                let mut m = [false; 5];
                if on_x {
                    m[1] = true;
                    m[2] = true;
                    m[4] = true;
                }
                if on_y {
                    m[0] = true;
                    m[2] = true;
                    m[3] = true;
                }
                m
            }
            BoundaryCondition::Cc => [on_x || on_y; 5],
            BoundaryCondition::Cfff => [p.x.abs() <= tol; 5],
            BoundaryCondition::Free => [false; 5],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            BoundaryCondition::Ss => "SS",
            BoundaryCondition::Ss2 => "SS2",
            BoundaryCondition::Cc => "CC",
            BoundaryCondition::Cfff => "CFFF",
            BoundaryCondition::Free => "FREE",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SS" | "SSSS" => Ok(BoundaryCondition::Ss),
            "SS2" => Ok(BoundaryCondition::Ss2),
            "CC" | "CCCC" => Ok(BoundaryCondition::Cc),
            "CFFF" | "CANTILEVER" => Ok(BoundaryCondition::Cfff),
            "FREE" | "FFFF" => Ok(BoundaryCondition::Free),
            other => Err(Error::Config(format!("unknown boundary condition `{other}`"))),
        }
    }
}

/// Global numbering of all nodal blocks and of the unconstrained subset.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    pub node_blocks: Vec<Vec<Block>>,
    /// Global index of the first unknown of each node.
    pub node_start: Vec<usize>,
    /// Nodes in numbering order.
    pub node_order: Vec<usize>,
    pub n_dofs: usize,
    /// Global index -> position among free unknowns.
    pub free: Vec<Option<usize>>,
    pub free_to_global: Vec<usize>,
}

const COMPONENTS: [&str; 5] = ["u", "v", "w", "thx", "thy"];

impl DofMap {
    pub fn n_free(&self) -> usize {
        self.free_to_global.len()
    }

    pub fn n_constrained(&self) -> usize {
        self.n_dofs - self.n_free()
    }

    /// Global unknowns of one element in element dof order.
    pub fn element_dofs(&self, conn: &[usize; 4]) -> Vec<usize> {
        let mut out = Vec::new();
        for &n in conn {
            let count = BLOCK_DOFS * self.node_blocks[n].len();
            out.extend(self.node_start[n]..self.node_start[n] + count);
        }
        out
    }

    /// `(node, block, component)` of a global unknown.
    pub fn locate(&self, g: usize) -> (usize, Block, usize) {
        let pos = self.node_order.partition_point(|&n| self.node_start[n] <= g) - 1;
        let node = self.node_order[pos];
        let off = g - self.node_start[node];
        (node, self.node_blocks[node][off / BLOCK_DOFS], off % BLOCK_DOFS)
    }

    /// Human-readable name of a free unknown, for diagnostics.
    pub fn describe_free(&self, f: usize) -> String {
        match self.free_to_global.get(f) {
            Some(&g) => {
                let (node, block, c) = self.locate(g);
                format!("free dof {f} (node {node}, block {}, {})", block.label(), COMPONENTS[c])
            }
            None => format!("free dof {f}"),
        }
    }

    /// Expand a vector over free unknowns to all unknowns (constrained ones are zero).
    pub fn expand(&self, free_values: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_dofs];
        for (f, &g) in self.free_to_global.iter().enumerate() {
            out[g] = free_values[f];
        }
        out
    }
}

/// Node ordering that keeps the bandwidth small: the shorter grid direction runs fastest.
pub fn band_node_order(mesh: &Mesh) -> Vec<usize> {
    let (nx1, ny1) = (mesh.nx + 1, mesh.ny + 1);
    if mesh.nx > mesh.ny {
        (0..nx1).flat_map(|i| (0..ny1).map(move |j| j * nx1 + i)).collect()
    } else {
        (0..mesh.n_nodes()).collect()
    }
}

/// Enrichment blocks of every node: standard first, then per crack Heaviside and tip blocks.
pub fn node_blocks(n_nodes: usize, cl: &NodeClassification) -> Vec<Vec<Block>> {
    let mut out = vec![vec![Block::Standard]; n_nodes];
    for (crack, ce) in cl.per_crack.iter().enumerate() {
        for &n in &ce.heaviside {
            out[n].push(Block::Heaviside { crack });
        }
        for (&n, ends) in &ce.tips {
            let mut ends = ends.clone();
            ends.sort_unstable();
            for end in ends {
                for l in 0..4 {
                    out[n].push(Block::Tip { crack, end, l });
                }
            }
        }
    }
    out
}

pub fn build_dof_map(mesh: &Mesh, blocks: Vec<Vec<Block>>, bc: BoundaryCondition) -> DofMap {
    let n_nodes = mesh.n_nodes();
    let mut node_start = vec![0; n_nodes];
    let mut next = 0;
    let order = band_node_order(mesh);
    for &n in &order {
        node_start[n] = next;
        next += BLOCK_DOFS * blocks[n].len();
    }
    let n_dofs = next;
    let mut constrained = vec![false; n_dofs];
    for n in 0..n_nodes {
        let mask = bc.mask(mesh.nodes[n], mesh.a, mesh.b);
        for bi in 0..blocks[n].len() {
            for c in 0..BLOCK_DOFS {
                constrained[node_start[n] + BLOCK_DOFS * bi + c] = mask[c];
            }
        }
    }
    let mut free = vec![None; n_dofs];
    let mut free_to_global = Vec::with_capacity(n_dofs);
    for g in 0..n_dofs {
        if !constrained[g] {
            free[g] = Some(free_to_global.len());
            free_to_global.push(g);
        }
    }
    DofMap {
        node_blocks: blocks,
        node_start,
        node_order: order,
        n_dofs,
        free,
        free_to_global,
    }
}

/// Discretization data independent of the material section.
#[derive(Debug, Clone)]
pub struct ModelLayout {
    pub mesh: Mesh,
    /// Cracks after moving them off degenerate mesh positions.
    pub cracks: CrackSet,
    pub classification: NodeClassification,
    pub bc: BoundaryCondition,
    pub dofs: DofMap,
    pub layouts: Vec<ElementLayout>,
    pub cuts: Vec<Vec<(usize, ElementCut)>>,
    /// Positions of crack tips whose enrichment is active in each element.
    pub element_tips: Vec<Vec<Vec2>>,
}

pub fn build_layout(mesh: Mesh, cracks: &CrackSet, bc: BoundaryCondition) -> Result<ModelLayout> {
    let cracks = regularize(cracks, &mesh)?;
    let classification = classify_nodes(&cracks, &mesh, AREA_TOLERANCE)?;
    let blocks = node_blocks(mesh.n_nodes(), &classification);
    let dofs = build_dof_map(&mesh, blocks, bc);
    let mut layouts = Vec::with_capacity(mesh.n_elements());
    let mut cuts = Vec::with_capacity(mesh.n_elements());
    let mut element_tips = Vec::with_capacity(mesh.n_elements());
    for (e, conn) in mesh.elements.iter().enumerate() {
        let layout = ElementLayout {
            blocks: conn.map(|n| dofs.node_blocks[n].clone()),
        };
        let mut tips = Vec::new();
        for (_, b) in layout.block_list() {
            if let Some(t) = b.tip() {
                let p = cracks.segments[t.crack].tips[t.end];
                if !tips.contains(&p) {
                    tips.push(p);
                }
            }
        }
        let ecuts: Vec<_> = classification
            .per_crack
            .iter()
            .enumerate()
            .filter_map(|(c, ce)| ce.cuts.get(&e).map(|cut| (c, *cut)))
            .collect();
        layouts.push(layout);
        cuts.push(ecuts);
        element_tips.push(tips);
    }
    Ok(ModelLayout {
        mesh,
        cracks,
        classification,
        bc,
        dofs,
        layouts,
        cuts,
        element_tips,
    })
}

impl ModelLayout {
    pub fn n_heaviside_nodes(&self) -> usize {
        self.classification.per_crack.iter().map(|c| c.heaviside.len()).sum()
    }

    pub fn n_tip_node_blocks(&self) -> usize {
        self.classification
            .per_crack
            .iter()
            .map(|c| c.tips.values().map(Vec::len).sum::<usize>())
            .sum()
    }

    /// Stiffness and mass of element `e` in element dof order.
    pub fn element_contribution(&self, e: usize, section: &SectionMatrices) -> Result<ElementMatrices> {
        let coords = self.mesh.element_coords(e);
        let plan = quadrature_plan(&coords, &self.cuts[e], &self.cracks, &self.element_tips[e])
            .map_err(|err| err.context(&format!("element {e}")))?;
        element_matrices(
            &ElementInput {
                coords: &coords,
                layout: &self.layouts[e],
                cracks: &self.cracks,
                plan: &plan,
            },
            section,
        )
        .map_err(|err| err.context(&format!("element {e}")))
    }

    /// Sparsity pattern over free unknowns.
    fn pattern(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.dofs.n_free()];
        for conn in &self.mesh.elements {
            let free: Vec<usize> = self
                .dofs
                .element_dofs(conn)
                .into_iter()
                .filter_map(|g| self.dofs.free[g])
                .collect();
            for &i in &free {
                for &j in &free {
                    if i <= j {
                        rows[i].push(j);
                    }
                }
            }
        }
        rows
    }

    /// Assemble the constrained global matrices, processing elements in `order`.
    pub fn assemble_in_order(
        &self,
        section: &SectionMatrices,
        order: &[usize],
        exec: Execution,
    ) -> Result<(SymSparse, SymSparse)> {
        let pattern = self.pattern();
        let mut k = SymSparse::from_pattern(pattern);
        let mut m = k.clone();
        let element_mats = par::map(exec, order, |&e| self.element_contribution(e, section));
        for (&e, em) in order.iter().zip(element_mats) {
            let em = em?;
            let gdofs = self.dofs.element_dofs(&self.mesh.elements[e]);
            let free: Vec<Option<usize>> = gdofs.iter().map(|&g| self.dofs.free[g]).collect();
            let n = em.n;
            for a in 0..n {
                let Some(i) = free[a] else { continue };
                for b in 0..n {
                    let Some(j) = free[b] else { continue };
                    if i <= j {
                        k.add(i, j, em.k[a * n + b]);
                        m.add(i, j, em.m[a * n + b]);
                    }
                }
            }
        }
        Ok((k, m))
    }
}

/// Discretized plate: layout, section and constrained global matrices.
#[derive(Debug, Clone)]
pub struct EnrichedModel {
    pub layout: ModelLayout,
    pub section: SectionMatrices,
    pub k: SymSparse,
    pub m: SymSparse,
}

pub fn assemble(layout: ModelLayout, section: SectionMatrices, exec: Execution) -> Result<EnrichedModel> {
    let order: Vec<usize> = (0..layout.mesh.n_elements()).collect();
    let (k, m) = layout.assemble_in_order(&section, &order, exec)?;
    log::debug!(
        "assembled {} free of {} unknowns, {} stored entries",
        layout.dofs.n_free(),
        layout.dofs.n_dofs,
        k.nnz()
    );
    Ok(EnrichedModel {
        layout,
        section,
        k,
        m,
    })
}

/// Build and assemble a model in one step.
pub fn build_model(
    mesh: Mesh,
    cracks: &CrackSet,
    section: SectionMatrices,
    bc: BoundaryCondition,
    exec: Execution,
) -> Result<EnrichedModel> {
    let layout = build_layout(mesh, cracks, bc)?;
    assemble(layout, section, exec)
}

impl EnrichedModel {
    pub fn n_free(&self) -> usize {
        self.layout.dofs.n_free()
    }

    /// Write `K` and `M` in coordinate format to `dir/stiffness.mtx` and `dir/mass.mtx`.
    pub fn dump(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, mat) in [("stiffness.mtx", &self.k), ("mass.mtx", &self.m)] {
            let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join(name))?);
            mat.write_coordinate(&mut f)?;
        }
        Ok(())
    }
}
