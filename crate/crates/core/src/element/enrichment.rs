//! Crack-tip asymptotic bases and per-block enrichment functions.

use crate::crack::{CrackSet, TipId};
use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Four basis values with their polar derivatives `d/dr` and `d/dθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarBasis {
    pub value: [f64; 4],
    pub d_r: [f64; 4],
    pub d_theta: [f64; 4],
}

impl PolarBasis {
    /// Cartesian gradients in the tip frame `(x1 along e1, x2 along e2)`.
    pub fn local_gradients(&self, r: f64, theta: f64) -> [[f64; 2]; 4] {
        let (s, c) = theta.sin_cos();
        std::array::from_fn(|l| {
            [
                c * self.d_r[l] - s / r * self.d_theta[l],
                s * self.d_r[l] + c / r * self.d_theta[l],
            ]
        })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tip basis evaluated at r = {r}")))
    }
}

/// Displacement tip basis `r^{3/2} {sin θ/2, cos θ/2, sin 3θ/2, cos 3θ/2}`.
pub fn enrichment_g(r: f64, theta: f64) -> Result<PolarBasis> {
    check_radius(r)?;
    let r32 = r * r.sqrt();
    let dr32 = 1.5 * r.sqrt();
    let (s1, c1) = (0.5 * theta).sin_cos();
    let (s3, c3) = (1.5 * theta).sin_cos();
    let angular = [s1, c1, s3, c3];
    Ok(PolarBasis {
        value: angular.map(|a| r32 * a),
        d_r: angular.map(|a| dr32 * a),
        d_theta: [0.5 * c1, -0.5 * s1, 1.5 * c3, -1.5 * s3].map(|a| r32 * a),
    })
}

/// Rotation tip basis `√r {sin θ/2, cos θ/2, sin θ/2 sin θ, cos θ/2 sin θ}`.
pub fn enrichment_f(r: f64, theta: f64) -> Result<PolarBasis> {
    check_radius(r)?;
    let sr = r.sqrt();
    let (s, c) = (0.5 * theta).sin_cos();
    let (st, ct) = theta.sin_cos();
    let angular = [s, c, s * st, c * st];
    Ok(PolarBasis {
        value: angular.map(|a| sr * a),
        d_r: angular.map(|a| 0.5 / sr * a),
        d_theta: [
            0.5 * c,
            -0.5 * s,
            0.5 * c * st + s * ct,
            -0.5 * s * st + c * ct,
        ]
        .map(|a| sr * a),
    })
}

/// Tip bases of one crack tip evaluated at a point, with global gradients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TipValues {
    pub g: [f64; 4],
    pub dg: [Vec2; 4],
    pub f: [f64; 4],
    pub df: [Vec2; 4],
}

pub fn tip_values(cracks: &CrackSet, tip: TipId, p: Vec2) -> Result<TipValues> {
    let seg = cracks
        .segments
        .get(tip.crack)
        .ok_or_else(|| Error::Model(format!("unknown crack {}", tip.crack)))?;
    let (r, theta) = seg.tip_polar(tip.end, p)?;
    let (_, e1, e2) = seg.tip_frame(tip.end);
    let g = enrichment_g(r, theta)?;
    let f = enrichment_f(r, theta)?;
    let to_global = |d: [[f64; 2]; 4]| d.map(|[a, b]| e1 * a + e2 * b);
    Ok(TipValues {
        g: g.value,
        dg: to_global(g.local_gradients(r, theta)),
        f: f.value,
        df: to_global(f.local_gradients(r, theta)),
    })
}

/// A group of five nodal unknowns `(u, v, w, θx, θy)` sharing one enrichment function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Standard,
    Heaviside { crack: usize },
    /// Tip basis function `l` (0..4) of one crack tip.
    Tip { crack: usize, end: usize, l: usize },
}

impl Block {
    pub fn is_standard(&self) -> bool {
        matches!(self, Block::Standard)
    }

    pub fn tip(&self) -> Option<TipId> {
        match *self {
            Block::Tip { crack, end, .. } => Some(TipId { crack, end }),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Block::Standard => "std".into(),
            Block::Heaviside { crack } => format!("H{crack}"),
            Block::Tip { crack, end, l } => format!("T{crack}.{end}.{l}"),
        }
    }
}

/// Enrichment multipliers of one block: translations use `psi_t`, rotations `psi_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockFunction {
    pub psi_t: f64,
    pub grad_t: Vec2,
    pub psi_r: f64,
    pub grad_r: Vec2,
}

impl BlockFunction {
    pub const ONE: BlockFunction = BlockFunction {
        psi_t: 1.0,
        grad_t: Vec2::new(0.0, 0.0),
        psi_r: 1.0,
        grad_r: Vec2::new(0.0, 0.0),
    };

    fn constant(v: f64) -> Self {
        BlockFunction {
            psi_t: v,
            psi_r: v,
            ..Self::ONE
        }
    }
}

/// Evaluates block functions at one point, caching Heaviside signs and tip values.
pub struct EnrichmentEval<'a> {
    cracks: &'a CrackSet,
    p: Vec2,
    sides: &'a [(usize, f64)],
    tips: Vec<(TipId, TipValues)>,
}

impl<'a> EnrichmentEval<'a> {
    /// `sides` fixes the Heaviside sign for cracks whose faces bound the integration cell.
    pub fn new(cracks: &'a CrackSet, p: Vec2, sides: &'a [(usize, f64)]) -> Self {
        Self {
            cracks,
            p,
            sides,
            tips: Vec::new(),
        }
    }

    pub fn heaviside(&self, crack: usize) -> Result<f64> {
        if let Some(&(_, s)) = self.sides.iter().find(|(c, _)| *c == crack) {
            return Ok(s);
        }
        self.cracks.segments[crack].heaviside(self.p)
    }

    pub fn block(&mut self, b: Block) -> Result<BlockFunction> {
        match b {
            Block::Standard => Ok(BlockFunction::ONE),
            Block::Heaviside { crack } => Ok(BlockFunction::constant(self.heaviside(crack)?)),
            Block::Tip { crack, end, l } => {
                let id = TipId { crack, end };
                let tv = match self.tips.iter().find(|(t, _)| *t == id) {
                    Some((_, v)) => *v,
                    None => {
                        let v = tip_values(self.cracks, id, self.p)?;
                        self.tips.push((id, v));
                        v
                    }
                };
                Ok(BlockFunction {
                    psi_t: tv.g[l],
                    grad_t: tv.dg[l],
                    psi_r: tv.f[l],
                    grad_r: tv.df[l],
                })
            }
        }
    }
}
