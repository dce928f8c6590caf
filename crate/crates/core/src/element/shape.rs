//! Bilinear shape functions, isoparametric mapping and assumed transverse shear.

use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Parent coordinates of the four element corners (counter-clockwise).
pub const CORNERS: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];

/// Bilinear shape functions and their parent derivatives `[dN/dξ, dN/dη]`.
pub fn shape_q4(xi: f64, eta: f64) -> ([f64; 4], [[f64; 2]; 4]) {
    let n = CORNERS.map(|[a, b]| 0.25 * (1.0 + a * xi) * (1.0 + b * eta));
    let dn = CORNERS.map(|[a, b]| [0.25 * a * (1.0 + b * eta), 0.25 * b * (1.0 + a * xi)]);
    (n, dn)
}

/// Isoparametric map evaluated at one parent point.
#[derive(Debug, Clone, Copy)]
pub struct Mapping {
    pub n: [f64; 4],
    /// Physical gradients of the shape functions.
    pub dn: [Vec2; 4],
    /// `[[x,ξ, y,ξ], [x,η, y,η]]`.
    pub jac: [[f64; 2]; 2],
    pub det: f64,
    pub inv: [[f64; 2]; 2],
    pub x: Vec2,
}

pub fn jacobian(coords: &[Vec2; 4], dn: &[[f64; 2]; 4]) -> [[f64; 2]; 2] {
    let mut j = [[0.0; 2]; 2];
    for k in 0..4 {
        j[0][0] += dn[k][0] * coords[k].x;
        j[0][1] += dn[k][0] * coords[k].y;
        j[1][0] += dn[k][1] * coords[k].x;
        j[1][1] += dn[k][1] * coords[k].y;
    }
    j
}

pub fn map_point(coords: &[Vec2; 4], xi: f64, eta: f64) -> Result<Mapping> {
    let (n, dnp) = shape_q4(xi, eta);
    let jac = jacobian(coords, &dnp);
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if !(det > 0.0) {
        return Err(Error::Geometry(format!(
            "non-positive Jacobian determinant {det} at ({xi}, {eta})"
        )));
    }
    let inv = [
        [jac[1][1] / det, -jac[0][1] / det],
        [-jac[1][0] / det, jac[0][0] / det],
    ];
    let dn = dnp.map(|[a, b]| Vec2::new(inv[0][0] * a + inv[0][1] * b, inv[1][0] * a + inv[1][1] * b));
    let mut x = Vec2::default();
    for k in 0..4 {
        x = x + coords[k] * n[k];
    }
    Ok(Mapping {
        n,
        dn,
        jac,
        det,
        inv,
        x,
    })
}

/// Parent coordinates of a physical point inside the element (Newton iteration).
pub fn inverse_map(coords: &[Vec2; 4], p: Vec2) -> Result<[f64; 2]> {
    let size = (coords[2] - coords[0]).norm();
    let mut xi = [0.0, 0.0];
    for _ in 0..30 {
        let m = map_point(coords, xi[0], xi[1])?;
        let r = p - m.x;
        // d(xi) = J^{-T} r since x,ξ is the first row of J
        let dxi = m.inv[0][0] * r.x + m.inv[1][0] * r.y;
        let deta = m.inv[0][1] * r.x + m.inv[1][1] * r.y;
        xi[0] += dxi;
        xi[1] += deta;
        if r.norm() <= 1e-15 * size {
            return Ok(xi);
        }
    }
    let m = map_point(coords, xi[0], xi[1])?;
    if (p - m.x).norm() <= 1e-12 * size {
        Ok(xi)
    } else {
        Err(Error::Geometry(format!(
            "inverse isoparametric map did not converge for ({}, {})",
            p.x, p.y
        )))
    }
}

/// Coefficients of the assumed physical shear strains in the nodal `(w, θx, θy)`.
///
/// `rows[c][k]` gives the contribution of node `k` to shear component `c`
/// (0: `γxz = θx + w,x`, 1: `γyz = θy + w,y`). Covariant strains are sampled
/// at the edge midpoints and interpolated linearly across the element.
pub type ShearRows = [[[f64; 3]; 4]; 2];

#[derive(Debug, Clone, Copy)]
pub struct AssumedShear {
    /// Covariant samples: `[ξ at (0,-1), ξ at (0,1), η at (-1,0), η at (1,0)]`.
    samples: [[[f64; 3]; 4]; 4],
}

impl AssumedShear {
    pub fn new(coords: &[Vec2; 4]) -> Result<Self> {
        let tying = [([0.0, -1.0], 0), ([0.0, 1.0], 0), ([-1.0, 0.0], 1), ([1.0, 0.0], 1)];
        let mut samples = [[[0.0; 3]; 4]; 4];
        for (s, ([xi, eta], dir)) in tying.into_iter().enumerate() {
            let m = map_point(coords, xi, eta)?;
            let (_, dnp) = shape_q4(xi, eta);
            let (xd, yd) = (m.jac[dir][0], m.jac[dir][1]);
            for k in 0..4 {
                samples[s][k] = [dnp[k][dir], xd * m.n[k], yd * m.n[k]];
            }
        }
        Ok(Self { samples })
    }

    pub fn rows(&self, xi: f64, eta: f64, m: &Mapping) -> ShearRows {
        let mut out = [[[0.0; 3]; 4]; 2];
        for k in 0..4 {
            for d in 0..3 {
                let g_xi = 0.5 * (1.0 - eta) * self.samples[0][k][d] + 0.5 * (1.0 + eta) * self.samples[1][k][d];
                let g_eta = 0.5 * (1.0 - xi) * self.samples[2][k][d] + 0.5 * (1.0 + xi) * self.samples[3][k][d];
                out[0][k][d] = m.inv[0][0] * g_xi + m.inv[0][1] * g_eta;
                out[1][k][d] = m.inv[1][0] * g_xi + m.inv[1][1] * g_eta;
            }
        }
        out
    }
}
