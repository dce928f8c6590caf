//! Integration point sets for standard, cut and tip elements.

use crate::crack::{CrackSet, ElementCut};
use crate::error::{Error, Result};
use crate::geom::{clip_convex, polygon_area, triangle_area, Vec2};
use crate::quadrature::{square_rule, triangle_rule7, triangle_rule_collapsed};

use super::shape::{inverse_map, map_point};

/// Gauss order of collapsed rules on cells touching a crack tip.
pub const TIP_RULE_ORDER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanKind {
    /// 2x2 Gauss on the parent square.
    Standard,
    /// Cells split along crack faces or graded towards a nearby tip.
    Subdivided,
    /// Fan of cells around a tip inside the element.
    Tip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadPoint {
    pub xi: [f64; 2],
    /// Parent-square weight; `weight * det J` is the physical weight.
    pub weight: f64,
    pub x: Vec2,
    /// Crack sides fixed by the integration cell, `(crack, ±1)`.
    pub sides: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraturePlan {
    pub kind: PlanKind,
    pub points: Vec<QuadPoint>,
}

impl QuadraturePlan {
    pub fn standard(coords: &[Vec2; 4]) -> Result<Self> {
        let points = square_rule(2)
            .into_iter()
            .map(|(xi, w)| {
                Ok(QuadPoint {
                    xi,
                    weight: w,
                    x: map_point(coords, xi[0], xi[1])?.x,
                    sides: Vec::new(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind: PlanKind::Standard,
            points,
        })
    }

    pub fn weight_sum(&self) -> f64 {
        self.points.iter().map(|p| p.weight).sum()
    }
}

struct Cell {
    pts: Vec<Vec2>,
    sides: Vec<(usize, f64)>,
}

/// Build the integration plan of one element.
///
/// `cuts` lists the cracks crossing the element; `tips` the positions of crack
/// tips whose enrichment is active on any node of the element.
pub fn quadrature_plan(
    coords: &[Vec2; 4],
    cuts: &[(usize, ElementCut)],
    cracks: &CrackSet,
    tips: &[Vec2],
) -> Result<QuadraturePlan> {
    if cuts.is_empty() && tips.is_empty() {
        return QuadraturePlan::standard(coords);
    }
    let area = polygon_area(coords);
    let mut tip_cut = None;
    for (c, cut) in cuts {
        if let ElementCut::Tip { tip, exit, edge, .. } = cut {
            if tip_cut.is_some() {
                return Err(Error::Geometry("two crack tips inside one element".into()));
            }
            tip_cut = Some((*c, *tip, *exit, *edge));
        }
    }
    let mut cells = Vec::new();
    let mut apex = None;
    match tip_cut {
        Some((_, tip, exit, edge)) => {
            let mut boundary = Vec::with_capacity(5);
            for k in 0..4 {
                boundary.push(coords[k]);
                if k == edge {
                    boundary.push(exit);
                }
            }
            for k in 0..boundary.len() {
                cells.push(Cell {
                    pts: vec![tip, boundary[k], boundary[(k + 1) % boundary.len()]],
                    sides: Vec::new(),
                });
            }
            apex = Some(tip);
        }
        None => cells.push(Cell {
            pts: coords.to_vec(),
            sides: Vec::new(),
        }),
    }
    for (c, cut) in cuts {
        if !matches!(cut, ElementCut::Through { .. }) {
            continue;
        }
        let seg = &cracks.segments[*c];
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            for sign in [1.0, -1.0] {
                let pts = clip_convex(&cell.pts, |p| sign * seg.signed_distance(p));
                if polygon_area(&pts) > 1e-14 * area {
                    let mut sides = cell.sides.clone();
                    sides.push((*c, sign));
                    next.push(Cell { pts, sides });
                }
            }
        }
        cells = next;
    }

    let mut points = Vec::new();
    for cell in &cells {
        let (origin, ring) = match apex.filter(|a| cell.pts.iter().any(|p| (*p - *a).norm() == 0.0)) {
            Some(a) => {
                let k = cell.pts.iter().position(|p| (*p - a).norm() == 0.0).unwrap_or(0);
                rotate_to(&cell.pts, k)
            }
            None => match nearest_tip(&cell.pts, tips) {
                Some(t) => fan_origin_towards(&cell.pts, t),
                None => (cell.pts[0], cell.pts[1..].to_vec()),
            },
        };
        let collapsed = apex.is_some() || !tips.is_empty();
        for k in 0..ring.len().saturating_sub(1) {
            let (b, c) = (ring[k], ring[k + 1]);
            if triangle_area(origin, b, c).abs() <= 1e-14 * area {
                continue;
            }
            let rule = if collapsed {
                triangle_rule_collapsed(origin, b, c, TIP_RULE_ORDER)
            } else {
                triangle_rule7(origin, b, c)
            };
            for (x, w) in rule {
                let xi = inverse_map(coords, x)?;
                let det = map_point(coords, xi[0], xi[1])?.det;
                points.push(QuadPoint {
                    xi,
                    weight: w / det,
                    x,
                    sides: cell.sides.clone(),
                });
            }
        }
    }
    if points.is_empty() {
        return Err(Error::Geometry("element subdivision produced no integration cells".into()));
    }
    let kind = if tip_cut.is_some() {
        PlanKind::Tip
    } else {
        PlanKind::Subdivided
    };
    Ok(QuadraturePlan { kind, points })
}

/// Split a closed ring into (vertex k, remaining vertices in order).
fn rotate_to(pts: &[Vec2], k: usize) -> (Vec2, Vec<Vec2>) {
    let n = pts.len();
    let ring = (1..n).map(|j| pts[(k + j) % n]).collect();
    (pts[k], ring)
}

fn nearest_tip(pts: &[Vec2], tips: &[Vec2]) -> Option<Vec2> {
    let centroid = pts.iter().fold(Vec2::default(), |s, p| s + *p) * (1.0 / pts.len() as f64);
    tips.iter()
        .copied()
        .min_by(|a, b| (*a - centroid).norm().total_cmp(&(*b - centroid).norm()))
}

/// Fan origin on the cell boundary closest to `t`, inserted as a vertex if needed.
fn fan_origin_towards(pts: &[Vec2], t: Vec2) -> (Vec2, Vec<Vec2>) {
    let n = pts.len();
    let scale = pts.iter().map(|p| (*p - pts[0]).norm()).fold(0.0, f64::max);
    let mut best = (f64::INFINITY, 0, 0.0);
    for k in 0..n {
        let a = pts[k];
        let ab = pts[(k + 1) % n] - a;
        let s = ((t - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
        let d = (a + ab * s - t).norm();
        if d < best.0 {
            best = (d, k, s);
        }
    }
    let (_, k, s) = best;
    let a = pts[k];
    let b = pts[(k + 1) % n];
    let q = a + (b - a) * s;
    if (q - a).norm() <= 1e-12 * scale {
        rotate_to(pts, k)
    } else if (q - b).norm() <= 1e-12 * scale {
        rotate_to(pts, (k + 1) % n)
    } else {
        // fan from q over b, ..., a
        (q, (1..=n).map(|j| pts[(k + j) % n]).collect())
    }
}
