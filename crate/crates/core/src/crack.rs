//! Mesh-independent straight cracks: level-set queries, tip frames,
//! element intersection and enrichment node classification.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{clip_convex, polygon_area, Vec2};
use crate::mesh::Mesh;

/// Default relative-area tolerance for Heaviside enrichment.
pub const AREA_TOLERANCE: f64 = 1e-4;

/// Distance (in element sizes) below which a node counts as lying on a crack line.
const NODE_PROXIMITY: f64 = 1e-9;
/// Shift (in element sizes) applied when a crack is too close to mesh entities.
const NUDGE: f64 = 1e-6;

/// Straight crack between `tips[0]` and `tips[1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrackSegment {
    pub tips: [Vec2; 2],
    /// Whether each tip lies strictly inside the plate (and gets tip enrichment).
    pub interior: [bool; 2],
}

impl CrackSegment {
    /// Crack with both tips treated as interior.
    pub fn from_tips(a: Vec2, b: Vec2) -> Result<Self> {
        if !((b - a).norm() > 0.0) {
            return Err(Error::Geometry("crack tips coincide".into()));
        }
        Ok(Self {
            tips: [a, b],
            interior: [true, true],
        })
    }

    /// Crack of length `d` centred at `center`, inclined `theta` radians from the x axis.
    pub fn centered(center: Vec2, d: f64, theta: f64) -> Result<Self> {
        if !(d > 0.0) {
            return Err(Error::Geometry(format!("crack length must be positive, got {d}")));
        }
        let half = Vec2::from_angle(theta) * (0.5 * d);
        Self::from_tips(center - half, center + half)
    }

    /// Mark tips outside the open rectangle `(0, a) x (0, b)` as non-interior.
    pub fn clip_to_plate(mut self, a: f64, b: f64) -> Self {
        for k in 0..2 {
            let p = self.tips[k];
            self.interior[k] = p.x > 0.0 && p.x < a && p.y > 0.0 && p.y < b;
        }
        self
    }

    pub fn length(&self) -> f64 {
        (self.tips[1] - self.tips[0]).norm()
    }

    /// Unit vector from tip 0 to tip 1.
    pub fn direction(&self) -> Vec2 {
        let d = self.tips[1] - self.tips[0];
        d * (1.0 / d.norm())
    }

    /// Unit normal pointing to the positive (left) side.
    pub fn normal(&self) -> Vec2 {
        self.direction().perp()
    }

    /// Signed distance from the crack line; positive left of tip 0 -> tip 1.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        (p - self.tips[0]).dot(self.normal())
    }

    /// Position of the projection of `p` along the crack, 0 at tip 0 and `length` at tip 1.
    pub fn abscissa(&self, p: Vec2) -> f64 {
        (p - self.tips[0]).dot(self.direction())
    }

    /// Generalized Heaviside value `±1`.
    pub fn heaviside(&self, p: Vec2) -> Result<f64> {
        let d = self.signed_distance(p);
        if d == 0.0 {
            return Err(Error::Geometry(format!(
                "point ({}, {}) lies on the crack line; resample",
                p.x, p.y
            )));
        }
        Ok(d.signum())
    }

    /// Tip origin and local axes: `e1` points ahead of the tip, away from the crack body.
    pub fn tip_frame(&self, end: usize) -> (Vec2, Vec2, Vec2) {
        let e1 = if end == 1 {
            self.direction()
        } else {
            -self.direction()
        };
        (self.tips[end], e1, e1.perp())
    }

    /// Polar coordinates `(r, θ)` of `p` in the frame of tip `end`; θ ∈ (-π, π].
    pub fn tip_polar(&self, end: usize, p: Vec2) -> Result<(f64, f64)> {
        if end > 1 {
            return Err(Error::Geometry(format!("tip index {end} out of range")));
        }
        if !self.interior[end] {
            return Err(Error::Geometry(format!("tip {end} is not an interior tip")));
        }
        let (o, e1, e2) = self.tip_frame(end);
        let d = p - o;
        let r = d.norm();
        if r == 0.0 {
            return Err(Error::Geometry("evaluation point coincides with a crack tip".into()));
        }
        let mut theta = d.dot(e2).atan2(d.dot(e1));
        if theta == -std::f64::consts::PI {
            theta = std::f64::consts::PI;
        }
        Ok((r, theta))
    }

    fn translate(&mut self, v: Vec2) {
        self.tips[0] = self.tips[0] + v;
        self.tips[1] = self.tips[1] + v;
    }
}

/// Identifies one interior tip of one crack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TipId {
    pub crack: usize,
    pub end: usize,
}

/// How a crack crosses one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementCut {
    None,
    /// The crack crosses the element from edge to edge.
    Through { points: [Vec2; 2], edges: [usize; 2] },
    /// An interior tip lies inside the element; the crack leaves through `edge` at `exit`.
    Tip { end: usize, tip: Vec2, exit: Vec2, edge: usize },
}

impl ElementCut {
    pub fn is_cut(&self) -> bool {
        !matches!(self, ElementCut::None)
    }
}

fn point_in_convex(quad: &[Vec2; 4], p: Vec2) -> bool {
    (0..4).all(|k| (quad[(k + 1) % 4] - quad[k]).cross(p - quad[k]) > 0.0)
}

/// Intersect a crack segment with a convex counter-clockwise quadrilateral.
///
/// Degenerate contacts (through a vertex, along an edge) are reported as
/// geometry errors; [`regularize`] removes them beforehand.
pub fn intersect_element(seg: &CrackSegment, quad: &[Vec2; 4]) -> Result<ElementCut> {
    let size = (quad[2] - quad[0]).norm().max((quad[3] - quad[1]).norm());
    let tol = 1e-12 * size;
    let (p, q) = (seg.tips[0], seg.tips[1]);
    let pq = q - p;
    let mut hits: Vec<(Vec2, usize)> = Vec::with_capacity(2);
    for k in 0..4 {
        let a = quad[k];
        let b = quad[(k + 1) % 4];
        let ab = b - a;
        let denom = pq.cross(ab);
        let ap = a - p;
        if denom.abs() <= 1e-14 * pq.norm() * ab.norm() {
            if ap.cross(pq).abs() <= tol * pq.norm() {
                let s0 = ap.dot(pq) / pq.dot(pq);
                let s1 = (b - p).dot(pq) / pq.dot(pq);
                if s0.max(s1) >= 0.0 && s0.min(s1) <= 1.0 {
                    return Err(Error::Geometry("crack runs along an element edge".into()));
                }
            }
            continue;
        }
        let s = ap.cross(ab) / denom;
        let t = ap.cross(pq) / denom;
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            let x = p + pq * s;
            if hits.iter().any(|(h, _)| (*h - x).norm() <= tol) {
                return Err(Error::Geometry("crack passes through an element vertex".into()));
            }
            hits.push((x, k));
        }
    }
    let inside = [
        seg.interior[0] && point_in_convex(quad, seg.tips[0]),
        seg.interior[1] && point_in_convex(quad, seg.tips[1]),
    ];
    match (inside, hits.len()) {
        ([true, true], _) => Err(Error::Geometry(
            "both crack tips inside one element; refine the mesh".into(),
        )),
        ([false, false], 0) => Ok(ElementCut::None),
        ([false, false], 2) => Ok(ElementCut::Through {
            points: [hits[0].0, hits[1].0],
            edges: [hits[0].1, hits[1].1],
        }),
        ([true, false], 1) | ([false, true], 1) => {
            let end = if inside[0] { 0 } else { 1 };
            Ok(ElementCut::Tip {
                end,
                tip: seg.tips[end],
                exit: hits[0].0,
                edge: hits[0].1,
            })
        }
        (_, n) => Err(Error::Geometry(format!(
            "degenerate crack/element intersection ({n} edge crossings)"
        ))),
    }
}

/// Collection of straight cracks in one plate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrackSet {
    pub segments: Vec<CrackSegment>,
}

impl CrackSet {
    pub fn new(segments: Vec<CrackSegment>) -> Self {
        Self { segments }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn interior_tips(&self) -> Vec<TipId> {
        let mut out = Vec::new();
        for (c, s) in self.segments.iter().enumerate() {
            for end in 0..2 {
                if s.interior[end] {
                    out.push(TipId { crack: c, end });
                }
            }
        }
        out
    }
}

/// Shift cracks off degenerate positions relative to the mesh.
///
/// A crack line passing within `1e-9 h` of a node is moved by `1e-6 h` along its
/// normal; an interior tip within `1e-9 h` of an element edge is pushed `1e-6 h`
/// further ahead. `h` is the element size. Returns the adjusted set.
pub fn regularize(cracks: &CrackSet, mesh: &Mesh) -> Result<CrackSet> {
    let he = mesh.element_size();
    let mut out = cracks.clone();
    for (ci, seg) in out.segments.iter_mut().enumerate() {
        let mut settled = false;
        for _ in 0..50 {
            let mut moved = false;
            let len = seg.length();
            let near_line = mesh.nodes.iter().any(|&p| {
                let s = seg.abscissa(p);
                s >= -he && s <= len + he && seg.signed_distance(p).abs() < NODE_PROXIMITY * he
            });
            if near_line {
                let n = seg.normal();
                seg.translate(n * (NUDGE * he));
                moved = true;
            }
            for end in 0..2 {
                if !seg.interior[end] {
                    continue;
                }
                if tip_near_edge(mesh, seg.tips[end], he) {
                    let (_, e1, _) = seg.tip_frame(end);
                    seg.tips[end] = seg.tips[end] + e1 * (NUDGE * he);
                    moved = true;
                }
            }
            if !moved {
                settled = true;
                break;
            }
            log::debug!("crack {ci}: nudged off a degenerate mesh position");
        }
        if !settled {
            return Err(Error::Geometry(format!("crack {ci}: could not move off mesh entities")));
        }
    }
    Ok(out)
}

fn tip_near_edge(mesh: &Mesh, p: Vec2, he: f64) -> bool {
    let Some(e) = mesh.locate(p) else {
        return false;
    };
    let q = mesh.element_coords(e);
    (0..4).any(|k| {
        let a = q[k];
        let b = q[(k + 1) % 4];
        let ab = b - a;
        let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
        (a + ab * t - p).norm() < NODE_PROXIMITY * he
    })
}

/// Enrichment of the nodes by one crack.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrackEnrichment {
    /// Nodes whose support is fully cut (Heaviside enrichment).
    pub heaviside: BTreeSet<usize>,
    /// Nodes of elements containing an interior tip, mapped to the tip end(s).
    pub tips: BTreeMap<usize, Vec<usize>>,
    /// Fully cut nodes dropped by the area criterion.
    pub excluded: BTreeSet<usize>,
    /// Cut description of every element the crack touches.
    pub cuts: BTreeMap<usize, ElementCut>,
}

/// Per-crack node sets for a whole crack set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeClassification {
    pub per_crack: Vec<CrackEnrichment>,
}

impl NodeClassification {
    pub fn heaviside_nodes(&self) -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for (c, ce) in self.per_crack.iter().enumerate() {
            s.extend(ce.heaviside.iter().map(|&n| (n, c)));
        }
        s
    }

    pub fn tip_nodes(&self) -> BTreeMap<usize, Vec<TipId>> {
        let mut m: BTreeMap<usize, Vec<TipId>> = BTreeMap::new();
        for (c, ce) in self.per_crack.iter().enumerate() {
            for (&n, ends) in &ce.tips {
                m.entry(n)
                    .or_default()
                    .extend(ends.iter().map(|&end| TipId { crack: c, end }));
            }
        }
        m
    }

    pub fn is_empty(&self) -> bool {
        self.per_crack
            .iter()
            .all(|c| c.heaviside.is_empty() && c.tips.is_empty())
    }
}

/// Areas of a polygon on the positive and negative side of a crack line.
pub fn split_areas(seg: &CrackSegment, poly: &[Vec2]) -> (f64, f64) {
    let above = clip_convex(poly, |p| seg.signed_distance(p));
    let below = clip_convex(poly, |p| -seg.signed_distance(p));
    (polygon_area(&above), polygon_area(&below))
}

/// Classify mesh nodes into Heaviside-enriched and tip-enriched sets.
pub fn classify_nodes(cracks: &CrackSet, mesh: &Mesh, tol: f64) -> Result<NodeClassification> {
    let supports = mesh.node_elements();
    let mut per_crack = Vec::with_capacity(cracks.len());
    for (ci, seg) in cracks.segments.iter().enumerate() {
        let mut ce = CrackEnrichment::default();
        for e in 0..mesh.n_elements() {
            let quad = mesh.element_coords(e);
            let cut = intersect_element(seg, &quad)
                .map_err(|err| err.context(&format!("crack {ci}, element {e}")))?;
            if cut.is_cut() {
                ce.cuts.insert(e, cut);
            }
        }
        if ce.cuts.is_empty() {
            return Err(Error::Config(format!("crack {ci} does not intersect the plate")));
        }
        for (&e, cut) in &ce.cuts {
            if let ElementCut::Tip { end, .. } = cut {
                for &n in &mesh.elements[e] {
                    let ends = ce.tips.entry(n).or_default();
                    if !ends.contains(end) {
                        ends.push(*end);
                    }
                }
            }
        }
        let mut candidates = BTreeSet::new();
        for (&e, cut) in &ce.cuts {
            if matches!(cut, ElementCut::Through { .. }) {
                candidates.extend(mesh.elements[e].iter().copied());
            }
        }
        for n in candidates {
            if ce.tips.contains_key(&n) {
                continue;
            }
            let (mut above, mut below) = (0.0, 0.0);
            for &e in &supports[n] {
                let quad = mesh.element_coords(e);
                match ce.cuts.get(&e) {
                    Some(ElementCut::Through { .. }) => {
                        let (ab, be) = split_areas(seg, &quad);
                        above += ab;
                        below += be;
                    }
                    _ => {
                        let c = (quad[0] + quad[1] + quad[2] + quad[3]) * 0.25;
                        let area = polygon_area(&quad);
                        if seg.signed_distance(c) >= 0.0 {
                            above += area;
                        } else {
                            below += area;
                        }
                    }
                }
            }
            let total = above + below;
            if above / total < tol || below / total < tol {
                ce.excluded.insert(n);
            } else {
                ce.heaviside.insert(n);
            }
        }
        per_crack.push(ce);
    }
    Ok(NodeClassification { per_crack })
}
