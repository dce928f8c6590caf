//! Structured quadrilateral meshes of a rectangular plate.

use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Structured mesh of `[0, a] x [0, b]`, nodes numbered lexicographically (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub a: f64,
    pub b: f64,
    pub nx: usize,
    pub ny: usize,
    pub nodes: Vec<Vec2>,
    /// Counter-clockwise node ids of each element.
    pub elements: Vec<[usize; 4]>,
}

pub fn generate_mesh(a: f64, b: f64, nx: usize, ny: usize) -> Result<Mesh> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Config(format!("plate dimensions must be positive, got {a} x {b}")));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::Config(format!("mesh divisions must be >= 1, got {nx} x {ny}")));
    }
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        let y = if j == ny { b } else { b * j as f64 / ny as f64 };
        for i in 0..=nx {
            let x = if i == nx { a } else { a * i as f64 / nx as f64 };
            nodes.push(Vec2::new(x, y));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut elements = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            elements.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    Ok(Mesh {
        a,
        b,
        nx,
        ny,
        nodes,
        elements,
    })
}

impl Mesh {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element_coords(&self, e: usize) -> [Vec2; 4] {
        self.elements[e].map(|n| self.nodes[n])
    }

    /// Grid indices `(i, j)` of a node.
    pub fn node_grid(&self, n: usize) -> (usize, usize) {
        (n % (self.nx + 1), n / (self.nx + 1))
    }

    /// Smallest element side length.
    pub fn element_size(&self) -> f64 {
        (self.a / self.nx as f64).min(self.b / self.ny as f64)
    }

    /// Elements sharing each node.
    pub fn node_elements(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(4); self.n_nodes()];
        for (e, conn) in self.elements.iter().enumerate() {
            for &n in conn {
                out[n].push(e);
            }
        }
        out
    }

    /// Element containing `p` (points on shared edges go to the upper/right element).
    pub fn locate(&self, p: Vec2) -> Option<usize> {
        let tol = 1e-12 * self.a.max(self.b);
        if p.x < -tol || p.y < -tol || p.x > self.a + tol || p.y > self.b + tol {
            return None;
        }
        let i = ((p.x / self.a * self.nx as f64).floor().max(0.0) as usize).min(self.nx - 1);
        let j = ((p.y / self.b * self.ny as f64).floor().max(0.0) as usize).min(self.ny - 1);
        Some(j * self.nx + i)
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x > 0.0 && p.x < self.a && p.y > 0.0 && p.y < self.b
    }

    pub fn area(&self) -> f64 {
        (0..self.n_elements())
            .map(|e| crate::geom::polygon_area(&self.element_coords(e)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element_mesh() {
        let m = generate_mesh(1.0, 1.0, 1, 1).unwrap();
        assert_eq!((m.n_nodes(), m.n_elements()), (4, 1));
        assert_eq!(m.elements[0], [0, 1, 3, 2]);
    }

    #[test]
    fn paper_scale_mesh_counts_and_area() {
        let m = generate_mesh(1.0, 1.0, 34, 34).unwrap();
        assert_eq!((m.n_nodes(), m.n_elements()), (1225, 1156));
        let r = generate_mesh(2.0, 0.7, 13, 5).unwrap();
        assert!((r.area() - 1.4).abs() < 1e-12);
        assert!(generate_mesh(1.0, 1.0, 0, 3).is_err());
    }

    #[test]
    fn elements_are_counter_clockwise_and_locatable() {
        let m = generate_mesh(2.0, 1.0, 4, 3).unwrap();
        for e in 0..m.n_elements() {
            let c = m.element_coords(e);
            assert!(crate::geom::polygon_area(&c) > 0.0);
            let centroid = (c[0] + c[1] + c[2] + c[3]) * 0.25;
            assert_eq!(m.locate(centroid), Some(e));
        }
        assert_eq!(m.locate(Vec2::new(2.0, 1.0)), Some(m.n_elements() - 1));
        assert_eq!(m.locate(Vec2::new(2.5, 0.5)), None);
    }
}
