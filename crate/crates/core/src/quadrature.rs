//! Gauss rules on intervals, squares and triangles.

use crate::geom::{triangle_area, Vec2};

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one point");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, z);
                dp = d;
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped to [0, 1].
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    (
        x.iter().map(|&t| 0.5 * (t + 1.0)).collect(),
        w.iter().map(|&t| 0.5 * t).collect(),
    )
}

/// Tensor-product Gauss rule on the parent square, as `((xi, eta), weight)`.
pub fn square_rule(order: usize) -> Vec<([f64; 2], f64)> {
    let (x, w) = gauss_legendre(order);
    let mut out = Vec::with_capacity(order * order);
    for j in 0..order {
        for i in 0..order {
            out.push(([x[i], x[j]], w[i] * w[j]));
        }
    }
    out
}

/// Seven-point degree-5 rule on a triangle: barycentric points and weights summing to one.
fn dunavant7() -> [([f64; 3], f64); 7] {
    let s15 = 15f64.sqrt();
    let a1 = (6.0 - s15) / 21.0;
    let a2 = (6.0 + s15) / 21.0;
    let w1 = (155.0 - s15) / 1200.0;
    let w2 = (155.0 + s15) / 1200.0;
    let b1 = 1.0 - 2.0 * a1;
    let b2 = 1.0 - 2.0 * a2;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 9.0 / 40.0),
        ([a1, a1, b1], w1),
        ([a1, b1, a1], w1),
        ([b1, a1, a1], w1),
        ([a2, a2, b2], w2),
        ([a2, b2, a2], w2),
        ([b2, a2, a2], w2),
    ]
}

/// Physical points and weights of the 7-point rule on triangle `abc`.
pub fn triangle_rule7(a: Vec2, b: Vec2, c: Vec2) -> Vec<(Vec2, f64)> {
    let area = triangle_area(a, b, c).abs();
    dunavant7()
        .iter()
        .map(|(l, w)| (a * l[0] + b * l[1] + c * l[2], w * area))
        .collect()
}

/// Collapsed (Duffy) Gauss rule on triangle `apex, b, c`, degenerate at `apex`.
///
/// The radial Jacobian vanishes at the apex, which regularises integrands
/// behaving like `1/r` there.
pub fn triangle_rule_collapsed(apex: Vec2, b: Vec2, c: Vec2, order: usize) -> Vec<(Vec2, f64)> {
    let twice_area = (2.0 * triangle_area(apex, b, c)).abs();
    let (x, w) = gauss_legendre_unit(order);
    let mut out = Vec::with_capacity(order * order);
    for (s, ws) in x.iter().zip(&w) {
        for (t, wt) in x.iter().zip(&w) {
            let edge = b * (1.0 - t) + c * *t;
            let p = apex + (edge - apex) * *s;
            out.push((p, ws * wt * s * twice_area));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=40 {
            let (x, w) = gauss_legendre(n);
            let sw: f64 = w.iter().sum();
            assert!((sw - 2.0).abs() < 1e-13, "n={n} weights sum {sw}");
            // degree 2n-1 monomial with even power just below it
            let deg = 2 * n - 2;
            let exact = 2.0 / (deg as f64 + 1.0);
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((q - exact).abs() < 1e-13, "n={n}: {q} vs {exact}");
        }
    }

    #[test]
    fn triangle_rules_integrate_quadratics() {
        let a = Vec2::new(0.0, 0.0);
        let b = Vec2::new(2.0, 0.0);
        let c = Vec2::new(0.0, 1.0);
        // integral of x*y over the triangle = b^2 c^2 / 24 with legs 2 and 1
        let exact = 4.0 / 24.0;
        let q7: f64 = triangle_rule7(a, b, c).iter().map(|(p, w)| w * p.x * p.y).sum();
        let qc: f64 = triangle_rule_collapsed(a, b, c, 4)
            .iter()
            .map(|(p, w)| w * p.x * p.y)
            .sum();
        assert!((q7 - exact).abs() < 1e-14);
        assert!((qc - exact).abs() < 1e-14);
    }

    #[test]
    fn collapsed_rule_handles_inverse_distance() {
        // integral of 1/r over the right triangle with legs 1 around the apex at origin
        // = integral_0^{pi/4} sec(phi) dphi = ln(1 + sqrt 2)
        let q: f64 = triangle_rule_collapsed(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            6,
        )
        .iter()
        .map(|(p, w)| w / p.norm())
        .sum();
        assert!((q - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-6);
    }
}
