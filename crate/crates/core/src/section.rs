//! Through-thickness integration of the graded constitutive law into plate
//! section stiffnesses and inertias.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{vc_from_fraction, FgmComposition};
use crate::quadrature::gauss_legendre_unit;

/// Default Gauss order through the thickness.
pub const DEFAULT_THICKNESS_ORDER: usize = 30;

/// Plane-stress and transverse-shear stiffness coefficients at one station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qbar {
    pub q11: f64,
    pub q12: f64,
    pub q22: f64,
    pub q16: f64,
    pub q26: f64,
    pub q44: f64,
    pub q55: f64,
    pub q66: f64,
}

pub fn stiffness_coeffs(e: f64, nu: f64) -> Result<Qbar> {
    if !(e > 0.0) || !(nu >= 0.0 && nu < 0.5) {
        return Err(Error::Domain(format!("invalid elastic constants E={e}, nu={nu}")));
    }
    let q11 = e / (1.0 - nu * nu);
    let g = e / (2.0 * (1.0 + nu));
    Ok(Qbar {
        q11,
        q12: nu * q11,
        q22: q11,
        q16: 0.0,
        q26: 0.0,
        q44: g,
        q55: g,
        q66: g,
    })
}

/// Transverse shear correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ShearCorrection {
    /// κ = 5/6.
    #[default]
    Constant,
    /// κ from equating the shear strain energy of the equilibrium shear
    /// stress profile with that of a uniform shear strain.
    Energy,
}

/// Integrated section of a graded plate.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionMatrices {
    pub h: f64,
    /// Extensional stiffness (N/m), Voigt order (xx, yy, xy).
    pub a: [[f64; 3]; 3],
    /// Membrane-bending coupling (N).
    pub b: [[f64; 3]; 3],
    /// Bending stiffness (N m).
    pub d: [[f64; 3]; 3],
    /// Transverse shear stiffness (N/m), order (xz, yz).
    pub es: [[f64; 2]; 2],
    pub i0: f64,
    pub i1: f64,
    pub kappa: f64,
}

impl SectionMatrices {
    /// Closed-form section of a homogeneous isotropic plate.
    pub fn homogeneous(e: f64, nu: f64, rho: f64, h: f64, kappa: f64) -> Self {
        let c = e / (1.0 - nu * nu);
        let g = e / (2.0 * (1.0 + nu));
        let iso = |f: f64| [[c * f, nu * c * f, 0.0], [nu * c * f, c * f, 0.0], [0.0, 0.0, g * f]];
        Self {
            h,
            a: iso(h),
            b: [[0.0; 3]; 3],
            d: iso(h * h * h / 12.0),
            es: [[kappa * g * h, 0.0], [0.0, kappa * g * h]],
            i0: rho * h,
            i1: rho * h * h * h / 12.0,
            kappa,
        }
    }

    /// Scale all stiffness terms by `s` (mass terms untouched).
    pub fn scale_stiffness(&mut self, s: f64) {
        for m in [&mut self.a, &mut self.b, &mut self.d] {
            m.iter_mut().flatten().for_each(|v| *v *= s);
        }
        self.es.iter_mut().flatten().for_each(|v| *v *= s);
    }

    /// 8x8 generalized constitutive matrix acting on (ε_p, ε_b, ε_s).
    pub fn constitutive(&self) -> [[f64; 8]; 8] {
        let mut c = [[0.0; 8]; 8];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = self.a[i][j];
                c[i][j + 3] = self.b[i][j];
                c[i + 3][j] = self.b[i][j];
                c[i + 3][j + 3] = self.d[i][j];
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                c[6 + i][6 + j] = self.es[i][j];
            }
        }
        c
    }

    /// Debug dump, one `name,i,j,value` row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("matrix,i,j,value\n");
        for (name, m) in [("A", &self.a), ("B", &self.b), ("D", &self.d)] {
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    out.push_str(&format!("{name},{},{},{:e}\n", i + 1, j + 1, v));
                }
            }
        }
        for (i, row) in self.es.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.push_str(&format!("E,{},{},{:e}\n", i + 4, j + 4, v));
            }
        }
        out.push_str(&format!("I0,0,0,{:e}\nI1,0,0,{:e}\nkappa,0,0,{:e}\n", self.i0, self.i1, self.kappa));
        out
    }
}

/// Stretching exponent of the substitution `s = t^q` used to remove the
/// `s^n` endpoint singularity of fractional gradient indices.
fn stretch_exponent(n: f64) -> i32 {
    if n == n.trunc() {
        1
    } else {
        (12.0 / (n + 1.0)).ceil().max(1.0) as i32
    }
}

struct Station {
    z: f64,
    w: f64,
    q11: f64,
    q12: f64,
    g: f64,
    rho: f64,
}

fn stations(comp: &FgmComposition, h: f64, order: usize, t_max: f64) -> Result<Vec<Station>> {
    let q = stretch_exponent(comp.n);
    let (t, w) = gauss_legendre_unit(order);
    t.iter()
        .zip(&w)
        .map(|(&u, &wu)| {
            let tt = u * t_max;
            let s = tt.powi(q);
            let dz = h * q as f64 * tt.powi(q - 1) * t_max * wu;
            let p = comp.properties_for_fraction(vc_from_fraction(s, comp.n))?;
            let qb = stiffness_coeffs(p.e, p.nu)?;
            Ok(Station {
                z: h * s - 0.5 * h,
                w: dz,
                q11: qb.q11,
                q12: qb.q12,
                g: qb.q44,
                rho: p.rho,
            })
        })
        .collect()
}

fn integrate_once(
    comp: &FgmComposition,
    h: f64,
    shear: ShearCorrection,
    order: usize,
) -> Result<SectionMatrices> {
    let st = stations(comp, h, order, 1.0)?;
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    let mut d = [0.0; 3];
    let (mut gs, mut i0, mut i1) = (0.0, 0.0, 0.0);
    for s in &st {
        let q = [s.q11, s.q12, s.g];
        for k in 0..3 {
            a[k] += s.w * q[k];
            b[k] += s.w * q[k] * s.z;
            d[k] += s.w * q[k] * s.z * s.z;
        }
        gs += s.w * s.g;
        i0 += s.w * s.rho;
        i1 += s.w * s.rho * s.z * s.z;
    }
    let kappa = match shear {
        ShearCorrection::Constant => 5.0 / 6.0,
        ShearCorrection::Energy => energy_kappa(comp, h, order, &st, gs)?,
    };
    let iso = |v: [f64; 3]| [[v[0], v[1], 0.0], [v[1], v[0], 0.0], [0.0, 0.0, v[2]]];
    Ok(SectionMatrices {
        h,
        a: iso(a),
        b: iso(b),
        d: iso(d),
        es: [[kappa * gs, 0.0], [0.0, kappa * gs]],
        i0,
        i1,
        kappa,
    })
}

fn energy_kappa(
    comp: &FgmComposition,
    h: f64,
    order: usize,
    st: &[Station],
    g_total: f64,
) -> Result<f64> {
    let num: f64 = st.iter().map(|s| s.w * s.q11 * s.z).sum();
    let den: f64 = st.iter().map(|s| s.w * s.q11).sum();
    let zn = num / den;
    let (tt, _) = gauss_legendre_unit(order);
    let mut int_g = 0.0;
    let mut int_g2 = 0.0;
    for (s, &u) in st.iter().zip(&tt) {
        // g(z) = -∫_{-h/2}^{z} Q11 (z' - zn) dz' over the same stretched variable.
        let inner = stations(comp, h, order, u)?;
        let g: f64 = -inner.iter().map(|p| p.w * p.q11 * (p.z - zn)).sum::<f64>();
        int_g += s.w * g;
        int_g2 += s.w * g * g / s.g;
    }
    Ok(int_g * int_g / (g_total * int_g2))
}

/// Section stiffnesses and inertias of a graded plate of thickness `h`.
pub fn integrate_section(
    comp: &FgmComposition,
    h: f64,
    shear: ShearCorrection,
    order: usize,
) -> Result<SectionMatrices> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("thickness must be positive, got {h}")));
    }
    if order < 2 {
        return Err(Error::Config(format!("thickness quadrature order {order} too low")));
    }
    let s = integrate_once(comp, h, shear, order)?;
    let check = integrate_once(comp, h, shear, order + 4)?;
    let change = relative_change(&s, &check);
    if change > 1e-8 {
        return Err(Error::Numerical(format!(
            "through-thickness quadrature not converged at order {order}: relative change {change:e}"
        )));
    }
    Ok(s)
}

fn frob3(m: &[[f64; 3]; 3]) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest entrywise change between two sections, each block relative to its own scale.
pub fn relative_change(a: &SectionMatrices, b: &SectionMatrices) -> f64 {
    let mut worst: f64 = 0.0;
    let coupling_scale = (frob3(&a.a) * frob3(&a.d)).sqrt();
    for (x, y, scale) in [
        (&a.a, &b.a, frob3(&a.a)),
        (&a.b, &b.b, coupling_scale),
        (&a.d, &b.d, frob3(&a.d)),
    ] {
        for (rx, ry) in x.iter().zip(y) {
            for (vx, vy) in rx.iter().zip(ry) {
                worst = worst.max((vx - vy).abs() / scale);
            }
        }
    }
    worst = worst.max((a.es[0][0] - b.es[0][0]).abs() / a.es[0][0].abs());
    worst = worst.max((a.i0 - b.i0).abs() / a.i0);
    worst = worst.max((a.i1 - b.i1).abs() / a.i1);
    worst
}
