//! Lowest modes of the symmetric generalized eigenproblem `K x = ω² M x`.

pub mod dense;
pub mod skyline;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assembly::SymSparse;
use crate::error::{Error, Result};
use dense::{generalized_eigen, GeneralizedError};
use skyline::Ldlt;

/// Residual below which a mode is accepted.
pub const RESIDUAL_LIMIT: f64 = 1e-8;
/// Residual aimed for before iterations stop.
const RESIDUAL_TARGET: f64 = 1e-10;
/// Largest problem handled by the dense path under [`SolverKind::Auto`].
pub const DENSE_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    /// Dense for small problems, skyline otherwise.
    #[default]
    Auto,
    /// Cholesky reduction and tridiagonal QL on the full matrices.
    Dense,
    /// Skyline factorization, subspace iteration and a Sturm-sequence check.
    Band,
}

/// Lowest eigenpairs, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalResult {
    /// ω² values.
    pub eigenvalues: Vec<f64>,
    /// Angular frequencies ω in rad/s.
    pub omegas: Vec<f64>,
    /// M-orthonormal mode vectors over the free unknowns.
    pub vectors: Vec<Vec<f64>>,
    /// `‖K v − ω² M v‖ / ‖K v‖` per mode.
    pub residuals: Vec<f64>,
    pub solver: SolverKind,
}

impl ModalResult {
    fn new(eigenvalues: Vec<f64>, vectors: Vec<Vec<f64>>, residuals: Vec<f64>, solver: SolverKind) -> Self {
        let omegas = eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
        Self {
            eigenvalues,
            omegas,
            vectors,
            residuals,
            solver,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Relative residual of one eigenpair.
pub fn residual(k: &SymSparse, m: &SymSparse, lambda: f64, v: &[f64]) -> f64 {
    let kv = k.matvec(v);
    let mv = m.matvec(v);
    let r: Vec<f64> = kv.iter().zip(&mv).map(|(a, b)| a - lambda * b).collect();
    let d = norm(&kv);
    if d == 0.0 {
        norm(&r)
    } else {
        norm(&r) / d
    }
}

/// Lowest `k_modes` eigenpairs of `(K, M)`.
///
/// `describe` names a free unknown in diagnostics (singular mass, mechanisms).
pub fn solve_generalized(
    k: &SymSparse,
    m: &SymSparse,
    k_modes: usize,
    kind: SolverKind,
    describe: &dyn Fn(usize) -> String,
) -> Result<ModalResult> {
    let n = k.n;
    if m.n != n {
        return Err(Error::Domain("K and M differ in size".into()));
    }
    if k_modes == 0 || k_modes > n {
        return Err(Error::Domain(format!("cannot extract {k_modes} modes from {n} unknowns")));
    }
    let use_dense = match kind {
        SolverKind::Dense => true,
        SolverKind::Band => false,
        SolverKind::Auto => n <= DENSE_LIMIT,
    };
    let res = if use_dense {
        solve_dense(k, m, k_modes, describe)?
    } else {
        solve_band(k, m, k_modes, describe)?
    };
    for (i, r) in res.residuals.iter().enumerate() {
        if !(*r < RESIDUAL_LIMIT) {
            return Err(Error::Numerical(format!("mode {} residual {r:.3e} exceeds {RESIDUAL_LIMIT:e}", i + 1)));
        }
    }
    Ok(res)
}

fn solve_dense(k: &SymSparse, m: &SymSparse, k_modes: usize, describe: &dyn Fn(usize) -> String) -> Result<ModalResult> {
    let n = k.n;
    let (vals, vecs) = generalized_eigen(&k.to_dense(), &m.to_dense(), n).map_err(|e| match e {
        GeneralizedError::MassPivot { dof, pivot } => Error::Model(format!(
            "mass matrix is numerically singular at {} (pivot {pivot:.3e}); enrichment is degenerate",
            describe(dof)
        )),
        GeneralizedError::Other(e) => e,
    })?;
    let vals: Vec<f64> = vals.into_iter().take(k_modes).collect();
    let vecs: Vec<Vec<f64>> = vecs.into_iter().take(k_modes).collect();
    let residuals = vals.iter().zip(&vecs).map(|(l, v)| residual(k, m, *l, v)).collect();
    Ok(ModalResult::new(vals, vecs, residuals, SolverKind::Dense))
}

/// Number of eigenvalues of `(K, M)` below `sigma`.
pub fn sturm_count(k: &SymSparse, m: &SymSparse, sigma: f64) -> Result<usize> {
    let p = k.profile();
    let kv = k.to_skyline(&p);
    let mv = m.to_skyline(&p);
    let mut s = sigma;
    for _ in 0..8 {
        let a: Vec<f64> = kv.iter().zip(&mv).map(|(x, y)| x - s * y).collect();
        match Ldlt::factor(&p, a, 1e-14) {
            Ok(f) => return Ok(f.negative_count()),
            Err(_) => s *= 1.0 + 1e-10,
        }
    }
    Err(Error::Numerical(format!("shifted matrix singular near σ = {sigma:e}")))
}

fn solve_band(k: &SymSparse, m: &SymSparse, k_modes: usize, describe: &dyn Fn(usize) -> String) -> Result<ModalResult> {
    let n = k.n;
    let profile = k.profile();
    let mv = m.to_skyline(&profile);
    let m_trace: f64 = m.diagonal().iter().sum();
    let mass_f = Ldlt::factor(&profile, mv, 0.0).map_err(|z| {
        Error::Model(format!("mass matrix is singular at {}", describe(z.index)))
    })?;
    if let Some((j, d)) = mass_f
        .pivots()
        .enumerate()
        .find(|(_, d)| !(*d > f64::EPSILON * m_trace / n as f64))
    {
        return Err(Error::Model(format!(
            "mass matrix is numerically singular at {} (pivot {d:.3e}); enrichment is degenerate",
            describe(j)
        )));
    }
    let kf = Ldlt::factor(&profile, k.to_skyline(&profile), 0.0)
        .map_err(|z| Error::Model(format!("stiffness matrix is singular at {}", describe(z.index))))?;
    if let Some((j, _)) = kf.pivots().enumerate().find(|(_, d)| !(*d > 0.0)) {
        return Err(Error::Model(format!(
            "stiffness matrix is not positive definite at {}: the supports leave a mechanism",
            describe(j)
        )));
    }

    let mut p = (2 * k_modes).max(k_modes + 8).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _attempt in 0..4 {
        let x0: Vec<Vec<f64>> = (0..p).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let (vals, vecs, residuals) = subspace_iteration(k, m, &kf, x0, k_modes)?;
        // Sturm check just above the last requested mode (or its cluster).
        let mut j = k_modes - 1;
        while j + 1 < vals.len() && vals[j + 1] - vals[j] <= 1e-8 * vals[j].abs() {
            j += 1;
        }
        let gap = if j + 1 < vals.len() {
            0.5 * (vals[j + 1] - vals[j])
        } else {
            f64::INFINITY
        };
        let sigma = vals[j] + (1e-6 * vals[j].abs()).min(gap);
        let count = sturm_count(k, m, sigma)?;
        if count == j + 1 {
            let vals = vals[..k_modes].to_vec();
            let vecs = vecs[..k_modes].to_vec();
            let residuals = residuals[..k_modes].to_vec();
            return Ok(ModalResult::new(vals, vecs, residuals, SolverKind::Band));
        }
        if count < j + 1 || p == n {
            return Err(Error::Numerical(format!(
                "Sturm count {count} below σ = {sigma:e} disagrees with {} converged modes",
                j + 1
            )));
        }
        log::debug!("subspace missed {} eigenvalues; enlarging to {}", count - (j + 1), p + k_modes);
        p = (p + k_modes.max(4)).min(n);
    }
    Err(Error::Numerical("subspace iteration kept missing eigenvalues".into()))
}

type Eigenpairs = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>);

fn subspace_iteration(k: &SymSparse, m: &SymSparse, kf: &Ldlt, mut x: Vec<Vec<f64>>, k_modes: usize) -> Result<Eigenpairs> {
    let p = x.len();
    let max_iter = 500;
    let mut best: Option<Eigenpairs> = None;
    let mut prev_vals: Option<Vec<f64>> = None;
    for iter in 0..max_iter {
        let y: Vec<Vec<f64>> = x.iter().map(|v| m.matvec(v)).collect();
        let xb: Vec<Vec<f64>> = y
            .iter()
            .map(|v| {
                let mut s = v.clone();
                kf.solve_in_place(&mut s);
                s
            })
            .collect();
        let mxb: Vec<Vec<f64>> = xb.iter().map(|v| m.matvec(v)).collect();
        let mut kr = vec![0.0; p * p];
        let mut mr = vec![0.0; p * p];
        for i in 0..p {
            for j in i..p {
                let a = 0.5 * (dot(&xb[i], &y[j]) + dot(&xb[j], &y[i]));
                let b = 0.5 * (dot(&xb[i], &mxb[j]) + dot(&xb[j], &mxb[i]));
                kr[i * p + j] = a;
                kr[j * p + i] = a;
                mr[i * p + j] = b;
                mr[j * p + i] = b;
            }
        }
        let (vals, q) = generalized_eigen(&kr, &mr, p).map_err(|e| match e {
            GeneralizedError::MassPivot { .. } => Error::Numerical("subspace basis lost rank".into()),
            GeneralizedError::Other(e) => e,
        })?;
        x = q
            .iter()
            .map(|qc| {
                let mut v = vec![0.0; xb[0].len()];
                for (c, col) in qc.iter().zip(&xb) {
                    for (vi, ci) in v.iter_mut().zip(col) {
                        *vi += c * ci;
                    }
                }
                v
            })
            .collect();
        let settled = prev_vals
            .as_ref()
            .map_or(false, |pv: &Vec<f64>| (0..k_modes).all(|i| (vals[i] - pv[i]).abs() <= 1e-13 * vals[i].abs()));
        if settled || iter % 4 == 3 || iter + 1 == max_iter {
            let residuals: Vec<f64> = (0..k_modes).map(|i| residual(k, m, vals[i], &x[i])).collect();
            let worst = residuals.iter().fold(0.0f64, |a, b| a.max(*b));
            // stop at the target, or once the eigenvalues no longer move and the
            // residuals sit at their rounding floor
            if worst < RESIDUAL_TARGET || (settled && worst < 0.1 * RESIDUAL_LIMIT) {
                log::debug!("subspace iteration converged in {} steps", iter + 1);
                return Ok((vals, x, residuals));
            }
            let better = best
                .as_ref()
                .map_or(true, |(_, _, r)| worst < r.iter().fold(0.0f64, |a, b| a.max(*b)));
            if better {
                best = Some((vals.clone(), x.clone(), residuals));
            }
        }
        prev_vals = Some(vals);
    }
    best.ok_or_else(|| Error::Numerical("subspace iteration produced no estimate".into()))
}
