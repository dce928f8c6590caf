//! Dense symmetric (generalized) eigensolver: Cholesky reduction, Householder
//! tridiagonalization and implicit-shift QL.

use crate::error::{Error, Result};

/// Lower Cholesky factor (row-major) of a symmetric positive definite matrix.
///
/// A pivot at or below `ε·trace/n` is reported with its index.
pub fn cholesky(a: &[f64], n: usize) -> std::result::Result<Vec<f64>, (usize, f64)> {
    let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
    let floor = f64::EPSILON * trace / n as f64;
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > floor) {
            return Err((j, d));
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    Ok(l)
}

/// Householder reduction to tridiagonal form; `v` is overwritten with the
/// accumulated orthogonal transform, `d` and `e` receive the diagonal and
/// sub-diagonal.
fn tred2(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + v[j * n + j] * f;
                for k in j + 1..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal matrix; eigenvalues sorted ascending.
fn tql2(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    let mut sweeps = 0usize;
    let max_sweeps = 30 * n.max(1);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::Numerical(format!(
                        "tridiagonal QL did not converge in {max_sweeps} sweeps"
                    )));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in l + 2..n {
                    d[i] -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // selection sort keeps eigenvector columns paired
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in i + 1..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for j in 0..n {
                v.swap(j * n + i, j * n + k);
            }
        }
    }
    Ok(())
}

/// Eigen-decomposition of a symmetric matrix: ascending values and
/// eigenvectors as the columns of a row-major matrix.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut v = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, n, &mut d, &mut e);
    tql2(&mut v, n, &mut d, &mut e)?;
    Ok((d, v))
}

/// All eigenpairs of `K x = λ M x` with `M` positive definite.
///
/// Returns ascending eigenvalues and M-orthonormal eigenvectors (one `Vec` per mode).
pub fn generalized_eigen(k: &[f64], m: &[f64], n: usize) -> std::result::Result<(Vec<f64>, Vec<Vec<f64>>), GeneralizedError> {
    let l = cholesky(m, n).map_err(|(dof, pivot)| GeneralizedError::MassPivot { dof, pivot })?;
    // X = L^{-1} K
    let mut x = k.to_vec();
    for col in 0..n {
        for i in 0..n {
            let mut s = x[i * n + col];
            for r in 0..i {
                s -= l[i * n + r] * x[r * n + col];
            }
            x[i * n + col] = s / l[i * n + i];
        }
    }
    // A = L^{-1} X^T
    let mut a = vec![0.0; n * n];
    for col in 0..n {
        for i in 0..n {
            let mut s = x[col * n + i];
            for r in 0..i {
                s -= l[i * n + r] * a[r * n + col];
            }
            a[i * n + col] = s / l[i * n + i];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = s;
            a[j * n + i] = s;
        }
    }
    let (vals, y) = symmetric_eigen(&a, n).map_err(GeneralizedError::Other)?;
    let mut vecs = Vec::with_capacity(n);
    for mode in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| y[i * n + mode]).collect();
        for i in (0..n).rev() {
            let mut s = v[i];
            for r in i + 1..n {
                s -= l[r * n + i] * v[r];
            }
            v[i] = s / l[i * n + i];
        }
        vecs.push(v);
    }
    Ok((vals, vecs))
}

/// Failure of the dense generalized solver.
#[derive(Debug)]
pub enum GeneralizedError {
    /// Non-positive Cholesky pivot of the mass matrix at `dof`.
    MassPivot { dof: usize, pivot: f64 },
    Other(Error),
}
