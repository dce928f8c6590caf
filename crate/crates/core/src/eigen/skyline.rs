//! Profile (skyline) LDLᵀ factorization without pivoting and inertia counts.

use crate::assembly::Profile;

/// `A = U^T D U` with unit upper `U` stored column-wise on the profile of `A`.
#[derive(Debug, Clone)]
pub struct Ldlt {
    pub profile: Profile,
    /// Off-diagonal entries hold `U`, diagonal entries hold `D`.
    pub vals: Vec<f64>,
}

/// A pivot vanished during factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPivot {
    pub index: usize,
    pub value: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Ldlt {
    /// Factor the symmetric matrix given by its skyline values.
    ///
    /// Pivots with `|d| <= tiny * |a_jj|` abort the factorization.
    pub fn factor(profile: &Profile, mut a: Vec<f64>, tiny: f64) -> Result<Self, ZeroPivot> {
        let p = profile;
        let n = p.n();
        for j in 0..n {
            let fj = p.first[j];
            let cj = p.ptr[j];
            let ajj = a[cj + (j - fj)];
            for i in fj + 1..j {
                let fi = p.first[i];
                let m = fi.max(fj);
                if m < i {
                    let ci = p.ptr[i];
                    let s = dot(&a[ci + (m - fi)..ci + (i - fi)], &a[cj + (m - fj)..cj + (i - fj)]);
                    a[cj + (i - fj)] -= s;
                }
            }
            let mut d = ajj;
            for r in fj..j {
                let g = a[cj + (r - fj)];
                let l = g / a[p.ptr[r] + (r - p.first[r])];
                a[cj + (r - fj)] = l;
                d -= g * l;
            }
            if !(d.abs() > tiny * ajj.abs()) || !d.is_finite() {
                return Err(ZeroPivot { index: j, value: d });
            }
            a[cj + (j - fj)] = d;
        }
        Ok(Self {
            profile: profile.clone(),
            vals: a,
        })
    }

    pub fn pivot(&self, j: usize) -> f64 {
        self.vals[self.profile.index(j, j)]
    }

    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.profile.n()).map(|j| self.pivot(j))
    }

    /// Number of negative pivots, i.e. of negative eigenvalues of the factored matrix.
    pub fn negative_count(&self) -> usize {
        self.pivots().filter(|d| *d < 0.0).count()
    }

    /// Solve `A x = b` in place.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        let p = &self.profile;
        let n = p.n();
        for j in 0..n {
            let fj = p.first[j];
            let cj = p.ptr[j];
            if fj < j {
                x[j] -= dot(&self.vals[cj..cj + (j - fj)], &x[fj..j]);
            }
        }
        for j in 0..n {
            x[j] /= self.pivot(j);
        }
        for j in (0..n).rev() {
            let fj = p.first[j];
            let cj = p.ptr[j];
            let xj = x[j];
            if xj != 0.0 {
                for (r, u) in (fj..j).zip(&self.vals[cj..cj + (j - fj)]) {
                    x[r] -= u * xj;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::SymSparse;

    fn tridiag(n: usize, diag: f64) -> SymSparse {
        let rows = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect();
        let mut s = SymSparse::from_pattern(rows);
        for i in 0..n {
            s.add(i, i, diag);
            if i + 1 < n {
                s.add(i, i + 1, -1.0);
            }
        }
        s
    }

    #[test]
    fn solves_a_tridiagonal_system() {
        let s = tridiag(6, 2.5);
        let p = s.profile();
        let f = Ldlt::factor(&p, s.to_skyline(&p), 1e-14).unwrap();
        let b = [1.0, 0.0, -2.0, 3.0, 0.5, 1.0];
        let mut x = b.to_vec();
        f.solve_in_place(&mut x);
        let r = s.matvec(&x);
        for i in 0..6 {
            assert!((r[i] - b[i]).abs() < 1e-13);
        }
        assert_eq!(f.negative_count(), 0);
    }

    #[test]
    fn inertia_counts_eigenvalues_below_a_shift() {
        // eigenvalues of tridiag(-1, 2, -1) are 2 - 2cos(kπ/(n+1))
        let n = 8;
        let s = tridiag(n, 2.0);
        let p = s.profile();
        let eig: Vec<f64> = (1..=n)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        for sigma in [0.1, 0.9, 1.7, 3.5] {
            let mut v = s.to_skyline(&p);
            for j in 0..n {
                v[p.index(j, j)] -= sigma;
            }
            let f = Ldlt::factor(&p, v, 1e-14).unwrap();
            assert_eq!(f.negative_count(), eig.iter().filter(|e| **e < sigma).count());
        }
    }
}
