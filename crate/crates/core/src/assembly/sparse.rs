//! Symmetric sparse storage (upper-triangle CSR) and skyline profiles.

use std::io::Write;

use crate::error::{Error, Result};

/// Symmetric matrix stored as the upper triangle in compressed rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SymSparse {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl SymSparse {
    /// Empty matrix with the given upper-triangle pattern (`rows[i]` holds columns `>= i`).
    pub fn from_pattern(mut rows: Vec<Vec<usize>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        row_ptr.push(0);
        for (i, r) in rows.iter_mut().enumerate() {
            r.push(i);
            r.sort_unstable();
            r.dedup();
            cols.extend(r.iter().copied());
            row_ptr.push(cols.len());
        }
        let vals = vec![0.0; cols.len()];
        Self {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    fn position(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        row.binary_search(&j).ok().map(|k| self.row_ptr[i] + k)
    }

    /// Add `v` to entry `(i, j)`, `i <= j`, which must be in the pattern.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let k = self
            .position(i, j)
            .expect("entry outside the assembled sparsity pattern");
        self.vals[k] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.position(i, j).map_or(0.0, |k| self.vals[k])
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.vals[self.row_ptr[i]]).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k];
                let a = self.vals[k];
                s += a * x[j];
                if j != i {
                    y[j] += a * x[i];
                }
            }
            y[i] += s;
        }
        y
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k];
                d[i * n + j] = self.vals[k];
                d[j * n + i] = self.vals[k];
            }
        }
        d
    }

    /// Skyline profile covering this pattern.
    pub fn profile(&self) -> Profile {
        let mut first: Vec<usize> = (0..self.n).collect();
        for i in 0..self.n {
            for &j in &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]] {
                first[j] = first[j].min(i);
            }
        }
        Profile::new(first)
    }

    /// Column-wise skyline values on `profile`.
    pub fn to_skyline(&self, profile: &Profile) -> Vec<f64> {
        let mut v = vec![0.0; profile.len()];
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k];
                v[profile.index(i, j)] = self.vals[k];
            }
        }
        v
    }

    /// Largest absolute stored entry.
    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |a, b| a.max(b.abs()))
    }

    /// Coordinate listing `row col value` of the upper triangle (1-based indices).
    pub fn write_coordinate(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "% symmetric {} {} {}", self.n, self.n, self.nnz())?;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                writeln!(w, "{} {} {:.17e}", i + 1, self.cols[k] + 1, self.vals[k])?;
            }
        }
        Ok(())
    }
}

/// Skyline (variable band) column profile: column `j` stores rows `first[j]..=j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub first: Vec<usize>,
    /// Start of column `j` in the value array; `ptr[n]` is the total length.
    pub ptr: Vec<usize>,
}

impl Profile {
    pub fn new(first: Vec<usize>) -> Self {
        let mut ptr = Vec::with_capacity(first.len() + 1);
        ptr.push(0);
        for (j, &f) in first.iter().enumerate() {
            ptr.push(ptr[j] + (j - f + 1));
        }
        Self { first, ptr }
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    pub fn len(&self) -> usize {
        *self.ptr.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Storage index of `(i, j)` with `first[j] <= i <= j`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && i >= self.first[j]);
        self.ptr[j] + (i - self.first[j])
    }

    pub fn max_half_bandwidth(&self) -> usize {
        self.first.iter().enumerate().map(|(j, f)| j - f).max().unwrap_or(0)
    }
}

/// Dense symmetric matrix from a row-major slice, checked for shape.
pub fn check_square(a: &[f64], n: usize) -> Result<()> {
    if a.len() != n * n {
        return Err(Error::Domain(format!("expected {n}x{n} matrix, got {} entries", a.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SymSparse {
        let mut s = SymSparse::from_pattern(vec![vec![0, 2], vec![1], vec![2, 3], vec![3]]);
        s.add(0, 0, 4.0);
        s.add(0, 2, 1.0);
        s.add(2, 0, 0.5);
        s.add(1, 1, 3.0);
        s.add(2, 2, 5.0);
        s.add(3, 2, -2.0);
        s.add(3, 3, 6.0);
        s
    }

    #[test]
    fn matvec_matches_dense() {
        let s = sample();
        let d = s.to_dense();
        let x = [1.0, -2.0, 0.5, 3.0];
        let y = s.matvec(&x);
        for i in 0..4 {
            let e: f64 = (0..4).map(|j| d[i * 4 + j] * x[j]).sum();
            assert!((y[i] - e).abs() < 1e-15);
        }
        assert_eq!(s.get(2, 0), 1.5);
        assert_eq!(s.get(1, 3), 0.0);
    }

    #[test]
    fn skyline_profile_holds_every_entry() {
        let s = sample();
        let p = s.profile();
        assert_eq!(p.first, vec![0, 1, 0, 2]);
        assert_eq!(p.max_half_bandwidth(), 2);
        let v = s.to_skyline(&p);
        assert_eq!(v[p.index(0, 2)], 1.5);
        assert_eq!(v[p.index(1, 2)], 0.0);
        assert_eq!(v[p.index(2, 3)], -2.0);
    }

    #[test]
    fn coordinate_dump_lists_upper_triangle() {
        let mut out = Vec::new();
        sample().write_coordinate(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1 + 6);
        assert!(text.contains("3 4 -2.0"));
    }
}
