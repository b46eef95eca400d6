//! Small dense complex matrices and the operator norm (largest singular
//! value) used by the representation-theoretic norms.
//!
//! Sizes here are tiny (fiber cardinalities of finite-level groupoids), so
//! the norm is computed exactly where a closed form exists (1×1, 2×2) and by
//! a cyclic Jacobi diagonalization of `A*A` otherwise. Everything iterates
//! in a fixed order, so results are reproducible bit for bit. The matrix is
//! first split into connected components of its support pattern; besides
//! skipping work, this makes the norm of a block-diagonal matrix literally
//! equal to the maximum of the block norms.

use num::complex::Complex64;
use std::fmt;

pub const SINGULAR_VALUE_REL_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> CMatrix {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> CMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
        CMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= c;
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for comp in support_components(self) {
            let norm = match comp.len() {
                1 => {
                    let i = comp[0];
                    self[(i, i)].norm()
                }
                2 => two_by_two_norm(self, &comp),
                _ => jacobi_norm(self, &comp),
            };
            best = best.max(norm);
        }
        best
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:+.4}{:+.4}i", self[(i, j)].re, self[(i, j)].im))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Connected components of the undirected support graph (`i ~ j` when entry
/// `(i,j)` or `(j,i)` is nonzero), each sorted ascending; the component
/// order follows the smallest member.
fn support_components(a: &CMatrix) -> Vec<Vec<usize>> {
    let n = a.n;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j]
                    && (a[(i, j)] != Complex64::new(0.0, 0.0)
                        || a[(j, i)] != Complex64::new(0.0, 0.0))
                {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn gram(a: &CMatrix, idx: &[usize]) -> Vec<Complex64> {
    // H = (A|idx)* (A|idx), Hermitian positive semidefinite.
    let m = idx.len();
    let mut h = vec![Complex64::new(0.0, 0.0); m * m];
    for p in 0..m {
        for q in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for r in 0..m {
                s += a[(idx[r], idx[p])].conj() * a[(idx[r], idx[q])];
            }
            h[p * m + q] = s;
        }
    }
    h
}

fn two_by_two_norm(a: &CMatrix, idx: &[usize]) -> f64 {
    // Closed form via the Gram matrix's eigenvalues.
    let h = gram(a, idx);
    let tr = h[0].re + h[3].re;
    let det = (h[0] * h[3] - h[1] * h[2]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0);
    (((tr + disc.sqrt()) / 2.0).max(0.0)).sqrt()
}

/// Cyclic Jacobi on the Hermitian Gram matrix; returns sqrt of the largest
/// eigenvalue. Rotation order is row-major over the strict upper triangle.
fn jacobi_norm(a: &CMatrix, idx: &[usize]) -> f64 {
    let m = idx.len();
    let mut h = gram(a, idx);
    let scale: f64 = (0..m).map(|i| h[i * m + i].re).sum::<f64>().max(f64::MIN_POSITIVE);
    let tol = SINGULAR_VALUE_REL_TOL * 1e-3 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..m {
            for q in (p + 1)..m {
                off += h[p * m + q].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let hpq = h[p * m + q];
                if hpq.norm() == 0.0 {
                    continue;
                }
                let hpp = h[p * m + p].re;
                let hqq = h[q * m + q].re;
                // Unitary 2×2 rotation (c, s·phase) zeroing the (p,q) entry.
                let phase = hpq / hpq.norm();
                let tau = (hqq - hpp) / (2.0 * hpq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..m {
                    let hkp = h[k * m + p];
                    let hkq = h[k * m + q];
                    h[k * m + p] = hkp * c - hkq * phase.conj() * s;
                    h[k * m + q] = hkp * phase * s + hkq * c;
                }
                for k in 0..m {
                    let hpk = h[p * m + k];
                    let hqk = h[q * m + k];
                    h[p * m + k] = hpk * c - hqk * phase * s;
                    h[q * m + k] = hpk * phase.conj() * s + hqk * c;
                }
                // Clean up rounding on the Hermitian structure.
                h[p * m + q] = Complex64::new(0.0, 0.0);
                h[q * m + p] = Complex64::new(0.0, 0.0);
                h[p * m + p] = Complex64::new(h[p * m + p].re, 0.0);
                h[q * m + q] = Complex64::new(h[q * m + q].re, 0.0);
            }
        }
    }
    let lambda = (0..m).map(|i| h[i * m + i].re).fold(0.0f64, f64::max);
    lambda.max(0.0).sqrt()
}
