//! Dense real symmetric linear algebra.
//!
//! Everything here targets the small, possibly ill-conditioned pencils that
//! union bases produce: Cholesky factorization, a cyclic Jacobi eigensolver,
//! and the generalized symmetric eigenproblem `H c = E S c` with canonical
//! orthogonalization when the overlap matrix is close to singular.
//!
//! Expected problem sizes are a few tens of rows; no attempt is made to be
//! fast beyond dimension ~100.

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before giving up.
const JACOBI_SWEEP_BUDGET: usize = 64;
/// Convergence: off-diagonal Frobenius norm below this multiple of the
/// Frobenius norm of the input.
const JACOBI_REL_TOL: f64 = 1e-14;
/// A Cholesky pivot below this multiple of the largest diagonal entry is
/// treated as a sign of linear dependence.
const CHOLESKY_PIVOT_REL_TOL: f64 = 1e-14;

/// Dense symmetric matrix with full row-major storage.
///
/// Both triangles are kept in sync: `set` writes the mirror entry and the
/// closure constructors only evaluate one triangle, so symmetry holds exactly
/// as stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "symmetric matrix must have dimension >= 1");
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Builds the matrix from `f`, evaluated only for `i <= j` and mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Builds from explicit rows, requiring an exactly symmetric square input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected a nonempty square matrix, got {} rows",
                dim
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { dim, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets entry `(i, j)` and its mirror.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn mat_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn max_diag(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .map(|x| x.abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

/// Dense rectangular matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }
}

/// Lower-triangular Cholesky factor `L` with `L Lᵀ = S`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    dim: usize,
    data: Vec<f64>, // full row-major storage, strictly upper part zero
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Solves `L x = b` in place.
    pub fn forward_solve(&self, b: &mut [f64]) {
        let n = self.dim;
        for i in 0..n {
            let mut s = b[i];
            for j in 0..i {
                s -= self.get(i, j) * b[j];
            }
            b[i] = s / self.get(i, i);
        }
    }

    /// Solves `Lᵀ x = b` in place.
    pub fn back_solve_transposed(&self, b: &mut [f64]) {
        let n = self.dim;
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                s -= self.get(j, i) * b[j];
            }
            b[i] = s / self.get(i, i);
        }
    }
}

/// Cholesky factorization of a symmetric positive definite matrix.
///
/// Fails with [`Error::NotPositiveDefinite`] when a pivot drops below
/// `1e-14` times the largest diagonal entry, which for overlap matrices
/// signals a linearly dependent basis; callers should condition first.
pub fn cholesky(s: &SymMatrix) -> Result<CholeskyFactor> {
    let n = s.dim();
    let pivot_floor = CHOLESKY_PIVOT_REL_TOL * s.max_diag().max(0.0);
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = s.get(i, j);
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= pivot_floor {
                    return Err(Error::NotPositiveDefinite { index: i, pivot: sum });
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(CholeskyFactor { dim: n, data: l })
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors (as columns of `vectors`).
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigensolver.
///
/// Rotations are applied in row-cyclic order until the off-diagonal Frobenius
/// norm falls below `1e-14` times the Frobenius norm of the input; the sweep
/// budget is 64. Eigenvalues are returned ascending and each eigenvector is
/// sign-fixed so its largest-magnitude component is positive.
pub fn sym_eigen(a: &SymMatrix) -> Result<SymEigen> {
    let n = a.dim();
    let scale = a.fro_norm();
    let tol = JACOBI_REL_TOL * scale.max(f64::MIN_POSITIVE);

    let mut m = a.clone();
    let mut v = Matrix::identity(n);

    let mut converged = scale == 0.0 || n == 1;
    for _ in 0..JACOBI_SWEEP_BUDGET {
        if converged {
            break;
        }
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += 2.0 * m.get(p, q) * m.get(p, q);
                }
            }
            s.sqrt()
        };
        if off < tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                // smaller-angle root, stable for large |theta|
                let t = if theta.abs() > 1e12 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                for j in 0..n {
                    if j != p && j != q {
                        let ajp = m.get(j, p);
                        let ajq = m.get(j, q);
                        m.set(j, p, ajp - s * (ajq + tau * ajp));
                        m.set(j, q, ajq + s * (ajp - tau * ajq));
                    }
                }
                for j in 0..n {
                    let vjp = v.get(j, p);
                    let vjq = v.get(j, q);
                    v.set(j, p, vjp - s * (vjq + tau * vjp));
                    v.set(j, q, vjq + s * (vjp - tau * vjq));
                }
            }
        }
    }
    if !converged {
        // re-check after the final sweep
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m.get(p, q) * m.get(p, q);
            }
        }
        if off.sqrt() >= tol {
            return Err(Error::NoConvergence { sweeps: JACOBI_SWEEP_BUDGET });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| {
            let mut vec: Vec<f64> = (0..n).map(|row| v.get(row, col)).collect();
            fix_sign(&mut vec);
            vec
        })
        .collect();
    Ok(SymEigen { values, vectors })
}

/// Makes the largest-magnitude component positive (first such index wins),
/// so eigenvectors and coefficient vectors come out deterministic.
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut idx = 0;
    let mut best = 0.0;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Solution of the generalized symmetric eigenproblem `H c = E S c`.
///
/// `coefficients[k]` is the vector paired with `eigenvalues[k]`; the set is
/// S-orthonormal. When near-dependent overlap directions were discarded,
/// `retained_dim` is smaller than the input dimension and only that many
/// eigenpairs are returned.
#[derive(Debug, Clone)]
pub struct GenEigResult {
    pub eigenvalues: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
    pub retained_dim: usize,
}

/// Solves `H c = E S c` for symmetric `H`, `S`.
///
/// When the overlap spectrum is comfortably above
/// `dependence_threshold * max(eig S)` the pencil is reduced with Cholesky
/// (`L⁻¹ H L⁻ᵀ`); otherwise small overlap directions are dropped by canonical
/// orthogonalization. Fails with [`Error::DegenerateOverlap`] if nothing
/// survives the threshold.
pub fn gen_eigen(h: &SymMatrix, s: &SymMatrix, dependence_threshold: f64) -> Result<GenEigResult> {
    let n = h.dim();
    if s.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "H is {}x{} but S is {}x{}",
            n,
            n,
            s.dim(),
            s.dim()
        )));
    }
    if !h.is_finite() || !s.is_finite() {
        return Err(Error::InvalidParameter("matrix entries must be finite".into()));
    }

    let s_eig = sym_eigen(s)?;
    let s_max = *s_eig.values.last().unwrap();
    if s_max <= 0.0 {
        return Err(Error::DegenerateOverlap);
    }
    let cutoff = dependence_threshold * s_max;

    if s_eig.values[0] >= cutoff {
        // Well-conditioned: Cholesky reduction.
        let l = cholesky(s)?;
        // A = L⁻¹ H L⁻ᵀ, built column by column.
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut col: Vec<f64> = (0..n).map(|i| h.get(i, j)).collect();
            l.forward_solve(&mut col);
            cols.push(col);
        }
        // rows of (L⁻¹ H) are columns of (L⁻¹ H)ᵀ; apply L⁻¹ again.
        let mut a_full = vec![0.0; n * n];
        for i in 0..n {
            let mut row: Vec<f64> = (0..n).map(|j| cols[j][i]).collect();
            l.forward_solve(&mut row);
            for j in 0..n {
                a_full[i * n + j] = row[j];
            }
        }
        let a = SymMatrix::from_fn(n, |i, j| 0.5 * (a_full[i * n + j] + a_full[j * n + i]));
        let eig = sym_eigen(&a)?;
        let coefficients = eig
            .vectors
            .into_iter()
            .map(|mut q| {
                l.back_solve_transposed(&mut q);
                fix_sign(&mut q);
                q
            })
            .collect();
        Ok(GenEigResult { eigenvalues: eig.values, coefficients, retained_dim: n })
    } else {
        // Near-dependent basis: canonical orthogonalization.
        let kept: Vec<usize> = (0..n).filter(|&i| s_eig.values[i] >= cutoff).collect();
        if kept.is_empty() {
            return Err(Error::DegenerateOverlap);
        }
        let k = kept.len();
        // X columns are u_i / sqrt(lambda_i)
        let x: Vec<Vec<f64>> = kept
            .iter()
            .map(|&i| {
                let inv = 1.0 / s_eig.values[i].sqrt();
                s_eig.vectors[i].iter().map(|&u| u * inv).collect::<Vec<f64>>()
            })
            .collect();
        let hx: Vec<Vec<f64>> = x.iter().map(|xi| h.mat_vec(xi)).collect();
        let a = SymMatrix::from_fn(k, |i, j| {
            x[i].iter().zip(&hx[j]).map(|(a, b)| a * b).sum::<f64>()
        });
        let eig = sym_eigen(&a)?;
        let coefficients = eig
            .vectors
            .into_iter()
            .map(|q| {
                let mut c = vec![0.0; n];
                for (xi, &qi) in x.iter().zip(&q) {
                    for (cv, &xv) in c.iter_mut().zip(xi) {
                        *cv += qi * xv;
                    }
                }
                fix_sign(&mut c);
                c
            })
            .collect();
        Ok(GenEigResult { eigenvalues: eig.values, coefficients, retained_dim: k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &SymMatrix, b: &SymMatrix) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                d = d.max((a.get(i, j) - b.get(i, j)).abs());
            }
        }
        d
    }

    #[test]
    fn cholesky_identity() {
        let l = cholesky(&SymMatrix::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(l.get(i, j), expect);
            }
        }
    }

    #[test]
    fn cholesky_hand_checked_2x2() {
        let s = SymMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 2.0]]).unwrap();
        let l = cholesky(&s).unwrap();
        assert!((l.get(0, 0) - 2.0).abs() < 1e-15);
        assert!((l.get(1, 0) - 1.0).abs() < 1e-15);
        assert!((l.get(1, 1) - 1.0).abs() < 1e-15);
        assert_eq!(l.get(0, 1), 0.0);
    }

    #[test]
    fn cholesky_rebuilds_random_spd() {
        // seeded SPD input A = MᵀM, dim 8; oracle: rebuild L Lᵀ and compare
        let mut seed = 0x12345678u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let dim = 8;
        let m: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| next()).collect()).collect();
        let a = SymMatrix::from_fn(dim, |i, j| {
            (0..dim).map(|k| m[k][i] * m[k][j]).sum::<f64>() + if i == j { 0.1 } else { 0.0 }
        });
        let l = cholesky(&a).unwrap();
        let rebuilt = SymMatrix::from_fn(dim, |i, j| {
            (0..=i.min(j)).map(|k| l.get(i, k) * l.get(j, k)).sum()
        });
        assert!(max_abs_diff(&a, &rebuilt) < 1e-12 * a.max_diag());
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let s = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(cholesky(&s), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn sym_eigen_diagonal() {
        let a = SymMatrix::from_fn(3, |i, j| {
            if i != j {
                0.0
            } else {
                [3.0, 1.0, 2.0][i]
            }
        });
        let e = sym_eigen(&a).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn sym_eigen_symmetry_forced_2x2() {
        let a = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = sym_eigen(&a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let inv = 1.0 / 2.0_f64.sqrt();
        // sign convention: first largest-magnitude component positive
        assert!((e.vectors[0][0] - inv).abs() < 1e-15);
        assert!((e.vectors[0][1] + inv).abs() < 1e-15);
        assert!((e.vectors[1][0] - inv).abs() < 1e-15);
        assert!((e.vectors[1][1] - inv).abs() < 1e-15);
    }

    #[test]
    fn sym_eigen_residuals_random_dim10() {
        let mut seed = 0xdeadbeefu64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let dim = 10;
        let a = SymMatrix::from_fn(dim, |_, _| next());
        let e = sym_eigen(&a).unwrap();
        let tol = 1e-10 * a.inf_norm().max(1.0);
        for (val, vec) in e.values.iter().zip(&e.vectors) {
            let av = a.mat_vec(vec);
            for (x, y) in av.iter().zip(vec) {
                assert!((x - val * y).abs() < tol);
            }
        }
        // orthonormality
        for i in 0..dim {
            for j in 0..dim {
                let dot: f64 = e.vectors[i].iter().zip(&e.vectors[j]).map(|(a, b)| a * b).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn gen_eigen_identity_overlap() {
        let h = SymMatrix::from_fn(2, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let s = SymMatrix::identity(2);
        let g = gen_eigen(&h, &s, 1e-10).unwrap();
        assert_eq!(g.retained_dim, 2);
        assert!((g.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((g.eigenvalues[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gen_eigen_two_state_closed_form() {
        // double-well two-state pencil at lambda = 0.2, a = 1, m = 1:
        // k = 0.4, E1 = -0.04, xi = 0.08 (1 - e^{-1.6}), eta = e^{-0.8} * 1.8;
        // lower root must equal 2 E1 + xi / (1 + eta).
        let e1 = -0.04;
        let xi = 0.08 * (1.0 - (-1.6_f64).exp());
        let eta = (-0.8_f64).exp() * 1.8;
        let h = SymMatrix::from_rows(&[
            vec![2.0 * e1 + xi, 2.0 * e1 * eta],
            vec![2.0 * e1 * eta, 2.0 * e1 + xi],
        ])
        .unwrap();
        let s = SymMatrix::from_rows(&[vec![1.0, eta], vec![eta, 1.0]]).unwrap();
        let g = gen_eigen(&h, &s, 1e-10).unwrap();
        let expect = 2.0 * e1 + xi / (1.0 + eta);
        assert!((g.eigenvalues[0] - expect).abs() < 1e-12);
    }

    #[test]
    fn gen_eigen_drops_duplicated_basis_function() {
        // duplicate a basis function on purpose: S (and H) have a repeated
        // column, so one overlap eigenvalue is ~0 and must be discarded.
        let h = SymMatrix::from_rows(&[
            vec![1.0, 0.3, 1.0],
            vec![0.3, 2.0, 0.3],
            vec![1.0, 0.3, 1.0],
        ])
        .unwrap();
        let s = SymMatrix::from_rows(&[
            vec![1.0, 0.1, 1.0],
            vec![0.1, 1.0, 0.1],
            vec![1.0, 0.1, 1.0],
        ])
        .unwrap();
        let g = gen_eigen(&h, &s, 1e-10).unwrap();
        assert_eq!(g.retained_dim, 2);
        assert!(g.eigenvalues.iter().all(|e| e.is_finite()));
    }

    #[test]
    fn gen_eigen_rejects_fully_degenerate_overlap() {
        let h = SymMatrix::identity(2);
        let s = SymMatrix::zeros(2);
        assert!(matches!(gen_eigen(&h, &s, 1e-10), Err(Error::DegenerateOverlap)));
    }

    #[test]
    fn gen_eigen_s_orthonormal_coefficients() {
        let h = SymMatrix::from_rows(&[
            vec![2.0, 0.5, 0.1],
            vec![0.5, -1.0, 0.4],
            vec![0.1, 0.4, 0.7],
        ])
        .unwrap();
        let s = SymMatrix::from_rows(&[
            vec![1.0, 0.4, 0.1],
            vec![0.4, 1.0, 0.2],
            vec![0.1, 0.2, 1.0],
        ])
        .unwrap();
        let g = gen_eigen(&h, &s, 1e-10).unwrap();
        for i in 0..3 {
            let sci = s.mat_vec(&g.coefficients[i]);
            for j in 0..3 {
                let dot: f64 = g.coefficients[j].iter().zip(&sci).map(|(a, b)| a * b).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-9);
            }
        }
    }
}
