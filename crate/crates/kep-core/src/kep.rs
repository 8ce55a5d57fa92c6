//! Model-independent assembly of the kinetic-energy-partition pencil.
//!
//! Two subsystems, each carrying a share `1/kappa` of the kinetic energy,
//! contribute their eigenfunctions to a union basis. Expanding the full
//! Schroedinger equation in that basis gives a generalized symmetric
//! eigenproblem whose blocks only need subsystem energies, the potential
//! difference integrals and cross overlaps:
//!
//! ```text
//! H[1m,1n] = kappa1 E_1n delta_mn + <psi_1m | V2 - (kappa1 - 1) V1 | psi_1n>
//! H[1m,2k] = (E_1m + E_2k) <psi_1m | psi_2k>
//! S        = identity diagonals, cross overlaps off-diagonal
//! ```
//!
//! For the even split `kappa = 2` the diagonal carries `2 E_1n` and the
//! coupling reduces to plain `V2 - V1` matrix elements.

use crate::error::{Error, Result};
use crate::linalg::{gen_eigen, Matrix, SymMatrix};

/// Tolerance on the kinetic-energy partition `1/kappa1 + 1/kappa2 = 1`.
const PARTITION_TOL: f64 = 1e-12;

/// One subsystem of the partition: its mass ratio `kappa = M_i / M` and the
/// eigenvalues of its basis functions.
#[derive(Debug, Clone)]
pub struct SubsystemBasis {
    pub kappa: f64,
    pub energies: Vec<f64>,
}

impl SubsystemBasis {
    pub fn new(kappa: f64, energies: Vec<f64>) -> Result<Self> {
        if !(kappa > 1.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass ratio must exceed 1, got {kappa}"
            )));
        }
        if energies.is_empty() {
            return Err(Error::InvalidParameter("subsystem basis must be nonempty".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("subsystem energies must be finite".into()));
        }
        Ok(Self { kappa, energies })
    }

    pub fn size(&self) -> usize {
        self.energies.len()
    }
}

/// The matrix elements the pencil needs beyond subsystem eigenvalues.
///
/// `diag_block_i` holds `<psi_im | (V_other - (kappa_i - 1) V_own) | psi_in>`
/// over subsystem `i`'s own orthonormal basis; `cross_overlap[m][k]` is
/// `<psi_1m | psi_2k>`.
#[derive(Debug, Clone)]
pub struct CouplingIntegrals {
    pub diag_block_1: SymMatrix,
    pub diag_block_2: SymMatrix,
    pub cross_overlap: Matrix,
}

/// Assembled Hamiltonian/overlap pencil over the union basis, with the block
/// boundary between the two subsystems.
#[derive(Debug, Clone)]
pub struct KepAssembly {
    pub h: SymMatrix,
    pub s: SymMatrix,
    n1: usize,
    n2: usize,
}

impl KepAssembly {
    pub fn dim(&self) -> usize {
        self.n1 + self.n2
    }

    /// Index ranges of the two subsystem blocks.
    pub fn block_map(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        (0..self.n1, self.n1..self.n1 + self.n2)
    }
}

/// Eigenpairs of the union-basis pencil with the block layout retained.
#[derive(Debug, Clone)]
pub struct KepSolution {
    pub eigenvalues: Vec<f64>,
    /// Full-length coefficient vectors (block 1 entries first).
    pub coefficients: Vec<Vec<f64>>,
    pub retained_dim: usize,
    n1: usize,
}

impl KepSolution {
    /// Splits the coefficient vector of `state` into its subsystem blocks.
    pub fn block_coefficients(&self, state: usize) -> Result<(&[f64], &[f64])> {
        let c = self
            .coefficients
            .get(state)
            .ok_or(Error::IndexOutOfRange { index: state, retained: self.retained_dim })?;
        Ok(c.split_at(self.n1))
    }
}

/// Builds the pencil from the subsystem data and coupling integrals.
pub fn assemble(
    sub1: &SubsystemBasis,
    sub2: &SubsystemBasis,
    ints: &CouplingIntegrals,
) -> Result<KepAssembly> {
    let partition = 1.0 / sub1.kappa + 1.0 / sub2.kappa;
    if (partition - 1.0).abs() > PARTITION_TOL {
        return Err(Error::InvalidParameter(format!(
            "kinetic energy must be fully distributed: 1/{} + 1/{} = {partition}",
            sub1.kappa, sub2.kappa
        )));
    }
    let (n1, n2) = (sub1.size(), sub2.size());
    if ints.diag_block_1.dim() != n1
        || ints.diag_block_2.dim() != n2
        || ints.cross_overlap.rows() != n1
        || ints.cross_overlap.cols() != n2
    {
        return Err(Error::DimensionMismatch(format!(
            "coupling integrals do not match basis sizes {n1} and {n2}"
        )));
    }

    let dim = n1 + n2;
    let h = SymMatrix::from_fn(dim, |i, j| {
        match (i < n1, j < n1) {
            (true, true) => {
                let d = if i == j { sub1.kappa * sub1.energies[j] } else { 0.0 };
                d + ints.diag_block_1.get(i, j)
            }
            (false, false) => {
                let (l, k) = (i - n1, j - n1);
                let d = if l == k { sub2.kappa * sub2.energies[k] } else { 0.0 };
                d + ints.diag_block_2.get(l, k)
            }
            (true, false) => {
                let k = j - n1;
                (sub1.energies[i] + sub2.energies[k]) * ints.cross_overlap.get(i, k)
            }
            // from_fn only visits i <= j, so the mirrored case cannot occur
            (false, true) => unreachable!(),
        }
    });
    let s = SymMatrix::from_fn(dim, |i, j| match (i < n1, j < n1) {
        (true, true) | (false, false) => {
            if i == j {
                1.0
            } else {
                0.0
            }
        }
        (true, false) => ints.cross_overlap.get(i, j - n1),
        (false, true) => unreachable!(),
    });
    Ok(KepAssembly { h, s, n1, n2 })
}

/// Solves the assembled pencil.
pub fn solve(assembly: &KepAssembly, dependence_threshold: f64) -> Result<KepSolution> {
    let g = gen_eigen(&assembly.h, &assembly.s, dependence_threshold)?;
    Ok(KepSolution {
        eigenvalues: g.eigenvalues,
        coefficients: g.coefficients,
        retained_dim: g.retained_dim,
        n1: assembly.n1,
    })
}

/// Samples the synthesized wavefunction of `state` on `points`.
///
/// `eval1(n, p)` and `eval2(k, p)` evaluate the subsystem basis functions;
/// the summed state inherits the solver's sign convention and unit S-norm.
pub fn synthesize<P>(
    solution: &KepSolution,
    state: usize,
    mut eval1: impl FnMut(usize, &P) -> f64,
    mut eval2: impl FnMut(usize, &P) -> f64,
    points: &[P],
) -> Result<Vec<f64>> {
    let (c1, c2) = solution.block_coefficients(state)?;
    Ok(points
        .iter()
        .map(|p| {
            let mut v = 0.0;
            for (n, &c) in c1.iter().enumerate() {
                if c != 0.0 {
                    v += c * eval1(n, p);
                }
            }
            for (k, &c) in c2.iter().enumerate() {
                if c != 0.0 {
                    v += c * eval2(k, p);
                }
            }
            v
        })
        .collect())
}

/// Largest entrywise deviation between the assembled pencil and matrices
/// obtained by direct quadrature of the full Hamiltonian and overlaps.
pub fn galerkin_check(
    assembly: &KepAssembly,
    direct_h: &SymMatrix,
    direct_s: &SymMatrix,
) -> Result<f64> {
    let dim = assembly.dim();
    if direct_h.dim() != dim || direct_s.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "direct matrices must be {dim}x{dim}"
        )));
    }
    let mut dev: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            dev = dev.max((assembly.h.get(i, j) - direct_h.get(i, j)).abs());
            dev = dev.max((assembly.s.get(i, j) - direct_s.get(i, j)).abs());
        }
    }
    Ok(dev)
}
