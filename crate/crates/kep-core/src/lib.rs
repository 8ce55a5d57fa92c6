//! Kinetic-energy-partition (KEP) solvers for quantum systems with two
//! competing potentials.
//!
//! Instead of splitting the potential into "unperturbed" and "perturbed"
//! parts, the kinetic energy is distributed between the potentials through
//! effective masses, turning the Hamiltonian into a sum of solvable
//! subsystems. The union of the subsystem eigenfunctions is generally
//! non-orthogonal, so diagonalizing in it means solving a generalized
//! symmetric eigenproblem with overlap metric.
//!
//! The crate provides the numerical kernels (dense symmetric linear algebra,
//! Gauss quadrature, special functions), the model-independent assembly of
//! the union-basis pencil, three worked model systems (double delta wells, a
//! charged oscillator in a magnetic field, the hydrogen molecular ion), a
//! two-state perturbative variant, and time propagation of the expansion
//! coefficients.

pub mod constants;
pub mod error;
pub mod kep;
pub mod linalg;
pub mod models;
pub mod opt;
pub mod perturbation;
pub mod quad;
pub mod special;
pub mod td;

pub use error::{Error, Result};
pub use kep::{assemble, galerkin_check, solve, synthesize};
pub use kep::{CouplingIntegrals, KepAssembly, KepSolution, SubsystemBasis};
pub use linalg::{cholesky, gen_eigen, sym_eigen, GenEigResult, Matrix, SymMatrix};
pub use quad::{gauss_hermite, gauss_laguerre, gauss_legendre, QuadratureRule};
