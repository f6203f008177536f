//! Two-phase variational quantum eigensolver with 1-RDM tracking, plus the
//! molecular-property toolchain that consumes the resulting density matrices.
//!
//! The crate is organized bottom-up:
//!
//! * [`chemio`] — molecule/integral bundle files, FCIDUMP, Gaussian cube grids
//! * [`integrals`] — analytic s-type Gaussian integrals and basis evaluation
//! * [`scf`] — restricted Hartree–Fock
//! * [`fermion`] — Pauli-string algebra, Jordan–Wigner mapping, active-space
//!   Hamiltonians
//! * [`simulator`] — dense statevector simulator and excitation gates
//! * [`ansatz`] — k-UpCCGSD and gate-fabric circuit builders
//! * [`rdm`] — one-particle reduced density matrices (measurement, merging,
//!   basis transforms)
//! * [`vqe`] — the two-phase optimizer (energy descent, then joint
//!   energy + density-matrix objective)
//! * [`oracle`] — exact diagonalization in the particle-number sector
//! * [`properties`] — electron density, critical points, electrostatic
//!   potential, dipole moments, Mulliken populations
//! * [`cli`] — the `vqedm` command-line front end

pub mod ansatz;
pub mod chemio;
pub mod cli;
pub mod error;
pub mod fermion;
pub mod integrals;
pub mod oracle;
pub mod properties;
pub mod rdm;
pub mod scf;
pub mod simulator;
pub mod vqe;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
