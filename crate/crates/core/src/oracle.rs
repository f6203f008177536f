//! Exact ground truth for small active spaces: dense diagonalization of the
//! mapped Hamiltonian restricted to the correct particle-number sector, and
//! the exact 1-RDM of the resulting eigenvector.
//!
//! This module deliberately avoids the simulator's masked expectation path:
//! matrices are assembled by symbolically applying each Pauli string to
//! basis states ([`apply_string_to_basis_state`]), so oracle and simulator
//! agreement is a genuine cross-check of two implementations.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eigh;
use num_complex::Complex64;

use crate::fermion::{
    apply_string_to_basis_state, hamiltonian_to_pauli, rdm1_observable, spin_orbital_index,
    ActiveSpaceHamiltonian, PauliSum,
};
use crate::rdm::{Rdm1, RdmBasis};
use crate::simulator::Statevector;
use crate::{Error, Result};

/// Largest register the dense oracle accepts.
pub const MAX_ORACLE_QUBITS: usize = 12;

/// Basis-state indices with `n_alpha` electrons on even qubits and `n_beta`
/// on odd qubits (interleaved spin ordering), ascending.
fn sector_basis(n_qubits: usize, n_alpha: usize, n_beta: usize) -> Vec<usize> {
    let mut basis = Vec::new();
    for i in 0..(1usize << n_qubits) {
        let (mut a, mut b) = (0, 0);
        for q in 0..n_qubits {
            if (i >> (n_qubits - 1 - q)) & 1 == 1 {
                if q % 2 == 0 {
                    a += 1;
                } else {
                    b += 1;
                }
            }
        }
        if a == n_alpha && b == n_beta {
            basis.push(i);
        }
    }
    basis
}

/// Dense Hermitian matrix of `obs` restricted to the sector spanned by
/// `basis` (full-space indices). Rows that leave the sector are dropped —
/// exact for any observable that is block-diagonal over the sector.
fn sector_matrix(obs: &PauliSum, basis: &[usize], n_qubits: usize) -> Result<Array2<f64>> {
    let index_of: std::collections::HashMap<usize, usize> =
        basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let dim = basis.len();
    let mut complex = Array2::<Complex64>::zeros((dim, dim));
    for (string, &coeff) in obs.terms() {
        for (col_k, &col) in basis.iter().enumerate() {
            let (row, phase) = apply_string_to_basis_state(string, col, n_qubits);
            if let Some(&row_k) = index_of.get(&row) {
                complex[[row_k, col_k]] += coeff * phase;
            }
        }
    }
    let mut real = Array2::zeros((dim, dim));
    for ((idx, v), r) in complex.indexed_iter().zip(real.iter_mut()) {
        if v.im.abs() >= 1e-10 {
            return Err(Error::validation(
                "sector_matrix_real",
                format!("imaginary residue {:+.3e} at {idx:?}", v.im),
            ));
        }
        *r = v.re;
    }
    Ok(real)
}

/// Exact ground state of an active-space Hamiltonian by dense
/// diagonalization in its particle-number sector. Returns the energy
/// (including the frozen-core constant) and the eigenvector embedded as a
/// full statevector in the Jordan–Wigner qubit basis.
pub fn fci_ground_state(ham: &ActiveSpaceHamiltonian) -> Result<(f64, Statevector)> {
    let n_qubits = ham.n_qubits();
    if n_qubits > MAX_ORACLE_QUBITS {
        return Err(Error::Unsupported(format!(
            "dense diagonalization capped at {MAX_ORACLE_QUBITS} qubits; active space needs {n_qubits}"
        )));
    }
    let pauli = hamiltonian_to_pauli(ham)?;
    let n_alpha = ham.n_active_elec.div_ceil(2);
    let n_beta = ham.n_active_elec - n_alpha;
    let basis = sector_basis(n_qubits, n_alpha, n_beta);
    if basis.is_empty() {
        return Err(Error::Dimension(format!(
            "no basis states with {n_alpha} α and {n_beta} β electrons on {n_qubits} qubits"
        )));
    }
    let matrix = sector_matrix(&pauli, &basis, n_qubits)?;
    let (eigenvalues, eigenvectors) = matrix
        .eigh(ndarray_linalg::UPLO::Lower)
        .map_err(|e| Error::Linalg(format!("sector diagonalization failed: {e}")))?;
    let energy = eigenvalues[0];
    let column: Array1<f64> = eigenvectors.column(0).to_owned();
    // deterministic gauge: largest-|amplitude| entry positive
    let mut arg_max = 0;
    for (k, v) in column.iter().enumerate() {
        if v.abs() > column[arg_max].abs() {
            arg_max = k;
        }
    }
    let sign = if column[arg_max] < 0.0 { -1.0 } else { 1.0 };
    let mut amps = vec![Complex64::default(); 1 << n_qubits];
    for (k, &i) in basis.iter().enumerate() {
        amps[i] = Complex64::new(sign * column[k], 0.0);
    }
    Ok((energy, Statevector::from_amplitudes(n_qubits, amps)?))
}

/// Exact spin-summed spatial 1-RDM of a normalized state, computed by dense
/// matrix-vector products of the same symmetrized observables the simulator
/// measures — but through the symbolic string-application path.
pub fn fci_rdm1(eigenvector: &Statevector) -> Result<Rdm1> {
    let n_qubits = eigenvector.n_qubits();
    if n_qubits % 2 != 0 {
        return Err(Error::Dimension(format!(
            "spatial 1-RDM needs an even qubit count, got {n_qubits}"
        )));
    }
    let n_spatial = n_qubits / 2;
    let amps = eigenvector.amplitudes();
    let mut matrix = Array2::zeros((n_spatial, n_spatial));
    for p in 0..n_spatial {
        for q in p..n_spatial {
            let mut value = Complex64::default();
            for sigma in 0..2 {
                let obs = rdm1_observable(
                    spin_orbital_index(p, sigma),
                    spin_orbital_index(q, sigma),
                    n_qubits,
                )?;
                // O|ψ⟩ assembled termwise, then ⟨ψ|(O|ψ⟩)
                let mut o_psi = vec![Complex64::default(); amps.len()];
                for (string, &coeff) in obs.terms() {
                    for (col, &amp) in amps.iter().enumerate() {
                        if amp != Complex64::default() {
                            let (row, phase) = apply_string_to_basis_state(string, col, n_qubits);
                            o_psi[row] += coeff * phase * amp;
                        }
                    }
                }
                for (a, o) in amps.iter().zip(&o_psi) {
                    value += a.conj() * o;
                }
            }
            if value.im.abs() >= 1e-10 {
                return Err(Error::validation(
                    "rdm_element_real",
                    format!("1-RDM element ({p},{q}) has imaginary part {:+.3e}", value.im),
                ));
            }
            matrix[[p, q]] = value.re;
            matrix[[q, p]] = value.re;
        }
    }
    Rdm1::new(matrix, RdmBasis::MoSpatial, 0)
}
