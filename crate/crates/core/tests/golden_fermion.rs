//! Active-space construction and the Jordan–Wigner map against the
//! independent reference implementation.

mod common;

use common::{assert_close, goldens, hydrogens};
use vqedm::fermion::{build_active_hamiltonian, hamiltonian_to_pauli};
use vqedm::integrals::build_hydrogen_bundle;
use vqedm::scf::run_rhf;

fn converged_bundle(positions: &[[f64; 3]], charge: i32) -> vqedm::chemio::MoleculeBundle {
    let mut bundle = build_hydrogen_bundle(&hydrogens(positions), charge).unwrap();
    let scf = run_rhf(&mut bundle, 400, 1e-12, 1e-11).unwrap();
    assert!(scf.converged);
    bundle
}

#[test]
fn frozen_core_folding_matches_reference_values() {
    use goldens::h4_chain as g;
    let bundle = converged_bundle(&g::POSITIONS, g::CHARGE);
    let ham = build_active_hamiltonian(&bundle, &[1, 2]).unwrap();
    assert_eq!(ham.frozen, vec![0]);
    assert_eq!(ham.n_active_elec, 2);
    assert_eq!(ham.n_active_orb, 2);
    assert_close("e_core (frozen 0)", ham.e_core, g::FROZEN0_E_CORE, 1e-9);
    for i in 0..2 {
        for j in 0..2 {
            assert_close(
                &format!("h_tilde[{i},{j}]"),
                ham.h_eff[[i, j]],
                g::FROZEN0_H_TILDE[i][j],
                1e-9,
            );
        }
    }
}

#[test]
fn hf_expectation_reproduces_scf_energy_with_and_without_freezing() {
    // ⟨HF|H|HF⟩ + (nothing): the diagonal element of the mapped Hamiltonian
    // at the HF bitstring must equal E_RHF — for the full space and for a
    // frozen-core space, where e_core absorbs the frozen orbitals' energy
    use goldens::h4_chain as g;
    let bundle = converged_bundle(&g::POSITIONS, g::CHARGE);
    let mut scf_bundle = bundle.clone();
    let scf = run_rhf(&mut scf_bundle, 400, 1e-12, 1e-11).unwrap();

    struct Case<'a> {
        active: &'a [usize],
        occupied_spatials: usize,
    }
    for case in [
        Case { active: &[0, 1, 2, 3], occupied_spatials: 2 },
        Case { active: &[1, 2], occupied_spatials: 1 },
        Case { active: &[1, 2, 3], occupied_spatials: 1 },
    ] {
        let ham = build_active_hamiltonian(&bundle, case.active).unwrap();
        let pauli = hamiltonian_to_pauli(&ham).unwrap();
        let n_q = pauli.n_qubits();
        // HF bitstring: the lowest active spatial orbitals doubly occupied
        // (qubit 0 = most significant bit, spin orbitals interleaved)
        let mut hf_index = 0usize;
        for k in 0..case.occupied_spatials {
            hf_index |= 1 << (n_q - 1 - 2 * k); // α of spatial k
            hf_index |= 1 << (n_q - 1 - (2 * k + 1)); // β of spatial k
        }
        let dense = pauli.dense_matrix().unwrap();
        assert_close(
            &format!("⟨HF|H|HF⟩ (active {:?})", case.active),
            dense[[hf_index, hf_index]].re,
            scf.energy,
            1e-8,
        );
    }
}

#[test]
fn mapped_hamiltonians_commute_with_particle_number() {
    use goldens::h3p_chain as g;
    let bundle = converged_bundle(&g::POSITIONS, g::CHARGE);
    let ham = build_active_hamiltonian(&bundle, &[0, 1, 2]).unwrap();
    let h = hamiltonian_to_pauli(&ham).unwrap();
    let n_op = vqedm::fermion::number_operator(h.n_qubits());
    let hn = h.mul(&n_op).unwrap().dense_matrix().unwrap();
    let nh = n_op.mul(&h).unwrap().dense_matrix().unwrap();
    let mut norm = 0.0f64;
    for i in 0..hn.nrows() {
        for j in 0..hn.ncols() {
            norm += (hn[[i, j]] - nh[[i, j]]).norm_sqr();
        }
    }
    assert!(norm.sqrt() < 1e-10, "‖[H, N]‖ = {:.3e}", norm.sqrt());
}
