//! Dense-diagonalization oracle vs. frozen reference values from an
//! independent determinant-based CI implementation, plus the cross-check
//! that the simulator's measured 1-RDM of the exact eigenvector agrees with
//! the oracle's dense 1-RDM.

mod common;

use common::goldens;
use vqedm::fermion::build_active_hamiltonian;
use vqedm::oracle::{fci_ground_state, fci_rdm1};
use vqedm::rdm::measure_rdm1;
use vqedm::scf::run_rhf;

fn solve(
    positions: &[[f64; 3]],
    charge: i32,
    active: &[usize],
) -> (f64, vqedm::simulator::Statevector, f64) {
    let atoms = common::hydrogens(positions);
    let mut bundle = vqedm::integrals::build_hydrogen_bundle(&atoms, charge).unwrap();
    let scf = run_rhf(&mut bundle, 400, 1e-12, 1e-11).unwrap();
    let ham = build_active_hamiltonian(&bundle, active).unwrap();
    let (e, state) = fci_ground_state(&ham).unwrap();
    (e, state, scf.energy)
}

macro_rules! check_fci {
    ($name:ident, $system:ident, $n_orb:expr) => {
        #[test]
        fn $name() {
            use goldens::$system as sys;
            let active: Vec<usize> = (0..$n_orb).collect();
            let (e, state, e_rhf) = solve(&sys::POSITIONS, sys::CHARGE, &active);
            common::assert_close("E_FCI", e, sys::E_FCI, 1e-9);
            assert!(e <= e_rhf + 1e-12, "variational bound: {e} vs HF {e_rhf}");

            let rdm = fci_rdm1(&state).unwrap();
            common::assert_matrix_close("FCI_RDM1_MO", &rdm.matrix, &sys::FCI_RDM1_MO, 1e-9);
            rdm.validate(Some(rdm.trace().round())).unwrap();

            // dual-route agreement: masked measurement vs dense products
            let measured = measure_rdm1(&state, $n_orb).unwrap();
            for p in 0..$n_orb {
                for q in 0..$n_orb {
                    let diff = (measured.matrix[[p, q]] - rdm.matrix[[p, q]]).abs();
                    assert!(diff < 1e-9, "1-RDM route disagreement {diff:.2e} at ({p},{q})");
                }
            }
        }
    };
}

check_fci!(h2_full_space_matches_reference_ci, h2, 2);
check_fci!(h3p_ring_full_space_matches_reference_ci, h3p_ring, 3);
check_fci!(h3p_chain_full_space_matches_reference_ci, h3p_chain, 3);
check_fci!(h4_chain_full_space_matches_reference_ci, h4_chain, 4);

#[test]
fn frozen_core_active_space_matches_reference_ci() {
    use goldens::h4_chain as sys;
    let (e, state, _) = solve(&sys::POSITIONS, sys::CHARGE, &[1, 2]);
    common::assert_close("FROZEN0_ACTIVE12_E_FCI", e, sys::FROZEN0_ACTIVE12_E_FCI, 1e-9);
    // 2 active electrons on 2 active orbitals
    let rdm = fci_rdm1(&state).unwrap();
    common::assert_close("active trace", rdm.trace(), 2.0, 1e-10);
}

#[test]
fn correlation_lowers_every_full_space_energy() {
    for (positions, charge, n_orb, e_fci) in [
        (&goldens::h2::POSITIONS[..], goldens::h2::CHARGE, 2, goldens::h2::E_FCI),
        (
            &goldens::h4_chain::POSITIONS[..],
            goldens::h4_chain::CHARGE,
            4,
            goldens::h4_chain::E_FCI,
        ),
    ] {
        let active: Vec<usize> = (0..n_orb).collect();
        let (e, _, e_rhf) = solve(positions, charge, &active);
        assert!(e < e_rhf, "FCI must lower the energy: {e} vs {e_rhf}");
        common::assert_close("E_FCI", e, e_fci, 1e-9);
    }
}
