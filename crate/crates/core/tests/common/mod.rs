//! Shared fixtures for the integration suites: frozen reference values and
//! matrix/scalar comparison helpers.
#![allow(dead_code)]

pub mod goldens;

use ndarray::Array2;
use vqedm::chemio::Atom;

/// Hydrogen atoms at the given positions (bohr).
pub fn hydrogens(positions: &[[f64; 3]]) -> Vec<Atom> {
    positions
        .iter()
        .map(|&position| Atom { symbol: "H".into(), z: 1, position })
        .collect()
}

/// Assert |got − want| ≤ tol with a diagnostic that names the quantity.
pub fn assert_close(name: &str, got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "{name}: got {got:.12e}, want {want:.12e} (|diff| = {:.3e} > {tol:.1e})",
        (got - want).abs()
    );
}

/// Assert elementwise agreement of a matrix with a nested-array golden.
pub fn assert_matrix_close<const N: usize>(
    name: &str,
    got: &Array2<f64>,
    want: &[[f64; N]; N],
    tol: f64,
) {
    assert_eq!(got.nrows(), N, "{name}: row count");
    assert_eq!(got.ncols(), N, "{name}: column count");
    for i in 0..N {
        for j in 0..N {
            assert_close(&format!("{name}[{i},{j}]"), got[[i, j]], want[i][j], tol);
        }
    }
}
