//! Restricted Hartree–Fock in an AO basis.
//!
//! Plain Roothaan iterations with symmetric (S^{-1/2}) orthogonalization and
//! a fixed 0.5 damping factor for the first five iterations — no DIIS, which
//! desk-scale systems do not need. Convergence requires *both* the energy
//! change and the density-matrix RMSD between iterations to fall below their
//! tolerances, so the SCF error sits well under the thresholds used by the
//! variational optimizer downstream.
//!
//! MO phases and degenerate-column order are fixed by a deterministic gauge
//! (ascending energy, then ascending index of the largest-magnitude AO
//! coefficient, that coefficient made positive) so density-matrix comparisons
//! across runs are meaningful.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};

use crate::chemio::MoleculeBundle;
use crate::{Error, Result};

/// Iteration cap that comfortably covers damped Roothaan on small systems.
pub const DEFAULT_MAX_ITER: usize = 200;
/// Default |ΔE| convergence threshold (hartree).
pub const DEFAULT_E_TOL: f64 = 1e-10;
/// Default density-RMSD convergence threshold.
pub const DEFAULT_RDM_RMSD_TOL: f64 = 1e-8;

/// Converged (or abandoned) Hartree–Fock state.
#[derive(Debug, Clone)]
pub struct ScfResult {
    /// Total RHF energy including nuclear repulsion (hartree).
    pub energy: f64,
    /// MO coefficients, AO × MO, columns ascending in orbital energy.
    pub mo_coeff: Array2<f64>,
    /// Orbital energies (hartree), ascending.
    pub mo_energies: Array1<f64>,
    /// Spin-summed AO density matrix P = 2 C_occ C_occᵀ.
    pub density_ao: Array2<f64>,
    pub n_iterations: usize,
    pub converged: bool,
    /// Electron count of the run (fixes the occupation pattern).
    pub n_electrons: usize,
}

/// S^{-1/2} by eigendecomposition of the overlap matrix.
fn symmetric_orthogonalizer(s: &Array2<f64>) -> Result<Array2<f64>> {
    let (vals, vecs) = s
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Linalg(format!("overlap eigendecomposition: {e}")))?;
    if let Some(&v) = vals.iter().find(|&&v| v <= 0.0) {
        return Err(Error::validation(
            "overlap_positive_definite",
            format!("overlap eigenvalue {v:.3e} is not positive"),
        ));
    }
    // X = U diag(1/sqrt(λ)) Uᵀ
    let mut x = Array2::zeros(s.raw_dim());
    for j in 0..vals.len() {
        let inv_sqrt = vals[j].sqrt().recip();
        let u = vecs.column(j);
        for a in 0..s.nrows() {
            for b in 0..s.nrows() {
                x[[a, b]] += inv_sqrt * u[a] * u[b];
            }
        }
    }
    Ok(x)
}

/// Closed-shell Fock matrix F = h + J − ½K for the spin-summed density P.
fn fock_matrix(bundle: &MoleculeBundle, p: &Array2<f64>) -> Array2<f64> {
    let n = bundle.n_ao();
    let mut f = bundle.core_h.clone();
    for m in 0..n {
        for nu in 0..n {
            let mut j_mn = 0.0;
            let mut k_mn = 0.0;
            for l in 0..n {
                for s in 0..n {
                    let p_ls = p[[l, s]];
                    j_mn += p_ls * bundle.eri.get(m, nu, l, s);
                    k_mn += p_ls * bundle.eri.get(m, l, s, nu);
                }
            }
            f[[m, nu]] += j_mn - 0.5 * k_mn;
        }
    }
    f
}

/// Electronic + nuclear energy for density P and its Fock matrix.
fn total_energy(bundle: &MoleculeBundle, p: &Array2<f64>, f: &Array2<f64>) -> f64 {
    let mut e = 0.0;
    for m in 0..bundle.n_ao() {
        for n in 0..bundle.n_ao() {
            e += p[[m, n]] * (bundle.core_h[[m, n]] + f[[m, n]]);
        }
    }
    0.5 * e + bundle.e_nuc
}

/// First index holding the maximum of |column| (first wins on exact ties).
fn first_argmax_abs(col: ndarray::ArrayView1<f64>) -> usize {
    let mut best = 0;
    for (i, &v) in col.iter().enumerate() {
        if v.abs() > col[best].abs() {
            best = i;
        }
    }
    best
}

/// Deterministic MO gauge: within each degenerate energy block, order columns
/// by ascending index of their largest-|coefficient| AO; make that
/// coefficient positive.
fn fix_mo_gauge(c: &mut Array2<f64>, eps: &mut Array1<f64>) {
    let n = eps.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eps[end] - eps[start]).abs() < 1e-9 {
            end += 1;
        }
        if end - start > 1 {
            let mut order: Vec<usize> = (start..end).collect();
            order.sort_by_key(|&j| first_argmax_abs(c.column(j)));
            let block: Vec<Array1<f64>> = order.iter().map(|&j| c.column(j).to_owned()).collect();
            let block_eps: Vec<f64> = order.iter().map(|&j| eps[j]).collect();
            for (offset, (col, e)) in block.into_iter().zip(block_eps).enumerate() {
                c.column_mut(start + offset).assign(&col);
                eps[start + offset] = e;
            }
        }
        for j in start..end {
            let lead = first_argmax_abs(c.column(j));
            if c[[lead, j]] < 0.0 {
                c.column_mut(j).mapv_inplace(|x| -x);
            }
        }
        start = end;
    }
}

/// Spin-summed density P = 2 C_occ C_occᵀ.
fn density_from_mos(c: &Array2<f64>, n_occ: usize) -> Array2<f64> {
    let occ = c.slice(ndarray::s![.., ..n_occ]);
    2.0 * occ.dot(&occ.t())
}

/// Solve the restricted Hartree–Fock equations for the bundle.
///
/// The starting density comes from the bundle's `mo_coeff` when it already
/// holds enough columns (so a converged bundle re-converges in one
/// iteration); otherwise from the core-Hamiltonian guess. On return the
/// bundle's `mo_coeff`/`mo_energies` are updated with the converged MOs.
///
/// Non-convergence within `max_iter` is reported through
/// [`ScfResult::converged`], not as an error.
pub fn run_rhf(
    bundle: &mut MoleculeBundle,
    max_iter: usize,
    e_tol: f64,
    rdm_rmsd_tol: f64,
) -> Result<ScfResult> {
    let n_elec = bundle.n_electrons();
    if n_elec == 0 || n_elec % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "restricted HF needs a positive even electron count, got {n_elec}"
        )));
    }
    let n = bundle.n_ao();
    let n_occ = n_elec / 2;
    if n_occ > n {
        return Err(Error::Dimension(format!(
            "{n_elec} electrons need {n_occ} occupied MOs but only {n} AOs exist"
        )));
    }

    let x = symmetric_orthogonalizer(&bundle.overlap)?;

    // one orthogonalized Fock solve: F -> (ε, C)
    let solve = |f: &Array2<f64>| -> Result<(Array1<f64>, Array2<f64>)> {
        let f_prime = x.t().dot(f).dot(&x);
        let (eps, c_prime) = f_prime
            .eigh(UPLO::Lower)
            .map_err(|e| Error::Linalg(format!("Fock eigendecomposition: {e}")))?;
        Ok((eps, x.dot(&c_prime)))
    };

    // starting density
    let mut p = if bundle.mo_coeff.ncols() >= n_occ {
        density_from_mos(&bundle.mo_coeff, n_occ)
    } else {
        let (_, c0) = solve(&bundle.core_h)?;
        density_from_mos(&c0, n_occ)
    };

    let mut f = fock_matrix(bundle, &p);
    let mut energy = total_energy(bundle, &p, &f);
    let mut mo_energies = Array1::zeros(n);
    let mut mo_coeff = Array2::zeros((n, n));
    let mut converged = false;
    let mut n_iterations = 0;

    for it in 1..=max_iter {
        n_iterations = it;
        let (eps, c) = solve(&f)?;
        let mut p_new = density_from_mos(&c, n_occ);
        if it <= 5 {
            p_new = 0.5 * &p_new + 0.5 * &p;
        }
        let f_new = fock_matrix(bundle, &p_new);
        let e_new = total_energy(bundle, &p_new, &f_new);

        let delta_e = (e_new - energy).abs();
        let rmsd = {
            let diff = &p_new - &p;
            (diff.iter().map(|d| d * d).sum::<f64>() / (n * n) as f64).sqrt()
        };

        p = p_new;
        f = f_new;
        energy = e_new;
        mo_energies = eps;
        mo_coeff = c;

        if delta_e < e_tol && rmsd < rdm_rmsd_tol {
            converged = true;
            break;
        }
    }

    fix_mo_gauge(&mut mo_coeff, &mut mo_energies);
    // the density is gauge-invariant; rebuild anyway so P corresponds exactly
    // to the returned (gauge-fixed) columns
    p = density_from_mos(&mo_coeff, n_occ);

    bundle.mo_coeff = mo_coeff.clone();
    bundle.mo_energies = Some(mo_energies.clone());

    Ok(ScfResult {
        energy,
        mo_coeff,
        mo_energies,
        density_ao: p,
        n_iterations,
        converged,
        n_electrons: n_elec,
    })
}

/// [`run_rhf`] with the default iteration cap and tolerances.
pub fn run_rhf_default(bundle: &mut MoleculeBundle) -> Result<ScfResult> {
    run_rhf(bundle, DEFAULT_MAX_ITER, DEFAULT_E_TOL, DEFAULT_RDM_RMSD_TOL)
}

/// Hartree–Fock 1-RDM in the MO basis: diagonal, 2.0 for each of the
/// n_electrons/2 lowest orbitals, 0.0 elsewhere.
///
/// Callers should only use this for a converged `scf` result.
pub fn hf_rdm1_mo(scf: &ScfResult, n_mo: usize) -> Array2<f64> {
    debug_assert!(scf.converged, "HF 1-RDM requested from an unconverged SCF");
    let mut d = Array2::zeros((n_mo, n_mo));
    for i in 0..(scf.n_electrons / 2).min(n_mo) {
        d[[i, i]] = 2.0;
    }
    d
}
