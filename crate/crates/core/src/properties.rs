//! Molecular properties derived from an AO-basis 1-RDM: electron density
//! (value, gradient, Hessian) at points and on cube grids, density critical
//! points with topological classification, electrostatic potential, dipole
//! moment, and Mulliken populations.

use ndarray::Array2;
use ndarray_linalg::{Eigh, Solve};
use rayon::prelude::*;

use crate::chemio::{Atom, CubeGrid, MoleculeBundle};
use crate::integrals::PreparedBasis;
use crate::rdm::{Rdm1, RdmBasis};
use crate::{Error, Result};

/// Atomic-unit → debye conversion for dipole moments.
pub const AU_TO_DEBYE: f64 = 2.541746;

/// Default gradient-norm threshold for an accepted critical point.
pub const DEFAULT_CP_GRAD_TOL: f64 = 1e-8;
/// Default Newton iteration cap per seed.
pub const DEFAULT_CP_MAX_ITER: usize = 100;
/// Newton step-length clamp (bohr).
const CP_STEP_CLAMP: f64 = 0.3;
/// Critical points closer than this (bohr) are duplicates.
const CP_DEDUPE_DISTANCE: f64 = 1e-3;
/// Hessian eigenvalues below this magnitude make a point rank-deficient.
const CP_DEGENERACY_TOL: f64 = 1e-8;
/// A Newton iterate farther than this from every nucleus has left the
/// molecule: the seed is abandoned.
const CP_ESCAPE_DISTANCE: f64 = 20.0;

/// ρ, ∇ρ, and the Hessian of the electron density at one point.
#[derive(Debug, Clone, Copy)]
pub struct DensityPoint {
    pub rho: f64,
    pub gradient: [f64; 3],
    pub hessian: [[f64; 3]; 3],
}

impl DensityPoint {
    /// ∇²ρ — the trace of the Hessian.
    pub fn laplacian(&self) -> f64 {
        self.hessian[0][0] + self.hessian[1][1] + self.hessian[2][2]
    }

    pub fn gradient_norm(&self) -> f64 {
        let g = self.gradient;
        (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt()
    }
}

/// Reusable evaluator binding an AO-basis 1-RDM to a prepared basis so grid
/// sweeps don't re-normalize shells per point.
pub struct DensityModel {
    basis: PreparedBasis,
    gamma: Array2<f64>,
    atoms: Vec<Atom>,
}

impl DensityModel {
    pub fn new(gamma: &Rdm1, bundle: &MoleculeBundle) -> Result<Self> {
        if gamma.basis != RdmBasis::Ao {
            return Err(Error::validation(
                "rdm_basis",
                "density evaluation needs an AO-basis 1-RDM (apply mo_to_ao first)",
            ));
        }
        if gamma.dim() != bundle.n_ao() {
            return Err(Error::Dimension(format!(
                "1-RDM is {}×{} but the bundle has {} atomic orbitals",
                gamma.dim(),
                gamma.dim(),
                bundle.n_ao()
            )));
        }
        Ok(DensityModel {
            basis: PreparedBasis::new(bundle),
            gamma: gamma.matrix.clone(),
            atoms: bundle.atoms.clone(),
        })
    }

    /// ρ(r) only — the fast path for grid sweeps.
    pub fn rho_at(&self, r: [f64; 3]) -> f64 {
        let eval = self.basis.evaluate(r, 0);
        let n = eval.values.len();
        let mut rho = 0.0;
        for mu in 0..n {
            for nu in 0..n {
                rho += self.gamma[[mu, nu]] * eval.values[mu] * eval.values[nu];
            }
        }
        rho
    }

    /// ρ, ∇ρ, and the density Hessian, all analytic.
    pub fn density_at(&self, r: [f64; 3]) -> DensityPoint {
        let eval = self.basis.evaluate(r, 2);
        let n = eval.values.len();
        let mut rho = 0.0;
        let mut gradient = [0.0; 3];
        let mut hessian = [[0.0; 3]; 3];
        for mu in 0..n {
            for nu in 0..n {
                let g = self.gamma[[mu, nu]];
                if g == 0.0 {
                    continue;
                }
                rho += g * eval.values[mu] * eval.values[nu];
                for i in 0..3 {
                    // γ symmetric: Σ γ(∇φ_μ φ_ν + φ_μ ∇φ_ν) = 2 Σ γ ∇φ_μ φ_ν
                    gradient[i] += 2.0 * g * eval.gradients[mu][i] * eval.values[nu];
                    for j in 0..3 {
                        hessian[i][j] += 2.0
                            * g
                            * (eval.hessians[mu][i][j] * eval.values[nu]
                                + eval.gradients[mu][i] * eval.gradients[nu][j]);
                    }
                }
            }
        }
        // the analytic form is symmetric; make it exactly so
        for i in 0..3 {
            for j in (i + 1)..3 {
                let s = 0.5 * (hessian[i][j] + hessian[j][i]);
                hessian[i][j] = s;
                hessian[j][i] = s;
            }
        }
        DensityPoint { rho, gradient, hessian }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

/// ρ, ∇ρ, and ∇²ρ of an AO-basis 1-RDM at one point (one-shot wrapper; use
/// [`DensityModel`] for sweeps).
pub fn density_at(gamma: &Rdm1, bundle: &MoleculeBundle, r: [f64; 3]) -> Result<DensityPoint> {
    Ok(DensityModel::new(gamma, bundle)?.density_at(r))
}

/// Axis-aligned uniform grid covering the atoms' bounding box plus
/// `padding` on every side.
fn molecular_grid(atoms: &[Atom], spacing: f64, padding: f64) -> Result<CubeGrid> {
    if !(spacing > 0.0) {
        return Err(Error::validation("grid_spacing", "grid spacing must be positive"));
    }
    if atoms.is_empty() {
        return Err(Error::validation("grid_atoms", "cannot build a grid around zero atoms"));
    }
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for atom in atoms {
        for k in 0..3 {
            lo[k] = lo[k].min(atom.position[k]);
            hi[k] = hi[k].max(atom.position[k]);
        }
    }
    let mut origin = [0.0; 3];
    let mut shape = [0usize; 3];
    for k in 0..3 {
        origin[k] = lo[k] - padding;
        let extent = (hi[k] + padding) - origin[k];
        shape[k] = (extent / spacing).ceil() as usize + 1;
    }
    Ok(CubeGrid {
        origin,
        axes: [[spacing, 0.0, 0.0], [0.0, spacing, 0.0], [0.0, 0.0, spacing]],
        shape,
        data: vec![0.0; shape[0] * shape[1] * shape[2]],
    })
}

/// Electron density sampled on a uniform grid around the molecule.
pub fn density_cube(
    gamma: &Rdm1,
    bundle: &MoleculeBundle,
    spacing: f64,
    padding: f64,
) -> Result<CubeGrid> {
    let model = DensityModel::new(gamma, bundle)?;
    let mut grid = molecular_grid(&bundle.atoms, spacing, padding)?;
    let [_, ny, nz] = grid.shape;
    let geometry = CubeGrid {
        origin: grid.origin,
        axes: grid.axes,
        shape: grid.shape,
        data: Vec::new(),
    };
    // nodes are independent: evaluate in parallel, values fixed by position
    grid.data.par_iter_mut().enumerate().for_each(|(idx, value)| {
        let iz = idx % nz;
        let iy = (idx / nz) % ny;
        let ix = idx / (nz * ny);
        *value = model.rho_at(geometry.point(ix, iy, iz));
    });
    Ok(grid)
}

/// Topological kind of a density critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpKind {
    /// Signature (3,−3): density maximum at (or near) a nucleus.
    Nuclear,
    /// Signature (3,−1): saddle between two bonded nuclei.
    Bond,
    /// Signature (3,+1): interior of a ring.
    Ring,
    /// Signature (3,+3): interior of a cage.
    Cage,
    /// Rank-deficient Hessian (an eigenvalue below the degeneracy
    /// threshold): flagged instead of classified.
    Degenerate,
}

impl std::fmt::Display for CpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CpKind::Nuclear => "NCP",
            CpKind::Bond => "BCP",
            CpKind::Ring => "RCP",
            CpKind::Cage => "CCP",
            CpKind::Degenerate => "degenerate",
        })
    }
}

/// A converged stationary point of the electron density.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub position: [f64; 3],
    pub rho: f64,
    pub laplacian: f64,
    /// Hessian eigenvalues, ascending.
    pub eigenvalues: [f64; 3],
    /// (rank, Σ sign λᵢ).
    pub signature: (u8, i8),
    pub kind: CpKind,
    /// Indices of the nearest one or two atoms, closest first.
    pub nearest_atoms: Vec<usize>,
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

fn classify(point: &DensityPoint, position: [f64; 3], atoms: &[Atom]) -> Result<CriticalPoint> {
    let mut h = Array2::zeros((3, 3));
    for i in 0..3 {
        for j in 0..3 {
            h[[i, j]] = point.hessian[i][j];
        }
    }
    let (eigs, _) = h
        .eigh(ndarray_linalg::UPLO::Lower)
        .map_err(|e| Error::Linalg(format!("critical-point Hessian eigh failed: {e}")))?;
    let eigenvalues = [eigs[0], eigs[1], eigs[2]];
    let rank = eigenvalues.iter().filter(|l| l.abs() >= CP_DEGENERACY_TOL).count() as u8;
    let sig_sum: i8 = eigenvalues
        .iter()
        .filter(|l| l.abs() >= CP_DEGENERACY_TOL)
        .map(|l| if *l > 0.0 { 1i8 } else { -1i8 })
        .sum();
    let kind = if rank < 3 {
        CpKind::Degenerate
    } else {
        match sig_sum {
            -3 => CpKind::Nuclear,
            -1 => CpKind::Bond,
            1 => CpKind::Ring,
            3 => CpKind::Cage,
            _ => unreachable!("rank-3 signature must be odd"),
        }
    };
    let mut by_distance: Vec<usize> = (0..atoms.len()).collect();
    by_distance.sort_by(|&a, &b| {
        distance(position, atoms[a].position)
            .partial_cmp(&distance(position, atoms[b].position))
            .unwrap()
            .then(a.cmp(&b))
    });
    by_distance.truncate(2);
    Ok(CriticalPoint {
        position,
        rho: point.rho,
        laplacian: point.laplacian(),
        eigenvalues,
        signature: (rank, sig_sum),
        kind,
        nearest_atoms: by_distance,
    })
}

/// Newton–Raphson refinement of one seed. Returns `Ok(None)` when the seed
/// diverges (singular Hessian, escape from the molecular region, or
/// iteration cap) — divergence is not an error.
pub fn refine_critical_point(
    model: &DensityModel,
    seed: [f64; 3],
    cp_grad_tol: f64,
    max_newton_iter: usize,
) -> Result<Option<CriticalPoint>> {
    let mut x = seed;
    for _ in 0..=max_newton_iter {
        let point = model.density_at(x);
        if point.gradient_norm() < cp_grad_tol {
            return Ok(Some(classify(&point, x, &model.atoms)?));
        }
        let mut h = Array2::zeros((3, 3));
        let mut g = ndarray::Array1::zeros(3);
        for i in 0..3 {
            g[i] = point.gradient[i];
            for j in 0..3 {
                h[[i, j]] = point.hessian[i][j];
            }
        }
        let step = match h.solve(&g) {
            Ok(s) => s,
            Err(_) => return Ok(None), // singular Hessian: abandon the seed
        };
        let mut norm = 0.0;
        for i in 0..3 {
            norm += step[i] * step[i];
        }
        let norm = norm.sqrt();
        let scale = if norm > CP_STEP_CLAMP { CP_STEP_CLAMP / norm } else { 1.0 };
        for i in 0..3 {
            x[i] -= scale * step[i];
        }
        if model.atoms.iter().all(|a| distance(x, a.position) > CP_ESCAPE_DISTANCE) {
            return Ok(None);
        }
    }
    Ok(None)
}

/// Search for density critical points from the standard seed set — every
/// atom position and every atom-pair midpoint — deduplicating converged
/// points closer than 1e-3 bohr (first seed wins; seed order is atoms by
/// index, then pairs (i,j) with i<j lexicographic).
pub fn find_critical_points(
    gamma: &Rdm1,
    bundle: &MoleculeBundle,
    cp_grad_tol: f64,
    max_newton_iter: usize,
) -> Result<Vec<CriticalPoint>> {
    let model = DensityModel::new(gamma, bundle)?;
    let mut seeds: Vec<[f64; 3]> = bundle.atoms.iter().map(|a| a.position).collect();
    for i in 0..bundle.atoms.len() {
        for j in (i + 1)..bundle.atoms.len() {
            let (a, b) = (bundle.atoms[i].position, bundle.atoms[j].position);
            seeds.push([
                0.5 * (a[0] + b[0]),
                0.5 * (a[1] + b[1]),
                0.5 * (a[2] + b[2]),
            ]);
        }
    }
    // refine seeds in parallel, then merge in seed order so deduplication
    // ("first seed wins") stays deterministic
    let refined: Vec<Option<CriticalPoint>> = seeds
        .par_iter()
        .map(|&seed| refine_critical_point(&model, seed, cp_grad_tol, max_newton_iter))
        .collect::<Result<_>>()?;
    let mut found: Vec<CriticalPoint> = Vec::new();
    for cp in refined.into_iter().flatten() {
        let duplicate =
            found.iter().any(|f| distance(f.position, cp.position) < CP_DEDUPE_DISTANCE);
        if !duplicate {
            found.push(cp);
        }
    }
    Ok(found)
}

/// Aligned text table of critical points: kind, position, ρ, ∇²ρ,
/// Hessian eigenvalues, nearest atoms.
pub fn critical_point_report(cps: &[CriticalPoint], atoms: &[Atom]) -> String {
    let mut out = String::from(
        "kind        x            y            z              rho        laplacian   \
         eigenvalues                              nearest\n",
    );
    for cp in cps {
        let nearest: Vec<String> = cp
            .nearest_atoms
            .iter()
            .map(|&k| format!("{}{}", atoms[k].symbol, k + 1))
            .collect();
        out.push_str(&format!(
            "{:<5} {:>12.6} {:>12.6} {:>12.6} {:>14.8} {:>12.6} {:>12.6} {:>12.6} {:>12.6}  {}\n",
            cp.kind.to_string(),
            cp.position[0],
            cp.position[1],
            cp.position[2],
            cp.rho,
            cp.laplacian,
            cp.eigenvalues[0],
            cp.eigenvalues[1],
            cp.eigenvalues[2],
            nearest.join("-"),
        ));
    }
    out
}

/// Exact nuclear potential plus midpoint-quadrature electronic potential at
/// one point. `grid` must be a density grid covering the molecule (its
/// integral must recover at least 95% of the electrons); cells whose center
/// lies within half a grid spacing of `r` are excluded from the quadrature.
pub fn electrostatic_potential(
    bundle: &MoleculeBundle,
    r: [f64; 3],
    grid: &CubeGrid,
) -> Result<f64> {
    let dv = grid.voxel_volume();
    let integral: f64 = grid.data.iter().sum::<f64>() * dv;
    let n_elec = bundle.n_electrons() as f64;
    if integral < 0.95 * n_elec {
        return Err(Error::validation(
            "esp_grid_coverage",
            format!("density grid integrates to {integral:.4}, needs ≥ 0.95·{n_elec}"),
        ));
    }
    let mut v = 0.0;
    for atom in &bundle.atoms {
        let d = distance(r, atom.position);
        if d < 1e-10 {
            return Err(Error::validation(
                "esp_nuclear_singularity",
                format!("evaluation point coincides with nucleus {}", atom.symbol),
            ));
        }
        v += atom.z as f64 / d;
    }
    let spacing = grid
        .axes
        .iter()
        .map(|a| (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt())
        .fold(0.0f64, f64::max);
    let exclusion = 0.5 * spacing;
    let [nx, ny, nz] = grid.shape;
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                let cell = grid.point(ix, iy, iz);
                let d = distance(r, cell);
                if d < exclusion {
                    continue; // self-cell: the 1/d kernel is unintegrable here
                }
                v -= grid.data[grid.index(ix, iy, iz)] * dv / d;
            }
        }
    }
    Ok(v)
}

/// Electrostatic potential on a grid. Nodes within 0.1 bohr of a nucleus
/// take the value at a 0.1-bohr offset from that nucleus (the nuclear term
/// diverges at the nucleus itself). The electronic quadrature runs over an
/// internally built density grid with the same spacing and at least 5 bohr
/// of padding.
pub fn esp_cube(
    gamma: &Rdm1,
    bundle: &MoleculeBundle,
    spacing: f64,
    padding: f64,
) -> Result<CubeGrid> {
    let density = density_cube(gamma, bundle, spacing, padding.max(5.0))?;
    let mut grid = molecular_grid(&bundle.atoms, spacing, padding)?;
    let [_, ny, nz] = grid.shape;
    let geometry = CubeGrid {
        origin: grid.origin,
        axes: grid.axes,
        shape: grid.shape,
        data: Vec::new(),
    };
    grid.data
        .par_iter_mut()
        .enumerate()
        .map(|(idx, value)| {
            let iz = idx % nz;
            let iy = (idx / nz) % ny;
            let ix = idx / (nz * ny);
            let mut p = geometry.point(ix, iy, iz);
            for atom in &bundle.atoms {
                let d = distance(p, atom.position);
                if d < 0.1 {
                    // deterministic clamp: step 0.1 bohr away from the
                    // nucleus (along +x when the node sits exactly on it)
                    let dir = if d < 1e-12 {
                        [1.0, 0.0, 0.0]
                    } else {
                        [
                            (p[0] - atom.position[0]) / d,
                            (p[1] - atom.position[1]) / d,
                            (p[2] - atom.position[2]) / d,
                        ]
                    };
                    p = [
                        atom.position[0] + 0.1 * dir[0],
                        atom.position[1] + 0.1 * dir[1],
                        atom.position[2] + 0.1 * dir[2],
                    ];
                    break;
                }
            }
            *value = electrostatic_potential(bundle, p, &density)?;
            Ok(())
        })
        .collect::<Result<()>>()?;
    Ok(grid)
}

/// Dipole moment report: components in atomic units and debye, about a
/// stated origin.
#[derive(Debug, Clone)]
pub struct DipoleReport {
    /// Origin the moment is taken about (bohr).
    pub origin: [f64; 3],
    pub au: [f64; 3],
    pub debye: [f64; 3],
    pub magnitude_debye: f64,
}

/// Center of nuclear charge — the default dipole origin (it must be stated
/// for charged systems, where the moment is origin-dependent).
pub fn center_of_nuclear_charge(atoms: &[Atom]) -> [f64; 3] {
    let mut origin = [0.0; 3];
    let mut z_total = 0.0;
    for atom in atoms {
        for k in 0..3 {
            origin[k] += atom.z as f64 * atom.position[k];
        }
        z_total += atom.z as f64;
    }
    for o in &mut origin {
        *o /= z_total;
    }
    origin
}

/// Dipole moment about an explicit origin:
/// `μ_k = −Σ_μν γ_μν (μ|x_k|ν) + o_k·tr(γS) + Σ_A Z_A (R_{A,k} − o_k)`.
pub fn dipole_moment_about(
    gamma: &Rdm1,
    bundle: &MoleculeBundle,
    origin: [f64; 3],
) -> Result<DipoleReport> {
    if gamma.basis != RdmBasis::Ao {
        return Err(Error::validation(
            "rdm_basis",
            "dipole evaluation needs an AO-basis 1-RDM (apply mo_to_ao first)",
        ));
    }
    if gamma.dim() != bundle.n_ao() {
        return Err(Error::Dimension(format!(
            "1-RDM is {}×{} but the bundle has {} atomic orbitals",
            gamma.dim(),
            gamma.dim(),
            bundle.n_ao()
        )));
    }
    let d3 = crate::integrals::dipole_integrals(bundle)?;
    let n_measured: f64 = (0..gamma.dim())
        .map(|m| {
            (0..gamma.dim())
                .map(|n| gamma.matrix[[m, n]] * bundle.overlap[[n, m]])
                .sum::<f64>()
        })
        .sum();
    let mut au = [0.0; 3];
    for k in 0..3 {
        let electronic: f64 = gamma
            .matrix
            .iter()
            .zip(d3[k].iter())
            .map(|(g, d)| g * d)
            .sum();
        au[k] = -electronic + origin[k] * n_measured;
        for atom in &bundle.atoms {
            au[k] += atom.z as f64 * (atom.position[k] - origin[k]);
        }
    }
    let debye = [au[0] * AU_TO_DEBYE, au[1] * AU_TO_DEBYE, au[2] * AU_TO_DEBYE];
    let magnitude_debye =
        (debye[0] * debye[0] + debye[1] * debye[1] + debye[2] * debye[2]).sqrt();
    Ok(DipoleReport { origin, au, debye, magnitude_debye })
}

/// Dipole moment about the center of nuclear charge.
pub fn dipole_moment(gamma: &Rdm1, bundle: &MoleculeBundle) -> Result<DipoleReport> {
    dipole_moment_about(gamma, bundle, center_of_nuclear_charge(&bundle.atoms))
}

/// Mulliken population analysis of an AO-basis 1-RDM.
#[derive(Debug, Clone)]
pub struct MullikenReport {
    /// (γS)_μμ per atomic orbital.
    pub ao_populations: Vec<f64>,
    /// P_A = Σ_{μ∈A} (γS)_μμ.
    pub atom_populations: Vec<f64>,
    /// q_A = Z_A − P_A.
    pub atom_charges: Vec<f64>,
    /// Σ_A q_A.
    pub total_charge: f64,
}

impl MullikenReport {
    /// Aligned per-atom table (atom, population, charge) plus the total.
    pub fn to_text(&self, atoms: &[Atom]) -> String {
        let mut out = String::from("atom     population       charge\n");
        for (k, atom) in atoms.iter().enumerate() {
            out.push_str(&format!(
                "{:<4} {:>14.8} {:>12.8}\n",
                format!("{}{}", atom.symbol, k + 1),
                self.atom_populations[k],
                self.atom_charges[k]
            ));
        }
        out.push_str(&format!("total charge {:>12.8}\n", self.total_charge));
        out
    }
}

/// Mulliken populations and charges: per-AO population (γS)_μμ summed onto
/// atoms, charges q_A = Z_A − P_A.
pub fn mulliken(gamma: &Rdm1, bundle: &MoleculeBundle) -> Result<MullikenReport> {
    if gamma.basis != RdmBasis::Ao {
        return Err(Error::validation(
            "rdm_basis",
            "Mulliken analysis needs an AO-basis 1-RDM (apply mo_to_ao first)",
        ));
    }
    if gamma.dim() != bundle.n_ao() {
        return Err(Error::Dimension(format!(
            "1-RDM is {}×{} but the bundle has {} atomic orbitals",
            gamma.dim(),
            gamma.dim(),
            bundle.n_ao()
        )));
    }
    let gs = gamma.matrix.dot(&bundle.overlap);
    let ao_populations: Vec<f64> = (0..bundle.n_ao()).map(|m| gs[[m, m]]).collect();
    let ao_to_atom = bundle.ao_to_atom();
    let mut atom_populations = vec![0.0; bundle.atoms.len()];
    for (mu, &a) in ao_to_atom.iter().enumerate() {
        atom_populations[a] += ao_populations[mu];
    }
    let atom_charges: Vec<f64> = bundle
        .atoms
        .iter()
        .zip(&atom_populations)
        .map(|(atom, p)| atom.z as f64 - p)
        .collect();
    let total_charge = atom_charges.iter().sum();
    Ok(MullikenReport { ao_populations, atom_populations, atom_charges, total_charge })
}
