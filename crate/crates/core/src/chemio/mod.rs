//! Molecule/integral bundles and the file formats the tool speaks.
//!
//! A *bundle* is the self-contained input for everything downstream: geometry,
//! basis shells, AO integrals, and (once SCF has run) MO coefficients. Bundles
//! are stored as versioned TOML documents; [`parse_bundle`] validates every
//! structural invariant on the way in so later stages can assume a coherent
//! input. FCIDUMP and Gaussian-cube I/O live in the [`fcidump`] and [`cube`]
//! submodules.

mod cube;
mod fcidump;

pub use cube::{parse_cube_str, read_cube, write_cube, write_cube_str, CubeGrid};
pub use fcidump::{parse_fcidump, parse_fcidump_str, write_fcidump, write_fcidump_str, FcidumpData};

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Bundle schema version understood by this build.
pub const BUNDLE_FORMAT_VERSION: u32 = 1;

/// Element symbols for the nuclear charges this tool can name (Z = 1..=36).
const ELEMENT_SYMBOLS: [&str; 36] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr",
];

/// Symbol for a nuclear charge, or `None` outside the supported table.
pub fn element_symbol(z: u32) -> Option<&'static str> {
    (z >= 1).then(|| ELEMENT_SYMBOLS.get(z as usize - 1).copied()).flatten()
}

/// A nucleus: symbol, charge, and position in bohr.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub symbol: String,
    pub z: u32,
    pub position: [f64; 3],
}

/// One contracted Cartesian Gaussian shell (s or p).
///
/// `coefficients` are stored exactly as read from the file; primitive and
/// contraction normalization are folded in by the evaluation/integral code,
/// never here, so bundles round-trip bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianShell {
    /// Index of the owning atom (for population analysis and labels).
    pub atom: usize,
    /// Angular momentum: 0 = s (1 AO), 1 = p (3 AOs, ordered x, y, z).
    pub l: u8,
    /// Shell center in bohr (normally the owning atom's position).
    pub center: [f64; 3],
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl GaussianShell {
    /// Number of atomic orbitals this shell expands to.
    pub fn n_ao(&self) -> usize {
        match self.l {
            0 => 1,
            1 => 3,
            _ => unreachable!("shells with l > 1 are rejected at parse time"),
        }
    }
}

/// Two-electron repulsion integrals in chemists' notation `(pq|rs)`, stored
/// once per 8-fold-symmetry orbit: `p >= q`, `r >= s`, `pq >= rs` with the
/// compound index `pq = p(p+1)/2 + q`.
#[derive(Debug, Clone, PartialEq)]
pub struct EriTensor {
    n_orb: usize,
    data: Vec<f64>,
}

impl EriTensor {
    pub fn zeros(n_orb: usize) -> Self {
        let n_pair = n_orb * (n_orb + 1) / 2;
        EriTensor {
            n_orb,
            data: vec![0.0; n_pair * (n_pair + 1) / 2],
        }
    }

    /// Rebuild from the canonical flat layout (validates the length).
    pub fn from_flat(n_orb: usize, data: Vec<f64>) -> Result<Self> {
        let expect = Self::zeros(n_orb).data.len();
        if data.len() != expect {
            return Err(Error::Dimension(format!(
                "eri array has {} entries, expected {} for {} orbitals",
                data.len(),
                expect,
                n_orb
            )));
        }
        Ok(EriTensor { n_orb, data })
    }

    pub fn n_orb(&self) -> usize {
        self.n_orb
    }

    /// Flat canonical storage (for serialization).
    pub fn flat(&self) -> &[f64] {
        &self.data
    }

    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        debug_assert!(p < self.n_orb && q < self.n_orb && r < self.n_orb && s < self.n_orb);
        let (p, q) = if p >= q { (p, q) } else { (q, p) };
        let (r, s) = if r >= s { (r, s) } else { (s, r) };
        let pq = p * (p + 1) / 2 + q;
        let rs = r * (r + 1) / 2 + s;
        let (pq, rs) = if pq >= rs { (pq, rs) } else { (rs, pq) };
        pq * (pq + 1) / 2 + rs
    }

    /// `(pq|rs)`, canonicalized over the full 8-fold symmetry group.
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[self.index(p, q, r, s)]
    }

    pub fn set(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        let i = self.index(p, q, r, s);
        self.data[i] = value;
    }

    /// Iterate the canonical representative quadruples `(p, q, r, s)`.
    pub fn unique_quadruples(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> {
        let n = self.n_orb;
        (0..n).flat_map(move |p| {
            (0..=p).flat_map(move |q| {
                (0..=p).flat_map(move |r| {
                    let s_max = if r == p { q } else { r };
                    (0..=s_max).map(move |s| (p, q, r, s))
                })
            })
        })
    }
}

/// Self-contained molecular problem: geometry, basis, AO integrals, and
/// (optionally) converged MOs.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeBundle {
    pub atoms: Vec<Atom>,
    pub charge: i32,
    pub shells: Vec<GaussianShell>,
    /// AO overlap matrix (symmetric positive definite).
    pub overlap: Array2<f64>,
    /// One-electron core Hamiltonian (kinetic + nuclear attraction).
    pub core_h: Array2<f64>,
    pub eri: EriTensor,
    /// MO coefficients, AO x MO, columns ascending in energy; `0 x 0` until
    /// an SCF has filled them in.
    pub mo_coeff: Array2<f64>,
    pub mo_energies: Option<Array1<f64>>,
    /// `(mu| x,y,z |nu)` about the coordinate origin, when provided.
    pub dipole_integrals: Option<[Array2<f64>; 3]>,
    pub e_nuc: f64,
}

impl MoleculeBundle {
    pub fn n_ao(&self) -> usize {
        self.shells.iter().map(GaussianShell::n_ao).sum()
    }

    pub fn n_mo(&self) -> usize {
        self.mo_coeff.ncols()
    }

    /// Electron count: sum of nuclear charges minus the net charge.
    pub fn n_electrons(&self) -> usize {
        let z_sum: i64 = self.atoms.iter().map(|a| a.z as i64).sum();
        (z_sum - self.charge as i64) as usize
    }

    /// Owning atom of each AO, in AO order (shells expand in file order,
    /// p shells as x, y, z).
    pub fn ao_to_atom(&self) -> Vec<usize> {
        let mut map = Vec::with_capacity(self.n_ao());
        for shell in &self.shells {
            for _ in 0..shell.n_ao() {
                map.push(shell.atom);
            }
        }
        map
    }

    /// Human-readable AO labels such as `H2 1s`, `C1 2px` (atom symbol +
    /// 1-based atom index, then an aufbau-style subshell name).
    pub fn ao_labels(&self) -> Vec<String> {
        let mut seen: Vec<[usize; 2]> = vec![[0, 0]; self.atoms.len()];
        let mut labels = Vec::with_capacity(self.n_ao());
        for shell in &self.shells {
            let l = shell.l as usize;
            seen[shell.atom][l] += 1;
            let n = seen[shell.atom][l] + l; // 1s, 2s, ... / 2p, 3p, ...
            let atom = &self.atoms[shell.atom];
            match shell.l {
                0 => labels.push(format!("{}{} {}s", atom.symbol, shell.atom + 1, n)),
                1 => {
                    for ax in ["px", "py", "pz"] {
                        labels.push(format!("{}{} {}{}", atom.symbol, shell.atom + 1, n, ax));
                    }
                }
                _ => unreachable!(),
            }
        }
        labels
    }

    /// Check every structural invariant; called by [`parse_bundle`] and
    /// before serialization.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_ao();
        if self.atoms.is_empty() {
            return Err(Error::validation("atoms_nonempty", "bundle has no atoms"));
        }
        if self.shells.is_empty() {
            return Err(Error::validation("shells_nonempty", "bundle has no basis shells"));
        }
        for (i, shell) in self.shells.iter().enumerate() {
            if shell.l > 1 {
                return Err(Error::Unsupported(format!(
                    "basis shell {} has l = {}; only s and p shells are supported",
                    i, shell.l
                )));
            }
            if shell.atom >= self.atoms.len() {
                return Err(Error::validation(
                    "shell_atom_index",
                    format!("shell {} references atom {} of {}", i, shell.atom, self.atoms.len()),
                ));
            }
            if shell.exponents.is_empty() || shell.exponents.len() != shell.coefficients.len() {
                return Err(Error::validation(
                    "shell_contraction",
                    format!(
                        "shell {}: {} exponents vs {} coefficients",
                        i,
                        shell.exponents.len(),
                        shell.coefficients.len()
                    ),
                ));
            }
            if shell.exponents.iter().any(|&a| !(a > 0.0)) {
                return Err(Error::validation(
                    "shell_exponents_positive",
                    format!("shell {} has a non-positive exponent", i),
                ));
            }
        }
        let z_sum: i64 = self.atoms.iter().map(|a| a.z as i64).sum();
        if (z_sum - self.charge as i64) < 0 {
            return Err(Error::validation(
                "electron_count",
                format!("charge {} exceeds total nuclear charge {}", self.charge, z_sum),
            ));
        }
        check_square("overlap", &self.overlap, n)?;
        check_square("core_h", &self.core_h, n)?;
        check_symmetric("overlap_symmetric", &self.overlap)?;
        check_symmetric("core_h_symmetric", &self.core_h)?;
        if self.eri.n_orb() != n {
            return Err(Error::Dimension(format!(
                "eri is over {} orbitals, bundle has {} AOs",
                self.eri.n_orb(),
                n
            )));
        }
        spd_check(&self.overlap)?;
        if self.mo_coeff.nrows() != 0 || self.mo_coeff.ncols() != 0 {
            if self.mo_coeff.nrows() != n || self.mo_coeff.ncols() > n {
                return Err(Error::Dimension(format!(
                    "mo_coeff is {} x {}, expected {} x (<= {})",
                    self.mo_coeff.nrows(),
                    self.mo_coeff.ncols(),
                    n,
                    n
                )));
            }
            let gram = self.mo_coeff.t().dot(&self.overlap).dot(&self.mo_coeff);
            let mut dev = 0.0f64;
            for i in 0..gram.nrows() {
                for j in 0..gram.ncols() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    dev = dev.max((gram[[i, j]] - want).abs());
                }
            }
            if dev > 1e-6 {
                return Err(Error::validation(
                    "mo_orthonormality",
                    format!("max |C^T S C - I| = {dev:.3e}"),
                ));
            }
        }
        if let Some(e) = &self.mo_energies {
            if e.len() != self.mo_coeff.ncols() {
                return Err(Error::Dimension(format!(
                    "{} mo_energies for {} MO columns",
                    e.len(),
                    self.mo_coeff.ncols()
                )));
            }
        }
        if let Some(d) = &self.dipole_integrals {
            for (ax, m) in ["dipole_x", "dipole_y", "dipole_z"].iter().zip(d.iter()) {
                check_square(ax, m, n)?;
            }
        }
        Ok(())
    }
}

fn check_square(name: &str, m: &Array2<f64>, n: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Dimension(format!(
            "{name} is {} x {}, expected {n} x {n}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn check_symmetric(invariant: &'static str, m: &Array2<f64>) -> Result<()> {
    let mut dev = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..i {
            dev = dev.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    if dev > 1e-8 {
        return Err(Error::validation(invariant, format!("max asymmetry {dev:.3e}")));
    }
    Ok(())
}

/// Overlap must be symmetric positive definite for any orthogonalization to
/// exist; checked via its eigenvalue floor.
fn spd_check(s: &Array2<f64>) -> Result<()> {
    use ndarray_linalg::{Eigh, UPLO};
    let (eigs, _) = s
        .eigh(UPLO::Lower)
        .map_err(|e| Error::validation("overlap_positive_definite", format!("eigh failed: {e}")))?;
    let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 1e-10) {
        return Err(Error::validation(
            "overlap_positive_definite",
            format!("smallest overlap eigenvalue {min:.3e}"),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// TOML schema (DTO layer)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BundleFile {
    format_version: u32,
    charge: i32,
    e_nuc: f64,
    atoms: Vec<Atom>,
    basis_shells: Vec<GaussianShell>,
    overlap: Vec<Vec<f64>>,
    core_h: Vec<Vec<f64>>,
    eri: Vec<f64>,
    mo_coeff: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mo_energies: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dipole_x: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dipole_y: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dipole_z: Option<Vec<Vec<f64>>>,
}

fn rows_to_array2(name: &str, rows: &[Vec<f64>]) -> Result<Array2<f64>> {
    if rows.is_empty() {
        return Ok(Array2::zeros((0, 0)));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::parse(name, "ragged rows in matrix"));
    }
    let flat: Vec<f64> = rows.iter().flatten().cloned().collect();
    Array2::from_shape_vec((rows.len(), ncols), flat)
        .map_err(|e| Error::parse(name, e.to_string()))
}

fn array2_to_rows(m: &Array2<f64>) -> Vec<Vec<f64>> {
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

impl MoleculeBundle {
    fn from_file_struct(f: BundleFile) -> Result<Self> {
        if f.format_version != BUNDLE_FORMAT_VERSION {
            return Err(Error::Unsupported(format!(
                "bundle format_version {} (this build reads version {})",
                f.format_version, BUNDLE_FORMAT_VERSION
            )));
        }
        let n: usize = f.atoms.len(); // placeholder; real AO count below
        let _ = n;
        let shells = f.basis_shells;
        let n_ao: usize = shells.iter().map(GaussianShell::n_ao).sum();
        let dipole_integrals = match (f.dipole_x, f.dipole_y, f.dipole_z) {
            (Some(x), Some(y), Some(z)) => Some([
                rows_to_array2("dipole_x", &x)?,
                rows_to_array2("dipole_y", &y)?,
                rows_to_array2("dipole_z", &z)?,
            ]),
            (None, None, None) => None,
            _ => {
                return Err(Error::parse(
                    "dipole integrals",
                    "dipole_x/dipole_y/dipole_z must be given together",
                ))
            }
        };
        let bundle = MoleculeBundle {
            atoms: f.atoms,
            charge: f.charge,
            shells,
            overlap: rows_to_array2("overlap", &f.overlap)?,
            core_h: rows_to_array2("core_h", &f.core_h)?,
            eri: EriTensor::from_flat(n_ao, f.eri)?,
            mo_coeff: rows_to_array2("mo_coeff", &f.mo_coeff)?,
            mo_energies: f.mo_energies.map(Array1::from_vec),
            dipole_integrals,
            e_nuc: f.e_nuc,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    fn to_file_struct(&self) -> BundleFile {
        let d = self.dipole_integrals.as_ref();
        BundleFile {
            format_version: BUNDLE_FORMAT_VERSION,
            charge: self.charge,
            e_nuc: self.e_nuc,
            atoms: self.atoms.clone(),
            basis_shells: self.shells.clone(),
            overlap: array2_to_rows(&self.overlap),
            core_h: array2_to_rows(&self.core_h),
            eri: self.eri.flat().to_vec(),
            mo_coeff: array2_to_rows(&self.mo_coeff),
            mo_energies: self.mo_energies.as_ref().map(|e| e.to_vec()),
            dipole_x: d.map(|m| array2_to_rows(&m[0])),
            dipole_y: d.map(|m| array2_to_rows(&m[1])),
            dipole_z: d.map(|m| array2_to_rows(&m[2])),
        }
    }
}

/// Parse and fully validate a bundle document.
pub fn parse_bundle_str(text: &str) -> Result<MoleculeBundle> {
    let file: BundleFile =
        toml::from_str(text).map_err(|e| Error::parse("bundle", e.to_string()))?;
    MoleculeBundle::from_file_struct(file)
}

/// Parse and fully validate a bundle file.
pub fn parse_bundle(path: impl AsRef<std::path::Path>) -> Result<MoleculeBundle> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_bundle_str(&text).map_err(|e| match e {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{} ({})", context, path.display()),
            message,
        },
        other => other,
    })
}

/// Serialize a bundle to its TOML document form.
pub fn serialize_bundle_str(bundle: &MoleculeBundle) -> Result<String> {
    bundle.validate()?;
    toml::to_string(&bundle.to_file_struct())
        .map_err(|e| Error::parse("bundle", format!("serialization failed: {e}")))
}

/// Serialize a bundle to a file.
pub fn serialize_bundle(bundle: &MoleculeBundle, path: impl AsRef<std::path::Path>) -> Result<()> {
    std::fs::write(path, serialize_bundle_str(bundle)?)?;
    Ok(())
}
