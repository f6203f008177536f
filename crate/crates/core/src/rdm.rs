//! One-particle reduced density matrices: measurement from a statevector,
//! merging an active block into the Hartree–Fock RDM, and the MO→AO
//! transformation.
//!
//! All spatial RDMs here are spin-summed: `D_pq = Σ_σ ⟨a†_{pσ} a_{qσ}⟩`,
//! so a closed-shell HF determinant gives `diag(2, …, 2, 0, …, 0)` and the
//! trace equals the electron count.

use ndarray::Array2;
use ndarray_linalg::Eigh;

use crate::fermion::{rdm1_observable, spin_orbital_index};
use crate::simulator::Statevector;
use crate::{Error, Result};

/// Basis the RDM is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdmBasis {
    /// Spatial molecular orbitals (orthonormal): trace = electrons,
    /// eigenvalues in [0, 2].
    MoSpatial,
    /// Atomic orbitals (non-orthogonal): only symmetry is meaningful.
    Ao,
}

impl RdmBasis {
    fn label(self) -> &'static str {
        match self {
            RdmBasis::MoSpatial => "mo-spatial",
            RdmBasis::Ao => "ao",
        }
    }
}

/// A real symmetric 1-RDM tagged with its basis and, for active-space
/// blocks, the position of the block inside the full MO space.
#[derive(Debug, Clone)]
pub struct Rdm1 {
    pub matrix: Array2<f64>,
    pub basis: RdmBasis,
    /// Full-MO-space index of this matrix's first row/column (0 for
    /// full-space and AO matrices).
    pub offset: usize,
}

impl Rdm1 {
    pub fn new(matrix: Array2<f64>, basis: RdmBasis, offset: usize) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension(format!(
                "1-RDM must be square, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let rdm = Rdm1 { matrix, basis, offset };
        rdm.validate(None)?;
        Ok(rdm)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().sum()
    }

    /// Symmetry always; in the MO-spatial basis also the occupation-number
    /// eigenvalue range [−1e-8, 2+1e-8] and, when given, the expected trace
    /// (within 1e-8).
    pub fn validate(&self, expected_trace: Option<f64>) -> Result<()> {
        let n = self.dim();
        for p in 0..n {
            for q in (p + 1)..n {
                let asym = (self.matrix[[p, q]] - self.matrix[[q, p]]).abs();
                if asym >= 1e-10 {
                    return Err(Error::validation(
                        "rdm_symmetric",
                        format!("element ({p},{q}) asymmetry {asym:.3e}"),
                    ));
                }
            }
        }
        if self.basis == RdmBasis::MoSpatial && n > 0 {
            let (eigs, _) = self
                .matrix
                .eigh(ndarray_linalg::UPLO::Lower)
                .map_err(|e| Error::Linalg(format!("1-RDM eigendecomposition failed: {e}")))?;
            for &lambda in eigs.iter() {
                if !(-1e-8..=2.0 + 1e-8).contains(&lambda) {
                    return Err(Error::validation(
                        "rdm_occupation_range",
                        format!("occupation eigenvalue {lambda:.3e} outside [0, 2]"),
                    ));
                }
            }
            if let Some(want) = expected_trace {
                let err = (self.trace() - want).abs();
                if err >= 1e-8 {
                    return Err(Error::validation(
                        "rdm_trace",
                        format!("trace {} differs from {want} by {err:.3e}", self.trace()),
                    ));
                }
            }
        }
        Ok(())
    }

    /// One-line header (`<basis> <dimension> <offset>`) followed by the
    /// matrix rows in full precision.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.basis.label(), self.dim(), self.offset);
        for p in 0..self.dim() {
            let row: Vec<String> =
                (0..self.dim()).map(|q| format!("{:+.16e}", self.matrix[[p, q]])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("1-rdm text", "empty input"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::parse("1-rdm text", format!(
                "1-RDM header must be `<basis> <dim> <offset>`, got {header:?}"
            )));
        }
        let basis = match tokens[0] {
            "mo-spatial" => RdmBasis::MoSpatial,
            "ao" => RdmBasis::Ao,
            other => return Err(Error::parse("1-rdm text", format!("unknown 1-RDM basis {other:?}"))),
        };
        let dim: usize = tokens[1]
            .parse()
            .map_err(|_| Error::parse("1-rdm text", format!("bad 1-RDM dimension {:?}", tokens[1])))?;
        let offset: usize = tokens[2]
            .parse()
            .map_err(|_| Error::parse("1-rdm text", format!("bad 1-RDM offset {:?}", tokens[2])))?;
        let mut matrix = Array2::zeros((dim, dim));
        for p in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse("1-rdm text", format!("1-RDM text ends before row {p}")))?;
            let values: Vec<&str> = line.split_whitespace().collect();
            if values.len() != dim {
                return Err(Error::parse("1-rdm text", format!(
                    "1-RDM row {p} has {} values, expected {dim}",
                    values.len()
                )));
            }
            for (q, v) in values.iter().enumerate() {
                matrix[[p, q]] = v
                    .parse()
                    .map_err(|_| Error::parse("1-rdm text", format!("bad 1-RDM value {v:?} in row {p}")))?;
            }
        }
        Rdm1::new(matrix, basis, offset)
    }
}

/// Measure the spin-summed spatial 1-RDM of a state over `n_spatial_active`
/// orbitals. Only the upper triangle is measured (the observables are
/// Hermitian-symmetrized); the lower triangle is filled by symmetry.
pub fn measure_rdm1(state: &Statevector, n_spatial_active: usize) -> Result<Rdm1> {
    if state.n_qubits() != 2 * n_spatial_active {
        return Err(Error::Dimension(format!(
            "state has {} qubits but {} spatial orbitals need {}",
            state.n_qubits(),
            n_spatial_active,
            2 * n_spatial_active
        )));
    }
    let n_qubits = state.n_qubits();
    let mut matrix = Array2::zeros((n_spatial_active, n_spatial_active));
    for p in 0..n_spatial_active {
        for q in p..n_spatial_active {
            let mut value = 0.0;
            for sigma in 0..2 {
                let obs = rdm1_observable(
                    spin_orbital_index(p, sigma),
                    spin_orbital_index(q, sigma),
                    n_qubits,
                )?;
                value += state.expectation(&obs)?;
            }
            matrix[[p, q]] = value;
            matrix[[q, p]] = value;
        }
    }
    Rdm1::new(matrix, RdmBasis::MoSpatial, 0)
}

/// Embed an active-space 1-RDM into the full-MO-space HF RDM: elements with
/// both indices active come from `active_rdm`; all others (frozen diagonal,
/// frozen–active cross blocks) keep their HF values.
pub fn merge_with_hf(active_rdm: &Rdm1, hf_rdm_mo: &Rdm1, active: &[usize]) -> Result<Rdm1> {
    if active_rdm.basis != RdmBasis::MoSpatial || hf_rdm_mo.basis != RdmBasis::MoSpatial {
        return Err(Error::validation("rdm_basis", "merge operates on MO-spatial RDMs"));
    }
    if active_rdm.dim() != active.len() {
        return Err(Error::Dimension(format!(
            "active RDM is {}×{} but {} active orbitals were given",
            active_rdm.dim(),
            active_rdm.dim(),
            active.len()
        )));
    }
    let n_mo = hf_rdm_mo.dim();
    for (i, &a) in active.iter().enumerate() {
        if a >= n_mo {
            return Err(Error::Dimension(format!(
                "active orbital {a} out of range for {n_mo} molecular orbitals"
            )));
        }
        if active[..i].contains(&a) {
            return Err(Error::validation(
                "active_space_distinct",
                format!("active orbital {a} listed twice"),
            ));
        }
    }
    let mut matrix = hf_rdm_mo.matrix.clone();
    for (i, &a) in active.iter().enumerate() {
        for (j, &b) in active.iter().enumerate() {
            matrix[[a, b]] = active_rdm.matrix[[i, j]];
        }
    }
    Rdm1::new(matrix, RdmBasis::MoSpatial, 0)
}

/// Transform an MO-spatial 1-RDM to the AO basis: `γ = C D Cᵀ` with `C` the
/// AO×MO coefficient matrix.
pub fn mo_to_ao(rdm_mo: &Rdm1, c: &Array2<f64>) -> Result<Rdm1> {
    if rdm_mo.basis != RdmBasis::MoSpatial {
        return Err(Error::validation("rdm_basis", "mo_to_ao needs an MO-spatial RDM"));
    }
    if c.ncols() != rdm_mo.dim() {
        return Err(Error::Dimension(format!(
            "coefficient matrix has {} MO columns but the RDM is {}×{}",
            c.ncols(),
            rdm_mo.dim(),
            rdm_mo.dim()
        )));
    }
    let gamma = c.dot(&rdm_mo.matrix).dot(&c.t());
    // exact symmetrization: C D Cᵀ is symmetric up to rounding
    let gamma = (&gamma + &gamma.t()) * 0.5;
    Rdm1::new(gamma, RdmBasis::Ao, 0)
}
