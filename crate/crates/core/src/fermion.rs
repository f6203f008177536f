//! Pauli-string algebra, the Jordan–Wigner mapping, and second-quantized
//! Hamiltonian construction with frozen-core folding.
//!
//! Conventions fixed here and relied on everywhere downstream:
//!
//! * **Spin-orbital ordering is interleaved**: the α spin orbital of spatial
//!   orbital `k` sits on qubit `2k`, the β orbital on qubit `2k + 1`. This is
//!   an assumption isolated behind [`spin_orbital_index`]; 1-RDM indexing
//!   depends on it.
//! * **Qubit 0 is the most significant bit** of a basis-state index, matching
//!   the statevector simulator.
//! * **ERI notation**: bundles and [`ActiveSpaceHamiltonian`] store chemists'
//!   `(ps|qr)`; the second-quantized expansion needs physicists' `⟨pq|sr⟩`.
//!   The conversion `⟨pq|sr⟩ = (ps|qr)` happens in exactly one place,
//!   [`hamiltonian_to_pauli`].

use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;

use crate::chemio::{EriTensor, MoleculeBundle};
use crate::{Error, Result};

/// Coefficients with |α| below this are dropped during simplification
/// (double-precision noise floor).
pub const TERM_PRUNE_THRESHOLD: f64 = 1e-14;

/// Single-qubit Pauli letter. The derived `Ord` (I < X < Y < Z) fixes the
/// lexicographic term order used for deterministic merges and text dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Single-qubit product `a·b = i^k · c`; returns `(c, k)` with `k ∈ 0..4`.
fn mul_single(a: Pauli, b: Pauli) -> (Pauli, u8) {
    use Pauli::*;
    match (a, b) {
        (I, p) | (p, I) => (p, 0),
        (X, X) | (Y, Y) | (Z, Z) => (I, 0),
        (X, Y) => (Z, 1),
        (Y, X) => (Z, 3),
        (Y, Z) => (X, 1),
        (Z, Y) => (X, 3),
        (Z, X) => (Y, 1),
        (X, Z) => (Y, 3),
    }
}

/// A phase-free tensor product of Pauli letters, one per qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    /// All-identity string on `n_qubits`.
    pub fn identity(n_qubits: usize) -> Self {
        PauliString(vec![Pauli::I; n_qubits])
    }

    /// Identity string with `letter` at `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, letter: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.0[qubit] = letter;
        s
    }

    pub fn from_letters(letters: Vec<Pauli>) -> Self {
        PauliString(letters)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    /// True when every letter is `I`.
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

/// Product of two Pauli strings with their scalar coefficients:
/// `(α·A)·(β·B) = (αβ·i^k)·C`.
pub fn pauli_mul(
    a: &PauliString,
    ca: Complex64,
    b: &PauliString,
    cb: Complex64,
) -> Result<(PauliString, Complex64)> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::Dimension(format!(
            "pauli product over {} vs {} qubits",
            a.n_qubits(),
            b.n_qubits()
        )));
    }
    let mut letters = Vec::with_capacity(a.n_qubits());
    let mut phase_k: u8 = 0;
    for (&pa, &pb) in a.0.iter().zip(&b.0) {
        let (c, k) = mul_single(pa, pb);
        letters.push(c);
        phase_k = (phase_k + k) % 4;
    }
    let phase = match phase_k {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok((PauliString(letters), ca * cb * phase))
}

/// A linear combination of Pauli strings with complex coefficients, kept in
/// lexicographic term order (deterministic iteration, merges, and dumps).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum { n_qubits, terms: BTreeMap::new() }
    }

    /// `coeff · I`.
    pub fn constant(n_qubits: usize, coeff: Complex64) -> Self {
        let mut s = Self::zero(n_qubits);
        s.add_term(PauliString::identity(n_qubits), coeff);
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic string order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Coefficient of one string (zero when absent).
    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    /// Merge `coeff · string` into the sum, dropping the entry if the result
    /// falls under the pruning threshold.
    pub fn add_term(&mut self, string: PauliString, coeff: Complex64) {
        debug_assert_eq!(string.n_qubits(), self.n_qubits);
        let entry = self.terms.entry(string).or_insert_with(Complex64::default);
        *entry += coeff;
        if entry.norm() < TERM_PRUNE_THRESHOLD {
            // remove the key we just touched; recompute it cheaply
            let dead: Vec<PauliString> = self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() < TERM_PRUNE_THRESHOLD)
                .map(|(s, _)| s.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    /// Sum of two Pauli sums.
    pub fn add(&self, other: &PauliSum) -> PauliSum {
        let mut out = self.clone();
        for (s, &c) in other.terms() {
            out.add_term(s.clone(), c);
        }
        out
    }

    /// Scale every coefficient.
    pub fn scale(&self, factor: Complex64) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (s, &c) in self.terms() {
            out.add_term(s.clone(), c * factor);
        }
        out
    }

    /// Operator product, expanded term by term and simplified.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        let mut out = PauliSum::zero(self.n_qubits);
        for (sa, &ca) in self.terms() {
            for (sb, &cb) in other.terms() {
                let (s, c) = pauli_mul(sa, ca, sb, cb)?;
                out.add_term(s, c);
            }
        }
        Ok(out)
    }

    /// True when every coefficient is real to the pruning threshold —
    /// equivalent to Hermiticity for a sum of Hermitian strings.
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() < TERM_PRUNE_THRESHOLD)
    }

    /// Dense matrix on the full 2^n space, qubit 0 as the most significant
    /// bit. Guarded to 10 qubits (16 MiB of complex entries).
    pub fn dense_matrix(&self) -> Result<Array2<Complex64>> {
        if self.n_qubits > 10 {
            return Err(Error::Unsupported(format!(
                "dense matrix for {} qubits would be too large",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = Array2::zeros((dim, dim));
        for (string, &coeff) in self.terms() {
            for col in 0..dim {
                let (row, phase) = apply_string_to_basis_state(string, col, self.n_qubits);
                m[[row, col]] += coeff * phase;
            }
        }
        Ok(m)
    }

    /// One term per line: `<coeff_re> <coeff_im> <letters>`, lexicographic.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.terms() {
            out.push_str(&format!("{:+.16e} {:+.16e} {}\n", c.re, c.im, s));
        }
        out
    }
}

/// `P|col⟩ = phase · |row⟩` for one basis state; shared by dense-matrix
/// construction here and by the sector-projected exact diagonalizer.
pub fn apply_string_to_basis_state(
    string: &PauliString,
    col: usize,
    n_qubits: usize,
) -> (usize, Complex64) {
    let mut row = col;
    let mut phase = Complex64::new(1.0, 0.0);
    for (q, &p) in string.letters().iter().enumerate() {
        let bit_pos = n_qubits - 1 - q; // qubit 0 = most significant bit
        let bit = (col >> bit_pos) & 1;
        match p {
            Pauli::I => {}
            Pauli::X => row ^= 1 << bit_pos,
            Pauli::Y => {
                row ^= 1 << bit_pos;
                phase *= if bit == 0 {
                    Complex64::new(0.0, 1.0) // Y|0⟩ = i|1⟩
                } else {
                    Complex64::new(0.0, -1.0) // Y|1⟩ = −i|0⟩
                };
            }
            Pauli::Z => {
                if bit == 1 {
                    phase = -phase;
                }
            }
        }
    }
    (row, phase)
}

fn check_qubit(q: usize, n_qubits: usize) -> Result<()> {
    if q >= n_qubits {
        return Err(Error::Dimension(format!(
            "spin-orbital index {q} out of range for {n_qubits} qubits"
        )));
    }
    Ok(())
}

/// Jordan–Wigner annihilation operator
/// `a_q = (∏_{k<q} Z_k) · ½(X_q + i Y_q)` as a two-term Pauli sum.
pub fn jw_annihilation(q: usize, n_qubits: usize) -> Result<PauliSum> {
    check_qubit(q, n_qubits)?;
    let mut x_letters = vec![Pauli::I; n_qubits];
    let mut y_letters = vec![Pauli::I; n_qubits];
    for k in 0..q {
        x_letters[k] = Pauli::Z;
        y_letters[k] = Pauli::Z;
    }
    x_letters[q] = Pauli::X;
    y_letters[q] = Pauli::Y;
    let mut sum = PauliSum::zero(n_qubits);
    sum.add_term(PauliString::from_letters(x_letters), Complex64::new(0.5, 0.0));
    sum.add_term(PauliString::from_letters(y_letters), Complex64::new(0.0, 0.5));
    Ok(sum)
}

/// Jordan–Wigner creation operator `a_q† = (∏_{k<q} Z_k) · ½(X_q − i Y_q)`.
pub fn jw_creation(q: usize, n_qubits: usize) -> Result<PauliSum> {
    check_qubit(q, n_qubits)?;
    let a = jw_annihilation(q, n_qubits)?;
    // adjoint of the 2-term sum = conjugate the coefficients (strings are
    // self-adjoint)
    let mut sum = PauliSum::zero(n_qubits);
    for (s, c) in a.terms() {
        sum.add_term(s.clone(), c.conj());
    }
    Ok(sum)
}

/// Hermitian qubit observable for one 1-RDM element:
/// `½(a_p† a_q + a_q† a_p)`. For `p = q` this simplifies to `(I − Z_p)/2`,
/// the occupation of spin orbital `p`.
pub fn rdm1_observable(p: usize, q: usize, n_qubits: usize) -> Result<PauliSum> {
    let forward = jw_creation(p, n_qubits)?.mul(&jw_annihilation(q, n_qubits)?)?;
    let backward = jw_creation(q, n_qubits)?.mul(&jw_annihilation(p, n_qubits)?)?;
    Ok(forward.add(&backward).scale(Complex64::new(0.5, 0.0)))
}

/// Qubit index of the σ spin orbital of spatial orbital `k` (σ = 0 for α,
/// 1 for β): interleaved ordering, the one documented assumption about
/// spin-orbital layout.
pub fn spin_orbital_index(k: usize, sigma: usize) -> usize {
    2 * k + sigma
}

/// Effective Hamiltonian of an active MO window with everything else folded
/// into a scalar core energy (doubly occupied frozen orbitals) or discarded
/// (virtuals outside the window).
#[derive(Debug, Clone)]
pub struct ActiveSpaceHamiltonian {
    /// Effective one-electron integrals h̃ over active MOs (frozen Coulomb
    /// and exchange folded in), symmetric.
    pub h_eff: Array2<f64>,
    /// Two-electron integrals over active MOs, chemists' `(pq|rs)`.
    pub eri_act: EriTensor,
    /// Nuclear repulsion + frozen-orbital energy (hartree).
    pub e_core: f64,
    pub n_active_orb: usize,
    pub n_active_elec: usize,
    /// Frozen (doubly occupied, folded) MO indices.
    pub frozen: Vec<usize>,
    /// Active MO indices, ascending.
    pub active: Vec<usize>,
}

impl ActiveSpaceHamiltonian {
    /// Number of qubits of the JW-mapped problem.
    pub fn n_qubits(&self) -> usize {
        2 * self.n_active_orb
    }
}

/// Transform the AO integrals of the bundle to the MO basis.
/// Returns `(h_mo, eri_mo)`; the ERI transform runs as four quarter
/// transforms (O(n⁵)).
pub fn mo_integrals(bundle: &MoleculeBundle) -> Result<(Array2<f64>, EriTensor)> {
    let n_ao = bundle.n_ao();
    let n_mo = bundle.n_mo();
    if n_mo == 0 {
        return Err(Error::validation(
            "mo_coefficients_present",
            "bundle has no MO coefficients; run an SCF first",
        ));
    }
    let c = &bundle.mo_coeff;
    let h_mo = c.t().dot(&bundle.core_h).dot(c);

    // quarter transforms over a dense scratch tensor
    let idx = |a: usize, b: usize, cc: usize, d: usize, n: [usize; 4]| {
        ((a * n[1] + b) * n[2] + cc) * n[3] + d
    };
    let mut t1 = vec![0.0; n_mo * n_ao * n_ao * n_ao];
    for p in 0..n_mo {
        for nu in 0..n_ao {
            for la in 0..n_ao {
                for si in 0..n_ao {
                    let mut acc = 0.0;
                    for mu in 0..n_ao {
                        acc += c[[mu, p]] * bundle.eri.get(mu, nu, la, si);
                    }
                    t1[idx(p, nu, la, si, [n_mo, n_ao, n_ao, n_ao])] = acc;
                }
            }
        }
    }
    let mut t2 = vec![0.0; n_mo * n_mo * n_ao * n_ao];
    for p in 0..n_mo {
        for q in 0..n_mo {
            for la in 0..n_ao {
                for si in 0..n_ao {
                    let mut acc = 0.0;
                    for nu in 0..n_ao {
                        acc += c[[nu, q]] * t1[idx(p, nu, la, si, [n_mo, n_ao, n_ao, n_ao])];
                    }
                    t2[idx(p, q, la, si, [n_mo, n_mo, n_ao, n_ao])] = acc;
                }
            }
        }
    }
    let mut t3 = vec![0.0; n_mo * n_mo * n_mo * n_ao];
    for p in 0..n_mo {
        for q in 0..n_mo {
            for r in 0..n_mo {
                for si in 0..n_ao {
                    let mut acc = 0.0;
                    for la in 0..n_ao {
                        acc += c[[la, r]] * t2[idx(p, q, la, si, [n_mo, n_mo, n_ao, n_ao])];
                    }
                    t3[idx(p, q, r, si, [n_mo, n_mo, n_mo, n_ao])] = acc;
                }
            }
        }
    }
    let mut eri_mo = EriTensor::zeros(n_mo);
    let quads: Vec<_> = eri_mo.unique_quadruples().collect();
    for (p, q, r, s) in quads {
        let mut acc = 0.0;
        for si in 0..n_ao {
            acc += c[[si, s]] * t3[idx(p, q, r, si, [n_mo, n_mo, n_mo, n_ao])];
        }
        eri_mo.set(p, q, r, s, acc);
    }
    Ok((h_mo, eri_mo))
}

/// Build the active-space Hamiltonian for the given (distinct, ascending)
/// active MO indices. Occupied MOs outside the window are frozen and folded:
///
/// * `h̃_pq = h_pq + Σ_{i∈frozen} [2(pq|ii) − (pi|iq)]`
/// * `e_core = e_nuc + Σ_{i∈frozen} 2 h_ii + Σ_{i,j∈frozen} [2(ii|jj) − (ij|ji)]`
pub fn build_active_hamiltonian(
    bundle: &MoleculeBundle,
    active: &[usize],
) -> Result<ActiveSpaceHamiltonian> {
    let n_mo = bundle.n_mo();
    let n_elec = bundle.n_electrons();
    if n_elec % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "active-space construction assumes a closed shell; got {n_elec} electrons"
        )));
    }
    if active.is_empty() {
        return Err(Error::validation("active_nonempty", "active MO list is empty"));
    }
    if active.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation(
            "active_sorted_distinct",
            format!("active MO indices must be ascending and distinct: {active:?}"),
        ));
    }
    if let Some(&bad) = active.iter().find(|&&p| p >= n_mo) {
        return Err(Error::Dimension(format!(
            "active MO index {bad} out of range for {n_mo} MOs"
        )));
    }

    let n_occ = n_elec / 2;
    let frozen: Vec<usize> = (0..n_occ).filter(|i| !active.contains(i)).collect();
    let n_active_elec = n_elec - 2 * frozen.len();
    if n_active_elec > 2 * active.len() {
        return Err(Error::validation(
            "active_capacity",
            format!(
                "{} active electrons cannot occupy {} active orbitals",
                n_active_elec,
                active.len()
            ),
        ));
    }

    let (h_mo, eri_mo) = mo_integrals(bundle)?;

    let mut e_core = bundle.e_nuc;
    for &i in &frozen {
        e_core += 2.0 * h_mo[[i, i]];
        for &j in &frozen {
            e_core += 2.0 * eri_mo.get(i, i, j, j) - eri_mo.get(i, j, j, i);
        }
    }

    let n_act = active.len();
    let mut h_eff = Array2::zeros((n_act, n_act));
    for (a, &p) in active.iter().enumerate() {
        for (b, &q) in active.iter().enumerate() {
            let mut v = h_mo[[p, q]];
            for &i in &frozen {
                v += 2.0 * eri_mo.get(p, q, i, i) - eri_mo.get(p, i, i, q);
            }
            h_eff[[a, b]] = v;
        }
    }
    // the MO transform sums in a different order for (p,q) vs (q,p); pin the
    // matrix to exact symmetry so triangle-based serializations round-trip
    for a in 0..n_act {
        for b in 0..a {
            let mean = 0.5 * (h_eff[[a, b]] + h_eff[[b, a]]);
            h_eff[[a, b]] = mean;
            h_eff[[b, a]] = mean;
        }
    }

    let mut eri_act = EriTensor::zeros(n_act);
    let quads: Vec<_> = eri_act.unique_quadruples().collect();
    for (a, b, c2, d) in quads {
        eri_act.set(
            a,
            b,
            c2,
            d,
            eri_mo.get(active[a], active[b], active[c2], active[d]),
        );
    }

    Ok(ActiveSpaceHamiltonian {
        h_eff,
        eri_act,
        e_core,
        n_active_orb: n_act,
        n_active_elec,
        frozen,
        active: active.to_vec(),
    })
}

/// JW-map the active-space Hamiltonian to a qubit observable:
///
/// `H = e_core + Σ_{pq,σ} h̃_pq a†_{pσ} a_{qσ}
///      + ½ Σ_{pqrs,στ} ⟨pq|sr⟩ a†_{pσ} a†_{qτ} a_{rτ} a_{sσ}`
///
/// with `⟨pq|sr⟩ = (ps|qr)` — the one chemists'→physicists' conversion.
pub fn hamiltonian_to_pauli(ham: &ActiveSpaceHamiltonian) -> Result<PauliSum> {
    let n_orb = ham.n_active_orb;
    let n_q = ham.n_qubits();
    let mut total = PauliSum::constant(n_q, Complex64::new(ham.e_core, 0.0));

    // cache the JW ladder operators
    let create: Vec<PauliSum> = (0..n_q).map(|q| jw_creation(q, n_q)).collect::<Result<_>>()?;
    let destroy: Vec<PauliSum> =
        (0..n_q).map(|q| jw_annihilation(q, n_q)).collect::<Result<_>>()?;

    // one-electron part, diagonal in spin
    for p in 0..n_orb {
        for q in 0..n_orb {
            let h = ham.h_eff[[p, q]];
            if h.abs() < TERM_PRUNE_THRESHOLD {
                continue;
            }
            for sigma in 0..2 {
                let term = create[spin_orbital_index(p, sigma)]
                    .mul(&destroy[spin_orbital_index(q, sigma)])?;
                total = total.add(&term.scale(Complex64::new(h, 0.0)));
            }
        }
    }

    // two-electron part: ½ Σ ⟨pq|sr⟩ a†_{pσ} a†_{qτ} a_{rτ} a_{sσ}
    for p in 0..n_orb {
        for q in 0..n_orb {
            for r in 0..n_orb {
                for s in 0..n_orb {
                    let v = ham.eri_act.get(p, s, q, r); // ⟨pq|sr⟩ = (ps|qr)
                    if v.abs() < TERM_PRUNE_THRESHOLD {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (i, j, k, l) = (
                                spin_orbital_index(p, sigma),
                                spin_orbital_index(q, tau),
                                spin_orbital_index(r, tau),
                                spin_orbital_index(s, sigma),
                            );
                            if i == j || k == l {
                                continue; // a†a† or aa on the same spin orbital
                            }
                            let term =
                                create[i].mul(&create[j])?.mul(&destroy[k])?.mul(&destroy[l])?;
                            total = total.add(&term.scale(Complex64::new(0.5 * v, 0.0)));
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Total-number operator `N̂ = Σ_q (I − Z_q)/2` on `n_qubits`.
pub fn number_operator(n_qubits: usize) -> PauliSum {
    let mut sum = PauliSum::constant(n_qubits, Complex64::new(0.5 * n_qubits as f64, 0.0));
    for q in 0..n_qubits {
        sum.add_term(
            PauliString::single(n_qubits, q, Pauli::Z),
            Complex64::new(-0.5, 0.0),
        );
    }
    sum
}
