//! Dense statevector simulation: excitation gates, Pauli rotations, and
//! exact Pauli-sum expectation values.
//!
//! **Bit convention** (shared with the fermionic mapping): qubit 0 is the
//! most significant bit of a basis-state index, so `|1100⟩` on four qubits is
//! index 0b1100 = 12 and the bit of qubit `q` in index `i` is
//! `(i >> (n − 1 − q)) & 1`.
//!
//! **Angle convention**: every excitation gate mixes its two basis states by
//! `cos(θ/2)` / `sin(θ/2)`; this is the single place the convention is
//! defined.
//!
//! Expectations are computed exactly (no shot noise), term by term, with one
//! O(2^n) masked pass per Pauli string — no dense operator matrices.

use num_complex::Complex64;

use crate::fermion::{number_operator, Pauli, PauliString, PauliSum};
use crate::{Error, Result};

/// Normalized pure state on `n_qubits`.
#[derive(Debug, Clone)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Index mask selecting qubit `q` (qubit 0 = most significant bit).
#[inline]
fn mask(q: usize, n_qubits: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// Precomputed masked form of one Pauli string:
/// `P|i⟩ = i^{n_Y} · (−1)^{popcount(i & sign_mask)} · |i ⊕ flip_mask⟩`.
struct MaskedString {
    flip_mask: usize,
    sign_mask: usize,
    /// `i^{n_Y}` as a complex prefactor.
    y_prefactor: Complex64,
}

impl MaskedString {
    fn new(string: &PauliString, n_qubits: usize) -> Self {
        let mut flip_mask = 0;
        let mut sign_mask = 0;
        let mut n_y = 0u32;
        for (q, &p) in string.letters().iter().enumerate() {
            match p {
                Pauli::I => {}
                Pauli::X => flip_mask |= mask(q, n_qubits),
                Pauli::Y => {
                    flip_mask |= mask(q, n_qubits);
                    sign_mask |= mask(q, n_qubits);
                    n_y += 1;
                }
                Pauli::Z => sign_mask |= mask(q, n_qubits),
            }
        }
        let y_prefactor = match n_y % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        MaskedString { flip_mask, sign_mask, y_prefactor }
    }

    /// Phase φ(i) with `P|i⟩ = φ(i)·|i ⊕ flip_mask⟩`.
    #[inline]
    fn phase(&self, i: usize) -> Complex64 {
        if (i & self.sign_mask).count_ones() % 2 == 1 {
            -self.y_prefactor
        } else {
            self.y_prefactor
        }
    }
}

impl Statevector {
    /// The computational basis state `|index⟩`.
    pub fn computational_basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Dimension(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::default(); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits, amps })
    }

    /// Wrap a raw amplitude vector (must have length 2^n and unit norm
    /// within 1e-8).
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::Dimension(format!(
                "{} amplitudes cannot represent {n_qubits} qubits",
                amps.len()
            )));
        }
        let state = Statevector { n_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() >= 1e-8 {
            return Err(Error::validation(
                "state_normalized",
                format!("amplitude vector has squared norm {norm}"),
            ));
        }
        Ok(state)
    }

    /// Hartree–Fock reference: the first `n_electrons` qubits (interleaved
    /// spin-orbital order) set to |1⟩.
    pub fn prepare_hf_state(n_qubits: usize, n_electrons: usize) -> Result<Self> {
        if n_electrons > n_qubits {
            return Err(Error::Dimension(format!(
                "{n_electrons} electrons cannot occupy {n_qubits} spin orbitals"
            )));
        }
        let mut index = 0;
        for q in 0..n_electrons {
            index |= mask(q, n_qubits);
        }
        Self::computational_basis(n_qubits, index)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<()> {
        for &q in qubits {
            if q >= self.n_qubits {
                return Err(Error::Dimension(format!(
                    "qubit {q} out of range for {} qubits",
                    self.n_qubits
                )));
            }
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[..i].contains(&q) {
                return Err(Error::Dimension(format!("repeated qubit {q} in gate")));
            }
        }
        Ok(())
    }

    /// `exp(−iθ/2 · P)`: cos(θ/2)·ψ − i·sin(θ/2)·Pψ.
    pub fn apply_pauli_rotation(&mut self, string: &PauliString, theta: f64) -> Result<()> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "rotation string spans {} qubits, state has {}",
                string.n_qubits(),
                self.n_qubits
            )));
        }
        let m = MaskedString::new(string, self.n_qubits);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let minus_i_sin = Complex64::new(0.0, -s);
        if m.flip_mask == 0 {
            // diagonal string: pure phase per amplitude
            for i in 0..self.amps.len() {
                self.amps[i] *= Complex64::new(c, 0.0) + minus_i_sin * m.phase(i);
            }
        } else {
            for i in 0..self.amps.len() {
                let j = i ^ m.flip_mask;
                if i < j {
                    let (ai, aj) = (self.amps[i], self.amps[j]);
                    // (Pψ)[i] = φ(j)·ψ[j] because P|j⟩ = φ(j)|i⟩
                    self.amps[i] = c * ai + minus_i_sin * m.phase(j) * aj;
                    self.amps[j] = c * aj + minus_i_sin * m.phase(i) * ai;
                }
            }
        }
        Ok(())
    }

    /// Two-qubit Givens rotation:
    /// `|01⟩ → cos(θ/2)|01⟩ + sin(θ/2)|10⟩`,
    /// `|10⟩ → cos(θ/2)|10⟩ − sin(θ/2)|01⟩` (on qubits `q1`, `q2`).
    pub fn apply_single_excitation(&mut self, q1: usize, q2: usize, theta: f64) -> Result<()> {
        self.check_qubits(&[q1, q2])?;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let (m1, m2) = (mask(q1, self.n_qubits), mask(q2, self.n_qubits));
        for i in 0..self.amps.len() {
            // enumerate each |01⟩/|10⟩ pair once, from its |01⟩ member
            if i & m1 == 0 && i & m2 != 0 {
                let j = (i | m1) & !m2; // the matching |10⟩ index
                let (a01, a10) = (self.amps[i], self.amps[j]);
                self.amps[i] = c * a01 - s * a10;
                self.amps[j] = s * a01 + c * a10;
            }
        }
        Ok(())
    }

    /// Four-qubit pair rotation:
    /// `|1100⟩ → cos(θ/2)|1100⟩ − sin(θ/2)|0011⟩`,
    /// `|0011⟩ → cos(θ/2)|0011⟩ + sin(θ/2)|1100⟩` (qubit order as given).
    pub fn apply_double_excitation(&mut self, qubits: [usize; 4], theta: f64) -> Result<()> {
        self.check_qubits(&qubits)?;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let upper = mask(qubits[0], self.n_qubits) | mask(qubits[1], self.n_qubits);
        let lower = mask(qubits[2], self.n_qubits) | mask(qubits[3], self.n_qubits);
        for i in 0..self.amps.len() {
            // enumerate from the |1100⟩ member of each pair
            if i & upper == upper && i & lower == 0 {
                let j = (i & !upper) | lower; // the matching |0011⟩ index
                let (a1100, a0011) = (self.amps[i], self.amps[j]);
                self.amps[i] = c * a1100 + s * a0011;
                self.amps[j] = c * a0011 - s * a1100;
            }
        }
        Ok(())
    }

    /// Fermionic swap: exchanges occupations of two adjacent spin orbitals
    /// with the fermionic −1 on |11⟩. Involutory (fswap² = 1).
    pub fn apply_fermionic_swap(&mut self, q1: usize, q2: usize) -> Result<()> {
        self.check_qubits(&[q1, q2])?;
        let (m1, m2) = (mask(q1, self.n_qubits), mask(q2, self.n_qubits));
        for i in 0..self.amps.len() {
            let (b1, b2) = (i & m1 != 0, i & m2 != 0);
            if !b1 && b2 {
                let j = (i | m1) & !m2;
                self.amps.swap(i, j);
            } else if b1 && b2 {
                self.amps[i] = -self.amps[i];
            }
        }
        Ok(())
    }

    /// Spatial-orbital rotation on two spatial orbitals (four spin orbitals
    /// `[a, b, c, d]` = [α₁, β₁, α₂, β₂]): Givens rotations by the same angle
    /// in the two spin sectors, conjugated by an fswap that brings same-spin
    /// orbitals together.
    pub fn apply_orbital_rotation(&mut self, qubits: [usize; 4], phi: f64) -> Result<()> {
        self.apply_orbital_rotation_split(qubits, phi, phi)
    }

    /// [`Statevector::apply_orbital_rotation`] with independently controlled
    /// angles for the two internal Givens rotations — the hook that lets
    /// parameter-shift differentiation shift one rotation at a time.
    pub fn apply_orbital_rotation_split(
        &mut self,
        qubits: [usize; 4],
        phi_ab: f64,
        phi_cd: f64,
    ) -> Result<()> {
        let [a, b, c, d] = qubits;
        self.check_qubits(&qubits)?;
        self.apply_fermionic_swap(b, c)?;
        self.apply_single_excitation(a, b, phi_ab)?;
        self.apply_single_excitation(c, d, phi_cd)?;
        self.apply_fermionic_swap(b, c)?;
        Ok(())
    }

    /// Bit flip on one qubit.
    pub fn apply_pauli_x(&mut self, q: usize) -> Result<()> {
        self.check_qubits(&[q])?;
        let m = mask(q, self.n_qubits);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
        Ok(())
    }

    /// Exact expectation value `Σ_j α_j ⟨ψ|P_j|ψ⟩` of a Hermitian Pauli sum.
    ///
    /// Errors on a non-Hermitian observable (imaginary coefficient part
    /// ≥ 1e-12) and asserts the accumulated imaginary residue is < 1e-10.
    pub fn expectation(&self, obs: &PauliSum) -> Result<f64> {
        if obs.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "observable on {} qubits, state on {}",
                obs.n_qubits(),
                self.n_qubits
            )));
        }
        let mut total = Complex64::default();
        for (string, &coeff) in obs.terms() {
            if coeff.im.abs() >= 1e-12 {
                return Err(Error::validation(
                    "observable_hermitian",
                    format!("term {string} has imaginary coefficient {:+.3e}", coeff.im),
                ));
            }
            let m = MaskedString::new(string, self.n_qubits);
            // ⟨ψ|P|ψ⟩ = Σ_i ψ*[i ⊕ flip] · φ(i) · ψ[i]
            let mut term = Complex64::default();
            for i in 0..self.amps.len() {
                term += self.amps[i ^ m.flip_mask].conj() * m.phase(i) * self.amps[i];
            }
            total += coeff * term;
        }
        if total.im.abs() >= 1e-10 {
            return Err(Error::validation(
                "expectation_real",
                format!("imaginary residue {:+.3e} in an expectation value", total.im),
            ));
        }
        Ok(total.re)
    }

    /// ⟨N̂⟩ — total particle number.
    pub fn particle_number(&self) -> f64 {
        self.expectation(&number_operator(self.n_qubits))
            .expect("number operator is Hermitian")
    }
}

/// Gate kinds understood by the simulator. Excitation gates conserve Hamming
/// weight (particle number); every kind is unitary.
#[derive(Debug, Clone)]
pub enum GateKind {
    /// `exp(−iθ/2 · P)` over the full register.
    PauliRotation(PauliString),
    /// Givens rotation on 2 qubits.
    SingleExcitation,
    /// Pair rotation on 4 qubits.
    DoubleExcitation,
    /// Spatial-orbital rotation on 4 qubits (two Givens + fswap conjugation).
    OrbitalRotation,
    /// Bit flip on 1 qubit (angle ignored).
    PauliX,
}

/// One circuit element: a kind, its target qubits, and either a slot in the
/// parameter vector or a fixed angle.
#[derive(Debug, Clone)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    /// Parameter-vector slot for a trainable angle.
    pub param: Option<usize>,
    /// Angle used when `param` is `None` (e.g. fixed π gates).
    pub fixed_angle: f64,
}

impl Gate {
    /// The angle this gate uses under the given parameter vector.
    pub fn angle(&self, params: &[f64]) -> f64 {
        match self.param {
            Some(slot) => params[slot],
            None => self.fixed_angle,
        }
    }

    /// Apply to a state with an explicitly resolved angle.
    pub fn apply_with_angle(&self, state: &mut Statevector, angle: f64) -> Result<()> {
        match &self.kind {
            GateKind::PauliRotation(p) => state.apply_pauli_rotation(p, angle),
            GateKind::SingleExcitation => {
                let [q1, q2]: [usize; 2] = self
                    .qubits
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Dimension("SingleExcitation needs 2 qubits".into()))?;
                state.apply_single_excitation(q1, q2, angle)
            }
            GateKind::DoubleExcitation => {
                let q: [usize; 4] = self
                    .qubits
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Dimension("DoubleExcitation needs 4 qubits".into()))?;
                state.apply_double_excitation(q, angle)
            }
            GateKind::OrbitalRotation => {
                let q: [usize; 4] = self
                    .qubits
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Dimension("OrbitalRotation needs 4 qubits".into()))?;
                state.apply_orbital_rotation(q, angle)
            }
            GateKind::PauliX => {
                let [q]: [usize; 1] = self
                    .qubits
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Dimension("PauliX needs 1 qubit".into()))?;
                state.apply_pauli_x(q)
            }
        }
    }

    /// Apply to a state, resolving the angle from the parameter vector.
    pub fn apply(&self, state: &mut Statevector, params: &[f64]) -> Result<()> {
        self.apply_with_angle(state, self.angle(params))
    }
}
