//! Two-phase variational optimizer.
//!
//! Phase 1 is plain gradient descent on the energy. When the energy change
//! between consecutive iterations falls below `e_tol` but the 1-RDM is still
//! moving (Δ_RDM ≥ `rdm_tol`), the optimizer enters Phase 2 and descends the
//! weighted cost 𝓛 = w_E·E + w_RDM·Δ_RDM, where Δ_RDM is the RMSD between
//! the current 1-RDM and the previous accepted iterate's 1-RDM (held
//! constant while differentiating). Phase 2 rejects any trial step whose
//! energy exceeds E_limit = E_phase1 + e_limit_offset and terminates after
//! `n_r` consecutive rejections.

use ndarray::Array2;

use crate::ansatz::AnsatzCircuit;
use crate::fermion::{rdm1_observable, spin_orbital_index, PauliSum};
use crate::rdm::{Rdm1, RdmBasis};
use crate::simulator::Statevector;
use crate::{Error, Result};

/// Keeps √ differentiable when consecutive 1-RDMs coincide.
const RMSD_REGULARIZATION: f64 = 1e-24;

/// How gradients of the objective are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientMode {
    /// Central finite differences of the full objective.
    FiniteDifference,
    /// Exact shift rules for the energy term (four-term rule for
    /// Givens-generated gates, two-term for Pauli rotations); the Δ_RDM term
    /// still uses central differences.
    ParameterShiftEnergy,
}

/// Which optimization the run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Phase 1 only: plain energy minimization to `e_tol` or the iteration
    /// cap (the traditional baseline).
    EnergyOnly,
    /// Phase 1 followed, if the 1-RDM has not settled, by Phase 2 on the
    /// weighted cost.
    TwoPhase,
}

/// Why the run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Energy and 1-RDM thresholds both met.
    Converged,
    /// Iteration cap reached.
    MaxIterations,
    /// `n_r` consecutive Phase-2 rejections.
    RejectionLimit,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max-iterations",
            Termination::RejectionLimit => "rejection-limit",
        })
    }
}

/// Optimizer settings. Defaults follow the reference protocol: both
/// tolerances 1e-6, unit weights, learning rate 0.4, 10-rejection limit,
/// energy guard offset 1e-4.
#[derive(Debug, Clone)]
pub struct VqeConfig {
    pub w_e: f64,
    pub w_rdm: f64,
    pub e_tol: f64,
    pub rdm_tol: f64,
    /// Consecutive Phase-2 rejections before giving up.
    pub n_r: usize,
    /// E_limit = final Phase-1 energy + this offset.
    pub e_limit_offset: f64,
    pub learning_rate: f64,
    pub max_iter_phase1: usize,
    pub max_iter_phase2: usize,
    pub gradient_mode: GradientMode,
    /// Central-difference half-step.
    pub fd_step: f64,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            w_e: 1.0,
            w_rdm: 1.0,
            e_tol: 1e-6,
            rdm_tol: 1e-6,
            n_r: 10,
            e_limit_offset: 1e-4,
            learning_rate: 0.4,
            max_iter_phase1: 5000,
            max_iter_phase2: 5000,
            gradient_mode: GradientMode::FiniteDifference,
            fd_step: 1e-4,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_tol > 0.0) || !(self.rdm_tol > 0.0) {
            return Err(Error::validation("vqe_config", "tolerances must be positive"));
        }
        if self.w_e < 0.0 || self.w_rdm < 0.0 {
            return Err(Error::validation("vqe_config", "weights must be nonnegative"));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::validation("vqe_config", "learning rate must be positive"));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::validation("vqe_config", "fd_step must be positive"));
        }
        if !(self.e_limit_offset > 0.0) {
            return Err(Error::validation("vqe_config", "e_limit_offset must be positive"));
        }
        Ok(())
    }
}

/// One optimizer iteration. `iteration` counts within its phase; iteration 0
/// of Phase 1 is the evaluation at θ₀. `cost` is the objective actually
/// descended in that phase (E in Phase 1, 𝓛 in Phase 2). `rejected` marks a
/// Phase-2 trial that violated the energy guard and was rolled back.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub phase: u8,
    pub iteration: usize,
    pub energy: f64,
    pub delta_rdm: f64,
    pub cost: f64,
    pub rejected: bool,
}

/// Full optimization history plus the final state summary.
#[derive(Debug, Clone)]
pub struct VqeTrace {
    pub records: Vec<TraceRecord>,
    pub theta: Vec<f64>,
    pub phase1_steps: usize,
    pub phase2_steps: usize,
    pub termination: Termination,
    pub final_energy: f64,
    pub final_delta_rdm: f64,
    /// Active-space spatial 1-RDM at the final parameters.
    pub final_rdm: Rdm1,
}

impl VqeTrace {
    /// Line-oriented text: a schema comment, then one record per line
    /// (`phase iter energy delta_rdm cost rejected`).
    pub fn to_text(&self) -> String {
        let mut out = String::from("# phase iter energy delta_rdm cost rejected\n");
        for r in &self.records {
            out.push_str(&format!(
                "{} {} {:+.16e} {:+.16e} {:+.16e} {}\n",
                r.phase, r.iteration, r.energy, r.delta_rdm, r.cost, r.rejected
            ));
        }
        out
    }
}

/// Root-mean-square deviation between two equally sized 1-RDMs:
/// `√((1/N²) Σ_pq (D_pq − D'_pq)²)`.
pub fn rdm_rmsd(current: &Rdm1, previous: &Rdm1) -> Result<f64> {
    if current.dim() != previous.dim() {
        return Err(Error::Dimension(format!(
            "1-RDM dimensions differ: {} vs {}",
            current.dim(),
            previous.dim()
        )));
    }
    Ok(matrix_rmsd(&current.matrix, &previous.matrix))
}

fn matrix_rmsd(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        sum += (x - y) * (x - y);
    }
    (sum / (n * n) as f64).sqrt()
}

/// The regularized form used inside the Phase-2 cost: √(mean + ε) so the
/// gradient exists (and vanishes) where the matrices coincide.
fn matrix_rmsd_regularized(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        sum += (x - y) * (x - y);
    }
    (sum / (n * n) as f64 + RMSD_REGULARIZATION).sqrt()
}

/// The weighted Phase-2 objective: 𝓛 = w_E·E + w_RDM·Δ_RDM.
pub fn cost(energy: f64, delta_rdm: f64, cfg: &VqeConfig) -> f64 {
    cfg.w_e * energy + cfg.w_rdm * delta_rdm
}

/// Central-difference gradient of an arbitrary objective.
pub fn fd_gradient<F>(mut f: F, theta: &[f64], fd_step: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(fd_step > 0.0) {
        return Err(Error::validation("fd_step", "finite-difference step must be positive"));
    }
    let mut grad = Vec::with_capacity(theta.len());
    let mut probe = theta.to_vec();
    for i in 0..theta.len() {
        probe[i] = theta[i] + fd_step;
        let plus = f(&probe)?;
        probe[i] = theta[i] - fd_step;
        let minus = f(&probe)?;
        probe[i] = theta[i];
        grad.push((plus - minus) / (2.0 * fd_step));
    }
    Ok(grad)
}

/// Evaluation engine shared by all objectives in a run: caches the
/// spin-summed 1-RDM observables so each iteration costs one circuit
/// execution plus expectation values.
struct Workspace<'a> {
    ham: &'a PauliSum,
    circuit: &'a AnsatzCircuit,
    n_spatial: usize,
    /// (p, q, Σ_σ rdm1_observable(pσ, qσ)) for p ≤ q.
    rdm_observables: Vec<(usize, usize, PauliSum)>,
}

impl<'a> Workspace<'a> {
    fn new(ham: &'a PauliSum, circuit: &'a AnsatzCircuit) -> Result<Self> {
        if ham.n_qubits() != circuit.n_qubits {
            return Err(Error::Dimension(format!(
                "Hamiltonian on {} qubits, circuit on {}",
                ham.n_qubits(),
                circuit.n_qubits
            )));
        }
        let n_spatial = circuit.n_qubits / 2;
        let mut rdm_observables = Vec::new();
        for p in 0..n_spatial {
            for q in p..n_spatial {
                let mut obs = PauliSum::zero(circuit.n_qubits);
                for sigma in 0..2 {
                    obs = obs.add(&rdm1_observable(
                        spin_orbital_index(p, sigma),
                        spin_orbital_index(q, sigma),
                        circuit.n_qubits,
                    )?);
                }
                rdm_observables.push((p, q, obs));
            }
        }
        Ok(Workspace { ham, circuit, n_spatial, rdm_observables })
    }

    fn energy_of(&self, state: &Statevector) -> Result<f64> {
        state.expectation(self.ham)
    }

    fn rdm_of(&self, state: &Statevector) -> Result<Array2<f64>> {
        let mut matrix = Array2::zeros((self.n_spatial, self.n_spatial));
        for (p, q, obs) in &self.rdm_observables {
            let value = state.expectation(obs)?;
            matrix[[*p, *q]] = value;
            matrix[[*q, *p]] = value;
        }
        Ok(matrix)
    }

    fn energy(&self, theta: &[f64]) -> Result<f64> {
        self.energy_of(&self.circuit.run(theta)?)
    }

    fn energy_and_rdm(&self, theta: &[f64]) -> Result<(f64, Array2<f64>)> {
        let state = self.circuit.run(theta)?;
        Ok((self.energy_of(&state)?, self.rdm_of(&state)?))
    }

    /// Energy with one gate component's angle shifted — the probe used by
    /// the shift rules.
    fn shifted_energy(
        &self,
        theta: &[f64],
        component: crate::ansatz::GateComponent,
        delta: f64,
    ) -> Result<f64> {
        self.energy_of(&self.circuit.run_with_component_shift(theta, Some((component, delta)))?)
    }
}

/// Exact energy gradient from shift rules.
///
/// Givens-generated gates (single/double excitations, each half of an
/// orbital rotation) have generator eigenvalues {0, ±1/2}, so their energy
/// is a trigonometric polynomial with frequencies {1/2, 1} and needs the
/// four-term rule
/// `dE/dθ = c₊[E(+π/2) − E(−π/2)] − c₋[E(+3π/2) − E(−3π/2)]`,
/// `c± = (√2 ± 1)/(4√2)`. Pauli rotations (generator eigenvalues ±1/2) use
/// the plain two-term rule. Orbital rotations apply the product rule over
/// their two internal Givens components.
pub fn parameter_shift_energy_gradient(
    ham: &PauliSum,
    circuit: &AnsatzCircuit,
    theta: &[f64],
) -> Result<Vec<f64>> {
    let ws = Workspace::new(ham, circuit)?;
    shift_energy_gradient(&ws, theta)
}

fn shift_energy_gradient(ws: &Workspace, theta: &[f64]) -> Result<Vec<f64>> {
    use crate::simulator::GateKind;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};
    let c_plus = (SQRT_2 + 1.0) / (4.0 * SQRT_2);
    let c_minus = (SQRT_2 - 1.0) / (4.0 * SQRT_2);
    let mut grad = vec![0.0; theta.len()];
    for (slot, g) in grad.iter_mut().enumerate() {
        for gc in ws.circuit.components_for_param(slot) {
            let two_term = matches!(
                ws.circuit.gates[gc.gate_index].kind,
                GateKind::PauliRotation(_)
            );
            if two_term {
                let plus = ws.shifted_energy(theta, gc, FRAC_PI_2)?;
                let minus = ws.shifted_energy(theta, gc, -FRAC_PI_2)?;
                *g += 0.5 * (plus - minus);
            } else {
                let p1 = ws.shifted_energy(theta, gc, FRAC_PI_2)?;
                let m1 = ws.shifted_energy(theta, gc, -FRAC_PI_2)?;
                let p3 = ws.shifted_energy(theta, gc, 3.0 * FRAC_PI_2)?;
                let m3 = ws.shifted_energy(theta, gc, -3.0 * FRAC_PI_2)?;
                *g += c_plus * (p1 - m1) - c_minus * (p3 - m3);
            }
        }
    }
    Ok(grad)
}

/// Gradient of the Phase-1 objective (the energy) in the configured mode.
fn phase1_gradient(ws: &Workspace, theta: &[f64], cfg: &VqeConfig) -> Result<Vec<f64>> {
    match cfg.gradient_mode {
        GradientMode::FiniteDifference => {
            fd_gradient(|t| ws.energy(t), theta, cfg.fd_step)
        }
        GradientMode::ParameterShiftEnergy => shift_energy_gradient(ws, theta),
    }
}

/// Gradient of the Phase-2 objective 𝓛(θ) = w_E·E(θ) + w_RDM·Δ(θ; D_ref),
/// with the reference RDM `d_ref` (the previous accepted iterate) treated
/// as a constant.
fn phase2_gradient(
    ws: &Workspace,
    theta: &[f64],
    d_ref: &Array2<f64>,
    cfg: &VqeConfig,
) -> Result<Vec<f64>> {
    match cfg.gradient_mode {
        GradientMode::FiniteDifference => fd_gradient(
            |t| {
                let (e, d) = ws.energy_and_rdm(t)?;
                Ok(cfg.w_e * e + cfg.w_rdm * matrix_rmsd_regularized(&d, d_ref))
            },
            theta,
            cfg.fd_step,
        ),
        GradientMode::ParameterShiftEnergy => {
            let mut grad = shift_energy_gradient(ws, theta)?;
            for g in &mut grad {
                *g *= cfg.w_e;
            }
            if cfg.w_rdm != 0.0 {
                let penalty = fd_gradient(
                    |t| {
                        let state = ws.circuit.run(t)?;
                        Ok(matrix_rmsd_regularized(&ws.rdm_of(&state)?, d_ref))
                    },
                    theta,
                    cfg.fd_step,
                )?;
                for (g, p) in grad.iter_mut().zip(&penalty) {
                    *g += cfg.w_rdm * p;
                }
            }
            Ok(grad)
        }
    }
}

fn ensure_finite(value: f64, iteration: usize, theta: &[f64]) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { iteration, theta: theta.to_vec() });
    }
    Ok(())
}

/// Run the optimizer. `theta0` seeds the parameters (all zeros = start at
/// the HF state); the returned trace carries every iteration, the final
/// parameters, and the final active-space 1-RDM.
pub fn run_vqe(
    ham: &PauliSum,
    circuit: &AnsatzCircuit,
    theta0: &[f64],
    cfg: &VqeConfig,
    mode: RunMode,
) -> Result<VqeTrace> {
    cfg.validate()?;
    if theta0.len() != circuit.n_params {
        return Err(Error::Dimension(format!(
            "θ₀ has {} entries, circuit {} expects {}",
            theta0.len(),
            circuit.name,
            circuit.n_params
        )));
    }
    let ws = Workspace::new(ham, circuit)?;
    let mut theta = theta0.to_vec();
    let mut records = Vec::new();

    let (e0, d0) = ws.energy_and_rdm(&theta)?;
    ensure_finite(e0, 0, &theta)?;
    records.push(TraceRecord {
        phase: 1,
        iteration: 0,
        energy: e0,
        delta_rdm: 0.0,
        cost: e0,
        rejected: false,
    });

    let mut e_prev = e0;
    let mut d_prev = d0;
    let mut termination = Termination::MaxIterations;
    let mut enter_phase2 = false;

    // Phase 1: gradient descent on the energy; Δ_RDM monitored only.
    for iteration in 1..=cfg.max_iter_phase1 {
        let grad = phase1_gradient(&ws, &theta, cfg)?;
        for (t, g) in theta.iter_mut().zip(&grad) {
            *t -= cfg.learning_rate * g;
        }
        let (e, d) = ws.energy_and_rdm(&theta)?;
        ensure_finite(e, iteration, &theta)?;
        let delta = matrix_rmsd(&d, &d_prev);
        records.push(TraceRecord {
            phase: 1,
            iteration,
            energy: e,
            delta_rdm: delta,
            cost: e,
            rejected: false,
        });
        let de = (e - e_prev).abs();
        e_prev = e;
        d_prev = d;
        if de < cfg.e_tol {
            match mode {
                RunMode::EnergyOnly => {
                    termination = Termination::Converged;
                    break;
                }
                RunMode::TwoPhase => {
                    if delta < cfg.rdm_tol {
                        termination = Termination::Converged;
                    } else {
                        enter_phase2 = true;
                    }
                    break;
                }
            }
        }
    }

    let phase1_steps = records.len();
    let mut phase2_steps = 0;

    if enter_phase2 {
        // Phase 2: descend 𝓛 with the energy guard and rejection counter.
        let e_limit = e_prev + cfg.e_limit_offset;
        let mut consecutive_rejections = 0;
        termination = Termination::MaxIterations;
        for iteration in 1..=cfg.max_iter_phase2 {
            let grad = phase2_gradient(&ws, &theta, &d_prev, cfg)?;
            let trial: Vec<f64> = theta
                .iter()
                .zip(&grad)
                .map(|(t, g)| t - cfg.learning_rate * g)
                .collect();
            let (e, d) = ws.energy_and_rdm(&trial)?;
            let delta = matrix_rmsd(&d, &d_prev);
            let cost_value = cfg.w_e * e + cfg.w_rdm * matrix_rmsd_regularized(&d, &d_prev);
            ensure_finite(cost_value, iteration, &trial)?;
            if e > e_limit {
                // energy guard violated: roll back and count
                consecutive_rejections += 1;
                phase2_steps += 1;
                records.push(TraceRecord {
                    phase: 2,
                    iteration,
                    energy: e,
                    delta_rdm: delta,
                    cost: cost_value,
                    rejected: true,
                });
                if consecutive_rejections >= cfg.n_r {
                    termination = Termination::RejectionLimit;
                    break;
                }
            } else {
                consecutive_rejections = 0;
                theta = trial;
                phase2_steps += 1;
                records.push(TraceRecord {
                    phase: 2,
                    iteration,
                    energy: e,
                    delta_rdm: delta,
                    cost: cost_value,
                    rejected: false,
                });
                let de = (e - e_prev).abs();
                e_prev = e;
                d_prev = d;
                if de < cfg.e_tol && delta < cfg.rdm_tol {
                    termination = Termination::Converged;
                    break;
                }
            }
        }
    }

    let final_delta_rdm = records.last().map(|r| r.delta_rdm).unwrap_or(0.0);
    let final_rdm = Rdm1::new(d_prev, RdmBasis::MoSpatial, 0)?;
    Ok(VqeTrace {
        records,
        theta,
        phase1_steps,
        phase2_steps,
        termination,
        final_energy: e_prev,
        final_delta_rdm,
        final_rdm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_gatefabric, build_kupccgsd};
    use crate::chemio::Atom;
    use crate::fermion::{build_active_hamiltonian, hamiltonian_to_pauli, PauliString};
    use ndarray::array;
    use num_complex::Complex64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn h2_pauli(r: f64) -> (PauliSum, f64, f64) {
        let atoms = vec![
            Atom { symbol: "H".into(), z: 1, position: [0.0, 0.0, 0.0] },
            Atom { symbol: "H".into(), z: 1, position: [0.0, 0.0, r] },
        ];
        let mut bundle = crate::integrals::build_hydrogen_bundle(&atoms, 0).unwrap();
        let scf = crate::scf::run_rhf_default(&mut bundle).unwrap();
        let ham = build_active_hamiltonian(&bundle, &[0, 1]).unwrap();
        let (e_fci, _) = crate::oracle::fci_ground_state(&ham).unwrap();
        (hamiltonian_to_pauli(&ham).unwrap(), scf.energy, e_fci)
    }

    #[test]
    fn rmsd_examples_take_their_documented_values() {
        let a = Rdm1::new(array![[2.0, 0.0], [0.0, 0.0]], RdmBasis::MoSpatial, 0).unwrap();
        assert_eq!(rdm_rmsd(&a, &a).unwrap(), 0.0, "identical matrices give exactly zero");

        let b = Rdm1::new(array![[1.8, 0.0], [0.0, 0.0]], RdmBasis::MoSpatial, 0).unwrap();
        let d = rdm_rmsd(&a, &b).unwrap();
        assert!((d - 0.1).abs() < 1e-15, "√(0.2²/4) = 0.1, got {d}");

        let c =
            Rdm1::new(Array2::from_diag(&array![2.0, 0.0, 0.0]), RdmBasis::MoSpatial, 0).unwrap();
        assert!(rdm_rmsd(&a, &c).is_err(), "dimension mismatch must error");
    }

    #[test]
    fn cost_is_the_weighted_sum_of_its_terms() {
        let mut cfg = VqeConfig::default();
        assert!((cost(-39.9, 1e-3, &cfg) - (-39.899)).abs() < 1e-12);
        cfg.w_rdm = 0.0;
        assert_eq!(cost(-39.9, 1e-3, &cfg), -39.9, "w_RDM = 0 reduces to the energy");
        cfg.w_rdm = 1.0;
        cfg.w_e = 0.0;
        assert_eq!(cost(-39.9, 1e-3, &cfg), 1e-3, "w_E = 0 leaves only the penalty");
    }

    #[test]
    fn finite_differences_recover_an_analytic_derivative() {
        // f(θ) = (θ − 1)², f'(0) = −2
        let grad = fd_gradient(|t| Ok((t[0] - 1.0).powi(2)), &[0.0], 1e-4).unwrap();
        assert!((grad[0] - (-2.0)).abs() < 1e-6);
        assert!(fd_gradient(|t| Ok(t[0]), &[0.0], 0.0).is_err(), "step must be positive");
    }

    #[test]
    fn zero_phase1_iterations_leave_a_single_hf_record() {
        let (pauli, e_rhf, _) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let cfg = VqeConfig { max_iter_phase1: 0, ..VqeConfig::default() };
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::TwoPhase).unwrap();
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.phase1_steps, 1);
        assert_eq!(trace.phase2_steps, 0);
        assert!((trace.records[0].energy - e_rhf).abs() < 1e-8, "θ₀ = 0 starts at HF");
        assert_eq!(trace.records[0].delta_rdm, 0.0);
        assert_eq!(trace.termination, Termination::MaxIterations);
    }

    #[test]
    fn h2_two_phase_reaches_the_exact_ground_state() {
        let (pauli, e_rhf, e_fci) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let cfg = VqeConfig::default();
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::TwoPhase).unwrap();
        assert_eq!(trace.termination, Termination::Converged);
        assert!(
            (trace.final_energy - e_fci).abs() < 1e-6,
            "E = {} vs FCI {e_fci}",
            trace.final_energy
        );
        // Phase-1 monotone improvement from the HF start
        assert!(trace.final_energy <= e_rhf + 1e-12);
        let phase1_final = trace.records[trace.phase1_steps - 1].energy;
        assert!(phase1_final <= trace.records[0].energy + 1e-12);
        // trace bookkeeping
        assert_eq!(
            trace.phase2_steps,
            trace.records.iter().filter(|r| r.phase == 2).count()
        );
        let first_phase2 = trace.records.iter().position(|r| r.phase == 2);
        if let Some(k) = first_phase2 {
            assert!(trace.records[..k].iter().all(|r| r.phase == 1));
        }
    }

    #[test]
    fn loose_phase1_hands_off_to_phase2_which_settles_the_rdm() {
        let (pauli, _, e_fci) = h2_pauli(1.4);
        let circuit = build_gatefabric(2, 2, 1, false).unwrap();
        let cfg = VqeConfig { e_tol: 1e-3, ..VqeConfig::default() };
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 2], &cfg, RunMode::TwoPhase).unwrap();
        assert!(trace.phase2_steps > 0, "loose e_tol must trigger Phase 2");
        let e_phase1 = trace.records[trace.phase1_steps - 1].energy;
        let e_limit = e_phase1 + cfg.e_limit_offset;
        for r in trace.records.iter().filter(|r| r.phase == 2 && !r.rejected) {
            assert!(r.energy <= e_limit + 1e-15, "accepted step broke the energy guard");
        }
        assert!(trace.final_delta_rdm < 1e-6, "Δ_RDM = {}", trace.final_delta_rdm);
        assert!(
            (trace.final_energy - e_fci).abs() < 1e-6,
            "E = {} vs FCI {e_fci}",
            trace.final_energy
        );
    }

    #[test]
    fn zero_rdm_weight_reproduces_the_energy_only_phase1_exactly() {
        let (pauli, _, _) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let cfg = VqeConfig { w_rdm: 0.0, ..VqeConfig::default() };
        let two_phase =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::TwoPhase).unwrap();
        let energy_only =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::EnergyOnly).unwrap();
        // identical Phase-1 trajectories, bit for bit
        assert_eq!(two_phase.phase1_steps, energy_only.phase1_steps);
        for (a, b) in two_phase.records[..two_phase.phase1_steps]
            .iter()
            .zip(&energy_only.records[..energy_only.phase1_steps])
        {
            assert_eq!(a.energy.to_bits(), b.energy.to_bits());
            assert_eq!(a.delta_rdm.to_bits(), b.delta_rdm.to_bits());
        }
    }

    #[test]
    fn shift_rule_gradients_match_central_differences() {
        let (pauli, _, _) = h2_pauli(1.4);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for circuit in [build_kupccgsd(2, 2, 1).unwrap(), build_gatefabric(2, 2, 2, false).unwrap()]
        {
            let ws = Workspace::new(&pauli, &circuit).unwrap();
            for _ in 0..10 {
                let theta: Vec<f64> =
                    (0..circuit.n_params).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let exact =
                    parameter_shift_energy_gradient(&pauli, &circuit, &theta).unwrap();
                let fd = fd_gradient(|t| ws.energy(t), &theta, 1e-4).unwrap();
                for (slot, (a, b)) in exact.iter().zip(&fd).enumerate() {
                    assert!(
                        (a - b).abs() < 1e-6,
                        "{}: slot {slot} shift {a} vs fd {b}",
                        circuit.name
                    );
                }
            }
        }
    }

    #[test]
    fn shift_rule_handles_pauli_rotation_gates_too() {
        // a hand-built circuit with an exp(−iθ/2·ZZ) layer
        let (pauli, _, _) = h2_pauli(1.4);
        let mut circuit = build_kupccgsd(2, 2, 1).unwrap();
        circuit.gates.push(crate::simulator::Gate {
            kind: crate::simulator::GateKind::PauliRotation(
                PauliString::from_letters(vec![
                    crate::fermion::Pauli::Z,
                    crate::fermion::Pauli::Z,
                    crate::fermion::Pauli::I,
                    crate::fermion::Pauli::I,
                ]),
            ),
            qubits: vec![],
            param: Some(circuit.n_params),
            fixed_angle: 0.0,
        });
        circuit.n_params += 1;
        let ws = Workspace::new(&pauli, &circuit).unwrap();
        let theta = [0.21, -0.34, 0.55, 0.4];
        let exact = parameter_shift_energy_gradient(&pauli, &circuit, &theta).unwrap();
        let fd = fd_gradient(|t| ws.energy(t), &theta, 1e-4).unwrap();
        for (a, b) in exact.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-6, "shift {a} vs fd {b}");
        }
    }

    #[test]
    fn parameter_shift_mode_converges_like_finite_differences() {
        let (pauli, _, e_fci) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let cfg = VqeConfig {
            gradient_mode: GradientMode::ParameterShiftEnergy,
            ..VqeConfig::default()
        };
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::TwoPhase).unwrap();
        assert!((trace.final_energy - e_fci).abs() < 1e-6);
    }

    #[test]
    fn non_finite_objectives_abort_with_the_iteration_and_parameters() {
        let mut huge = PauliSum::zero(2);
        huge.add_term(PauliString::identity(2), Complex64::new(1e308, 0.0));
        huge.add_term(
            PauliString::from_letters(vec![crate::fermion::Pauli::Z, crate::fermion::Pauli::Z]),
            Complex64::new(1e308, 0.0),
        );
        let circuit = build_kupccgsd(1, 0, 1);
        // n_spatial = 1 has no pairs; build a 1-qubit-pair circuit manually
        assert!(circuit.is_ok());
        let circuit = AnsatzCircuit {
            name: "bare".into(),
            gates: vec![],
            n_params: 0,
            n_qubits: 2,
            n_electrons: 0,
        };
        // |00⟩: ⟨I⟩ = ⟨ZZ⟩ = 1 → E = 2e308 overflows
        let err = run_vqe(&huge, &circuit, &[], &VqeConfig::default(), RunMode::EnergyOnly)
            .unwrap_err();
        match err {
            Error::NonFinite { iteration, theta } => {
                assert_eq!(iteration, 0);
                assert!(theta.is_empty());
            }
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn invalid_configurations_are_rejected_before_running() {
        let (pauli, _, _) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        for bad in [
            VqeConfig { e_tol: 0.0, ..VqeConfig::default() },
            VqeConfig { rdm_tol: -1.0, ..VqeConfig::default() },
            VqeConfig { w_e: -0.1, ..VqeConfig::default() },
            VqeConfig { learning_rate: 0.0, ..VqeConfig::default() },
            VqeConfig { fd_step: 0.0, ..VqeConfig::default() },
        ] {
            assert!(run_vqe(&pauli, &circuit, &[0.0; 3], &bad, RunMode::TwoPhase).is_err());
        }
        // wrong θ₀ length
        assert!(run_vqe(&pauli, &circuit, &[0.0; 2], &VqeConfig::default(), RunMode::TwoPhase)
            .is_err());
    }

    #[test]
    fn trace_text_has_the_documented_schema() {
        let (pauli, _, _) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let cfg = VqeConfig { max_iter_phase1: 2, ..VqeConfig::default() };
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 3], &cfg, RunMode::EnergyOnly).unwrap();
        let text = trace.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# phase iter energy delta_rdm cost rejected");
        assert_eq!(lines.len(), trace.records.len() + 1);
        let fields: Vec<&str> = lines[1].split_whitespace().collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[0], "1");
        assert_eq!(fields[1], "0");
        assert_eq!(fields[5], "false");
    }

    #[test]
    fn final_rdm_matches_an_independent_measurement_at_final_theta() {
        let (pauli, _, _) = h2_pauli(1.4);
        let circuit = build_kupccgsd(2, 2, 1).unwrap();
        let trace =
            run_vqe(&pauli, &circuit, &[0.0; 3], &VqeConfig::default(), RunMode::TwoPhase)
                .unwrap();
        let state = circuit.run(&trace.theta).unwrap();
        let measured = crate::rdm::measure_rdm1(&state, 2).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert!(
                    (trace.final_rdm.matrix[[p, q]] - measured.matrix[[p, q]]).abs() < 1e-12
                );
            }
        }
    }
}
