//! Parameterized circuit builders: the k-UpCCGSD ansatz (generalized
//! singles + paired doubles, k layers) and the GateFabric ansatz (brick-wall
//! 4-qubit blocks of double excitation + orbital rotation).
//!
//! Spatial orbital `k` maps to qubits `2k` (α) and `2k+1` (β); both builders
//! emit gates deterministically (layer-major, block/pair ascending) so that
//! a parameter vector indexes the same rotation on every run.

use crate::fermion::spin_orbital_index;
use crate::simulator::{Gate, GateKind, Statevector};
use crate::{Error, Result};

/// An ordered, immutable gate list with parameter-slot metadata.
#[derive(Debug, Clone)]
pub struct AnsatzCircuit {
    pub name: String,
    pub gates: Vec<Gate>,
    pub n_params: usize,
    pub n_qubits: usize,
    pub n_electrons: usize,
}

/// Addresses one shiftable rotation inside a circuit: gate `gate_index`,
/// internal component `component` (0 for every gate kind except
/// `OrbitalRotation`, whose two internal Givens rotations are components
/// 0 and 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateComponent {
    pub gate_index: usize,
    pub component: usize,
}

impl AnsatzCircuit {
    /// The reference state the circuit is applied to.
    pub fn prepare_reference(&self) -> Result<Statevector> {
        Statevector::prepare_hf_state(self.n_qubits, self.n_electrons)
    }

    /// Execute the circuit on the reference state.
    pub fn run(&self, params: &[f64]) -> Result<Statevector> {
        self.run_with_component_shift(params, None)
    }

    /// Execute with one gate component's angle shifted by `delta` — the
    /// primitive behind parameter-shift differentiation. `shift = None`
    /// reproduces [`AnsatzCircuit::run`] exactly.
    pub fn run_with_component_shift(
        &self,
        params: &[f64],
        shift: Option<(GateComponent, f64)>,
    ) -> Result<Statevector> {
        if params.len() != self.n_params {
            return Err(Error::Dimension(format!(
                "circuit {} expects {} parameters, got {}",
                self.name,
                self.n_params,
                params.len()
            )));
        }
        let mut state = self.prepare_reference()?;
        for (i, gate) in self.gates.iter().enumerate() {
            let shift_here = match shift {
                Some((gc, delta)) if gc.gate_index == i => Some((gc.component, delta)),
                _ => None,
            };
            match shift_here {
                None => gate.apply(&mut state, params)?,
                Some((component, delta)) => {
                    let angle = gate.angle(params);
                    match (&gate.kind, component) {
                        (GateKind::OrbitalRotation, 0) => {
                            let q: [usize; 4] = gate.qubits.as_slice().try_into().unwrap();
                            state.apply_orbital_rotation_split(q, angle + delta, angle)?;
                        }
                        (GateKind::OrbitalRotation, 1) => {
                            let q: [usize; 4] = gate.qubits.as_slice().try_into().unwrap();
                            state.apply_orbital_rotation_split(q, angle, angle + delta)?;
                        }
                        (_, 0) => gate.apply_with_angle(&mut state, angle + delta)?,
                        (kind, c) => {
                            return Err(Error::Dimension(format!(
                                "gate kind {kind:?} has no shift component {c}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(state)
    }

    /// The shiftable components of every trainable gate tied to parameter
    /// slot `slot`, in emission order.
    pub fn components_for_param(&self, slot: usize) -> Vec<GateComponent> {
        let mut out = Vec::new();
        for (i, gate) in self.gates.iter().enumerate() {
            if gate.param == Some(slot) {
                let n_components = match gate.kind {
                    GateKind::OrbitalRotation => 2,
                    _ => 1,
                };
                for component in 0..n_components {
                    out.push(GateComponent { gate_index: i, component });
                }
            }
        }
        out
    }

    /// One line per gate: kind, qubits, parameter slot (or the fixed angle).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for gate in &self.gates {
            let kind = match &gate.kind {
                GateKind::PauliRotation(p) => format!("PauliRotation({p})"),
                GateKind::SingleExcitation => "SingleExcitation".to_string(),
                GateKind::DoubleExcitation => "DoubleExcitation".to_string(),
                GateKind::OrbitalRotation => "OrbitalRotation".to_string(),
                GateKind::PauliX => "PauliX".to_string(),
            };
            let qubits: Vec<String> = gate.qubits.iter().map(|q| q.to_string()).collect();
            match gate.param {
                Some(slot) => {
                    out.push_str(&format!("{kind} qubits=[{}] param={slot}\n", qubits.join(",")));
                }
                None => {
                    out.push_str(&format!(
                        "{kind} qubits=[{}] fixed_angle={:.16e}\n",
                        qubits.join(","),
                        gate.fixed_angle
                    ));
                }
            }
        }
        out
    }

    /// Construction invariant: every parameter slot drives at least one gate.
    fn validate_slots(&self) -> Result<()> {
        let mut used = vec![false; self.n_params];
        for gate in &self.gates {
            if let Some(slot) = gate.param {
                if slot >= self.n_params {
                    return Err(Error::Dimension(format!(
                        "gate references parameter slot {slot} but the circuit has only {}",
                        self.n_params
                    )));
                }
                used[slot] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::Dimension(format!("parameter slot {unused} drives no gate")));
        }
        Ok(())
    }
}

/// k-UpCCGSD: `k` layers, each holding one generalized single excitation per
/// spatial pair `p<q` and spin sector (same-spin Givens rotation) followed by
/// one paired double excitation per spatial pair `p<q` moving (pα,pβ)→(qα,qβ).
/// Every layer has its own parameters: `n_params = k·3·C(n_spatial, 2)`.
pub fn build_kupccgsd(n_spatial: usize, n_electrons: usize, k: usize) -> Result<AnsatzCircuit> {
    if k < 1 {
        return Err(Error::validation("layer_count", "k-UpCCGSD needs k ≥ 1"));
    }
    if n_electrons % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "k-UpCCGSD needs a closed-shell reference; got {n_electrons} electrons"
        )));
    }
    let n_qubits = 2 * n_spatial;
    if n_electrons > n_qubits {
        return Err(Error::Dimension(format!(
            "{n_electrons} electrons cannot occupy {n_spatial} spatial orbitals"
        )));
    }
    let mut gates = Vec::new();
    let mut slot = 0;
    for _layer in 0..k {
        // generalized singles: same-spin Givens rotation per pair and spin
        for p in 0..n_spatial {
            for q in (p + 1)..n_spatial {
                for sigma in 0..2 {
                    gates.push(Gate {
                        kind: GateKind::SingleExcitation,
                        qubits: vec![
                            spin_orbital_index(p, sigma),
                            spin_orbital_index(q, sigma),
                        ],
                        param: Some(slot),
                        fixed_angle: 0.0,
                    });
                    slot += 1;
                }
            }
        }
        // paired doubles: (pα, pβ) → (qα, qβ) per pair
        for p in 0..n_spatial {
            for q in (p + 1)..n_spatial {
                gates.push(Gate {
                    kind: GateKind::DoubleExcitation,
                    qubits: vec![
                        spin_orbital_index(p, 0),
                        spin_orbital_index(p, 1),
                        spin_orbital_index(q, 0),
                        spin_orbital_index(q, 1),
                    ],
                    param: Some(slot),
                    fixed_angle: 0.0,
                });
                slot += 1;
            }
        }
    }
    let circuit = AnsatzCircuit {
        name: format!("kupccgsd(k={k})"),
        gates,
        n_params: slot,
        n_qubits,
        n_electrons,
    };
    circuit.validate_slots()?;
    Ok(circuit)
}

/// GateFabric: brick-wall layers of 4-qubit blocks on neighboring spatial
/// orbital pairs. Even layers tile blocks from qubit 0, odd layers from
/// qubit 2 (offset by one spatial orbital). Each block applies an optional
/// fixed Π gate (orbital rotation by π, when `include_pi`), then
/// DoubleExcitation(θ), then OrbitalRotation(φ) — two parameters per block.
pub fn build_gatefabric(
    n_spatial: usize,
    n_electrons: usize,
    n_layers: usize,
    include_pi: bool,
) -> Result<AnsatzCircuit> {
    if n_spatial < 2 {
        return Err(Error::validation(
            "orbital_count",
            "GateFabric needs at least 2 spatial orbitals",
        ));
    }
    if n_layers < 1 {
        return Err(Error::validation("layer_count", "GateFabric needs at least 1 layer"));
    }
    let n_qubits = 2 * n_spatial;
    if n_electrons > n_qubits {
        return Err(Error::Dimension(format!(
            "{n_electrons} electrons cannot occupy {n_spatial} spatial orbitals"
        )));
    }
    let mut gates = Vec::new();
    let mut slot = 0;
    for layer in 0..n_layers {
        let mut start = (layer % 2) * 2;
        while start + 3 < n_qubits {
            let block = [start, start + 1, start + 2, start + 3];
            if include_pi {
                gates.push(Gate {
                    kind: GateKind::OrbitalRotation,
                    qubits: block.to_vec(),
                    param: None,
                    fixed_angle: std::f64::consts::PI,
                });
            }
            gates.push(Gate {
                kind: GateKind::DoubleExcitation,
                qubits: block.to_vec(),
                param: Some(slot),
                fixed_angle: 0.0,
            });
            slot += 1;
            gates.push(Gate {
                kind: GateKind::OrbitalRotation,
                qubits: block.to_vec(),
                param: Some(slot),
                fixed_angle: 0.0,
            });
            slot += 1;
            start += 4;
        }
    }
    let circuit = AnsatzCircuit {
        name: format!("gatefabric(layers={n_layers})"),
        gates,
        n_params: slot,
        n_qubits,
        n_electrons,
    };
    circuit.validate_slots()?;
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{number_operator, Pauli, PauliString, PauliSum};
    use num_complex::Complex64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn binomial2(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    fn random_params(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen_range(-0.8..0.8)).collect()
    }

    /// ⟨Σ_{p∈sector} (1−Z_p)/2⟩ = electron count in one spin sector.
    fn sector_occupation(state: &Statevector, sigma: usize) -> f64 {
        let n = state.n_qubits();
        let mut obs = PauliSum::zero(n);
        for k in 0..n / 2 {
            let q = spin_orbital_index(k, sigma);
            obs.add_term(PauliString::identity(n), Complex64::new(0.5, 0.0));
            obs.add_term(PauliString::single(n, q, Pauli::Z), Complex64::new(-0.5, 0.0));
        }
        state.expectation(&obs).unwrap()
    }

    #[test]
    fn kupccgsd_parameter_counts_match_the_layer_formula() {
        // n_params = k · 3 · C(n, 2), verified by enumeration
        for n_spatial in 2..=5 {
            for k in 1..=3 {
                let c = build_kupccgsd(n_spatial, 2, k).unwrap();
                assert_eq!(c.n_params, k * 3 * binomial2(n_spatial));
                assert_eq!(c.gates.len(), c.n_params);
            }
        }
        // documented cases
        assert_eq!(build_kupccgsd(2, 2, 1).unwrap().n_params, 3);
        assert_eq!(build_kupccgsd(4, 4, 1).unwrap().n_params, 18);
    }

    #[test]
    fn gatefabric_brick_pattern_counts_blocks_correctly() {
        // 2 spatial orbitals, 1 layer → 1 block → 2 params
        assert_eq!(build_gatefabric(2, 2, 1, false).unwrap().n_params, 2);
        // 4 spatial orbitals, 2 layers → 2 blocks then 1 block → 6 params
        let c = build_gatefabric(4, 4, 2, false).unwrap();
        assert_eq!(c.n_params, 6);
        let doubles: Vec<Vec<usize>> = c
            .gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::DoubleExcitation))
            .map(|g| g.qubits.clone())
            .collect();
        assert_eq!(doubles, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![2, 3, 4, 5]]);
        // 3 and 5 spatial orbitals: odd-width registers still tile correctly
        assert_eq!(build_gatefabric(3, 2, 1, false).unwrap().n_params, 2);
        assert_eq!(build_gatefabric(3, 2, 2, false).unwrap().n_params, 4);
        assert_eq!(build_gatefabric(5, 4, 2, false).unwrap().n_params, 2 * (2 + 2));
    }

    #[test]
    fn zero_parameters_reproduce_the_reference_bit_exactly() {
        for circuit in [
            build_kupccgsd(3, 2, 2).unwrap(),
            build_gatefabric(3, 2, 2, false).unwrap(),
            build_gatefabric(2, 2, 1, true).unwrap(), // Π = orbital rotation by π... see below
        ] {
            let state = circuit.run(&vec![0.0; circuit.n_params]).unwrap();
            let reference = circuit.prepare_reference().unwrap();
            if circuit.name.contains("gatefabric") && circuit.gates.iter().any(|g| g.param.is_none())
            {
                // the fixed Π block is not the identity; only check norm here
                assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
            } else {
                for (a, b) in state.amplitudes().iter().zip(reference.amplitudes()) {
                    assert_eq!(a, b, "θ=0 must reproduce the reference exactly");
                }
            }
        }
    }

    #[test]
    fn particle_number_and_spin_projection_are_conserved() {
        for (circuit, seed) in [
            (build_kupccgsd(3, 4, 2).unwrap(), 5u64),
            (build_gatefabric(4, 4, 3, false).unwrap(), 6),
            (build_gatefabric(3, 2, 2, true).unwrap(), 7),
        ] {
            let params = random_params(circuit.n_params, seed);
            let state = circuit.run(&params).unwrap();
            let n = state.expectation(&number_operator(circuit.n_qubits)).unwrap();
            assert!(
                (n - circuit.n_electrons as f64).abs() < 1e-10,
                "{}: ⟨N̂⟩ = {n}",
                circuit.name
            );
            let n_alpha = sector_occupation(&state, 0);
            let n_beta = sector_occupation(&state, 1);
            let want = circuit.n_electrons as f64 / 2.0;
            assert!((n_alpha - want).abs() < 1e-10, "{}: ⟨N̂_α⟩ = {n_alpha}", circuit.name);
            assert!((n_beta - want).abs() < 1e-10, "{}: ⟨N̂_β⟩ = {n_beta}", circuit.name);
        }
    }

    #[test]
    fn layers_use_distinct_parameter_slots() {
        let c = build_kupccgsd(3, 2, 2).unwrap();
        let per_layer = 3 * binomial2(3);
        let first_layer: Vec<usize> =
            c.gates[..per_layer].iter().map(|g| g.param.unwrap()).collect();
        let second_layer: Vec<usize> =
            c.gates[per_layer..].iter().map(|g| g.param.unwrap()).collect();
        assert_eq!(first_layer, (0..per_layer).collect::<Vec<_>>());
        assert_eq!(second_layer, (per_layer..2 * per_layer).collect::<Vec<_>>());
    }

    #[test]
    fn singles_precede_doubles_with_alpha_beta_interleaving() {
        let c = build_kupccgsd(3, 2, 1).unwrap();
        let kinds: Vec<&str> = c
            .gates
            .iter()
            .map(|g| match g.kind {
                GateKind::SingleExcitation => "S",
                GateKind::DoubleExcitation => "D",
                _ => "?",
            })
            .collect();
        assert_eq!(kinds, vec!["S", "S", "S", "S", "S", "S", "D", "D", "D"]);
        // pair (0,1): α on qubits (0,2), β on (1,3); then pair (0,2), (1,2)
        assert_eq!(c.gates[0].qubits, vec![0, 2]);
        assert_eq!(c.gates[1].qubits, vec![1, 3]);
        assert_eq!(c.gates[2].qubits, vec![0, 4]);
        assert_eq!(c.gates[3].qubits, vec![1, 5]);
        // paired double on (0,1): spin orbitals [0,1,2,3]
        assert_eq!(c.gates[6].qubits, vec![0, 1, 2, 3]);
    }

    #[test]
    fn component_shift_zero_matches_plain_execution() {
        let c = build_gatefabric(3, 2, 2, false).unwrap();
        let params = random_params(c.n_params, 42);
        let plain = c.run(&params).unwrap();
        // shifting any component by 0 is a no-op
        for slot in 0..c.n_params {
            for gc in c.components_for_param(slot) {
                let shifted = c.run_with_component_shift(&params, Some((gc, 0.0))).unwrap();
                for (a, b) in shifted.amplitudes().iter().zip(plain.amplitudes()) {
                    assert!((a - b).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn component_shifts_cover_both_orbital_rotation_halves() {
        let c = build_gatefabric(2, 2, 1, false).unwrap();
        // gate 0 = DoubleExcitation (1 component), gate 1 = OrbitalRotation (2)
        assert_eq!(
            c.components_for_param(0),
            vec![GateComponent { gate_index: 0, component: 0 }]
        );
        assert_eq!(
            c.components_for_param(1),
            vec![
                GateComponent { gate_index: 1, component: 0 },
                GateComponent { gate_index: 1, component: 1 }
            ]
        );
        // shifting the two halves by the same delta equals shifting the parameter
        let delta = 0.2;
        let mut both = vec![0.3, 0.7 + delta];
        let full = c.run(&both).unwrap();
        both[1] = 0.7;
        let mut state = c.prepare_reference().unwrap();
        c.gates[0].apply(&mut state, &both).unwrap();
        state
            .apply_orbital_rotation_split([0, 1, 2, 3], 0.7 + delta, 0.7 + delta)
            .unwrap();
        for (a, b) in state.amplitudes().iter().zip(full.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn wrong_parameter_count_is_rejected() {
        let c = build_kupccgsd(2, 2, 1).unwrap();
        assert!(c.run(&[0.0, 0.0]).is_err());
        assert!(c.run(&[0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn invalid_builder_arguments_are_rejected() {
        assert!(build_kupccgsd(2, 3, 1).is_err(), "odd electron count");
        assert!(build_kupccgsd(2, 2, 0).is_err(), "k = 0");
        assert!(build_kupccgsd(2, 6, 1).is_err(), "too many electrons");
        assert!(build_gatefabric(1, 2, 1, false).is_err(), "single orbital");
        assert!(build_gatefabric(4, 2, 0, false).is_err(), "zero layers");
    }

    #[test]
    fn circuit_dump_lists_one_gate_per_line() {
        let c = build_gatefabric(2, 2, 1, true).unwrap();
        let dump = c.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("OrbitalRotation qubits=[0,1,2,3] fixed_angle="));
        assert_eq!(lines[1], "DoubleExcitation qubits=[0,1,2,3] param=0");
        assert_eq!(lines[2], "OrbitalRotation qubits=[0,1,2,3] param=1");
    }

    #[test]
    fn pi_blocks_keep_the_particle_sectors_intact() {
        let c = build_gatefabric(2, 2, 1, true).unwrap();
        assert_eq!(c.n_params, 2, "Π gate is fixed, not trainable");
        let state = c.run(&[0.0, 0.0]).unwrap();
        let n = state.expectation(&number_operator(4)).unwrap();
        assert!((n - 2.0).abs() < 1e-12);
    }
}
