//! Quantum teleportation of a 1-qubit state over a shared Bell pair, and
//! the no-cloning theorem as an executable check on quantum machines.
//!
//! Teleportation register layout: qubit 0 carries the unknown state φ,
//! qubits 1 and 2 hold the Bell pair β00 (qubit 1 is Alice's half, qubit 2
//! is Bob's). Alice measures qubits 0 and 1; Bob corrects qubit 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{Gate, GateJson};
use crate::linalg::{ComplexMatrix, Tolerance};
use crate::measurement::{post_meas0, post_meas1, prob0, prob1};
use crate::state::{bell, QuantumState, StateJson};

/// One of the four measurement branches of the protocol.
#[derive(Debug, Clone)]
pub struct TeleportOutcome {
    pub m1: u8,
    pub m2: u8,
    /// Joint probability of Alice observing (m1, m2); always 1/4.
    pub probability: f64,
    /// The 3-qubit state after Bob's correction, |m1 m2⟩ ⊗ bob_state.
    pub combined_state: QuantumState,
    /// Bob's qubit, equal to φ up to global phase.
    pub bob_state: QuantumState,
}

/// Alice's encoding: tensor φ with the Bell pair, cNOT with φ as control,
/// then Hadamard on φ.
pub fn alice_encode(phi: &QuantumState) -> Result<QuantumState> {
    require_one_qubit(phi)?;
    let combined = phi.tensor(&bell(0, 0));
    let after_cnot = Gate::cnot().tensor(&Gate::identity(1)).apply(&combined)?;
    Gate::hadamard().tensor(&Gate::identity(2)).apply(&after_cnot)
}

/// Measure qubit 0 then qubit 1 of the encoded state and keep the branch
/// (m1, m2); returns the joint branch probability and the post-measurement
/// 3-qubit state. Only the lowest bit of m1/m2 is used.
pub fn alice_out(
    phi: &QuantumState,
    m1: u8,
    m2: u8,
    tol: Tolerance,
) -> Result<(f64, QuantumState)> {
    let encoded = alice_encode(phi)?;
    let (p1, after_first) = branch(&encoded, 0, m1 & 1, tol)?;
    let (p2, after_second) = branch(&after_first, 1, m2 & 1, tol)?;
    Ok((p1 * p2, after_second))
}

fn branch(state: &QuantumState, qubit: usize, bit: u8, tol: Tolerance) -> Result<(f64, QuantumState)> {
    if bit == 0 {
        Ok((prob0(state, qubit)?, post_meas0(state, qubit, tol)?))
    } else {
        Ok((prob1(state, qubit)?, post_meas1(state, qubit, tol)?))
    }
}

/// Bob's correction on qubit 2, keyed by Alice's two bits:
/// identity for 00, X for 01, Z for 10, and X followed by Z for 11.
pub fn bob_decode(post: &QuantumState, m1: u8, m2: u8) -> Result<QuantumState> {
    if post.n_qubits() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            actual: post.n_qubits(),
        });
    }
    let correction = match (m1 & 1, m2 & 1) {
        (0, 0) => Gate::identity(1),
        (0, 1) => Gate::pauli_x(),
        (1, 0) => Gate::pauli_z(),
        _ => Gate::pauli_z().compose(&Gate::pauli_x())?,
    };
    Gate::identity(2).tensor(&correction).apply(post)
}

/// Run the full protocol for every branch. Each combined state factors as
/// |m1 m2⟩ ⊗ bob_state with bob_state equal to φ up to phase.
pub fn teleport(phi: &QuantumState, tol: Tolerance) -> Result<Vec<TeleportOutcome>> {
    require_one_qubit(phi)?;
    let mut outcomes = Vec::with_capacity(4);
    for m1 in 0..2u8 {
        for m2 in 0..2u8 {
            let (probability, post) = alice_out(phi, m1, m2, tol)?;
            let combined_state = bob_decode(&post, m1, m2)?;
            let bob_state = extract_bob_qubit(&combined_state, m1, m2);
            outcomes.push(TeleportOutcome {
                m1,
                m2,
                probability,
                combined_state,
                bob_state,
            });
        }
    }
    Ok(outcomes)
}

/// Pull Bob's qubit out of |m1 m2⟩ ⊗ bob. The measurement projections
/// leave exact zeros outside the (m1, m2) block, so this is a reshape,
/// not an approximation.
fn extract_bob_qubit(combined: &QuantumState, m1: u8, m2: u8) -> QuantumState {
    let base = ((m1 & 1) as usize) * 4 + ((m2 & 1) as usize) * 2;
    let mut residual = 0.0f64;
    for j in 0..8 {
        if j != base && j != base + 1 {
            residual += combined.amplitude(j).norm_sqr();
        }
    }
    assert!(
        residual < 1e-18,
        "teleport combined state leaks outside its measurement branch: {residual:e}"
    );
    let vector = ComplexMatrix::from_parts(
        2,
        1,
        vec![combined.amplitude(base), combined.amplitude(base + 1)],
    );
    QuantumState::from_normalized_parts(1, vector)
}

fn require_one_qubit(phi: &QuantumState) -> Result<()> {
    if phi.n_qubits() != 1 {
        return Err(Error::WrongArity {
            expected: 1,
            actual: phi.n_qubits(),
        });
    }
    Ok(())
}

/// A device that might copy n-qubit states: a fixed ancilla of n qubits
/// and a unitary on the 2n-qubit joint register.
#[derive(Debug, Clone)]
pub struct QuantumMachine {
    n: usize,
    ancilla: QuantumState,
    unitary: Gate,
}

/// JSON interchange form of a machine.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MachineJson {
    pub n: usize,
    pub ancilla: StateJson,
    pub unitary: GateJson,
}

impl MachineJson {
    pub fn into_machine(self, tol: Tolerance) -> Result<QuantumMachine> {
        QuantumMachine::new(
            self.n,
            self.ancilla.into_state(tol)?,
            self.unitary.into_gate(tol)?,
        )
    }
}

impl From<QuantumMachine> for MachineJson {
    fn from(m: QuantumMachine) -> Self {
        MachineJson {
            n: m.n,
            ancilla: m.ancilla.into(),
            unitary: m.unitary.into(),
        }
    }
}

impl QuantumMachine {
    pub fn new(n: usize, ancilla: QuantumState, unitary: Gate) -> Result<Self> {
        if ancilla.n_qubits() != n {
            return Err(Error::WrongArity {
                expected: n,
                actual: ancilla.n_qubits(),
            });
        }
        if unitary.n_qubits() != 2 * n {
            return Err(Error::WrongArity {
                expected: 2 * n,
                actual: unitary.n_qubits(),
            });
        }
        Ok(Self {
            n,
            ancilla,
            unitary,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ancilla(&self) -> &QuantumState {
        &self.ancilla
    }

    pub fn unitary(&self) -> &Gate {
        &self.unitary
    }
}

/// Distance between what the machine produces on v ⊗ ancilla and a true
/// copy v ⊗ v.
pub fn cloning_residual(machine: &QuantumMachine, v: &QuantumState) -> Result<f64> {
    if v.n_qubits() != machine.n {
        return Err(Error::WrongArity {
            expected: machine.n,
            actual: v.n_qubits(),
        });
    }
    let input = v.vector().kronecker(machine.ancilla.vector());
    let produced = machine.unitary.matrix().matmul(&input)?;
    let copy = v.vector().kronecker(v.vector());
    Ok(produced.sub(&copy)?.norm())
}

/// Whether the machine copies v exactly (up to tolerance).
pub fn is_cloner_for(machine: &QuantumMachine, v: &QuantumState, tol: Tolerance) -> Result<bool> {
    Ok(cloning_residual(machine, v)? < tol.eps())
}

/// Check the no-cloning dichotomy for a machine that copies both v and w;
/// returns the overlap |⟨v|w⟩|, which the theorem forces to 0 or 1.
/// Errors if either cloning precondition fails.
pub fn no_cloning_check(
    machine: &QuantumMachine,
    v: &QuantumState,
    w: &QuantumState,
    tol: Tolerance,
) -> Result<f64> {
    let rv = cloning_residual(machine, v)?;
    if rv >= tol.eps() {
        return Err(Error::NotACloner {
            which: "first",
            residual: rv,
        });
    }
    let rw = cloning_residual(machine, w)?;
    if rw >= tol.eps() {
        return Err(Error::NotACloner {
            which: "second",
            residual: rw,
        });
    }
    Ok(v.vector().inner_prod(w.vector())?.norm())
}

/// The machine that copies every computational basis state: ancilla
/// |0...0⟩ and the bitwise-XOR permutation |x⟩|y⟩ ↦ |x⟩|y ⊕ x⟩.
/// For n = 1 the unitary is exactly cNOT.
pub fn basis_cloner(n: usize) -> QuantumMachine {
    assert!(n >= 1, "a machine needs at least one qubit");
    let half = 1usize << n;
    let dim = half * half;
    let zero = crate::linalg::Complex64::new(0.0, 0.0);
    let one = crate::linalg::Complex64::new(1.0, 0.0);
    let mut entries = vec![zero; dim * dim];
    for from in 0..dim {
        let x = from / half;
        let y = from % half;
        let to = x * half + (y ^ x);
        entries[to * dim + from] = one;
    }
    let unitary = Gate::from_permutation_parts(2 * n, ComplexMatrix::from_parts(dim, dim, entries));
    let ancilla = QuantumState::basis(n, 0).expect("|0...0> exists for n >= 1");
    QuantumMachine::new(n, ancilla, unitary).expect("shapes match by construction")
}
