//! Single-qubit computational-basis measurement: outcome probabilities,
//! post-measurement states, and seeded sampling for demos.
//!
//! All probabilities are computed exactly from amplitudes; sampling exists
//! only for the CLI and takes its seed as an argument, so every function
//! here is pure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Tolerance};
use crate::state::QuantumState;

/// Outcome of measuring one qubit.
///
/// `post_state` is absent when the observed branch has probability at or
/// below tolerance (the zero vector is not a state and is never returned).
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub qubit_index: usize,
    pub bit: u8,
    pub probability: f64,
    pub post_state: Option<QuantumState>,
}

/// True iff `i < n`, `j < 2^n` and bit `i` (most significant first) of the
/// n-bit binary expansion of `j` is 1; total, false out of range.
pub fn select_index(n: usize, i: usize, j: usize) -> bool {
    if n == 0 || i >= n || n >= usize::BITS as usize || j >= (1usize << n) {
        return false;
    }
    (j >> (n - 1 - i)) & 1 == 1
}

/// Probability of outcome 1 when measuring qubit `i`.
pub fn prob1(state: &QuantumState, i: usize) -> Result<f64> {
    check_index(state, i)?;
    let n = state.n_qubits();
    Ok((0..state.dim())
        .filter(|&j| select_index(n, i, j))
        .map(|j| state.amplitude(j).norm_sqr())
        .sum())
}

/// Probability of outcome 0 when measuring qubit `i`.
pub fn prob0(state: &QuantumState, i: usize) -> Result<f64> {
    check_index(state, i)?;
    let n = state.n_qubits();
    Ok((0..state.dim())
        .filter(|&j| !select_index(n, i, j))
        .map(|j| state.amplitude(j).norm_sqr())
        .sum())
}

/// State after qubit `i` was measured and read 0: the bit-1 amplitudes are
/// zeroed and the rest renormalized.
pub fn post_meas0(state: &QuantumState, i: usize, tol: Tolerance) -> Result<QuantumState> {
    let p = prob0(state, i)?;
    collapse(state, i, 0, p, tol)
}

/// State after qubit `i` was measured and read 1.
pub fn post_meas1(state: &QuantumState, i: usize, tol: Tolerance) -> Result<QuantumState> {
    let p = prob1(state, i)?;
    collapse(state, i, 1, p, tol)
}

/// Draw one measurement of qubit `i` with a deterministic seeded generator.
pub fn measure(
    state: &QuantumState,
    i: usize,
    rng_seed: u64,
    tol: Tolerance,
) -> Result<MeasurementOutcome> {
    let p1 = prob1(state, i)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let draw: f64 = rng.gen();
    let bit = u8::from(draw < p1);
    let probability = if bit == 1 { p1 } else { prob0(state, i)? };
    let post_state = if probability > tol.eps() {
        Some(collapse(state, i, bit, probability, tol)?)
    } else {
        None
    };
    Ok(MeasurementOutcome {
        qubit_index: i,
        bit,
        probability,
        post_state,
    })
}

fn collapse(
    state: &QuantumState,
    i: usize,
    bit: u8,
    probability: f64,
    tol: Tolerance,
) -> Result<QuantumState> {
    if probability <= tol.eps() {
        return Err(Error::ZeroProbabilityBranch { probability });
    }
    let n = state.n_qubits();
    let scale = probability.sqrt();
    let amps = (0..state.dim())
        .map(|j| {
            if select_index(n, i, j) == (bit == 1) {
                state.amplitude(j) / scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(QuantumState::from_normalized_parts(
        n,
        ComplexMatrix::from_parts(state.dim(), 1, amps),
    ))
}

fn check_index(state: &QuantumState, i: usize) -> Result<()> {
    if i >= state.n_qubits() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n_qubits: state.n_qubits(),
        });
    }
    Ok(())
}
