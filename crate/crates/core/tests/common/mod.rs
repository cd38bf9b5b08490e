//! Shared helpers for the integration suites: seeded randomness and an
//! independent Gram-Schmidt construction of random unitaries. Nothing in
//! here reuses the library's unitarity or orthogonalization logic.

use qdirac_core::linalg::{Complex64, ComplexMatrix, Tolerance};
use qdirac_core::state::QuantumState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols).map(|_| random_complex(rng)).collect();
    ComplexMatrix::new(rows, cols, entries).unwrap()
}

/// Random normalized n-qubit state.
pub fn random_state(rng: &mut ChaCha8Rng, n_qubits: usize) -> QuantumState {
    let dim = 1usize << n_qubits;
    loop {
        let v = ComplexMatrix::column((0..dim).map(|_| random_complex(rng)).collect()).unwrap();
        let norm = v.norm();
        if norm > 1e-3 {
            let v = v.scale(Complex64::new(1.0 / norm, 0.0));
            return QuantumState::new(n_qubits, v, Tolerance::default()).unwrap();
        }
    }
}

/// Random unitary built by Gram-Schmidt orthonormalization of random
/// columns, written out directly on raw vectors.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    loop {
        let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        let mut degenerate = false;
        for _ in 0..dim {
            let mut col: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
            for prev in &columns {
                let overlap: Complex64 = prev
                    .iter()
                    .zip(col.iter())
                    .map(|(p, c)| p.conj() * c)
                    .sum();
                for (c, p) in col.iter_mut().zip(prev.iter()) {
                    *c -= overlap * p;
                }
            }
            let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                degenerate = true;
                break;
            }
            for c in col.iter_mut() {
                *c /= norm;
            }
            columns.push(col);
        }
        if degenerate {
            continue;
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, &value) in col.iter().enumerate() {
                entries[i * dim + j] = value;
            }
        }
        return ComplexMatrix::new(dim, dim, entries).unwrap();
    }
}
