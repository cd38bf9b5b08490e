//! Quantum gates: validated unitary matrices of dimension 2^n together
//! with the named single- and two-qubit gates, gate composition,
//! tensoring and application to states.
//!
//! Gates act on whole registers. Applying a gate to a sub-range of qubits
//! is always written as an explicit tensor product with identities, e.g.
//! `hadamard().tensor(&identity(2))` for H on qubit 0 of three.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Tolerance};
use crate::state::QuantumState;

/// Above this dimension, gates built from already-validated parts skip the
/// O(dim³) unitarity re-check; products and tensor products of unitaries
/// are unitary, and the re-check would dominate runtime for wide registers.
const REVALIDATE_DIM_LIMIT: usize = 256;

/// A 2^n x 2^n unitary matrix acting on n qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "GateJson")]
pub struct Gate {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

/// JSON interchange form: the matrix schema plus `"n_qubits"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateJson {
    pub n_qubits: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(f64, f64)>,
}

impl From<Gate> for GateJson {
    fn from(g: Gate) -> Self {
        GateJson {
            n_qubits: g.n_qubits,
            rows: g.matrix.rows(),
            cols: g.matrix.cols(),
            entries: g.matrix.entries().iter().map(|c| (c.re, c.im)).collect(),
        }
    }
}

impl GateJson {
    pub fn into_gate(self, tol: Tolerance) -> Result<Gate> {
        let entries = self
            .entries
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let matrix = ComplexMatrix::new(self.rows, self.cols, entries)?;
        Gate::new(self.n_qubits, matrix, tol)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = GateJson::deserialize(deserializer)?;
        raw.into_gate(Tolerance::default())
            .map_err(serde::de::Error::custom)
    }
}

impl Gate {
    /// Validating constructor: the matrix must be 2^n x 2^n and unitary
    /// within the tolerance.
    pub fn new(n_qubits: usize, matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let dim = crate::state::register_dim(n_qubits)?;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::WrongDimension {
                expected: dim,
                actual: matrix.rows().max(matrix.cols()),
            });
        }
        let deviation = matrix.unitarity_deviation()?;
        if deviation >= tol.eps() {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { n_qubits, matrix })
    }

    /// For gates assembled from validated parts. Re-checks unitarity up to
    /// [`REVALIDATE_DIM_LIMIT`] so float drift fails loudly while wide
    /// registers stay usable.
    fn from_validated_parts(n_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << n_qubits);
        debug_assert_eq!(matrix.cols(), 1 << n_qubits);
        if matrix.rows() <= REVALIDATE_DIM_LIMIT {
            let deviation = matrix
                .unitarity_deviation()
                .expect("internal gate matrix must be square");
            assert!(
                deviation < Tolerance::DEFAULT_EPS,
                "internally constructed gate drifted from unitarity: deviation {deviation:e}"
            );
        }
        Self { n_qubits, matrix }
    }

    /// For internally built 0/1 permutation matrices, unitary by
    /// construction; verifies the permutation structure with an O(dim²)
    /// scan instead of the O(dim³) product check.
    pub(crate) fn from_permutation_parts(n_qubits: usize, matrix: ComplexMatrix) -> Self {
        let dim = matrix.rows();
        assert_eq!(dim, 1 << n_qubits);
        assert_eq!(dim, matrix.cols());
        let mut row_hits = vec![false; dim];
        for col in 0..dim {
            let mut hits = 0usize;
            for (row, hit) in row_hits.iter_mut().enumerate() {
                let e = matrix.get(row, col);
                if e.re == 1.0 && e.im == 0.0 {
                    hits += 1;
                    assert!(!*hit, "permutation matrix repeats row {row}");
                    *hit = true;
                } else {
                    assert!(
                        e.re == 0.0 && e.im == 0.0,
                        "permutation matrix has non 0/1 entry at ({row}, {col})"
                    );
                }
            }
            assert_eq!(hits, 1, "permutation matrix column {col} has {hits} unit entries");
        }
        Self { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Hadamard gate H = (1/√2) [[1, 1], [1, -1]].
    pub fn hadamard() -> Gate {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_validated_parts(1, real_matrix(2, &[s, s, s, -s]))
    }

    /// Controlled-NOT with control on qubit 0 and target on qubit 1:
    /// |xy⟩ ↦ |x, x⊕y⟩.
    pub fn cnot() -> Gate {
        let entries = [
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 0.0,
        ];
        Self::from_validated_parts(2, real_matrix(4, &entries))
    }

    /// Pauli X (bit flip).
    pub fn pauli_x() -> Gate {
        Self::from_validated_parts(1, real_matrix(2, &[0.0, 1.0, 1.0, 0.0]))
    }

    /// Pauli Y.
    pub fn pauli_y() -> Gate {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .expect("static gate entries");
        Self::from_validated_parts(1, matrix)
    }

    /// Pauli Z (phase flip).
    pub fn pauli_z() -> Gate {
        Self::from_validated_parts(1, real_matrix(2, &[1.0, 0.0, 0.0, -1.0]))
    }

    /// Phase gate S = diag(1, i).
    pub fn phase_s() -> Gate {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 1.0),
            ],
        )
        .expect("static gate entries");
        Self::from_validated_parts(1, matrix)
    }

    /// T gate = diag(1, e^{iπ/4}).
    pub fn gate_t() -> Gate {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
        )
        .expect("static gate entries");
        Self::from_validated_parts(1, matrix)
    }

    /// Identity on n qubits.
    pub fn identity(n_qubits: usize) -> Gate {
        assert!(n_qubits >= 1, "identity gate needs at least one qubit");
        Self::from_validated_parts(n_qubits, ComplexMatrix::identity(1 << n_qubits))
    }

    /// Kronecker product of two gates; acts on the concatenated register.
    pub fn tensor(&self, other: &Gate) -> Gate {
        Self::from_validated_parts(
            self.n_qubits + other.n_qubits,
            self.matrix.kronecker(&other.matrix),
        )
    }

    /// Sequential composition: `other` acts first, then `self`
    /// (matrix product `self.matrix * other.matrix`).
    pub fn compose(&self, other: &Gate) -> Result<Gate> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WrongArity {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        let matrix = self.matrix.matmul(&other.matrix)?;
        Ok(Self::from_validated_parts(self.n_qubits, matrix))
    }

    /// Apply the gate to a state of matching arity; the norm is preserved.
    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        if self.n_qubits != state.n_qubits() {
            return Err(Error::WrongArity {
                expected: self.n_qubits,
                actual: state.n_qubits(),
            });
        }
        let vector = self.matrix.matmul(state.vector())?;
        Ok(QuantumState::from_normalized_parts(self.n_qubits, vector))
    }

    /// The inverse gate U†.
    pub fn dagger(&self) -> Gate {
        Self::from_validated_parts(self.n_qubits, self.matrix.dagger())
    }
}

fn real_matrix(n: usize, entries: &[f64]) -> ComplexMatrix {
    ComplexMatrix::new(
        n,
        n,
        entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    )
    .expect("static gate entries")
}
