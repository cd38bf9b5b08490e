//! n-qubit quantum states as normalized column vectors of dimension 2^n,
//! ket/bra constructors, the Bell states and the 2-qubit entanglement test.
//!
//! Bit ordering: qubit 0 is the leftmost (most significant) bit of a basis
//! label, so the basis state |xy⟩ sits at index 2x + y. This matches the
//! tensor-product order |x⟩ ⊗ |y⟩.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Tolerance};

/// Normalized state of an n-qubit system.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "StateJson")]
pub struct QuantumState {
    n_qubits: usize,
    vector: ComplexMatrix,
}

/// JSON interchange form:
/// `{"n_qubits": n, "amplitudes": [[re, im], ...]}` in basis-label order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub n_qubits: usize,
    pub amplitudes: Vec<(f64, f64)>,
}

impl From<QuantumState> for StateJson {
    fn from(s: QuantumState) -> Self {
        StateJson {
            n_qubits: s.n_qubits,
            amplitudes: s.vector.entries().iter().map(|c| (c.re, c.im)).collect(),
        }
    }
}

impl StateJson {
    /// Validate against the stated tolerance and build the state.
    pub fn into_state(self, tol: Tolerance) -> Result<QuantumState> {
        let vector = ComplexMatrix::column(
            self.amplitudes
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )?;
        QuantumState::new(self.n_qubits, vector, tol)
    }
}

impl<'de> Deserialize<'de> for QuantumState {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = StateJson::deserialize(deserializer)?;
        raw.into_state(Tolerance::default())
            .map_err(serde::de::Error::custom)
    }
}

/// Dimension 2^n of an n-qubit register; n must be positive and below the
/// shift width.
pub(crate) fn register_dim(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 {
        return Err(Error::WrongArity {
            expected: 1,
            actual: 0,
        });
    }
    if n_qubits >= usize::BITS as usize {
        return Err(Error::TooManyQubits { n_qubits });
    }
    Ok(1usize << n_qubits)
}

impl QuantumState {
    /// Validating constructor: `v` must be a single column of dimension
    /// exactly 2^n with norm 1 within the tolerance. The zero vector is
    /// not a quantum state and is rejected here.
    pub fn new(n_qubits: usize, vector: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let dim = register_dim(n_qubits)?;
        if !vector.is_column() {
            return Err(Error::NotColumn {
                rows: vector.rows(),
                cols: vector.cols(),
            });
        }
        if vector.rows() != dim {
            return Err(Error::WrongDimension {
                expected: dim,
                actual: vector.rows(),
            });
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() >= tol.eps() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n_qubits, vector })
    }

    /// For states produced by norm-preserving pipelines on validated inputs.
    pub(crate) fn from_normalized_parts(n_qubits: usize, vector: ComplexMatrix) -> Self {
        debug_assert!(vector.is_column() && vector.rows() == 1 << n_qubits);
        debug_assert!((vector.norm() - 1.0).abs() < 1e-6);
        Self { n_qubits, vector }
    }

    /// Computational basis state |label⟩.
    pub fn ket(label: &BasisLabel) -> QuantumState {
        let dim = 1usize << label.n_qubits();
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[label.index()] = Complex64::new(1.0, 0.0);
        Self::from_normalized_parts(label.n_qubits(), ComplexMatrix::from_parts(dim, 1, amps))
    }

    /// Basis state addressed by index rather than by bit string.
    pub fn basis(n_qubits: usize, index: usize) -> Result<QuantumState> {
        Ok(Self::ket(&BasisLabel::from_index(n_qubits, index)?))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Dimension of the underlying vector, 2^n.
    pub fn dim(&self) -> usize {
        self.vector.rows()
    }

    pub fn vector(&self) -> &ComplexMatrix {
        &self.vector
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.vector.get(index, 0)
    }

    pub fn norm(&self) -> f64 {
        self.vector.norm()
    }

    /// The bra ⟨s|: a 1 x 2^n row with conjugated amplitudes.
    pub fn bra(&self) -> ComplexMatrix {
        self.vector.dagger()
    }

    /// Tensor product of two states; normalization carries over.
    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        QuantumState::from_normalized_parts(
            self.n_qubits + other.n_qubits,
            self.vector.kronecker(&other.vector),
        )
    }

    /// Whether a 2-qubit state is a tensor product of two 1-qubit states:
    /// the 2x2 amplitude matrix must have vanishing determinant
    /// `α00·α11 − α01·α10` within the tolerance.
    pub fn is_product_state_2q(&self, tol: Tolerance) -> Result<bool> {
        self.require_arity(2)?;
        let det = self.amplitude(0) * self.amplitude(3) - self.amplitude(1) * self.amplitude(2);
        Ok(det.norm() < tol.eps())
    }

    /// Negation of [`is_product_state_2q`](Self::is_product_state_2q).
    pub fn is_entangled_2q(&self, tol: Tolerance) -> Result<bool> {
        Ok(!self.is_product_state_2q(tol)?)
    }

    /// Recover 1-qubit factors (u, w) with u ⊗ w equal to this state up to
    /// a global phase. Returns `None` when the state is entangled.
    pub fn factor_2q(&self, tol: Tolerance) -> Result<Option<(QuantumState, QuantumState)>> {
        if !self.is_product_state_2q(tol)? {
            return Ok(None);
        }
        // Amplitude matrix rows are u_i * w; take w from the larger row.
        let rows = [
            [self.amplitude(0), self.amplitude(1)],
            [self.amplitude(2), self.amplitude(3)],
        ];
        let row_norms: Vec<f64> = rows
            .iter()
            .map(|r| (r[0].norm_sqr() + r[1].norm_sqr()).sqrt())
            .collect();
        let lead = if row_norms[0] >= row_norms[1] { 0 } else { 1 };
        let w = [rows[lead][0] / row_norms[lead], rows[lead][1] / row_norms[lead]];
        let u = [
            rows[0][0] * w[0].conj() + rows[0][1] * w[1].conj(),
            rows[1][0] * w[0].conj() + rows[1][1] * w[1].conj(),
        ];
        let u_norm = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
        let u = ComplexMatrix::from_parts(2, 1, vec![u[0] / u_norm, u[1] / u_norm]);
        let w = ComplexMatrix::from_parts(2, 1, vec![w[0], w[1]]);
        Ok(Some((
            QuantumState::from_normalized_parts(1, u),
            QuantumState::from_normalized_parts(1, w),
        )))
    }

    fn require_arity(&self, expected: usize) -> Result<()> {
        if self.n_qubits != expected {
            return Err(Error::WrongArity {
                expected,
                actual: self.n_qubits,
            });
        }
        Ok(())
    }
}

/// Basis label as a bit string, most significant bit first; the label of
/// the k-th basis element is the n-bit binary expansion of k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    n_qubits: usize,
    bits: Vec<u8>,
}

impl BasisLabel {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::WrongArity {
                expected: 1,
                actual: 0,
            });
        }
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit { value: bad });
        }
        Ok(Self {
            n_qubits: bits.len(),
            bits,
        })
    }

    pub fn from_index(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = register_dim(n_qubits)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                n_qubits,
            });
        }
        let bits = (0..n_qubits)
            .map(|i| ((index >> (n_qubits - 1 - i)) & 1) as u8)
            .collect();
        Ok(Self { n_qubits, bits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Index of |bits⟩ in the computational basis.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }
}

/// The four Bell states β_ab; only the lowest bit of each argument is used.
///
/// β00 = (|00⟩+|11⟩)/√2, β01 = (|01⟩+|10⟩)/√2,
/// β10 = (|00⟩−|11⟩)/√2, β11 = (|01⟩−|10⟩)/√2.
pub fn bell(a: u8, b: u8) -> QuantumState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match (a & 1, b & 1) {
        (0, 0) => [s, 0.0, 0.0, s],
        (0, 1) => [0.0, s, s, 0.0],
        (1, 0) => [s, 0.0, 0.0, -s],
        _ => [0.0, s, -s, 0.0],
    };
    let entries = amps.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    QuantumState::from_normalized_parts(2, ComplexMatrix::from_parts(4, 1, entries))
}

/// Squared overlap |⟨a|b⟩|² of two states of equal arity.
pub fn fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.vector().inner_prod(b.vector())?.norm_sqr())
}

/// Whether two states coincide up to a global phase: |⟨a|b⟩| within the
/// tolerance of 1. States of different arity compare unequal.
pub fn states_equal_up_to_phase(a: &QuantumState, b: &QuantumState, tol: Tolerance) -> bool {
    if a.n_qubits() != b.n_qubits() {
        return false;
    }
    match a.vector().inner_prod(b.vector()) {
        Ok(ip) => (ip.norm() - 1.0).abs() < tol.eps(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn random_1q(re0: f64, im0: f64, re1: f64, im1: f64) -> Option<QuantumState> {
        let v = ComplexMatrix::column(vec![c(re0, im0), c(re1, im1)]).unwrap();
        let n = v.norm();
        if n < 1e-3 {
            return None;
        }
        let v = v.scale(c(1.0 / n, 0.0));
        Some(QuantumState::new(1, v, tol()).unwrap())
    }

    #[test]
    fn constructor_accepts_basis_state() {
        let v = ComplexMatrix::column_from_reals(&[1.0, 0.0]).unwrap();
        let s = QuantumState::new(1, v, tol()).unwrap();
        assert_eq!(s.n_qubits(), 1);
        assert_eq!(s.amplitude(0), c(1.0, 0.0));
    }

    #[test]
    fn constructor_rejects_zero_vector() {
        let v = ComplexMatrix::column_from_reals(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            QuantumState::new(1, v, tol()),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn constructor_rejects_wrong_dimension_and_shape() {
        let v = ComplexMatrix::column_from_reals(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            QuantumState::new(2, v, tol()),
            Err(Error::WrongDimension {
                expected: 4,
                actual: 2
            })
        ));
        let row = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            QuantumState::new(1, row, tol()),
            Err(Error::NotColumn { .. })
        ));
        let v = ComplexMatrix::column_from_reals(&[1.0]).unwrap();
        assert!(matches!(
            QuantumState::new(usize::BITS as usize, v, tol()),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn constructor_accepts_bell_amplitudes() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexMatrix::column_from_reals(&[s, 0.0, 0.0, s]).unwrap();
        let state = QuantumState::new(2, v, tol()).unwrap();
        assert_eq!(state, bell(0, 0));
    }

    #[test]
    fn ket_places_the_one_correctly() {
        let label = BasisLabel::new(vec![0, 1]).unwrap();
        let s = QuantumState::ket(&label);
        assert_eq!(s.amplitude(1), c(1.0, 0.0));
        assert_eq!(s.amplitude(0), c(0.0, 0.0));

        let l0 = BasisLabel::new(vec![0]).unwrap();
        assert_eq!(QuantumState::ket(&l0).amplitude(0), c(1.0, 0.0));

        let l7 = BasisLabel::new(vec![1, 1, 1]).unwrap();
        assert_eq!(l7.index(), 7);
        assert_eq!(QuantumState::ket(&l7).amplitude(7), c(1.0, 0.0));
    }

    #[test]
    fn kets_are_orthonormal() {
        for i in 0..8 {
            for j in 0..8 {
                let a = QuantumState::basis(3, i).unwrap();
                let b = QuantumState::basis(3, j).unwrap();
                let ip = a.vector().inner_prod(b.vector()).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expected).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bra_conjugates_amplitudes() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexMatrix::column(vec![c(s, 0.0), c(0.0, s)]).unwrap();
        let state = QuantumState::new(1, v, tol()).unwrap();
        let bra = state.bra();
        assert_eq!((bra.rows(), bra.cols()), (1, 2));
        assert_eq!(bra.get(0, 0), c(s, 0.0));
        assert_eq!(bra.get(0, 1), c(0.0, -s));
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = QuantumState::basis(1, 0).unwrap();
        let one = QuantumState::basis(1, 1).unwrap();
        let s01 = zero.tensor(&one);
        assert_eq!(s01, QuantumState::basis(2, 1).unwrap());
    }

    #[test]
    fn tensor_of_bell_with_zero() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = bell(0, 0).tensor(&QuantumState::basis(1, 0).unwrap());
        assert_eq!(t.n_qubits(), 3);
        let expected = [s, 0.0, 0.0, 0.0, 0.0, 0.0, s, 0.0];
        for (i, &x) in expected.iter().enumerate() {
            assert!((t.amplitude(i) - c(x, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn bell_states_match_their_formulas() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b00 = bell(0, 0);
        assert!((b00.amplitude(0).re - s).abs() < 1e-12);
        assert!((b00.amplitude(3).re - s).abs() < 1e-12);
        let b11 = bell(1, 1);
        assert!((b11.amplitude(1).re - s).abs() < 1e-12);
        assert!((b11.amplitude(2).re + s).abs() < 1e-12);
    }

    #[test]
    fn bell_states_are_pairwise_orthogonal() {
        let all = [bell(0, 0), bell(0, 1), bell(1, 0), bell(1, 1)];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let ip = a.vector().inner_prod(b.vector()).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expected).abs() < 1e-9 && ip.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bell_states_are_entangled_and_products_are_not() {
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(bell(a, b).is_entangled_2q(tol()).unwrap());
        }
        let s01 = QuantumState::basis(2, 1).unwrap();
        assert!(s01.is_product_state_2q(tol()).unwrap());

        // (|00⟩ + |01⟩)/√2 = |0⟩ ⊗ (|0⟩+|1⟩)/√2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexMatrix::column_from_reals(&[s, s, 0.0, 0.0]).unwrap();
        let st = QuantumState::new(2, v, tol()).unwrap();
        assert!(!st.is_entangled_2q(tol()).unwrap());
    }

    #[test]
    fn entanglement_test_requires_two_qubits() {
        let one = QuantumState::basis(1, 0).unwrap();
        assert!(matches!(
            one.is_product_state_2q(tol()),
            Err(Error::WrongArity {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn equal_up_to_phase_accepts_global_phase() {
        let s = bell(0, 0);
        let phased = QuantumState::new(
            2,
            s.vector().scale(Complex64::from_polar(1.0, 1.234)),
            tol(),
        )
        .unwrap();
        assert!(states_equal_up_to_phase(&s, &phased, tol()));
        assert!(!states_equal_up_to_phase(&s, &bell(0, 1), tol()));
    }

    #[test]
    fn json_round_trip() {
        let s = bell(1, 0);
        let text = serde_json::to_string(&s).unwrap();
        let back: QuantumState = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);

        let bad = r#"{"n_qubits": 1, "amplitudes": [[0.0, 0.0], [0.0, 0.0]]}"#;
        assert!(serde_json::from_str::<QuantumState>(bad).is_err());
    }

    proptest! {
        #[test]
        fn dagger_of_vector_equals_bra(
            re0 in -1.0f64..1.0, im0 in -1.0f64..1.0,
            re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
        ) {
            if let Some(s) = random_1q(re0, im0, re1, im1) {
                prop_assert_eq!(s.vector().dagger(), s.bra());
            }
        }

        #[test]
        fn products_of_1q_states_are_product_states(
            a0 in -1.0f64..1.0, a1 in -1.0f64..1.0,
            a2 in -1.0f64..1.0, a3 in -1.0f64..1.0,
            b0 in -1.0f64..1.0, b1 in -1.0f64..1.0,
            b2 in -1.0f64..1.0, b3 in -1.0f64..1.0,
        ) {
            let (u, w) = match (random_1q(a0, a1, a2, a3), random_1q(b0, b1, b2, b3)) {
                (Some(u), Some(w)) => (u, w),
                _ => return Ok(()),
            };
            let s = u.tensor(&w);
            prop_assert!(s.is_product_state_2q(Tolerance::default()).unwrap());

            // The recovered factorization reproduces the state up to phase.
            let (fu, fw) = s.factor_2q(Tolerance::default()).unwrap().unwrap();
            let rebuilt = fu.tensor(&fw);
            prop_assert!(states_equal_up_to_phase(&rebuilt, &s, Tolerance::default()));
            let ip = rebuilt.vector().inner_prod(s.vector()).unwrap();
            let phase = ip / ip.norm();
            let diff = rebuilt.vector().scale(phase).sub(s.vector()).unwrap().norm();
            prop_assert!(diff < 1e-6);
        }

        #[test]
        fn constructed_states_stay_normalized(
            re0 in -1.0f64..1.0, im0 in -1.0f64..1.0,
            re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
        ) {
            if let Some(s) = random_1q(re0, im0, re1, im1) {
                prop_assert!((s.norm() - 1.0).abs() < Tolerance::DEFAULT_EPS);
            }
        }
    }
}
