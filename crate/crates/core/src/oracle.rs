//! Boolean-function oracles U_f and the Deutsch and Deutsch-Jozsa
//! circuits, with deterministic evaluation of their decisive measurement.
//!
//! A function on n inputs is given by its full value table in basis-label
//! order. The oracle is materialized as the (n+1)-qubit permutation gate
//! |x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩ with the target on the last qubit.

use std::fmt;

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::linalg::{Complex64, ComplexMatrix};
use crate::state::QuantumState;

/// Decision margin for the measurement dichotomy: the all-zero probability
/// of a promise-respecting run is 0 or 1 exactly, so anything in between
/// signals a broken promise or an implementation bug.
const DECISION_MARGIN: f64 = 1e-6;

/// A function {0, ..., 2^n - 1} → {0, 1} as an explicit value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n_inputs: usize,
    table: Vec<u8>,
}

impl BooleanFunction {
    /// The table must have length 2^`n_inputs` with entries 0 or 1.
    pub fn new(n_inputs: usize, table: Vec<u8>) -> Result<Self> {
        if n_inputs == 0 {
            return Err(Error::WrongArity {
                expected: 1,
                actual: 0,
            });
        }
        // The oracle acts on n_inputs + 1 qubits, so bound that width here.
        let expected = crate::state::register_dim(n_inputs + 1)? / 2;
        if table.len() != expected {
            return Err(Error::WrongDimension {
                expected,
                actual: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit { value: bad });
        }
        Ok(Self { n_inputs, table })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn value(&self, x: usize) -> u8 {
        self.table[x]
    }
}

/// What a function is promised to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Promise {
    Constant,
    Balanced,
}

/// What a function actually is, by full table scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Constant,
    Balanced,
    Neither,
}

impl fmt::Display for Promise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Promise::Constant => write!(f, "constant"),
            Promise::Balanced => write!(f, "balanced"),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Constant => write!(f, "constant"),
            Classification::Balanced => write!(f, "balanced"),
            Classification::Neither => write!(f, "neither"),
        }
    }
}

impl Classification {
    pub fn matches(self, promise: Promise) -> bool {
        matches!(
            (self, promise),
            (Classification::Constant, Promise::Constant)
                | (Classification::Balanced, Promise::Balanced)
        )
    }
}

/// Classical reference classifier: scans the whole table.
pub fn classify(f: &BooleanFunction) -> Classification {
    let ones = f.table.iter().filter(|&&b| b == 1).count();
    if ones == 0 || ones == f.table.len() {
        Classification::Constant
    } else if 2 * ones == f.table.len() {
        Classification::Balanced
    } else {
        Classification::Neither
    }
}

/// Classical early-exit decision assuming the promise holds, returning the
/// verdict and the number of table entries examined. A constant function
/// forces the worst case of 2^(n-1) + 1 lookups; the quantum circuit uses
/// one oracle application regardless.
pub fn classify_under_promise(f: &BooleanFunction) -> (Promise, usize) {
    let half = f.table.len() / 2;
    let first = f.table[0];
    let mut queries = 1;
    for &entry in &f.table[1..] {
        queries += 1;
        if entry != first {
            return (Promise::Balanced, queries);
        }
        if queries == half + 1 {
            return (Promise::Constant, queries);
        }
    }
    (Promise::Constant, queries)
}

/// The oracle gate U_f on n+1 qubits: |x⟩|y⟩ ↦ |x⟩|y ⊕ f(x)⟩, a 0/1
/// permutation matrix and therefore unitary.
pub fn oracle_gate(f: &BooleanFunction) -> Gate {
    let dim = 1usize << (f.n_inputs + 1);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut entries = vec![zero; dim * dim];
    for from in 0..dim {
        let x = from >> 1;
        let y = from & 1;
        let to = (x << 1) | (y ^ f.value(x) as usize);
        entries[to * dim + from] = one;
    }
    Gate::from_permutation_parts(f.n_inputs + 1, ComplexMatrix::from_parts(dim, dim, entries))
}

/// Deutsch's circuit for a 1-input function: prepare |01⟩, Hadamard both
/// qubits, apply U_f, then Hadamard the first qubit.
pub fn deutsch_algo(f: &BooleanFunction) -> Result<QuantumState> {
    if f.n_inputs != 1 {
        return Err(Error::WrongArity {
            expected: 1,
            actual: f.n_inputs,
        });
    }
    let h = Gate::hadamard();
    let start = QuantumState::basis(2, 1)?;
    let spread = h.tensor(&h).apply(&start)?;
    let queried = oracle_gate(f).apply(&spread)?;
    h.tensor(&Gate::identity(1)).apply(&queried)
}

/// Deterministic first-qubit measurement of Deutsch's circuit; equals
/// f(0) ⊕ f(1).
pub fn deutsch_eval(f: &BooleanFunction) -> Result<u8> {
    let out = deutsch_algo(f)?;
    let p1 = crate::measurement::prob1(&out, 0)?;
    decide_bit(p1)
}

/// The Deutsch-Jozsa circuit on n+1 qubits. The promise is a precondition:
/// feeding a table that does not classify as promised is an error.
pub fn jozsa_algo(f: &BooleanFunction, promise: Promise) -> Result<QuantumState> {
    let actual = classify(f);
    if !actual.matches(promise) {
        return Err(Error::PromiseViolated {
            promised: promise.to_string(),
            actual: actual.to_string(),
        });
    }
    let n = f.n_inputs;
    let h_top = hadamard_layer(n);
    let start = QuantumState::basis(n + 1, 1)?;
    let spread = hadamard_layer(n + 1).apply(&start)?;
    let queried = oracle_gate(f).apply(&spread)?;
    h_top.tensor(&Gate::identity(1)).apply(&queried)
}

/// Deterministic outcome of the Deutsch-Jozsa run: 1 iff the function is
/// constant, 0 iff balanced, decided through the all-zero probability of
/// the top register.
pub fn jozsa_eval(f: &BooleanFunction, promise: Promise) -> Result<u8> {
    let out = jozsa_algo(f, promise)?;
    decide_bit(all_zero_probability(&out))
}

/// Probability that measuring all qubits but the last yields zeros:
/// the squared amplitude mass of |0...0⟩ ⊗ {|0⟩, |1⟩}.
pub fn all_zero_probability(state: &QuantumState) -> f64 {
    state.amplitude(0).norm_sqr() + state.amplitude(1).norm_sqr()
}

/// k-fold tensor power of the Hadamard gate.
pub fn hadamard_layer(k: usize) -> Gate {
    let h = Gate::hadamard();
    let mut layer = h.clone();
    for _ in 1..k {
        layer = layer.tensor(&h);
    }
    layer
}

fn decide_bit(probability: f64) -> Result<u8> {
    if probability < DECISION_MARGIN {
        Ok(0)
    } else if probability > 1.0 - DECISION_MARGIN {
        Ok(1)
    } else {
        Err(Error::IndeterminateOutcome { probability })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerance;
    use crate::measurement::{prob0, prob1};

    fn func(n: usize, table: &[u8]) -> BooleanFunction {
        BooleanFunction::new(n, table.to_vec()).unwrap()
    }

    /// All tables on n inputs with exactly half the entries set.
    fn balanced_tables(n: usize) -> Vec<Vec<u8>> {
        let size = 1usize << n;
        (0u32..1 << size)
            .filter(|mask| mask.count_ones() as usize == size / 2)
            .map(|mask| (0..size).map(|i| ((mask >> i) & 1) as u8).collect())
            .collect()
    }

    #[test]
    fn table_validation() {
        assert!(BooleanFunction::new(1, vec![0]).is_err());
        assert!(BooleanFunction::new(1, vec![0, 2]).is_err());
        assert!(BooleanFunction::new(0, vec![]).is_err());
        assert!(BooleanFunction::new(2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&func(1, &[0, 0])), Classification::Constant);
        assert_eq!(classify(&func(1, &[0, 1])), Classification::Balanced);
        assert_eq!(classify(&func(2, &[1, 1, 1, 0])), Classification::Neither);
    }

    #[test]
    fn promise_decision_query_counts() {
        for n in 1..=3 {
            let size = 1usize << n;
            let worst = size / 2 + 1;
            for bit in [0u8, 1] {
                let f = func(n, &vec![bit; size]);
                let (kind, queries) = classify_under_promise(&f);
                assert_eq!(kind, Promise::Constant);
                assert_eq!(queries, worst);
            }
            for table in balanced_tables(n) {
                let f = func(n, &table);
                let (kind, queries) = classify_under_promise(&f);
                assert_eq!(kind, Promise::Balanced);
                assert!(queries <= worst);
            }
        }
    }

    #[test]
    fn oracle_for_zero_function_is_identity() {
        let u = oracle_gate(&func(2, &[0, 0, 0, 0]));
        assert!(u
            .matrix()
            .approx_eq(Gate::identity(3).matrix(), Tolerance::default()));
    }

    #[test]
    fn oracle_for_identity_function_is_cnot() {
        let u = oracle_gate(&func(1, &[0, 1]));
        assert!(u.matrix().approx_eq(Gate::cnot().matrix(), Tolerance::default()));
    }

    #[test]
    fn oracles_are_unit_permutations_and_self_inverse() {
        for n in 1..=3 {
            let size = 1usize << n;
            for mask in 0u32..(1 << size) {
                let table: Vec<u8> = (0..size).map(|i| ((mask >> i) & 1) as u8).collect();
                let u = oracle_gate(&func(n, &table));
                assert!(u.matrix().unitarity_deviation().unwrap() < 1e-12);
                for entry in u.matrix().entries() {
                    assert!(entry.im == 0.0 && (entry.re == 0.0 || entry.re == 1.0));
                }
                let square = u.compose(&u).unwrap();
                assert!(square
                    .matrix()
                    .approx_eq(Gate::identity(n + 1).matrix(), Tolerance::default()));
            }
        }
    }

    #[test]
    fn deutsch_requires_one_input() {
        assert!(matches!(
            deutsch_algo(&func(2, &[0, 0, 0, 0])),
            Err(Error::WrongArity { .. })
        ));
    }

    #[test]
    fn deutsch_measurement_is_decisive() {
        let constant = deutsch_algo(&func(1, &[0, 0])).unwrap();
        assert!(prob1(&constant, 0).unwrap() < 1e-12);
        assert!((constant.norm() - 1.0).abs() < 1e-12);

        let balanced = deutsch_algo(&func(1, &[0, 1])).unwrap();
        assert!(prob0(&balanced, 0).unwrap() < 1e-12);
    }

    #[test]
    fn deutsch_eval_is_xor_of_table() {
        for table in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let f = func(1, &table);
            assert_eq!(deutsch_eval(&f).unwrap(), table[0] ^ table[1]);
        }
    }

    #[test]
    fn jozsa_rejects_broken_promises() {
        let err = jozsa_algo(&func(2, &[1, 1, 1, 0]), Promise::Balanced).unwrap_err();
        assert!(matches!(err, Error::PromiseViolated { .. }));
        assert!(jozsa_eval(&func(1, &[0, 0]), Promise::Balanced).is_err());
    }

    #[test]
    fn jozsa_with_one_input_reduces_to_deutsch() {
        for (table, promise) in [
            ([0u8, 0], Promise::Constant),
            ([1, 1], Promise::Constant),
            ([0, 1], Promise::Balanced),
            ([1, 0], Promise::Balanced),
        ] {
            let f = func(1, &table);
            let d = deutsch_algo(&f).unwrap();
            let j = jozsa_algo(&f, promise).unwrap();
            assert!(d.vector().max_abs_diff(j.vector()) < 1e-12);
        }
    }

    #[test]
    fn jozsa_constant_concentrates_on_zero_register() {
        for n in 1..=3 {
            for bit in [0u8, 1] {
                let f = func(n, &vec![bit; 1 << n]);
                let out = jozsa_algo(&f, Promise::Constant).unwrap();
                assert!((all_zero_probability(&out) - 1.0).abs() < 1e-12);
                assert_eq!(jozsa_eval(&f, Promise::Constant).unwrap(), 1);
            }
        }
    }

    #[test]
    fn jozsa_balanced_two_inputs_exhaustive() {
        for table in balanced_tables(2) {
            let f = func(2, &table);
            let out = jozsa_algo(&f, Promise::Balanced).unwrap();
            assert!(all_zero_probability(&out) < 1e-12);
            assert_eq!(jozsa_eval(&f, Promise::Balanced).unwrap(), 0);
        }
    }
}
