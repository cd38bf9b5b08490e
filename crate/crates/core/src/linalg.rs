//! Dense complex matrices and the handful of operations everything else
//! is built on: dagger, products, Kronecker products, inner products and
//! the unitarity / length-preservation predicates.
//!
//! Matrices are stored row-major. All values are immutable after
//! construction and every operation is a pure function, so everything
//! here can be shared freely across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Double-precision complex scalar used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Comparison threshold for floating-point "equality" checks.
///
/// The default of `1e-9` is comfortable for the well-conditioned
/// products of small matrices this crate deals in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// A tolerance must be finite and strictly positive.
    pub fn new(eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidTolerance { eps });
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// Dense complex matrix with row-major storage.
///
/// Invariants enforced by every public constructor: positive dimensions,
/// `entries.len() == rows * cols`, and all entries finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// JSON interchange form: `{"rows": r, "cols": c, "entries": [[re, im], ...]}`
/// with entries in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(f64, f64)>,
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|c| (c.re, c.im)).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let entries = raw
            .entries
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(raw.rows, raw.cols, entries)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = MatrixJson::deserialize(deserializer)?;
        ComplexMatrix::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl ComplexMatrix {
    /// Validating constructor from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCountMismatch {
                rows,
                cols,
                len: entries.len(),
                expected: rows * cols,
            });
        }
        if let Some(index) = entries
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFiniteEntry { index });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Constructor for results of internal arithmetic on already-validated
    /// inputs, where finiteness is preserved.
    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && entries.len() == rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    /// The n-by-n identity.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self::from_parts(n, n, entries)
    }

    /// Single-column matrix (a ket-shaped vector).
    pub fn column(entries: Vec<Complex64>) -> Result<Self> {
        let rows = entries.len();
        Self::new(rows, 1, entries)
    }

    /// Column built from real amplitudes.
    pub fn column_from_reals(reals: &[f64]) -> Result<Self> {
        Self::column(reals.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries[row * self.cols + col]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_column(&self) -> bool {
        self.cols == 1
    }

    /// Hermitian conjugate: conjugate of the transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut entries = vec![Complex64::new(0.0, 0.0); self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        Self::from_parts(self.cols, self.rows, entries)
    }

    /// Standard matrix product `self * other`.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    entries[i * other.cols + j] += a * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(Self::from_parts(self.rows, other.cols, entries))
    }

    /// Kronecker product: block (i, j) of the result is `self[i][j] * other`.
    pub fn kronecker(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        entries[(i * other.rows + k) * cols + (j * other.cols + l)] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        Self::from_parts(rows, cols, entries)
    }

    /// Inner product of two columns, conjugate-linear in `self`:
    /// sum over i of `conj(self[i]) * other[i]`.
    pub fn inner_prod(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if !self.is_column() {
            return Err(Error::NotColumn {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !other.is_column() {
            return Err(Error::NotColumn {
                rows: other.rows,
                cols: other.cols,
            });
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "inner_prod",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean norm over all entries; for a column this is the vector
    /// length, in general the Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise deviation of both `M† M` and `M M†` from the
    /// identity. Zero exactly when the matrix is unitary.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let dag = self.dagger();
        let left = dag.matmul(self)?;
        let right = self.matmul(&dag)?;
        let id = ComplexMatrix::identity(self.rows);
        Ok(left.max_abs_diff(&id).max(right.max_abs_diff(&id)))
    }

    /// Whether `M† M = M M† = I` within the tolerance.
    pub fn is_unitary(&self, tol: Tolerance) -> Result<bool> {
        Ok(self.unitarity_deviation()? < tol.eps())
    }

    /// Whether `‖M v‖ = ‖v‖` within the tolerance for every probe `v`.
    ///
    /// The universally quantified law is realized over an explicit probe
    /// set; [`unitarity_probe_basis`] supplies probes that decide the
    /// converse direction as well.
    pub fn is_length_preserving(&self, probes: &[ComplexMatrix], tol: Tolerance) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if probes.is_empty() {
            return Err(Error::EmptyProbeSet);
        }
        for probe in probes {
            if !probe.is_column() {
                return Err(Error::NotColumn {
                    rows: probe.rows,
                    cols: probe.cols,
                });
            }
            let image = self.matmul(probe)?;
            if (image.norm() - probe.norm()).abs() >= tol.eps() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nonnegative slack of the Cauchy-Schwarz inequality,
    /// `Re(⟨v|v⟩⟨w|w⟩) − |⟨v|w⟩|²`.
    pub fn cauchy_schwarz_gap(&self, other: &ComplexMatrix) -> Result<f64> {
        let vv = self.inner_prod(self)?;
        let ww = other.inner_prod(other)?;
        let vw = self.inner_prod(other)?;
        Ok((vv * ww).re - vw.norm_sqr())
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, entries))
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        Self::from_parts(
            self.rows,
            self.cols,
            self.entries.iter().map(|&c| c * factor).collect(),
        )
    }

    /// Largest entrywise absolute difference; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff requires equal shapes"
        );
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within the tolerance.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: Tolerance) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.max_abs_diff(other) < tol.eps()
    }
}

/// Deterministic probe set that decides unitarity via length preservation:
/// all standard basis vectors `e_i`, plus `(e_i + e_j)/√2` and
/// `(e_i + i e_j)/√2` for i < j.
///
/// Lengths of images of these probes determine every entry of `M† M`, so a
/// matrix that preserves the length of each probe is unitary, and any matrix
/// failing unitarity by a clear margin changes the length of some probe.
pub fn unitarity_probe_basis(dim: usize) -> Vec<ComplexMatrix> {
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let mut probes = Vec::new();
    let zero = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        let mut v = vec![zero; dim];
        v[i] = Complex64::new(1.0, 0.0);
        probes.push(ComplexMatrix::from_parts(dim, 1, v));
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut v = vec![zero; dim];
            v[i] = Complex64::new(sqrt_half, 0.0);
            v[j] = Complex64::new(sqrt_half, 0.0);
            probes.push(ComplexMatrix::from_parts(dim, 1, v.clone()));
            v[j] = Complex64::new(0.0, sqrt_half);
            probes.push(ComplexMatrix::from_parts(dim, 1, v));
        }
    }
    probes
}
