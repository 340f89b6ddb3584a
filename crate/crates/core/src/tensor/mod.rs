//! Dense multipartite linear algebra.
//!
//! Basis ordering is big-endian: subsystem 0 is the most significant digit of
//! a basis index, so `|10010⟩` over five qubits is index `0b10010`.

mod eigen;
mod matrix;

pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, trace_norm, HermitianEigen, HermitianSpectrum,
    HERMITIAN_TOL,
};
pub use matrix::{paulis, ComplexMatrix, EQ_TOL};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use matrix::ZERO;

/// Ordered subsystem dimensions, leftmost factor first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("no subsystems".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("subsystem dimension {d} < 2")));
        }
        Ok(Self(dims))
    }

    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn get(&self, index: usize) -> usize {
        self.0[index]
    }

    /// Product of the dimensions of the listed subsystems.
    pub fn product_of(&self, indices: &[usize]) -> usize {
        indices.iter().map(|&i| self.0[i]).product()
    }

    /// Dimensions of the listed subsystems, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        self.check_indices(indices)?;
        Self::new(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Place value of each subsystem's digit in a flat basis index.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    pub(crate) fn check_indices(&self, indices: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.0.len()];
        for &i in indices {
            if i >= self.0.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    count: self.0.len(),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::RepeatedIndex(i));
            }
        }
        Ok(())
    }

    pub(crate) fn complement(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.0.len()).filter(|i| !indices.contains(i)).collect()
    }

    fn check_square(&self, m: &ComplexMatrix) -> Result<()> {
        let n = self.total();
        if !m.is_square() || m.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: if m.rows() != n { m.rows() } else { m.cols() },
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Dims {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

/// Flat offsets contributed by every joint value of the listed subsystems,
/// enumerated big-endian in the listed order.
fn offsets(dims: &Dims, strides: &[usize], indices: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &k in indices {
        let d = dims.get(k);
        let stride = strides[k];
        out = out
            .iter()
            .flat_map(|&base| (0..d).map(move |v| base + v * stride))
            .collect();
    }
    out
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of vectors.
pub fn kron_vec(parts: &[&[Complex64]]) -> Vec<Complex64> {
    parts.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, v| {
        acc.iter()
            .flat_map(|&a| v.iter().map(move |&b| a * b))
            .collect()
    })
}

/// Reduced operator on `keep` (kept in their original relative order).
pub fn partial_trace(rho: &ComplexMatrix, dims: &Dims, keep: &[usize]) -> Result<ComplexMatrix> {
    dims.check_square(rho)?;
    if keep.is_empty() {
        return Err(Error::InvalidBipartition("nothing to keep".into()));
    }
    dims.check_indices(keep)?;
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    let traced = dims.complement(&keep_sorted);
    let strides = dims.strides();
    let kept_off = offsets(dims, &strides, &keep_sorted);
    let traced_off = offsets(dims, &strides, &traced);

    let n = kept_off.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (a, &ka) in kept_off.iter().enumerate() {
        for (b, &kb) in kept_off.iter().enumerate() {
            out[(a, b)] = traced_off.iter().map(|&t| rho[(ka + t, kb + t)]).sum();
        }
    }
    Ok(out)
}

/// Transposes the tensor factors listed in `transposed`, leaving the rest alone.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: &Dims,
    transposed: &[usize],
) -> Result<ComplexMatrix> {
    dims.check_square(rho)?;
    dims.check_indices(transposed)?;
    let strides = dims.strides();
    let mut t_sorted = transposed.to_vec();
    t_sorted.sort_unstable();
    let rest = dims.complement(&t_sorted);
    let t_off = offsets(dims, &strides, &t_sorted);
    let r_off = offsets(dims, &strides, &rest);

    let n = dims.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for &ri in &r_off {
        for &rj in &r_off {
            for &ti in &t_off {
                for &tj in &t_off {
                    out[(ri + ti, rj + tj)] = rho[(ri + tj, rj + ti)];
                }
            }
        }
    }
    Ok(out)
}

/// Left-multiplies `m` by `op` embedded on `targets` (identity elsewhere).
fn apply_left(op: &ComplexMatrix, targets: &[usize], dims: &Dims, m: &ComplexMatrix) -> ComplexMatrix {
    let strides = dims.strides();
    let rest = dims.complement(targets);
    let t_off = offsets(dims, &strides, targets);
    let r_off = offsets(dims, &strides, &rest);
    let k = t_off.len();
    let cols = m.cols();
    let mut out = ComplexMatrix::zeros(m.rows(), cols);
    let mut buf = vec![ZERO; k];
    for &base in &r_off {
        for col in 0..cols {
            for (s, &o) in t_off.iter().enumerate() {
                buf[s] = m[(base + o, col)];
            }
            for (s, &o) in t_off.iter().enumerate() {
                let mut acc = ZERO;
                for (u, &x) in buf.iter().enumerate() {
                    acc += op[(s, u)] * x;
                }
                out[(base + o, col)] = acc;
            }
        }
    }
    out
}

fn check_local_op(op: &ComplexMatrix, targets: &[usize], dims: &Dims) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::InvalidBipartition("no target subsystems".into()));
    }
    dims.check_indices(targets)?;
    let expected = dims.product_of(targets);
    if !op.is_square() || op.rows() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: op.rows(),
        });
    }
    Ok(())
}

/// `(op ⊗ I) M` with `op` acting on `targets`, for any operator `M`.
pub fn embed_left(
    op: &ComplexMatrix,
    targets: &[usize],
    dims: &Dims,
    m: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    check_local_op(op, targets, dims)?;
    if m.rows() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            actual: m.rows(),
        });
    }
    Ok(apply_left(op, targets, dims, m))
}

/// `U ρ U†` with `U = op` on `targets` (in the given order) and identity elsewhere.
pub fn apply_local(
    rho: &ComplexMatrix,
    op: &ComplexMatrix,
    targets: &[usize],
    dims: &Dims,
) -> Result<ComplexMatrix> {
    dims.check_square(rho)?;
    check_local_op(op, targets, dims)?;
    Ok(sandwich(rho, op, targets, dims))
}

pub(crate) fn sandwich(
    rho: &ComplexMatrix,
    op: &ComplexMatrix,
    targets: &[usize],
    dims: &Dims,
) -> ComplexMatrix {
    // U ρ U† = (U (U ρ)†)†
    let left = apply_left(op, targets, dims, rho);
    apply_left(op, targets, dims, &left.adjoint()).adjoint()
}

/// Reorders tensor factors: new subsystem `k` is old subsystem `perm[k]`.
pub fn permute_subsystems(
    rho: &ComplexMatrix,
    dims: &Dims,
    perm: &[usize],
) -> Result<(ComplexMatrix, Dims)> {
    dims.check_square(rho)?;
    if perm.len() != dims.len() {
        return Err(Error::InvalidPermutation(format!(
            "length {} for {} subsystems",
            perm.len(),
            dims.len()
        )));
    }
    dims.check_indices(perm)
        .map_err(|e| Error::InvalidPermutation(e.to_string()))?;
    let new_dims = dims.select(perm)?;
    let map = permuted_index_map(dims, perm);
    let n = dims.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, &oi) in map.iter().enumerate() {
        for (j, &oj) in map.iter().enumerate() {
            out[(i, j)] = rho[(oi, oj)];
        }
    }
    Ok((out, new_dims))
}

/// `map[new_index] = old_index` for the reordering `perm`.
pub(crate) fn permuted_index_map(dims: &Dims, perm: &[usize]) -> Vec<usize> {
    let strides = dims.strides();
    offsets(dims, &strides, perm)
}
