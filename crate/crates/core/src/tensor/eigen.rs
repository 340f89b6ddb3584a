//! Cyclic Jacobi diagonalization for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies a
//! real Givens rotation, so the iteration is the classical real-symmetric
//! scheme lifted to the complex case. Matrices in this crate are at most a few
//! dozen rows, where Jacobi is accurate to machine precision and fast enough.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Hermiticity tolerance for eigen-solver inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Real spectrum of a Hermitian matrix, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigenvalues with orthonormal eigenvectors stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub spectrum: HermitianSpectrum,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda: Vec<Complex64> = self
            .spectrum
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let scaled = &self.vectors * &ComplexMatrix::from_diagonal(&lambda);
        &scaled * &self.vectors.adjoint()
    }
}

fn check_input(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            actual: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    // Scale-aware so that large-norm operators are not rejected on rounding.
    let scale = m.frobenius_norm().max(1.0);
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    check_input(m)?;
    Ok(jacobi(m, false).spectrum)
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_input(m)?;
    Ok(jacobi(m, true))
}

fn off_diagonal_norm_sqr(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> HermitianEigen {
    let n = m.rows();
    // Symmetrize once; every rotation below keeps the working copy Hermitian.
    let mut a = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = if want_vectors {
        ComplexMatrix::identity(n).into_data()
    } else {
        Vec::new()
    };

    let total: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sqr(&a, n) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q, want_vectors);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[i * n + i].re, i)).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));

    let eigenvalues: Vec<f64> = pairs.iter().map(|&(x, _)| x).collect();
    let vectors = if want_vectors {
        let mut sorted = ComplexMatrix::zeros(n, n);
        for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
            for row in 0..n {
                sorted[(row, new_col)] = v[row * n + old_col];
            }
        }
        sorted
    } else {
        ComplexMatrix::zeros(0, 0)
    };
    HermitianEigen {
        spectrum: HermitianSpectrum { eigenvalues },
        vectors,
    }
}

/// One Jacobi step zeroing `a[p][q]`: `A <- U† A U` and `V <- V U` with
/// `U = diag(1, conj(e)) · [[c, s], [-s, c]]` on the `(p, q)` plane, where
/// `a_pq = r·e`, `|e| = 1`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize, vecs: bool) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip rotations that would not change the diagonal in floating point.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let e = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e_conj = e.conj();

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = e_conj * (-s);
    let u_qq = e_conj * c;

    // Columns: A <- A U
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * u_pp + akq * u_qp;
        a[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // Rows: A <- U† A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

    if vecs {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * u_pp + vkq * u_qp;
            v[k * n + q] = vkp * u_pq + vkq * u_qq;
        }
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::matrix::paulis::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_z_spectrum() {
        let s = hermitian_eigenvalues(&sigma_z()).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, -1.0]);
    }

    #[test]
    fn maximally_mixed_spectrum() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        let s = hermitian_eigenvalues(&m).unwrap();
        for x in s.eigenvalues {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_y_has_complex_vectors() {
        let eig = hermitian_eigen(&sigma_y()).unwrap();
        assert!((eig.spectrum.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.spectrum.eigenvalues[1] + 1.0).abs() < 1e-14);
        assert!(eig.reconstruct().approx_eq(&sigma_y(), 1e-14));
    }

    #[test]
    fn dense_complex_reconstruction() {
        let m = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(0.3, -0.7),
                c(-1.1, 0.2),
                c(0.3, 0.7),
                c(-0.5, 0.0),
                c(0.0, 0.9),
                c(-1.1, -0.2),
                c(0.0, -0.9),
                c(1.25, 0.0),
            ],
        )
        .unwrap();
        let eig = hermitian_eigen(&m).unwrap();
        let residual = (&m - &eig.reconstruct()).frobenius_norm();
        assert!(residual <= 1e-9 * m.frobenius_norm());
        let trace: f64 = eig.spectrum.sum();
        assert!((trace - 2.75).abs() < 1e-12);
        let unit = &eig.vectors.adjoint() * &eig.vectors;
        assert!(unit.approx_eq(&ComplexMatrix::identity(3), 1e-13));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn trace_norm_of_pauli() {
        assert!((trace_norm(&sigma_z()).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_zero_matrices() {
        let zero = ComplexMatrix::zeros(3, 3);
        assert_eq!(hermitian_eigenvalues(&zero).unwrap().eigenvalues, vec![0.0; 3]);
        let empty = ComplexMatrix::zeros(0, 0);
        assert!(hermitian_eigenvalues(&empty).unwrap().is_empty());
    }
}
