//! State constructors and Schmidt analysis of pure states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::measures::Bipartition;
use crate::tensor::{self, paulis, ComplexMatrix, Dims, HermitianSpectrum};

/// Eigenvalues below this are dropped from Schmidt spectra and ranks.
pub const SCHMIDT_CUTOFF: f64 = 1e-10;

const NORM_TOL: f64 = 1e-10;
const STATE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-9;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Dims,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density(&self) -> DensityMatrix {
        density_from_pure(self)
    }

    /// Reduced density operator on `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        self.dims.check_indices(keep)?;
        if keep.is_empty() {
            return Err(Error::InvalidBipartition("nothing to keep".into()));
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let traced = self.dims.complement(&keep);
        // ρ_K = M M† with M the amplitude tensor reshaped to (kept, traced).
        let perm: Vec<usize> = keep.iter().chain(&traced).copied().collect();
        let map = tensor::permuted_index_map(&self.dims, &perm);
        let k = self.dims.product_of(&keep);
        let t = self.dims.product_of(&traced);
        let mut out = ComplexMatrix::zeros(k, k);
        for a in 0..k {
            for b in a..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for x in 0..t {
                    acc += self.amplitudes[map[a * t + x]] * self.amplitudes[map[b * t + x]].conj();
                }
                out[(a, b)] = acc;
                out[(b, a)] = acc.conj();
            }
        }
        Ok(out)
    }

    /// Overlap ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

pub fn pure_from_amplitudes(dims: Dims, amplitudes: Vec<Complex64>) -> Result<PureState> {
    if amplitudes.len() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            actual: amplitudes.len(),
        });
    }
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || norm <= 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(PureState {
        dims,
        amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
    })
}

/// Builds a normalized state from `(weight, digits)` pairs, one digit per subsystem.
pub fn pure_from_terms(dims: Dims, terms: &[(f64, &[usize])]) -> Result<PureState> {
    let strides = dims.strides();
    let mut amps = vec![c(0.0); dims.total()];
    for (w, digits) in terms {
        if digits.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                actual: digits.len(),
            });
        }
        let mut idx = 0;
        for (k, &dgt) in digits.iter().enumerate() {
            if dgt >= dims.get(k) {
                return Err(Error::IndexOutOfRange {
                    index: dgt,
                    count: dims.get(k),
                });
            }
            idx += dgt * strides[k];
        }
        amps[idx] += c(*w);
    }
    pure_from_amplitudes(dims, amps)
}

pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    DensityMatrix {
        dims: psi.dims.clone(),
        matrix: ComplexMatrix::outer(&psi.amplitudes, &psi.amplitudes),
    }
}

/// (|00⟩ + |11⟩)/√2
pub fn bell_phi_plus() -> PureState {
    pure_from_terms(Dims::qubits(2), &[(1.0, &[0, 0]), (1.0, &[1, 1])]).unwrap()
}

/// GHZ state (|000⟩ + |111⟩)/√2.
pub fn ghz3() -> PureState {
    pure_from_terms(Dims::qubits(3), &[(1.0, &[0, 0, 0]), (1.0, &[1, 1, 1])]).unwrap()
}

/// Computational basis state.
pub fn basis_state(dims: Dims, digits: &[usize]) -> Result<PureState> {
    pure_from_terms(dims, &[(1.0, digits)])
}

/// `p|φ₊⟩⟨φ₊| + (1 − p) I/4`; separable for `p ≤ 1/3`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let bell = density_from_pure(&bell_phi_plus()).matrix;
    let mixed = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    Ok(DensityMatrix {
        dims: Dims::qubits(2),
        matrix: &bell.scale_real(p) + &mixed,
    })
}

/// Ancilla state `(I + s σx)/2`.
pub fn ancilla_alpha(s: f64) -> Result<DensityMatrix> {
    check_unit_interval("s", s)?;
    let m = &ComplexMatrix::identity(2) + &paulis::sigma_x().scale_real(s);
    Ok(DensityMatrix {
        dims: Dims::qubits(1),
        matrix: m.scale_real(0.5),
    })
}

/// Kets of the five-qubit absolutely maximally entangled state with their signs.
///
/// This is the logical-zero codeword of the five-qubit perfect code. The
/// printed source listing carries `+` on `|11101⟩` and `|10001⟩`; with those
/// signs the two-qubit marginals on (0,1), (0,2), ... are not maximally mixed,
/// so the codeword signs are used.
pub const AME5_TERMS: [(f64, &str); 16] = [
    (1.0, "00000"),
    (1.0, "10010"),
    (1.0, "01001"),
    (1.0, "10100"),
    (1.0, "01010"),
    (-1.0, "11011"),
    (-1.0, "00110"),
    (-1.0, "11000"),
    (-1.0, "11101"),
    (-1.0, "00011"),
    (-1.0, "11110"),
    (-1.0, "01111"),
    (-1.0, "10001"),
    (-1.0, "01100"),
    (-1.0, "10111"),
    (1.0, "00101"),
];

/// Five-qubit state maximally entangled across every bipartition.
pub fn ame5() -> PureState {
    let mut amps = vec![c(0.0); 32];
    for (sign, ket) in AME5_TERMS {
        let idx = usize::from_str_radix(ket, 2).expect("binary ket literal");
        amps[idx] = c(sign / 4.0);
    }
    pure_from_amplitudes(Dims::qubits(5), amps).unwrap()
}

/// `(|200⟩ + |001⟩ + |110⟩)/√3` on 3×2×2: excessive under negativity.
pub fn negativity_counterexample() -> PureState {
    let dims = Dims::new(vec![3, 2, 2]).unwrap();
    pure_from_terms(
        dims,
        &[(1.0, &[2, 0, 0]), (1.0, &[0, 0, 1]), (1.0, &[1, 1, 0])],
    )
    .unwrap()
}

/// `(10|000⟩ + |110⟩ + |201⟩ + |311⟩)/√103` on 4×2×2: excessive under
/// logarithmic negativity.
pub fn log_negativity_counterexample() -> PureState {
    let dims = Dims::new(vec![4, 2, 2]).unwrap();
    pure_from_terms(
        dims,
        &[
            (10.0, &[0, 0, 0]),
            (1.0, &[1, 1, 0]),
            (1.0, &[2, 0, 1]),
            (1.0, &[3, 1, 1]),
        ],
    )
    .unwrap()
}

/// Haar-random pure state from normalized i.i.d. complex Gaussian amplitudes.
pub fn haar_random_pure(dims: Dims, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_pure_with(dims, &mut rng)
}

/// Sample `index` of the stream rooted at `seed`; independent of evaluation order.
pub fn haar_sample(dims: Dims, seed: u64, index: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    haar_random_pure_with(dims, &mut rng)
}

pub fn haar_random_pure_with<R: Rng + ?Sized>(dims: Dims, rng: &mut R) -> PureState {
    loop {
        let amps: Vec<Complex64> = (0..dims.total())
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        if let Ok(psi) = pure_from_amplitudes(dims.clone(), amps) {
            return psi;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtDecomposition {
    /// Squared Schmidt coefficients (eigenvalues of the reduced state), descending.
    pub coefficients: Vec<f64>,
    pub rank: usize,
}

impl SchmidtDecomposition {
    fn from_spectrum(spectrum: HermitianSpectrum) -> Self {
        let coefficients: Vec<f64> = spectrum
            .eigenvalues
            .into_iter()
            .filter(|&x| x > SCHMIDT_CUTOFF)
            .collect();
        let rank = coefficients.len();
        Self { coefficients, rank }
    }

    /// `½ Σ_{α≠a} √(p_α p_a)`, i.e. `((Σ √p)² − 1)/2`.
    pub fn negativity(&self) -> f64 {
        let s: f64 = self.coefficients.iter().map(|p| p.sqrt()).sum();
        let total: f64 = self.coefficients.iter().sum();
        ((s * s - total) / 2.0).max(0.0)
    }

    pub fn log_negativity(&self) -> f64 {
        (2.0 * self.negativity() + 1.0).log2()
    }

    pub fn von_neumann_entropy(&self) -> f64 {
        self.coefficients
            .iter()
            .filter(|&&p| p > 1e-12)
            .map(|&p| -p * p.log2())
            .sum()
    }

    pub fn linear_entropy(&self) -> f64 {
        1.0 - self.coefficients.iter().map(|p| p * p).sum::<f64>()
    }
}

/// Schmidt spectrum of `psi` across `left : rest`.
pub fn schmidt(psi: &PureState, left: &Bipartition) -> Result<SchmidtDecomposition> {
    left.validate(psi.dims())?;
    // The nonzero spectrum is shared by both sides; diagonalize the smaller one.
    let right = left.complement(psi.dims());
    let side = if psi.dims().product_of(left.left()) <= psi.dims().product_of(&right) {
        left.left().to_vec()
    } else {
        right
    };
    let reduced = psi.reduced(&side)?;
    Ok(SchmidtDecomposition::from_spectrum(
        tensor::hermitian_eigenvalues(&reduced)?,
    ))
}

/// Density operator carrying its subsystem layout.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validated constructor: Hermitian, unit trace, positive semidefinite.
    pub fn new(dims: Dims, matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::from_parts_unchecked(dims, matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Only checks the shape.
    pub fn from_parts_unchecked(dims: Dims, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                actual: matrix.rows(),
            });
        }
        Ok(Self { dims, matrix })
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.matrix.hermiticity_defect();
        if defect > STATE_TOL {
            return Err(Error::InvalidState(format!("Hermiticity defect {defect:.3e}")));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min = tensor::hermitian_eigenvalues(&self.matrix)?.min();
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.data().iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn spectrum(&self) -> Result<HermitianSpectrum> {
        tensor::hermitian_eigenvalues(&self.matrix)
    }

    /// Reduced state on `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        let m = tensor::partial_trace(&self.matrix, &self.dims, &sorted)?;
        Ok(DensityMatrix {
            dims: self.dims.select(&sorted)?,
            matrix: m,
        })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let dims: Vec<usize> = self
            .dims
            .as_slice()
            .iter()
            .chain(other.dims.as_slice())
            .copied()
            .collect();
        DensityMatrix {
            dims: Dims::new(dims).expect("valid factors"),
            matrix: tensor::kron(&self.matrix, &other.matrix),
        }
    }

    /// `U ρ U†` with `op` on `targets`.
    pub fn apply_unitary(&self, op: &ComplexMatrix, targets: &[usize]) -> Result<DensityMatrix> {
        Ok(DensityMatrix {
            dims: self.dims.clone(),
            matrix: tensor::apply_local(&self.matrix, op, targets, &self.dims)?,
        })
    }

    pub fn permute(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let (matrix, dims) = tensor::permute_subsystems(&self.matrix, &self.dims, perm)?;
        Ok(DensityMatrix { dims, matrix })
    }

    pub(crate) fn with_matrix(&self, matrix: ComplexMatrix) -> DensityMatrix {
        DensityMatrix {
            dims: self.dims.clone(),
            matrix,
        }
    }
}

/// JSON layout `{"dims": [...], "re": [...], "im": [...]}`, row-major for matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dims: Dims,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&PureState> for StateJson {
    fn from(psi: &PureState) -> Self {
        Self {
            dims: psi.dims.clone(),
            re: psi.amplitudes.iter().map(|a| a.re).collect(),
            im: psi.amplitudes.iter().map(|a| a.im).collect(),
        }
    }
}

impl From<&DensityMatrix> for StateJson {
    fn from(rho: &DensityMatrix) -> Self {
        Self {
            dims: rho.dims.clone(),
            re: rho.matrix.data().iter().map(|a| a.re).collect(),
            im: rho.matrix.data().iter().map(|a| a.im).collect(),
        }
    }
}

impl StateJson {
    fn amplitudes(&self) -> Result<Vec<Complex64>> {
        if self.re.len() != self.im.len() {
            return Err(Error::Serialization("re/im length mismatch".into()));
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect())
    }

    pub fn to_pure(&self) -> Result<PureState> {
        pure_from_amplitudes(self.dims.clone(), self.amplitudes()?)
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let n = self.dims.total();
        let m = ComplexMatrix::from_vec(n, n, self.amplitudes()?)?;
        DensityMatrix::new(self.dims.clone(), m)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))
    }
}

pub fn is_normalized(psi: &PureState) -> bool {
    (psi.norm() - 1.0).abs() <= NORM_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn bp(left: &[usize]) -> Bipartition {
        Bipartition::new(left.to_vec())
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn normalizes_input() {
        let psi = pure_from_amplitudes(Dims::qubits(1), vec![c(2.0), c(0.0)]).unwrap();
        assert_eq!(psi.amplitudes(), &[c(1.0), c(0.0)]);
        let zero = pure_from_amplitudes(Dims::qubits(1), vec![c(1.0), c(0.0)]).unwrap();
        assert_eq!(zero, psi);
    }

    #[test]
    fn amplitude_errors() {
        assert_eq!(
            pure_from_amplitudes(Dims::qubits(1), vec![c(0.0), c(0.0)]),
            Err(Error::ZeroVector)
        );
        assert!(matches!(
            pure_from_amplitudes(Dims::qubits(2), vec![c(1.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bell_state_properties() {
        let bell = bell_phi_plus();
        let rho = bell.density();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(rho.reduced(&[0]).unwrap().matrix().approx_eq(&half, 1e-15));
        assert!(rho.reduced(&[1]).unwrap().matrix().approx_eq(&half, 1e-15));
        let ket01 = basis_state(Dims::qubits(2), &[0, 1]).unwrap();
        assert_eq!(bell.inner(&ket01).norm(), 0.0);
        let s = schmidt(&bell, &bp(&[0])).unwrap();
        assert_eq!(s.rank, 2);
        assert!(close(s.negativity(), 0.5, 1e-14));
    }

    #[test]
    fn counterexample_marginals() {
        let psi = negativity_counterexample();
        let rho_b = psi.density().reduced(&[1]).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 3.0]);
        assert!(rho_b.matrix().approx_eq(&expected, 1e-15));

        let s = schmidt(&psi, &bp(&[0])).unwrap();
        assert_eq!(s.rank, 3);
        for p in &s.coefficients {
            assert!(close(*p, 1.0 / 3.0, 1e-12));
        }
    }

    #[test]
    fn log_negativity_counterexample_carrier_spectrum() {
        let s = schmidt(&log_negativity_counterexample(), &bp(&[2])).unwrap();
        assert!(close(s.coefficients[0], 101.0 / 103.0, 1e-12));
        assert!(close(s.coefficients[1], 2.0 / 103.0, 1e-12));
    }

    #[test]
    fn werner_endpoints() {
        let w1 = werner(1.0).unwrap();
        assert!(w1.matrix().approx_eq(bell_phi_plus().density().matrix(), 1e-15));
        assert!(werner(1.01).is_err());
        assert!(werner(-0.1).is_err());
        for p in [0.0, 0.2, 1.0 / 3.0, 0.7, 1.0] {
            let w = werner(p).unwrap();
            assert!(close(w.spectrum().unwrap().min(), (1.0 - p) / 4.0, 1e-12));
        }
    }

    #[test]
    fn ancilla_states() {
        let plus = ancilla_alpha(1.0).unwrap();
        assert!(close(plus.purity(), 1.0, 1e-15));
        let mixed = ancilla_alpha(0.0).unwrap();
        assert!(mixed
            .matrix()
            .approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), 1e-15));
        let spec = ancilla_alpha(2.0 / 3.0).unwrap().spectrum().unwrap();
        assert!(close(spec.eigenvalues[0], 5.0 / 6.0, 1e-14));
        assert!(close(spec.eigenvalues[1], 1.0 / 6.0, 1e-14));
        assert!(ancilla_alpha(1.5).is_err());
    }

    #[test]
    fn ame5_marginals_are_maximally_mixed() {
        let rho = ame5().density();
        let quarter = ComplexMatrix::identity(4).scale_real(0.25);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for i in 0..5 {
            assert!(rho.reduced(&[i]).unwrap().matrix().approx_eq(&half, 1e-12));
            for j in (i + 1)..5 {
                assert!(rho.reduced(&[i, j]).unwrap().matrix().approx_eq(&quarter, 1e-12));
            }
        }
        let s = schmidt(&ame5(), &bp(&[0, 3])).unwrap();
        assert!(close(s.negativity(), 1.5, 1e-12));
    }

    #[test]
    fn printed_signs_are_not_ame() {
        let mut amps = vec![c(0.0); 32];
        for (sign, ket) in AME5_TERMS {
            let flip = ket == "11101" || ket == "10001";
            let idx = usize::from_str_radix(ket, 2).unwrap();
            amps[idx] = c(if flip { -sign } else { sign } / 4.0);
        }
        let psi = pure_from_amplitudes(Dims::qubits(5), amps).unwrap();
        let quarter = ComplexMatrix::identity(4).scale_real(0.25);
        let r = psi.density().reduced(&[0, 1]).unwrap();
        assert!(r.matrix().max_abs_diff(&quarter) > 0.1);
    }

    #[test]
    fn haar_is_deterministic_and_normalized() {
        let dims = Dims::new(vec![2, 3]).unwrap();
        let a = haar_random_pure(dims.clone(), 42);
        let b = haar_random_pure(dims.clone(), 42);
        assert_eq!(a, b);
        assert!(close(a.norm(), 1.0, 1e-12));
        assert_ne!(haar_sample(dims.clone(), 42, 0), haar_sample(dims, 42, 1));
    }

    #[test]
    fn haar_two_qubit_purity_moment() {
        // Haar average of tr ρ_A² is (d_A + d_B)/(d_A d_B + 1).
        let expected = (2.0 + 2.0) / (2.0 * 2.0 + 1.0);
        let n = 1000;
        let mean: f64 = (0..n)
            .map(|i| {
                let psi = haar_sample(Dims::qubits(2), 11, i);
                psi.density().reduced(&[0]).unwrap().purity()
            })
            .sum::<f64>()
            / n as f64;
        assert!(close(mean, expected, 0.02), "mean purity {mean}");
    }

    #[test]
    fn pure_density_properties() {
        let rho = density_from_pure(&basis_state(Dims::qubits(1), &[0]).unwrap());
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));
        let psi = haar_random_pure(Dims::new(vec![3, 2]).unwrap(), 3);
        let rho = psi.density();
        assert!(close(rho.trace(), 1.0, 1e-12));
        assert!(close(rho.purity(), 1.0, 1e-10));
        rho.validate().unwrap();
    }

    #[test]
    fn reduced_pure_matches_partial_trace() {
        let psi = haar_random_pure(Dims::new(vec![2, 3, 2]).unwrap(), 9);
        let via_pt = psi.density().reduced(&[0, 2]).unwrap();
        let direct = psi.reduced(&[2, 0]).unwrap();
        assert!(via_pt.matrix().approx_eq(&direct, 1e-14));
    }

    #[test]
    fn schmidt_rejects_bad_partitions() {
        let psi = ghz3();
        assert!(schmidt(&psi, &bp(&[])).is_err());
        assert!(schmidt(&psi, &bp(&[0, 1, 2])).is_err());
        assert!(schmidt(&psi, &bp(&[5])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let psi = negativity_counterexample();
        let json = StateJson::from(&psi).to_json().unwrap();
        let back = StateJson::from_json(&json).unwrap().to_pure().unwrap();
        assert!(close(back.inner(&psi).norm(), 1.0, 1e-15));

        let w = werner(0.4).unwrap();
        let back = StateJson::from_json(&StateJson::from(&w).to_json().unwrap())
            .unwrap()
            .to_density()
            .unwrap();
        assert_eq!(back, w);
        assert!(json.contains("\"dims\""));
    }

    #[test]
    fn counterexample_amplitude_is_inverse_sqrt3() {
        let psi = negativity_counterexample();
        let a = psi.amplitudes()[8]; // |200⟩
        assert!(close(a.re, 1.0 / 3f64.sqrt(), 1e-15));
        assert!(close(SQRT_2 / 3.0, 0.4714045207910317, 1e-15));
    }
}
