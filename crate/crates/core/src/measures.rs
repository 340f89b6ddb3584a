//! Entanglement and entropy quantifiers, inequality residuals and the
//! excessive / non-excessive classifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocols::Grouping;
use crate::states::{schmidt, DensityMatrix, PureState, SchmidtDecomposition};
use crate::tensor::{self, Dims, HermitianSpectrum};

/// Partial-transpose eigenvalues above `-NEG_CUTOFF` count as zero.
pub const NEG_CUTOFF: f64 = 1e-10;

/// Margin by which a gain must beat the communicated entanglement (and zero).
pub const CLASSIFY_TOL: f64 = 1e-9;

const ENTROPY_CUTOFF: f64 = 1e-12;
const PURITY_TOL: f64 = 1e-9;

/// The `left` side of a bipartite cut; the right side is the complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    left: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut left: Vec<usize>) -> Self {
        left.sort_unstable();
        Self { left }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn complement(&self, dims: &Dims) -> Vec<usize> {
        dims.complement(&self.left)
    }

    /// Nonempty proper subset of valid, distinct indices.
    pub fn validate(&self, dims: &Dims) -> Result<()> {
        dims.check_indices(&self.left)
            .map_err(|e| Error::InvalidBipartition(e.to_string()))?;
        if self.left.is_empty() || self.left.len() >= dims.len() {
            return Err(Error::InvalidBipartition(format!(
                "{:?} is not a nonempty proper subset of {} subsystems",
                self.left,
                dims.len()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Negativity,
    LogNegativity,
    /// Von Neumann entropy of one side; pure states only.
    VonNeumannEntropyOfCut,
    /// Linear entropy of one side; pure states only.
    LinearEntropyOfCut,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::Negativity,
        MeasureKind::LogNegativity,
        MeasureKind::VonNeumannEntropyOfCut,
        MeasureKind::LinearEntropyOfCut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Negativity => "negativity",
            MeasureKind::LogNegativity => "log_negativity",
            MeasureKind::VonNeumannEntropyOfCut => "von_neumann_entropy",
            MeasureKind::LinearEntropyOfCut => "linear_entropy",
        }
    }

    pub fn requires_pure(self) -> bool {
        matches!(
            self,
            MeasureKind::VonNeumannEntropyOfCut | MeasureKind::LinearEntropyOfCut
        )
    }

    fn of_schmidt(self, s: &SchmidtDecomposition) -> f64 {
        match self {
            MeasureKind::Negativity => s.negativity(),
            MeasureKind::LogNegativity => s.log_negativity(),
            MeasureKind::VonNeumannEntropyOfCut => s.von_neumann_entropy(),
            MeasureKind::LinearEntropyOfCut => s.linear_entropy(),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negativity" | "n" => Ok(MeasureKind::Negativity),
            "log_negativity" | "log-negativity" | "ln" => Ok(MeasureKind::LogNegativity),
            "von_neumann_entropy" | "von-neumann" | "vn" => {
                Ok(MeasureKind::VonNeumannEntropyOfCut)
            }
            "linear_entropy" | "linear" => Ok(MeasureKind::LinearEntropyOfCut),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Excessive,
    NonExcessive,
    NoGain,
}

impl Classification {
    /// `NoGain` iff `ΔE ≤ ε`; `Excessive` iff `ΔE > E_com + ε`.
    pub fn classify(delta_e: f64, e_com: f64) -> Self {
        if delta_e <= CLASSIFY_TOL {
            Classification::NoGain
        } else if delta_e > e_com + CLASSIFY_TOL {
            Classification::Excessive
        } else {
            Classification::NonExcessive
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::Excessive => "Excessive",
            Classification::NonExcessive => "NonExcessive",
            Classification::NoGain => "NoGain",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Entanglement bookkeeping of one distribution run.
///
/// `e_in = E(AC:B)`, `e_com = E(AB:C)`, `e_fin = E(A:CB)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRecord {
    pub measure: MeasureKind,
    pub e_in: f64,
    pub e_com: f64,
    pub e_fin: f64,
    pub delta_e: f64,
    pub classification: Classification,
}

impl ProtocolRecord {
    pub fn new(measure: MeasureKind, e_in: f64, e_com: f64, e_fin: f64) -> Self {
        let delta_e = e_fin - e_in;
        Self {
            measure,
            e_in,
            e_com,
            e_fin,
            delta_e,
            classification: Classification::classify(delta_e, e_com),
        }
    }

    /// `ΔE − E_com`; positive exactly when the gain beats the communication.
    pub fn excess(&self) -> f64 {
        self.delta_e - self.e_com
    }

    pub fn is_excessive(&self) -> bool {
        self.classification == Classification::Excessive
    }

    pub const CSV_HEADER: &'static str = "measure,e_in,e_com,e_fin,delta_e,classification";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.measure,
            crate::protocols::format_g9(self.e_in),
            crate::protocols::format_g9(self.e_com),
            crate::protocols::format_g9(self.e_fin),
            crate::protocols::format_g9(self.delta_e),
            self.classification
        )
    }

    /// Checks the internal consistency of the record.
    pub fn is_consistent(&self) -> bool {
        (self.delta_e - (self.e_fin - self.e_in)).abs() <= 1e-12
            && self.classification == Classification::classify(self.delta_e, self.e_com)
    }
}

fn negativity_from_spectrum(spectrum: &HermitianSpectrum) -> f64 {
    // For unit trace, (‖X‖₁ − 1)/2 is the magnitude of the negative part.
    spectrum
        .eigenvalues
        .iter()
        .filter(|&&x| x < -NEG_CUTOFF)
        .map(|x| -x)
        .sum()
}

/// `(‖ρ^{T_left}‖₁ − 1)/2`, with solver noise below the cutoff clamped to zero.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    cut.validate(rho.dims())?;
    let pt = tensor::partial_transpose(rho.matrix(), rho.dims(), cut.left())?;
    Ok(negativity_from_spectrum(&tensor::hermitian_eigenvalues(&pt)?))
}

/// `log₂(2N + 1)`.
pub fn log_negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    Ok((2.0 * negativity(rho, cut)? + 1.0).log2())
}

/// Smallest eigenvalue of the partial transpose across `cut`.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    cut.validate(rho.dims())?;
    let pt = tensor::partial_transpose(rho.matrix(), rho.dims(), cut.left())?;
    Ok(tensor::hermitian_eigenvalues(&pt)?.min())
}

/// `−Σ λ log₂ λ` over eigenvalues above 1e-12.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.spectrum()?))
}

fn entropy_of_spectrum(spectrum: &HermitianSpectrum) -> f64 {
    spectrum
        .eigenvalues
        .iter()
        .filter(|&&x| x > ENTROPY_CUTOFF)
        .map(|&x| -x * x.log2())
        .sum()
}

/// `1 − tr ρ²`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - rho.purity()
}

/// Value of `measure` across `cut` of a pure state, via its Schmidt spectrum.
pub fn pure_measure(psi: &PureState, cut: &Bipartition, measure: MeasureKind) -> Result<f64> {
    Ok(measure.of_schmidt(&schmidt(psi, cut)?))
}

struct Cuts {
    a: SchmidtDecomposition,
    b: SchmidtDecomposition,
    c: SchmidtDecomposition,
}

fn pure_cuts(psi: &PureState, g: &Grouping) -> Result<Cuts> {
    g.validate(psi.dims().len())?;
    Ok(Cuts {
        a: schmidt(psi, &g.cut_a())?,
        b: schmidt(psi, &g.cut_b())?,
        c: schmidt(psi, &g.cut_c())?,
    })
}

/// `S_B + S_C − S_BC` for a pure tripartite state (where `S_BC = S_A`).
pub fn subadditivity_residual(psi: &PureState, g: &Grouping) -> Result<f64> {
    let cuts = pure_cuts(psi, g)?;
    Ok(cuts.b.von_neumann_entropy() + cuts.c.von_neumann_entropy()
        - cuts.a.von_neumann_entropy())
}

/// `S_L(B) + S_L(C) − S_L(BC)` for a pure tripartite state.
pub fn linear_subadditivity_residual(psi: &PureState, g: &Grouping) -> Result<f64> {
    let cuts = pure_cuts(psi, g)?;
    Ok(cuts.b.linear_entropy() + cuts.c.linear_entropy() - cuts.a.linear_entropy())
}

/// `N(AC:B) + N(AB:C) − √(2/(d_A(d_A−1)))·N(A:CB)` with `d_A` the Schmidt rank
/// of A. Returns `+∞` when `d_A = 1`: the bound is vacuous there.
pub fn lemma1_residual(psi: &PureState, g: &Grouping) -> Result<f64> {
    let cuts = pure_cuts(psi, g)?;
    let d_a = cuts.a.rank as f64;
    if cuts.a.rank < 2 {
        return Ok(f64::INFINITY);
    }
    let factor = (2.0 / (d_a * (d_a - 1.0))).sqrt();
    Ok(cuts.b.negativity() + cuts.c.negativity() - factor * cuts.a.negativity())
}

/// `N(AC:B) + N(AB:C) − N(A:CB)`; nonnegative whenever A is a qubit.
pub fn theorem1_residual(psi: &PureState, g: &Grouping) -> Result<f64> {
    let cuts = pure_cuts(psi, g)?;
    Ok(cuts.b.negativity() + cuts.c.negativity() - cuts.a.negativity())
}

/// `L(AC:B) + L(AB:C) − L(A:CB)` with logarithmic negativity.
pub fn theorem2_residual(psi: &PureState, g: &Grouping) -> Result<f64> {
    let cuts = pure_cuts(psi, g)?;
    Ok(cuts.b.log_negativity() + cuts.c.log_negativity() - cuts.a.log_negativity())
}

/// Evaluates `measure` on the three protocol cuts of `rho`.
pub fn protocol_record(
    rho: &DensityMatrix,
    g: &Grouping,
    measure: MeasureKind,
) -> Result<ProtocolRecord> {
    g.validate(rho.dims().len())?;
    let eval = |cut: Bipartition| -> Result<f64> {
        match measure {
            MeasureKind::Negativity => negativity(rho, &cut),
            MeasureKind::LogNegativity => log_negativity(rho, &cut),
            MeasureKind::VonNeumannEntropyOfCut => von_neumann_entropy(&rho.reduced(cut.left())?),
            MeasureKind::LinearEntropyOfCut => Ok(linear_entropy(&rho.reduced(cut.left())?)),
        }
    };
    if measure.requires_pure() && (rho.purity() - 1.0).abs() > PURITY_TOL {
        return Err(Error::MixedStateEntropy);
    }
    Ok(ProtocolRecord::new(
        measure,
        eval(g.cut_b())?,
        eval(g.cut_c())?,
        eval(g.cut_a())?,
    ))
}

/// Same as [`protocol_record`] for a pure state, through Schmidt spectra.
pub fn protocol_record_pure(
    psi: &PureState,
    g: &Grouping,
    measure: MeasureKind,
) -> Result<ProtocolRecord> {
    let cuts = pure_cuts(psi, g)?;
    Ok(ProtocolRecord::new(
        measure,
        measure.of_schmidt(&cuts.b),
        measure.of_schmidt(&cuts.c),
        measure.of_schmidt(&cuts.a),
    ))
}
