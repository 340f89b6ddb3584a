//! Kraus channels, their Choi matrices and entanglement-breaking certification.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::measures::{negativity, Bipartition};
use crate::states::{bell_phi_plus, DensityMatrix};
use crate::tensor::{self, paulis, ComplexMatrix, Dims};

/// Allowed deviation of `Σ K†K` from the identity.
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kraus_ops: Vec<ComplexMatrix>,
    label: String,
    parameter: Option<f64>,
}

impl KrausChannel {
    /// Validated constructor: square operators of one size, trace preserving.
    pub fn new(kraus_ops: Vec<ComplexMatrix>, label: impl Into<String>, parameter: Option<f64>) -> Result<Self> {
        let label = label.into();
        let d = kraus_ops
            .first()
            .map(ComplexMatrix::rows)
            .ok_or_else(|| Error::InvalidChannelSpec(format!("{label}: no Kraus operators")))?;
        for k in &kraus_ops {
            if !k.is_square() || k.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: k.rows().max(k.cols()),
                });
            }
        }
        let ch = Self {
            kraus_ops,
            label,
            parameter,
        };
        let residual = ch.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::InvalidChannelSpec(format!(
                "{}: completeness residual {residual:.3e}",
                ch.label
            )));
        }
        Ok(ch)
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn parameter(&self) -> Option<f64> {
        self.parameter
    }

    /// Input (= output) dimension.
    pub fn dim(&self) -> usize {
        self.kraus_ops[0].rows()
    }

    /// `max |Σ K†K − I|` entrywise.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, k| &acc + &(&k.adjoint() * k));
        sum.max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// Action on a single-system operator.
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.rows();
        self.kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, k| {
                &acc + &(&(k * rho) * &k.adjoint())
            })
    }
}

impl fmt::Display for KrausChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(p) => write!(f, "{}:{}", self.label, p),
            None => f.write_str(&self.label),
        }
    }
}

fn sqrt_c(x: f64) -> Complex64 {
    Complex64::new(x.sqrt(), 0.0)
}

fn build(ops: Vec<ComplexMatrix>, label: &str, parameter: Option<f64>) -> KrausChannel {
    KrausChannel::new(ops, label, parameter).expect("closed-form Kraus set is complete")
}

/// Qubit identity channel.
pub fn identity() -> KrausChannel {
    build(vec![ComplexMatrix::identity(2)], "identity", None)
}

/// `{√(1−δ/2) I, √(δ/2) σz}`: coherences shrink by `1 − δ`.
pub fn dephasing(delta: f64) -> Result<KrausChannel> {
    check_unit_interval("delta", delta)?;
    Ok(build(
        vec![
            ComplexMatrix::identity(2).scale(sqrt_c(1.0 - delta / 2.0)),
            paulis::sigma_z().scale(sqrt_c(delta / 2.0)),
        ],
        "dephasing",
        Some(delta),
    ))
}

/// `{√(1−δ) I, √(δ/3) σx, √(δ/3) σy, √(δ/3) σz}`.
pub fn depolarizing(delta: f64) -> Result<KrausChannel> {
    check_unit_interval("delta", delta)?;
    Ok(pauli_channel(1.0 - delta, "depolarizing", delta))
}

fn pauli_channel(weight_identity: f64, label: &str, parameter: f64) -> KrausChannel {
    let w = (1.0 - weight_identity) / 3.0;
    build(
        vec![
            ComplexMatrix::identity(2).scale(sqrt_c(weight_identity)),
            paulis::sigma_x().scale(sqrt_c(w)),
            paulis::sigma_y().scale(sqrt_c(w)),
            paulis::sigma_z().scale(sqrt_c(w)),
        ],
        label,
        Some(parameter),
    )
}

/// `{|0⟩⟨0| + √(1−δ)|1⟩⟨1|, √δ |0⟩⟨1|}`.
pub fn amplitude_damping(delta: f64) -> Result<KrausChannel> {
    check_unit_interval("delta", delta)?;
    Ok(build(
        vec![
            ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - delta).sqrt()]]),
            ComplexMatrix::from_real_rows(&[&[0.0, delta.sqrt()], &[0.0, 0.0]]),
        ],
        "ad",
        Some(delta),
    ))
}

/// `{I/√2, σi/√6}`: a Pauli channel with identity weight 1/2.
pub fn lambda1() -> KrausChannel {
    let mut ch = pauli_channel(0.5, "lambda1", 0.0);
    ch.parameter = None;
    ch
}

/// `{√q I, √((1−q)/3) σi}`.
pub fn lambda2(q: f64) -> Result<KrausChannel> {
    check_unit_interval("q", q)?;
    Ok(pauli_channel(q, "lambda2", q))
}

/// `Σ_k K_k ρ K_k†` with the channel acting on subsystem `target`.
pub fn apply_channel(rho: &DensityMatrix, ch: &KrausChannel, target: usize) -> Result<DensityMatrix> {
    let dims = rho.dims();
    dims.check_indices(&[target])?;
    if dims.get(target) != ch.dim() {
        return Err(Error::DimensionMismatch {
            expected: dims.get(target),
            actual: ch.dim(),
        });
    }
    let n = dims.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for k in ch.kraus_ops() {
        out = &out + &tensor::sandwich(rho.matrix(), k, &[target], dims);
    }
    Ok(rho.with_matrix(out))
}

/// Normalized Choi state `(I ⊗ Λ)(|φ₊⟩⟨φ₊|)` on dims `[d, d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    pub matrix: DensityMatrix,
}

pub fn choi(ch: &KrausChannel) -> Result<ChoiMatrix> {
    let d = ch.dim();
    let phi = if d == 2 {
        bell_phi_plus().density()
    } else {
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            amps[i * d + i] = Complex64::new(1.0, 0.0);
        }
        crate::states::pure_from_amplitudes(Dims::new(vec![d, d])?, amps)?.density()
    };
    Ok(ChoiMatrix {
        matrix: apply_channel(&phi, ch, 1)?,
    })
}

/// True iff the Choi state is PPT, which for qubit channels is equivalent to
/// separability and hence to the measure-and-prepare form.
pub fn is_entanglement_breaking(ch: &KrausChannel) -> Result<bool> {
    if ch.dim() != 2 {
        return Err(Error::NonQubitChannel(ch.dim()));
    }
    let c = choi(ch)?;
    Ok(negativity(&c.matrix, &Bipartition::new(vec![0]))? == 0.0)
}

/// Noise families that take one strength parameter in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelFamily {
    Identity,
    Dephasing,
    Depolarizing,
    AmplitudeDamping,
    Lambda1,
    Lambda2,
}

impl ChannelFamily {
    /// The three transit-noise models of the noisy distribution protocols.
    pub const NOISE: [ChannelFamily; 3] = [
        ChannelFamily::Dephasing,
        ChannelFamily::Depolarizing,
        ChannelFamily::AmplitudeDamping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelFamily::Identity => "identity",
            ChannelFamily::Dephasing => "dephasing",
            ChannelFamily::Depolarizing => "depolarizing",
            ChannelFamily::AmplitudeDamping => "ad",
            ChannelFamily::Lambda1 => "lambda1",
            ChannelFamily::Lambda2 => "lambda2",
        }
    }

    pub fn takes_parameter(self) -> bool {
        !matches!(self, ChannelFamily::Identity | ChannelFamily::Lambda1)
    }

    /// Instance with strength `param`; ignored by parameter-free families.
    pub fn build(self, param: f64) -> Result<KrausChannel> {
        match self {
            ChannelFamily::Identity => Ok(identity()),
            ChannelFamily::Dephasing => dephasing(param),
            ChannelFamily::Depolarizing => depolarizing(param),
            ChannelFamily::AmplitudeDamping => amplitude_damping(param),
            ChannelFamily::Lambda1 => Ok(lambda1()),
            ChannelFamily::Lambda2 => lambda2(param),
        }
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "id" | "none" => Ok(ChannelFamily::Identity),
            "dephasing" | "ph" => Ok(ChannelFamily::Dephasing),
            "depolarizing" | "pol" => Ok(ChannelFamily::Depolarizing),
            "ad" | "amplitude_damping" | "amplitude-damping" => Ok(ChannelFamily::AmplitudeDamping),
            "lambda1" => Ok(ChannelFamily::Lambda1),
            "lambda2" => Ok(ChannelFamily::Lambda2),
            _ => Err(Error::InvalidChannelSpec(s.to_string())),
        }
    }
}

/// Parsed `family[:strength]` string such as `"dephasing:0.3"` or `"identity"`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub family: ChannelFamily,
    pub parameter: Option<f64>,
}

impl ChannelSpec {
    pub fn build(&self) -> Result<KrausChannel> {
        match (self.family.takes_parameter(), self.parameter) {
            (true, Some(p)) => self.family.build(p),
            (true, None) => Err(Error::InvalidChannelSpec(format!(
                "{} needs a strength, e.g. {}:0.3",
                self.family, self.family
            ))),
            (false, _) => self.family.build(0.0),
        }
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let family: ChannelFamily = name.parse()?;
        let parameter = match param {
            Some(p) => {
                let v: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidChannelSpec(s.to_string()))?;
                check_unit_interval("delta", v)?;
                Some(v)
            }
            None => None,
        };
        if parameter.is_some() && !family.takes_parameter() {
            return Err(Error::InvalidChannelSpec(format!("{family} takes no parameter")));
        }
        Ok(Self { family, parameter })
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(p) => write!(f, "{}:{}", self.family, p),
            None => write!(f, "{}", self.family),
        }
    }
}

/// Parses and builds a channel from a spec string.
pub fn parse_channel(spec: &str) -> Result<KrausChannel> {
    spec.parse::<ChannelSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ancilla_alpha, haar_random_pure, werner};

    fn plus() -> DensityMatrix {
        ancilla_alpha(1.0).unwrap()
    }

    #[test]
    fn zero_strength_is_identity() {
        let rho = haar_random_pure(Dims::qubits(1), 1).density();
        for ch in [
            dephasing(0.0).unwrap(),
            depolarizing(0.0).unwrap(),
            amplitude_damping(0.0).unwrap(),
            lambda2(1.0).unwrap(),
            identity(),
        ] {
            let out = apply_channel(&rho, &ch, 0).unwrap();
            assert!(out.matrix().approx_eq(rho.matrix(), 1e-15), "{ch}");
        }
    }

    #[test]
    fn full_dephasing_kills_coherence() {
        let out = apply_channel(&plus(), &dephasing(1.0).unwrap(), 0).unwrap();
        assert!(out
            .matrix()
            .approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), 1e-15));
        let half = apply_channel(&plus(), &dephasing(0.4).unwrap(), 0).unwrap();
        assert!((half.matrix()[(0, 1)].re - 0.5 * 0.6).abs() < 1e-15);
    }

    #[test]
    fn full_damping_resets_to_ground() {
        let rho = haar_random_pure(Dims::qubits(1), 8).density();
        let out = apply_channel(&rho, &amplitude_damping(1.0).unwrap(), 0).unwrap();
        assert!(out
            .matrix()
            .approx_eq(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0]), 1e-15));
    }

    #[test]
    fn twirl_maximally_mixes_target() {
        let rho = haar_random_pure(Dims::new(vec![2, 3]).unwrap(), 4).density();
        let out = apply_channel(&rho, &depolarizing(0.75).unwrap(), 0).unwrap();
        let marginal = out.reduced(&[0]).unwrap();
        assert!(marginal
            .matrix()
            .approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), 1e-14));
        assert!(out.reduced(&[1]).unwrap().matrix().approx_eq(
            rho.reduced(&[1]).unwrap().matrix(),
            1e-14
        ));
    }

    #[test]
    fn dephased_bell_negativity() {
        let bell = bell_phi_plus().density();
        for delta in [0.0, 0.25, 0.5, 0.9] {
            let out = apply_channel(&bell, &dephasing(delta).unwrap(), 1).unwrap();
            let n = negativity(&out, &Bipartition::new(vec![0])).unwrap();
            assert!((n - (1.0 - delta) / 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn choi_matrices() {
        let id = choi(&identity()).unwrap();
        assert!(id.matrix.matrix().approx_eq(bell_phi_plus().density().matrix(), 1e-15));
        for delta in [0.0, 0.3, 0.5, 0.75] {
            let c = choi(&depolarizing(delta).unwrap()).unwrap();
            let w = werner(1.0 - 4.0 * delta / 3.0).unwrap();
            assert!(c.matrix.matrix().approx_eq(w.matrix(), 1e-14));
        }
        for q in [0.25, 0.4, 0.7, 1.0] {
            let c = choi(&lambda2(q).unwrap()).unwrap();
            let w = werner((4.0 * q - 1.0) / 3.0).unwrap();
            assert!(c.matrix.matrix().approx_eq(w.matrix(), 1e-14));
        }
        c_validates(&choi(&amplitude_damping(0.37).unwrap()).unwrap());
    }

    fn c_validates(c: &ChoiMatrix) {
        c.matrix.validate().unwrap();
        assert!((c.matrix.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eb_examples() {
        assert!(is_entanglement_breaking(&depolarizing(0.5).unwrap()).unwrap());
        assert!(!is_entanglement_breaking(&depolarizing(0.49).unwrap()).unwrap());
        assert!(is_entanglement_breaking(&lambda1()).unwrap());
        assert!(!is_entanglement_breaking(&dephasing(0.99).unwrap()).unwrap());
        assert!(is_entanglement_breaking(&dephasing(1.0).unwrap()).unwrap());
        assert!(is_entanglement_breaking(&amplitude_damping(1.0).unwrap()).unwrap());
        assert!(!is_entanglement_breaking(&amplitude_damping(0.999).unwrap()).unwrap());
        assert!(is_entanglement_breaking(&lambda2(0.5).unwrap()).unwrap());
        assert!(!is_entanglement_breaking(&lambda2(0.501).unwrap()).unwrap());
        assert!(!is_entanglement_breaking(&identity()).unwrap());
    }

    #[test]
    fn eb_rejects_qutrits() {
        let ch = KrausChannel::new(vec![ComplexMatrix::identity(3)], "id3", None).unwrap();
        assert_eq!(is_entanglement_breaking(&ch), Err(Error::NonQubitChannel(3)));
    }

    #[test]
    fn constructor_checks() {
        assert!(dephasing(1.2).is_err());
        assert!(depolarizing(-0.1).is_err());
        assert!(amplitude_damping(f64::NAN).is_err());
        assert!(lambda2(2.0).is_err());
        let not_tp = vec![ComplexMatrix::identity(2).scale_real(0.9)];
        assert!(KrausChannel::new(not_tp, "leaky", None).is_err());
        assert!(KrausChannel::new(vec![], "empty", None).is_err());
    }

    #[test]
    fn apply_channel_checks_dimensions() {
        let rho = haar_random_pure(Dims::new(vec![3, 2]).unwrap(), 2).density();
        assert!(matches!(
            apply_channel(&rho, &identity(), 0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(apply_channel(&rho, &identity(), 2).is_err());
        assert!(apply_channel(&rho, &identity(), 1).is_ok());
    }

    #[test]
    fn dephasings_commute() {
        let rho = haar_random_pure(Dims::qubits(2), 21).density();
        let (a, b) = (dephasing(0.2).unwrap(), dephasing(0.7).unwrap());
        let ab = apply_channel(&apply_channel(&rho, &a, 0).unwrap(), &b, 0).unwrap();
        let ba = apply_channel(&apply_channel(&rho, &b, 0).unwrap(), &a, 0).unwrap();
        assert!(ab.matrix().approx_eq(ba.matrix(), 1e-12));
    }

    #[test]
    fn spec_strings() {
        let cases = [
            ("dephasing:0.3", ChannelFamily::Dephasing, Some(0.3)),
            ("depolarizing:0.5", ChannelFamily::Depolarizing, Some(0.5)),
            ("ad:1.0", ChannelFamily::AmplitudeDamping, Some(1.0)),
            ("lambda2:0.4", ChannelFamily::Lambda2, Some(0.4)),
            ("identity", ChannelFamily::Identity, None),
            ("lambda1", ChannelFamily::Lambda1, None),
            ("depolarizing", ChannelFamily::Depolarizing, None),
        ];
        for (s, family, parameter) in cases {
            assert_eq!(s.parse::<ChannelSpec>().unwrap(), ChannelSpec { family, parameter });
        }
        assert_eq!(parse_channel("ad:1.0").unwrap(), amplitude_damping(1.0).unwrap());
        for bad in ["", "foo:0.1", "dephasing:x", "dephasing:1.5", "identity:0.2"] {
            assert!(bad.parse::<ChannelSpec>().is_err(), "{bad}");
        }
        assert!(parse_channel("dephasing").is_err());
        assert_eq!(
            "dephasing:0.3".parse::<ChannelSpec>().unwrap().to_string(),
            "dephasing:0.3"
        );
    }
}
