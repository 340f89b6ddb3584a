//! Distribution scenarios: the five-qubit AME family, catalysis, the three
//! noisy c-phase protocols, the entanglement-breaking no-gain check, random
//! violation searches and parameter sweeps.

mod grouping;
mod search;
mod sweep;

pub use grouping::Grouping;
pub use search::{search_violation, search_violation_with, Residual, SearchReport, Witness};
pub use sweep::{
    figure_sweeps, format_g9, sweep, sweep_with, Axis, Figure, FigureOptions, Scenario,
    SweepGrid, SweepPoint, SweepResult, SWEEP_CSV_HEADER,
};

use serde::{Deserialize, Serialize};

use crate::channels::{amplitude_damping, apply_channel, is_entanglement_breaking, lambda1, lambda2, KrausChannel};
use crate::error::{check_unit_interval, Result};
use crate::measures::{negativity, protocol_record, Bipartition, MeasureKind, ProtocolRecord};
use crate::states::{ame5, ancilla_alpha, werner, DensityMatrix};
use crate::tensor::ComplexMatrix;

/// Zero-negativity threshold for the PPT/NPT pattern.
pub const PPT_TOL: f64 = 1e-9;

/// `Λ₁` on qubit 0 and `Λ₂(q)` on qubit 1 of the AME state.
pub fn rho_q(q: f64) -> Result<DensityMatrix> {
    check_unit_interval("q", q)?;
    let rho = apply_channel(&ame5().density(), &lambda1(), 0)?;
    apply_channel(&rho, &lambda2(q)?, 1)
}

/// The six cuts of the separability table, as (label, left side) with
/// 1-based qubit labels in the label and 0-based indices in the side.
pub const TABLE1_PARTITIONS: [(&str, &[usize]); 6] = [
    ("12:345", &[0, 1]),
    ("2:1345", &[1]),
    ("1:2345", &[0]),
    ("3:1245", &[2]),
    ("13:245", &[0, 2]),
    ("123:45", &[0, 1, 2]),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Entry {
    pub partition: String,
    pub negativity: f64,
    /// Zero negativity; reported as PPT rather than proven separable.
    pub ppt: bool,
}

impl Table1Entry {
    pub fn flag(&self) -> &'static str {
        if self.ppt {
            "PPT"
        } else {
            "NPT"
        }
    }
}

/// Negativity and PPT flag of `rho_q(q)` across each table partition.
pub fn table1_scan(q: f64) -> Result<Vec<Table1Entry>> {
    let rho = rho_q(q)?;
    TABLE1_PARTITIONS
        .iter()
        .map(|(label, left)| {
            let n = negativity(&rho, &Bipartition::new(left.to_vec()))?;
            Ok(Table1Entry {
                partition: label.to_string(),
                negativity: n,
                ppt: n <= PPT_TOL,
            })
        })
        .collect()
}

/// Logarithmic-negativity record of `rho_q(q)` under `grouping`.
pub fn ame_protocol(q: f64, grouping: &Grouping) -> Result<ProtocolRecord> {
    protocol_record(&rho_q(q)?, grouping, MeasureKind::LogNegativity)
}

/// Records for the plain grouping A={1,4,5}, B={2}, C={3} and the catalysed
/// grouping A={4,5}, B={1,2}, C={3} (qubit labels 1-based).
pub fn catalysis_compare(q: f64) -> Result<(ProtocolRecord, ProtocolRecord)> {
    let rho = rho_q(q)?;
    Ok((
        protocol_record(&rho, &Grouping::ame_b2(), MeasureKind::LogNegativity)?,
        protocol_record(&rho, &Grouping::catalysed(), MeasureKind::LogNegativity)?,
    ))
}

/// Controlled-phase gate `diag(1, 1, 1, −1)`.
pub fn cphase() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 1.0, -1.0])
}

/// When the communicated entanglement `E(AB:C)` is read in noisy protocols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComTiming {
    /// After the transit noise has acted on C (what actually arrives).
    #[default]
    AfterChannel,
    /// While C is still noiseless, just before it enters the channel.
    BeforeChannel,
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn cut(side: usize) -> Bipartition {
    Bipartition::new(vec![side])
}

fn initial_abc(p: f64, s: f64) -> Result<DensityMatrix> {
    Ok(werner(p)?.tensor(&ancilla_alpha(s)?))
}

fn cz_ac(rho: &DensityMatrix) -> Result<DensityMatrix> {
    rho.apply_unitary(&cphase(), &[A, C])
}

/// Indirect protocol: Werner pair on A,B and ancilla C at Alice; c-phase on
/// A,C; C travels to Bob through `channel`.
pub fn indirect_noisy(p: f64, s: f64, channel: &KrausChannel) -> Result<ProtocolRecord> {
    indirect_noisy_with(p, s, channel, ComTiming::default())
}

pub fn indirect_noisy_with(
    p: f64,
    s: f64,
    channel: &KrausChannel,
    timing: ComTiming,
) -> Result<ProtocolRecord> {
    let rho = initial_abc(p, s)?;
    let e_in = negativity(&rho, &cut(B))?;
    let rho = cz_ac(&rho)?;
    let e_com_before = negativity(&rho, &cut(C))?;
    let rho = apply_channel(&rho, channel, C)?;
    let e_com = match timing {
        ComTiming::AfterChannel => negativity(&rho, &cut(C))?,
        ComTiming::BeforeChannel => e_com_before,
    };
    let e_fin = negativity(&rho, &cut(A))?;
    Ok(ProtocolRecord::new(MeasureKind::Negativity, e_in, e_com, e_fin))
}

/// Direct-then-indirect protocol: B is first sent to Bob through `channel`,
/// then A and C interact and C follows through the same channel.
///
/// Returns `E(AC:B)` after the direct stage together with the record, whose
/// `e_in` is that same value.
pub fn direct_then_indirect(
    p: f64,
    s: f64,
    channel: &KrausChannel,
) -> Result<(f64, ProtocolRecord)> {
    direct_then_indirect_with(p, s, channel, ComTiming::default())
}

pub fn direct_then_indirect_with(
    p: f64,
    s: f64,
    channel: &KrausChannel,
    timing: ComTiming,
) -> Result<(f64, ProtocolRecord)> {
    let rho = initial_abc(p, s)?;
    let rho = apply_channel(&rho, channel, B)?;
    let rho = cz_ac(&rho)?;
    let e_after_direct = negativity(&rho, &cut(B))?;
    let e_com_before = negativity(&rho, &cut(C))?;
    let rho = apply_channel(&rho, channel, C)?;
    let e_com = match timing {
        ComTiming::AfterChannel => negativity(&rho, &cut(C))?,
        ComTiming::BeforeChannel => e_com_before,
    };
    let e_fin = negativity(&rho, &cut(A))?;
    Ok((
        e_after_direct,
        ProtocolRecord::new(MeasureKind::Negativity, e_after_direct, e_com, e_fin),
    ))
}

/// Direct-then-indirect with amplitude-damping noise of strength
/// `local_delta` in both laboratories; C starts in `|+⟩`.
///
/// Stage 1: B crosses `channel` while A and C decay locally. Stage 2: C
/// crosses `channel` while A and B decay locally.
pub fn noisy_labs(p: f64, channel: &KrausChannel, local_delta: f64) -> Result<ProtocolRecord> {
    noisy_labs_with(p, channel, local_delta, ComTiming::default())
}

pub fn noisy_labs_with(
    p: f64,
    channel: &KrausChannel,
    local_delta: f64,
    timing: ComTiming,
) -> Result<ProtocolRecord> {
    let local = amplitude_damping(local_delta)?;
    let rho = cz_ac(&initial_abc(p, 1.0)?)?;

    let rho = apply_channel(&rho, channel, B)?;
    let rho = apply_channel(&rho, &local, A)?;
    let rho = apply_channel(&rho, &local, C)?;
    let e_in = negativity(&rho, &cut(B))?;
    let e_com_before = negativity(&rho, &cut(C))?;

    let rho = apply_channel(&rho, channel, C)?;
    let rho = apply_channel(&rho, &local, A)?;
    let rho = apply_channel(&rho, &local, B)?;
    let e_com = match timing {
        ComTiming::AfterChannel => negativity(&rho, &cut(C))?,
        ComTiming::BeforeChannel => e_com_before,
    };
    let e_fin = negativity(&rho, &cut(A))?;
    Ok(ProtocolRecord::new(MeasureKind::Negativity, e_in, e_com, e_fin))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EbCheck {
    /// `N(A:CB)` after the channel minus `N(AC:B)` before it.
    pub delta_e: f64,
    /// Whether the channel passed entanglement-breaking certification.
    pub certified_eb: bool,
}

impl EbCheck {
    pub fn no_gain(&self) -> bool {
        self.delta_e <= crate::measures::CLASSIFY_TOL
    }
}

/// Sends every subsystem of C through `channel` and reports the negativity
/// gain across the laboratories. The check runs even when the channel is not
/// certified entanglement breaking; `certified_eb` records the precondition.
pub fn eb_no_gain_check(
    channel: &KrausChannel,
    rho: &DensityMatrix,
    grouping: &Grouping,
) -> Result<EbCheck> {
    grouping.validate(rho.dims().len())?;
    let certified_eb = channel.dim() == 2 && is_entanglement_breaking(channel)?;
    let e_in = negativity(rho, &grouping.cut_b())?;
    let mut out = rho.clone();
    for &c in grouping.c() {
        out = apply_channel(&out, channel, c)?;
    }
    let e_fin = negativity(&out, &grouping.cut_a())?;
    Ok(EbCheck {
        delta_e: e_fin - e_in,
        certified_eb,
    })
}
