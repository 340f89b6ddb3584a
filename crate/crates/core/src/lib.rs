//! Simulation of entanglement distribution protocols.
//!
//! A principal system of two particles A (Alice) and B (Bob) gains
//! entanglement while a carrier C travels between the laboratories. The crate
//! evaluates the initial (`AC:B`), communicated (`AB:C`) and final (`A:CB`)
//! entanglement of such protocols and classifies them as excessive when the
//! gain exceeds what the carrier held.
//!
//! Modules, bottom up:
//!
//! - [`tensor`]: dense complex matrices, partial trace and transpose,
//!   Hermitian eigenvalues, local operators and subsystem permutations.
//! - [`states`]: pure and mixed states, Schmidt spectra, Haar sampling.
//! - [`measures`]: negativity, logarithmic negativity, entropies, inequality
//!   residuals and [`measures::ProtocolRecord`].
//! - [`channels`]: Kraus channels, Choi matrices, entanglement-breaking tests.
//! - [`protocols`]: distribution scenarios, sweeps and violation searches.
//! - [`verify`]: the reproducibility checks run by `entdist verify`.
//! - [`par`]: data-parallel evaluation with a sequential fallback.
//!
//! ```
//! use entdist::measures::{protocol_record, MeasureKind};
//! use entdist::protocols::{rho_q, Grouping};
//!
//! let rho = rho_q(0.45)?;
//! let record = protocol_record(&rho, &Grouping::ame_b2(), MeasureKind::LogNegativity)?;
//! assert!(record.is_excessive());
//! # Ok::<(), entdist::Error>(())
//! ```

pub mod channels;
pub mod error;
pub mod measures;
pub mod par;
pub mod protocols;
pub mod states;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
