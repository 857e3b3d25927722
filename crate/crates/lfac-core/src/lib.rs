//! Frequency-dependent underground cable parameters and variable-frequency
//! AC optimal power flow.
//!
//! The crate has two halves:
//!
//! * a numeric core, generic over the scalar type ([`scalar::Real`], `f32`
//!   or `f64`): distributed cable impedance/admittance matrices with skin
//!   and earth-return effects, the exact six-conductor terminal solution,
//!   sheath elimination under single-point bonding, positive-sequence Pi
//!   extraction, and polynomial frequency-model fitting;
//! * an `f64` network layer: case files for multi-frequency networks coupled
//!   by AC/AC converter interfaces, frequency-dependent branch parameter
//!   evaluation, and an interior-point optimal power flow solver that can
//!   treat subnetwork frequency as a decision variable.

pub mod bessel;
pub mod cable;
pub mod error;
pub mod linalg;
pub mod network;
pub mod opf;
pub mod polyfit;
pub mod scalar;
pub mod sequence;

pub use error::{Error, Result};

// Concrete f64 aliases for the generic core types.
pub type MaterialProperties64 = cable::MaterialProperties<f64>;
pub type CableDesign64 = cable::CableDesign<f64>;
pub type DistributedMatrices64 = cable::DistributedMatrices<f64>;
pub type TerminalMatrix64 = sequence::TerminalMatrix<f64>;
pub type PiModel64 = sequence::PiModel<f64>;
pub type SequenceOptions64 = sequence::SequenceOptions<f64>;
pub type PolyCableModel64 = polyfit::PolyCableModel<f64>;
pub type FitReport64 = polyfit::FitReport<f64>;
