//! Thermal negativity, local quantum uncertainty and local quantum Fisher
//! information for a two-qubit Heisenberg XYZ chain with DM and KSEA
//! couplings in a magnetic field, optionally dephased on one qubit.

pub mod app;
pub mod cli;
pub mod decoherence;
pub mod error;
pub mod model;
pub mod numkernel;
pub mod quantifiers;

pub use error::{QcorrError, Result};
pub use model::{DensityMatrix, ModelParams, Variant, XState};
pub use quantifiers::{correlations, correlations_with, CorrelationTriple, NegativityConvention};
