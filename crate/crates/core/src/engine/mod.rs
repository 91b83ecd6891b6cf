//! Saturation machinery shared by the propositional and first-order engines.

pub mod config;
pub mod proof;
pub mod search;
pub mod store;

use thiserror::Error;

use crate::kernel::KernelError;

pub use config::{Strategy, StrategyConfig};
pub use proof::{DeductionStep, ParentLink, Proof, Stats, Verdict};
pub use search::{Mode, Observer, SatDetector, Search};
pub use store::{Rejected, Store};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("soundness violation: {0}")]
    Soundness(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}
