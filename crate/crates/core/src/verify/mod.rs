//! Checks that do not go through the kernel: proof replay, truth tables, a small DPLL,
//! linear resolution chains, ground entailment and ordered-extension enumeration.

pub mod chain;
pub mod checker;
pub mod dpll;
pub mod enumerate;
pub mod ground;
pub mod truth_table;

use thiserror::Error;

pub use chain::{linear_chain, linear_chain_of, LinearChain};
pub use checker::{check_proof, Rejection};
pub use enumerate::{ordered_extensions, OrderedExtension, MAX_ENUMERATED_STATES};
pub use ground::{ground_entails, GroundBase, MAX_GROUND_CLAUSES};
pub use truth_table::{entails, truth_table_sat, TruthTableReport, MAX_VARIABLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("literal {0} has arguments; a propositional clause set is required")]
    NotPropositional(String),
    #[error("{found} variables exceed the truth-table limit of {max}")]
    TooManyVariables { found: usize, max: usize },
    #[error("grounding produced more than {max} clauses")]
    GroundingTooLarge { max: usize },
    #[error("chain step {step}: {reason}")]
    BrokenChain { step: usize, reason: String },
}
