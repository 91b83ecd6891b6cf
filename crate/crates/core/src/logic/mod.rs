//! Clause syntax, substitutions, unification and subsumption.

pub mod clause;
pub mod literal;
pub mod subst;
pub mod subsume;
pub mod term;
pub mod unify;

use thiserror::Error;

pub use clause::{Clause, ClauseId, ClauseSet, Origin, SymbolTable};
pub use literal::Literal;
pub use subst::Substitution;
pub use subsume::subsumes;
pub use term::{sym, Symbol, Term};
pub use unify::{mgu_complementary, unify_atoms, unify_complementary, unify_terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("occurs check: {var} occurs in {term}")]
    OccursCheck { var: String, term: String },
    #[error("{kind} {name} used with arity {found}, previously {expected}")]
    ArityMismatch { kind: &'static str, name: String, expected: usize, found: usize },
}
