//! Contradiction separation by standard extension, for propositional and first-order clauses.

pub mod engine;
pub mod fol;
pub mod io;
pub mod kernel;
pub mod logic;
pub mod prop;
pub mod verify;
