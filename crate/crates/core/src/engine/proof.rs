use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::{CscResult, ExtensionState};
use crate::logic::{Clause, ClauseId, Literal, Substitution};

/// One participating clause of a step, as seen from the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentLink {
    pub source: ClauseId,
    /// Binds only variables of the source clause.
    pub substitution: Substitution,
    /// Instantiated main-boundary literal; absent for the last parent.
    pub extended: Option<Literal>,
    /// Instantiated secondary literal; absent for the first parent.
    pub secondary: Option<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeductionStep {
    pub id: ClauseId,
    pub csc: Clause,
    pub parents: Vec<ParentLink>,
}

impl DeductionStep {
    pub fn from_state(id: ClauseId, csc: &Clause, state: &ExtensionState) -> DeductionStep {
        let parents = (0..state.len())
            .map(|i| ParentLink {
                source: state.entries()[i].participant.source,
                substitution: state.parent_substitution(i),
                extended: state.extended_instance(i),
                secondary: state.secondary_instance(i),
            })
            .collect();
        DeductionStep { id, csc: csc.clone(), parents }
    }

    pub fn from_result(id: ClauseId, res: &CscResult) -> DeductionStep {
        DeductionStep::from_state(id, &res.clause, &res.state)
    }
}

/// Derivation steps in increasing id order; `conclusion` names the derived (or input) empty clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<DeductionStep>,
    pub conclusion: ClauseId,
}

impl Proof {
    /// Keep only the steps the conclusion depends on.
    pub fn trace(all: &BTreeMap<ClauseId, DeductionStep>, conclusion: ClauseId) -> Proof {
        let mut needed = BTreeSet::new();
        let mut stack = vec![conclusion];
        while let Some(id) = stack.pop() {
            if let Some(step) = all.get(&id) {
                if needed.insert(id) {
                    stack.extend(step.parents.iter().map(|p| p.source));
                }
            }
        }
        Proof { steps: needed.iter().map(|id| all[id].clone()).collect(), conclusion }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, id: ClauseId) -> Option<&DeductionStep> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Unsat(Proof),
    Sat(W),
    Unknown(String),
}

impl<W> Verdict<W> {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat(_))
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Verdict::Unsat(p) => Some(p),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Sat(w) => Some(w),
            _ => None,
        }
    }

    /// SZS status word.
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Unsat(_) => "Unsatisfiable",
            Verdict::Sat(_) => "Satisfiable",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub rounds: usize,
    pub binary_rounds: usize,
    pub closed_states: usize,
    pub derived: usize,
    pub nodes: usize,
}
