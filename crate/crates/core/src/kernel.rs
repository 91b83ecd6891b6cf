//! Incremental construction of a standard contradiction along a chain of clauses.
//!
//! A state holds participants `D_1 .. D_k` (each renamed apart) and a single accumulated
//! unifier. Entry `i` has an optional secondary literal (the one unified against the
//! previous entry's main-boundary literal) and an optional main-boundary literal. Under
//! the accumulated unifier:
//!
//! * `minus(1) = {x_1}`
//! * `minus(i) = {x_i, ~x_{i-1}} ∪ absorbed(i)` for `1 < i < k`
//! * `minus(k) = {~x_{k-1}} ∪ absorbed(k)`
//!
//! where `absorbed(i)` is every literal of the instance complementary to some earlier
//! main-boundary literal. The derived clause is the union of all `plus(i)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::{mgu_complementary, Clause, ClauseId, Literal, LogicError, Origin, Substitution, Symbol};

pub const DEFAULT_MAX_WIDTH: usize = 64;
pub const DEFAULT_PRODUCT_CAP: u64 = 1_000_000;
pub const DEFAULT_MAX_TERM_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("literal {literal} is not in clause {clause}")]
    LiteralNotInClause { literal: String, clause: String },
    #[error("the last entry has no main-boundary literal to extend from")]
    NoPendingLiteral,
    #[error("the last entry already has a main-boundary literal")]
    PendingLiteral,
    #[error("contradiction width {max} reached")]
    WidthExceeded { max: usize },
    #[error("participant shares variables with the state")]
    NotVariableDisjoint,
    #[error("{candidate} does not unify with the complement of {pending}")]
    NotComplementary { pending: String, candidate: String },
    #[error("main-boundary literals {first} and {second} collide")]
    BoundaryCollision { first: String, second: String },
    #[error("term depth {depth} exceeds limit {max}")]
    TermDepthExceeded { depth: usize, max: usize },
    #[error("{literal} cannot be a main-boundary literal: {reason}")]
    InvalidSelection { literal: String, reason: &'static str },
    #[error("closing needs at least two entries")]
    TooFewEntries,
    #[error("standard-contradiction check exceeded {cap} nodes")]
    ProductCapExceeded { cap: u64 },
    #[error("standard-contradiction check needs a nonempty family of nonempty clauses")]
    EmptyFamily,
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

impl KernelError {
    /// Rejections caused by the chosen literals rather than by misuse of the API.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            KernelError::NotComplementary { .. }
                | KernelError::BoundaryCollision { .. }
                | KernelError::TermDepthExceeded { .. }
                | KernelError::InvalidSelection { .. }
                | KernelError::WidthExceeded { .. }
        )
    }
}

/// True iff every tuple picking one literal per clause contains a complementary pair.
///
/// Depth-first over the product, pruning a branch as soon as its prefix holds a pair.
/// `cap` bounds the number of visited nodes.
pub fn is_standard_contradiction(family: &[Clause], cap: u64) -> Result<bool, KernelError> {
    if family.is_empty() || family.iter().any(Clause::is_empty) {
        return Err(KernelError::EmptyFamily);
    }
    let mut budget = cap;
    let mut chosen: Vec<&Literal> = Vec::with_capacity(family.len());
    fn dfs<'a>(
        family: &'a [Clause],
        chosen: &mut Vec<&'a Literal>,
        budget: &mut u64,
        cap: u64,
    ) -> Result<bool, KernelError> {
        let Some(clause) = family.get(chosen.len()) else {
            return Ok(false);
        };
        for l in clause.iter() {
            if *budget == 0 {
                return Err(KernelError::ProductCapExceeded { cap });
            }
            *budget -= 1;
            if chosen.iter().any(|c| c.is_complement_of(l)) {
                continue;
            }
            chosen.push(l);
            let closed = dfs(family, chosen, budget, cap)?;
            chosen.pop();
            if !closed {
                return Ok(false);
            }
        }
        Ok(true)
    }
    dfs(family, &mut chosen, &mut budget, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_width: usize,
    pub max_term_depth: usize,
    pub product_cap: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_width: DEFAULT_MAX_WIDTH,
            max_term_depth: DEFAULT_MAX_TERM_DEPTH,
            product_cap: DEFAULT_PRODUCT_CAP,
        }
    }
}

/// A clause entering a contradiction, with its variables renamed to fresh names.
#[derive(Debug, Clone)]
pub struct Participant {
    pub source: ClauseId,
    pub original: Clause,
    pub renaming: Substitution,
    pub clause: Clause,
}

impl Participant {
    pub fn new(original: &Clause, renaming: Substitution) -> Participant {
        Participant {
            source: original.id,
            clause: renaming.apply_clause(original),
            original: original.clone(),
            renaming,
        }
    }

    /// A participant used as is, for ground clauses or already-fresh variables.
    pub fn ground(original: &Clause) -> Participant {
        Participant::new(original, Substitution::new())
    }

    /// The participant literal corresponding to `l` of the original clause.
    pub fn lift(&self, l: &Literal) -> Literal {
        self.renaming.apply_literal(l)
    }
}

#[derive(Debug, Clone)]
pub struct BoundaryEntry {
    pub participant: Participant,
    /// Literal unified against the previous main-boundary literal, pre-unifier.
    pub secondary: Option<Literal>,
    /// Main-boundary literal, pre-unifier.
    pub extended: Option<Literal>,
}

/// In-progress boundary table. Every operation returns a new value.
#[derive(Debug, Clone)]
pub struct ExtensionState {
    entries: Vec<BoundaryEntry>,
    sigma: Substitution,
    limits: Limits,
}

#[derive(Debug, Clone)]
pub struct CscResult {
    pub clause: Clause,
    pub state: ExtensionState,
}

impl ExtensionState {
    pub fn begin(first: Participant, x1: &Literal, limits: Limits) -> Result<ExtensionState, KernelError> {
        if !first.clause.contains(x1) {
            return Err(KernelError::LiteralNotInClause { literal: x1.to_string(), clause: first.clause.to_string() });
        }
        Ok(ExtensionState {
            entries: vec![BoundaryEntry { participant: first, secondary: None, extended: Some(x1.clone()) }],
            sigma: Substitution::new(),
            limits,
        })
    }

    /// Append `next`, unifying `y` with the complement of the pending main-boundary literal.
    pub fn extend(&self, next: Participant, y: &Literal) -> Result<ExtensionState, KernelError> {
        let pending = self.pending().ok_or(KernelError::NoPendingLiteral)?;
        if !next.clause.contains(y) {
            return Err(KernelError::LiteralNotInClause { literal: y.to_string(), clause: next.clause.to_string() });
        }
        if self.entries.len() >= self.limits.max_width {
            return Err(KernelError::WidthExceeded { max: self.limits.max_width });
        }
        let fresh = next.clause.vars();
        if !fresh.is_empty() && self.vars().iter().any(|v| fresh.contains(v)) {
            return Err(KernelError::NotVariableDisjoint);
        }
        let pending = self.sigma.apply_literal(pending);
        let mgu = mgu_complementary(&pending, y)
            .ok_or_else(|| KernelError::NotComplementary { pending: pending.to_string(), candidate: y.to_string() })?;
        let sigma = self.sigma.compose(&mgu)?;
        let depth = sigma.max_depth();
        if depth > self.limits.max_term_depth {
            return Err(KernelError::TermDepthExceeded { depth, max: self.limits.max_term_depth });
        }
        let mut entries = self.entries.clone();
        entries.push(BoundaryEntry { participant: next, secondary: Some(y.clone()), extended: None });
        let state = ExtensionState { entries, sigma, limits: self.limits };
        state.check_boundary()?;
        Ok(state)
    }

    /// Choose the main-boundary literal of the last entry.
    pub fn select_extended(&self, x: &Literal) -> Result<ExtensionState, KernelError> {
        let last = self.entries.last().expect("a state always has an entry");
        if last.extended.is_some() {
            return Err(KernelError::PendingLiteral);
        }
        if !last.participant.clause.contains(x) {
            return Err(KernelError::LiteralNotInClause {
                literal: x.to_string(),
                clause: last.participant.clause.to_string(),
            });
        }
        let inst = self.sigma.apply_literal(x);
        let invalid = |reason| Err(KernelError::InvalidSelection { literal: inst.to_string(), reason });
        if last.secondary.as_ref().is_some_and(|s| self.sigma.apply_literal(s) == inst) {
            return invalid("it is the secondary literal");
        }
        if self.main_boundary().iter().any(|b| b.is_complement_of(&inst)) {
            return invalid("it is absorbed by an earlier main-boundary literal");
        }
        if self.main_boundary().contains(&inst) {
            return invalid("it repeats an earlier main-boundary literal");
        }
        let mut entries = self.entries.clone();
        entries.last_mut().expect("nonempty").extended = Some(x.clone());
        Ok(ExtensionState { entries, sigma: self.sigma.clone(), limits: self.limits })
    }

    /// Separate the contradiction and return the union of the remainders.
    pub fn close(&self) -> Result<CscResult, KernelError> {
        if self.entries.len() < 2 {
            return Err(KernelError::TooFewEntries);
        }
        if self.pending().is_some() {
            return Err(KernelError::PendingLiteral);
        }
        let mut minus_family = Vec::with_capacity(self.entries.len());
        let mut csc = Vec::new();
        for i in 0..self.entries.len() {
            let inst = self.instance(i);
            let minus = self.minus(i);
            let plus = self.plus(i);
            if minus.is_empty() {
                return Err(KernelError::SoundnessViolation(format!("entry {} has an empty separated part", i + 1)));
            }
            let mut union: Vec<Literal> = minus.iter().chain(plus.iter()).cloned().collect();
            union.sort();
            if union.len() != inst.len() || union != inst.literals() {
                return Err(KernelError::SoundnessViolation(format!("entry {} is not partitioned", i + 1)));
            }
            csc.extend(plus.iter().cloned());
            minus_family.push(minus);
        }
        if !is_standard_contradiction(&minus_family, self.limits.product_cap)? {
            return Err(KernelError::SoundnessViolation("separated parts are not a standard contradiction".into()));
        }
        Ok(CscResult { clause: Clause::new(csc).with_id(ClauseId::default(), Origin::Derived), state: self.clone() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BoundaryEntry] {
        &self.entries
    }

    pub fn sigma(&self) -> &Substitution {
        &self.sigma
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// The last entry's main-boundary literal, pre-unifier, when one awaits extension.
    pub fn pending(&self) -> Option<&Literal> {
        self.entries.last().and_then(|e| e.extended.as_ref())
    }

    pub fn pending_instance(&self) -> Option<Literal> {
        self.pending().map(|l| self.sigma.apply_literal(l))
    }

    pub fn sources(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.entries.iter().map(|e| e.participant.source)
    }

    /// Variables of every participant.
    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for e in &self.entries {
            out.extend(e.participant.clause.vars());
        }
        out
    }

    /// Instantiated main-boundary literals in chain order.
    pub fn main_boundary(&self) -> Vec<Literal> {
        self.entries.iter().filter_map(|e| e.extended.as_ref()).map(|l| self.sigma.apply_literal(l)).collect()
    }

    /// Instantiated secondary literals; the first entry has none.
    pub fn secondary_boundary(&self) -> Vec<Literal> {
        self.entries.iter().filter_map(|e| e.secondary.as_ref()).map(|l| self.sigma.apply_literal(l)).collect()
    }

    pub fn extended_instance(&self, i: usize) -> Option<Literal> {
        self.entries[i].extended.as_ref().map(|l| self.sigma.apply_literal(l))
    }

    pub fn secondary_instance(&self, i: usize) -> Option<Literal> {
        self.entries[i].secondary.as_ref().map(|l| self.sigma.apply_literal(l))
    }

    pub fn instance(&self, i: usize) -> Clause {
        let p = &self.entries[i].participant;
        self.sigma.apply_clause(&p.clause)
    }

    /// Literals of entry `i` complementary to a main-boundary literal of an earlier entry,
    /// other than the secondary literal.
    pub fn absorbed(&self, i: usize) -> Vec<Literal> {
        let earlier: Vec<Literal> =
            self.entries[..i].iter().filter_map(|e| e.extended.as_ref()).map(|l| self.sigma.apply_literal(l)).collect();
        let secondary = self.secondary_instance(i);
        self.instance(i)
            .iter()
            .filter(|l| Some(*l) != secondary.as_ref())
            .filter(|l| earlier.iter().any(|b| b.is_complement_of(l)))
            .cloned()
            .collect()
    }

    pub fn minus(&self, i: usize) -> Clause {
        let mut lits = self.absorbed(i);
        lits.extend(self.extended_instance(i));
        lits.extend(self.secondary_instance(i));
        Clause::new(lits)
    }

    pub fn plus(&self, i: usize) -> Clause {
        let minus = self.minus(i);
        self.instance(i).iter().filter(|l| !minus.contains(l)).cloned().collect()
    }

    /// Substitution over the source clause's variables producing `instance(i)`.
    pub fn parent_substitution(&self, i: usize) -> Substitution {
        let p = &self.entries[i].participant;
        let own = p.original.vars();
        p.renaming
            .compose(&self.sigma)
            .expect("fresh renaming composed with an idempotent unifier")
            .restrict(|v| own.contains(v))
    }

    /// Main-boundary literals must be pairwise neither identical nor complementary.
    fn check_boundary(&self) -> Result<(), KernelError> {
        let boundary = self.main_boundary();
        for (i, a) in boundary.iter().enumerate() {
            for b in &boundary[i + 1..] {
                if a == b || a.is_complement_of(b) {
                    return Err(KernelError::BoundaryCollision { first: a.to_string(), second: b.to_string() });
                }
            }
        }
        Ok(())
    }
}
