use std::collections::{BTreeMap, HashMap, HashSet};

use crate::engine::proof::DeductionStep;
use crate::logic::{subsumes, Clause, ClauseId, Origin, Symbol};

#[derive(Debug, Clone)]
struct Slot {
    clause: Clause,
    alive: bool,
}

/// Why a derived clause was not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejected {
    Tautology,
    Duplicate,
    Subsumed,
}

/// Working clause set of a saturation run. Ids are stable; deleted clauses stay addressable.
#[derive(Debug, Clone, Default)]
pub struct Store {
    slots: Vec<Option<Slot>>,
    /// (predicate, polarity) to clause ids containing such a literal.
    index: HashMap<(Symbol, bool), Vec<ClauseId>>,
    seen: HashSet<Clause>,
    steps: BTreeMap<ClauseId, DeductionStep>,
    inputs: Vec<ClauseId>,
    next: u32,
}

impl Store {
    /// `first_derived` must exceed every id of the original problem, including removed clauses.
    pub fn new(inputs: &[Clause], first_derived: ClauseId) -> Store {
        let mut store = Store { next: first_derived.0.max(1), ..Store::default() };
        for c in inputs {
            store.put(c.clone());
            store.inputs.push(c.id);
        }
        store
    }

    fn put(&mut self, c: Clause) {
        let at = c.id.0 as usize;
        if self.slots.len() <= at {
            self.slots.resize(at + 1, None);
        }
        let mut keys: Vec<(Symbol, bool)> = c.iter().map(|l| (l.predicate.clone(), l.positive)).collect();
        keys.dedup();
        for k in keys {
            let ids = self.index.entry(k).or_default();
            if ids.last() != Some(&c.id) {
                ids.push(c.id);
            }
        }
        self.seen.insert(c.clone());
        self.slots[at] = Some(Slot { clause: c, alive: true });
    }

    pub fn next_id(&self) -> ClauseId {
        ClauseId(self.next.max(self.slots.len() as u32))
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        self.slots.get(id.0 as usize).and_then(|s| s.as_ref()).map(|s| &s.clause)
    }

    pub fn is_alive(&self, id: ClauseId) -> bool {
        self.slots.get(id.0 as usize).and_then(|s| s.as_ref()).is_some_and(|s| s.alive)
    }

    pub fn alive(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.slots.iter().flatten().filter(|s| s.alive).map(|s| &s.clause)
    }

    pub fn alive_ids(&self) -> Vec<ClauseId> {
        self.alive().map(|c| c.id).collect()
    }

    pub fn inputs(&self) -> &[ClauseId] {
        &self.inputs
    }

    /// Alive clauses that contain a literal with this predicate and polarity, in id order.
    pub fn with_literal(&self, predicate: &Symbol, positive: bool) -> impl Iterator<Item = &Clause> + '_ {
        self.index
            .get(&(predicate.clone(), positive))
            .into_iter()
            .flatten()
            .filter(|id| self.is_alive(**id))
            .filter_map(|id| self.get(*id))
    }

    pub fn steps(&self) -> &BTreeMap<ClauseId, DeductionStep> {
        &self.steps
    }

    pub fn derived_count(&self) -> usize {
        self.steps.len()
    }

    /// Whether `c` would be stored.
    pub fn admits(&self, c: &Clause) -> Result<(), Rejected> {
        if c.is_tautology() {
            return Err(Rejected::Tautology);
        }
        if self.seen.contains(c) {
            return Err(Rejected::Duplicate);
        }
        if self.alive().any(|d| d.len() <= c.len() && subsumes(d, c)) {
            return Err(Rejected::Subsumed);
        }
        Ok(())
    }

    /// Store a derived clause with its step. Alive clauses it subsumes are deleted.
    pub fn insert_derived(
        &mut self,
        clause: Clause,
        step: impl FnOnce(ClauseId) -> DeductionStep,
    ) -> Result<ClauseId, Rejected> {
        if !clause.is_empty() {
            self.admits(&clause)?;
        }
        let id = self.next_id();
        let clause = clause.with_id(id, Origin::Derived);
        for slot in self.slots.iter_mut().flatten() {
            if slot.alive && clause.len() <= slot.clause.len() && subsumes(&clause, &slot.clause) {
                slot.alive = false;
            }
        }
        self.steps.insert(id, step(id));
        self.put(clause);
        self.next = id.0 + 1;
        Ok(id)
    }
}
