//! Replays a refutation step by step without using the extension kernel.
//!
//! Each step is rebuilt from its parents' substitutions alone: instances, chain links,
//! absorption and the separated parts are recomputed, and the separated parts are
//! decided to be a standard contradiction by a propositional satisfiability check over
//! syntactic atoms. A tuple of literals free of complementary pairs is exactly a
//! satisfying assignment of those atoms, so unsatisfiability is the right test.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::dpll::Cnf;
use crate::engine::{DeductionStep, Proof};
use crate::logic::{Clause, ClauseId, ClauseSet, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {reason}", match .step { Some(id) => format!("step {id}"), None => "proof".to_string() })]
pub struct Rejection {
    pub step: Option<ClauseId>,
    pub reason: String,
}

fn reject<T>(step: Option<ClauseId>, reason: impl Into<String>) -> Result<T, Rejection> {
    Err(Rejection { step, reason: reason.into() })
}

/// Accept `proof` as a refutation of `problem`.
///
/// Input variables are renamed apart the same way the provers do before searching, so
/// the substitutions in the proof refer to those names.
pub fn check_proof(proof: &Proof, problem: &ClauseSet) -> Result<(), Rejection> {
    let inputs = problem.rename_apart();
    let mut known: BTreeMap<ClauseId, Clause> = inputs.iter().map(|c| (c.id, c.clone())).collect();
    let max_input = known.keys().next_back().copied().unwrap_or_default();
    let mut previous = max_input;
    for step in &proof.steps {
        if step.id <= previous {
            return reject(Some(step.id), "step ids must increase past every input id");
        }
        let csc = check_step(step, &known)?;
        known.insert(step.id, csc);
        previous = step.id;
    }
    match known.get(&proof.conclusion) {
        Some(c) if c.is_empty() => Ok(()),
        Some(c) => reject(None, format!("conclusion {} is {c}, not the empty clause", proof.conclusion)),
        None => reject(None, format!("conclusion {} is not derived", proof.conclusion)),
    }
}

fn check_step(step: &DeductionStep, known: &BTreeMap<ClauseId, Clause>) -> Result<Clause, Rejection> {
    let at = Some(step.id);
    let k = step.parents.len();
    if k < 2 {
        return reject(at, "a step needs at least two parents");
    }
    let mut instances = Vec::with_capacity(k);
    for (i, p) in step.parents.iter().enumerate() {
        let Some(source) = known.get(&p.source) else {
            return reject(at, format!("parent {} is neither an input nor an earlier step", p.source));
        };
        let vars = source.vars();
        if let Some(v) = p.substitution.domain().find(|v| !vars.contains(*v)) {
            return reject(at, format!("parent {} binds {v}, which is not one of its variables", i + 1));
        }
        let inst = p.substitution.apply_clause(source);
        let first = i == 0;
        let last = i + 1 == k;
        match (&p.secondary, first) {
            (Some(_), true) => return reject(at, "the first parent has a secondary literal"),
            (None, false) => return reject(at, format!("parent {} lacks a secondary literal", i + 1)),
            _ => {}
        }
        match (&p.extended, last) {
            (Some(_), true) => return reject(at, "the last parent has a main-boundary literal"),
            (None, false) => return reject(at, format!("parent {} lacks a main-boundary literal", i + 1)),
            _ => {}
        }
        for l in p.extended.iter().chain(p.secondary.iter()) {
            if !inst.contains(l) {
                return reject(at, format!("{l} is not in instance {inst} of parent {}", i + 1));
            }
        }
        if p.extended.is_some() && p.extended == p.secondary {
            return reject(at, format!("parent {} reuses its secondary literal", i + 1));
        }
        instances.push(inst);
    }
    let main: Vec<&Literal> = step.parents.iter().filter_map(|p| p.extended.as_ref()).collect();
    for i in 1..k {
        let secondary = step.parents[i].secondary.as_ref().expect("checked above");
        if !secondary.is_complement_of(main[i - 1]) {
            return reject(at, format!("parent {} does not link to the previous main-boundary literal", i + 1));
        }
    }
    for (i, a) in main.iter().enumerate() {
        for b in &main[i + 1..] {
            if a == b || a.is_complement_of(b) {
                return reject(at, format!("main-boundary literals {a} and {b} collide"));
            }
        }
    }
    let mut minus_family = Vec::with_capacity(k);
    let mut csc = BTreeSet::new();
    for (i, inst) in instances.iter().enumerate() {
        let p = &step.parents[i];
        let earlier = &main[..i.min(main.len())];
        let mut minus: BTreeSet<&Literal> = inst
            .iter()
            .filter(|l| Some(*l) != p.secondary.as_ref())
            .filter(|l| earlier.iter().any(|b| b.is_complement_of(l)))
            .collect();
        minus.extend(p.extended.iter());
        minus.extend(p.secondary.iter());
        csc.extend(inst.iter().filter(|l| !minus.contains(l)).cloned());
        minus_family.push(minus.into_iter().cloned().collect::<Clause>());
    }
    if Cnf::from_clauses(&minus_family).is_satisfiable() {
        return reject(at, "the separated parts are not a standard contradiction");
    }
    let derived: Clause = csc.into_iter().collect();
    if derived != step.csc {
        return reject(at, format!("recorded clause {} differs from recomputed {derived}", step.csc));
    }
    Ok(derived)
}
