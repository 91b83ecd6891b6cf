//! Bounded Herbrand check: the ground instances of the parents, over every term up to a
//! depth bound, propositionally entail the disjunction of the conclusion's ground instances.
//! A negative answer only means the bound exhibits no entailment.

use std::collections::BTreeSet;

use super::dpll::Cnf;
use super::VerifyError;
use crate::logic::{Clause, Substitution, Symbol, Term};

pub const MAX_GROUND_CLAUSES: usize = 10_000;

/// Extra constants and the deepest term to instantiate with.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundBase {
    pub constants: Vec<Term>,
    pub depth: usize,
}

pub fn ground_entails(parents: &[Clause], csc: &Clause, base: &GroundBase) -> Result<bool, VerifyError> {
    let mut functions = BTreeSet::new();
    for l in parents.iter().flat_map(Clause::iter).chain(csc.iter()) {
        l.args.iter().for_each(|t| t.collect_functions(&mut functions));
    }
    let mut universe: BTreeSet<Term> = base.constants.iter().cloned().collect();
    universe.extend(functions.iter().filter(|(_, n)| *n == 0).map(|(f, _)| Term::App(f.clone(), Vec::new())));
    if universe.is_empty() {
        universe.insert(Term::constant("c0"));
    }
    let proper: Vec<(Symbol, usize)> = functions.into_iter().filter(|(_, n)| *n > 0).collect();
    for _ in 0..base.depth {
        let layer: Vec<Term> = universe.iter().cloned().collect();
        for (f, n) in &proper {
            for args in tuples(&layer, *n, MAX_GROUND_CLAUSES)? {
                universe.insert(Term::App(f.clone(), args));
            }
        }
        if universe.len() > MAX_GROUND_CLAUSES {
            return Err(VerifyError::GroundingTooLarge { max: MAX_GROUND_CLAUSES });
        }
    }
    let universe: Vec<Term> = universe.into_iter().collect();

    // Every ground instance of every conclusion literal is false; grounding literal by
    // literal keeps this linear in the number of literals.
    let mut negated = BTreeSet::new();
    for l in csc.iter() {
        for unit in instances(&Clause::new(vec![l.complement()]), &universe, MAX_GROUND_CLAUSES)? {
            negated.extend(unit.iter().cloned());
        }
        if negated.len() > MAX_GROUND_CLAUSES {
            return Err(VerifyError::GroundingTooLarge { max: MAX_GROUND_CLAUSES });
        }
    }
    let mut ground: Vec<Clause> = negated.into_iter().map(|l| Clause::new(vec![l])).collect();
    for p in parents {
        ground.extend(instances(p, &universe, MAX_GROUND_CLAUSES.saturating_sub(ground.len()))?);
    }
    Ok(!Cnf::from_clauses(&ground).is_satisfiable())
}

fn instances(c: &Clause, universe: &[Term], cap: usize) -> Result<Vec<Clause>, VerifyError> {
    let vars: Vec<Symbol> = c.vars().into_iter().collect();
    Ok(tuples(universe, vars.len(), cap)?
        .into_iter()
        .map(|values| Substitution::from_pairs(vars.iter().cloned().zip(values)).expect("ground terms").apply_clause(c))
        .collect())
}

/// Every `n`-tuple over `items`, failing once more than `cap` would be produced.
fn tuples(items: &[Term], n: usize, cap: usize) -> Result<Vec<Vec<Term>>, VerifyError> {
    let count = (items.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(VerifyError::GroundingTooLarge { max: MAX_GROUND_CLAUSES });
    }
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}
