use std::collections::BTreeMap;

use super::VerifyError;
use crate::logic::{Clause, Symbol};
use crate::prop::Model;

pub const MAX_VARIABLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTableReport {
    pub satisfiable: bool,
    pub model: Option<Model>,
    pub variable_count: usize,
}

/// Clauses as bit masks over an atom numbering.
struct Encoded {
    atoms: Vec<Symbol>,
    clauses: Vec<(u32, u32)>,
}

fn encode<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Result<Encoded, VerifyError> {
    let clauses: Vec<&Clause> = clauses.into_iter().collect();
    let mut index: BTreeMap<Symbol, usize> = BTreeMap::new();
    for c in &clauses {
        for l in c.iter() {
            if !l.args.is_empty() {
                return Err(VerifyError::NotPropositional(l.to_string()));
            }
            index.entry(l.predicate.clone()).or_insert(0);
        }
    }
    if index.len() > MAX_VARIABLES {
        return Err(VerifyError::TooManyVariables { found: index.len(), max: MAX_VARIABLES });
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let encoded = clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u32, 0u32), |(pos, neg), l| {
                let bit = 1u32 << index[&l.predicate];
                if l.positive {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();
    Ok(Encoded { atoms: index.into_keys().collect(), clauses: encoded })
}

impl Encoded {
    fn satisfied_by(&self, a: u32) -> bool {
        self.clauses.iter().all(|&(pos, neg)| a & pos != 0 || !a & neg != 0)
    }

    fn model(&self, a: u32) -> Model {
        let mut m = Model::default();
        for (i, atom) in self.atoms.iter().enumerate() {
            m.assign(atom.clone(), a & (1 << i) != 0);
        }
        m
    }
}

/// Exhaustive satisfiability over every assignment of the mentioned atoms.
pub fn truth_table_sat<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Result<TruthTableReport, VerifyError> {
    let enc = encode(clauses)?;
    let n = enc.atoms.len();
    let found = (0..1u64 << n).map(|a| a as u32).find(|&a| enc.satisfied_by(a));
    Ok(TruthTableReport { satisfiable: found.is_some(), model: found.map(|a| enc.model(a)), variable_count: n })
}

/// Every assignment satisfying `premises` satisfies `conclusion`.
pub fn entails(premises: &[Clause], conclusion: &Clause) -> Result<bool, VerifyError> {
    let mut all: Vec<&Clause> = premises.iter().collect();
    all.push(conclusion);
    let enc = encode(all)?;
    let (premise_masks, conclusion_mask) = enc.clauses.split_at(premises.len());
    let (pos, neg) = conclusion_mask[0];
    let n = enc.atoms.len();
    Ok((0..1u64 << n).map(|a| a as u32).all(|a| {
        let premises_hold = premise_masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0);
        !premises_hold || a & pos != 0 || !a & neg != 0
    }))
}
