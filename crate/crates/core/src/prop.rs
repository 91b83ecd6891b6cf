//! Propositional engine: pure-literal and tautology preprocessing, saturation by
//! contradiction separation, and model extraction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::engine::{EngineError, Mode, SatDetector, Search, Stats, Store, StrategyConfig, Verdict};
use crate::kernel::CscResult;
use crate::logic::{Clause, ClauseId, ClauseSet, Literal, Symbol};

/// A total assignment over the atoms it mentions.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Model {
    assignment: BTreeMap<Symbol, bool>,
}

impl Model {
    /// None when the literals contain a complementary pair.
    pub fn from_literals<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> Option<Model> {
        let mut assignment = BTreeMap::new();
        for l in lits {
            if let Some(prev) = assignment.insert(l.predicate.clone(), l.positive) {
                if prev != l.positive {
                    return None;
                }
            }
        }
        Some(Model { assignment })
    }

    pub fn value(&self, atom: &str) -> Option<bool> {
        self.assignment.get(atom).copied()
    }

    pub fn assign(&mut self, atom: Symbol, value: bool) {
        self.assignment.insert(atom, value);
    }

    /// Some literal of the clause is true. Unassigned atoms make literals false.
    pub fn satisfies(&self, c: &Clause) -> bool {
        c.iter().any(|l| self.value(&l.predicate) == Some(l.positive))
    }

    pub fn satisfies_all<'a>(&self, cs: impl IntoIterator<Item = &'a Clause>) -> bool {
        cs.into_iter().all(|c| self.satisfies(c))
    }

    pub fn literals(&self) -> Vec<Literal> {
        self.assignment.iter().map(|(a, &v)| Literal::prop(a, v)).collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits: Vec<String> = self.literals().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", lits.join(", "))
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type PropVerdict = Verdict<Model>;

/// Result of preprocessing. `pure_stages[i]` lists the literals found pure in pass `i`.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub clauses: ClauseSet,
    pub tautologies: Vec<ClauseId>,
    pub pure_stages: Vec<Vec<Literal>>,
}

impl Preprocessed {
    /// Extend a model of the remaining clauses to the removed ones.
    pub fn complete(&self, model: &mut Model) {
        for stage in self.pure_stages.iter().rev() {
            for l in stage {
                if model.value(&l.predicate).is_none() {
                    model.assign(l.predicate.clone(), l.positive);
                }
            }
        }
    }
}

/// Delete tautologies, then clauses containing a pure literal, to a fixpoint.
pub fn preprocess(s: &ClauseSet) -> Preprocessed {
    let (tautologies, mut kept): (Vec<&Clause>, Vec<&Clause>) = s.iter().partition(|c| c.is_tautology());
    let mut pure_stages = Vec::new();
    loop {
        let present: BTreeSet<&Literal> = kept.iter().flat_map(|c| c.iter()).collect();
        let pure: BTreeSet<Literal> =
            present.iter().filter(|l| !present.contains(&l.complement())).map(|l| (*l).clone()).collect();
        if pure.is_empty() {
            break;
        }
        kept.retain(|c| !c.iter().any(|l| pure.contains(l)));
        pure_stages.push(pure.into_iter().collect());
    }
    Preprocessed {
        clauses: ClauseSet::from_numbered(kept.into_iter().cloned().collect()).expect("subset of a consistent set"),
        tautologies: tautologies.iter().map(|c| c.id).collect(),
        pure_stages,
    }
}

/// Model read off a closed extension covering every clause of `inputs`.
///
/// For some position `j` and remainder literal `y` of entry `j` that differs from the
/// main-boundary literals of entries `j..`, the secondary literals after `j`, `y`, and the
/// main-boundary literals before `j` form the model.
pub fn extract_model(res: &CscResult, inputs: &[Clause]) -> Result<Option<Model>, EngineError> {
    let state = &res.state;
    let k = state.len();
    let covered: BTreeSet<ClauseId> = state.sources().collect();
    if res.clause.is_empty() || inputs.iter().any(|c| !covered.contains(&c.id)) {
        return Ok(None);
    }
    let main: Vec<Literal> = (0..k - 1).map(|i| state.extended_instance(i).expect("main-boundary literal")).collect();
    let secondary: Vec<Literal> = (1..k).map(|i| state.secondary_instance(i).expect("secondary literal")).collect();
    for j in 0..k {
        for y in state.plus(j).iter() {
            let later = &main[j..];
            let earlier = &main[..j];
            if later.contains(y) || later.iter().any(|x| earlier.contains(x)) {
                continue;
            }
            let chosen = secondary[j..].iter().chain(std::iter::once(y)).chain(earlier.iter());
            let Some(model) = Model::from_literals(chosen) else {
                return Err(EngineError::Soundness(format!("extracted literals clash at position {}", j + 1)));
            };
            if !model.satisfies_all(inputs) {
                return Err(EngineError::Soundness(format!("extracted model {model} falsifies an input clause")));
            }
            return Ok(Some(model));
        }
    }
    Ok(None)
}

/// Candidate model of a set closed under two-clause separation: atoms in increasing order,
/// each made true exactly when some clause with it as greatest atom needs it.
pub fn saturated_model(clauses: &[Clause]) -> Model {
    let atoms: BTreeSet<Symbol> = clauses.iter().flat_map(|c| c.iter().map(|l| l.predicate.clone())).collect();
    let mut model = Model::default();
    for atom in atoms {
        let produced = clauses.iter().any(|c| {
            c.iter().map(|l| &l.predicate).max() == Some(&atom)
                && c.contains(&Literal::prop(&atom, true))
                && c.iter().filter(|l| l.predicate != atom).all(|l| model.value(&l.predicate) == Some(!l.positive))
        });
        model.assign(atom, produced);
    }
    model
}

struct PropDetector;

impl PropDetector {
    fn inputs(store: &Store) -> Vec<Clause> {
        store.inputs().iter().filter_map(|id| store.get(*id).cloned()).collect()
    }
}

impl SatDetector for PropDetector {
    type Witness = Model;

    fn initial(&mut self, store: &Store) -> Result<Option<Model>, EngineError> {
        Ok(store.alive().next().is_none().then(Model::default))
    }

    fn closed(&mut self, res: &CscResult, store: &Store) -> Result<Option<Model>, EngineError> {
        if store.inputs().len() > res.state.len() {
            return Ok(None);
        }
        extract_model(res, &Self::inputs(store))
    }

    fn saturated(&mut self, store: &Store, _complete: bool) -> Result<Option<Model>, EngineError> {
        let alive: Vec<Clause> = store.alive().cloned().collect();
        let model = saturated_model(&alive);
        let ok = model.satisfies_all(&alive) && model.satisfies_all(&Self::inputs(store));
        Ok(ok.then_some(model))
    }
}

/// Saturate an already preprocessed propositional set.
pub fn saturate(s: &ClauseSet, cfg: &StrategyConfig) -> Result<PropVerdict, EngineError> {
    saturate_observed(s, cfg, None).map(|(v, _)| v)
}

pub fn saturate_observed(
    s: &ClauseSet,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(PropVerdict, Stats), EngineError> {
    saturate_from(s, first_free_id(s), cfg, observer)
}

/// One past the largest clause id of `s`.
pub(crate) fn first_free_id(s: &ClauseSet) -> ClauseId {
    ClauseId(s.iter().map(|c| c.id.0).max().unwrap_or(0) + 1)
}

/// Derived ids start at `first_derived`, which must exceed every id of the original problem.
fn saturate_from(
    s: &ClauseSet,
    first_derived: ClauseId,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(PropVerdict, Stats), EngineError> {
    if !s.is_propositional() {
        return Err(EngineError::Unsupported("the propositional engine needs 0-ary predicates".into()));
    }
    let store = Store::new(s.clauses(), first_derived);
    Search::new(cfg, Mode::Propositional, PropDetector, store, observer).run()
}

/// Preprocess, saturate, and extend any model to the whole input.
pub fn solve(s: &ClauseSet, cfg: &StrategyConfig) -> Result<PropVerdict, EngineError> {
    solve_observed(s, cfg, None).map(|(v, _)| v)
}

pub fn solve_observed(
    s: &ClauseSet,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(PropVerdict, Stats), EngineError> {
    if !s.is_propositional() {
        return Err(EngineError::Unsupported("the propositional engine needs 0-ary predicates".into()));
    }
    let pre = preprocess(s);
    let (verdict, stats) = saturate_from(&pre.clauses, first_free_id(s), cfg, observer)?;
    let verdict = match verdict {
        Verdict::Sat(mut model) => {
            pre.complete(&mut model);
            for atom in s.atoms() {
                if model.value(&atom).is_none() {
                    model.assign(atom, false);
                }
            }
            if !model.satisfies_all(s) {
                return Err(EngineError::Soundness(format!("completed model {model} falsifies an input clause")));
            }
            Verdict::Sat(model)
        }
        other => other,
    };
    Ok((verdict, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cs: &[&[&str]]) -> ClauseSet {
        ClauseSet::from_clauses(
            cs.iter()
                .map(|c| {
                    Clause::new(
                        c.iter()
                            .map(|s| match s.strip_prefix('~') {
                                Some(n) => Literal::prop(n, false),
                                None => Literal::prop(s, true),
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn preprocessing_removes_tautologies_and_pure_clauses() {
        let pre = preprocess(&set(&[&["p", "~p"], &["q"]]));
        assert!(pre.clauses.is_empty());
        assert_eq!(pre.tautologies, vec![ClauseId(1)]);
        let pre = preprocess(&set(&[&["p", "q"], &["~q", "r"]]));
        assert!(pre.clauses.is_empty());
        assert_eq!(pre.pure_stages.concat(), vec![Literal::prop("p", true), Literal::prop("r", true)]);
    }

    #[test]
    fn preprocessing_keeps_balanced_sets() {
        let s = set(&[
            &["x1", "x5"],
            &["~x1", "x2"],
            &["~x2", "x3"],
            &["~x3", "x4"],
            &["~x4", "x5"],
            &["~x5", "x1"],
            &["~x1", "~x5"],
        ]);
        assert_eq!(preprocess(&s).clauses.len(), s.len());
    }

    #[test]
    fn unit_clause_is_satisfiable() {
        let v = solve(&set(&[&["p"]]), &StrategyConfig::default()).unwrap();
        assert_eq!(v.witness().unwrap().value("p"), Some(true));
    }

    #[test]
    fn complementary_units_are_refuted() {
        let v = solve(&set(&[&["p"], &["~p"]]), &StrategyConfig::default()).unwrap();
        let proof = v.proof().unwrap();
        assert_eq!(proof.len(), 1);
        assert!(proof.steps[0].csc.is_empty());
    }

    #[test]
    fn pure_literal_models_are_completed() {
        let s = set(&[&["p", "q"], &["~q", "r"]]);
        let v = solve(&s, &StrategyConfig::default()).unwrap();
        assert!(v.witness().unwrap().satisfies_all(&s));
    }

    #[test]
    fn saturated_model_of_a_closed_set() {
        let cs = set(&[&["a", "b"], &["~a", "b"], &["b"]]);
        let m = saturated_model(cs.clauses());
        assert!(m.satisfies_all(&cs));
    }
}
