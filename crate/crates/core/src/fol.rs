//! First-order engine: subsumption preprocessing, saturation with unifiers, and
//! satisfiability witnesses built from one selected literal per input clause.
//!
//! A selection is accepted when, predicate by predicate, the selected literals either
//! share one polarity, or are all ground with no argument tuple selected under both
//! polarities. Such a selection determines a finite interpretation that makes every
//! selected literal true for every variable assignment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::engine::{EngineError, Mode, SatDetector, Search, Stats, Store, StrategyConfig, Verdict};
use crate::kernel::{CscResult, Participant};
use crate::logic::{
    mgu_complementary, subsumes, sym, Clause, ClauseId, ClauseSet, Literal, Substitution, Symbol, Term,
};
use crate::prop::first_free_id;

/// Element every term outside the protected domain evaluates to.
pub const DESIGNATED: &str = "$d";
/// Variable assignments examined while verifying one interpretation.
pub const MAX_EVALUATIONS: u64 = 1_000_000;
const MAX_GUARD_NODES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// No predicate is selected under both polarities.
    SinglePolarity,
    /// Some predicate is selected under both polarities, on distinct ground arguments only.
    DistinctGroundInstances,
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessCase::SinglePolarity => "every predicate is selected with a single polarity",
            WitnessCase::DistinctGroundInstances => "opposite polarities only on distinct ground arguments",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateValue {
    True,
    False,
    /// True exactly on these argument tuples of domain elements.
    TrueOn(BTreeSet<Vec<Term>>),
}

impl fmt::Display for PredicateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateValue::True => f.write_str("true"),
            PredicateValue::False => f.write_str("false"),
            PredicateValue::TrueOn(tuples) => {
                let shown: Vec<String> = tuples
                    .iter()
                    .map(|t| format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "true on {{{}}}", shown.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretationSketch {
    /// One literal per covered input clause, in that clause's own variables.
    pub selected_literals: Vec<(ClauseId, Literal)>,
    pub domain_note: WitnessCase,
    pub truth_assignment: BTreeMap<Symbol, PredicateValue>,
}

impl InterpretationSketch {
    /// None when the selection violates the polarity guard.
    pub fn from_selection(selection: BTreeMap<ClauseId, Literal>) -> Option<InterpretationSketch> {
        let lits: Vec<&Literal> = selection.values().collect();
        if !lits.iter().enumerate().all(|(i, l)| lits[..i].iter().all(|m| compatible(l, m))) {
            return None;
        }
        let mut polarities: BTreeMap<Symbol, (bool, bool)> = BTreeMap::new();
        for l in &lits {
            let e = polarities.entry(l.predicate.clone()).or_default();
            if l.positive {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        let mut truth_assignment = BTreeMap::new();
        let mut mixed = false;
        for (p, pol) in polarities {
            let value = match pol {
                (true, false) => PredicateValue::True,
                (false, _) => PredicateValue::False,
                (true, true) => {
                    mixed = true;
                    PredicateValue::TrueOn(
                        lits.iter().filter(|l| l.positive && l.predicate == p).map(|l| l.args.clone()).collect(),
                    )
                }
            };
            truth_assignment.insert(p, value);
        }
        Some(InterpretationSketch {
            selected_literals: selection.into_iter().collect(),
            domain_note: if mixed { WitnessCase::DistinctGroundInstances } else { WitnessCase::SinglePolarity },
            truth_assignment,
        })
    }
}

/// Two selected literals may coexist: same polarity, different predicates, or distinct
/// ground atoms.
fn compatible(a: &Literal, b: &Literal) -> bool {
    a.predicate != b.predicate || a.positive == b.positive || (a.is_ground() && b.is_ground() && a.args != b.args)
}

/// Finite interpretation: terms outside `domain` collapse to the designated element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    domain: BTreeSet<Term>,
    designated: Term,
    predicates: BTreeMap<Symbol, PredicateValue>,
}

/// Variable assignment into the domain.
pub type Env = BTreeMap<Symbol, Term>;

impl Interpretation {
    /// The designated element is added to `domain`.
    pub fn from_parts(mut domain: BTreeSet<Term>, predicates: BTreeMap<Symbol, PredicateValue>) -> Interpretation {
        let designated = Term::constant(DESIGNATED);
        domain.insert(designated.clone());
        Interpretation { domain, designated, predicates }
    }

    pub fn predicates(&self) -> &BTreeMap<Symbol, PredicateValue> {
        &self.predicates
    }

    pub fn domain(&self) -> &BTreeSet<Term> {
        &self.domain
    }

    pub fn designated(&self) -> &Term {
        &self.designated
    }

    /// Unlisted predicates are false everywhere.
    pub fn predicate(&self, p: &str) -> Option<&PredicateValue> {
        self.predicates.get(p)
    }

    pub fn eval_term(&self, t: &Term, env: &Env) -> Term {
        match t {
            Term::Var(v) => env.get(v).cloned().unwrap_or_else(|| self.designated.clone()),
            Term::App(f, args) => {
                let value = Term::App(f.clone(), args.iter().map(|a| self.eval_term(a, env)).collect());
                if self.domain.contains(&value) {
                    value
                } else {
                    self.designated.clone()
                }
            }
        }
    }

    pub fn eval_literal(&self, l: &Literal, env: &Env) -> bool {
        let atom = match self.predicates.get(&l.predicate) {
            None | Some(PredicateValue::False) => false,
            Some(PredicateValue::True) => true,
            Some(PredicateValue::TrueOn(tuples)) => {
                let args: Vec<Term> = l.args.iter().map(|a| self.eval_term(a, env)).collect();
                tuples.contains(&args)
            }
        };
        atom == l.positive
    }

    /// The clause holds under every assignment of its variables. None once `budget`
    /// assignments have been spent.
    pub fn satisfies(&self, c: &Clause, budget: &mut u64) -> Option<bool> {
        let vars: Vec<Symbol> = c.vars().into_iter().collect();
        let domain: Vec<&Term> = self.domain.iter().collect();
        let mut digits = vec![0usize; vars.len()];
        loop {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let env: Env = vars.iter().cloned().zip(digits.iter().map(|&d| domain[d].clone())).collect();
            if !c.iter().any(|l| self.eval_literal(l, &env)) {
                return Some(false);
            }
            // Odometer over domain^vars.
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Some(true);
                }
                digits[i] += 1;
                if digits[i] < domain.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domain: Vec<String> = self.domain.iter().map(ToString::to_string).collect();
        write!(f, "domain {{{}}}", domain.join(", "))?;
        for (p, v) in &self.predicates {
            write!(f, "; {p}: {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolModel {
    pub sketch: InterpretationSketch,
    pub interpretation: Interpretation,
}

pub type FolVerdict = Verdict<FolModel>;

/// Build the interpretation a sketch describes and check that every selected literal holds
/// under every assignment of its variables.
pub fn build_model(sketch: InterpretationSketch) -> Result<FolModel, EngineError> {
    let designated = Term::constant(DESIGNATED);
    let mut domain = BTreeSet::from([designated.clone()]);
    for (_, l) in &sketch.selected_literals {
        l.args.iter().for_each(|t| t.collect_ground_subterms(&mut domain));
    }
    let interpretation = Interpretation { domain, designated, predicates: sketch.truth_assignment.clone() };
    let mut budget = MAX_EVALUATIONS;
    for (id, l) in &sketch.selected_literals {
        match interpretation.satisfies(&Clause::new(vec![l.clone()]), &mut budget) {
            Some(true) => {}
            Some(false) => {
                return Err(EngineError::Soundness(format!(
                    "selected literal {l} of clause {id} is false in {interpretation}"
                )))
            }
            None => {
                return Err(EngineError::Unsupported(format!("interpretation too large to evaluate: {interpretation}")))
            }
        }
    }
    Ok(FolModel { sketch, interpretation })
}

/// Delete tautologies and subsumed clauses (the earlier of two variants stays), then
/// rename variables apart.
pub fn preprocess_fol(s: &ClauseSet) -> ClauseSet {
    let mut kept: Vec<Clause> = Vec::new();
    for c in s.iter().filter(|c| !c.is_tautology()) {
        if kept.iter().any(|k| k.len() <= c.len() && subsumes(k, c)) {
            continue;
        }
        kept.retain(|k| !(c.len() <= k.len() && subsumes(c, k)));
        kept.push(c.clone());
    }
    ClauseSet::from_numbered(kept).expect("subset of a consistent set").rename_apart()
}

/// Input clauses none of whose literals can be made complementary to any literal of any
/// input clause, itself included after renaming.
pub fn isolated_clauses(inputs: &[Clause]) -> BTreeSet<ClauseId> {
    let renamed: Vec<Clause> = inputs
        .iter()
        .map(|c| {
            let r =
                Substitution::from_pairs(c.vars().into_iter().map(|v| (v.clone(), Term::Var(sym(&format!("{v}'"))))))
                    .expect("fresh variables");
            r.apply_clause(c)
        })
        .collect();
    inputs
        .iter()
        .filter(|c| {
            !c.iter().any(|l| {
                renamed
                    .iter()
                    .flat_map(Clause::iter)
                    .any(|m| m.predicate == l.predicate && mgu_complementary(l, m).is_some())
            })
        })
        .map(|c| c.id)
        .collect()
}

/// Selection read off a closed extension covering every non-isolated input clause.
///
/// For some entry `j` and remainder literal `y` of entry `j`, entries after `j` contribute
/// their secondary literals, entry `j` contributes `y`, and entries before `j` their
/// main-boundary literals. Repeated clauses must contribute the same literal. Isolated
/// clauses are then filled in by search.
pub fn check_t1(res: &CscResult, inputs: &[Clause]) -> Option<InterpretationSketch> {
    t1_with(res, inputs, &isolated_clauses(inputs))
}

fn t1_with(res: &CscResult, inputs: &[Clause], isolated: &BTreeSet<ClauseId>) -> Option<InterpretationSketch> {
    let state = &res.state;
    let ids: BTreeSet<ClauseId> = inputs.iter().map(|c| c.id).collect();
    let covered: BTreeSet<ClauseId> = state.sources().collect();
    if res.clause.is_empty() || ids.iter().any(|id| !isolated.contains(id) && !covered.contains(id)) {
        return None;
    }
    let entries = state.entries();
    for j in 0..entries.len() {
        'candidates: for y in state.plus(j).iter() {
            let mut selection: BTreeMap<ClauseId, Literal> = BTreeMap::new();
            for (i, e) in entries.iter().enumerate() {
                let p = &e.participant;
                let original = match i.cmp(&j) {
                    std::cmp::Ordering::Less => e.extended.as_ref().and_then(|x| original_of(p, x)),
                    std::cmp::Ordering::Equal => {
                        p.original.iter().find(|l| state.sigma().apply_literal(&p.lift(l)) == *y).cloned()
                    }
                    std::cmp::Ordering::Greater => e.secondary.as_ref().and_then(|x| original_of(p, x)),
                };
                let Some(original) = original else { continue 'candidates };
                if !ids.contains(&p.source) {
                    continue;
                }
                if selection.get(&p.source).is_some_and(|prev| *prev != original) {
                    continue 'candidates;
                }
                selection.insert(p.source, original);
            }
            let open: Vec<&Clause> = inputs.iter().filter(|c| !selection.contains_key(&c.id)).collect();
            if let Some(full) = guard_search(selection, &open) {
                return InterpretationSketch::from_selection(full);
            }
        }
    }
    None
}

/// The literal of the participant's source clause that became `lifted`.
fn original_of(p: &Participant, lifted: &Literal) -> Option<Literal> {
    p.original.iter().find(|l| p.lift(l) == *lifted).cloned()
}

/// Extend `fixed` with one literal from each `open` clause so that all chosen literals
/// stay pairwise compatible. Backtracking, with a node cap.
pub fn guard_search(fixed: BTreeMap<ClauseId, Literal>, open: &[&Clause]) -> Option<BTreeMap<ClauseId, Literal>> {
    fn go(chosen: &mut Vec<Literal>, open: &[&Clause], picks: &mut Vec<Literal>, nodes: &mut usize) -> bool {
        let Some((c, rest)) = open.split_first() else {
            return true;
        };
        for l in c.iter() {
            if *nodes >= MAX_GUARD_NODES {
                return false;
            }
            *nodes += 1;
            if !chosen.iter().all(|m| compatible(l, m)) {
                continue;
            }
            chosen.push(l.clone());
            picks.push(l.clone());
            if go(chosen, rest, picks, nodes) {
                return true;
            }
            chosen.pop();
            picks.pop();
        }
        false
    }
    let lits: Vec<&Literal> = fixed.values().collect();
    if !lits.iter().enumerate().all(|(i, l)| lits[..i].iter().all(|m| compatible(l, m))) {
        return None;
    }
    let mut chosen: Vec<Literal> = fixed.values().cloned().collect();
    let mut picks = Vec::with_capacity(open.len());
    let mut nodes = 0;
    if !go(&mut chosen, open, &mut picks, &mut nodes) {
        return None;
    }
    let mut out = fixed;
    out.extend(open.iter().map(|c| c.id).zip(picks));
    Some(out)
}

struct FolDetector {
    inputs: Vec<Clause>,
    isolated: BTreeSet<ClauseId>,
}

impl FolDetector {
    fn new(inputs: &[Clause]) -> FolDetector {
        FolDetector { isolated: isolated_clauses(inputs), inputs: inputs.to_vec() }
    }

    /// Build and verify the model of a sketch against every input clause.
    fn certify(&self, sketch: InterpretationSketch) -> Result<Option<FolModel>, EngineError> {
        let model = match build_model(sketch) {
            Ok(m) => m,
            Err(EngineError::Unsupported(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut budget = MAX_EVALUATIONS;
        for c in &self.inputs {
            match model.interpretation.satisfies(c, &mut budget) {
                Some(true) => {}
                Some(false) => {
                    return Err(EngineError::Soundness(format!(
                        "input clause {c} is false in {}",
                        model.interpretation
                    )))
                }
                None => return Ok(None),
            }
        }
        Ok(Some(model))
    }

    fn search_witness(&self) -> Result<Option<FolModel>, EngineError> {
        let open: Vec<&Clause> = self.inputs.iter().collect();
        match guard_search(BTreeMap::new(), &open).and_then(InterpretationSketch::from_selection) {
            Some(sketch) => self.certify(sketch),
            None => Ok(None),
        }
    }
}

impl SatDetector for FolDetector {
    type Witness = FolModel;

    fn initial(&mut self, _store: &Store) -> Result<Option<FolModel>, EngineError> {
        if self.inputs.iter().all(|c| self.isolated.contains(&c.id)) {
            return self.search_witness();
        }
        Ok(None)
    }

    fn closed(&mut self, res: &CscResult, _store: &Store) -> Result<Option<FolModel>, EngineError> {
        match t1_with(res, &self.inputs, &self.isolated) {
            Some(sketch) => self.certify(sketch),
            None => Ok(None),
        }
    }

    fn saturated(&mut self, _store: &Store, _complete: bool) -> Result<Option<FolModel>, EngineError> {
        self.search_witness()
    }
}

/// Saturate a set produced by [`preprocess_fol`].
pub fn saturate_fol(s: &ClauseSet, cfg: &StrategyConfig) -> Result<FolVerdict, EngineError> {
    saturate_fol_observed(s, cfg, None).map(|(v, _)| v)
}

pub fn saturate_fol_observed(
    s: &ClauseSet,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(FolVerdict, Stats), EngineError> {
    saturate_from(s, first_free_id(s), cfg, observer)
}

fn saturate_from(
    s: &ClauseSet,
    first_derived: ClauseId,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(FolVerdict, Stats), EngineError> {
    let store = Store::new(s.clauses(), first_derived);
    Search::new(cfg, Mode::FirstOrder, FolDetector::new(s.clauses()), store, observer).run()
}

/// Preprocess, saturate, and check any witness against the whole input.
pub fn solve_fol(s: &ClauseSet, cfg: &StrategyConfig) -> Result<FolVerdict, EngineError> {
    solve_fol_observed(s, cfg, None).map(|(v, _)| v)
}

pub fn solve_fol_observed(
    s: &ClauseSet,
    cfg: &StrategyConfig,
    observer: Option<&mut dyn FnMut(&CscResult)>,
) -> Result<(FolVerdict, Stats), EngineError> {
    let pre = preprocess_fol(s);
    let (verdict, stats) = saturate_from(&pre, first_free_id(s), cfg, observer)?;
    let verdict = match verdict {
        Verdict::Sat(mut model) => {
            let mut budget = MAX_EVALUATIONS;
            for c in s {
                if model.interpretation.satisfies(c, &mut budget) == Some(false) {
                    return Err(EngineError::Soundness(format!(
                        "input clause {c} is false in {}",
                        model.interpretation
                    )));
                }
            }
            for (id, l) in &mut model.sketch.selected_literals {
                *l = restore_names(l, *id);
            }
            Verdict::Sat(model)
        }
        other => other,
    };
    Ok((verdict, stats))
}

/// Undo the `X -> X_id` renaming applied before saturation.
fn restore_names(l: &Literal, id: ClauseId) -> Literal {
    let suffix = format!("_{id}");
    let back = Substitution::from_pairs(
        l.vars().into_iter().filter_map(|v| v.strip_suffix(suffix.as_str()).map(|b| (v.clone(), Term::Var(sym(b))))),
    )
    .expect("variable renaming");
    back.apply_literal(l)
}
