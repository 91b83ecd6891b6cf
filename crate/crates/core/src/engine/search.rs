use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Strategy, StrategyConfig};
use super::proof::{DeductionStep, Proof, Stats, Verdict};
use super::store::Store;
use super::EngineError;
use crate::kernel::{CscResult, ExtensionState, KernelError, Limits, Participant};
use crate::logic::{mgu_complementary, sym, unify_atoms, Clause, ClauseId, Literal, Substitution, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Propositional,
    FirstOrder,
}

/// Satisfiability detection plugged into the saturation loop. Witnesses must be verified
/// before they are returned.
pub trait SatDetector {
    type Witness;

    /// Before the first round.
    fn initial(&mut self, _store: &Store) -> Result<Option<Self::Witness>, EngineError> {
        Ok(None)
    }

    /// For every closed state whose clause is not empty.
    fn closed(&mut self, res: &CscResult, store: &Store) -> Result<Option<Self::Witness>, EngineError>;

    /// When neither an extension round nor a two-clause round adds a clause.
    fn saturated(&mut self, store: &Store, complete: bool) -> Result<Option<Self::Witness>, EngineError>;
}

enum Found<W> {
    Refuted(ClauseId),
    Witness(W),
}

/// What a search pass found, and whether it stored a new clause.
type Pass<W> = Result<(Option<Found<W>>, bool), EngineError>;

struct Dfs {
    nodes: usize,
    best: Option<CscResult>,
    width: usize,
    /// Some state was cut off by `width` rather than by the configured limit.
    cut: bool,
}

/// First width bound of the deepening schedule.
const INITIAL_WIDTH: usize = 4;

pub type Observer<'o> = &'o mut dyn FnMut(&CscResult);

/// Saturation by repeated extension rounds over a mutable clause store.
pub struct Search<'o, D: SatDetector> {
    cfg: StrategyConfig,
    limits: Limits,
    mode: Mode,
    detector: D,
    store: Store,
    fresh: u64,
    observer: Option<Observer<'o>>,
    started: Instant,
    stats: Stats,
    /// A resolvent was dropped by the term-depth cap, so a fixpoint is not a true saturation.
    incomplete: bool,
}

impl<'o, D: SatDetector> Search<'o, D> {
    pub fn new(cfg: &StrategyConfig, mode: Mode, detector: D, store: Store, observer: Option<Observer<'o>>) -> Self {
        let fresh = store.next_id().0 as u64;
        Search {
            limits: cfg.limits(),
            cfg: cfg.clone(),
            mode,
            detector,
            store,
            fresh,
            observer,
            started: Instant::now(),
            stats: Stats::default(),
            incomplete: false,
        }
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn run(mut self) -> Result<(Verdict<D::Witness>, Stats), EngineError> {
        let verdict = self.run_inner()?;
        self.stats.derived = self.store.derived_count();
        Ok((verdict, self.stats))
    }

    fn run_inner(&mut self) -> Result<Verdict<D::Witness>, EngineError> {
        if let Some(empty) = self.store.alive().find(|c| c.is_empty()) {
            return Ok(Verdict::Unsat(Proof { steps: Vec::new(), conclusion: empty.id }));
        }
        if let Some(w) = self.detector.initial(&self.store)? {
            return Ok(Verdict::Sat(w));
        }
        loop {
            if let Some(reason) = self.exhausted() {
                return Ok(Verdict::Unknown(reason));
            }
            self.stats.rounds += 1;
            let round = self.stats.rounds;
            let mut progress = false;
            if self.cfg.strategy == Strategy::Extension {
                for start in self.start_order(round) {
                    if !self.store.is_alive(start) {
                        continue;
                    }
                    let clause = self.store.get(start).expect("alive").clone();
                    for x1 in self.literal_order(&clause) {
                        if !self.store.is_alive(start) {
                            break;
                        }
                        let (found, added) = self.explore(&clause, &x1)?;
                        if let Some(f) = found {
                            return Ok(self.conclude(f));
                        }
                        progress |= added;
                    }
                    if self.exhausted().is_some() {
                        break;
                    }
                }
            }
            let periodic = self.mode == Mode::FirstOrder
                && self.cfg.binary_period > 0
                && round.is_multiple_of(self.cfg.binary_period);
            let binary_due =
                self.cfg.strategy == Strategy::Binary || (!progress && self.cfg.fallback_binary) || periodic;
            if binary_due {
                let (found, added) = self.binary_round()?;
                if let Some(f) = found {
                    return Ok(self.conclude(f));
                }
                if !progress && !added && self.exhausted().is_none() {
                    let complete = !self.incomplete;
                    return Ok(match self.detector.saturated(&self.store, complete)? {
                        Some(w) => Verdict::Sat(w),
                        None if complete => Verdict::Unknown("saturated without a verified witness".into()),
                        None => Verdict::Unknown("no new clauses within the term-depth limit".into()),
                    });
                }
            } else if !progress {
                return Ok(Verdict::Unknown("no new clauses and the two-clause fallback is disabled".into()));
            }
        }
    }

    fn conclude(&self, found: Found<D::Witness>) -> Verdict<D::Witness> {
        match found {
            Found::Refuted(id) => Verdict::Unsat(Proof::trace(self.store.steps(), id)),
            Found::Witness(w) => Verdict::Sat(w),
        }
    }

    fn exhausted(&self) -> Option<String> {
        if let Some(limit) = self.cfg.time_limit {
            if self.started.elapsed() >= limit {
                return Some(format!("time limit of {:.1}s reached", limit.as_secs_f64()));
            }
        }
        if self.store.derived_count() >= self.cfg.max_steps {
            return Some(format!("step limit of {} reached", self.cfg.max_steps));
        }
        None
    }

    fn clause_key(&self, c: &Clause) -> (bool, usize, usize, ClauseId) {
        match self.mode {
            Mode::Propositional => (false, 0, c.len(), c.id),
            Mode::FirstOrder => (!c.is_ground(), c.vars().len(), c.len(), c.id),
        }
    }

    fn literal_order(&self, c: &Clause) -> Vec<Literal> {
        let mut lits = c.literals().to_vec();
        if self.mode == Mode::FirstOrder {
            lits.sort_by_key(|l| (!l.is_ground(), l.vars().len()));
        }
        lits
    }

    fn start_order(&self, round: usize) -> Vec<ClauseId> {
        let mut alive: Vec<&Clause> = self.store.alive().collect();
        alive.sort_by_key(|c| self.clause_key(c));
        let mut ids: Vec<ClauseId> = alive.iter().map(|c| c.id).collect();
        if self.cfg.start_rotation && !ids.is_empty() {
            let shift = (round - 1) % ids.len();
            ids.rotate_left(shift);
        }
        if let Some(seed) = self.cfg.seed {
            ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(round as u64)));
        }
        ids
    }

    /// Every variable of `c` mapped to a name no clause in the store or state uses.
    fn fresh_renaming(&mut self, c: &Clause) -> Substitution {
        let mut s = Substitution::new();
        for v in c.vars() {
            self.fresh += 1;
            let base = match v.rsplit_once('_') {
                Some((b, digits)) if !b.is_empty() && digits.chars().all(|ch| ch.is_ascii_digit()) => b,
                _ => &v,
            };
            s.bind(v.clone(), Term::Var(sym(&format!("{base}_{}", self.fresh))))
                .expect("fresh names never occur in the clause");
        }
        s
    }

    fn participant(&mut self, c: &Clause) -> Participant {
        let renaming = self.fresh_renaming(c);
        Participant::new(c, renaming)
    }

    /// Participant for a factor of `c`: `factor` binds variables of `c`.
    fn factored_participant(&mut self, c: &Clause, factor: &Substitution) -> Participant {
        let inst = factor.apply_clause(c);
        let fresh = self.fresh_renaming(&inst);
        let renaming = factor.compose(&fresh).expect("fresh renaming after a factor unifier");
        let own = c.vars();
        Participant::new(c, renaming.restrict(|v| own.contains(v)))
    }

    fn notify(&mut self, res: &CscResult) {
        self.stats.closed_states += 1;
        if let Some(obs) = self.observer.as_mut() {
            obs(res);
        }
    }

    fn record(&mut self, res: &CscResult) -> Option<ClauseId> {
        self.store.insert_derived(res.clause.clone(), |id| DeductionStep::from_result(id, res)).ok()
    }

    /// Depth-first search over extensions from one start literal; stores the best clause found.
    fn explore(&mut self, start: &Clause, x1: &Literal) -> Pass<D::Witness> {
        let p = self.participant(start);
        let x = p.lift(x1);
        let state = ExtensionState::begin(p, &x, self.limits)?;
        // Deepen only while shallower widths yield nothing storable.
        let mut ctx = Dfs { nodes: 0, best: None, width: INITIAL_WIDTH.min(self.limits.max_width), cut: false };
        loop {
            ctx.cut = false;
            if let Some(f) = self.extend_all(&state, &mut ctx)? {
                return Ok((Some(f), true));
            }
            if ctx.best.is_some() || !ctx.cut || self.over_budget(&ctx) {
                break;
            }
            ctx.width = (ctx.width * 2).min(self.limits.max_width);
        }
        let added = match ctx.best {
            Some(best) => self.record(&best).is_some(),
            None => false,
        };
        Ok((None, added))
    }

    fn over_budget(&self, ctx: &Dfs) -> bool {
        ctx.nodes >= self.cfg.node_budget
    }

    fn visit(&mut self, state: ExtensionState, ctx: &mut Dfs) -> Result<Option<Found<D::Witness>>, EngineError> {
        ctx.nodes += 1;
        self.stats.nodes += 1;
        let res = match state.close() {
            Ok(res) => res,
            Err(KernelError::ProductCapExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        self.notify(&res);
        if res.clause.is_empty() {
            let id = self.record(&res).expect("the empty clause is always stored");
            return Ok(Some(Found::Refuted(id)));
        }
        if let Some(w) = self.detector.closed(&res, &self.store)? {
            return Ok(Some(Found::Witness(w)));
        }
        let shorter = ctx.best.as_ref().is_none_or(|b| res.clause.len() < b.clause.len());
        if shorter && self.store.admits(&res.clause).is_ok() {
            ctx.best = Some(res);
        }
        if state.len() >= ctx.width || self.over_budget(ctx) {
            ctx.cut |= state.len() < self.limits.max_width;
            return Ok(None);
        }
        let last = state.entries().last().expect("nonempty").participant.clause.clone();
        for x in self.literal_order(&last) {
            if self.store.with_literal(&x.predicate, !x.positive).next().is_none() {
                continue;
            }
            let next = match state.select_extended(&x) {
                Ok(s) => s,
                Err(e) if e.is_rejection() => continue,
                Err(e) => return Err(e.into()),
            };
            if self.prune(&next, ctx) {
                continue;
            }
            if let Some(f) = self.extend_all(&next, ctx)? {
                return Ok(Some(f));
            }
            if self.over_budget(ctx) {
                break;
            }
        }
        Ok(None)
    }

    /// Committed remainders already clash, or cannot beat the best clause so far.
    fn prune(&self, state: &ExtensionState, ctx: &Dfs) -> bool {
        let committed: BTreeSet<Literal> = (0..state.len()).flat_map(|i| state.plus(i).literals().to_vec()).collect();
        if committed.iter().any(|l| committed.contains(&l.complement())) {
            return true;
        }
        // Remainders only grow along a propositional chain; with unifiers they may merge later.
        self.mode == Mode::Propositional && ctx.best.as_ref().is_some_and(|b| committed.len() >= b.clause.len())
    }

    fn extend_all(&mut self, state: &ExtensionState, ctx: &mut Dfs) -> Result<Option<Found<D::Witness>>, EngineError> {
        let pending = state.pending_instance().expect("extension starts from a pending literal");
        let mut candidates: Vec<Clause> =
            self.store.with_literal(&pending.predicate, !pending.positive).cloned().collect();
        candidates.sort_by_key(|c| self.clause_key(c));
        for c in candidates {
            for y in c.literals() {
                if y.predicate != pending.predicate || y.positive == pending.positive {
                    continue;
                }
                // Stored variables never occur in a state, so the check needs no renaming.
                if mgu_complementary(&pending, y).is_none() {
                    continue;
                }
                let p = self.participant(&c);
                let y = p.lift(y);
                match state.extend(p, &y) {
                    Ok(next) => {
                        if let Some(f) = self.visit(next, ctx)? {
                            return Ok(Some(f));
                        }
                    }
                    Err(KernelError::TermDepthExceeded { .. }) => self.incomplete = true,
                    Err(e) if e.is_rejection() => {}
                    Err(e) => return Err(e.into()),
                }
                if self.over_budget(ctx) {
                    return Ok(None);
                }
            }
        }
        Ok(None)
    }

    fn factors(&self, c: &Clause) -> Vec<Substitution> {
        const MAX_FACTORS: usize = 16;
        let mut out = vec![Substitution::new()];
        if self.mode == Mode::Propositional {
            return out;
        }
        let mut seen = vec![c.clone()];
        let mut frontier = vec![Substitution::new()];
        while let Some(s) = frontier.pop() {
            let inst = s.apply_clause(c);
            let lits = inst.literals();
            for i in 0..lits.len() {
                for j in i + 1..lits.len() {
                    if lits[i].positive != lits[j].positive {
                        continue;
                    }
                    let Some(m) = unify_atoms(&lits[i], &lits[j]) else { continue };
                    let Ok(next) = s.compose(&m) else { continue };
                    let own = c.vars();
                    let next = next.restrict(|v| own.contains(v));
                    let factor = next.apply_clause(c);
                    if seen.contains(&factor) || out.len() >= MAX_FACTORS {
                        continue;
                    }
                    seen.push(factor);
                    out.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        out
    }

    /// All two-clause contradictions among the alive clauses, factors included.
    fn binary_round(&mut self) -> Pass<D::Witness> {
        self.stats.binary_rounds += 1;
        let mut ids = self.store.alive_ids();
        let keyed: Vec<(bool, usize, usize, ClauseId)> =
            ids.iter().map(|id| self.clause_key(self.store.get(*id).expect("alive"))).collect();
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by_key(|&i| keyed[i]);
        ids = order.into_iter().map(|i| ids[i]).collect();
        let mut added = false;
        for (ai, &a) in ids.iter().enumerate() {
            for &b in &ids[ai..] {
                if !self.store.is_alive(a) {
                    break;
                }
                if !self.store.is_alive(b) {
                    continue;
                }
                let ca = self.store.get(a).expect("alive").clone();
                let cb = self.store.get(b).expect("alive").clone();
                if let Some(f) = self.resolve_pair(&ca, &cb, &mut added)? {
                    return Ok((Some(f), true));
                }
                if self.exhausted().is_some() {
                    return Ok((None, added));
                }
            }
        }
        Ok((None, added))
    }

    fn resolve_pair(
        &mut self,
        ca: &Clause,
        cb: &Clause,
        added: &mut bool,
    ) -> Result<Option<Found<D::Witness>>, EngineError> {
        let clashes = ca.iter().any(|x| cb.iter().any(|y| x.predicate == y.predicate && x.positive != y.positive));
        if !clashes {
            return Ok(None);
        }
        for fa in self.factors(ca) {
            for fb in self.factors(cb) {
                let pa = self.factored_participant(ca, &fa);
                let pb = self.factored_participant(cb, &fb);
                for x in pa.clause.literals() {
                    for y in pb.clause.literals() {
                        if x.predicate != y.predicate || x.positive == y.positive || mgu_complementary(x, y).is_none() {
                            continue;
                        }
                        let state = match ExtensionState::begin(pa.clone(), x, self.limits)
                            .and_then(|s| s.extend(pb.clone(), y))
                        {
                            Ok(s) => s,
                            Err(KernelError::TermDepthExceeded { .. }) => {
                                self.incomplete = true;
                                continue;
                            }
                            Err(e) if e.is_rejection() => continue,
                            Err(e) => return Err(e.into()),
                        };
                        let res = state.close()?;
                        self.notify(&res);
                        if res.clause.is_empty() {
                            let id = self.record(&res).expect("the empty clause is always stored");
                            return Ok(Some(Found::Refuted(id)));
                        }
                        if let Some(w) = self.detector.closed(&res, &self.store)? {
                            return Ok(Some(Found::Witness(w)));
                        }
                        if self.record(&res).is_some() {
                            *added = true;
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}
