use std::sync::mpsc;
use std::thread;

use csep_core::engine::{EngineError, Proof, Stats, Strategy, StrategyConfig};
use csep_core::fol::{self, FolVerdict};
use csep_core::io::{ModelDocument, ProofDocument};
use csep_core::logic::ClauseSet;
use csep_core::prop::{self, PropVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Prop,
    Fol,
    /// Propositional when every predicate is 0-ary.
    Auto,
}

pub enum Outcome {
    Prop(PropVerdict),
    Fol(FolVerdict),
}

impl Outcome {
    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Prop(v) => v.status(),
            Outcome::Fol(v) => v.status(),
        }
    }

    pub fn is_decided(&self) -> bool {
        match self {
            Outcome::Prop(v) => !v.is_unknown(),
            Outcome::Fol(v) => !v.is_unknown(),
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Outcome::Prop(v) => v.proof(),
            Outcome::Fol(v) => v.proof(),
        }
    }

    pub fn proof_document(&self, problem: &str) -> Option<ProofDocument> {
        self.proof().map(|p| ProofDocument::from_proof(problem, p))
    }

    pub fn model_document(&self, problem: &str) -> Option<ModelDocument> {
        match self {
            Outcome::Prop(v) => v.witness().map(|m| ModelDocument::from_model(problem, m)),
            Outcome::Fol(v) => v.witness().map(|m| ModelDocument::from_fol(problem, m)),
        }
    }

    /// Why the search stopped, for Unknown verdicts.
    pub fn reason(&self) -> Option<&str> {
        match self {
            Outcome::Prop(csep_core::engine::Verdict::Unknown(r))
            | Outcome::Fol(csep_core::engine::Verdict::Unknown(r)) => Some(r),
            _ => None,
        }
    }
}

pub fn solve(problem: &ClauseSet, mode: Mode, cfg: &StrategyConfig) -> Result<(Outcome, Stats), EngineError> {
    let propositional = match mode {
        Mode::Prop => true,
        Mode::Fol => false,
        Mode::Auto => problem.is_propositional(),
    };
    if propositional {
        prop::solve_observed(problem, cfg, None).map(|(v, s)| (Outcome::Prop(v), s))
    } else {
        fol::solve_fol_observed(problem, cfg, None).map(|(v, s)| (Outcome::Fol(v), s))
    }
}

/// Worker `i` of a portfolio: worker 0 runs `base` unchanged, the others reseed and
/// alternate the strategy.
fn worker_config(base: &StrategyConfig, i: usize) -> StrategyConfig {
    let mut cfg = base.clone();
    if i > 0 {
        cfg.seed = Some(base.seed.unwrap_or(0).wrapping_add(i as u64));
        if i % 2 == 1 {
            cfg.strategy = match base.strategy {
                Strategy::Extension => Strategy::Binary,
                Strategy::Binary => Strategy::Extension,
            };
        }
    }
    cfg
}

/// Run `workers` engines on separate threads and keep the first decided verdict. Workers
/// share nothing but the channel; losers are abandoned when the process exits.
pub fn portfolio(
    problem: &ClauseSet,
    mode: Mode,
    cfg: &StrategyConfig,
    workers: usize,
) -> Result<(Outcome, Stats), EngineError> {
    let (tx, rx) = mpsc::channel();
    for i in 0..workers.max(1) {
        let tx = tx.clone();
        let problem = problem.clone();
        let cfg = worker_config(cfg, i);
        thread::spawn(move || {
            let _ = tx.send(solve(&problem, mode, &cfg));
        });
    }
    drop(tx);
    let mut fallback = None;
    for result in rx {
        match result {
            Ok((outcome, stats)) if outcome.is_decided() => return Ok((outcome, stats)),
            Ok(undecided) => fallback = fallback.or(Some(Ok(undecided))),
            Err(e) => fallback = Some(fallback.unwrap_or(Err(e))),
        }
    }
    fallback.expect("at least one worker reports")
}
