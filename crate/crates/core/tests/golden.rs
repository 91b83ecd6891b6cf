//! Recorded extension orders replayed through the kernel, and the engines on the same sets.

mod common;

use common::problem;
use common::worked_sets::{check_replay, replays};
use csep_core::engine::{StrategyConfig, Verdict};
use csep_core::verify::check_proof;
use csep_core::{fol, prop};

fn replay_named(name: &str) {
    let r = replays().into_iter().find(|r| r.name == name).expect("known replay");
    check_replay(&r).unwrap();
}

#[test]
fn every_recorded_order_is_reproduced() {
    for r in replays() {
        check_replay(&r).unwrap();
    }
}

#[test]
fn order_of_the_four_clause_set_matters() {
    replay_named("four clauses in input order");
    replay_named("four clauses in reverse order");
}

#[test]
fn first_order_unifiers_match() {
    replay_named("symmetry and transitivity");
    replay_named("two stages, first step");
    replay_named("ladder, refutation");
}

#[test]
fn engines_refute_the_unsatisfiable_sets() {
    let cfg = StrategyConfig::default();
    for file in ["four_clause_unsat.p", "five_var_unsat.cnf"] {
        let s = problem(file);
        let verdict = prop::solve(&s, &cfg).unwrap();
        let proof = verdict.proof().unwrap_or_else(|| panic!("{file}: {}", verdict.status()));
        check_proof(proof, &s).unwrap();
    }
    for file in ["two_stage.p", "ladder.p"] {
        let s = problem(file);
        let verdict = fol::solve_fol(&s, &cfg).unwrap();
        let proof = verdict.proof().unwrap_or_else(|| panic!("{file}: {}", verdict.status()));
        check_proof(proof, &s).unwrap();
    }
}

#[test]
fn engines_find_models_of_the_satisfiable_sets() {
    let cfg = StrategyConfig::default();
    for file in ["three_clause_sat.p", "sat_toy.cnf"] {
        let s = problem(file);
        match prop::solve(&s, &cfg).unwrap() {
            Verdict::Sat(model) => assert!(model.satisfies_all(&s), "{file}: {model}"),
            other => panic!("{file}: {}", other.status()),
        }
    }
}
