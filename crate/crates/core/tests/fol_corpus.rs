//! First-order refutations and models on small hand-built sets.

mod common;

use common::*;
use csep_core::engine::{StrategyConfig, Verdict};
use csep_core::fol::{solve_fol, solve_fol_observed, FolVerdict, MAX_EVALUATIONS};
use csep_core::kernel::CscResult;
use csep_core::logic::{Clause, ClauseSet, Term};
use csep_core::verify::{check_proof, ground_entails, linear_chain_of, GroundBase};

fn solve_recording(s: &ClauseSet) -> (FolVerdict, Vec<CscResult>) {
    let mut seen = Vec::new();
    let mut record = |r: &CscResult| seen.push(r.clone());
    let (verdict, _) = solve_fol_observed(s, &StrategyConfig::default(), Some(&mut record)).unwrap();
    (verdict, seen)
}

fn base() -> GroundBase {
    GroundBase { constants: vec![Term::constant("fresh")], depth: 2 }
}

fn assert_refuted(name: &str, s: &ClauseSet) {
    let (verdict, seen) = solve_recording(s);
    let proof = verdict.proof().unwrap_or_else(|| panic!("{name}: {}", verdict.status()));
    check_proof(proof, s).unwrap_or_else(|e| panic!("{name}: {e}"));
    for res in &seen {
        assert_eq!(linear_chain_of(&res.state).unwrap().result, res.clause, "{name}");
        let parents = participants(res);
        let entailed = ground_entails(&parents, &res.clause, &base())
            .unwrap_or_else(|e| panic!("{name}: {e} {parents:?} {}", res.clause));
        assert!(entailed, "{name}: {}", res.clause);
    }
}

#[test]
fn epr_corpus_is_refuted() {
    for (i, text) in EPR_UNSAT.iter().enumerate() {
        assert_refuted(&format!("epr #{i}"), &tptp(text));
    }
}

#[test]
fn worked_sets_are_refuted() {
    for file in ["two_stage.p", "ladder.p"] {
        assert_refuted(file, &problem(file));
    }
}

#[test]
fn witness_suite_finds_verified_models() {
    for (i, text) in FOL_SAT.iter().enumerate() {
        let s = tptp(text);
        let model = match solve_fol(&s, &StrategyConfig::default()).unwrap() {
            Verdict::Sat(m) => m,
            other => panic!("toy #{i}: {}", other.status()),
        };
        let mut budget = MAX_EVALUATIONS;
        for (id, l) in &model.sketch.selected_literals {
            let unit = Clause::new(vec![l.clone()]);
            assert_eq!(
                model.interpretation.satisfies(&unit, &mut budget),
                Some(true),
                "toy #{i}: clause {id} literal {l}"
            );
        }
        for c in &s {
            assert_eq!(model.interpretation.satisfies(c, &mut budget), Some(true), "toy #{i}: {c}");
        }
    }
}
