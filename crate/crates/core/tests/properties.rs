mod common;

use common::*;
use csep_core::engine::{StrategyConfig, Verdict};
use csep_core::io::{parse_dimacs, parse_tptp_cnf, write_dimacs, write_tptp_cnf};
use csep_core::kernel::{is_standard_contradiction, CscResult, DEFAULT_PRODUCT_CAP};
use csep_core::logic::{unify_terms, Clause, ClauseSet, Literal, Substitution, Term};
use csep_core::prop as prop_engine;
use csep_core::verify::{check_proof, linear_chain_of, truth_table_sat};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::app("g", vec![s, t])),
        ]
    })
}

fn ground_term() -> impl Strategy<Value = Term> {
    term().prop_filter("ground", Term::is_ground)
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        (any::<bool>(), term()).prop_map(|(pos, t)| Literal::new(pos, "p", vec![t])),
        (any::<bool>(), term(), term()).prop_map(|(pos, s, t)| Literal::new(pos, "q", vec![s, t])),
        any::<bool>().prop_map(|pos| Literal::new(pos, "r", vec![])),
    ]
}

fn prop_literals(vars: u8, max_len: usize) -> impl Strategy<Value = Vec<(u8, bool)>> {
    prop::collection::vec((1..=vars, any::<bool>()), 1..=max_len)
}

/// Clauses without repeated or complementary literals.
fn clean_clause(vars: u8, max_len: usize) -> impl Strategy<Value = Vec<(u8, bool)>> {
    prop_literals(vars, max_len).prop_map(|mut c| {
        c.sort();
        c.dedup_by_key(|(v, _)| *v);
        c
    })
}

fn cnf(vars: u8, max_clauses: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<(u8, bool)>>> {
    prop::collection::vec(clean_clause(vars, max_len), 1..=max_clauses)
}

fn solve_recording(s: &ClauseSet) -> (prop_engine::PropVerdict, Vec<CscResult>) {
    let mut seen = Vec::new();
    let mut record = |r: &CscResult| seen.push(r.clone());
    let (verdict, _) = prop_engine::solve_observed(s, &StrategyConfig::default(), Some(&mut record)).unwrap();
    (verdict, seen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unifiers_equalize_and_are_idempotent(s in term(), t in term()) {
        if let Some(mgu) = unify_terms(&s, &t) {
            prop_assert_eq!(mgu.apply_term(&s), mgu.apply_term(&t));
            prop_assert!(mgu.is_idempotent());
        }
        prop_assert!(unify_terms(&s, &s).is_some());
    }

    #[test]
    fn ground_instances_unify_with_their_pattern(t in term(), a in ground_term(), b in ground_term(), c in ground_term()) {
        let grounding = Substitution::from_pairs([("X".into(), a), ("Y".into(), b), ("Z".into(), c)]).unwrap();
        let instance = grounding.apply_term(&t);
        let mgu = unify_terms(&t, &instance).expect("an instance unifies with its pattern");
        prop_assert_eq!(mgu.apply_term(&t), instance);
    }

    #[test]
    fn composition_applies_left_then_right(t in term(), a in ground_term(), c in ground_term()) {
        let first = Substitution::from_pairs([("X".into(), a), ("Y".into(), Term::app("f", vec![Term::var("Z")]))]).unwrap();
        let second = Substitution::from_pairs([("Z".into(), c)]).unwrap();
        let composed = first.compose(&second).unwrap();
        prop_assert_eq!(composed.apply_term(&t), second.apply_term(&first.apply_term(&t)));
    }

    #[test]
    fn standard_contradiction_is_unsatisfiability(family in prop::collection::vec(prop_literals(4, 3), 1..=4)) {
        let clauses: Vec<Clause> = family.iter().map(|c| prop_clause(c)).collect();
        let closed = is_standard_contradiction(&clauses, DEFAULT_PRODUCT_CAP).unwrap();
        prop_assert_eq!(closed, !brute_sat(&clauses));
    }

    #[test]
    fn truth_table_agrees_with_case_splitting(clauses in cnf(5, 6, 3)) {
        let s = prop_set(&clauses);
        prop_assert_eq!(truth_table_sat(s.clauses()).unwrap().satisfiable, brute_sat(s.clauses()));
    }

    #[test]
    fn dimacs_round_trips(clauses in cnf(6, 6, 4)) {
        let s = prop_set(&clauses);
        let back = parse_dimacs(&write_dimacs(&s).unwrap()).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(back.clauses.clauses(), s.clauses());
    }

    #[test]
    fn tptp_round_trips(clauses in prop::collection::vec(prop::collection::vec(literal(), 0..4), 1..5)) {
        let s = ClauseSet::from_clauses(clauses.into_iter().map(Clause::new).collect()).unwrap();
        let back = parse_tptp_cnf(&write_tptp_cnf(&s)).unwrap();
        prop_assert_eq!(back.clauses.clauses(), s.clauses());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solver_matches_the_oracle(clauses in cnf(4, 7, 3)) {
        let s = prop_set(&clauses);
        let (verdict, seen) = solve_recording(&s);
        for res in &seen {
            prop_assert_eq!(&linear_chain_of(&res.state).unwrap().result, &res.clause);
            for i in 1..res.state.len() {
                let main = res.state.extended_instance(i - 1).unwrap();
                prop_assert_eq!(res.state.secondary_instance(i).unwrap(), main.complement());
            }
        }
        match verdict {
            Verdict::Sat(model) => {
                prop_assert!(brute_sat(s.clauses()));
                prop_assert!(model.satisfies_all(&s));
            }
            Verdict::Unsat(proof) => {
                prop_assert!(!brute_sat(s.clauses()));
                prop_assert!(check_proof(&proof, &s).is_ok());
                for m in mutants(&proof) {
                    prop_assert!(check_proof(&m, &s).is_err());
                }
            }
            Verdict::Unknown(reason) => prop_assert!(false, "unknown: {}", reason),
        }
    }
}
