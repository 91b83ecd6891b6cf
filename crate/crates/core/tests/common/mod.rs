#![allow(dead_code)]

pub mod worked_sets;

use std::path::PathBuf;

use csep_core::engine::{DeductionStep, Proof};
use csep_core::io::{parse_literal, parse_problem, parse_tptp_cnf};
use csep_core::kernel::{CscResult, ExtensionState, Limits, Participant};
use csep_core::logic::{Clause, ClauseId, ClauseSet, Literal, Origin, Substitution, Term};

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

pub fn problem(file: &str) -> ClauseSet {
    let path = problems_dir().join(file);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_problem(file, &text).unwrap_or_else(|e| panic!("{file}: {e}")).clauses
}

pub fn tptp(text: &str) -> ClauseSet {
    parse_tptp_cnf(text).unwrap_or_else(|e| panic!("{e}\n{text}")).clauses
}

pub fn lit(text: &str) -> Literal {
    parse_literal(text).unwrap()
}

pub fn clause(lits: &[&str]) -> Clause {
    lits.iter().map(|l| lit(l)).collect()
}

/// One link of a recorded extension: the clause (1-based), the literal unified with the
/// previous main-boundary literal, and the literal chosen as the next one.
pub struct Link<'a> {
    pub clause: usize,
    pub via: Option<&'a str>,
    pub main: Option<&'a str>,
}

pub const fn link<'a>(clause: usize, via: Option<&'a str>, main: Option<&'a str>) -> Link<'a> {
    Link { clause, via, main }
}

/// A derived clause numbered after the inputs.
pub fn derived(id: u32, lits: &[&str]) -> Clause {
    clause(lits).with_id(ClauseId(id), Origin::Derived)
}

/// Replay an extension through the kernel. `clauses[i - 1]` is clause `i`; clauses keep
/// their own variables, which must already be disjoint across the links.
pub fn replay(clauses: &[Clause], links: &[Link]) -> CscResult {
    let participant = |i: usize| Participant::ground(&clauses[i - 1]);
    let first = &links[0];
    let mut state =
        ExtensionState::begin(participant(first.clause), &lit(first.main.unwrap()), Limits::default()).unwrap();
    for l in &links[1..] {
        state = state.extend(participant(l.clause), &lit(l.via.unwrap())).unwrap();
        if let Some(x) = l.main {
            state = state.select_extended(&lit(x)).unwrap();
        }
    }
    state.close().unwrap()
}

/// Unsatisfiable function-free problems with at most eight clauses and two constants.
pub const EPR_UNSAT: [&str; 10] = [
    "cnf(a, axiom, p(a)). cnf(b, axiom, ~p(X) | q(X)). cnf(c, axiom, ~q(a)).",
    "cnf(a, axiom, r(a, b)). cnf(b, axiom, ~r(X, Y) | r(Y, X)). cnf(c, axiom, ~r(b, a)).",
    "cnf(a, axiom, p(a) | p(b)). cnf(b, axiom, ~p(X) | q(X)). cnf(c, axiom, ~q(a)). cnf(d, axiom, ~q(b)).",
    "cnf(a, axiom, r(a, b)). cnf(b, axiom, ~r(X, Y) | ~r(Y, Z) | r(X, Z)). cnf(c, axiom, r(b, a)). cnf(d, axiom, ~r(a, a)).",
    "cnf(a, axiom, p(X) | q(X)). cnf(b, axiom, ~p(a)). cnf(c, axiom, ~q(a)).",
    "cnf(a, axiom, ~p(X, Y) | p(Y, X)). cnf(b, axiom, p(a, b)). cnf(c, axiom, ~p(b, a) | q(a)). cnf(d, axiom, ~q(a)).",
    "cnf(a, axiom, p(X) | ~q(X)). cnf(b, axiom, q(a)). cnf(c, axiom, q(b)). cnf(d, axiom, ~p(a) | ~p(b)).",
    "cnf(a, axiom, r(X, X)). cnf(b, axiom, ~r(a, Y) | s(Y)). cnf(c, axiom, ~s(a)).",
    "cnf(a, axiom, p(X) | q(Y)). cnf(b, axiom, ~p(a)). cnf(c, axiom, ~q(b)).",
    "cnf(a, axiom, p(a)). cnf(b, axiom, ~p(X) | q(X)). cnf(c, axiom, ~q(X) | r(X)). cnf(d, axiom, ~r(X) | s(X)). cnf(e, axiom, ~s(a)).",
];

/// Satisfiable problems whose models come from one literal per clause.
pub const FOL_SAT: [&str; 20] = [
    "cnf(a, axiom, p(a)).",
    "cnf(a, axiom, p(a)). cnf(b, axiom, ~q(b)).",
    "cnf(a, axiom, p(X) | q(X)). cnf(b, axiom, ~r(a)).",
    "cnf(a, axiom, p(a) | q(b)). cnf(b, axiom, r(X)).",
    "cnf(a, axiom, ~p(X) | q(X)). cnf(b, axiom, p(a)).",
    "cnf(a, axiom, ~p(X) | q(X)). cnf(b, axiom, ~q(a)).",
    "cnf(a, axiom, p(a)). cnf(b, axiom, ~p(b)).",
    "cnf(a, axiom, r(a, b)). cnf(b, axiom, ~r(b, a)).",
    "cnf(a, axiom, p(a) | q(a)). cnf(b, axiom, ~p(b)). cnf(c, axiom, ~q(b)).",
    "cnf(a, axiom, p(a)). cnf(b, axiom, ~p(b) | q(a)). cnf(c, axiom, ~q(b)).",
    "cnf(a, axiom, s(a, a)). cnf(b, axiom, ~s(a, b)). cnf(c, axiom, ~s(b, a)).",
    "cnf(a, axiom, p(X) | ~q(X)). cnf(b, axiom, q(a)).",
    "cnf(a, axiom, p(a) | p(b)). cnf(b, axiom, ~p(a) | ~p(b)).",
    "cnf(a, axiom, q(X)). cnf(b, axiom, ~p(a)). cnf(c, axiom, p(b) | r(a)).",
    "cnf(a, axiom, r(X, Y) | t(Y)). cnf(b, axiom, ~t(a)).",
    "cnf(a, axiom, p(a, b) | q). cnf(b, axiom, ~q | r). cnf(c, axiom, ~r).",
    "cnf(a, axiom, m(a)). cnf(b, axiom, ~m(b)). cnf(c, axiom, m(X) | n(X)).",
    "cnf(a, axiom, ~e(a, b)). cnf(b, axiom, e(a, a)). cnf(c, axiom, e(b, b)).",
    "cnf(a, axiom, p(X) | q(X) | r(X)). cnf(b, axiom, ~p(a)). cnf(c, axiom, ~q(a)).",
    "cnf(a, axiom, ~h(X) | g(X)). cnf(b, axiom, h(a) | k(b)). cnf(c, axiom, ~g(b)).",
];

/// Parents of a closed extension, as renamed before unification.
pub fn participants(res: &CscResult) -> Vec<Clause> {
    res.state.entries().iter().map(|e| e.participant.clause.clone()).collect()
}

/// Clause over atoms `v{n}` from `(n, polarity)` pairs.
pub fn prop_clause(lits: &[(u8, bool)]) -> Clause {
    lits.iter().map(|&(n, positive)| Literal::prop(&format!("v{n}"), positive)).collect()
}

pub fn prop_set(clauses: &[Vec<(u8, bool)>]) -> ClauseSet {
    ClauseSet::from_clauses(clauses.iter().map(|c| prop_clause(c)).collect()).unwrap()
}

/// Satisfiability by recursive case splitting on atoms in reverse name order; shares no
/// code with the library's truth table.
pub fn brute_sat(clauses: &[Clause]) -> bool {
    let atoms: Vec<String> = clauses
        .iter()
        .flat_map(|c| c.iter().map(|l| l.predicate.to_string()))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    fn go(clauses: &[Clause], atoms: &[String], fixed: &mut Vec<(String, bool)>) -> bool {
        let value = |l: &Literal| fixed.iter().find(|(a, _)| **a == *l.predicate).map(|&(_, v)| v == l.positive);
        if clauses.iter().any(|c| c.iter().all(|l| value(l) == Some(false))) {
            return false;
        }
        let Some((atom, rest)) = atoms.split_first() else {
            return true;
        };
        [false, true].into_iter().any(|v| {
            fixed.push((atom.clone(), v));
            let sat = go(clauses, rest, fixed);
            fixed.pop();
            sat
        })
    }
    go(clauses, &atoms, &mut Vec::new())
}

/// Single-literal and single-binding corruptions of a proof, each of which the checker
/// must reject: recorded conclusions and boundary literals stop matching the recomputed
/// ones, and a binding to an unused constant changes some instance literal.
pub fn mutants(proof: &Proof) -> Vec<Proof> {
    let poison = Term::constant("mutant_constant");
    let mut out = Vec::new();
    for (si, step) in proof.steps.iter().enumerate() {
        let mut edit = |f: &mut dyn FnMut(&mut DeductionStep)| {
            let mut m = proof.clone();
            f(&mut m.steps[si]);
            out.push(m);
        };
        for li in 0..step.csc.len() {
            edit(&mut |s| {
                let mut lits = s.csc.literals().to_vec();
                lits[li] = lits[li].complement();
                s.csc = Clause::new(lits);
            });
            edit(&mut |s| {
                let mut lits = s.csc.literals().to_vec();
                lits.remove(li);
                s.csc = Clause::new(lits);
            });
        }
        edit(&mut |s| {
            let mut lits = s.csc.literals().to_vec();
            lits.push(Literal::prop("mutant_atom", true));
            s.csc = Clause::new(lits);
        });
        for pi in 0..step.parents.len() {
            if step.parents[pi].extended.is_some() {
                edit(&mut |s| {
                    let l = s.parents[pi].extended.as_mut().unwrap();
                    *l = l.complement();
                });
            }
            if step.parents[pi].secondary.is_some() {
                edit(&mut |s| {
                    let l = s.parents[pi].secondary.as_mut().unwrap();
                    *l = l.complement();
                });
            }
            let vars: Vec<_> = step.parents[pi].substitution.domain().cloned().collect();
            for v in vars {
                edit(&mut |s| {
                    let pairs = s.parents[pi]
                        .substitution
                        .iter()
                        .map(|(w, t)| (w.clone(), if *w == v { poison.clone() } else { t.clone() }));
                    s.parents[pi].substitution = Substitution::from_pairs(pairs).unwrap();
                });
            }
        }
    }
    out
}
