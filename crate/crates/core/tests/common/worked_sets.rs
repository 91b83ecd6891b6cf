//! Recorded extension orders and blocked orders on the worked sets under `problems/`.

use std::collections::BTreeMap;

use csep_core::io::parse_term;
use csep_core::kernel::{CscResult, Limits};
use csep_core::logic::{Clause, Term};
use csep_core::verify::{linear_chain_of, ordered_extensions};

use super::{clause, derived, link, lit, problem, replay, Link};

pub struct Replay {
    pub name: &'static str,
    pub file: &'static str,
    /// Clauses derived by earlier replays, numbered after the inputs.
    pub derived: &'static [(u32, &'static [&'static str])],
    pub links: Vec<Link<'static>>,
    pub csc: &'static [&'static str],
    pub sigma: Option<&'static [(&'static str, &'static str)]>,
}

pub fn replays() -> Vec<Replay> {
    vec![
        Replay {
            name: "three clauses separate to ~q",
            file: "three_clause_sat.p",
            derived: &[],
            links: vec![link(3, None, Some("~t")), link(2, Some("t"), Some("p")), link(1, Some("~p"), None)],
            csc: &["~q"],
            sigma: None,
        },
        Replay {
            name: "four clauses in input order",
            file: "four_clause_unsat.p",
            derived: &[],
            links: vec![
                link(1, None, Some("p")),
                link(2, Some("~p"), Some("~q")),
                link(3, Some("q"), Some("r")),
                link(4, Some("~r"), None),
            ],
            csc: &["r"],
            sigma: None,
        },
        Replay {
            name: "four clauses in reverse order",
            file: "four_clause_unsat.p",
            derived: &[],
            links: vec![
                link(4, None, Some("~r")),
                link(3, Some("r"), Some("q")),
                link(2, Some("~q"), Some("~p")),
                link(1, Some("p"), None),
            ],
            csc: &[],
            sigma: None,
        },
        Replay {
            name: "five variables, first step",
            file: "five_var_unsat.cnf",
            derived: &[],
            links: vec![
                link(1, None, Some("v1")),
                link(2, Some("~v1"), Some("v2")),
                link(3, Some("~v2"), Some("v3")),
                link(4, Some("~v3"), Some("v4")),
                link(5, Some("~v4"), None),
            ],
            csc: &["v5"],
            sigma: None,
        },
        Replay {
            name: "five variables, refutation",
            file: "five_var_unsat.cnf",
            derived: &[(7, &["v5"])],
            links: vec![
                link(7, None, Some("v5")),
                link(6, Some("~v5"), Some("v1")),
                link(2, Some("~v1"), Some("v2")),
                link(3, Some("~v2"), Some("v3")),
                link(4, Some("~v3"), Some("v4")),
                link(5, Some("~v4"), None),
            ],
            csc: &[],
            sigma: None,
        },
        Replay {
            name: "symmetry and transitivity",
            file: "symmetric_transitive.p",
            derived: &[],
            links: vec![
                link(4, None, Some("~p(f(a1), a2)")),
                link(2, Some("p(X21, X23)"), Some("~p(X21, X22)")),
                link(1, Some("p(X12, X11)"), Some("~p(X11, X12)")),
                link(3, Some("p(X31, f(X31))"), None),
            ],
            csc: &["~p(a1, a2)"],
            sigma: Some(&[
                ("X11", "a1"),
                ("X12", "f(a1)"),
                ("X21", "f(a1)"),
                ("X22", "a1"),
                ("X23", "a2"),
                ("X31", "a1"),
            ]),
        },
        Replay {
            name: "two stages, first step",
            file: "two_stage.p",
            derived: &[],
            links: vec![
                link(4, None, Some("p1(a)")),
                link(1, Some("~p1(X1)"), Some("p3(X1, f1(X1))")),
                link(5, Some("~p3(a, X3)"), Some("p5(X3)")),
                link(7, Some("~p5(X5)"), Some("~p4(X5)")),
                link(2, Some("p4(f1(X2))"), None),
            ],
            csc: &["p2(a)"],
            sigma: Some(&[("X1", "a"), ("X2", "a"), ("X3", "f1(a)"), ("X5", "f1(a)")]),
        },
        Replay {
            name: "two stages, refutation",
            file: "two_stage.p",
            derived: &[(8, &["p2(a)"])],
            links: vec![
                link(3, None, Some("p5(a)")),
                link(6, Some("~p5(X4)"), Some("~p2(X4)")),
                link(8, Some("p2(a)"), None),
            ],
            csc: &[],
            sigma: Some(&[("X4", "a")]),
        },
        Replay {
            name: "ladder, first step",
            file: "ladder.p",
            derived: &[],
            links: vec![
                link(1, None, Some("p(a1)")),
                link(3, Some("~p(X31)"), Some("~q(X32)")),
                link(5, Some("q(a2)"), None),
            ],
            csc: &["~l(a1, a2)"],
            sigma: Some(&[("X31", "a1"), ("X32", "a2")]),
        },
        Replay {
            name: "ladder, refutation",
            file: "ladder.p",
            derived: &[(6, &["~l(a1, a2)"])],
            links: vec![
                link(6, None, Some("~l(a1, a2)")),
                link(2, Some("l(a1, X22)"), Some("~d(X21)")),
                link(4, Some("d(a2)"), None),
            ],
            csc: &[],
            sigma: Some(&[("X21", "a2"), ("X22", "a2")]),
        },
    ]
}

/// Replay through the kernel and compare the conclusion, the unifier and the linear chain.
pub fn check_replay(r: &Replay) -> Result<CscResult, String> {
    let mut clauses = problem(r.file).clauses().to_vec();
    clauses.extend(r.derived.iter().map(|(id, lits)| derived(*id, lits)));
    let res = replay(&clauses, &r.links);
    let expected = clause(r.csc);
    if res.clause != expected {
        return Err(format!("{}: expected {expected}, got {}", r.name, res.clause));
    }
    let chain = linear_chain_of(&res.state).map_err(|e| format!("{}: {e}", r.name))?;
    if chain.result != res.clause {
        return Err(format!("{}: linear chain gives {}", r.name, chain.result));
    }
    if let Some(sigma) = r.sigma {
        let got: BTreeMap<String, Term> =
            res.state.sigma().iter().map(|(v, t)| (v.to_string(), res.state.sigma().apply_term(t))).collect();
        let want: BTreeMap<String, Term> = sigma.iter().map(|(v, t)| (v.to_string(), parse_term(t).unwrap())).collect();
        if got != want {
            return Err(format!("{}: unifier {got:?}, expected {want:?}", r.name));
        }
    }
    Ok(res)
}

fn cscs(order: &[Clause]) -> Result<Vec<Clause>, String> {
    ordered_extensions(order, Limits::default())
        .map(|v| v.into_iter().map(|e| e.csc).collect())
        .map_err(|e| e.to_string())
}

fn pick(file: &str, order: &[usize]) -> Vec<Clause> {
    let s = problem(file);
    order.iter().map(|&i| s.clauses()[i - 1].clone()).collect()
}

fn expect(name: &str, got: Vec<Clause>, want: &[&[&str]]) -> Result<(), String> {
    let want: Vec<Clause> = want.iter().map(|c| clause(c)).collect();
    if got == want {
        Ok(())
    } else {
        Err(format!("{name}: got {got:?}, expected {want:?}"))
    }
}

/// Grouping the associativity set two ways yields different clauses.
pub fn grouping_changes_the_result() -> Result<(), String> {
    let s = problem("associativity.p").clauses().to_vec();
    expect("all three at once", cscs(&pick("associativity.p", &[4, 2, 1]))?, &[&["~q"]])?;
    let left = cscs(&[s[0].clone(), s[1].clone()])?;
    expect("left pair", left.clone(), &[&["~q", "t"]])?;
    expect("left pair then unit", cscs(&[left[0].clone(), s[3].clone()])?, &[&["~q"]])?;
    let right = cscs(&[s[1].clone(), s[3].clone()])?;
    expect("right pair", right.clone(), &[&["p"]])?;
    expect("first clause then right pair", cscs(&[s[0].clone(), right[0].clone()])?, &[&["t", "~q"]])?;
    expect("right pair then first clause", cscs(&[right[0].clone(), s[0].clone()])?, &[&["t", "~q"]])
}

/// Orders that no choice of literals closes.
pub fn blocked_orders() -> Result<(), String> {
    expect("reversed linear order", cscs(&pick("blocked_order.p", &[4, 3, 2, 1]))?, &[])?;
    expect("reversed first-order units", cscs(&pick("unit_blocked.p", &[4, 3, 2, 1]))?, &[])?;
    expect("unit before its partner", cscs(&pick("four_clause_unsat.p", &[1, 2, 4, 3]))?, &[])?;
    expect("unit second", cscs(&pick("four_clause_unsat.p", &[1, 4, 2, 3]))?, &[])
}

/// In input order the second clause must extend through ~q; selecting r never closes.
pub fn selection_matters() -> Result<(), String> {
    let forward = ordered_extensions(&pick("four_clause_unsat.p", &[1, 2, 3, 4]), Limits::default())
        .map_err(|e| e.to_string())?;
    if forward.is_empty() {
        return Err("input order does not close".into());
    }
    match forward.iter().find(|e| e.main[1] != lit("~q")) {
        Some(e) => Err(format!("closed through {}", e.main[1])),
        None => Ok(()),
    }
}
