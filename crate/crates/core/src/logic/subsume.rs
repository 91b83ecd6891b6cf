use std::collections::BTreeMap;

use super::clause::Clause;
use super::literal::Literal;
use super::term::{Symbol, Term};

/// One-way bindings: pattern variables to subject terms. Subject variables are rigid.
type Matching = BTreeMap<Symbol, Term>;

fn match_term(m: &mut Matching, pattern: &Term, subject: &Term) -> bool {
    match pattern {
        Term::Var(v) => match m.get(v) {
            Some(bound) => bound == subject,
            None => {
                m.insert(v.clone(), subject.clone());
                true
            }
        },
        Term::App(f, ps) => match subject {
            Term::App(g, ss) if f == g && ps.len() == ss.len() => ps.iter().zip(ss).all(|(p, s)| match_term(m, p, s)),
            _ => false,
        },
    }
}

fn match_literal(m: &Matching, pattern: &Literal, subject: &Literal) -> Option<Matching> {
    if pattern.positive != subject.positive
        || pattern.predicate != subject.predicate
        || pattern.args.len() != subject.args.len()
    {
        return None;
    }
    let mut next = m.clone();
    pattern.args.iter().zip(&subject.args).all(|(p, s)| match_term(&mut next, p, s)).then_some(next)
}

fn search(m: &Matching, rest: &[&Literal], target: &Clause) -> bool {
    let Some((first, tail)) = rest.split_first() else {
        return true;
    };
    target.iter().any(|l| match match_literal(m, first, l) {
        Some(next) => search(&next, tail, target),
        None => false,
    })
}

/// Some instance of `general` is a subset of `specific`.
pub fn subsumes(general: &Clause, specific: &Clause) -> bool {
    if general.len() > specific.len() && general.is_ground() {
        return false;
    }
    // Most constrained literals first: fewer variables means fewer candidate matches.
    let mut order: Vec<&Literal> = general.iter().collect();
    order.sort_by_key(|l| (std::cmp::Reverse(l.depth()), l.vars().len()));
    search(&Matching::new(), &order, specific)
}
