//! Every standard extension through a fixed sequence of clauses.

use crate::kernel::{ExtensionState, KernelError, Limits, Participant};
use crate::logic::{sym, Clause, Literal, Substitution, Term};

pub const MAX_ENUMERATED_STATES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedExtension {
    /// Instantiated main-boundary literals.
    pub main: Vec<Literal>,
    pub csc: Clause,
}

/// Close every way of chaining `order` in sequence, each clause used exactly once.
///
/// Position `i` gets its variables suffixed with `_o{i}` so repeated clauses stay disjoint.
pub fn ordered_extensions(order: &[Clause], limits: Limits) -> Result<Vec<OrderedExtension>, KernelError> {
    let participants: Vec<Participant> = order.iter().enumerate().map(|(i, c)| positioned(c, i)).collect();
    let Some(first) = participants.first() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut budget = MAX_ENUMERATED_STATES;
    for x1 in first.clause.iter() {
        let state = ExtensionState::begin(first.clone(), x1, limits)?;
        walk(&state, &participants[1..], &mut out, &mut budget)?;
    }
    Ok(out)
}

fn positioned(c: &Clause, i: usize) -> Participant {
    let renaming = Substitution::from_pairs(c.vars().into_iter().map(|v| {
        let fresh = sym(&format!("{v}_o{i}"));
        (v, Term::Var(fresh))
    }))
    .expect("fresh variables");
    Participant::new(c, renaming)
}

fn walk(
    state: &ExtensionState,
    rest: &[Participant],
    out: &mut Vec<OrderedExtension>,
    budget: &mut usize,
) -> Result<(), KernelError> {
    let Some((next, rest)) = rest.split_first() else {
        return Ok(());
    };
    for y in next.clause.iter() {
        if *budget == 0 {
            return Err(KernelError::ProductCapExceeded { cap: MAX_ENUMERATED_STATES as u64 });
        }
        *budget -= 1;
        let extended = match state.extend(next.clone(), y) {
            Ok(s) => s,
            Err(e) if e.is_rejection() => continue,
            Err(e) => return Err(e),
        };
        if rest.is_empty() {
            let res = extended.close()?;
            out.push(OrderedExtension { main: res.state.main_boundary(), csc: res.clause });
            continue;
        }
        for x in next.clause.iter() {
            match extended.select_extended(x) {
                Ok(s) => walk(&s, rest, out, budget)?,
                Err(e) if e.is_rejection() => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(lits: &[&str]) -> Clause {
        lits.iter()
            .map(|s| match s.strip_prefix('~') {
                Some(n) => Literal::prop(n, false),
                None => Literal::prop(s, true),
            })
            .collect()
    }

    #[test]
    fn enumerates_all_closings() {
        let found = ordered_extensions(&[c(&["p", "q"]), c(&["~p", "~q"])], Limits::default()).unwrap();
        let mut cscs: Vec<String> = found.iter().map(|e| e.csc.to_string()).collect();
        cscs.sort();
        assert_eq!(cscs, vec!["~p | p", "~q | q"]);
        assert!(ordered_extensions(&[c(&["p"]), c(&["q"])], Limits::default()).unwrap().is_empty());
    }
}
