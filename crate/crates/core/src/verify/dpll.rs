//! Small DPLL over syntactic atoms, for clause sets too large for a truth table.
//! Distinct atoms (predicate plus argument terms) are distinct propositional variables.

use std::collections::HashMap;

use crate::logic::{Clause, Literal};

/// Signed 1-based variable indices.
type Lit = i32;

pub struct Cnf {
    clauses: Vec<Vec<Lit>>,
    vars: usize,
}

impl Cnf {
    pub fn from_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Cnf {
        let mut index: HashMap<Literal, i32> = HashMap::new();
        let mut out = Vec::new();
        for c in clauses {
            let mut encoded: Vec<Lit> = c
                .iter()
                .map(|l| {
                    let atom = if l.positive { l.clone() } else { l.complement() };
                    let next = index.len() as i32 + 1;
                    let v = *index.entry(atom).or_insert(next);
                    if l.positive {
                        v
                    } else {
                        -v
                    }
                })
                .collect();
            encoded.sort_unstable();
            encoded.dedup();
            out.push(encoded);
        }
        Cnf { clauses: out, vars: index.len() }
    }

    pub fn is_satisfiable(&self) -> bool {
        let mut assignment = vec![0i8; self.vars + 1];
        solve(&self.clauses, &mut assignment)
    }
}

fn value(assignment: &[i8], l: Lit) -> i8 {
    let v = assignment[l.unsigned_abs() as usize];
    if l > 0 {
        v
    } else {
        -v
    }
}

fn solve(clauses: &[Vec<Lit>], assignment: &mut Vec<i8>) -> bool {
    let mut trail = Vec::new();
    // Unit propagation to fixpoint.
    loop {
        let mut changed = false;
        for c in clauses {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &l in c {
                match value(assignment, l) {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    0 => {
                        open += 1;
                        unassigned = Some(l);
                    }
                    _ => {}
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => {
                    undo(assignment, &trail);
                    return false;
                }
                (1, Some(l)) => {
                    assignment[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
                    trail.push(l.unsigned_abs() as usize);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| value(assignment, l) == 1))
        .flat_map(|c| c.iter().copied())
        .find(|&l| value(assignment, l) == 0);
    let Some(l) = branch else {
        return true;
    };
    let var = l.unsigned_abs() as usize;
    for v in [if l > 0 { 1 } else { -1 }, if l > 0 { -1 } else { 1 }] {
        assignment[var] = v;
        if solve(clauses, assignment) {
            return true;
        }
        assignment[var] = 0;
    }
    undo(assignment, &trail);
    false
}

fn undo(assignment: &mut [i8], trail: &[usize]) {
    for &v in trail {
        assignment[v] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Term;

    #[test]
    fn ground_atoms_are_variables() {
        let pa = Literal::pos("P", vec![Term::constant("a")]);
        let pb = Literal::pos("P", vec![Term::constant("b")]);
        let sat = [Clause::new(vec![pa.clone()]), Clause::new(vec![pb.complement()])];
        assert!(Cnf::from_clauses(&sat).is_satisfiable());
        let unsat = [
            Clause::new(vec![pa.clone(), pb.clone()]),
            Clause::new(vec![pa.complement()]),
            Clause::new(vec![pb.complement()]),
        ];
        assert!(!Cnf::from_clauses(&unsat).is_satisfiable());
        assert!(!Cnf::from_clauses(&[Clause::empty()]).is_satisfiable());
    }
}
