use std::collections::BTreeSet;
use std::fmt;

use super::term::{sym, Symbol, Term};

/// A possibly negated atom. Propositional atoms are predicates with no arguments.
///
/// Field order matters for the derived ordering: `p` and `~p` sort next to each
/// other, which keeps clause literal vectors readable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: Symbol,
    pub args: Vec<Term>,
    pub positive: bool,
}

impl Literal {
    pub fn new(positive: bool, predicate: &str, args: Vec<Term>) -> Literal {
        Literal { predicate: sym(predicate), args, positive }
    }

    pub fn pos(predicate: &str, args: Vec<Term>) -> Literal {
        Literal::new(true, predicate, args)
    }

    pub fn neg(predicate: &str, args: Vec<Term>) -> Literal {
        Literal::new(false, predicate, args)
    }

    /// Propositional atom `name` (or its negation).
    pub fn prop(name: &str, positive: bool) -> Literal {
        Literal::new(positive, name, Vec::new())
    }

    pub fn complement(&self) -> Literal {
        Literal { predicate: self.predicate.clone(), args: self.args.clone(), positive: !self.positive }
    }

    /// Same atom, opposite polarity.
    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.predicate == other.predicate && self.args == other.args
    }

    pub fn same_atom(&self, other: &Literal) -> bool {
        self.predicate == other.predicate && self.args == other.args
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            write!(f, "~")?;
        }
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_flips_polarity_only() {
        let p = Literal::prop("p", true);
        assert_eq!(p.complement(), Literal::prop("p", false));
        assert_eq!(p.complement().complement(), p);

        let l = Literal::neg("p", vec![Term::constant("a"), Term::app("f", vec![Term::var("X")])]);
        let c = l.complement();
        assert!(c.positive);
        assert_eq!(c.args, l.args);
        assert_eq!(c.to_string(), "p(a,f(X))");
        assert!(l.is_complement_of(&c));
    }

    #[test]
    fn complementary_requires_identical_args() {
        let px = Literal::pos("p", vec![Term::var("X")]);
        let npy = Literal::neg("p", vec![Term::var("Y")]);
        assert!(!px.is_complement_of(&npy));
    }
}
