use std::collections::BTreeMap;
use std::fmt;

use super::clause::Clause;
use super::literal::Literal;
use super::term::{Symbol, Term};
use super::LogicError;

/// A finite map from variables to terms, applied simultaneously.
///
/// No binding `x -> t` with `x` occurring in `t` can be constructed; [`Substitution::bind`]
/// and [`Substitution::compose`] both enforce the occurs check.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Build from pairs, rejecting occurs-check violations and identity bindings.
    pub fn from_pairs<I>(pairs: I) -> Result<Substitution, LogicError>
    where
        I: IntoIterator<Item = (Symbol, Term)>,
    {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t)?;
        }
        Ok(s)
    }

    /// Insert a raw binding. Identity bindings are dropped.
    pub fn bind(&mut self, var: Symbol, term: Term) -> Result<(), LogicError> {
        if let Term::Var(v) = &term {
            if *v == var {
                self.bindings.remove(&var);
                return Ok(());
            }
        }
        if term.occurs(&var) {
            return Err(LogicError::OccursCheck { var: var.to_string(), term: term.to_string() });
        }
        self.bindings.insert(var, term);
        Ok(())
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Symbol> {
        self.bindings.keys()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply_term(a)).collect()),
        }
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        if self.is_empty() {
            return l.clone();
        }
        Literal {
            predicate: l.predicate.clone(),
            args: l.args.iter().map(|a| self.apply_term(a)).collect(),
            positive: l.positive,
        }
    }

    /// Rewrite every literal and merge duplicates. Identity and provenance are kept.
    pub fn apply_clause(&self, c: &Clause) -> Clause {
        if self.is_empty() {
            return c.clone();
        }
        c.map_literals(|l| self.apply_literal(l))
    }

    /// `self` then `other`: `compose(s1, s2)` applied to `t` equals `s2(s1(t))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution, LogicError> {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.bind(v.clone(), other.apply_term(t))?;
        }
        for (v, t) in &other.bindings {
            if !self.bindings.contains_key(v) {
                out.bind(v.clone(), t.clone())?;
            }
        }
        Ok(out)
    }

    /// Keep only bindings whose variable satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> Substitution {
        Substitution {
            bindings: self.bindings.iter().filter(|(v, _)| keep(v)).map(|(v, t)| (v.clone(), t.clone())).collect(),
        }
    }

    /// No domain variable occurs in any bound term.
    pub fn is_idempotent(&self) -> bool {
        self.bindings.values().all(|t| self.bindings.keys().all(|v| !t.occurs(v)))
    }

    pub fn max_depth(&self) -> usize {
        self.bindings.values().map(Term::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}/{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::term::sym;

    fn s(pairs: &[(&str, Term)]) -> Substitution {
        Substitution::from_pairs(pairs.iter().map(|(v, t)| (sym(v), t.clone()))).unwrap()
    }

    #[test]
    fn instantiates_nested_occurrences() {
        let c = Clause::new(vec![Literal::pos("p", vec![Term::var("X31"), Term::app("f", vec![Term::var("X31")])])]);
        let out = s(&[("X31", Term::constant("a1"))]).apply_clause(&c);
        assert_eq!(out.to_string(), "p(a1,f(a1))");
    }

    #[test]
    fn empty_substitution_is_identity() {
        let c = Clause::new(vec![Literal::pos("q", vec![Term::var("X")]), Literal::prop("r", false)]);
        assert_eq!(Substitution::new().apply_clause(&c), c);
    }

    #[test]
    fn application_merges_duplicates() {
        let c =
            Clause::new(vec![Literal::pos("q", vec![Term::var("X")]), Literal::pos("q", vec![Term::constant("a")])]);
        let out = s(&[("X", Term::constant("a"))]).apply_clause(&c);
        assert_eq!(out.len(), 1);
        assert_eq!(out.to_string(), "q(a)");
    }

    #[test]
    fn compose_standard_law() {
        let s1 = s(&[("X", Term::app("f", vec![Term::var("Y")]))]);
        let s2 = s(&[("Y", Term::constant("a"))]);
        let c = s1.compose(&s2).unwrap();
        assert_eq!(c, s(&[("X", Term::app("f", vec![Term::constant("a")])), ("Y", Term::constant("a"))]));
        assert_eq!(Substitution::new().compose(&s2).unwrap(), s2);
    }

    #[test]
    fn compose_then_apply_matches_sequential_application() {
        let s1 = s(&[("X", Term::constant("a"))]);
        let s2 = s(&[("Y", Term::constant("b"))]);
        let lit = Literal::pos("p", vec![Term::var("X"), Term::var("Y")]);
        let composed = s1.compose(&s2).unwrap().apply_literal(&lit);
        let sequential = s2.apply_literal(&s1.apply_literal(&lit));
        assert_eq!(composed, sequential);
        assert_eq!(composed.to_string(), "p(a,b)");
    }

    #[test]
    fn occurs_check_on_bind_and_compose() {
        let mut sub = Substitution::new();
        assert!(sub.bind(sym("X"), Term::app("f", vec![Term::var("X")])).is_err());
        let s1 = s(&[("X", Term::app("f", vec![Term::var("Y")]))]);
        let s2 = s(&[("Y", Term::var("X"))]);
        assert!(matches!(s1.compose(&s2), Err(LogicError::OccursCheck { .. })));
    }
}
