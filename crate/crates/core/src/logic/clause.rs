use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::literal::Literal;
use super::subst::Substitution;
use super::term::{sym, Symbol, Term};
use super::LogicError;

/// Stable clause identifier. Input clauses are numbered from 1; derived clauses continue the sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Origin {
    #[default]
    Input,
    Derived,
}

/// A duplicate-free disjunction of literals. The empty clause is falsum.
///
/// Equality and hashing look at the literal set only; `id` and `origin` are provenance.
#[derive(Clone)]
pub struct Clause {
    literals: Vec<Literal>,
    pub id: ClauseId,
    pub origin: Origin,
}

impl Clause {
    /// Literals are sorted and merged.
    pub fn new(mut literals: Vec<Literal>) -> Clause {
        literals.sort();
        literals.dedup();
        Clause { literals, id: ClauseId::default(), origin: Origin::Input }
    }

    pub fn empty() -> Clause {
        Clause::new(Vec::new())
    }

    pub fn with_id(mut self, id: ClauseId, origin: Origin) -> Clause {
        self.id = id;
        self.origin = origin;
        self
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.literals.iter()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.literals.binary_search(l).is_ok()
    }

    /// Rebuild from transformed literals, keeping id and origin.
    pub fn map_literals(&self, f: impl FnMut(&Literal) -> Literal) -> Clause {
        let mut c = Clause::new(self.literals.iter().map(f).collect());
        c.id = self.id;
        c.origin = self.origin;
        c
    }

    /// Contains a syntactically complementary pair.
    pub fn is_tautology(&self) -> bool {
        // Sorted order places `p(args)` and `~p(args)` next to each other.
        self.literals.windows(2).any(|w| w[0].is_complement_of(&w[1]))
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.literals.iter().map(Literal::depth).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.literals.iter().for_each(|l| l.collect_vars(&mut out));
        out
    }

    pub fn without(&self, l: &Literal) -> Vec<Literal> {
        self.literals.iter().filter(|x| *x != l).cloned().collect()
    }
}

impl PartialEq for Clause {
    fn eq(&self, other: &Clause) -> bool {
        self.literals == other.literals
    }
}

impl Eq for Clause {}

impl Hash for Clause {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.literals.hash(state);
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Clause {
        Clause::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "$false");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self)
    }
}

/// Predicate and function arities. The two namespaces are separate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub predicates: BTreeMap<Symbol, usize>,
    pub functions: BTreeMap<Symbol, usize>,
}

impl SymbolTable {
    pub fn record_clause(&mut self, c: &Clause) -> Result<(), LogicError> {
        for l in c.iter() {
            Self::record(&mut self.predicates, &l.predicate, l.arity(), "predicate")?;
            let mut fs = BTreeSet::new();
            l.args.iter().for_each(|t| t.collect_functions(&mut fs));
            for (f, n) in fs {
                Self::record(&mut self.functions, &f, n, "function")?;
            }
        }
        Ok(())
    }

    fn record(
        table: &mut BTreeMap<Symbol, usize>,
        name: &Symbol,
        arity: usize,
        kind: &'static str,
    ) -> Result<(), LogicError> {
        match table.get(name) {
            Some(&a) if a != arity => {
                Err(LogicError::ArityMismatch { kind, name: name.to_string(), expected: a, found: arity })
            }
            Some(_) => Ok(()),
            None => {
                table.insert(name.clone(), arity);
                Ok(())
            }
        }
    }

    /// Constants are the nullary functions.
    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.functions.iter().filter(|(_, &n)| n == 0).map(|(f, _)| f)
    }

    pub fn has_proper_functions(&self) -> bool {
        self.functions.values().any(|&n| n > 0)
    }
}

/// An ordered clause collection with consistent symbol arities.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    symbols: SymbolTable,
}

impl ClauseSet {
    /// Number the clauses 1..=n as input clauses and check arities.
    pub fn from_clauses(clauses: Vec<Clause>) -> Result<ClauseSet, LogicError> {
        let mut symbols = SymbolTable::default();
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.into_iter().enumerate() {
            symbols.record_clause(&c)?;
            out.push(c.with_id(ClauseId(i as u32 + 1), Origin::Input));
        }
        Ok(ClauseSet { clauses: out, symbols })
    }

    /// Keep existing ids; used for subsets of an already numbered set.
    pub fn from_numbered(clauses: Vec<Clause>) -> Result<ClauseSet, LogicError> {
        let mut symbols = SymbolTable::default();
        for c in &clauses {
            symbols.record_clause(c)?;
        }
        Ok(ClauseSet { clauses, symbols })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn is_propositional(&self) -> bool {
        self.clauses.iter().all(|c| c.iter().all(|l| l.args.is_empty()))
    }

    /// Propositional atoms, sorted.
    pub fn atoms(&self) -> BTreeSet<Symbol> {
        self.clauses.iter().flat_map(|c| c.iter().map(|l| l.predicate.clone())).collect()
    }

    /// Every ground term occurring anywhere in the set.
    pub fn ground_terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for c in &self.clauses {
            for l in c.iter() {
                l.args.iter().for_each(|t| t.collect_ground_subterms(&mut out));
            }
        }
        out
    }

    /// Variable `X` of the clause numbered `i` becomes `X_i`; distinct clauses end up variable-disjoint.
    pub fn rename_apart(&self) -> ClauseSet {
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                let renaming = Substitution::from_pairs(
                    c.vars().into_iter().map(|v| (v.clone(), Term::Var(sym(&format!("{v}_{}", c.id))))),
                )
                .expect("renaming to fresh variables cannot violate the occurs check");
                renaming.apply_clause(c)
            })
            .collect();
        ClauseSet { clauses, symbols: self.symbols.clone() }
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}
