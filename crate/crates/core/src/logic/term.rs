use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol name. Cheap to clone and shareable across threads.
pub type Symbol = Arc<str>;

pub fn sym(name: &str) -> Symbol {
    Arc::from(name)
}

/// A first-order term.
///
/// Constants are the zero-argument case of [`Term::App`], so `Term::constant("a")`
/// and `Term::app("a", vec![])` are the same value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Symbol),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(sym(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(sym(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(sym(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth; variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => &**v == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Every ground subterm, including the term itself when ground.
    pub fn collect_ground_subterms(&self, out: &mut BTreeSet<Term>) {
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.collect_ground_subterms(out));
            if self.is_ground() {
                out.insert(self.clone());
            }
        }
    }

    /// Function and constant symbols with their arities.
    pub fn collect_functions(&self, out: &mut BTreeSet<(Symbol, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_functions(out));
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
