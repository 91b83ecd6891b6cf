//! Syntactic unification with occurs check. Every unifier returned here is a most
//! general one and idempotent.

use super::literal::Literal;
use super::subst::Substitution;
use super::term::Term;

/// Extend `s` so that it also unifies `a` and `b`. `s` must be idempotent and stays so.
fn unify_into(s: &mut Substitution, a: &Term, b: &Term) -> bool {
    let a = s.apply_term(a);
    let b = s.apply_term(b);
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if t.occurs(x) {
                return false;
            }
            let mut single = Substitution::new();
            if single.bind(x.clone(), t.clone()).is_err() {
                return false;
            }
            match s.compose(&single) {
                Ok(next) => {
                    *s = next;
                    true
                }
                Err(_) => false,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify_into(s, x, y))
        }
    }
}

pub fn unify_terms(a: &Term, b: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_into(&mut s, a, b).then_some(s)
}

/// Unify argument lists pairwise, starting from `base`.
pub fn unify_args_from(base: &Substitution, xs: &[Term], ys: &[Term]) -> Option<Substitution> {
    if xs.len() != ys.len() {
        return None;
    }
    let mut s = base.clone();
    xs.iter().zip(ys).all(|(x, y)| unify_into(&mut s, x, y)).then_some(s)
}

/// Most general unifier making the atoms of `l1` and `l2` identical, ignoring polarity.
pub fn unify_atoms(l1: &Literal, l2: &Literal) -> Option<Substitution> {
    if l1.predicate != l2.predicate {
        return None;
    }
    unify_args_from(&Substitution::new(), &l1.args, &l2.args)
}

/// Most general unifier making `l1` the complement of `l2`.
pub fn mgu_complementary(l1: &Literal, l2: &Literal) -> Option<Substitution> {
    if l1.positive == l2.positive {
        return None;
    }
    unify_atoms(l1, l2)
}

/// The complementary MGU split into views over the variables of `l1` and of `l2`.
///
/// The literals must come from variable-disjoint clauses.
pub fn unify_complementary(l1: &Literal, l2: &Literal) -> Option<(Substitution, Substitution)> {
    let mgu = mgu_complementary(l1, l2)?;
    let v1 = l1.vars();
    let v2 = l2.vars();
    Some((mgu.restrict(|v| v1.contains(v)), mgu.restrict(|v| v2.contains(v))))
}
