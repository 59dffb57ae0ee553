//! Structural folds into algebras of the signature functor.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::signature::CtorId;
use crate::term::{Node, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("algebra has no case for `{0}`")]
    MissingCase(String),
}

/// An algebra: what to do at a variable and at each constructor.
///
/// Argument `j` of a constructor at scope `n` was folded at scope
/// `n + a_j`. Returning `None` means the algebra does not cover the case.
pub trait Algebra {
    type Value;

    fn on_var(&self, scope: usize, index: usize) -> Option<Self::Value>;

    fn on_ctor(&self, scope: usize, ctor: &CtorId, args: Vec<Self::Value>) -> Option<Self::Value>;
}

/// The unique algebra morphism out of the term datatype, restricted to `t`.
pub fn fold<A: Algebra>(alg: &A, t: &Term) -> Result<A::Value, FoldError> {
    match t.node() {
        Node::Var(i) => alg.on_var(t.scope(), *i).ok_or_else(|| FoldError::MissingCase("var".into())),
        Node::Ctor(c, args) => {
            let values = args.iter().map(|a| fold(alg, a)).collect::<Result<Vec<_>, _>>()?;
            alg.on_ctor(t.scope(), c, values).ok_or_else(|| FoldError::MissingCase(c.to_string()))
        }
    }
}

type VarCase<'a, V> = Box<dyn Fn(usize, usize) -> V + 'a>;
type CtorCase<'a, V> = Box<dyn Fn(usize, Option<usize>, Vec<V>) -> V + 'a>;

/// An algebra assembled from closures keyed by constructor name. A family
/// case receives the parameter as its second argument.
pub struct CaseAlgebra<'a, V> {
    var: Option<VarCase<'a, V>>,
    cases: BTreeMap<String, CtorCase<'a, V>>,
}

impl<'a, V> Default for CaseAlgebra<'a, V> {
    fn default() -> Self {
        CaseAlgebra { var: None, cases: BTreeMap::new() }
    }
}

impl<'a, V> CaseAlgebra<'a, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(mut self, f: impl Fn(usize, usize) -> V + 'a) -> Self {
        self.var = Some(Box::new(f));
        self
    }

    pub fn case(mut self, name: &str, f: impl Fn(usize, Option<usize>, Vec<V>) -> V + 'a) -> Self {
        self.cases.insert(name.to_string(), Box::new(f));
        self
    }
}

impl<'a, V> Algebra for CaseAlgebra<'a, V> {
    type Value = V;

    fn on_var(&self, scope: usize, index: usize) -> Option<V> {
        self.var.as_ref().map(|f| f(scope, index))
    }

    fn on_ctor(&self, scope: usize, ctor: &CtorId, args: Vec<V>) -> Option<V> {
        self.cases.get(&*ctor.name).map(|f| f(scope, ctor.param, args))
    }
}

/// Counts nodes.
pub struct SizeAlgebra;

impl Algebra for SizeAlgebra {
    type Value = usize;

    fn on_var(&self, _: usize, _: usize) -> Option<usize> {
        Some(1)
    }

    fn on_ctor(&self, _: usize, _: &CtorId, args: Vec<usize>) -> Option<usize> {
        Some(1 + args.iter().sum::<usize>())
    }
}

/// Longest root-to-leaf path, counting nodes.
pub struct DepthAlgebra;

impl Algebra for DepthAlgebra {
    type Value = usize;

    fn on_var(&self, _: usize, _: usize) -> Option<usize> {
        Some(1)
    }

    fn on_ctor(&self, _: usize, _: &CtorId, args: Vec<usize>) -> Option<usize> {
        Some(1 + args.into_iter().max().unwrap_or(0))
    }
}

/// The term algebra itself; folding with it rebuilds the input.
pub struct RebuildAlgebra;

impl Algebra for RebuildAlgebra {
    type Value = Term;

    fn on_var(&self, scope: usize, index: usize) -> Option<Term> {
        Some(Term::new_unchecked(scope, Node::Var(index)))
    }

    fn on_ctor(&self, scope: usize, ctor: &CtorId, args: Vec<Term>) -> Option<Term> {
        Some(Term::new_unchecked(scope, Node::Ctor(ctor.clone(), args)))
    }
}

/// Lists over the signature of [`crate::signature::list_signature`]:
/// `nil` and `cons a` for letters `a`.
pub mod list {
    use super::*;

    pub fn nil() -> Term {
        Term::new_unchecked(0, Node::Ctor(CtorId::plain("nil"), vec![]))
    }

    pub fn cons(a: usize, tail: Term) -> Term {
        Term::new_unchecked(0, Node::Ctor(CtorId::family("cons", a), vec![tail]))
    }

    pub fn from_slice(xs: &[usize]) -> Term {
        xs.iter().rev().fold(nil(), |acc, &a| cons(a, acc))
    }

    /// `foldr nil = x` and `foldr (cons a t) = f(a, foldr t)`.
    pub fn foldr<X: Clone>(x: X, f: impl Fn(usize, X) -> X, l: &Term) -> Result<X, FoldError> {
        let alg = CaseAlgebra::new()
            .case("nil", move |_, _, _| x.clone())
            .case("cons", |_, a, mut v: Vec<X>| f(a.expect("cons carries its letter"), v.remove(0)));
        fold(&alg, l)
    }

    pub fn map_list(f: impl Fn(usize) -> usize, l: &Term) -> Result<Term, FoldError> {
        foldr(nil(), |a, t| cons(f(a), t), l)
    }

    pub fn length(l: &Term) -> Result<usize, FoldError> {
        foldr(0, |_, n| 1 + n, l)
    }

    pub fn to_vec(l: &Term) -> Result<Vec<usize>, FoldError> {
        foldr(Vec::new(), |a, mut v: Vec<usize>| {
            v.insert(0, a);
            v
        }, l)
    }
}

#[cfg(test)]
mod tests {
    use super::list::*;
    use super::*;
    use crate::signature::{lambda_calculus, list_signature};
    use crate::term::{check_scope, parse_term};

    fn lc(s: &str, scope: usize) -> Term {
        parse_term(&lambda_calculus(), s, scope).unwrap()
    }

    #[test]
    fn size_and_depth() {
        assert_eq!(fold(&SizeAlgebra, &lc("(app (var 0) (abs (var 0)))", 1)).unwrap(), 4);
        assert_eq!(fold(&DepthAlgebra, &lc("(abs (abs (var 0)))", 0)).unwrap(), 3);
    }

    #[test]
    fn rebuild_is_identity() {
        let t = lc("(abs (app (var 0) (abs (var 1))))", 0);
        assert_eq!(fold(&RebuildAlgebra, &t).unwrap(), t);
    }

    #[test]
    fn missing_case() {
        let alg = CaseAlgebra::new().var(|_, i| i).case("app", |_, _, v: Vec<usize>| v[0] + v[1]);
        assert_eq!(fold(&alg, &lc("(app (var 0) (var 0))", 1)), Ok(0));
        assert_eq!(fold(&alg, &lc("(abs (var 0))", 0)), Err(FoldError::MissingCase("abs".into())));
        let no_var = CaseAlgebra::<usize>::new();
        assert_eq!(fold(&no_var, &lc("(var 0)", 1)), Err(FoldError::MissingCase("var".into())));
    }

    #[test]
    fn scopes_passed_to_cases() {
        // Each variable reports the scope it was folded at.
        let alg = CaseAlgebra::new()
            .var(|scope, _| vec![scope])
            .case("app", |_, _, v: Vec<Vec<usize>>| v.concat())
            .case("abs", |_, _, v: Vec<Vec<usize>>| v.concat());
        assert_eq!(fold(&alg, &lc("(app (var 0) (abs (abs (var 0))))", 1)).unwrap(), vec![1, 3]);
    }

    #[test]
    fn foldr_rules() {
        assert_eq!(foldr(7, |a, n| a + n, &nil()).unwrap(), 7);
        assert_eq!(length(&from_slice(&[0, 1])).unwrap(), 2);
        assert_eq!(foldr(0, |a, n| a + n, &from_slice(&[1, 2, 3])).unwrap(), 6);
        assert!(check_scope(&list_signature(4), &from_slice(&[1, 2, 3])));
    }

    #[test]
    fn map_cases() {
        assert_eq!(map_list(|a| a, &nil()).unwrap(), nil());
        let xs = from_slice(&[2, 0, 1]);
        assert_eq!(map_list(|a| a, &xs).unwrap(), xs);
        assert_eq!(to_vec(&map_list(|a| (a + 1) % 3, &xs).unwrap()).unwrap(), vec![0, 1, 2]);
    }
}
