//! Well-scoped terms over a binding signature.
//!
//! Variables are de Bruijn indices. A term at scope `n` may use indices
//! `0..n`. Entering an argument whose arity entry is `a` prepends `a` fresh
//! indices `0..a`, so the free variables of the parent are shifted up by `a`
//! inside that argument.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::signature::{Arity, BindingSignature, CtorId, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable {index} is out of scope {scope}")]
    OutOfScope { index: usize, scope: usize },
    #[error("signature `{0}` has no variables")]
    NoVariablesMode(String),
    #[error("constructor `{ctor}` takes {expected} arguments, got {found}")]
    ArityMismatch { ctor: String, expected: usize, found: usize },
    #[error("argument {position} of `{ctor}` has scope {found}, expected {expected}")]
    ScopeMismatch { ctor: String, position: usize, expected: usize, found: usize },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("term count exceeds the cap of {cap}")]
    Overflow { cap: u64 },
    #[error("renaming image {image} is not below target scope {to}")]
    BadRenaming { image: usize, to: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Var(usize),
    Ctor(CtorId, Vec<Term>),
}

/// A term together with the scope it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    scope: usize,
    node: Node,
}

impl Term {
    /// Builds a term without consulting a signature.
    ///
    /// The result is not guaranteed to be well scoped; use [`check_scope`]
    /// when the parts come from an untrusted source.
    pub fn new_unchecked(scope: usize, node: Node) -> Term {
        Term { scope, node }
    }

    pub fn var(sig: &BindingSignature, scope: usize, index: usize) -> Result<Term, TermError> {
        if !sig.with_variables() {
            return Err(TermError::NoVariablesMode(sig.name().to_string()));
        }
        if index >= scope {
            return Err(TermError::OutOfScope { index, scope });
        }
        Ok(Term { scope, node: Node::Var(index) })
    }

    pub fn mk(
        sig: &BindingSignature,
        scope: usize,
        ctor: CtorId,
        args: Vec<Term>,
    ) -> Result<Term, TermError> {
        let arity = sig.arity_of(&ctor)?;
        if arity.len() != args.len() {
            return Err(TermError::ArityMismatch {
                ctor: ctor.to_string(),
                expected: arity.len(),
                found: args.len(),
            });
        }
        for (position, (a, arg)) in arity.entries().iter().zip(&args).enumerate() {
            if arg.scope != scope + a {
                return Err(TermError::ScopeMismatch {
                    ctor: ctor.to_string(),
                    position,
                    expected: scope + a,
                    found: arg.scope,
                });
            }
        }
        Ok(Term { scope, node: Node::Ctor(ctor, args) })
    }

    pub fn scope(&self) -> usize {
        self.scope
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn into_node(self) -> Node {
        self.node
    }

    pub fn is_var(&self) -> bool {
        matches!(self.node, Node::Var(_))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match &self.node {
            Node::Var(_) => 1,
            Node::Ctor(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Height in the approximant chain: variables and nullary constructors
    /// have height 1.
    pub fn height(&self) -> usize {
        match &self.node {
            Node::Var(_) => 1,
            Node::Ctor(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// Whether some constructor node binds at least one variable.
    pub fn has_binder(&self) -> bool {
        match &self.node {
            Node::Var(_) => false,
            Node::Ctor(_, args) => args.iter().any(|a| a.scope > self.scope || a.has_binder()),
        }
    }

    /// Raises the scope annotation of every node by `extra` without touching
    /// any index.
    pub(crate) fn pad_scope(&self, extra: usize) -> Term {
        let node = match &self.node {
            Node::Var(i) => Node::Var(*i),
            Node::Ctor(c, args) => Node::Ctor(c.clone(), args.iter().map(|a| a.pad_scope(extra)).collect()),
        };
        Term { scope: self.scope + extra, node }
    }

    pub fn to_json(&self) -> Value {
        match &self.node {
            Node::Var(i) => json!({ "scope": self.scope, "var": i }),
            Node::Ctor(c, args) => json!({
                "scope": self.scope,
                "ctor": &*c.name,
                "param": c.param,
                "args": args.iter().map(Term::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Var(i) => write!(f, "(var {i})"),
            Node::Ctor(c, args) => {
                write!(f, "({c}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Canonical s-expression rendering.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// A map between scopes, `i < from` to `map[i] < to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renaming {
    from: usize,
    to: usize,
    map: Vec<usize>,
}

impl Renaming {
    pub fn new(to: usize, map: Vec<usize>) -> Result<Renaming, TermError> {
        if let Some(&image) = map.iter().find(|&&m| m >= to) {
            return Err(TermError::BadRenaming { image, to });
        }
        Ok(Renaming { from: map.len(), to, map })
    }

    pub fn identity(scope: usize) -> Renaming {
        Renaming { from: scope, to: scope, map: (0..scope).collect() }
    }

    /// Weakening `scope -> scope + by`, `i -> i + by`.
    pub fn shift(scope: usize, by: usize) -> Renaming {
        Renaming { from: scope, to: scope + by, map: (by..scope + by).collect() }
    }

    pub fn from_scope(&self) -> usize {
        self.from
    }

    pub fn to_scope(&self) -> usize {
        self.to
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Renaming) -> Renaming {
        assert_eq!(self.to, next.from, "renamings do not compose");
        Renaming { from: self.from, to: next.to, map: self.map.iter().map(|&i| next.map[i]).collect() }
    }
}

/// Applies a renaming. Under `k` binders indices below `k` are fixed and
/// the others are mapped by the renaming shifted by `k`.
pub fn rename(t: &Term, r: &Renaming) -> Term {
    assert_eq!(t.scope, r.from, "term scope does not match renaming domain");
    rename_under(t, r, 0)
}

fn rename_under(t: &Term, r: &Renaming, depth: usize) -> Term {
    let node = match &t.node {
        Node::Var(i) if *i < depth => Node::Var(*i),
        Node::Var(i) => Node::Var(r.map[i - depth] + depth),
        Node::Ctor(c, args) => Node::Ctor(
            c.clone(),
            args.iter().map(|a| rename_under(a, r, depth + (a.scope - t.scope))).collect(),
        ),
    };
    Term { scope: r.to + depth, node }
}

/// Whether `t` is well scoped and well formed for `sig`.
pub fn check_scope(sig: &BindingSignature, t: &Term) -> bool {
    match &t.node {
        Node::Var(i) => sig.with_variables() && *i < t.scope,
        Node::Ctor(c, args) => match sig.arity_of(c) {
            Ok(arity) => {
                arity.len() == args.len()
                    && arity
                        .entries()
                        .iter()
                        .zip(args)
                        .all(|(a, arg)| arg.scope == t.scope + a && check_scope(sig, arg))
            }
            Err(_) => false,
        },
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
    End,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Returns the token and the byte offset where it starts.
    fn next(&mut self) -> (Token<'a>, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        match rest.chars().next() {
            None => (Token::End, start),
            Some('(') => {
                self.pos += 1;
                (Token::Open, start)
            }
            Some(')') => {
                self.pos += 1;
                (Token::Close, start)
            }
            Some(_) => {
                let len = rest.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(rest.len());
                self.pos += len;
                (Token::Atom(&rest[..len]), start)
            }
        }
    }

    fn peek(&mut self) -> (Token<'a>, usize) {
        let save = self.pos;
        let tok = self.next();
        self.pos = save;
        tok
    }
}

fn syntax(position: usize, message: impl Into<String>) -> TermError {
    TermError::Syntax { position, message: message.into() }
}

fn parse_index(atom: &str, position: usize) -> Result<usize, TermError> {
    if atom.is_empty() || !atom.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(position, format!("expected a natural number, found `{atom}`")));
    }
    atom.parse().map_err(|_| syntax(position, format!("number `{atom}` is too large")))
}

fn parse_at(sig: &BindingSignature, lx: &mut Lexer<'_>, scope: usize) -> Result<Term, TermError> {
    match lx.next() {
        (Token::Open, _) => {}
        (tok, pos) => return Err(syntax(pos, format!("expected `(`, found {tok:?}"))),
    }
    let (name, name_pos) = match lx.next() {
        (Token::Atom(a), pos) => (a, pos),
        (tok, pos) => return Err(syntax(pos, format!("expected a constructor name, found {tok:?}"))),
    };
    if name == "var" {
        let index = match lx.next() {
            (Token::Atom(a), pos) => parse_index(a, pos)?,
            (tok, pos) => return Err(syntax(pos, format!("expected a variable index, found {tok:?}"))),
        };
        match lx.next() {
            (Token::Close, _) => {}
            (tok, pos) => return Err(syntax(pos, format!("expected `)`, found {tok:?}"))),
        }
        return Term::var(sig, scope, index);
    }
    let ctor = if sig.family(name).is_some() {
        let param = match lx.next() {
            (Token::Atom(a), pos) => parse_index(a, pos)?,
            (tok, pos) => {
                return Err(syntax(pos, format!("family `{name}` needs a parameter, found {tok:?}")))
            }
        };
        CtorId::family(name, param)
    } else if sig.ctor(name).is_some() {
        CtorId::plain(name)
    } else {
        return Err(syntax(name_pos, format!("unknown constructor `{name}`")));
    };
    let arity = sig.arity_of(&ctor)?;
    let mut args = Vec::new();
    loop {
        match lx.peek() {
            (Token::Close, _) => {
                lx.next();
                break;
            }
            (Token::Open, _) => {
                let a = arity.entries().get(args.len()).copied().unwrap_or(0);
                args.push(parse_at(sig, lx, scope + a)?);
            }
            (tok, pos) => return Err(syntax(pos, format!("expected a term or `)`, found {tok:?}"))),
        }
    }
    Term::mk(sig, scope, ctor, args)
}

/// Parses `(var <nat>) | (<ctor> <term>*) | (<family> <param> <term>*)`.
pub fn parse_term(sig: &BindingSignature, text: &str, scope: usize) -> Result<Term, TermError> {
    let mut lx = Lexer { text, pos: 0 };
    let t = parse_at(sig, &mut lx, scope)?;
    match lx.next() {
        (Token::End, _) => Ok(t),
        (tok, pos) => Err(syntax(pos, format!("trailing input {tok:?}"))),
    }
}

/// Limits for counting and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest family parameter considered.
    pub param_bound: usize,
    /// Largest admissible count.
    pub cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { param_bound: 3, cap: 1_000_000 }
    }
}

/// Number of terms of height at most `depth` at `scope`, via
/// `count(k+1, n) = [n] + sum_c prod_j count(k, n + a_cj)`.
pub fn count_terms(
    sig: &BindingSignature,
    scope: usize,
    depth: usize,
    bounds: Bounds,
) -> Result<u64, TermError> {
    let table = sig.ctor_table(bounds.param_bound);
    let mut memo = HashMap::new();
    count_rec(sig.with_variables(), &table, scope, depth, bounds.cap, &mut memo)
}

fn count_rec(
    vars: bool,
    table: &[(CtorId, Arity)],
    n: usize,
    k: usize,
    cap: u64,
    memo: &mut HashMap<(usize, usize), u64>,
) -> Result<u64, TermError> {
    if k == 0 {
        return Ok(0);
    }
    if let Some(&c) = memo.get(&(k, n)) {
        return Ok(c);
    }
    let overflow = TermError::Overflow { cap };
    let mut total: u64 = if vars { n as u64 } else { 0 };
    for (_, arity) in table {
        let mut prod: u64 = 1;
        for a in arity.entries() {
            let c = count_rec(vars, table, n + a, k - 1, cap, memo)?;
            prod = prod.checked_mul(c).ok_or(overflow.clone())?;
            if prod == 0 {
                break;
            }
        }
        total = total.checked_add(prod).ok_or(overflow.clone())?;
    }
    if total > cap {
        return Err(overflow);
    }
    memo.insert((k, n), total);
    Ok(total)
}

/// All terms of height at most `depth` at `scope`.
///
/// Terms are listed by height: every term of height `h` precedes every
/// term of height `h + 1`, so the list for `depth` is a prefix of the list
/// for `depth + 1`. Within one height variables come first by index, then
/// constructors in [`BindingSignature::enumerate_ctors`] order, each with
/// its argument tuples in lexicographic order of the argument lists.
pub fn enumerate_terms(
    sig: &BindingSignature,
    scope: usize,
    depth: usize,
    bounds: Bounds,
) -> Result<Vec<Term>, TermError> {
    count_terms(sig, scope, depth, bounds)?;
    let mut en = Enumerator {
        vars: sig.with_variables(),
        table: sig.ctor_table(bounds.param_bound),
        memo: HashMap::new(),
    };
    Ok(en.upto(depth, scope).as_ref().clone())
}

struct Enumerator {
    vars: bool,
    table: Vec<(CtorId, Arity)>,
    memo: HashMap<(usize, usize), Rc<Vec<Term>>>,
}

impl Enumerator {
    fn upto(&mut self, k: usize, n: usize) -> Rc<Vec<Term>> {
        if k == 0 {
            return Rc::new(Vec::new());
        }
        if let Some(v) = self.memo.get(&(k, n)) {
            return v.clone();
        }
        let mut out = self.upto(k - 1, n).as_ref().clone();
        if k == 1 && self.vars {
            out.extend((0..n).map(|i| Term { scope: n, node: Node::Var(i) }));
        }
        for idx in 0..self.table.len() {
            let (ctor, arity) = self.table[idx].clone();
            let lists: Vec<Rc<Vec<Term>>> = arity.entries().iter().map(|a| self.upto(k - 1, n + a)).collect();
            // Entries at or past `fresh[j]` in list j have height exactly k - 1.
            let fresh: Vec<usize> =
                arity.entries().iter().map(|a| self.upto(k.saturating_sub(2), n + a).len()).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            let mut digits = vec![0usize; lists.len()];
            'tuples: loop {
                let newest = if lists.is_empty() { k == 1 } else { digits.iter().zip(&fresh).any(|(d, f)| d >= f) };
                if newest {
                    let args = digits.iter().zip(&lists).map(|(&d, l)| l[d].clone()).collect();
                    out.push(Term { scope: n, node: Node::Ctor(ctor.clone(), args) });
                }
                let mut pos = digits.len();
                while pos > 0 {
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < lists[pos].len() {
                        continue 'tuples;
                    }
                    digits[pos] = 0;
                }
                break;
            }
        }
        let out = Rc::new(out);
        self.memo.insert((k, n), out.clone());
        out
    }
}
