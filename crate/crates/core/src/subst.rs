//! Parallel substitution, the monad structure on terms.
//!
//! A [`Substitution`] from scope `m` to scope `n` assigns a term at scope
//! `n` to every index below `m`. [`subst`] is defined by the two equations
//!
//! ```text
//! subst(var i, s)        = s[i]
//! subst(c(t_1..t_k), s)  = c(subst(t_1, lift(s, a_1)), .., subst(t_k, lift(s, a_k)))
//! ```
//!
//! where [`lift`] pushes a substitution under `a` binders. The law checkers
//! in this module re-derive those equations and the monad laws on seeded
//! samples and on exhaustive small instances.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::random::{self, TermGen};
use crate::signature::BindingSignature;
use crate::term::{enumerate_terms, rename, Bounds, Node, Renaming, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution from scope {from} needs {from} images, got {found}")]
    WrongLength { from: usize, found: usize },
    #[error("image {index} has scope {found}, expected {expected}")]
    ImageScope { index: usize, expected: usize, found: usize },
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    from: usize,
    to: usize,
    images: Vec<Term>,
}

impl Substitution {
    pub fn new(from: usize, to: usize, images: Vec<Term>) -> Result<Substitution, SubstError> {
        if images.len() != from {
            return Err(SubstError::WrongLength { from, found: images.len() });
        }
        if let Some((index, t)) = images.iter().enumerate().find(|(_, t)| t.scope() != to) {
            return Err(SubstError::ImageScope { index, expected: to, found: t.scope() });
        }
        Ok(Substitution { from, to, images })
    }

    pub fn from_scope(&self) -> usize {
        self.from
    }

    pub fn to_scope(&self) -> usize {
        self.to
    }

    pub fn images(&self) -> &[Term] {
        &self.images
    }

    /// Post-composes every image with a renaming.
    pub fn rename_images(&self, r: &Renaming) -> Substitution {
        assert_eq!(self.to, r.from_scope());
        Substitution { from: self.from, to: r.to_scope(), images: self.images.iter().map(|t| rename(t, r)).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "from": self.from,
            "to": self.to,
            "images": self.images.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// The identity substitution `i -> var i`.
pub fn unit_subst(sig: &BindingSignature, scope: usize) -> Result<Substitution, TermError> {
    if !sig.with_variables() {
        return Err(TermError::NoVariablesMode(sig.name().to_string()));
    }
    Ok(identity(scope))
}

fn identity(scope: usize) -> Substitution {
    let images = (0..scope).map(|i| Term::new_unchecked(scope, Node::Var(i))).collect();
    Substitution { from: scope, to: scope, images }
}

/// How substitutions are pushed under binders.
///
/// `Shift` is the only correct choice. `NoShift` reuses the images without
/// weakening them, which captures variables; it exists so the law checkers
/// can be shown to catch that mistake.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftMode {
    #[default]
    Shift,
    NoShift,
}

/// Pushes `s` under `a` binders: `m + a -> n + a`, fresh indices `i < a`
/// go to `var i` and an old index `i` goes to `s[i]` weakened by `a`.
pub fn lift(s: &Substitution, a: usize) -> Substitution {
    lift_with(s, a, LiftMode::Shift)
}

fn lift_with(s: &Substitution, a: usize, mode: LiftMode) -> Substitution {
    if a == 0 {
        return s.clone();
    }
    let to = s.to + a;
    let weaken = Renaming::shift(s.to, a);
    let mut images: Vec<Term> = (0..a).map(|i| Term::new_unchecked(to, Node::Var(i))).collect();
    images.extend(s.images.iter().map(|t| match mode {
        LiftMode::Shift => rename(t, &weaken),
        LiftMode::NoShift => t.pad_scope(a),
    }));
    Substitution { from: s.from + a, to, images }
}

/// Capture-avoiding parallel substitution.
pub fn subst(t: &Term, s: &Substitution) -> Term {
    subst_with(t, s, LiftMode::Shift)
}

pub fn subst_with(t: &Term, s: &Substitution, mode: LiftMode) -> Term {
    assert_eq!(t.scope(), s.from, "term scope does not match substitution domain");
    match t.node() {
        Node::Var(i) => s.images[*i].clone(),
        Node::Ctor(c, args) => {
            let mut lifted: Vec<(usize, Substitution)> = Vec::new();
            let mut new_args = Vec::with_capacity(args.len());
            for arg in args {
                let a = arg.scope() - t.scope();
                let pos = match lifted.iter().position(|(b, _)| *b == a) {
                    Some(p) => p,
                    None => {
                        lifted.push((a, lift_with(s, a, mode)));
                        lifted.len() - 1
                    }
                };
                new_args.push(subst_with(arg, &lifted[pos].1, mode));
            }
            Term::new_unchecked(s.to, Node::Ctor(c.clone(), new_args))
        }
    }
}

/// Kleisli composite: `s1` then `s2`.
pub fn kleisli(s1: &Substitution, s2: &Substitution) -> Substitution {
    kleisli_with(s1, s2, LiftMode::Shift)
}

fn kleisli_with(s1: &Substitution, s2: &Substitution, mode: LiftMode) -> Substitution {
    assert_eq!(s1.to, s2.from, "substitutions do not compose");
    Substitution { from: s1.from, to: s2.to, images: s1.images.iter().map(|t| subst_with(t, s2, mode)).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub term: String,
    pub subst: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subst2: Option<serde_json::Value>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl LawReport {
    fn new(law: &str) -> LawReport {
        LawReport { law: law.to_string(), samples: 0, passed: 0, failed: 0, first_counterexample: None }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, failure: Option<Counterexample>) {
        self.samples += 1;
        match failure {
            None => self.passed += 1,
            Some(cx) => {
                self.failed += 1;
                if self.first_counterexample.is_none() {
                    self.first_counterexample = Some(cx);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    pub samples: usize,
    pub seed: u64,
    pub param_bound: usize,
    pub max_term_size: usize,
    /// Scopes are drawn from `0..=max_scope`.
    pub max_scope: usize,
    pub lift_mode: LiftMode,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { samples: 1000, seed: 42, param_bound: 3, max_term_size: 30, max_scope: 2, lift_mode: LiftMode::Shift }
    }
}

struct Sample {
    term: Term,
    s1: Substitution,
    s2: Substitution,
}

fn samples(sig: &BindingSignature, cfg: &LawConfig) -> Vec<Sample> {
    let gen = TermGen::new(sig, cfg.param_bound, cfg.max_term_size);
    let mut rng = random::rng(cfg.seed);
    let max_scope = if sig.with_variables() { cfg.max_scope } else { 0 };
    let scopes: Vec<usize> = (0..=max_scope).filter(|&n| gen.inhabited(n)).collect();
    let mut out = Vec::with_capacity(cfg.samples);
    if scopes.is_empty() {
        return out;
    }
    for _ in 0..cfg.samples {
        let pick = |rng: &mut random::Rng64| scopes[rng.gen_range(0..scopes.len())];
        let (n0, n1, n2) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let term = gen.term(&mut rng, n0).expect("scope is inhabited");
        let s1 = Substitution { from: n0, to: n1, images: gen.images(&mut rng, n0, n1).expect("inhabited") };
        let s2 = Substitution { from: n1, to: n2, images: gen.images(&mut rng, n1, n2).expect("inhabited") };
        out.push(Sample { term, s1, s2 });
    }
    out
}

fn mismatch(term: &Term, s: &Substitution, s2: Option<&Substitution>, lhs: &Term, rhs: &Term) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample {
        term: term.to_string(),
        subst: s.to_json(),
        subst2: s2.map(Substitution::to_json),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Checks both defining equations at every node of `t`, with the
/// substitution lifted as the node's binder depth requires.
///
/// The right-hand sides lift with the correct [`lift`]; only the operation
/// under test runs in `mode`.
fn hss_at(t: &Term, s: &Substitution, mode: LiftMode, var: &mut Option<Counterexample>, ctor: &mut Option<Counterexample>) {
    let lhs = subst_with(t, s, mode);
    match t.node() {
        Node::Var(i) => {
            if var.is_none() {
                *var = mismatch(t, s, None, &lhs, &s.images[*i]);
            }
        }
        Node::Ctor(c, args) => {
            let mut rhs_args = Vec::with_capacity(args.len());
            for arg in args {
                let lifted = lift(s, arg.scope() - t.scope());
                rhs_args.push(subst_with(arg, &lifted, mode));
                hss_at(arg, &lifted, mode, var, ctor);
            }
            let rhs = Term::new_unchecked(s.to, Node::Ctor(c.clone(), rhs_args));
            if ctor.is_none() {
                *ctor = mismatch(t, s, None, &lhs, &rhs);
            }
        }
    }
}

fn hss_reports<'a>(cases: impl Iterator<Item = (&'a Term, &'a Substitution)>, mode: LiftMode) -> Vec<LawReport> {
    let mut var = LawReport::new("hss_var");
    let mut ctor = LawReport::new("hss_ctor");
    for (t, s) in cases {
        let (mut v, mut c) = (None, None);
        hss_at(t, s, mode, &mut v, &mut c);
        var.record(v);
        ctor.record(c);
    }
    vec![var, ctor]
}

/// Verifies both substitution equations on seeded samples. Returns the
/// variable-equation report followed by the constructor-equation report.
pub fn check_hss(sig: &BindingSignature, cfg: &LawConfig) -> Vec<LawReport> {
    let samples = samples(sig, cfg);
    hss_reports(samples.iter().map(|s| (&s.term, &s.s1)), cfg.lift_mode)
}

fn monad_case(
    t: &Term,
    s1: &Substitution,
    s2: &Substitution,
    mode: LiftMode,
    reports: &mut [LawReport; 3],
) {
    let mut left = None;
    for (i, image) in s1.images.iter().enumerate() {
        let v = Term::new_unchecked(s1.from, Node::Var(i));
        left = left.or_else(|| mismatch(&v, s1, None, &subst_with(&v, s1, mode), image));
    }
    reports[0].record(left);

    let unit = identity(t.scope());
    reports[1].record(mismatch(t, &unit, None, &subst_with(t, &unit, mode), t));

    let twice = subst_with(&subst_with(t, s1, mode), s2, mode);
    let composed = subst_with(t, &kleisli_with(s1, s2, mode), mode);
    reports[2].record(mismatch(t, s1, Some(s2), &twice, &composed));
}

fn monad_reports() -> [LawReport; 3] {
    [LawReport::new("left_unit"), LawReport::new("right_unit"), LawReport::new("associativity")]
}

/// Left unit, right unit and associativity on seeded samples, compared by
/// structural equality.
pub fn check_monad_laws(sig: &BindingSignature, cfg: &LawConfig) -> Vec<LawReport> {
    let mut reports = monad_reports();
    for s in samples(sig, cfg) {
        monad_case(&s.term, &s.s1, &s.s2, cfg.lift_mode, &mut reports);
    }
    reports.to_vec()
}

/// Every substitution `from -> to` whose images are drawn from `pool`.
fn all_substitutions(from: usize, to: usize, pool: &[Term]) -> Vec<Substitution> {
    let mut out = vec![Vec::new()];
    for _ in 0..from {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Term>| {
                pool.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|images| Substitution { from, to, images }).collect()
}

/// Exhaustive version of the law checks: every term of height at most
/// `depth` at `scope`, against every pair of composable substitutions whose
/// targets are at most `max_to` and whose images are terms of height at
/// most `depth`.
pub fn check_laws_exhaustive(
    sig: &BindingSignature,
    scope: usize,
    depth: usize,
    max_to: usize,
    bounds: Bounds,
    mode: LiftMode,
) -> Result<Vec<LawReport>, TermError> {
    let terms = enumerate_terms(sig, scope, depth, bounds)?;
    let pools: Vec<Vec<Term>> =
        (0..=max_to.max(scope)).map(|n| enumerate_terms(sig, n, depth, bounds)).collect::<Result<_, _>>()?;
    let subs_from = |from: usize| -> Vec<Substitution> {
        (0..=max_to).flat_map(|to| all_substitutions(from, to, &pools[to])).collect()
    };
    let first = subs_from(scope);
    let mut hss_cases = Vec::new();
    let mut reports = monad_reports();
    for t in &terms {
        for s1 in &first {
            hss_cases.push((t, s1));
            for s2 in &subs_from(s1.to) {
                monad_case(t, s1, s2, mode, &mut reports);
            }
        }
    }
    let mut out = hss_reports(hss_cases.into_iter(), mode);
    out.extend(reports);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{empty_signature, lambda_calculus, mltt79};
    use crate::term::{check_scope, parse_term};

    fn lc(s: &str, scope: usize) -> Term {
        parse_term(&lambda_calculus(), s, scope).unwrap()
    }

    #[test]
    fn unit_subst_shapes() {
        let sig = lambda_calculus();
        assert!(unit_subst(&sig, 0).unwrap().images().is_empty());
        let u = unit_subst(&sig, 3).unwrap();
        let printed: Vec<String> = u.images().iter().map(|t| t.to_string()).collect();
        assert_eq!(printed, ["(var 0)", "(var 1)", "(var 2)"]);
        assert!(unit_subst(&crate::signature::list_signature(2), 1).is_err());
    }

    #[test]
    fn lift_rules() {
        let s = Substitution::new(1, 0, vec![lc("(abs (var 0))", 0)]).unwrap();
        assert_eq!(lift(&s, 0), s);
        assert_eq!(lift(&lift(&s, 1), 1), lift(&s, 2));
        let l = lift(&s, 2);
        let printed: Vec<String> = l.images().iter().map(|t| t.to_string()).collect();
        assert_eq!(printed, ["(var 0)", "(var 1)", "(abs (var 0))"]);
        let sig = lambda_calculus();
        assert_eq!(lift(&unit_subst(&sig, 2).unwrap(), 3), unit_subst(&sig, 5).unwrap());
    }

    #[test]
    fn variable_equation() {
        let t = lc("(abs (var 0))", 0);
        let s = Substitution::new(1, 0, vec![t.clone()]).unwrap();
        assert_eq!(subst(&lc("(var 0)", 1), &s), t);
    }

    #[test]
    fn substitution_under_binder() {
        let t = lc("(app (var 0) (abs (app (var 1) (var 0))))", 1);
        let s = Substitution::new(1, 0, vec![lc("(abs (var 0))", 0)]).unwrap();
        let got = subst(&t, &s);
        assert_eq!(got.to_string(), "(app (abs (var 0)) (abs (app (abs (var 0)) (var 0))))");
        assert_eq!(got.scope(), 0);
    }

    #[test]
    fn open_image_is_shifted_under_binder() {
        // 0 |-> var 1 at scope 2; under abs it must become var 2.
        let t = lc("(abs (app (var 1) (var 0)))", 1);
        let s = Substitution::new(1, 2, vec![lc("(var 1)", 2)]).unwrap();
        assert_eq!(subst(&t, &s), lc("(abs (app (var 2) (var 0)))", 2));
        let broken = subst_with(&t, &s, LiftMode::NoShift);
        assert_eq!(broken.to_string(), "(abs (app (var 1) (var 0)))");
    }

    #[test]
    fn kleisli_units_and_empty() {
        let sig = lambda_calculus();
        let s = Substitution::new(2, 1, vec![lc("(var 0)", 1), lc("(abs (var 1))", 1)]).unwrap();
        assert_eq!(kleisli(&unit_subst(&sig, 2).unwrap(), &s), s);
        assert_eq!(kleisli(&s, &unit_subst(&sig, 1).unwrap()), s);
        let e = Substitution::new(0, 0, vec![]).unwrap();
        assert_eq!(kleisli(&e, &e).images().len(), 0);
    }

    #[test]
    fn substitution_validation() {
        assert!(matches!(Substitution::new(2, 0, vec![]), Err(SubstError::WrongLength { .. })));
        assert!(matches!(
            Substitution::new(1, 0, vec![lc("(var 0)", 1)]),
            Err(SubstError::ImageScope { .. })
        ));
    }

    #[test]
    fn laws_hold_lc_and_mltt() {
        for sig in [lambda_calculus(), mltt79()] {
            let cfg = LawConfig { samples: 300, ..LawConfig::default() };
            for r in check_hss(&sig, &cfg).iter().chain(&check_monad_laws(&sig, &cfg)) {
                assert!(r.ok(), "{} failed: {:?}", r.law, r.first_counterexample);
                assert_eq!(r.samples, 300);
            }
        }
    }

    #[test]
    fn empty_signature_laws() {
        let cfg = LawConfig { samples: 50, ..LawConfig::default() };
        let reports = check_hss(&empty_signature(), &cfg);
        assert!(reports.iter().all(LawReport::ok));
    }

    #[test]
    fn results_are_well_scoped() {
        let sig = mltt79();
        let gen = TermGen::new(&sig, 3, 30);
        let mut r = random::rng(3);
        for _ in 0..200 {
            let t = gen.term(&mut r, 1).unwrap();
            let s = Substitution::new(1, 2, gen.images(&mut r, 1, 2).unwrap()).unwrap();
            let out = subst(&t, &s);
            assert_eq!(out.scope(), 2);
            assert!(check_scope(&sig, &out));
        }
    }

    #[test]
    fn no_shift_mutation_is_caught() {
        let cfg = LawConfig { lift_mode: LiftMode::NoShift, ..LawConfig::default() };
        let sig = lambda_calculus();
        let hss = check_hss(&sig, &cfg);
        assert!(!hss[1].ok());
        let cx = hss[1].first_counterexample.as_ref().unwrap();
        assert!(cx.term.contains("abs"), "{cx:?}");
        let monad = check_monad_laws(&sig, &cfg);
        assert!(!monad[2].ok());
        assert!(monad[2].first_counterexample.as_ref().unwrap().term.contains("abs"));
    }
}
