//! The initial chain `0 -> F0 -> F^2 0 -> ..` of a signature functor,
//! truncated and computed over finite sets.
//!
//! `F` acts on families of finite sets indexed by scope:
//!
//! ```text
//! F(X)(n) = [n if the signature has variables] + sum_c prod_j X(n + a_cj)
//! ```
//!
//! `F(X)(n)` needs `X` up to scope `n + max a`, so each application shortens
//! the family by the largest arity entry. Elements of `F(X)(n)` are laid out
//! as the variables `0..n` followed by one block per constructor, in
//! [`BindingSignature::enumerate_ctors`] order; inside a block the argument
//! codes form a mixed-radix number with the first argument most significant.
//!
//! The layers are decoded into [`Term`]s, which makes it possible to compare
//! the colimit of the chain with the term enumerator constructor by
//! constructor.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::colimit::{
    check_pointwise, check_product_cocont, colimit, is_colimiting, pointwise_colimit, product_diagram,
    ColimitError, ColimitResult, CoconeDesc, DiagramDesc, FinSetMor, FinSetObj, GraphDesc, PointwiseDiagram,
};
use crate::signature::{Arity, BindingSignature, CtorId};
use crate::term::{enumerate_terms, rename, Bounds, Node, Renaming, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdamekError {
    #[error("layer size exceeds the cap of {cap}")]
    Overflow { cap: u64 },
    #[error("scope {scope} is not available at layer {layer}; increase the scope head-room")]
    ScopeOutOfRange { scope: usize, layer: usize },
    #[error("the check needs at least one layer above the initial one")]
    TooShort,
    #[error(transparent)]
    Colimit(#[from] ColimitError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// One element of `F(X)(n)`: a variable, or a constructor (by table index)
/// with one code per argument.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Cell {
    Var(usize),
    Ctor(usize, Vec<usize>),
}

struct Layout {
    vars: usize,
    /// Per constructor: block offset and the argument radices.
    blocks: Vec<(usize, Vec<usize>)>,
    total: usize,
}

impl Layout {
    fn decode(&self, mut y: usize) -> Cell {
        if y < self.vars {
            return Cell::Var(y);
        }
        let idx = self.blocks.partition_point(|(offset, _)| *offset <= y) - 1;
        let (offset, radices) = &self.blocks[idx];
        y -= offset;
        let mut digits = vec![0; radices.len()];
        for (d, &r) in digits.iter_mut().zip(radices).rev() {
            *d = y % r;
            y /= r;
        }
        Cell::Ctor(idx, digits)
    }

    fn encode(&self, cell: &Cell) -> usize {
        match cell {
            Cell::Var(i) => *i,
            Cell::Ctor(idx, digits) => {
                let (offset, radices) = &self.blocks[*idx];
                offset + digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
            }
        }
    }
}

/// The signature functor restricted to the constructors visible under a
/// parameter bound.
#[derive(Debug, Clone)]
pub struct SignatureFunctor {
    vars: bool,
    table: Vec<(CtorId, Arity)>,
    index: HashMap<CtorId, usize>,
    max_entry: usize,
}

impl SignatureFunctor {
    pub fn new(sig: &BindingSignature, param_bound: usize) -> SignatureFunctor {
        let table = sig.ctor_table(param_bound);
        let index = table.iter().enumerate().map(|(i, (c, _))| (c.clone(), i)).collect();
        SignatureFunctor { vars: sig.with_variables(), max_entry: sig.max_arity_entry(param_bound), table, index }
    }

    pub fn max_entry(&self) -> usize {
        self.max_entry
    }

    fn output_len(&self, len: usize) -> usize {
        len.saturating_sub(self.max_entry)
    }

    fn layout(&self, x: &[usize], n: usize, cap: u64) -> Result<Layout, AdamekError> {
        let overflow = AdamekError::Overflow { cap };
        let vars = if self.vars { n } else { 0 };
        let mut total = vars as u64;
        let mut blocks = Vec::with_capacity(self.table.len());
        for (_, arity) in &self.table {
            let radices: Vec<usize> = arity.entries().iter().map(|a| x[n + a]).collect();
            let size = radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r as u64)).ok_or(overflow.clone())?;
            blocks.push((total as usize, radices));
            total = total.checked_add(size).filter(|&t| t <= cap).ok_or(overflow.clone())?;
        }
        Ok(Layout { vars, blocks, total: total as usize })
    }

    /// `F` on a scope-indexed family of sizes.
    pub fn apply_sets(&self, x: &[usize], cap: u64) -> Result<Vec<usize>, AdamekError> {
        (0..self.output_len(x.len())).map(|n| Ok(self.layout(x, n, cap)?.total)).collect()
    }

    /// `F` on a scope-indexed family of maps.
    pub fn apply_maps(&self, f: &[FinSetMor], cap: u64) -> Result<Vec<FinSetMor>, AdamekError> {
        let dom: Vec<usize> = f.iter().map(|m| m.dom().size).collect();
        let cod: Vec<usize> = f.iter().map(|m| m.cod().size).collect();
        let mut out = Vec::with_capacity(self.output_len(f.len()));
        for n in 0..self.output_len(f.len()) {
            let (ld, lc) = (self.layout(&dom, n, cap)?, self.layout(&cod, n, cap)?);
            let map = (0..ld.total)
                .map(|y| match ld.decode(y) {
                    Cell::Var(i) => lc.encode(&Cell::Var(i)),
                    Cell::Ctor(idx, digits) => {
                        let arity = self.table[idx].1.entries();
                        let mapped = digits.iter().zip(arity).map(|(&d, a)| f[n + a].apply(d)).collect();
                        lc.encode(&Cell::Ctor(idx, mapped))
                    }
                })
                .collect();
            out.push(FinSetMor::new(lc.total, map)?);
        }
        Ok(out)
    }
}

/// The chain truncated after `K` applications of the functor.
///
/// `layers[k][n]` is the size of `F^k 0` at scope `n`, available for
/// `n <= scope_max - k * max_entry`; `steps[k][n]` is the map from layer
/// `k` to layer `k + 1` at scope `n`.
#[derive(Debug, Clone)]
pub struct ChainApprox {
    sig: BindingSignature,
    param_bound: usize,
    scope_max: usize,
    k: usize,
    cap: u64,
    functor: SignatureFunctor,
    layers: Vec<Vec<usize>>,
    steps: Vec<Vec<FinSetMor>>,
}

pub const DEFAULT_CAP: u64 = 1_000_000;

pub fn build_chain(
    sig: &BindingSignature,
    param_bound: usize,
    scope_max: usize,
    k: usize,
    cap: u64,
) -> Result<ChainApprox, AdamekError> {
    let functor = SignatureFunctor::new(sig, param_bound);
    let mut layers = vec![vec![0; scope_max + 1]];
    let mut steps: Vec<Vec<FinSetMor>> = Vec::with_capacity(k);
    for i in 0..k {
        let next = functor.apply_sets(&layers[i], cap)?;
        let step = if i == 0 {
            next.iter().map(|&size| FinSetMor::new(size, Vec::new())).collect::<Result<_, _>>()?
        } else {
            functor.apply_maps(&steps[i - 1], cap)?
        };
        layers.push(next);
        steps.push(step);
    }
    Ok(ChainApprox { sig: sig.clone(), param_bound, scope_max, k, cap, functor, layers, steps })
}

impl ChainApprox {
    pub fn signature(&self) -> &BindingSignature {
        &self.sig
    }

    pub fn param_bound(&self) -> usize {
        self.param_bound
    }

    pub fn scope_max(&self) -> usize {
        self.scope_max
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn functor(&self) -> &SignatureFunctor {
        &self.functor
    }

    /// Number of scopes available at layer `k`.
    pub fn scopes_at(&self, k: usize) -> usize {
        self.layers[k].len()
    }

    pub fn layer(&self, k: usize, n: usize) -> Result<FinSetObj, AdamekError> {
        self.layers[k].get(n).map(|&s| FinSetObj::new(s)).ok_or(AdamekError::ScopeOutOfRange { scope: n, layer: k })
    }

    pub fn step(&self, k: usize, n: usize) -> Result<&FinSetMor, AdamekError> {
        self.steps[k].get(n).ok_or(AdamekError::ScopeOutOfRange { scope: n, layer: k + 1 })
    }

    /// Sizes of layers `0..=K` at scope `n`.
    pub fn sizes(&self, n: usize) -> Result<Vec<usize>, AdamekError> {
        (0..=self.k).map(|k| self.layer(k, n).map(|o| o.size)).collect()
    }

    fn check_range(&self, k: usize, n: usize) -> Result<(), AdamekError> {
        self.layer(k, n).map(|_| ())
    }

    /// The term denoted by element `x` of layer `k` at scope `n`.
    pub fn decode(&self, k: usize, n: usize, x: usize) -> Result<Term, AdamekError> {
        self.check_range(k, n)?;
        assert!(x < self.layers[k][n], "element {x} outside layer {k} at scope {n}");
        Ok(self.decode_unchecked(k, n, x))
    }

    fn decode_unchecked(&self, k: usize, n: usize, x: usize) -> Term {
        let layout = self.functor.layout(&self.layers[k - 1], n, u64::MAX).expect("layer was built under the cap");
        match layout.decode(x) {
            Cell::Var(i) => Term::new_unchecked(n, Node::Var(i)),
            Cell::Ctor(idx, digits) => {
                let (ctor, arity) = &self.functor.table[idx];
                let args = digits
                    .iter()
                    .zip(arity.entries())
                    .map(|(&d, a)| self.decode_unchecked(k - 1, n + a, d))
                    .collect();
                Term::new_unchecked(n, Node::Ctor(ctor.clone(), args))
            }
        }
    }

    /// The element of layer `k` at the term's scope denoting `t`, if any.
    pub fn encode(&self, k: usize, t: &Term) -> Option<usize> {
        let n = t.scope();
        if k == 0 || n >= self.layers[k].len() {
            return None;
        }
        let layout = self.functor.layout(&self.layers[k - 1], n, u64::MAX).ok()?;
        let cell = match t.node() {
            Node::Var(i) if self.functor.vars && *i < n => Cell::Var(*i),
            Node::Var(_) => return None,
            Node::Ctor(c, args) => {
                let idx = *self.functor.index.get(c)?;
                let arity = self.functor.table[idx].1.entries();
                if args.len() != arity.len() {
                    return None;
                }
                let mut digits = Vec::with_capacity(args.len());
                for (arg, a) in args.iter().zip(arity) {
                    if arg.scope() != n + a {
                        return None;
                    }
                    digits.push(self.encode(k - 1, arg)?);
                }
                Cell::Ctor(idx, digits)
            }
        };
        Some(layout.encode(&cell))
    }

    /// The chain `layers[from..=to]` at scope `n`.
    pub fn diagram(&self, from: usize, to: usize, n: usize) -> Result<DiagramDesc, AdamekError> {
        self.check_range(to, n)?;
        let maps = (from..to).map(|k| self.steps[k][n].clone()).collect();
        Ok(DiagramDesc::chain(maps, self.layer(to, n)?)?)
    }
}

/// Colimit of the whole truncated chain at scope `n`.
pub fn chain_colimit(ch: &ChainApprox, n: usize) -> Result<ColimitResult, AdamekError> {
    Ok(colimit(&ch.diagram(0, ch.k, n)?))
}

/// The colimit has the top layer as its tip: the top leg is a bijection
/// and every other leg is the composite of steps up to the top followed by
/// that bijection.
pub fn check_chain_colimit(ch: &ChainApprox, n: usize) -> Result<bool, AdamekError> {
    let col = chain_colimit(ch, n)?;
    let top = &col.legs()[ch.k];
    if col.tip() != ch.layer(ch.k, n)? || !top.is_bijective() {
        return Ok(false);
    }
    let mut leg = top.clone();
    for k in (0..ch.k).rev() {
        leg = ch.steps[k][n].then(&leg);
        if col.legs()[k] != leg {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decodes every colimit class and compares the result with the terms of
/// height at most `K` at scope `n`.
pub fn compare_with_terms(ch: &ChainApprox, n: usize) -> Result<bool, AdamekError> {
    let col = chain_colimit(ch, n)?;
    let mut decoded: Vec<Option<Term>> = vec![None; col.tip().size];
    for k in 1..=ch.k {
        for x in 0..ch.layers[k][n] {
            let t = ch.decode(k, n, x)?;
            match &decoded[col.class_of(k, x)] {
                Some(prev) if *prev != t => return Ok(false),
                Some(_) => {}
                None => decoded[col.class_of(k, x)] = Some(t),
            }
        }
    }
    let decoded: Vec<Term> = match decoded.into_iter().collect::<Option<Vec<_>>>() {
        Some(d) => d,
        None => return Ok(false),
    };
    let bounds = Bounds { param_bound: ch.param_bound, cap: ch.cap };
    let terms = enumerate_terms(&ch.sig, n, ch.k, bounds)?;
    let distinct: HashSet<&Term> = decoded.iter().collect();
    Ok(distinct.len() == decoded.len() && decoded.len() == terms.len() && terms.iter().all(|t| distinct.contains(t)))
}

/// Drops the initial object and compares colimits: the class of `(k, x)`
/// in the shortened chain must correspond to the class of `(k + 1, x)` in
/// the full one, bijectively onto the classes hit from layer 1 onwards.
pub fn check_shift_invariance(ch: &ChainApprox, n: usize) -> Result<bool, AdamekError> {
    if ch.k == 0 {
        return Err(AdamekError::TooShort);
    }
    let full = chain_colimit(ch, n)?;
    let shifted = colimit(&ch.diagram(1, ch.k, n)?);
    let mut stabilized = vec![false; full.tip().size];
    let mut h: Vec<Option<usize>> = vec![None; shifted.tip().size];
    for v in 0..ch.k {
        for x in 0..ch.layers[v + 1][n] {
            let target = full.class_of(v + 1, x);
            stabilized[target] = true;
            match h[shifted.class_of(v, x)] {
                Some(y) if y != target => return Ok(false),
                _ => h[shifted.class_of(v, x)] = Some(target),
            }
        }
    }
    let mut hit = vec![false; full.tip().size];
    for y in h.into_iter().flatten() {
        if std::mem::replace(&mut hit[y], true) {
            return Ok(false);
        }
    }
    Ok(hit == stabilized)
}

/// The algebra map from `F(layer K-1)(n)` to the colimit: each element is
/// read as a variable or a constructor applied to decoded arguments, and
/// the resulting term is located in the top layer. Holds when that map is
/// a bijection.
pub fn lambek_check(ch: &ChainApprox, n: usize) -> Result<bool, AdamekError> {
    if ch.k == 0 {
        return Err(AdamekError::TooShort);
    }
    let col = chain_colimit(ch, n)?;
    let below = &ch.layers[ch.k - 1];
    let layout = ch.functor.layout(below, n, ch.cap)?;
    let mut alpha = Vec::with_capacity(layout.total);
    for y in 0..layout.total {
        let t = match layout.decode(y) {
            Cell::Var(i) => Term::new_unchecked(n, Node::Var(i)),
            Cell::Ctor(idx, digits) => {
                let (ctor, arity) = &ch.functor.table[idx];
                let args =
                    digits.iter().zip(arity.entries()).map(|(&d, a)| ch.decode(ch.k - 1, n + a, d)).collect::<Result<_, _>>()?;
                Term::new_unchecked(n, Node::Ctor(ctor.clone(), args))
            }
        };
        match ch.encode(ch.k, &t) {
            Some(x) => alpha.push(col.class_of(ch.k, x)),
            None => return Ok(false),
        }
    }
    Ok(FinSetMor::new(col.tip().size, alpha)?.is_bijective())
}

/// Applies `F` to the chain `X^0 -> .. -> X^{K-1}` and checks that the
/// image of its colimit cocone is colimiting at scope `n`. Constructors
/// with several arguments also have the product of their argument chains
/// compared with the product of the colimits.
pub fn check_omega_cocont(ch: &ChainApprox, n: usize) -> Result<bool, AdamekError> {
    if ch.k == 0 {
        return Err(AdamekError::TooShort);
    }
    ch.check_range(ch.k, n)?;
    let top = ch.k - 1;
    let reach = n + ch.functor.max_entry;
    let mut tips = Vec::with_capacity(reach + 1);
    let mut legs: Vec<Vec<FinSetMor>> = vec![Vec::with_capacity(reach + 1); ch.k];
    for m in 0..=reach {
        let col = colimit(&ch.diagram(0, top, m)?);
        tips.push(col.tip().size);
        for (k, leg) in col.legs().iter().enumerate() {
            legs[k].push(leg.clone());
        }
    }
    let f_tip = ch.functor.apply_sets(&tips, ch.cap)?[n];
    let mut image_legs = Vec::with_capacity(ch.k);
    for leg in &legs {
        image_legs.push(ch.functor.apply_maps(leg, ch.cap)?[n].clone());
    }
    let image = ch.diagram(1, ch.k, n)?;
    if !is_colimiting(&image, &CoconeDesc { tip: FinSetObj::new(f_tip), legs: image_legs })? {
        return Ok(false);
    }
    for (_, arity) in &ch.functor.table {
        let chains: Vec<DiagramDesc> =
            arity.entries().iter().map(|a| ch.diagram(0, top, n + a)).collect::<Result<_, _>>()?;
        let mut iter = chains.into_iter();
        if let Some(mut acc) = iter.next() {
            for next in iter {
                if !check_product_cocont(&acc, &next)? {
                    return Ok(false);
                }
                acc = product_diagram(&acc, &next)?;
            }
        }
    }
    Ok(true)
}

/// Builds a chain with enough scope head-room to observe `scope` and runs
/// [`check_omega_cocont`] on it.
pub fn check_omega_cocont_signature_functor(
    sig: &BindingSignature,
    param_bound: usize,
    k: usize,
    scope: usize,
    cap: u64,
) -> Result<bool, AdamekError> {
    let ch = build_chain(sig, param_bound, scope + k * sig.max_arity_entry(param_bound), k, cap)?;
    check_omega_cocont(&ch, scope)
}

/// The chain at scopes `0..=max_scope` as one pointwise diagram, with
/// weakening `i -> i + 1` as the transition from each scope to the next.
pub fn scope_pointwise_diagram(ch: &ChainApprox, max_scope: usize) -> Result<PointwiseDiagram, AdamekError> {
    let diagrams = (0..=max_scope).map(|n| ch.diagram(0, ch.k, n)).collect::<Result<Vec<_>, _>>()?;
    let mut transitions = Vec::with_capacity(max_scope);
    for n in 0..max_scope {
        let weaken = Renaming::shift(n, 1);
        let mut per_layer = Vec::with_capacity(ch.k + 1);
        for k in 0..=ch.k {
            let map = (0..ch.layers[k][n])
                .map(|x| {
                    let t = rename(&ch.decode_unchecked(k, n, x), &weaken);
                    ch.encode(k, &t).expect("weakening preserves height")
                })
                .collect();
            per_layer.push(FinSetMor::new(ch.layers[k][n + 1], map)?);
        }
        transitions.push(per_layer);
    }
    Ok(PointwiseDiagram { positions: GraphDesc::chain(max_scope + 1), diagrams, transitions })
}

/// Pointwise colimit over scopes: the induced maps commute with the legs
/// and agree with weakening of the decoded terms.
pub fn check_scope_pointwise(ch: &ChainApprox, max_scope: usize) -> Result<bool, AdamekError> {
    let pd = scope_pointwise_diagram(ch, max_scope)?;
    let pc = pointwise_colimit(&pd)?;
    if !check_pointwise(&pd, &pc) {
        return Ok(false);
    }
    for n in 0..max_scope {
        let weaken = Renaming::shift(n, 1);
        for x in 0..ch.layers[ch.k][n] {
            let t = rename(&ch.decode_unchecked(ch.k, n, x), &weaken);
            let Some(y) = ch.encode(ch.k, &t) else { return Ok(false) };
            if pc.induced[n].apply(pc.colimits[n].class_of(ch.k, x)) != pc.colimits[n + 1].class_of(ch.k, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    fn of(result: Result<bool, AdamekError>) -> Result<Outcome, AdamekError> {
        match result {
            Ok(true) => Ok(Outcome::Pass),
            Ok(false) => Ok(Outcome::Fail),
            Err(AdamekError::TooShort) => Ok(Outcome::Skip),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleChecks {
    pub colimit: Outcome,
    pub terms: Outcome,
    pub shift: Outcome,
    pub lambek: Outcome,
    pub cocont: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub signature: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub scope: usize,
    pub sizes: Vec<usize>,
    pub checks: OracleChecks,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        [c.colimit, c.terms, c.shift, c.lambek, c.cocont].iter().all(|&o| o != Outcome::Fail)
    }
}

/// Builds the chain for `scope` and runs every check on it.
pub fn run_oracle(
    sig: &BindingSignature,
    param_bound: usize,
    k: usize,
    scope: usize,
    cap: u64,
) -> Result<OracleReport, AdamekError> {
    let ch = build_chain(sig, param_bound, scope + k * sig.max_arity_entry(param_bound), k, cap)?;
    let checks = OracleChecks {
        colimit: Outcome::of(check_chain_colimit(&ch, scope))?,
        terms: Outcome::of(compare_with_terms(&ch, scope))?,
        shift: Outcome::of(check_shift_invariance(&ch, scope))?,
        lambek: Outcome::of(lambek_check(&ch, scope))?,
        cocont: Outcome::of(check_omega_cocont(&ch, scope))?,
    };
    Ok(OracleReport { signature: sig.name().to_string(), k, scope, sizes: ch.sizes(scope)?, checks })
}
