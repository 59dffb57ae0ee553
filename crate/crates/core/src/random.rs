//! Seeded generators for terms, substitutions and renamings.
//!
//! All randomness flows through [`Rng64`], a SplitMix64 generator, so a
//! seed reproduces the same samples on every platform.
//!
//! Terms are grown top-down. At depth `d` a node becomes a leaf with
//! probability `1 - 0.75 * 0.7^d`; otherwise its kind is drawn uniformly
//! from "variable" (when variables exist and the scope is nonempty) and
//! every constructor visible under the parameter bound. A constructor is
//! only taken when the remaining node budget can still close all of its
//! arguments; leaves are chosen among the cheapest ways to close a term.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::signature::{Arity, BindingSignature, CtorId};
use crate::term::{Node, Renaming, Term};

pub type Rng64 = SplitMix64;

pub fn rng(seed: u64) -> Rng64 {
    SplitMix64::seed_from_u64(seed)
}

const LEAF_BASE: f64 = 0.75;
const LEAF_DAMPING: f64 = 0.7;

pub struct TermGen {
    vars: bool,
    table: Vec<(CtorId, Arity)>,
    max_size: usize,
    /// Cheapest term size at scope 0 (and at every scope when there are no
    /// variables); `None` when no such term exists.
    closed_cost: Option<usize>,
}

impl TermGen {
    pub fn new(sig: &BindingSignature, param_bound: usize, max_size: usize) -> TermGen {
        let vars = sig.with_variables();
        let table = sig.ctor_table(param_bound);
        // With variables every scope above 0 closes with a single node, so
        // only scope 0 needs a fixpoint.
        let mut closed_cost: Option<usize> = None;
        loop {
            let mut best = closed_cost;
            for (_, arity) in &table {
                let mut total = Some(1usize);
                for &a in arity.entries() {
                    let c = if vars && a > 0 { Some(1) } else { closed_cost };
                    total = total.zip(c).map(|(x, y)| x + y);
                }
                if let Some(t) = total {
                    best = Some(best.map_or(t, |b| b.min(t)));
                }
            }
            if best == closed_cost {
                break;
            }
            closed_cost = best;
        }
        TermGen { vars, table, max_size, closed_cost }
    }

    fn cost(&self, scope: usize) -> Option<usize> {
        if self.vars && scope > 0 {
            Some(1)
        } else {
            self.closed_cost
        }
    }

    fn ctor_cost(&self, scope: usize, arity: &Arity) -> Option<usize> {
        arity.entries().iter().try_fold(1usize, |acc, a| self.cost(scope + a).map(|c| acc + c))
    }

    /// Whether some term exists at `scope`.
    pub fn inhabited(&self, scope: usize) -> bool {
        self.cost(scope).is_some()
    }

    /// A random term at `scope`, or `None` when the scope is uninhabited.
    pub fn term(&self, rng: &mut Rng64, scope: usize) -> Option<Term> {
        self.cost(scope)?;
        let mut budget = self.max_size.max(self.cost(scope).unwrap_or(1));
        Some(self.grow(rng, scope, 0, &mut budget))
    }

    fn grow(&self, rng: &mut Rng64, scope: usize, depth: usize, budget: &mut usize) -> Term {
        let leaf_prob = 1.0 - LEAF_BASE * LEAF_DAMPING.powi(depth as i32);
        if !rng.gen_bool(leaf_prob.clamp(0.0, 1.0)) {
            let var_option = self.vars && scope > 0;
            let options = self.table.len() + usize::from(var_option);
            if options > 0 {
                let pick = rng.gen_range(0..options);
                if var_option && pick == self.table.len() {
                    *budget = budget.saturating_sub(1);
                    return Term::new_unchecked(scope, Node::Var(rng.gen_range(0..scope)));
                }
                let (ctor, arity) = &self.table[pick];
                if let Some(cost) = self.ctor_cost(scope, arity) {
                    if cost <= *budget {
                        *budget -= 1;
                        // Keep enough budget to close the remaining siblings.
                        let mut reserved: usize =
                            arity.entries().iter().map(|a| self.cost(scope + a).unwrap()).sum();
                        let mut args = Vec::with_capacity(arity.len());
                        for &a in arity.entries() {
                            let own = self.cost(scope + a).unwrap();
                            reserved -= own;
                            let mut local = *budget - reserved;
                            let before = local;
                            args.push(self.grow(rng, scope + a, depth + 1, &mut local));
                            *budget -= before - local;
                        }
                        return Term::new_unchecked(scope, Node::Ctor(ctor.clone(), args));
                    }
                }
            }
        }
        self.leaf(rng, scope, budget)
    }

    /// A cheapest term at `scope`, chosen uniformly among the cheapest
    /// first steps.
    fn leaf(&self, rng: &mut Rng64, scope: usize, budget: &mut usize) -> Term {
        if self.vars && scope > 0 {
            *budget = budget.saturating_sub(1);
            return Term::new_unchecked(scope, Node::Var(rng.gen_range(0..scope)));
        }
        let target = self.cost(scope).expect("leaf requested at an uninhabited scope");
        let cheapest: Vec<&(CtorId, Arity)> =
            self.table.iter().filter(|(_, a)| self.ctor_cost(scope, a) == Some(target)).collect();
        let (ctor, arity) = cheapest[rng.gen_range(0..cheapest.len())];
        *budget = budget.saturating_sub(1);
        let args = arity.entries().iter().map(|a| self.leaf(rng, scope + a, budget)).collect();
        Term::new_unchecked(scope, Node::Ctor(ctor.clone(), args))
    }

    /// Random images for every index below `from`, at scope `to`.
    pub fn images(&self, rng: &mut Rng64, from: usize, to: usize) -> Option<Vec<Term>> {
        (0..from).map(|_| self.term(rng, to)).collect()
    }
}

/// A random renaming `from -> to`; `to` must be positive unless `from` is 0.
pub fn renaming(rng: &mut Rng64, from: usize, to: usize) -> Renaming {
    let map = (0..from).map(|_| rng.gen_range(0..to)).collect();
    Renaming::new(to, map).expect("images drawn below target scope")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{lambda_calculus, list_signature, mltt79, CtorSpec};
    use crate::term::check_scope;

    #[test]
    fn generated_terms_are_well_scoped_and_bounded() {
        for sig in [lambda_calculus(), mltt79(), list_signature(3)] {
            let g = TermGen::new(&sig, 3, 30);
            let mut r = rng(7);
            for i in 0..500 {
                let scope = i % 4;
                let t = g.term(&mut r, scope).unwrap();
                assert!(check_scope(&sig, &t), "{t}");
                assert!(t.size() <= 30, "{} nodes", t.size());
            }
        }
    }

    #[test]
    fn closed_lambda_terms_need_a_binder() {
        let g = TermGen::new(&lambda_calculus(), 0, 30);
        assert_eq!(g.cost(0), Some(2));
        let mut r = rng(1);
        let t = g.term(&mut r, 0).unwrap();
        assert!(!t.is_var());
    }

    #[test]
    fn uninhabited_signature() {
        let sig = crate::signature::make_signature("Loop", vec![CtorSpec::new("s", vec![0])], vec![], false)
            .unwrap();
        let g = TermGen::new(&sig, 0, 30);
        assert!(!g.inhabited(0));
        assert!(g.term(&mut rng(0), 0).is_none());
    }

    #[test]
    fn same_seed_same_terms() {
        let g = TermGen::new(&mltt79(), 3, 30);
        let a: Vec<Term> = (0..50).map(|_| g.term(&mut rng(42), 1).unwrap()).collect();
        let b: Vec<Term> = (0..50).map(|_| g.term(&mut rng(42), 1).unwrap()).collect();
        assert_eq!(a, b);
        let mut r = rng(42);
        let varied: Vec<Term> = (0..50).map(|_| g.term(&mut r, 1).unwrap()).collect();
        assert!(varied.iter().any(|t| t.size() > 3));
    }
}
