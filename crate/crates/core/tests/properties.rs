use proptest::prelude::*;

use bindsig_core::fold::{fold, list, Algebra, CaseAlgebra, DepthAlgebra, RebuildAlgebra, SizeAlgebra};
use bindsig_core::random::{self, renaming, TermGen};
use bindsig_core::signature::{lambda_calculus, list_signature, mltt79, pi_signature, sum_signatures};
use bindsig_core::subst::{kleisli, lift, subst};
use bindsig_core::term::{check_scope, count_terms, enumerate_terms, rename};
use bindsig_core::{BindingSignature, Bounds, CtorId, Renaming, Substitution, Term};

fn sigs() -> Vec<BindingSignature> {
    vec![lambda_calculus(), mltt79()]
}

fn term(sig: &BindingSignature, seed: u64, scope: usize) -> Term {
    TermGen::new(sig, 3, 30).term(&mut random::rng(seed), scope).unwrap()
}

fn substitution(sig: &BindingSignature, seed: u64, from: usize, to: usize) -> Substitution {
    let images = TermGen::new(sig, 3, 12).images(&mut random::rng(seed), from, to).unwrap();
    Substitution::new(from, to, images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rename_identity(which in 0..2usize, seed: u64, scope in 0..4usize) {
        let sig = &sigs()[which];
        let t = term(sig, seed, scope);
        prop_assert_eq!(rename(&t, &Renaming::identity(scope)), t);
    }

    #[test]
    fn rename_composition(which in 0..2usize, seed: u64, a in 0..3usize, b in 1..4usize, c in 1..4usize) {
        let sig = &sigs()[which];
        let mut rng = random::rng(seed);
        let t = term(sig, seed ^ 1, a);
        let r1 = renaming(&mut rng, a, b);
        let r2 = renaming(&mut rng, b, c);
        prop_assert_eq!(rename(&rename(&t, &r1), &r2), rename(&t, &r1.then(&r2)));
    }

    #[test]
    fn bind_is_natural(which in 0..2usize, seed: u64, from in 0..3usize, to in 0..3usize, out in 1..4usize) {
        let sig = &sigs()[which];
        let t = term(sig, seed, from);
        let s = substitution(sig, seed ^ 2, from, to);
        let r = if to == 0 { Renaming::new(out, vec![]).unwrap() } else { renaming(&mut random::rng(seed ^ 3), to, out) };
        prop_assert_eq!(rename(&subst(&t, &s), &r), subst(&t, &s.rename_images(&r)));
    }

    #[test]
    fn lift_commutes_with_kleisli(which in 0..2usize, seed: u64, m in 0..3usize, n in 0..3usize, p in 0..3usize, a in 0..3usize) {
        let sig = &sigs()[which];
        let s1 = substitution(sig, seed, m, n);
        let s2 = substitution(sig, seed ^ 5, n, p);
        prop_assert_eq!(lift(&kleisli(&s1, &s2), a), kleisli(&lift(&s1, a), &lift(&s2, a)));
    }

    #[test]
    fn substitution_stays_in_scope(which in 0..2usize, seed: u64, from in 0..3usize, to in 0..3usize) {
        let sig = &sigs()[which];
        let t = term(sig, seed, from);
        let r = subst(&t, &substitution(sig, seed ^ 7, from, to));
        prop_assert!(check_scope(sig, &r));
        prop_assert_eq!(r.scope(), to);
    }

    #[test]
    fn fold_fusion_size_bounds_depth(which in 0..2usize, seed: u64, scope in 0..3usize) {
        // h(v) = v * 2 is an algebra morphism from the size algebra to the
        // algebra computing twice the size.
        let sig = &sigs()[which];
        let t = term(sig, seed, scope);
        let doubled = CaseAlgebraAll(|args: Vec<usize>| 2 + args.iter().sum::<usize>(), 2);
        prop_assert_eq!(2 * fold(&SizeAlgebra, &t).unwrap(), fold(&doubled, &t).unwrap());
        prop_assert!(fold(&DepthAlgebra, &t).unwrap() <= fold(&SizeAlgebra, &t).unwrap());
    }

    #[test]
    fn length_of_map(xs in proptest::collection::vec(0..3usize, 0..12), shift in 0..3usize) {
        let l = list::from_slice(&xs);
        let mapped = list::map_list(|a| (a + shift) % 3, &l).unwrap();
        prop_assert_eq!(list::length(&mapped).unwrap(), xs.len());
        prop_assert!(check_scope(&list_signature(3), &mapped));
    }
}

/// Uniform algebra used by the fusion property: every variable is `leaf`,
/// every constructor combines its arguments with `f`.
struct CaseAlgebraAll<F>(F, usize);

impl<F: Fn(Vec<usize>) -> usize> Algebra for CaseAlgebraAll<F> {
    type Value = usize;

    fn on_var(&self, _: usize, _: usize) -> Option<usize> {
        Some(self.1)
    }

    fn on_ctor(&self, _: usize, _: &CtorId, args: Vec<usize>) -> Option<usize> {
        Some((self.0)(args))
    }
}

#[test]
fn random_operation_sequences_stay_scoped() {
    let mut rng = random::rng(2024);
    let ops = rand::distributions::Uniform::new(0, 3);
    for case in 0..10_000u64 {
        let sig = &sigs()[(case % 2) as usize];
        let gen = TermGen::new(sig, 3, 12);
        let mut scope = (case % 3) as usize;
        let mut t = gen.term(&mut rng, scope).unwrap();
        for _ in 0..3 {
            let next = (case as usize + rand::Rng::sample(&mut rng, ops)) % 3;
            match rand::Rng::sample(&mut rng, ops) {
                0 if next > 0 || scope == 0 => {
                    t = rename(&t, &renaming(&mut rng, scope, next));
                }
                1 => {
                    let images = gen.images(&mut rng, scope, next).unwrap();
                    t = subst(&t, &Substitution::new(scope, next, images).unwrap());
                }
                _ => {
                    let s = Substitution::new(scope, next, gen.images(&mut rng, scope, next).unwrap()).unwrap();
                    t = subst(&t, &lift(&s, 0));
                }
            }
            scope = t.scope();
            assert!(check_scope(sig, &t), "case {case}: {t}");
        }
    }
}

#[test]
fn enumeration_prefix_and_count() {
    let bounds = Bounds { param_bound: 2, cap: 1_000_000 };
    for (sig, scopes, depth) in [(lambda_calculus(), 0..3, 3), (mltt79(), 0..2, 2), (list_signature(3), 0..1, 5)] {
        for n in scopes {
            for k in 0..depth {
                let small = enumerate_terms(&sig, n, k, bounds).unwrap();
                let big = enumerate_terms(&sig, n, k + 1, bounds).unwrap();
                assert_eq!(&big[..small.len()], &small[..]);
                assert_eq!(big.len() as u64, count_terms(&sig, n, k + 1, bounds).unwrap());
            }
        }
    }
}

#[test]
fn rebuild_is_identity_on_small_lc_terms() {
    let terms = enumerate_terms(&lambda_calculus(), 1, 3, Bounds::default()).unwrap();
    assert_eq!(terms.len(), 26);
    for scope in 0..=1 {
        for t in enumerate_terms(&lambda_calculus(), scope, 3, Bounds::default()).unwrap() {
            assert_eq!(fold(&RebuildAlgebra, &t).unwrap(), t);
        }
    }
}

fn all_lists(max_len: usize, alphabet: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for xs in &frontier {
            for a in 0..alphabet {
                let mut ys: Vec<usize> = xs.clone();
                ys.push(a);
                next.push(ys);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn foldr_rules_exhaustive() {
    let sum = |l: &Term| list::foldr(0usize, |a, acc| a + acc, l).unwrap();
    for xs in all_lists(6, 3) {
        let l = list::from_slice(&xs);
        match xs.split_first() {
            None => assert_eq!(sum(&l), 0),
            Some((&a, rest)) => assert_eq!(sum(&l), a + sum(&list::from_slice(rest))),
        }
        assert_eq!(list::to_vec(&l).unwrap(), xs);
        let mapped = list::map_list(|a| 2 - a, &l).unwrap();
        assert_eq!(list::length(&mapped).unwrap(), list::length(&l).unwrap());
    }
}

#[test]
fn family_case_algebra_sees_parameters() {
    let alg = CaseAlgebra::new().case("nil", |_, _, _| 0usize).case("cons", |_, a, v: Vec<usize>| a.unwrap() + v[0]);
    assert_eq!(fold(&alg, &list::from_slice(&[2, 2, 1])).unwrap(), 5);
}

#[test]
fn sum_is_associative_up_to_renaming() {
    let parts = [lambda_calculus(), pi_signature(), mltt79()];
    let arities = |s: &BindingSignature| {
        let mut a: Vec<String> = s.ctor_table(3).iter().map(|(_, ar)| ar.to_string()).collect();
        a.sort();
        a
    };
    for a in &parts {
        for b in &parts {
            for c in &parts {
                let left = sum_signatures(&sum_signatures(a, b).unwrap(), c).unwrap();
                let right = sum_signatures(a, &sum_signatures(b, c).unwrap()).unwrap();
                assert_eq!(left.enumerate_ctors(3).len(), right.enumerate_ctors(3).len());
                assert_eq!(arities(&left), arities(&right));
            }
        }
    }
}

#[test]
fn enumerate_ctors_is_monotone() {
    let m = mltt79();
    for pb in 0..6 {
        let small = m.enumerate_ctors(pb);
        let big = m.enumerate_ctors(pb + 1);
        assert_eq!(&big[..small.len()], &small[..]);
    }
}
