//! Seeded self-test of the colimit kernel: union-find against the closure
//! oracle on random diagrams, then every preservation harness on random
//! instances.

use rand::Rng;
use serde::Serialize;

use super::sample::{random_chain, random_cocone, random_diagram, random_pointwise, random_reindex};
use super::{
    check_constant_preservation, check_coproduct_preservation, check_left_adjoint_preservation, check_pointwise,
    check_precomposition_preservation, check_product_cocont, colimit, colimit_faulty, count_factorizations,
    eq_closure_oracle, pointwise_colimit, universal_map, ColimitError, DiagramJson, FinSetObj,
};
use crate::random::rng;

/// Largest number of candidate maps searched when confirming uniqueness of
/// a factorization.
pub const UNIQUENESS_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelftestConfig {
    pub seed: u64,
    pub diagrams: usize,
    pub harness_cases: usize,
    pub inject_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 42, diagrams: 1000, harness_cases: 200, inject_fault: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Harnesses {
    pub product: Tally,
    pub left_adjoint: Tally,
    pub constant: Tally,
    pub coproduct: Tally,
    pub precomposition: Tally,
    pub pointwise: Tally,
}

impl Harnesses {
    pub fn all(&self) -> [(&'static str, &Tally); 6] {
        [
            ("product", &self.product),
            ("left_adjoint", &self.left_adjoint),
            ("constant", &self.constant),
            ("coproduct", &self.coproduct),
            ("precomposition", &self.precomposition),
            ("pointwise", &self.pointwise),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    /// Union-find partition equal to the closure partition.
    pub oracle: Tally,
    /// Mediating maps that factor the cocone.
    pub factorization: Tally,
    /// Factorizations confirmed unique by exhaustive search.
    pub uniqueness_checked: usize,
    pub first_disagreement: Option<DiagramJson>,
    pub harnesses: Harnesses,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.oracle.failed == 0
            && self.factorization.failed == 0
            && self.harnesses.all().iter().all(|(_, t)| t.failed == 0)
    }
}

pub fn run_selftest(cfg: &SelftestConfig) -> Result<SelftestReport, ColimitError> {
    let mut r = rng(cfg.seed);
    let mut oracle = Tally::default();
    let mut factorization = Tally::default();
    let mut uniqueness_checked = 0;
    let mut first_disagreement = None;
    for _ in 0..cfg.diagrams {
        let d = random_diagram(&mut r, 5, 8, 6);
        let col = if cfg.inject_fault { colimit_faulty(&d) } else { colimit(&d) };
        let agrees = col.partition() == eq_closure_oracle(d.offsets().1, &d.generating_pairs());
        oracle.record(agrees);
        if !agrees && first_disagreement.is_none() {
            first_disagreement = Some(d.to_json());
        }
        if !agrees {
            continue;
        }
        let c = random_cocone(&mut r, &col, 2);
        let h = universal_map(&col, &c)?;
        let factors = col.legs().iter().zip(&c.legs).all(|(leg, other)| leg.then(&h) == *other);
        match count_factorizations(&col, &c, UNIQUENESS_LIMIT) {
            Some(n) => {
                uniqueness_checked += 1;
                factorization.record(factors && n == 1);
            }
            None => factorization.record(factors),
        }
    }

    let mut h = Harnesses::default();
    for _ in 0..cfg.harness_cases {
        let len = r.gen_range(1..=5);
        let a = random_chain(&mut r, len, 4);
        let b = random_chain(&mut r, len, 4);
        h.product.record(check_product_cocont(&a, &b)?);
        h.constant.record(check_constant_preservation(FinSetObj::new(r.gen_range(0..4)), &a)?);

        let d = random_diagram(&mut r, 5, 8, 6);
        h.left_adjoint.record(check_left_adjoint_preservation(FinSetObj::new(r.gen_range(0..4)), &d)?);

        let pd = random_pointwise(&mut r, 4, 6, 4);
        h.coproduct.record(check_coproduct_preservation(&pd.diagrams[0], pd.diagrams.last().unwrap())?);
        let pc = pointwise_colimit(&pd)?;
        h.pointwise.record(check_pointwise(&pd, &pc));
        let reindex = random_reindex(&mut r, &pd.positions);
        h.precomposition.record(check_precomposition_preservation(&reindex, &pd)?);
    }
    Ok(SelftestReport { seed: cfg.seed, oracle, factorization, uniqueness_checked, first_disagreement, harnesses: h })
}
