//! Finite checks that functors on finite sets preserve colimits.
//!
//! Each check computes the colimit of the transformed diagram and compares
//! it with the transformed colimit through the canonical map between them.

use super::{
    colimit, is_colimiting, pointwise_colimit, ColimitError, ColimitResult, CoconeDesc, DiagramDesc, FinSetMor,
    FinSetObj, GraphDesc, PointwiseDiagram,
};

/// Whether `(v, x) -> image(v, x)` is a well-defined bijection from the
/// colimit of `col` onto `0..size`.
fn canonical_is_bijective(col: &ColimitResult, size: usize, image: impl Fn(usize, usize) -> usize) -> bool {
    let mut h: Vec<Option<usize>> = vec![None; col.tip().size];
    for (v, leg) in col.legs().iter().enumerate() {
        for (x, &class) in leg.map().iter().enumerate() {
            let y = image(v, x);
            if y >= size {
                return false;
            }
            match h[class] {
                Some(z) if z != y => return false,
                _ => h[class] = Some(y),
            }
        }
    }
    let map = h.into_iter().map(|y| y.expect("every class has a member")).collect();
    FinSetMor::new(size, map).is_ok_and(|m| m.is_bijective())
}

fn same_graph(a: &DiagramDesc, b: &DiagramDesc) -> Result<(), ColimitError> {
    if a.graph() != b.graph() {
        return Err(ColimitError::MalformedDiagram("diagrams are over different graphs".into()));
    }
    Ok(())
}

/// Objectwise product; the pair `(x, y)` is encoded as `x * |b_v| + y`.
pub fn product_diagram(a: &DiagramDesc, b: &DiagramDesc) -> Result<DiagramDesc, ColimitError> {
    same_graph(a, b)?;
    let ob = a.objects().iter().zip(b.objects()).map(|(x, y)| FinSetObj::new(x.size * y.size)).collect();
    let mut mor = Vec::new();
    for (e, &(s, t)) in a.graph().edges().iter().enumerate() {
        let (f, g) = (a.mor(e), b.mor(e));
        let (bs, bt) = (b.ob(s).size, b.ob(t).size);
        let map = (0..a.ob(s).size * bs).map(|p| f.apply(p / bs) * bt + g.apply(p % bs)).collect();
        mor.push(FinSetMor::new(a.ob(t).size * bt, map)?);
    }
    DiagramDesc::new(a.graph().clone(), ob, mor)
}

/// Objectwise disjoint union; `b`'s elements follow `a`'s.
pub fn coproduct_diagram(a: &DiagramDesc, b: &DiagramDesc) -> Result<DiagramDesc, ColimitError> {
    same_graph(a, b)?;
    let ob = a.objects().iter().zip(b.objects()).map(|(x, y)| FinSetObj::new(x.size + y.size)).collect();
    let mut mor = Vec::new();
    for (e, &(s, t)) in a.graph().edges().iter().enumerate() {
        let (f, g) = (a.mor(e), b.mor(e));
        let (a_s, a_t) = (a.ob(s).size, a.ob(t).size);
        let map = (0..a_s + b.ob(s).size).map(|x| if x < a_s { f.apply(x) } else { a_t + g.apply(x - a_s) }).collect();
        mor.push(FinSetMor::new(a_t + b.ob(t).size, map)?);
    }
    DiagramDesc::new(a.graph().clone(), ob, mor)
}

/// `A x d`: the pair `(i, x)` is encoded as `i * |d_v| + x`.
pub fn scale_diagram(a: FinSetObj, d: &DiagramDesc) -> DiagramDesc {
    let constant = DiagramDesc::new(
        d.graph().clone(),
        vec![a; d.graph().vertices()],
        vec![FinSetMor::identity(a.size); d.graph().edges().len()],
    )
    .expect("constant diagram is well formed");
    product_diagram(&constant, d).expect("same graph")
}

/// The chain with `len` copies of `a` and identity maps.
pub fn constant_chain(a: FinSetObj, len: usize) -> DiagramDesc {
    DiagramDesc::chain(vec![FinSetMor::identity(a.size); len.saturating_sub(1)], a).expect("identity chain")
}

fn require_chain(d: &DiagramDesc) -> Result<(), ColimitError> {
    if !d.graph().is_chain() || d.graph().vertices() == 0 {
        return Err(ColimitError::MalformedDiagram("expected a nonempty chain".into()));
    }
    Ok(())
}

/// Colimit of the objectwise product of two chains against the product of
/// their colimits.
pub fn check_product_cocont(a: &DiagramDesc, b: &DiagramDesc) -> Result<bool, ColimitError> {
    require_chain(a)?;
    let (ca, cb) = (colimit(a), colimit(b));
    let prod = colimit(&product_diagram(a, b)?);
    let tb = cb.tip().size;
    Ok(canonical_is_bijective(&prod, ca.tip().size * tb, |v, p| {
        let bs = b.ob(v).size;
        ca.class_of(v, p / bs) * tb + cb.class_of(v, p % bs)
    }))
}

/// `colim(A x d)` against `A x colim(d)`.
pub fn check_left_adjoint_preservation(a: FinSetObj, d: &DiagramDesc) -> Result<bool, ColimitError> {
    let cd = colimit(d);
    let scaled = colimit(&scale_diagram(a, d));
    let tip = cd.tip().size;
    Ok(canonical_is_bijective(&scaled, a.size * tip, |v, p| {
        let n = d.ob(v).size;
        (p / n) * tip + cd.class_of(v, p % n)
    }))
}

/// `colim(a + b)` against `colim(a) + colim(b)`.
pub fn check_coproduct_preservation(a: &DiagramDesc, b: &DiagramDesc) -> Result<bool, ColimitError> {
    let (ca, cb) = (colimit(a), colimit(b));
    let sum = colimit(&coproduct_diagram(a, b)?);
    let ta = ca.tip().size;
    Ok(canonical_is_bijective(&sum, ta + cb.tip().size, |v, x| {
        let n = a.ob(v).size;
        if x < n {
            ca.class_of(v, x)
        } else {
            ta + cb.class_of(v, x - n)
        }
    }))
}

/// The constant functor at `a` sends a chain to the identity chain on `a`,
/// whose colimit is `a` with identity legs.
pub fn check_constant_preservation(a: FinSetObj, chain: &DiagramDesc) -> Result<bool, ColimitError> {
    require_chain(chain)?;
    let image = constant_chain(a, chain.graph().vertices());
    let cocone = CoconeDesc { tip: a, legs: vec![FinSetMor::identity(a.size); chain.graph().vertices()] };
    is_colimiting(&image, &cocone)
}

/// The identity functor leaves the computed colimit cocone colimiting.
pub fn check_identity_preservation(d: &DiagramDesc) -> Result<bool, ColimitError> {
    let col = colimit(d);
    is_colimiting(d, col.cocone())
}

/// A graph morphism into a position graph: vertices to vertices and edges
/// to edges with matching endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reindex {
    pub source: GraphDesc,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Reindex {
    pub fn identity(g: &GraphDesc) -> Reindex {
        Reindex {
            source: g.clone(),
            vertex_map: (0..g.vertices()).collect(),
            edge_map: (0..g.edges().len()).collect(),
        }
    }

    pub fn validate(&self, target: &GraphDesc) -> Result<(), ColimitError> {
        let bad = |m: String| Err(ColimitError::MalformedReindex(m));
        if self.vertex_map.len() != self.source.vertices() {
            return bad(format!("{} vertex images for {} vertices", self.vertex_map.len(), self.source.vertices()));
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= target.vertices()) {
            return bad(format!("vertex image {v} out of range"));
        }
        if self.edge_map.len() != self.source.edges().len() {
            return bad("edge image count differs from source edges".into());
        }
        for (e, (&(s, t), &img)) in self.source.edges().iter().zip(&self.edge_map).enumerate() {
            match target.edges().get(img) {
                Some(&(ts, tt)) if ts == self.vertex_map[s] && tt == self.vertex_map[t] => {}
                _ => return bad(format!("edge {e} is not sent to a matching edge")),
            }
        }
        Ok(())
    }

    /// Precomposition: the pointwise diagram seen from the source graph.
    pub fn restrict(&self, pd: &PointwiseDiagram) -> Result<PointwiseDiagram, ColimitError> {
        self.validate(&pd.positions)?;
        Ok(PointwiseDiagram {
            positions: self.source.clone(),
            diagrams: self.vertex_map.iter().map(|&p| pd.diagrams[p].clone()).collect(),
            transitions: self.edge_map.iter().map(|&e| pd.transitions[e].clone()).collect(),
        })
    }
}

/// Restricts the pointwise colimit of `pd` along `reindex` and checks that
/// at every source position the restricted cocone is colimiting for the
/// restricted diagram, and that the induced transition maps agree with
/// those of the restricted diagram's own pointwise colimit.
pub fn check_precomposition_preservation(reindex: &Reindex, pd: &PointwiseDiagram) -> Result<bool, ColimitError> {
    let full = pointwise_colimit(pd)?;
    let restricted = reindex.restrict(pd)?;
    let own = pointwise_colimit(&restricted)?;
    for (a, &p) in reindex.vertex_map.iter().enumerate() {
        if !is_colimiting(&restricted.diagrams[a], full.colimits[p].cocone())? {
            return Ok(false);
        }
    }
    // Both colimits are computed from the same diagram, so the canonical
    // comparison is the identity and induced maps must coincide.
    for (e, &img) in reindex.edge_map.iter().enumerate() {
        if own.induced[e] != full.induced[img] {
            return Ok(false);
        }
    }
    Ok(true)
}
