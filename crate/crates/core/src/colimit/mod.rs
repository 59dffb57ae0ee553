//! Colimits of finite diagrams of finite sets.
//!
//! The colimit of a diagram is the disjoint union of its objects quotiented
//! by the smallest equivalence relation that identifies `(src e, x)` with
//! `(tgt e, mor(e)(x))` for every edge `e`. [`colimit`] computes it with a
//! union-find structure; [`eq_closure_oracle`] computes the same relation
//! by naive closure and serves as the cross-check.

mod disjoint_set;
mod preserve;
pub mod sample;
pub mod selftest;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use disjoint_set::DisjointSet;
pub use preserve::{
    check_constant_preservation, check_coproduct_preservation, check_identity_preservation,
    check_left_adjoint_preservation, check_precomposition_preservation, check_product_cocont,
    constant_chain, coproduct_diagram, product_diagram, scale_diagram, Reindex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColimitError {
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("not a cocone: {0}")]
    NotACocone(String),
    #[error("incompatible transitions: {0}")]
    IncompatibleTransitions(String),
    #[error("malformed reindexing: {0}")]
    MalformedReindex(String),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// The finite set `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinSetObj {
    pub size: usize,
}

impl FinSetObj {
    pub fn new(size: usize) -> FinSetObj {
        FinSetObj { size }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSetMor {
    dom: FinSetObj,
    cod: FinSetObj,
    map: Vec<usize>,
}

impl FinSetMor {
    pub fn new(cod: usize, map: Vec<usize>) -> Result<FinSetMor, ColimitError> {
        if let Some(&bad) = map.iter().find(|&&y| y >= cod) {
            return Err(ColimitError::MalformedMap(format!("image {bad} not below {cod}")));
        }
        Ok(FinSetMor { dom: FinSetObj::new(map.len()), cod: FinSetObj::new(cod), map })
    }

    pub fn identity(size: usize) -> FinSetMor {
        FinSetMor { dom: FinSetObj::new(size), cod: FinSetObj::new(size), map: (0..size).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<FinSetMor, ColimitError> {
        FinSetMor::new(cod, vec![value; dom])
    }

    pub fn dom(&self) -> FinSetObj {
        self.dom
    }

    pub fn cod(&self) -> FinSetObj {
        self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FinSetMor) -> FinSetMor {
        assert_eq!(self.cod, next.dom, "maps do not compose");
        FinSetMor { dom: self.dom, cod: next.cod, map: self.map.iter().map(|&x| next.map[x]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }
}

/// A finite directed multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphDesc {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphDesc {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<GraphDesc, ColimitError> {
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(ColimitError::MalformedGraph(format!("edge ({s},{t}) with {vertices} vertices")));
        }
        Ok(GraphDesc { vertices, edges })
    }

    /// `0 -> 1 -> .. -> len-1`.
    pub fn chain(len: usize) -> GraphDesc {
        GraphDesc { vertices: len, edges: (1..len).map(|i| (i - 1, i)).collect() }
    }

    pub fn is_chain(&self) -> bool {
        *self == GraphDesc::chain(self.vertices)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramDesc {
    graph: GraphDesc,
    ob: Vec<FinSetObj>,
    mor: Vec<FinSetMor>,
}

impl DiagramDesc {
    pub fn new(graph: GraphDesc, ob: Vec<FinSetObj>, mor: Vec<FinSetMor>) -> Result<DiagramDesc, ColimitError> {
        if ob.len() != graph.vertices {
            return Err(ColimitError::MalformedDiagram(format!(
                "{} objects for {} vertices",
                ob.len(),
                graph.vertices
            )));
        }
        if mor.len() != graph.edges.len() {
            return Err(ColimitError::MalformedDiagram(format!(
                "{} maps for {} edges",
                mor.len(),
                graph.edges.len()
            )));
        }
        for (e, (&(s, t), f)) in graph.edges.iter().zip(&mor).enumerate() {
            if f.dom != ob[s] || f.cod != ob[t] {
                return Err(ColimitError::MalformedDiagram(format!(
                    "map on edge {e} is {} -> {}, expected {} -> {}",
                    f.dom.size, f.cod.size, ob[s].size, ob[t].size
                )));
            }
        }
        Ok(DiagramDesc { graph, ob, mor })
    }

    /// The chain `ob[0] -> ob[1] -> ..` with the given maps.
    pub fn chain(maps: Vec<FinSetMor>, last: FinSetObj) -> Result<DiagramDesc, ColimitError> {
        let mut ob: Vec<FinSetObj> = maps.iter().map(|m| m.dom).collect();
        ob.push(last);
        DiagramDesc::new(GraphDesc::chain(ob.len()), ob, maps)
    }

    pub fn graph(&self) -> &GraphDesc {
        &self.graph
    }

    pub fn ob(&self, v: usize) -> FinSetObj {
        self.ob[v]
    }

    pub fn objects(&self) -> &[FinSetObj] {
        &self.ob
    }

    pub fn mor(&self, e: usize) -> &FinSetMor {
        &self.mor[e]
    }

    pub fn maps(&self) -> &[FinSetMor] {
        &self.mor
    }

    /// Start of each vertex's block in the disjoint union, plus the total.
    pub fn offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.ob.len());
        let mut total = 0;
        for o in &self.ob {
            offsets.push(total);
            total += o.size;
        }
        (offsets, total)
    }

    /// The generating pairs of the colimit relation, on global indices.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        let (off, _) = self.offsets();
        let mut pairs = Vec::new();
        for (&(s, t), f) in self.graph.edges.iter().zip(&self.mor) {
            for (x, &y) in f.map.iter().enumerate() {
                pairs.push((off[s] + x, off[t] + y));
            }
        }
        pairs
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            vertices: self.graph.vertices,
            edges: self.graph.edges.iter().map(|&(s, t)| [s, t]).collect(),
            ob: self.ob.iter().map(|o| o.size).collect(),
            mor: self.mor.iter().map(|m| m.map.clone()).collect(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<DiagramDesc, ColimitError> {
        let graph = GraphDesc::new(j.vertices, j.edges.iter().map(|&[s, t]| (s, t)).collect())?;
        if j.ob.len() != j.vertices || j.mor.len() != j.edges.len() {
            return Err(ColimitError::MalformedDiagram("object or map count mismatch".into()));
        }
        let mor = j
            .edges
            .iter()
            .zip(&j.mor)
            .map(|(&[_, t], m)| FinSetMor::new(j.ob[t], m.clone()))
            .collect::<Result<_, _>>()?;
        DiagramDesc::new(graph, j.ob.iter().map(|&n| FinSetObj::new(n)).collect(), mor)
    }

    pub fn from_json_str(text: &str) -> Result<DiagramDesc, ColimitError> {
        let j: DiagramJson = serde_json::from_str(text).map_err(|e| ColimitError::Json(e.to_string()))?;
        DiagramDesc::from_json(&j)
    }
}

/// Diagram interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub ob: Vec<usize>,
    pub mor: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeDesc {
    pub tip: FinSetObj,
    pub legs: Vec<FinSetMor>,
}

impl CoconeDesc {
    /// Checks the leg shapes and the equations `legs[tgt e] . mor(e) = legs[src e]`.
    pub fn check(&self, d: &DiagramDesc) -> Result<(), ColimitError> {
        if self.legs.len() != d.graph.vertices {
            return Err(ColimitError::NotACocone(format!(
                "{} legs for {} vertices",
                self.legs.len(),
                d.graph.vertices
            )));
        }
        for (v, leg) in self.legs.iter().enumerate() {
            if leg.dom != d.ob[v] || leg.cod != self.tip {
                return Err(ColimitError::NotACocone(format!("leg {v} has the wrong shape")));
            }
        }
        for (e, (&(s, t), f)) in d.graph.edges.iter().zip(&d.mor).enumerate() {
            for (x, &y) in f.map.iter().enumerate() {
                if self.legs[t].map[y] != self.legs[s].map[x] {
                    return Err(ColimitError::NotACocone(format!("edge {e} fails at element {x}")));
                }
            }
        }
        Ok(())
    }
}

/// A colimiting cocone together with the diagram it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitResult {
    diagram: DiagramDesc,
    cocone: CoconeDesc,
}

impl ColimitResult {
    pub fn diagram(&self) -> &DiagramDesc {
        &self.diagram
    }

    pub fn tip(&self) -> FinSetObj {
        self.cocone.tip
    }

    pub fn legs(&self) -> &[FinSetMor] {
        &self.cocone.legs
    }

    pub fn cocone(&self) -> &CoconeDesc {
        &self.cocone
    }

    pub fn class_of(&self, v: usize, x: usize) -> usize {
        self.cocone.legs[v].map[x]
    }

    /// Classes of the disjoint union as sorted lists of global indices,
    /// ordered by smallest member.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.cocone.tip.size];
        let mut global = 0;
        for leg in &self.cocone.legs {
            for &c in &leg.map {
                classes[c].push(global);
                global += 1;
            }
        }
        classes
    }
}

pub fn colimit(d: &DiagramDesc) -> ColimitResult {
    quotient(d, DisjointSet::new(d.offsets().1))
}

/// [`colimit`] computed with [`DisjointSet::new_faulty`].
pub fn colimit_faulty(d: &DiagramDesc) -> ColimitResult {
    quotient(d, DisjointSet::new_faulty(d.offsets().1))
}

fn quotient(d: &DiagramDesc, mut ds: DisjointSet) -> ColimitResult {
    let (off, total) = d.offsets();
    for (a, b) in d.generating_pairs() {
        ds.union(a, b);
    }
    // Classes are numbered by first occurrence in the disjoint union.
    let mut class_of_root = vec![usize::MAX; total];
    let mut next = 0;
    let mut legs = Vec::with_capacity(d.ob.len());
    for (v, o) in d.ob.iter().enumerate() {
        let mut map = Vec::with_capacity(o.size);
        for x in 0..o.size {
            let root = ds.find(off[v] + x);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = next;
                next += 1;
            }
            map.push(class_of_root[root]);
        }
        legs.push(map);
    }
    let tip = FinSetObj::new(next);
    let legs = legs.into_iter().zip(&d.ob).map(|(map, &dom)| FinSetMor { dom, cod: tip, map }).collect();
    ColimitResult { diagram: d.clone(), cocone: CoconeDesc { tip, legs } }
}

/// The smallest equivalence relation on `0..n` containing `pairs`,
/// computed by iterating reflexivity, symmetry and transitivity on a
/// relation matrix until nothing changes. Classes are sorted lists ordered
/// by smallest member.
pub fn eq_closure_oracle(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in pairs {
        rel[i][j] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] && !rel[j][i] {
                    rel[j][i] = true;
                    changed = true;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !rel[i][j] {
                    continue;
                }
                for k in 0..n {
                    if rel[j][k] && !rel[i][k] {
                        rel[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&j| rel[i][j]).collect();
        for &j in &class {
            assigned[j] = true;
        }
        classes.push(class);
    }
    classes
}

/// The unique map `h` out of the colimit with `h . legs[v] = c.legs[v]`.
pub fn universal_map(col: &ColimitResult, c: &CoconeDesc) -> Result<FinSetMor, ColimitError> {
    c.check(&col.diagram)?;
    let mut h = vec![usize::MAX; col.cocone.tip.size];
    for (leg, other) in col.cocone.legs.iter().zip(&c.legs) {
        for (&class, &y) in leg.map.iter().zip(&other.map) {
            h[class] = y;
        }
    }
    FinSetMor::new(c.tip.size, h)
}

/// Whether `c` is a colimiting cocone, decided by comparing it with the
/// computed colimit: it is colimiting iff the mediating map is a bijection.
pub fn is_colimiting(d: &DiagramDesc, c: &CoconeDesc) -> Result<bool, ColimitError> {
    Ok(universal_map(&colimit(d), c)?.is_bijective())
}

/// Counts the maps `h : col.tip -> c.tip` with `h . legs[v] = c.legs[v]`
/// for all `v` by trying every map. Returns `None` when there are more than
/// `limit` candidate maps.
pub fn count_factorizations(col: &ColimitResult, c: &CoconeDesc, limit: u64) -> Option<u64> {
    let n = col.cocone.tip.size;
    let m = c.tip.size as u64;
    let mut space: u64 = 1;
    for _ in 0..n {
        space = space.checked_mul(m).filter(|&s| s <= limit)?;
    }
    let mut h = vec![0usize; n];
    let mut count = 0;
    loop {
        let factors = col
            .cocone
            .legs
            .iter()
            .zip(&c.legs)
            .all(|(leg, other)| leg.map.iter().zip(&other.map).all(|(&x, &y)| h[x] == y));
        if factors {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Some(count);
            }
            h[pos] += 1;
            if (h[pos] as u64) < m {
                break;
            }
            h[pos] = 0;
            pos += 1;
        }
    }
}

/// A diagram in a functor category, presented pointwise: one diagram of
/// finite sets per position, all over the same graph, and for every edge
/// `p -> q` of the position graph a natural family of maps
/// `diagrams[p].ob(v) -> diagrams[q].ob(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseDiagram {
    pub positions: GraphDesc,
    pub diagrams: Vec<DiagramDesc>,
    /// `transitions[position edge][diagram vertex]`.
    pub transitions: Vec<Vec<FinSetMor>>,
}

impl PointwiseDiagram {
    pub fn validate(&self) -> Result<(), ColimitError> {
        let bad = |m: String| Err(ColimitError::IncompatibleTransitions(m));
        if self.diagrams.len() != self.positions.vertices {
            return bad(format!("{} diagrams for {} positions", self.diagrams.len(), self.positions.vertices));
        }
        if self.transitions.len() != self.positions.edges.len() {
            return bad("transition count differs from position edges".into());
        }
        if let Some(first) = self.diagrams.first() {
            if self.diagrams.iter().any(|d| d.graph != first.graph) {
                return bad("diagrams do not share one graph".into());
            }
        }
        for (pe, (&(p, q), trans)) in self.positions.edges.iter().zip(&self.transitions).enumerate() {
            let (dp, dq) = (&self.diagrams[p], &self.diagrams[q]);
            if trans.len() != dp.graph.vertices {
                return bad(format!("transition {pe} has {} components", trans.len()));
            }
            for (v, t) in trans.iter().enumerate() {
                if t.dom != dp.ob[v] || t.cod != dq.ob[v] {
                    return bad(format!("transition {pe} component {v} has the wrong shape"));
                }
            }
            for (e, &(s, t)) in dp.graph.edges.iter().enumerate() {
                if dp.mor[e].then(&trans[t]) != trans[s].then(&dq.mor[e]) {
                    return bad(format!("transition {pe} is not natural at edge {e}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseColimit {
    pub colimits: Vec<ColimitResult>,
    /// Map between colimits induced by each position edge.
    pub induced: Vec<FinSetMor>,
}

/// Colimit at each position, with the transitions carried to the colimits
/// by the universal property.
pub fn pointwise_colimit(pd: &PointwiseDiagram) -> Result<PointwiseColimit, ColimitError> {
    pd.validate()?;
    let colimits: Vec<ColimitResult> = pd.diagrams.iter().map(colimit).collect();
    let mut induced = Vec::with_capacity(pd.positions.edges.len());
    for (&(p, q), trans) in pd.positions.edges.iter().zip(&pd.transitions) {
        let target = &colimits[q];
        let legs = trans.iter().zip(target.legs()).map(|(t, leg)| t.then(leg)).collect();
        let cocone = CoconeDesc { tip: target.tip(), legs };
        induced.push(universal_map(&colimits[p], &cocone)?);
    }
    Ok(PointwiseColimit { colimits, induced })
}

/// Checks `induced . legs_p[v] = legs_q[v] . transition[v]` for every
/// position edge and vertex.
pub fn check_pointwise(pd: &PointwiseDiagram, pc: &PointwiseColimit) -> bool {
    pd.positions.edges.iter().zip(&pd.transitions).zip(&pc.induced).all(|((&(p, q), trans), h)| {
        trans.iter().enumerate().all(|(v, t)| {
            pc.colimits[p].legs()[v].then(h) == t.then(&pc.colimits[q].legs()[v])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mor(cod: usize, map: &[usize]) -> FinSetMor {
        FinSetMor::new(cod, map.to_vec()).unwrap()
    }

    fn coequalizer() -> DiagramDesc {
        let g = GraphDesc::new(2, vec![(0, 1), (0, 1)]).unwrap();
        DiagramDesc::new(g, vec![FinSetObj::new(2), FinSetObj::new(3)], vec![mor(3, &[0, 1]), mor(3, &[1, 2])])
            .unwrap()
    }

    #[test]
    fn single_vertex() {
        let d = DiagramDesc::new(GraphDesc::new(1, vec![]).unwrap(), vec![FinSetObj::new(4)], vec![]).unwrap();
        let c = colimit(&d);
        assert_eq!(c.tip().size, 4);
        assert_eq!(c.legs()[0], FinSetMor::identity(4));
    }

    #[test]
    fn coequalizer_merges_everything() {
        let d = coequalizer();
        let c = colimit(&d);
        assert_eq!(c.tip().size, 1);
        assert_eq!(c.partition(), eq_closure_oracle(5, &d.generating_pairs()));
    }

    #[test]
    fn identity_chain() {
        let id = FinSetMor::identity(3);
        let d = DiagramDesc::chain(vec![id.clone(), id], FinSetObj::new(3)).unwrap();
        assert_eq!(colimit(&d).tip().size, 3);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(eq_closure_oracle(3, &[]), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(eq_closure_oracle(4, &[(0, 1), (2, 3)]), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(eq_closure_oracle(5, &[(0, 1), (1, 2), (3, 4)]), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(eq_closure_oracle(4, &[(3, 0), (2, 3)]), vec![vec![0, 2, 3], vec![1]]);
    }

    #[test]
    fn universal_map_examples() {
        let d = coequalizer();
        let col = colimit(&d);
        assert_eq!(universal_map(&col, col.cocone()).unwrap(), FinSetMor::identity(1));

        let c = CoconeDesc {
            tip: FinSetObj::new(2),
            legs: vec![FinSetMor::constant(2, 2, 0).unwrap(), FinSetMor::constant(3, 2, 0).unwrap()],
        };
        assert_eq!(universal_map(&col, &c).unwrap(), mor(2, &[0]));
        assert_eq!(count_factorizations(&col, &c, 10_000), Some(1));

        let bad = CoconeDesc { tip: FinSetObj::new(2), legs: vec![mor(2, &[0, 1]), mor(2, &[0, 1, 1])] };
        assert!(matches!(universal_map(&col, &bad), Err(ColimitError::NotACocone(_))));
    }

    #[test]
    fn colimiting_examples() {
        let d = DiagramDesc::new(
            GraphDesc::new(2, vec![(0, 1)]).unwrap(),
            vec![FinSetObj::new(2), FinSetObj::new(3)],
            vec![mor(3, &[0, 0])],
        )
        .unwrap();
        let col = colimit(&d);
        assert_eq!(col.tip().size, 3);
        assert!(is_colimiting(&d, col.cocone()).unwrap());

        let padded = CoconeDesc {
            tip: FinSetObj::new(4),
            legs: col.legs().iter().map(|l| FinSetMor::new(4, l.map().to_vec()).unwrap()).collect(),
        };
        assert!(!is_colimiting(&d, &padded).unwrap());

        // Merge classes 1 and 2.
        let merge = mor(2, &[0, 1, 1]);
        let merged = CoconeDesc { tip: FinSetObj::new(2), legs: col.legs().iter().map(|l| l.then(&merge)).collect() };
        assert!(!is_colimiting(&d, &merged).unwrap());
    }

    #[test]
    fn validation_errors() {
        assert!(GraphDesc::new(1, vec![(0, 1)]).is_err());
        assert!(FinSetMor::new(2, vec![2]).is_err());
        let g = GraphDesc::new(2, vec![(0, 1)]).unwrap();
        assert!(DiagramDesc::new(g.clone(), vec![FinSetObj::new(2), FinSetObj::new(3)], vec![mor(2, &[0, 0])]).is_err());
        assert!(DiagramDesc::new(g, vec![FinSetObj::new(2)], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = coequalizer();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(text, r#"{"vertices":2,"edges":[[0,1],[0,1]],"ob":[2,3],"mor":[[0,1],[1,2]]}"#);
        assert_eq!(DiagramDesc::from_json_str(&text).unwrap(), d);
        assert!(DiagramDesc::from_json_str(r#"{"vertices":1,"edges":[[0,0]],"ob":[2],"mor":[[0,2]]}"#).is_err());
    }

    #[test]
    fn faulty_union_find_disagrees() {
        // An edge pointing back to an earlier vertex produces a dropped union.
        let g = GraphDesc::new(2, vec![(1, 0)]).unwrap();
        let d = DiagramDesc::new(g, vec![FinSetObj::new(1), FinSetObj::new(1)], vec![mor(1, &[0])]).unwrap();
        assert_eq!(colimit(&d).partition(), eq_closure_oracle(2, &d.generating_pairs()));
        assert_ne!(colimit_faulty(&d).partition(), eq_closure_oracle(2, &d.generating_pairs()));
    }

    fn two_position(d: DiagramDesc, transitions: Vec<FinSetMor>) -> PointwiseDiagram {
        PointwiseDiagram {
            positions: GraphDesc::chain(2),
            diagrams: vec![d.clone(), d],
            transitions: vec![transitions],
        }
    }

    #[test]
    fn pointwise_single_and_identity() {
        let d = coequalizer();
        let single = PointwiseDiagram { positions: GraphDesc::chain(1), diagrams: vec![d.clone()], transitions: vec![] };
        let pc = pointwise_colimit(&single).unwrap();
        assert_eq!(pc.colimits[0], colimit(&d));

        let pd = two_position(d, vec![FinSetMor::identity(2), FinSetMor::identity(3)]);
        let pc = pointwise_colimit(&pd).unwrap();
        assert_eq!(pc.induced[0], FinSetMor::identity(1));
        assert!(check_pointwise(&pd, &pc));
    }

    #[test]
    fn pointwise_rejects_unnatural() {
        let d = DiagramDesc::new(
            GraphDesc::new(2, vec![(0, 1)]).unwrap(),
            vec![FinSetObj::new(2), FinSetObj::new(2)],
            vec![FinSetMor::identity(2)],
        )
        .unwrap();
        let pd = two_position(d, vec![mor(2, &[1, 0]), FinSetMor::identity(2)]);
        assert!(matches!(pointwise_colimit(&pd), Err(ColimitError::IncompatibleTransitions(_))));
    }
}
