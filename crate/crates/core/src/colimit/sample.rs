//! Seeded random diagrams, cocones and pointwise families.

use rand::Rng;

use super::preserve::{scale_diagram, Reindex};
use super::{ColimitResult, CoconeDesc, DiagramDesc, FinSetMor, FinSetObj, GraphDesc, PointwiseDiagram};
use crate::random::Rng64;

fn random_map(rng: &mut Rng64, dom: usize, cod: usize) -> FinSetMor {
    FinSetMor::new(cod, (0..dom).map(|_| rng.gen_range(0..cod)).collect()).expect("images below codomain")
}

/// A diagram with `1..=max_vertices` vertices, `0..=max_edges` edges and
/// objects of size `0..=max_size`. An edge is only drawn where a map can
/// exist, that is where the target is nonempty or the source is empty.
pub fn random_diagram(rng: &mut Rng64, max_vertices: usize, max_edges: usize, max_size: usize) -> DiagramDesc {
    let vertices = rng.gen_range(1..=max_vertices.max(1));
    let ob: Vec<FinSetObj> = (0..vertices).map(|_| FinSetObj::new(rng.gen_range(0..=max_size))).collect();
    let allowed: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|s| (0..vertices).map(move |t| (s, t)))
        .filter(|&(s, t)| ob[t].size > 0 || ob[s].size == 0)
        .collect();
    let n_edges = if allowed.is_empty() { 0 } else { rng.gen_range(0..=max_edges) };
    let edges: Vec<(usize, usize)> = (0..n_edges).map(|_| allowed[rng.gen_range(0..allowed.len())]).collect();
    let mor = edges.iter().map(|&(s, t)| random_map(rng, ob[s].size, ob[t].size)).collect();
    DiagramDesc::new(GraphDesc::new(vertices, edges).expect("endpoints in range"), ob, mor)
        .expect("maps match endpoints")
}

/// A chain with `len` objects of size `0..=max_size` and random maps.
pub fn random_chain(rng: &mut Rng64, len: usize, max_size: usize) -> DiagramDesc {
    let mut sizes = vec![rng.gen_range(0..=max_size)];
    for i in 1..len.max(1) {
        let low = usize::from(sizes[i - 1] > 0);
        sizes.push(rng.gen_range(low..=max_size.max(low)));
    }
    let maps = sizes.windows(2).map(|w| random_map(rng, w[0], w[1])).collect();
    DiagramDesc::chain(maps, FinSetObj::new(*sizes.last().unwrap())).expect("chain is well formed")
}

/// The colimit cocone followed by a random map out of its tip, so a cocone
/// that is colimiting exactly when that map is a bijection.
pub fn random_cocone(rng: &mut Rng64, col: &ColimitResult, max_extra: usize) -> CoconeDesc {
    let n = col.tip().size;
    let size = if n == 0 { rng.gen_range(0..=max_extra) } else { rng.gen_range(1..=n + max_extra) };
    let h = random_map(rng, n, size);
    CoconeDesc { tip: FinSetObj::new(size), legs: col.legs().iter().map(|l| l.then(&h)).collect() }
}

/// A pointwise family over a chain of `1..=3` positions: position `p`
/// carries `A_p x d` for one random diagram `d`, and the transitions are
/// `f_p x id` for random maps `f_p : A_p -> A_{p+1}`, so they are natural
/// by construction.
pub fn random_pointwise(rng: &mut Rng64, max_vertices: usize, max_edges: usize, max_size: usize) -> PointwiseDiagram {
    let d = random_diagram(rng, max_vertices, max_edges, max_size);
    let positions = rng.gen_range(1..=3);
    let factors: Vec<usize> = (0..positions).map(|_| rng.gen_range(1..=3)).collect();
    let diagrams = factors.iter().map(|&a| scale_diagram(FinSetObj::new(a), &d)).collect();
    let transitions = factors
        .windows(2)
        .map(|w| {
            let f = random_map(rng, w[0], w[1]);
            d.objects()
                .iter()
                .map(|o| {
                    let n = o.size;
                    let map = (0..w[0] * n).map(|p| f.apply(p / n) * n + p % n).collect();
                    FinSetMor::new(w[1] * n, map).expect("product map in range")
                })
                .collect()
        })
        .collect();
    PointwiseDiagram { positions: GraphDesc::chain(positions), diagrams, transitions }
}

/// A random graph morphism into `target`: `1..=4` source vertices with
/// random images, and between each ordered pair of source vertices a random
/// selection of the target edges joining their images.
pub fn random_reindex(rng: &mut Rng64, target: &GraphDesc) -> Reindex {
    let n = rng.gen_range(1..=4);
    let vertex_map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..target.vertices())).collect();
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for (e, &(ts, tt)) in target.edges().iter().enumerate() {
                if ts == vertex_map[s] && tt == vertex_map[t] && rng.gen_bool(0.5) {
                    edges.push((s, t));
                    edge_map.push(e);
                }
            }
        }
    }
    Reindex { source: GraphDesc::new(n, edges).expect("endpoints in range"), vertex_map, edge_map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::{colimit, is_colimiting, pointwise_colimit};
    use crate::random::rng;

    #[test]
    fn samples_are_well_formed() {
        let mut r = rng(3);
        for _ in 0..200 {
            let d = random_diagram(&mut r, 5, 8, 6);
            assert!(d.graph().vertices() <= 5 && d.graph().edges().len() <= 8);
            let c = random_chain(&mut r, 4, 6);
            assert!(c.graph().is_chain());
            let col = colimit(&d);
            let cocone = random_cocone(&mut r, &col, 2);
            assert!(is_colimiting(&d, &cocone).is_ok());
            let pd = random_pointwise(&mut r, 3, 4, 3);
            assert!(pointwise_colimit(&pd).is_ok());
            assert!(random_reindex(&mut r, &pd.positions).validate(&pd.positions).is_ok());
        }
    }
}
