/// Union-find over `0..len` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
    faulty: bool,
}

impl DisjointSet {
    pub fn new(len: usize) -> DisjointSet {
        DisjointSet { parent: (0..len).collect(), size: vec![1; len], faulty: false }
    }

    /// A deliberately broken variant that drops every union whose first
    /// root is larger than the second. Used to show the oracle comparison
    /// detects a wrong quotient.
    pub fn new_faulty(len: usize) -> DisjointSet {
        DisjointSet { faulty: true, ..DisjointSet::new(len) }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb || (self.faulty && ra > rb) {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_merge_classes() {
        let mut ds = DisjointSet::new(6);
        ds.union(0, 1);
        ds.union(2, 3);
        ds.union(1, 3);
        assert_eq!(ds.find(0), ds.find(2));
        assert_ne!(ds.find(0), ds.find(4));
        assert_ne!(ds.find(4), ds.find(5));
    }

    #[test]
    fn faulty_drops_unions() {
        let mut ds = DisjointSet::new_faulty(2);
        ds.union(1, 0);
        assert_ne!(ds.find(0), ds.find(1));
    }
}
