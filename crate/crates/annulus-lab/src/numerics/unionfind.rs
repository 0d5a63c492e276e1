//! Disjoint-set forest with union by rank and path halving.

pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Merge the sets containing `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb as u32,
            std::cmp::Ordering::Greater => self.parent[rb] = ra as u32,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra as u32;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Number of distinct sets among the given members.
    pub fn count_distinct(&mut self, members: impl IntoIterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.into_iter().map(|m| self.find(m)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singletons_then_chain() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.count_distinct(0..5), 5);
        assert!(uf.union(0, 1));
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.count_distinct(0..5), 3);
        assert_eq!(uf.find(0), uf.find(2));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn count_over_subset() {
        let mut uf = UnionFind::new(6);
        uf.union(0, 5);
        assert_eq!(uf.count_distinct([0, 5]), 1);
        assert_eq!(uf.count_distinct([0, 4, 5]), 2);
        assert_eq!(uf.count_distinct(std::iter::empty()), 0);
    }

    proptest! {
        // Compare against a naive label-propagation model.
        #[test]
        fn matches_naive_model(edges in proptest::collection::vec((0usize..40, 0usize..40), 0..80)) {
            let n = 40;
            let mut uf = UnionFind::new(n);
            let mut labels: Vec<usize> = (0..n).collect();
            for &(a, b) in &edges {
                uf.union(a, b);
                let (la, lb) = (labels[a], labels[b]);
                if la != lb {
                    for l in labels.iter_mut() {
                        if *l == lb { *l = la; }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(uf.find(i) == uf.find(j), labels[i] == labels[j]);
                }
            }
            let mut distinct = labels.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(uf.count_distinct(0..n), distinct.len());
        }
    }
}
