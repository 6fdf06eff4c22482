//! Union-find with rollback, used by the subset-expansion evaluators.

/// Disjoint sets over `0..n` with union by rank and an undo trail.
///
/// No path compression: `find` leaves the forest untouched, so undoing a
/// union is a constant-time reset of the merged root.
pub struct RollbackDsu {
    parent: Vec<usize>,
    rank: Vec<u32>,
    components: usize,
    trail: Vec<(usize, bool)>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
            trail: Vec::new(),
        }
    }

    pub fn find(&self, mut u: usize) -> usize {
        while self.parent[u] != u {
            u = self.parent[u];
        }
        u
    }

    pub fn same(&self, u: usize, v: usize) -> bool {
        self.find(u) == self.find(v)
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Merges the sets of `u` and `v`. Returns false when already joined
    /// (no trail entry is written in that case).
    pub fn union(&mut self, u: usize, v: usize) -> bool {
        let mut ru = self.find(u);
        let mut rv = self.find(v);
        if ru == rv {
            return false;
        }
        if self.rank[ru] > self.rank[rv] {
            std::mem::swap(&mut ru, &mut rv);
        }
        let bumped = self.rank[ru] == self.rank[rv];
        self.parent[ru] = rv;
        if bumped {
            self.rank[rv] += 1;
        }
        self.components -= 1;
        self.trail.push((ru, bumped));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.trail.len()
    }

    /// Undoes all unions performed after `checkpoint`.
    pub fn rollback_to(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let (child, bumped) = self.trail.pop().unwrap();
            let root = self.parent[child];
            self.parent[child] = child;
            if bumped {
                self.rank[root] -= 1;
            }
            self.components += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut d = RollbackDsu::new(5);
        assert_eq!(d.components(), 5);
        assert!(d.union(0, 1));
        assert!(d.union(2, 3));
        let cp = d.checkpoint();
        assert!(d.union(1, 2));
        assert!(!d.union(0, 3));
        assert_eq!(d.components(), 2);
        assert!(d.same(0, 3));
        d.rollback_to(cp);
        assert_eq!(d.components(), 3);
        assert!(!d.same(0, 3));
        assert!(d.same(0, 1));
        d.rollback_to(0);
        assert_eq!(d.components(), 5);
        assert!(!d.same(0, 1));
    }

    #[test]
    fn deep_rollback_restores_ranks() {
        // A chain of unions followed by full rollback must allow replaying
        // the same unions identically.
        let mut d = RollbackDsu::new(8);
        for i in 0..7 {
            d.union(i, i + 1);
        }
        assert_eq!(d.components(), 1);
        d.rollback_to(0);
        assert_eq!(d.components(), 8);
        for i in 0..7 {
            assert!(d.union(i, i + 1));
        }
        assert_eq!(d.components(), 1);
    }
}
