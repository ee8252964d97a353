/// Disjoint sets over `0..len` whose representatives are the least member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self { parent: (0..len).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; the smaller root survives.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense class numbering in order of least member, plus the class count.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let mut class_of_root = vec![usize::MAX; self.len()];
        let mut out = Vec::with_capacity(self.len());
        let mut next = 0;
        for x in 0..self.len() {
            let r = self.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = next;
                next += 1;
            }
            out.push(class_of_root[r]);
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_member_represents() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(4), 2);
        uf.union(3, 0);
        assert_eq!(uf.find(4), 0);
        let (classes, n) = uf.classes();
        assert_eq!(classes, vec![0, 1, 0, 0, 0]);
        assert_eq!(n, 2);
    }
}
