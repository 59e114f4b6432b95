/// Union-find with union by size and undo support.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some((a, b)));
        true
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            if let Some((a, b)) = self.history.pop().unwrap() {
                self.parent[b] = b;
                self.size[a] -= self.size[b];
            }
        }
    }

    /// Dense class ids in order of first appearance.
    pub fn classes(&self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            *slot = id[r];
        }
        (count, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut d = Dsu::new(5);
        d.union(0, 1);
        let cp = d.checkpoint();
        d.union(1, 2);
        d.union(3, 4);
        assert!(d.same(0, 2));
        d.rollback(cp);
        assert!(d.same(0, 1));
        assert!(!d.same(0, 2));
        assert!(!d.same(3, 4));
        assert_eq!(d.classes(), (4, vec![0, 0, 1, 2, 3]));
    }
}
