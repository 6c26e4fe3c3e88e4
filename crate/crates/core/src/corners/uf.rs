/// Union-find where every element also carries a sign relative to its root.
#[derive(Clone, Debug)]
pub(crate) struct SignedUnionFind {
    parent: Vec<u32>,
    sign: Vec<i8>,
}

impl SignedUnionFind {
    pub fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n as u32).collect(), sign: vec![1; n] }
    }

    /// Root of `x` and the sign of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, i8) {
        let p = self.parent[x] as usize;
        if p == x {
            return (x, 1);
        }
        let (root, s) = self.find(p);
        self.parent[x] = root as u32;
        self.sign[x] *= s;
        (root, self.sign[x])
    }

    /// Records `y = s · x`. Returns false when this contradicts an earlier relation.
    pub fn union(&mut self, x: usize, y: usize, s: i8) -> bool {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            return sy == s * sx;
        }
        let (keep, drop) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[drop] = keep as u32;
        // y = sy·ry and y = s·sx·rx, so ry = s·sx·sy·rx
        self.sign[drop] = s * sx * sy;
        true
    }
}
