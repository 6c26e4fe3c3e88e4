use std::collections::BTreeMap;

/// Integer matrix in coordinate form: entries sorted by `(row, col)`, no
/// duplicates, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseIntMatrix {
    /// Sums duplicate coordinates and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!((r as usize) < rows && (c as usize) < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *acc.entry((r, c)).or_default() += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect();
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r as u32, c as u32, v)));
        SparseIntMatrix::from_triplets(rows.len(), cols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r as usize][c as usize] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix::from_triplets(self.cols, self.rows, self.entries.iter().map(|&(r, c, v)| (c, r, v)))
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(u32, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r as usize].push((c, v));
        }
        let triplets = self
            .entries
            .iter()
            .flat_map(|&(r, k, a)| by_row[k as usize].iter().map(move |&(c, b)| (r, c, a * b)));
        SparseIntMatrix::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Row-wise sparse rows with values reduced into `0..p`, zeros dropped.
    pub(crate) fn rows_mod(&self, p: u64) -> Vec<Vec<(u32, u32)>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            let m = v.rem_euclid(p as i64) as u32;
            if m != 0 {
                out[r as usize].push((c, m));
            }
        }
        out
    }

    /// Row-wise column supports of the odd entries.
    pub(crate) fn rows_gf2(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            if v & 1 == 1 {
                out[r as usize].push(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_sum_and_zeros_vanish() {
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, 1), (1, 1, 1), (1, 1, -1)]);
        assert_eq!(m.entries(), &[(0, 0, 2)]);
        assert_eq!(m.rows_gf2(), vec![Vec::<u32>::new(), vec![]]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseIntMatrix::from_dense(&[vec![1, 0], vec![-1, 1]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![-1, 2], vec![-1, 1]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 1]]);
    }
}
