use rayon::prelude::*;

use super::SparseIntMatrix;

/// Fill ratio of the pivot rows above which elimination continues on
/// bit-packed dense rows.
const DENSE_FILL: f64 = 0.2;
/// Rows reduced in parallel against a fixed basis before insertion.
const BATCH: usize = 256;

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// Echelon basis of bit-packed rows keyed by their lowest set bit.
struct DenseBasis {
    words: usize,
    pivot: Vec<Option<u32>>,
    rows: Vec<Vec<u64>>,
}

impl DenseBasis {
    fn reduce(&self, mut row: Vec<u64>) -> Option<(usize, Vec<u64>)> {
        while let Some(c) = lowest_bit(&row) {
            match self.pivot[c] {
                Some(b) => {
                    let b = &self.rows[b as usize];
                    for (x, y) in row[c / 64..].iter_mut().zip(&b[c / 64..]) {
                        *x ^= *y;
                    }
                }
                None => return Some((c, row)),
            }
        }
        None
    }

    fn insert(&mut self, row: Vec<u64>) -> bool {
        match self.reduce(row) {
            Some((c, r)) => {
                self.pivot[c] = Some(self.rows.len() as u32);
                self.rows.push(r);
                true
            }
            None => false,
        }
    }

    fn pack(&self, cols: &[u32]) -> Vec<u64> {
        let mut row = vec![0u64; self.words];
        for &c in cols {
            row[c as usize / 64] ^= 1 << (c % 64);
        }
        row
    }
}

/// Rank over GF(2) of the matrix reduced mod 2.
pub fn rank_gf2(m: &SparseIntMatrix) -> usize {
    let cols = m.cols();
    let mut rows: Vec<Vec<u32>> = m.rows_gf2().into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(Vec::len);
    let mut pivot: Vec<Option<u32>> = vec![None; cols];
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut fill = 0usize;
    let mut next = 0;
    while next < rows.len() {
        let mut r = std::mem::take(&mut rows[next]);
        next += 1;
        while let Some(&c) = r.first() {
            match pivot[c as usize] {
                Some(b) => r = symmetric_difference(&r, &basis[b as usize]),
                None => {
                    pivot[c as usize] = Some(basis.len() as u32);
                    fill += r.len();
                    basis.push(r);
                    break;
                }
            }
        }
        if cols >= 256 && fill as f64 > DENSE_FILL * basis.len() as f64 * cols as f64 {
            return basis.len() + dense_finish(cols, basis, &rows[next..]);
        }
    }
    basis.len()
}

/// Finishes elimination on packed rows; returns the number of new pivots.
fn dense_finish(cols: usize, sparse_basis: Vec<Vec<u32>>, rest: &[Vec<u32>]) -> usize {
    let mut basis = DenseBasis { words: cols.div_ceil(64), pivot: vec![None; cols], rows: Vec::new() };
    for r in &sparse_basis {
        let packed = basis.pack(r);
        basis.pivot[r[0] as usize] = Some(basis.rows.len() as u32);
        basis.rows.push(packed);
    }
    let before = basis.rows.len();
    for chunk in rest.chunks(BATCH) {
        let reduced: Vec<Vec<u64>> = chunk
            .par_iter()
            .filter_map(|r| basis.reduce(basis.pack(r)).map(|(_, row)| row))
            .collect();
        for row in reduced {
            basis.insert(row);
        }
    }
    basis.rows.len() - before
}

/// Textbook elimination on a dense 0/1 matrix; slow but independent.
pub fn rank_gf2_naive(rows: &[Vec<u8>]) -> usize {
    let mut a: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|x| x & 1).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] == 1 {
                for j in 0..ncols {
                    a[i][j] ^= a[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_cases() {
        assert_eq!(rank_gf2(&SparseIntMatrix::zeros(4, 3)), 0);
        let id: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(rank_gf2(&SparseIntMatrix::from_dense(&id)), 5);
        assert_eq!(rank_gf2(&SparseIntMatrix::from_dense(&[vec![2]])), 0);
        assert_eq!(rank_gf2(&SparseIntMatrix::from_dense(&[vec![1, 1], vec![1, 1]])), 1);
    }

    fn random(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Vec<Vec<u8>> {
        (0..rows).map(|_| (0..cols).map(|_| u8::from(rng.gen_bool(density))).collect()).collect()
    }

    fn to_matrix(d: &[Vec<u8>]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(&d.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn random_300_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for density in [0.01, 0.05, 0.5] {
            let d = random(&mut rng, 300, 300, density);
            assert_eq!(rank_gf2(&to_matrix(&d)), rank_gf2_naive(&d), "density {density}");
        }
    }

    #[test]
    fn rank_deficient_dense_path() {
        // rows 300.. are sums of earlier rows, so the rank is at most 300
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut d = random(&mut rng, 300, 400, 0.4);
        for i in 0..100 {
            let row: Vec<u8> = (0..400).map(|j| d[i][j] ^ d[i + 1][j]).collect();
            d.push(row);
        }
        assert_eq!(rank_gf2(&to_matrix(&d)), rank_gf2_naive(&d));
    }
}
