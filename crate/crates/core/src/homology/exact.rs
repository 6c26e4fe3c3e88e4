use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{HomologyError, SparseIntMatrix};

/// Default cap on either dimension for [`smith_normal_form`].
pub const SNF_CAP: usize = 2000;

fn dense(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let mut a = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for &(r, c, v) in m.entries() {
        a[r as usize][c as usize] = BigInt::from(v);
    }
    a
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    let mut a = dense(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                row[j] = (&pivot_row[c] * &row[j] - &f * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Nonzero invariant factors `d_1 | d_2 | …`, all positive.
pub fn smith_normal_form(m: &SparseIntMatrix, cap: usize) -> Result<Vec<BigInt>, HomologyError> {
    if m.rows() > cap || m.cols() > cap {
        return Err(HomologyError::TooLarge { rows: m.rows(), cols: m.cols(), cap });
    }
    let mut a = dense(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        move_to(&mut a, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_entry(&a, line).expect("pivot line is nonzero");
                move_to(&mut a, t, pi, pj);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    Ok(factors)
}

fn min_entry(a: &[Vec<BigInt>], cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells.filter(|&(i, j)| !a[i][j].is_zero()).min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
}

fn move_to(a: &mut [Vec<BigInt>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&SparseIntMatrix::from_dense(rows), SNF_CAP)
            .unwrap()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        assert!(snf(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn factors_divide_and_multiply_to_gcd_of_minors() {
        let f = snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(f, vec![2, 6, 12]);
    }

    #[test]
    fn cap_is_enforced() {
        let m = SparseIntMatrix::zeros(3, 3);
        assert!(matches!(smith_normal_form(&m, 2), Err(HomologyError::TooLarge { .. })));
    }

    #[test]
    fn bareiss_ranks() {
        assert_eq!(rank_exact(&SparseIntMatrix::from_dense(&[vec![2, 4], vec![1, 2]])), 1);
        assert_eq!(rank_exact(&SparseIntMatrix::from_dense(&[vec![0, 1, 2], vec![0, 2, 4], vec![1, 0, 0]])), 2);
        assert_eq!(rank_exact(&SparseIntMatrix::zeros(2, 2)), 0);
    }
}
