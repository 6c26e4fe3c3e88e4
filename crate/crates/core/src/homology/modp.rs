use rand::Rng;
use rayon::prelude::*;

use super::exact::rank_exact;
use super::SparseIntMatrix;

const DENSE_FILL: f64 = 0.2;
const BATCH: usize = 256;

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (u64::from(a) * u64::from(b) % u64::from(p)) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime
    let (mut base, mut exp, mut acc) = (u64::from(a), u64::from(p - 2), 1u64);
    let p = u64::from(p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u32
}

/// `a - f·b` over sparse rows sorted by column.
fn axpy(a: &[(u32, u32)], f: u32, b: &[(u32, u32)], p: u32) -> Vec<(u32, u32)> {
    let neg = p - f;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            out.push((cb, mul_mod(neg, b[j].1, p)));
            j += 1;
        } else {
            let v = ((u64::from(a[i].1) + u64::from(mul_mod(neg, b[j].1, p))) % u64::from(p)) as u32;
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut [(u32, u32)], p: u32) {
    let inv = inv_mod(row[0].1, p);
    for e in row.iter_mut() {
        e.1 = mul_mod(e.1, inv, p);
    }
}

struct DenseBasis {
    p: u32,
    pivot: Vec<Option<u32>>,
    rows: Vec<Vec<u32>>,
}

impl DenseBasis {
    fn reduce(&self, mut row: Vec<u32>) -> Option<(usize, Vec<u32>)> {
        let p = u64::from(self.p);
        let mut c = 0;
        while c < row.len() {
            if row[c] == 0 {
                c += 1;
                continue;
            }
            let Some(b) = self.pivot[c] else {
                return Some((c, row));
            };
            let b = &self.rows[b as usize];
            let f = p - u64::from(row[c]);
            for (x, &y) in row[c..].iter_mut().zip(&b[c..]) {
                if y != 0 {
                    *x = ((u64::from(*x) + f * u64::from(y)) % p) as u32;
                }
            }
        }
        None
    }

    fn insert(&mut self, row: Vec<u32>) {
        if let Some((c, mut r)) = self.reduce(row) {
            let inv = inv_mod(r[c], self.p);
            for x in r[c..].iter_mut() {
                *x = mul_mod(*x, inv, self.p);
            }
            self.pivot[c] = Some(self.rows.len() as u32);
            self.rows.push(r);
        }
    }
}

/// Rank over the prime field `GF(p)`, `p < 2^31`.
pub fn rank_modp(m: &SparseIntMatrix, p: u32) -> usize {
    assert!(p > 2 && p < (1 << 31), "prime out of range");
    let cols = m.cols();
    let mut rows: Vec<Vec<(u32, u32)>> = m.rows_mod(u64::from(p)).into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(Vec::len);
    let mut pivot: Vec<Option<u32>> = vec![None; cols];
    let mut basis: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut fill = 0usize;
    let mut next = 0;
    while next < rows.len() {
        let mut r = std::mem::take(&mut rows[next]);
        next += 1;
        while let Some(&(c, v)) = r.first() {
            match pivot[c as usize] {
                Some(b) => r = axpy(&r, v, &basis[b as usize], p),
                None => {
                    normalize(&mut r, p);
                    pivot[c as usize] = Some(basis.len() as u32);
                    fill += r.len();
                    basis.push(r);
                    break;
                }
            }
        }
        if cols >= 128 && fill as f64 > DENSE_FILL * basis.len() as f64 * cols as f64 {
            let mut dense = DenseBasis { p, pivot: vec![None; cols], rows: Vec::new() };
            let unpack = |r: &[(u32, u32)]| {
                let mut row = vec![0u32; cols];
                for &(c, v) in r {
                    row[c as usize] = v;
                }
                row
            };
            for r in &basis {
                dense.pivot[r[0].0 as usize] = Some(dense.rows.len() as u32);
                dense.rows.push(unpack(r));
            }
            let before = dense.rows.len();
            for chunk in rows[next..].chunks(BATCH) {
                let reduced: Vec<Vec<u32>> =
                    chunk.par_iter().filter_map(|r| dense.reduce(unpack(r)).map(|(_, row)| row)).collect();
                for row in reduced {
                    dense.insert(row);
                }
            }
            return basis.len() + dense.rows.len() - before;
        }
    }
    basis.len()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A uniformly random prime in `(2^20, 2^31)`.
pub fn random_prime(rng: &mut impl Rng) -> u32 {
    loop {
        let c = rng.gen_range((1u32 << 20) + 1..(1u32 << 31)) | 1;
        if is_prime(u64::from(c)) {
            return c;
        }
    }
}

/// How a rational rank was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Two random primes gave the same rank.
    TwoPrimes(u32, u32),
    /// The primes disagreed; fraction-free elimination over the integers.
    Exact,
}

/// Rank over the rationals.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    rank_rational_with(m, &mut rand::thread_rng()).0
}

pub fn rank_rational_with(m: &SparseIntMatrix, rng: &mut impl Rng) -> (usize, RankMethod) {
    let p1 = random_prime(rng);
    let mut p2 = random_prime(rng);
    while p2 == p1 {
        p2 = random_prime(rng);
    }
    let r1 = rank_modp(m, p1);
    let r2 = rank_modp(m, p2);
    if r1 == r2 {
        (r1, RankMethod::TwoPrimes(p1, p2))
    } else {
        (rank_exact(m), RankMethod::Exact)
    }
}
