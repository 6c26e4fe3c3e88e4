//! Inputs for the rank benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use corners::colouring::{dsatur_greedy, lift};
use corners::orbit::build_quotient;
use corners::polytope::catalog;
use corners::{ChainComplex, CornerComplex, FacetGraph, SparseIntMatrix};

/// Random ±1 matrix with about `per_row` entries per row.
pub fn random_sparse(rows: usize, cols: usize, per_row: usize, seed: u64) -> SparseIntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::with_capacity(rows * per_row);
    for r in 0..rows {
        for _ in 0..per_row {
            let c = rng.gen_range(0..cols) as u32;
            t.push((r as u32, c, if rng.gen() { 1 } else { -1 }));
        }
    }
    SparseIntMatrix::from_triplets(rows, cols, t)
}

/// Chain complex of the small cover over one catalog polytope, coloured greedily.
pub fn small_cover(name: &str) -> ChainComplex {
    let p = catalog::load(name).expect("catalog entry");
    let cx = CornerComplex::build(vec![p], vec![]).expect("single chamber");
    let g = FacetGraph::of_complex(&cx).expect("facet graph");
    let rho = lift(&dsatur_greedy(&g)).expect("lift");
    build_quotient(&cx, &rho).expect("quotient").chain().clone()
}
