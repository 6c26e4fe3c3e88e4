use proptest::prelude::*;

use super::*;

fn complex(cells: &[usize], maps: &[&[Vec<i64>]]) -> ChainComplex {
    let boundary = maps
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            if rows.is_empty() {
                SparseIntMatrix::zeros(cells[i], cells[i + 1])
            } else {
                SparseIntMatrix::from_dense(rows)
            }
        })
        .collect();
    ChainComplex::new(cells.to_vec(), boundary).unwrap()
}

/// One cell per degree `0..=3` with `∂_2 = [p]`: a lens space of order `p`.
fn lens(p: i64) -> ChainComplex {
    complex(&[1, 1, 1, 1], &[&[vec![0]], &[vec![p]], &[vec![0]]])
}

#[test]
fn torus_minimal_cells() {
    let t = complex(&[1, 2, 1], &[&[vec![0, 0]], &[vec![0], vec![0]]]);
    assert_eq!(betti(&t, Field::Gf2).values, vec![1, 2, 1]);
    assert_eq!(betti(&t, Field::Rational).values, vec![1, 2, 1]);
    assert_eq!(betti_fast_rational(&t, true).unwrap().values, vec![1, 2, 1]);
    assert_eq!(betti_fast_rational(&t, false), Err(HomologyError::FastPathUnavailable));
}

#[test]
fn projective_plane_sees_the_field() {
    let rp2 = complex(&[1, 1, 1], &[&[vec![0]], &[vec![2]]]);
    assert_eq!(betti(&rp2, Field::Gf2).values, vec![1, 1, 1]);
    assert_eq!(betti(&rp2, Field::Rational).values, vec![1, 0, 0]);
    assert_eq!(uct_gf2_betti(&rp2, SNF_CAP).unwrap(), vec![1, 1, 1]);
}

#[test]
fn lens_spaces_match_universal_coefficients() {
    for p in [2, 3, 4, 5] {
        let l = lens(p);
        let direct = betti(&l, Field::Gf2).values;
        assert_eq!(uct_gf2_betti(&l, SNF_CAP).unwrap(), direct, "p = {p}");
        let expect = if p % 2 == 0 { vec![1, 1, 1, 1] } else { vec![1, 0, 0, 1] };
        assert_eq!(direct, expect);
        assert_eq!(betti(&l, Field::Rational).values, vec![1, 0, 0, 1]);
    }
}

#[test]
fn shape_and_square_checks() {
    let bad = ChainComplex::new(vec![1, 2], vec![SparseIntMatrix::zeros(2, 2)]);
    assert!(matches!(bad, Err(HomologyError::Shape { d: 1, .. })));
    // ∂_1 = [1, -1], ∂_2 = [1, 1]^T composes to 0; replacing with [1, 0]^T does not
    let ok = complex(&[1, 2, 1], &[&[vec![1, -1]], &[vec![1], vec![1]]]);
    assert_eq!(ok.check_boundary_squared(), Ok(()));
    let broken = complex(&[1, 2, 1], &[&[vec![1, -1]], &[vec![1], vec![0]]]);
    assert_eq!(broken.check_boundary_squared(), Err(HomologyError::BoundarySquare(2)));
}

#[test]
fn report_lists_both_fields() {
    let rp2 = complex(&[1, 1, 1], &[&[vec![0]], &[vec![2]]]);
    let r = homology_report(&rp2, &[Field::Gf2, Field::Rational], false, false).unwrap();
    let text = r.to_text();
    assert!(text.contains("betti_gf2=1,1,1\n"), "{text}");
    assert!(text.contains("betti_rational=1,0,0\n"), "{text}");
    assert!(text.contains("euler=1\n"), "{text}");
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_rank_is_invariant_under_permutation_and_negation(rows in small_matrix(), seed in any::<u64>()) {
        let m = SparseIntMatrix::from_dense(&rows);
        let base = rank_exact(&m);
        prop_assert_eq!(rank_rational(&m), base);
        let mut shuffled = rows.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        let k = (seed as usize / 7) % n;
        for v in shuffled[k].iter_mut() {
            *v = -*v;
        }
        for r in shuffled.iter_mut() {
            let c = r.len();
            r.rotate_right((seed as usize / 13) % c);
        }
        prop_assert_eq!(rank_rational(&SparseIntMatrix::from_dense(&shuffled)), base);
    }

    #[test]
    fn gf2_rank_never_exceeds_rational(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        prop_assert!(rank_gf2(&m) <= rank_exact(&m));
        let d: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&v| (v & 1) as u8).collect()).collect();
        prop_assert_eq!(rank_gf2(&m), rank_gf2_naive(&d));
    }
}
