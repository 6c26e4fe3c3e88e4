use proptest::prelude::*;

use super::*;
use crate::colouring::{lift, Colouring};
use crate::corners::{mirror, Gluing, Slot};
use crate::homology::{betti, betti_fast_rational, Field};
use crate::polytope::{catalog, FaceIso, FaceRef};

fn pentagon_pair() -> CornerComplex {
    let p = catalog::load("pentagon").unwrap();
    let g = |f: usize, a: u32| Gluing {
        a: Slot::new(0, f),
        b: Slot::new(1, f),
        iso: FaceIso::new(FaceRef::new(1, f), FaceRef::new(1, f), vec![(a, a), (a + 1, a + 1)]),
    };
    CornerComplex::build(vec![p.clone(), p], vec![g(0, 0), g(2, 2)]).unwrap()
}

fn self_glued_hexagon() -> CornerComplex {
    let h = catalog::load("hexagon").unwrap();
    let g = Gluing {
        a: Slot::new(0, 0),
        b: Slot::new(0, 2),
        iso: FaceIso::new(FaceRef::new(1, 0), FaceRef::new(1, 2), vec![(0, 3), (1, 2)]),
    };
    CornerComplex::build(vec![h], vec![g]).unwrap()
}

fn colours(c: &[u32]) -> GeneralisedColouring {
    lift(&Colouring { colours: c.to_vec() }).unwrap()
}

#[test]
fn pentagon_pair_genus_three() {
    let cx = pentagon_pair();
    // facet 0 is the isolated circle, which takes the third colour
    let rho = colours(&[3, 1, 2]);
    let q = build_quotient(&cx, &rho).unwrap();
    assert_eq!(q.cell_counts(), vec![20, 40, 16]);
    assert_eq!(q.euler_characteristic(), -4);
    assert_eq!(weighted_euler(&cx, &rho), -4);
    assert_eq!(betti(q.chain(), Field::Gf2).values, vec![1, 6, 1]);
    assert_eq!(betti(q.chain(), Field::Rational).values, vec![1, 6, 1]);
    assert!(q.orientation_cycle().is_some());
    assert_eq!(betti_fast_rational(q.chain(), true).unwrap().values, vec![1, 6, 1]);
}

#[test]
fn self_glued_hexagon_quotient() {
    let cx = self_glued_hexagon();
    let rho = colours(&[1, 2, 3]);
    let q = build_quotient(&cx, &rho).unwrap();
    assert_eq!(q.cells(2).len(), 8);
    assert_eq!(q.euler_characteristic(), -4);
    assert_eq!(betti(q.chain(), Field::Rational).values, vec![1, 6, 1]);
}

#[test]
fn even_vector_gives_a_non_orientable_surface() {
    let cx = CornerComplex::build(vec![catalog::load("pentagon").unwrap()], vec![]).unwrap();
    let rho = GeneralisedColouring { m: 2, vectors: vec![1, 2, 1, 2, 3] };
    let q = build_quotient(&cx, &rho).unwrap();
    assert_eq!(q.cell_counts(), vec![5, 10, 4]);
    assert!(q.orientation_cycle().is_none());
    assert_eq!(betti(q.chain(), Field::Gf2).values, vec![1, 3, 1]);
    assert_eq!(betti(q.chain(), Field::Rational).values, vec![1, 2, 0]);
}

#[test]
fn plain_and_lifted_colourings_agree() {
    let cx = pentagon_pair();
    let a = build_quotient(&cx, &colours(&[3, 1, 2])).unwrap();
    let b = build_quotient(&cx, &colours(&[1, 2, 3])).unwrap();
    assert_eq!(a.cell_counts(), b.cell_counts());
    for d in 1..=2 {
        assert_eq!(
            crate::homology::rank_gf2(a.chain().boundary(d)),
            crate::homology::rank_gf2(b.chain().boundary(d))
        );
    }
}

#[test]
fn invalid_colouring_is_rejected() {
    let cx = pentagon_pair();
    assert!(matches!(build_quotient(&cx, &colours(&[1, 1, 1])), Err(OrbitError::Colouring(_))));
}

#[test]
fn dump_round_trip() {
    let q = build_quotient(&pentagon_pair(), &colours(&[3, 1, 2])).unwrap();
    let text = write_dump(&q);
    let back = parse_dump(&text).unwrap();
    assert_eq!(back.cells(), q.chain().cells());
    for d in 1..=2 {
        assert_eq!(back.boundary(d), q.chain().boundary(d));
    }
    assert!(parse_dump("dim 1\ncells 0 1\n").is_err());
}

#[test]
fn orbit_complex_is_closed() {
    let cx = pentagon_pair();
    let closed = orbit_complex(&cx, &colours(&[3, 1, 2])).unwrap();
    assert_eq!(closed.chambers().len(), 16);
    assert!(closed.facets().is_empty());
    assert_eq!(closed.euler_characteristic(), -4);
}

fn mirrored_symmetric() -> (crate::corners::Mirrored, Colouring) {
    let w = mirror(&pentagon_pair(), 0).unwrap();
    let colours = w
        .complex
        .facets()
        .iter()
        .map(|f| if f.slots[0].facet == 3 { 1 } else { 2 })
        .collect();
    (w, Colouring { colours })
}

#[test]
fn mirror_image_separates() {
    let (w, lambda) = mirrored_symmetric();
    let r = separation_check(&w, &lambda).unwrap();
    assert_eq!(r.top_cells, 16);
    assert_eq!(r.components, 2);
    assert_eq!(r.mirror_copies, 4);
    assert_eq!(r.expected_mirror_copies, 4);
    assert!(r.ok(), "{r:?}");
}

#[test]
fn asymmetric_colouring_is_refused() {
    let (w, _) = mirrored_symmetric();
    let lambda = Colouring { colours: vec![1, 2, 3, 4] };
    assert_eq!(separation_check(&w, &lambda).unwrap_err(), OrbitError::NotSymmetric);
}

proptest! {
    #[test]
    fn coset_reduction_is_the_minimum(k in 1usize..7, gens in prop::collection::vec(1u64..128, 0..4), u in 0u64..128) {
        let mask = (1u64 << k) - 1;
        let gens: Vec<u64> = gens.into_iter().map(|g| g & mask).collect();
        let u = u & mask;
        let s = Subspace::span(k, gens.iter().copied());
        let mut span = vec![0u64];
        for &g in &gens {
            let more: Vec<u64> = span.iter().map(|x| x ^ g).collect();
            span.extend(more);
        }
        let min = span.iter().map(|x| x ^ u).min().unwrap();
        prop_assert_eq!(s.reduce(u), min);
        let i = s.index(k, min);
        prop_assert!(i < 1 << (k - s.rank()));
        prop_assert_eq!(s.from_index(k, i), min);
    }
}
