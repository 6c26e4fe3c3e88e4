use std::collections::{HashMap, HashSet};

use super::{build_quotient, OrbitError, QuotientComplex};
use crate::colouring::{lift, Colouring};
use crate::corners::{Germ, Mirrored, SignedUnionFind};
use crate::polytope::FaceRef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    /// Components of the top cells once the image of the mirror facet is removed.
    pub components: usize,
    /// Connected components of the image of the mirror facet.
    pub mirror_copies: usize,
    /// `2^k` times the number of components of the mirror facet itself.
    pub expected_mirror_copies: usize,
    /// The chamber swap is a chain isomorphism of the quotient.
    pub isomorphism: bool,
    /// It fixes every cell of the mirror image with sign +1.
    pub fixes_mirror: bool,
    /// It exchanges the two components.
    pub swaps_sides: bool,
    pub euler: i64,
    pub top_cells: usize,
}

impl SeparationReport {
    pub fn ok(&self) -> bool {
        self.components == 2
            && self.mirror_copies == self.expected_mirror_copies
            && self.isomorphism
            && self.fixes_mirror
            && self.swaps_sides
    }
}

/// Checks that the image of the mirror facet splits the quotient of a
/// mirrored complex by a symmetric colouring into two isomorphic halves.
pub fn separation_check(w: &Mirrored, lambda: &Colouring) -> Result<SeparationReport, OrbitError> {
    if lambda.colours.len() != w.involution.len() || !lambda.is_symmetric(&w.involution) {
        return Err(OrbitError::NotSymmetric);
    }
    let cx = &w.complex;
    let rho = lift(lambda).map_err(|_| OrbitError::NotSymmetric)?;
    let q = build_quotient(cx, &rho)?;
    let n = cx.dim();
    let k = rho.m;

    let mut mirror_strata: HashSet<u32> = HashSet::new();
    for s in &w.mirror_slots {
        let p = cx.chamber(s.chamber as usize);
        for g in p.subfaces(FaceRef::new(n - 1, s.facet as usize)) {
            mirror_strata.insert(cx.stratum_of(Germ { chamber: s.chamber, face: g }).0);
        }
    }
    let in_mirror = |d: usize, i: usize| mirror_strata.contains(&q.cells(d)[i].stratum);

    // components of the facet itself, at the level of strata
    let ids: Vec<u32> = {
        let mut v: Vec<u32> = mirror_strata.iter().copied().collect();
        v.sort_unstable();
        v
    };
    let pos: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = SignedUnionFind::new(ids.len());
    for &sid in &ids {
        let rep = cx.strata()[sid as usize].germs[0];
        let p = cx.chamber(rep.chamber as usize);
        if rep.face.dim() == 0 {
            continue;
        }
        for &g in p.subs(rep.face) {
            let t = cx.stratum_of(Germ { chamber: rep.chamber, face: FaceRef::new(rep.face.dim() - 1, g as usize) }).0;
            uf.union(pos[&sid], pos[&t], 1);
        }
    }
    let facet_components: HashSet<usize> = (0..ids.len()).map(|i| uf.find(i).0).collect();

    let mirror_copies = q.component_count(&in_mirror);
    let components = top_components(&q, &in_mirror);

    let (isomorphism, fixes_mirror, swaps_sides) = swap_checks(w, &q, &in_mirror, &components.1);
    Ok(SeparationReport {
        components: components.0,
        mirror_copies,
        expected_mirror_copies: (1usize << k) * facet_components.len(),
        isomorphism,
        fixes_mirror,
        swaps_sides,
        euler: q.euler_characteristic(),
        top_cells: q.cells(n).len(),
    })
}

/// Number of components of the top cells joined through codimension-one
/// cells outside the mirror image, and the component of each top cell.
fn top_components(q: &QuotientComplex, in_mirror: &impl Fn(usize, usize) -> bool) -> (usize, Vec<usize>) {
    let n = q.dim();
    let top = q.cells(n).len();
    let mut by_row: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(r, c) in q.touches(n) {
        if !in_mirror(n - 1, r as usize) {
            by_row.entry(r).or_default().push(c);
        }
    }
    let mut uf = SignedUnionFind::new(top);
    for cols in by_row.values() {
        for w in cols.windows(2) {
            uf.union(w[0] as usize, w[1] as usize, 1);
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let comp: Vec<usize> = (0..top)
        .map(|c| {
            let root = uf.find(c).0;
            let next = label.len();
            *label.entry(root).or_insert(next)
        })
        .collect();
    (label.len(), comp)
}

/// The map `(s, u) ↦ (s', u)` induced by swapping each chamber with its copy.
fn swap_checks(
    w: &Mirrored,
    q: &QuotientComplex,
    in_mirror: &impl Fn(usize, usize) -> bool,
    top_comp: &[usize],
) -> (bool, bool, bool) {
    let cx = &w.complex;
    let n = cx.dim();
    let image: Vec<Vec<(usize, i64)>> = (0..=n)
        .map(|d| {
            q.cells(d)
                .iter()
                .map(|cell| {
                    let rep = cx.strata()[cell.stratum as usize].germs[0];
                    let partner = Germ { chamber: w.partner_chamber(rep.chamber as usize) as u32, face: rep.face };
                    let (t, e) = cx.stratum_of(partner);
                    (q.cell_index(t, cell.coset), i64::from(e))
                })
                .collect()
        })
        .collect();
    let bijective = image.iter().all(|level| {
        let set: HashSet<usize> = level.iter().map(|&(i, _)| i).collect();
        set.len() == level.len()
    });
    let mut chain_map = bijective;
    for d in 1..=n {
        let entries = q.chain().boundary(d).entries();
        let original: HashSet<(u32, u32, i64)> = entries.iter().copied().collect();
        chain_map &= entries.iter().all(|&(r, c, v)| {
            let (r2, er) = image[d - 1][r as usize];
            let (c2, ec) = image[d][c as usize];
            original.contains(&(r2 as u32, c2 as u32, v * er * ec))
        });
    }
    let fixes = (0..=n).all(|d| {
        (0..q.cells(d).len()).filter(|&i| in_mirror(d, i)).all(|i| image[d][i] == (i, 1))
    });
    let swaps = (0..q.cells(n).len()).all(|c| top_comp[image[n][c].0] != top_comp[c]);
    (chain_map, fixes, swaps)
}
