use std::collections::{HashMap, VecDeque};

use super::flags::{enumerate_flags, neighbor, Flag};
use super::{FaceRef, Polytope, PolytopeError};

/// A face-lattice isomorphism between a face of one polytope and a face of
/// another (possibly the same) polytope, given by its vertex bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceIso {
    pub src: FaceRef,
    pub dst: FaceRef,
    /// `(source vertex, target vertex)` pairs sorted by source vertex.
    pub vertex_map: Vec<(u32, u32)>,
}

impl FaceIso {
    pub fn new(src: FaceRef, dst: FaceRef, mut vertex_map: Vec<(u32, u32)>) -> Self {
        vertex_map.sort_unstable();
        FaceIso { src, dst, vertex_map }
    }

    pub fn identity(p: &Polytope, f: FaceRef) -> Self {
        let map = p.vertices(f).iter().map(|&v| (v, v)).collect();
        FaceIso::new(f, f, map)
    }

    pub fn image_vertex(&self, v: u32) -> Option<u32> {
        self.vertex_map
            .binary_search_by_key(&v, |&(s, _)| s)
            .ok()
            .map(|k| self.vertex_map[k].1)
    }

    pub fn inverse(&self) -> FaceIso {
        FaceIso::new(self.dst, self.src, self.vertex_map.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FaceIso) -> Option<FaceIso> {
        let map = self
            .vertex_map
            .iter()
            .map(|&(a, b)| other.image_vertex(b).map(|c| (a, c)))
            .collect::<Option<Vec<_>>>()?;
        Some(FaceIso::new(self.src, other.dst, map))
    }

    /// Image of a subface of `src`, if it is a face of `dst_poly`.
    pub fn map_face(&self, src_poly: &Polytope, dst_poly: &Polytope, g: FaceRef) -> Option<FaceRef> {
        let mut verts = src_poly
            .vertices(g)
            .iter()
            .map(|&v| self.image_vertex(v))
            .collect::<Option<Vec<_>>>()?;
        verts.sort_unstable();
        let h = dst_poly.face_with_vertices(&verts)?;
        (h.dim == g.dim).then_some(h)
    }

    pub(crate) fn map_flag(&self, src_poly: &Polytope, dst_poly: &Polytope, flag: &[u32]) -> Option<Flag> {
        flag.iter()
            .enumerate()
            .map(|(d, &id)| self.map_face(src_poly, dst_poly, FaceRef::new(d, id as usize)).map(|h| h.id))
            .collect()
    }

    /// Restriction to a subface `g` of the source face.
    pub fn restrict(&self, src_poly: &Polytope, dst_poly: &Polytope, g: FaceRef) -> Option<FaceIso> {
        let h = self.map_face(src_poly, dst_poly, g)?;
        let map = src_poly
            .vertices(g)
            .iter()
            .map(|&v| (v, self.image_vertex(v).expect("mapped above")))
            .collect();
        Some(FaceIso::new(g, h, map))
    }

    /// Checks that the vertex map induces an incidence-preserving bijection
    /// of the two face lattices.
    pub fn validate(&self, src_poly: &Polytope, dst_poly: &Polytope) -> Result<(), PolytopeError> {
        let bad = |m: String| Err(PolytopeError::InvalidIso(m));
        if self.src.dim != self.dst.dim {
            return bad(format!("{} and {} differ in dimension", self.src, self.dst));
        }
        let sv = src_poly.vertices(self.src);
        let dv = dst_poly.vertices(self.dst);
        let srcs: Vec<u32> = self.vertex_map.iter().map(|&(a, _)| a).collect();
        let mut dsts: Vec<u32> = self.vertex_map.iter().map(|&(_, b)| b).collect();
        dsts.sort_unstable();
        if srcs != sv || dsts != dv {
            return bad("vertex map is not a bijection between the two vertex sets".into());
        }
        let src_faces = src_poly.subfaces(self.src);
        let dst_faces = dst_poly.subfaces(self.dst);
        if src_faces.len() != dst_faces.len() {
            return bad("faces have different numbers of subfaces".into());
        }
        for g in src_faces {
            if self.map_face(src_poly, dst_poly, g).is_none() {
                return bad(format!("image of {g} is not a face of the same dimension"));
            }
        }
        Ok(())
    }
}

fn flag_extend(
    p: &Polytope,
    a: FaceRef,
    start_a: Flag,
    q: &Polytope,
    b: FaceRef,
    start_b: Flag,
) -> Option<FaceIso> {
    let mut map: HashMap<Flag, Flag> = HashMap::new();
    map.insert(start_a.clone(), start_b.clone());
    let mut queue = VecDeque::from([(start_a, start_b)]);
    let mut vmap: HashMap<u32, u32> = HashMap::new();
    while let Some((fa, fb)) = queue.pop_front() {
        if a.dim() > 0 {
            match vmap.insert(fa[0], fb[0]) {
                Some(prev) if prev != fb[0] => return None,
                _ => {}
            }
        }
        for i in 0..a.dim() {
            let na = neighbor(p, a, &fa, i);
            let nb = neighbor(q, b, &fb, i);
            match map.get(&na) {
                Some(existing) => {
                    if *existing != nb {
                        return None;
                    }
                }
                None => {
                    map.insert(na.clone(), nb.clone());
                    queue.push_back((na, nb));
                }
            }
        }
    }
    if a.dim() == 0 {
        vmap.insert(a.id, b.id);
    }
    let iso = FaceIso::new(a, b, vmap.into_iter().collect());
    iso.validate(p, q).ok()?;
    Some(iso)
}

/// All lattice isomorphisms from face `a` of `p` onto face `b` of `q`,
/// sorted lexicographically by their vertex maps.
pub fn face_isomorphisms(p: &Polytope, a: FaceRef, q: &Polytope, b: FaceRef) -> Vec<FaceIso> {
    if a.dim != b.dim || p.vertices(a).len() != q.vertices(b).len() {
        return Vec::new();
    }
    let base = p.reference_flag(a).clone();
    let mut out: Vec<FaceIso> = enumerate_flags(q, b)
        .into_iter()
        .filter_map(|fb| flag_extend(p, a, base.clone(), q, b, fb))
        .collect();
    out.sort_by(|x, y| x.vertex_map.cmp(&y.vertex_map));
    out.dedup();
    out
}

/// Extends an isomorphism between a facet `iso.src` of `a` and a facet
/// `iso.dst` of `b` to the unique isomorphism `a -> b` restricting to it.
pub fn extend_facet_iso(
    iso: &FaceIso,
    p: &Polytope,
    a: FaceRef,
    q: &Polytope,
    b: FaceRef,
) -> Result<FaceIso, PolytopeError> {
    if a.dim != b.dim {
        return Err(PolytopeError::DimensionMismatch(a.dim(), b.dim()));
    }
    if iso.src.dim() + 1 != a.dim() || !p.contains(a, iso.src) {
        return Err(PolytopeError::InvalidIso(format!("{} is not a facet of {a}", iso.src)));
    }
    if iso.dst.dim() + 1 != b.dim() || !q.contains(b, iso.dst) {
        return Err(PolytopeError::InvalidIso(format!("{} is not a facet of {b}", iso.dst)));
    }
    iso.validate(p, q)?;
    let no_ext = || PolytopeError::NoExtension { src: a, dst: b };
    let mut fa = p.reference_flag(iso.src).clone();
    let mut fb = iso.map_flag(p, q, &fa).ok_or_else(no_ext)?;
    fa.push(iso.src.id);
    fb.push(iso.dst.id);
    let ext = flag_extend(p, a, fa, q, b, fb).ok_or_else(no_ext)?;
    let agrees = iso.vertex_map.iter().all(|&(s, t)| ext.image_vertex(s) == Some(t));
    if agrees {
        Ok(ext)
    } else {
        Err(no_ext())
    }
}

/// `+1` when `iso` carries the reference orientation of its source face to
/// that of its target face, `-1` otherwise.
pub fn orientation_sign(iso: &FaceIso, p: &Polytope, q: &Polytope) -> Result<i8, PolytopeError> {
    if iso.src.dim != iso.dst.dim {
        return Err(PolytopeError::DimensionMismatch(iso.src.dim(), iso.dst.dim()));
    }
    let image = iso
        .map_flag(p, q, p.reference_flag(iso.src))
        .ok_or_else(|| PolytopeError::InvalidIso("reference flag has no image".into()))?;
    match q.orient.parity[iso.dst.dim()][iso.dst.idx()].get(&image) {
        Some(true) => Ok(1),
        Some(false) => Ok(-1),
        None => Err(PolytopeError::InvalidIso("image is not a flag of the target face".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::catalog;

    #[test]
    fn identity_extends_to_identity() {
        let dod = catalog::load("dodecahedron").unwrap();
        let f = FaceRef::new(2, 3);
        let ext = extend_facet_iso(&FaceIso::identity(&dod, f), &dod, dod.top(), &dod, dod.top()).unwrap();
        assert_eq!(ext, FaceIso::identity(&dod, dod.top()));
    }

    #[test]
    fn edge_swap_reverses_orientation() {
        let pent = catalog::load("pentagon").unwrap();
        let e = FaceRef::new(1, 0);
        let vs = pent.vertices(e).to_vec();
        let swap = FaceIso::new(e, e, vec![(vs[0], vs[1]), (vs[1], vs[0])]);
        assert_eq!(orientation_sign(&FaceIso::identity(&pent, e), &pent, &pent).unwrap(), 1);
        assert_eq!(orientation_sign(&swap, &pent, &pent).unwrap(), -1);
    }

    #[test]
    fn pentagon_reflection_is_negative() {
        let pent = catalog::load("pentagon").unwrap();
        // v -> -v mod 5 fixes vertex 0 and reverses the cycle
        let refl = FaceIso::new(pent.top(), pent.top(), (0..5).map(|v| (v, (5 - v) % 5)).collect());
        refl.validate(&pent, &pent).unwrap();
        assert_eq!(orientation_sign(&refl, &pent, &pent).unwrap(), -1);
        let rot = FaceIso::new(pent.top(), pent.top(), (0..5).map(|v| (v, (v + 1) % 5)).collect());
        assert_eq!(orientation_sign(&rot, &pent, &pent).unwrap(), 1);
    }

    #[test]
    fn non_incidence_preserving_map_is_rejected() {
        let dod = catalog::load("dodecahedron").unwrap();
        let f = FaceRef::new(2, 0);
        let vs = dod.vertices(f).to_vec();
        // swap two non-adjacent vertices of the pentagon: edges are not preserved
        let mut map: Vec<(u32, u32)> = vs.iter().map(|&v| (v, v)).collect();
        let (a, b) = non_adjacent_pair(&dod, f);
        for pair in map.iter_mut() {
            if pair.0 == a {
                pair.1 = b;
            } else if pair.0 == b {
                pair.1 = a;
            }
        }
        let bad = FaceIso::new(f, f, map);
        assert!(extend_facet_iso(&bad, &dod, dod.top(), &dod, dod.top()).is_err());
    }

    fn non_adjacent_pair(p: &Polytope, f: FaceRef) -> (u32, u32) {
        let vs = p.vertices(f);
        for &a in vs {
            for &b in vs {
                if a < b && p.face_with_vertices(&[a, b]).is_none() {
                    return (a, b);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn dodecahedron_has_120_automorphisms() {
        let dod = catalog::load("dodecahedron").unwrap();
        assert_eq!(face_isomorphisms(&dod, dod.top(), &dod, dod.top()).len(), 120);
    }
}
