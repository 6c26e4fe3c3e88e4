use std::sync::Arc;

use super::{CornerComplex, CornersError, Gluing, Slot};
use crate::polytope::{catalog, extend_facet_iso, face_isomorphisms, FaceIso, FaceRef, PolytopeError};

/// The polytope one dimension up that has the given catalog polytope as a
/// facet and hosts it when thickening.
pub fn host_polytope(name: &str) -> Option<&'static str> {
    match name {
        "pentagon" => Some("dodecahedron"),
        "hexagon" => Some("lobell6"),
        "dodecahedron" => Some("120cell"),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Thickened {
    pub complex: CornerComplex,
    /// The facet made of the original complex.
    pub m_facet: u32,
}

/// Replaces every chamber of a closed complex by a host polytope, placing
/// the chamber on host facet 0 through the lexicographically least lattice
/// isomorphism, and extends each gluing across the adjacent host facets.
pub fn thicken(m: &CornerComplex) -> Result<Thickened, CornersError> {
    if !m.facets().is_empty() {
        return Err(CornersError::NotClosed(m.facets().len()));
    }
    let kind = m.chamber(0).name().to_string();
    if let Some(other) = m.chambers().iter().find(|p| p.name() != kind) {
        return Err(CornersError::NoHost(other.name().to_string()));
    }
    let host_name = host_polytope(&kind).ok_or_else(|| CornersError::NoHost(kind.clone()))?;
    let host = catalog::load(host_name)?;
    let x = m.chamber(0);
    let n = m.dim();
    let base = FaceRef::new(n, 0);
    let place = face_isomorphisms(x, x.top(), &host, base)
        .into_iter()
        .next()
        .ok_or(PolytopeError::NoExtension { src: x.top(), dst: base })?;

    let lift = |facet: u32| -> (FaceRef, u32) {
        let ridge = place.map_face(x, &host, FaceRef::new(n - 1, facet as usize)).expect("placement is a lattice iso");
        let side = host
            .facets_containing(ridge)
            .iter()
            .copied()
            .find(|&f| f != 0)
            .expect("a ridge lies on two facets");
        (ridge, side)
    };
    let mut gluings = Vec::with_capacity(m.gluings().len());
    for g in m.gluings() {
        let (fa, a) = lift(g.a.facet);
        let (fb, b) = lift(g.b.facet);
        let map = g
            .iso
            .vertex_map
            .iter()
            .map(|&(s, t)| (place.image_vertex(s).expect("vertex"), place.image_vertex(t).expect("vertex")))
            .collect();
        let ridge_iso = FaceIso::new(fa, fb, map);
        let a_face = FaceRef::new(n, a as usize);
        let b_face = FaceRef::new(n, b as usize);
        let iso = extend_facet_iso(&ridge_iso, &host, a_face, &host, b_face)?;
        gluings.push(Gluing {
            a: Slot { chamber: g.a.chamber, facet: a },
            b: Slot { chamber: g.b.chamber, facet: b },
            iso,
        });
    }
    let complex = CornerComplex::build(vec![host.clone(); m.chambers().len()], gluings)?;
    let m_facet = complex.facet_of_slot(Slot::new(0, 0)).expect("host facet 0 stays on the boundary");
    Ok(Thickened { complex, m_facet })
}

#[derive(Clone, Debug)]
pub struct Mirrored {
    pub complex: CornerComplex,
    /// The facet involution swapping the two copies.
    pub involution: Vec<u32>,
    /// Chambers per copy; chamber `c` of the original is `c` and `c + half`.
    pub half: usize,
    /// Slots of the mirror facet in the first copy.
    pub mirror_slots: Vec<Slot>,
}

impl Mirrored {
    /// 0 for the first copy, 1 for the second.
    pub fn side_of_chamber(&self, c: usize) -> usize {
        usize::from(c >= self.half)
    }

    pub fn side_of_facet(&self, f: u32) -> usize {
        self.side_of_chamber(self.complex.facets()[f as usize].slots[0].chamber as usize)
    }

    /// The same chamber in the other copy.
    pub fn partner_chamber(&self, c: usize) -> usize {
        if c >= self.half {
            c - self.half
        } else {
            c + self.half
        }
    }
}

/// Doubles `w` along the isolated facet `facet`.
pub fn mirror(w: &CornerComplex, facet: u32) -> Result<Mirrored, CornersError> {
    let f = w.facets().get(facet as usize).ok_or(CornersError::NotIsolated(facet))?;
    if !f.isolated {
        return Err(CornersError::NotIsolated(facet));
    }
    let half = w.chambers().len();
    let shift = |s: Slot| Slot { chamber: s.chamber + half as u32, facet: s.facet };
    let mut chambers = w.chambers().to_vec();
    chambers.extend(w.chambers().iter().map(Arc::clone));
    let mut gluings = w.gluings().to_vec();
    gluings.extend(w.gluings().iter().map(|g| Gluing { a: shift(g.a), b: shift(g.b), iso: g.iso.clone() }));
    for &s in &f.slots {
        let face = FaceRef::new(w.dim() - 1, s.facet as usize);
        gluings.push(Gluing { a: s, b: shift(s), iso: FaceIso::identity(w.chamber(s.chamber as usize), face) });
    }
    let complex = CornerComplex::build(chambers, gluings)?;
    let involution = complex
        .facets()
        .iter()
        .map(|fc| {
            let s = fc.slots[0];
            let c = s.chamber as usize;
            let other = if c >= half { c - half } else { c + half };
            complex.facet_of_slot(Slot::new(other, s.facet as usize)).expect("copies have the same boundary")
        })
        .collect();
    Ok(Mirrored { complex, involution, half, mirror_slots: f.slots.clone() })
}

/// Number of facets of the mirrored 4-dimensional complex obtained from a
/// closed 3-manifold tessellated by `n` right-angled dodecahedra.
pub fn facet_count_prediction(n: u64) -> u64 {
    167 * n
}
