//! Combinatorial face lattices of right-angled polytopes.
//!
//! A [`Polytope`] stores its faces graded by dimension, with dense ids per
//! dimension. The single face of dimension `dim` is the polytope itself.
//! Faces are identified by their vertex sets, which is sound for the face
//! lattice of any convex polytope.

pub mod catalog;
mod flags;
mod iso;
mod lattice_file;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use flags::Flag;
pub use iso::{extend_facet_iso, face_isomorphisms, orientation_sign, FaceIso};
pub use lattice_file::{parse_lattice, write_lattice};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("unknown catalog polytope `{0}`")]
    UnknownCatalog(String),
    #[error("malformed face lattice: {0}")]
    Malformed(String),
    #[error("diamond property fails at {face} over {sub}: {count} intermediate faces")]
    Diamond { face: FaceRef, sub: FaceRef, count: usize },
    #[error("catalog entry `{name}` has f-vector {found:?}, expected {expected:?}")]
    FVector { name: String, found: Vec<usize>, expected: Vec<usize> },
    #[error("invalid face isomorphism: {0}")]
    InvalidIso(String),
    #[error("no isomorphism {src} -> {dst} extends the given facet map")]
    NoExtension { src: FaceRef, dst: FaceRef },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("io error reading `{path}`: {msg}")]
    Io { path: String, msg: String },
}

/// A face of a polytope: dimension plus dense id within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub dim: u8,
    pub id: u32,
}

impl FaceRef {
    pub fn new(dim: usize, id: usize) -> Self {
        FaceRef { dim: dim as u8, id: id as u32 }
    }
    pub fn dim(self) -> usize {
        self.dim as usize
    }
    pub fn idx(self) -> usize {
        self.id as usize
    }
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-face {}", self.dim, self.id)
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Face {
    /// Ids of the covered faces one dimension down.
    pub subs: Vec<u32>,
    /// Ids of the covering faces one dimension up.
    pub sups: Vec<u32>,
    /// Sorted vertex ids.
    pub vertices: Vec<u32>,
}

/// Flag-based orientation data, computed once at load.
#[derive(Clone, Debug, Default)]
pub(crate) struct OrientationTable {
    pub reference: Vec<Vec<Flag>>,
    pub parity: Vec<Vec<HashMap<Flag, bool>>>,
    /// `incidence[d][id][k]` is the sign of `subs[k]` in the boundary of face `(d, id)`.
    pub incidence: Vec<Vec<Vec<i8>>>,
}

/// Immutable face lattice. Cheap to share behind an `Arc`.
#[derive(Clone, Debug)]
pub struct Polytope {
    name: String,
    dim: usize,
    pub(crate) faces: Vec<Vec<Face>>,
    by_vertices: HashMap<Vec<u32>, FaceRef>,
    facets_containing: Vec<Vec<Vec<u32>>>,
    offsets: Vec<usize>,
    pub(crate) orient: OrientationTable,
}

impl Polytope {
    /// Builds a lattice from covering pairs `(d, face, sub)` meaning the
    /// `d`-face `face` covers the `(d-1)`-face `sub`. `counts[d]` is the
    /// number of `d`-faces for `d < dim`; the top face is implicit when
    /// no pair mentions it.
    pub fn from_covering(
        name: &str,
        dim: usize,
        counts: &[usize],
        pairs: &[(usize, u32, u32)],
    ) -> Result<Self, PolytopeError> {
        if dim == 0 || counts.len() != dim {
            return Err(PolytopeError::Malformed(format!(
                "dimension {dim} with {} face counts",
                counts.len()
            )));
        }
        let mut faces: Vec<Vec<Face>> = counts
            .iter()
            .map(|&c| vec![Face::default(); c])
            .chain(std::iter::once(vec![Face::default(); 1]))
            .collect();
        let mut top_mentioned = false;
        for &(d, f, s) in pairs {
            if d == 0 || d > dim {
                return Err(PolytopeError::Malformed(format!("covering pair in dimension {d}")));
            }
            if d == dim {
                top_mentioned = true;
            }
            if f as usize >= faces[d].len() || s as usize >= faces[d - 1].len() {
                return Err(PolytopeError::Malformed(format!("face id out of range in `{d} {f} {s}`")));
            }
            faces[d][f as usize].subs.push(s);
            faces[d - 1][s as usize].sups.push(f);
        }
        if !top_mentioned {
            for s in 0..faces[dim - 1].len() as u32 {
                faces[dim][0].subs.push(s);
                faces[dim - 1][s as usize].sups.push(0);
            }
        }
        for level in faces.iter_mut() {
            for face in level.iter_mut() {
                face.subs.sort_unstable();
                face.sups.sort_unstable();
                let before = face.subs.len();
                face.subs.dedup();
                if face.subs.len() != before {
                    return Err(PolytopeError::Malformed("duplicate covering pair".into()));
                }
                face.sups.dedup();
            }
        }
        for (d, level) in faces.iter().enumerate() {
            for (i, face) in level.iter().enumerate() {
                if d > 0 && face.subs.is_empty() {
                    return Err(PolytopeError::Malformed(format!("{d}-face {i} covers nothing")));
                }
                if d < dim && face.sups.is_empty() {
                    return Err(PolytopeError::Malformed(format!("{d}-face {i} is not covered")));
                }
            }
        }
        for (v, face) in faces[0].iter_mut().enumerate() {
            face.vertices = vec![v as u32];
        }
        for d in 1..=dim {
            for i in 0..faces[d].len() {
                let mut verts: Vec<u32> = faces[d][i]
                    .subs
                    .iter()
                    .flat_map(|&s| faces[d - 1][s as usize].vertices.iter().copied())
                    .collect();
                verts.sort_unstable();
                verts.dedup();
                faces[d][i].vertices = verts;
            }
        }
        let mut by_vertices = HashMap::new();
        for (d, level) in faces.iter().enumerate() {
            for (i, face) in level.iter().enumerate() {
                if by_vertices.insert(face.vertices.clone(), FaceRef::new(d, i)).is_some() {
                    return Err(PolytopeError::Malformed(format!(
                        "two faces share the vertex set {:?}",
                        face.vertices
                    )));
                }
            }
        }
        let mut offsets = Vec::with_capacity(dim + 2);
        let mut acc = 0;
        for level in &faces {
            offsets.push(acc);
            acc += level.len();
        }
        offsets.push(acc);
        let mut poly = Polytope {
            name: name.to_string(),
            dim,
            faces,
            by_vertices,
            facets_containing: Vec::new(),
            offsets,
            orient: OrientationTable::default(),
        };
        poly.check_diamond()?;
        poly.facets_containing = poly.compute_facets_containing();
        poly.orient = flags::orientation_table(&poly);
        Ok(poly)
    }

    fn check_diamond(&self) -> Result<(), PolytopeError> {
        for d in 1..=self.dim {
            for (i, face) in self.faces[d].iter().enumerate() {
                if d == 1 {
                    if face.subs.len() != 2 {
                        return Err(PolytopeError::Diamond {
                            face: FaceRef::new(1, i),
                            sub: FaceRef::new(0, face.subs[0] as usize),
                            count: face.subs.len(),
                        });
                    }
                    continue;
                }
                let mut count: HashMap<u32, usize> = HashMap::new();
                for &s in &face.subs {
                    for &ss in &self.faces[d - 1][s as usize].subs {
                        *count.entry(ss).or_default() += 1;
                    }
                }
                for (ss, c) in count {
                    if c != 2 {
                        return Err(PolytopeError::Diamond {
                            face: FaceRef::new(d, i),
                            sub: FaceRef::new(d - 2, ss as usize),
                            count: c,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_facets_containing(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.dim;
        let mut out: Vec<Vec<Vec<u32>>> = self.faces.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for facet in 0..self.faces[n - 1].len() {
            for f in self.subfaces(FaceRef::new(n - 1, facet)) {
                out[f.dim()][f.idx()].push(facet as u32);
            }
        }
        for level in out.iter_mut() {
            for v in level.iter_mut() {
                v.sort_unstable();
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn top(&self) -> FaceRef {
        FaceRef::new(self.dim, 0)
    }

    /// Number of faces in each dimension below the top.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces[..self.dim].iter().map(Vec::len).collect()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces[dim].len()
    }

    pub fn facet_count(&self) -> usize {
        self.faces[self.dim - 1].len()
    }

    pub fn subs(&self, f: FaceRef) -> &[u32] {
        &self.faces[f.dim()][f.idx()].subs
    }

    pub fn sups(&self, f: FaceRef) -> &[u32] {
        &self.faces[f.dim()][f.idx()].sups
    }

    pub fn vertices(&self, f: FaceRef) -> &[u32] {
        &self.faces[f.dim()][f.idx()].vertices
    }

    /// Looks a face up by its (sorted) vertex set.
    pub fn face_with_vertices(&self, verts: &[u32]) -> Option<FaceRef> {
        self.by_vertices.get(verts).copied()
    }

    /// Facets (codimension-1 faces) containing `f`, sorted.
    pub fn facets_containing(&self, f: FaceRef) -> &[u32] {
        &self.facets_containing[f.dim()][f.idx()]
    }

    pub fn contains(&self, big: FaceRef, small: FaceRef) -> bool {
        if small.dim > big.dim {
            return false;
        }
        let bv = self.vertices(big);
        self.vertices(small).iter().all(|v| bv.binary_search(v).is_ok())
    }

    /// All faces contained in `f`, including `f` itself, ordered by dimension then id.
    pub fn subfaces(&self, f: FaceRef) -> Vec<FaceRef> {
        let mut out = Vec::new();
        let mut level = vec![f.id];
        let mut d = f.dim();
        loop {
            level.sort_unstable();
            level.dedup();
            out.extend(level.iter().map(|&i| FaceRef::new(d, i as usize)));
            if d == 0 {
                break;
            }
            level = level
                .iter()
                .flat_map(|&i| self.faces[d][i as usize].subs.iter().copied())
                .collect();
            d -= 1;
        }
        out.sort_unstable();
        out
    }

    /// Dense index of a face across all dimensions.
    pub fn flat_index(&self, f: FaceRef) -> usize {
        self.offsets[f.dim()] + f.idx()
    }

    pub fn total_faces(&self) -> usize {
        self.offsets[self.dim + 1]
    }

    pub fn face_at_flat(&self, i: usize) -> FaceRef {
        let d = self.offsets.partition_point(|&o| o <= i) - 1;
        FaceRef::new(d, i - self.offsets[d])
    }

    /// Signed incidence of the covered face `sub` in the boundary of `face`.
    pub fn incidence(&self, face: FaceRef, sub: u32) -> i8 {
        let k = self.subs(face).binary_search(&sub).expect("not a covering pair");
        self.orient.incidence[face.dim()][face.idx()][k]
    }

    /// Reference flag of `f`, which fixes its orientation.
    pub fn reference_flag(&self, f: FaceRef) -> &Flag {
        &self.orient.reference[f.dim()][f.idx()]
    }

    /// Two faces sharing a codimension-2 face `ridge` inside `within`: the
    /// faces of dimension `ridge.dim + 1` between them.
    pub fn between(&self, ridge: FaceRef, within: FaceRef) -> Vec<u32> {
        self.sups(ridge)
            .iter()
            .copied()
            .filter(|&g| self.subs(within).binary_search(&g).is_ok())
            .collect()
    }

    /// Same combinatorial type at the lattice level (cheap test: f-vectors).
    pub fn same_f_vector(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.f_vector() == other.f_vector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_diamond() {
        // a "polygon" whose edges share no vertices properly
        let pairs = [(1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 2, 3)];
        let err = Polytope::from_covering("bad", 2, &[4, 3], &pairs).unwrap_err();
        assert!(matches!(err, PolytopeError::Diamond { .. }), "{err}");
    }

    #[test]
    fn subfaces_of_square() {
        let pairs = [(1, 0, 0), (1, 0, 1), (1, 1, 1), (1, 1, 2), (1, 2, 2), (1, 2, 3), (1, 3, 3), (1, 3, 0)];
        let sq = Polytope::from_covering("square", 2, &[4, 4], &pairs).unwrap();
        assert_eq!(sq.subfaces(sq.top()).len(), 9);
        assert_eq!(sq.subfaces(FaceRef::new(1, 2)).len(), 3);
        assert_eq!(sq.facets_containing(FaceRef::new(0, 0)), &[0, 3]);
        assert_eq!(sq.face_at_flat(sq.flat_index(FaceRef::new(1, 3))), FaceRef::new(1, 3));
    }
}
