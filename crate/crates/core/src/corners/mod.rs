//! Manifolds with right-angled corners presented as glued polytopes.
//!
//! A [`CornerComplex`] is a finite set of chambers (catalog polytopes) with
//! some facet pairs glued by face isomorphisms. Gluing a facet identifies all
//! of its subfaces, so the quotient faces (strata) are the classes of germs
//! `(chamber, face)` under these identifications.

mod tessellation;
mod thicken;
mod uf;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::polytope::{orientation_sign, FaceIso, FaceRef, Polytope, PolytopeError};

pub use tessellation::{parse_tessellation, write_tessellation, GluingSpec, Tessellation};
pub use thicken::{facet_count_prediction, host_polytope, mirror, thicken, Mirrored, Thickened};
pub(crate) use uf::SignedUnionFind;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CornersError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("a corner complex needs at least one chamber")]
    Empty,
    #[error("chamber {0} does not exist")]
    NoChamber(usize),
    #[error("{0}-dimensional chamber among {1}-dimensional ones")]
    Dimension(usize, usize),
    #[error("slot {0} is not a facet of its chamber")]
    NoFacet(Slot),
    #[error("slot {0} is glued more than once")]
    SlotReused(Slot),
    #[error("slot {0} is glued to itself")]
    SelfGlued(Slot),
    #[error("gluing {a} -> {b}: {msg}")]
    GluingMismatch { a: Slot, b: Slot, msg: String },
    #[error("local model violated at {stratum}: {detail}")]
    LocalModel { stratum: String, detail: String },
    #[error("{0} is identified with itself by an orientation-reversing map")]
    OrientationConflict(String),
    #[error("facet {0} is not isolated")]
    NotIsolated(u32),
    #[error("complex has {0} boundary facets; a closed complex is required")]
    NotClosed(usize),
    #[error("no host polytope for chambers of type `{0}`")]
    NoHost(String),
    #[error("tessellation line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// A facet of one chamber, `chamber.facet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub chamber: u32,
    pub facet: u32,
}

impl Slot {
    pub fn new(chamber: usize, facet: usize) -> Self {
        Slot { chamber: chamber as u32, facet: facet as u32 }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.chamber, self.facet)
    }
}

/// A face of a single chamber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    pub chamber: u32,
    pub face: FaceRef,
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chamber {} {}", self.chamber, self.face)
    }
}

/// `a` glued to `b`; `iso` maps the facet of `a` onto the facet of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub a: Slot,
    pub b: Slot,
    pub iso: FaceIso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RidgeKind {
    Interior,
    /// Two boundary facets meet at a right angle.
    Corner,
    /// The boundary continues straight through two chambers.
    Flat,
}

#[derive(Clone, Debug)]
pub struct Stratum {
    pub dim: usize,
    /// Sorted; the first germ is the representative whose reference
    /// orientation orients the stratum.
    pub germs: Vec<Germ>,
    /// Boundary facets containing the stratum, sorted.
    pub facets: Vec<u32>,
    pub ridge: Option<RidgeKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub id: u32,
    pub slots: Vec<Slot>,
    pub isolated: bool,
    pub embedded: bool,
}

#[derive(Clone, Debug)]
pub struct CornerComplex {
    dim: usize,
    chambers: Vec<Arc<Polytope>>,
    gluings: Vec<Gluing>,
    glued: HashMap<Slot, usize>,
    offsets: Vec<usize>,
    strata: Vec<Stratum>,
    germ_stratum: Vec<u32>,
    germ_sign: Vec<i8>,
    facets: Vec<Facet>,
    slot_facet: HashMap<Slot, u32>,
    adjacency: Vec<(u32, u32)>,
}

impl CornerComplex {
    pub fn build(chambers: Vec<Arc<Polytope>>, gluings: Vec<Gluing>) -> Result<Self, CornersError> {
        let dim = chambers.first().ok_or(CornersError::Empty)?.dim();
        if let Some(bad) = chambers.iter().find(|p| p.dim() != dim) {
            return Err(CornersError::Dimension(bad.dim(), dim));
        }
        let mut glued = HashMap::new();
        for (k, g) in gluings.iter().enumerate() {
            for slot in [g.a, g.b] {
                let p = chambers.get(slot.chamber as usize).ok_or(CornersError::NoChamber(slot.chamber as usize))?;
                if slot.facet as usize >= p.facet_count() {
                    return Err(CornersError::NoFacet(slot));
                }
                if glued.insert(slot, k).is_some() {
                    return Err(if g.a == g.b { CornersError::SelfGlued(slot) } else { CornersError::SlotReused(slot) });
                }
            }
            let mismatch = |msg: String| CornersError::GluingMismatch { a: g.a, b: g.b, msg };
            if g.iso.src != FaceRef::new(dim - 1, g.a.facet as usize) || g.iso.dst != FaceRef::new(dim - 1, g.b.facet as usize) {
                return Err(mismatch("iso does not run between the two slots".into()));
            }
            g.iso
                .validate(&chambers[g.a.chamber as usize], &chambers[g.b.chamber as usize])
                .map_err(|e| mismatch(e.to_string()))?;
        }

        let mut offsets = Vec::with_capacity(chambers.len() + 1);
        let mut total = 0;
        for p in &chambers {
            offsets.push(total);
            total += p.total_faces();
        }
        offsets.push(total);
        let germ_id = |g: Germ| offsets[g.chamber as usize] + chambers[g.chamber as usize].flat_index(g.face);

        let mut uf = SignedUnionFind::new(total);
        for g in &gluings {
            let pa = &chambers[g.a.chamber as usize];
            let pb = &chambers[g.b.chamber as usize];
            for sub in pa.subfaces(g.iso.src) {
                let r = g.iso.restrict(pa, pb, sub).expect("validated iso");
                let sign = orientation_sign(&r, pa, pb)?;
                let x = germ_id(Germ { chamber: g.a.chamber, face: sub });
                let y = germ_id(Germ { chamber: g.b.chamber, face: r.dst });
                if !uf.union(x, y, sign) {
                    return Err(CornersError::OrientationConflict(format!(
                        "the stratum of chamber {} {}",
                        g.a.chamber, sub
                    )));
                }
            }
        }

        let germ_at = |id: usize| {
            let c = offsets.partition_point(|&o| o <= id) - 1;
            Germ { chamber: c as u32, face: chambers[c].face_at_flat(id - offsets[c]) }
        };
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for id in 0..total {
            classes.entry(uf.find(id).0).or_default().push(id);
        }
        let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        classes.sort_by_key(|c| (germ_at(c[0]).face.dim, c[0]));

        let mut germ_stratum = vec![0u32; total];
        let mut germ_sign = vec![1i8; total];
        let mut strata = Vec::with_capacity(classes.len());
        for (sid, class) in classes.iter().enumerate() {
            let rep_sign = uf.find(class[0]).1;
            for &id in class {
                germ_stratum[id] = sid as u32;
                germ_sign[id] = uf.find(id).1 * rep_sign;
            }
            let germs: Vec<Germ> = class.iter().map(|&id| germ_at(id)).collect();
            strata.push(Stratum { dim: germs[0].face.dim(), germs, facets: Vec::new(), ridge: None });
        }

        let mut cx = CornerComplex {
            dim,
            chambers,
            gluings,
            glued,
            offsets,
            strata,
            germ_stratum,
            germ_sign,
            facets: Vec::new(),
            slot_facet: HashMap::new(),
            adjacency: Vec::new(),
        };
        cx.check_local_models()?;
        cx.assemble_facets();
        Ok(cx)
    }

    /// Boundary slots among the facets of the germ's chamber containing it.
    fn open_slots(&self, g: Germ) -> impl Iterator<Item = Slot> + '_ {
        self.chambers[g.chamber as usize]
            .facets_containing(g.face)
            .iter()
            .map(move |&f| Slot { chamber: g.chamber, facet: f })
            .filter(|s| !self.glued.contains_key(s))
    }

    fn check_local_models(&mut self) -> Result<(), CornersError> {
        let n = self.dim;
        for sid in 0..self.strata.len() {
            let st = &self.strata[sid];
            let violation = |detail: String| CornersError::LocalModel {
                stratum: format!("{}-stratum {} ({})", st.dim, sid, st.germs[0]),
                detail,
            };
            if st.dim + 1 == n && st.germs.len() > 2 {
                return Err(violation(format!("{} chambers share a facet", st.germs.len())));
            }
            if st.dim + 2 != n {
                continue;
            }
            let open: usize = st.germs.iter().map(|&g| self.open_slots(g).count()).sum();
            let kind = match (open, st.germs.len()) {
                (0, 4) => RidgeKind::Interior,
                (2, 1) => RidgeKind::Corner,
                (2, 2) => RidgeKind::Flat,
                (0, k) => return Err(violation(format!("{k} chambers around an interior ridge"))),
                (o, k) => return Err(violation(format!("{k} chambers and {o} boundary facet germs around a boundary ridge"))),
            };
            self.strata[sid].ridge = Some(kind);
        }
        Ok(())
    }

    fn assemble_facets(&mut self) {
        let n = self.dim;
        let mut open: Vec<Slot> = Vec::new();
        for (c, p) in self.chambers.iter().enumerate() {
            for f in 0..p.facet_count() {
                let s = Slot::new(c, f);
                if !self.glued.contains_key(&s) {
                    open.push(s);
                }
            }
        }
        let index: HashMap<Slot, usize> = open.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = SignedUnionFind::new(open.len());
        let mut corners = Vec::new();
        for st in &self.strata {
            if st.dim + 2 != n {
                continue;
            }
            let slots: Vec<Slot> = st.germs.iter().flat_map(|&g| self.open_slots(g)).collect();
            match st.ridge {
                Some(RidgeKind::Flat) => {
                    uf.union(index[&slots[0]], index[&slots[1]], 1);
                }
                Some(RidgeKind::Corner) => corners.push((slots[0], slots[1])),
                _ => {}
            }
        }
        let mut groups: HashMap<usize, Vec<Slot>> = HashMap::new();
        for (i, &s) in open.iter().enumerate() {
            groups.entry(uf.find(i).0).or_default().push(s);
        }
        let mut groups: Vec<Vec<Slot>> = groups.into_values().collect();
        groups.sort();
        for (fid, slots) in groups.iter().enumerate() {
            for &s in slots {
                self.slot_facet.insert(s, fid as u32);
            }
        }
        let pairs: BTreeSet<(u32, u32)> = corners
            .iter()
            .map(|(a, b)| {
                let (x, y) = (self.slot_facet[a], self.slot_facet[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        self.adjacency = pairs.into_iter().collect();
        self.facets = groups
            .into_iter()
            .enumerate()
            .map(|(fid, slots)| {
                let fid = fid as u32;
                Facet {
                    id: fid,
                    slots,
                    isolated: !self.adjacency.iter().any(|&(x, y)| x == fid || y == fid),
                    embedded: !self.adjacency.contains(&(fid, fid)),
                }
            })
            .collect();
        for sid in 0..self.strata.len() {
            let mut fs: Vec<u32> = self.strata[sid]
                .germs
                .iter()
                .flat_map(|&g| self.open_slots(g))
                .map(|s| self.slot_facet[&s])
                .collect();
            fs.sort_unstable();
            fs.dedup();
            self.strata[sid].facets = fs;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn chambers(&self) -> &[Arc<Polytope>] {
        &self.chambers
    }

    pub fn chamber(&self, c: usize) -> &Polytope {
        &self.chambers[c]
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    /// The gluing at `slot`, oriented so that it maps out of `slot`.
    pub fn partner(&self, slot: Slot) -> Option<(Slot, FaceIso)> {
        let g = &self.gluings[*self.glued.get(&slot)?];
        Some(if g.a == slot { (g.b, g.iso.clone()) } else { (g.a, g.iso.inverse()) })
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Stratum of a germ and the sign of the germ's reference orientation
    /// relative to that of the stratum.
    pub fn stratum_of(&self, g: Germ) -> (u32, i8) {
        let id = self.offsets[g.chamber as usize] + self.chambers[g.chamber as usize].flat_index(g.face);
        (self.germ_stratum[id], self.germ_sign[id])
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_of_slot(&self, s: Slot) -> Option<u32> {
        self.slot_facet.get(&s).copied()
    }

    /// Corner ridges along which facet `fid` meets itself, as the two open
    /// slots on either side.
    pub fn self_contacts(&self, fid: u32) -> Vec<(Slot, Slot)> {
        let n = self.dim;
        self.strata
            .iter()
            .filter(|st| st.dim + 2 == n && st.ridge == Some(RidgeKind::Corner))
            .filter_map(|st| {
                let slots: Vec<Slot> = st.germs.iter().flat_map(|&g| self.open_slots(g)).collect();
                let (a, b) = (slots[0], slots[1]);
                (self.slot_facet[&a] == fid && self.slot_facet[&b] == fid).then_some((a, b))
            })
            .collect()
    }

    /// Pairs of facets meeting at a corner ridge, `(min, max)`, sorted; a
    /// pair `(f, f)` marks a self-adjacent facet.
    pub fn adjacent_pairs(&self) -> &[(u32, u32)] {
        &self.adjacency
    }

    pub fn total_germs(&self) -> usize {
        *self.offsets.last().expect("offsets end with the total")
    }

    /// Alternating count of strata.
    pub fn euler_characteristic(&self) -> i64 {
        self.strata.iter().map(|s| if s.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn strata_count(&self, dim: usize) -> usize {
        self.strata.iter().filter(|s| s.dim == dim).count()
    }
}
