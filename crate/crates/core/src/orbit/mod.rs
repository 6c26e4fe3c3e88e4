//! The closed manifold `(W × Z_2^k)/~` obtained from a corner complex `W`
//! and a generalised colouring, as a cellular chain complex.
//!
//! A cell is a stratum of `W` together with a coset of the subgroup
//! spanned by the colours of the boundary facets containing it.

mod dump;
mod separation;

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::colouring::{validate_generalised, GeneralisedColouring, Violation};
use crate::corners::{CornerComplex, CornersError, Germ, Gluing, SignedUnionFind, Slot};
use crate::homology::{ChainComplex, HomologyError, SparseIntMatrix};
use crate::polytope::{FaceIso, FaceRef};

pub use dump::{parse_dump, write_dump};
pub use separation::{separation_check, SeparationReport};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("invalid colouring: {0}")]
    Colouring(#[from] Violation),
    #[error("{0} colours is more than this implementation supports")]
    TooManyColours(usize),
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquare(usize),
    #[error("quotient has {0} connected components")]
    Disconnected(usize),
    #[error("colouring is not symmetric under the mirror involution")]
    NotSymmetric,
    #[error(transparent)]
    Corners(#[from] CornersError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("dump line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Reduced row echelon basis of a subspace of `Z_2^k`, pivots at the
/// highest bit of each row.
#[derive(Clone, Debug, Default)]
pub(crate) struct Subspace {
    rows: Vec<u64>,
    pivots: u64,
}

impl Subspace {
    pub fn span(k: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Subspace::default();
        for v in vectors {
            let v = s.reduce(v);
            if v == 0 {
                continue;
            }
            let p = 63 - v.leading_zeros();
            for r in s.rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
            s.rows.push(v);
            s.pivots |= 1 << p;
        }
        debug_assert!(s.pivots >> k == 0 || k == 64);
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The least element of the coset `u + span`.
    pub fn reduce(&self, mut u: u64) -> u64 {
        for &r in &self.rows {
            if u >> (63 - r.leading_zeros()) & 1 == 1 {
                u ^= r;
            }
        }
        u
    }

    /// Position of a reduced coset representative among all cosets.
    pub fn index(&self, k: usize, reduced: u64) -> usize {
        let mut out = 0usize;
        let mut j = 0;
        for b in 0..k {
            if self.pivots >> b & 1 == 0 {
                out |= ((reduced >> b & 1) as usize) << j;
                j += 1;
            }
        }
        out
    }

    pub fn from_index(&self, k: usize, index: usize) -> u64 {
        let mut out = 0u64;
        let mut j = 0;
        for b in 0..k {
            if self.pivots >> b & 1 == 0 {
                out |= ((index >> j & 1) as u64) << b;
                j += 1;
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub stratum: u32,
    /// Least element of the coset.
    pub coset: u64,
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    k: usize,
    cells: Vec<Vec<Cell>>,
    first: Vec<usize>,
    stabs: Vec<Subspace>,
    chain: ChainComplex,
    /// Per degree `d >= 1`, every `(row, col)` incidence before signed
    /// multiplicities were summed.
    touches: Vec<Vec<(u32, u32)>>,
}

impl QuotientComplex {
    pub fn dim(&self) -> usize {
        self.chain.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        &self.cells[d]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }

    /// Index within its degree of the cell `(stratum, u + stab)`.
    pub fn cell_index(&self, stratum: u32, u: u64) -> usize {
        let s = &self.stabs[stratum as usize];
        self.first[stratum as usize] + s.index(self.k, s.reduce(u))
    }

    pub(crate) fn touches(&self, d: usize) -> &[(u32, u32)] {
        &self.touches[d - 1]
    }

    /// Signs `±1` on the top cells forming a cycle, if one exists with every
    /// coefficient nonzero; `None` when the quotient is not orientable.
    pub fn orientation_cycle(&self) -> Option<Vec<i8>> {
        let n = self.dim();
        let top = self.cells[n].len();
        let mut by_row: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.cells[n - 1].len()];
        let mut by_col: Vec<Vec<u32>> = vec![Vec::new(); top];
        for &(r, c, v) in self.chain.boundary(n).entries() {
            by_row[r as usize].push((c, v));
            by_col[c as usize].push(r);
        }
        let mut sign = vec![0i8; top];
        for start in 0..top {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                for &r in &by_col[c] {
                    let row = &by_row[r as usize];
                    if row.len() != 2 {
                        return None;
                    }
                    let (a, b) = (row[0], row[1]);
                    let (me, other) = if a.0 as usize == c { (a, b) } else { (b, a) };
                    if me.1.abs() != 1 || other.1.abs() != 1 {
                        return None;
                    }
                    // s_me·v_me + s_other·v_other = 0
                    let want = (-i64::from(sign[c]) * me.1 * other.1) as i8;
                    match sign[other.0 as usize] {
                        0 => {
                            sign[other.0 as usize] = want;
                            stack.push(other.0 as usize);
                        }
                        s if s != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sign)
    }
}

fn stratum_subspaces(cx: &CornerComplex, rho: &GeneralisedColouring) -> Vec<Subspace> {
    cx.strata()
        .iter()
        .map(|s| Subspace::span(rho.m, s.facets.iter().map(|&f| rho.vectors[f as usize])))
        .collect()
}

/// Builds the quotient and checks `∂∘∂ = 0` and connectivity.
pub fn build_quotient(cx: &CornerComplex, rho: &GeneralisedColouring) -> Result<QuotientComplex, OrbitError> {
    if rho.m > 30 {
        return Err(OrbitError::TooManyColours(rho.m));
    }
    validate_generalised(rho, cx)?;
    let k = rho.m;
    let n = cx.dim();
    let stabs = stratum_subspaces(cx, rho);
    let mut first = vec![0usize; cx.strata().len()];
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); n + 1];
    for (sid, st) in cx.strata().iter().enumerate() {
        let s = &stabs[sid];
        first[sid] = cells[st.dim].len();
        for i in 0..1usize << (k - s.rank()) {
            cells[st.dim].push(Cell { stratum: sid as u32, coset: s.from_index(k, i) });
        }
    }
    let mut boundary = Vec::with_capacity(n);
    let mut touches = Vec::with_capacity(n);
    for d in 1..=n {
        let triplets: Vec<(u32, u32, i64)> = cx
            .strata()
            .par_iter()
            .enumerate()
            .filter(|(_, st)| st.dim == d)
            .flat_map_iter(|(sid, st)| {
                let rep = st.germs[0];
                let p = cx.chamber(rep.chamber as usize);
                let faces: Vec<(u32, i64)> = p
                    .subs(rep.face)
                    .iter()
                    .map(|&g| {
                        let (t, e) = cx.stratum_of(Germ { chamber: rep.chamber, face: FaceRef::new(d - 1, g as usize) });
                        (t, i64::from(p.incidence(rep.face, g)) * i64::from(e))
                    })
                    .collect();
                let s = &stabs[sid];
                let (stabs, first) = (&stabs, &first);
                (0..1usize << (k - s.rank())).flat_map(move |i| {
                    let u = s.from_index(k, i);
                    let col = (first[sid] + i) as u32;
                    faces.clone().into_iter().map(move |(t, v)| {
                        let ts = &stabs[t as usize];
                        let row = first[t as usize] + ts.index(k, ts.reduce(u));
                        (row as u32, col, v)
                    })
                })
            })
            .collect();
        let mut pairs: Vec<(u32, u32)> = triplets.iter().map(|&(r, c, _)| (r, c)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        touches.push(pairs);
        boundary.push(SparseIntMatrix::from_triplets(cells[d - 1].len(), cells[d].len(), triplets));
    }
    let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
    let chain = ChainComplex::new(counts, boundary)?;
    chain.check_boundary_squared().map_err(|e| match e {
        HomologyError::BoundarySquare(d) => OrbitError::BoundarySquare(d),
        other => OrbitError::Homology(other),
    })?;
    let q = QuotientComplex { k, cells, first, stabs, chain, touches };
    let comps = q.component_count(|_, _| true);
    if comps != 1 {
        return Err(OrbitError::Disconnected(comps));
    }
    Ok(q)
}

impl QuotientComplex {
    fn flat(&self, d: usize, i: usize) -> usize {
        self.cells[..d].iter().map(Vec::len).sum::<usize>() + i
    }

    /// Components of the cells accepted by `keep(dim, index)`, joined along
    /// incidences between kept cells.
    pub(crate) fn component_count(&self, keep: impl Fn(usize, usize) -> bool) -> usize {
        let total: usize = self.cells.iter().map(Vec::len).sum();
        let mut uf = SignedUnionFind::new(total);
        for d in 1..=self.dim() {
            let lo = self.flat(d - 1, 0);
            let hi = self.flat(d, 0);
            for &(r, c) in self.touches(d) {
                if keep(d - 1, r as usize) && keep(d, c as usize) {
                    uf.union(lo + r as usize, hi + c as usize, 1);
                }
            }
        }
        let mut roots = HashSet::new();
        for d in 0..=self.dim() {
            for i in 0..self.cells[d].len() {
                if keep(d, i) {
                    roots.insert(uf.find(self.flat(d, i)).0);
                }
            }
        }
        roots.len()
    }
}

/// `Σ (−1)^dim · 2^(k − rank stab)` over the strata of `cx`, which equals
/// the Euler characteristic of the quotient.
pub fn weighted_euler(cx: &CornerComplex, rho: &GeneralisedColouring) -> i64 {
    stratum_subspaces(cx, rho)
        .iter()
        .zip(cx.strata())
        .map(|(s, st)| {
            let w = 1i64 << (rho.m - s.rank());
            if st.dim % 2 == 0 {
                w
            } else {
                -w
            }
        })
        .sum()
}

/// For quotients tessellated by right-angled 120-cells, `2χ = 17 · #top cells`.
pub fn check_120cell_euler(cx: &CornerComplex, q: &QuotientComplex) -> Option<bool> {
    if cx.chambers().iter().any(|p| p.name() != "120cell") {
        return None;
    }
    Some(2 * q.euler_characteristic() == 17 * q.cells(q.dim()).len() as i64)
}

/// The quotient as a corner complex in its own right: one chamber per pair
/// `(chamber c, u ∈ Z_2^k)`, numbered `c · 2^k + u`.
pub fn orbit_complex(cx: &CornerComplex, rho: &GeneralisedColouring) -> Result<CornerComplex, OrbitError> {
    if rho.m > 20 {
        return Err(OrbitError::TooManyColours(rho.m));
    }
    validate_generalised(rho, cx)?;
    let copies = 1usize << rho.m;
    let chamber = |c: u32, u: usize| c as usize * copies + u;
    let mut gluings = Vec::new();
    for g in cx.gluings() {
        for u in 0..copies {
            gluings.push(Gluing {
                a: Slot::new(chamber(g.a.chamber, u), g.a.facet as usize),
                b: Slot::new(chamber(g.b.chamber, u), g.b.facet as usize),
                iso: g.iso.clone(),
            });
        }
    }
    for f in cx.facets() {
        let r = rho.vectors[f.id as usize] as usize;
        for &s in &f.slots {
            let face = FaceRef::new(cx.dim() - 1, s.facet as usize);
            let iso = FaceIso::identity(cx.chamber(s.chamber as usize), face);
            for u in (0..copies).filter(|&u| u < u ^ r) {
                gluings.push(Gluing {
                    a: Slot::new(chamber(s.chamber, u), s.facet as usize),
                    b: Slot::new(chamber(s.chamber, u ^ r), s.facet as usize),
                    iso: iso.clone(),
                });
            }
        }
    }
    let chambers = cx.chambers().iter().flat_map(|p| std::iter::repeat_n(p.clone(), copies)).collect();
    Ok(CornerComplex::build(chambers, gluings)?)
}

#[cfg(test)]
mod tests;
