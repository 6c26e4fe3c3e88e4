//! Facet adjacency graphs and their colourings.

mod file;
mod generalised;
mod search;

use std::collections::HashMap;

use thiserror::Error;

use crate::corners::CornerComplex;

pub use file::{parse_colouring_file, write_colouring_file, ColouringFile};
pub use generalised::{is_orientable, lift, reduce_colouring, validate_generalised, GeneralisedColouring, Violation};
pub use search::{dsatur_greedy, find_colouring, greedy_clique, SearchOutcome};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("facet {0} is adjacent to itself")]
    NotEmbedded(u32),
    #[error("colouring is not proper: facets {0} and {1} are adjacent and share colour {2}")]
    NotProper(u32, u32, u32),
    #[error("colouring has {found} entries for {expected} facets")]
    Length { found: usize, expected: usize },
    #[error("colour 0 is not allowed; colours start at 1")]
    ZeroColour,
    #[error("involution is not a fixed-point-free involution at facet {0}")]
    BadInvolution(u32),
    #[error("facets {0} and {1} are adjacent across the two sides of the involution")]
    CrossAdjacency(u32, u32),
    #[error("reduction needs an even number of colours exceeding the dimension: k = {k}, n = {n}")]
    Reduction { k: u32, n: usize },
    #[error("vector length {0} exceeds the supported 64")]
    TooWide(usize),
    #[error("colouring file line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetGraph {
    adj: Vec<Vec<u32>>,
}

impl FacetGraph {
    /// Self-loops are dropped; duplicate edges are merged.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        FacetGraph { adj }
    }

    /// The adjacency graph of the facets of `cx`; every facet must be embedded.
    pub fn of_complex(cx: &CornerComplex) -> Result<Self, ColouringError> {
        if let Some(f) = cx.facets().iter().find(|f| !f.embedded) {
            return Err(ColouringError::NotEmbedded(f.id));
        }
        Ok(FacetGraph::new(cx.facets().len(), cx.adjacent_pairs()))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| b > a as u32).map(move |&b| (a as u32, b)))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s as u32];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i] as usize;
                i += 1;
                for &u in &self.adj[v] {
                    if comp[u as usize] == usize::MAX {
                        comp[u as usize] = id;
                        members.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph on `vertices` (relabelled `0..`), with the old-to-new map.
    pub fn induced(&self, vertices: &[u32]) -> (FacetGraph, HashMap<u32, u32>) {
        let map: HashMap<u32, u32> = vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let edges: Vec<(u32, u32)> = vertices
            .iter()
            .flat_map(|&v| self.adj[v as usize].iter().map(move |u| (v, *u)))
            .filter_map(|(v, u)| Some((map[&v], *map.get(&u)?)))
            .collect();
        (FacetGraph::new(vertices.len(), &edges), map)
    }
}

/// Colours `1..=h` indexed by facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub colours: Vec<u32>,
}

impl Colouring {
    pub fn colour_count(&self) -> u32 {
        self.colours.iter().copied().max().unwrap_or(0)
    }

    pub fn check(&self, g: &FacetGraph) -> Result<(), ColouringError> {
        if self.colours.len() != g.vertex_count() {
            return Err(ColouringError::Length { found: self.colours.len(), expected: g.vertex_count() });
        }
        if self.colours.contains(&0) {
            return Err(ColouringError::ZeroColour);
        }
        match g.edges().find(|&(a, b)| self.colours[a as usize] == self.colours[b as usize]) {
            Some((a, b)) => Err(ColouringError::NotProper(a, b, self.colours[a as usize])),
            None => Ok(()),
        }
    }

    pub fn is_proper(&self, g: &FacetGraph) -> bool {
        self.check(g).is_ok()
    }

    /// Renumbers the colours in order of first appearance so that exactly
    /// `1..=h` occur.
    pub fn compacted(&self) -> Colouring {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let colours = self
            .colours
            .iter()
            .map(|&c| {
                let next = map.len() as u32 + 1;
                *map.entry(c).or_insert(next)
            })
            .collect();
        Colouring { colours }
    }

    pub fn is_symmetric(&self, involution: &[u32]) -> bool {
        involution.iter().enumerate().all(|(f, &s)| self.colours[f] == self.colours[s as usize])
    }
}

/// Turns a proper colouring of a mirrored complex into one invariant under
/// the facet involution: facets on side 0 keep their colour, each facet on
/// side 1 takes the colour of its mirror image. `side[f]` is 0 or 1.
pub fn symmetrize(
    lambda: &Colouring,
    g: &FacetGraph,
    involution: &[u32],
    side: &[usize],
) -> Result<Colouring, ColouringError> {
    lambda.check(g)?;
    for (f, &s) in involution.iter().enumerate() {
        let ok = (s as usize) < involution.len()
            && s as usize != f
            && involution[s as usize] == f as u32
            && side[f] != side[s as usize];
        if !ok {
            return Err(ColouringError::BadInvolution(f as u32));
        }
    }
    if let Some((a, b)) = g.edges().find(|&(a, b)| side[a as usize] != side[b as usize]) {
        return Err(ColouringError::CrossAdjacency(a, b));
    }
    let colours = (0..involution.len())
        .map(|f| if side[f] == 0 { lambda.colours[f] } else { lambda.colours[involution[f] as usize] })
        .collect();
    let out = Colouring { colours }.compacted();
    out.check(g)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::mirror;
    use crate::corners::CornerComplex;
    use crate::polytope::{catalog, FaceIso, FaceRef};

    fn pentagon_pair() -> CornerComplex {
        use crate::corners::{Gluing, Slot};
        let p = catalog::load("pentagon").unwrap();
        let g = |f: usize, a: u32| Gluing {
            a: Slot::new(0, f),
            b: Slot::new(1, f),
            iso: FaceIso::new(FaceRef::new(1, f), FaceRef::new(1, f), vec![(a, a), (a + 1, a + 1)]),
        };
        CornerComplex::build(vec![p.clone(), p], vec![g(0, 0), g(2, 2)]).unwrap()
    }

    #[test]
    fn pentagon_pair_graph() {
        let g = FacetGraph::of_complex(&pentagon_pair()).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(g.components(), vec![vec![0], vec![1, 2]]);
        let lambda = Colouring { colours: vec![3, 1, 2] };
        assert!(lambda.is_proper(&g));
    }

    #[test]
    fn mirrored_graph_has_two_components() {
        let w = mirror(&pentagon_pair(), 0).unwrap();
        let g = FacetGraph::of_complex(&w.complex).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn symmetrize_mirrored_pentagon_pair() {
        let w = mirror(&pentagon_pair(), 0).unwrap();
        let g = FacetGraph::of_complex(&w.complex).unwrap();
        let side: Vec<usize> = (0..4).map(|f| w.side_of_facet(f)).collect();
        let lambda = Colouring { colours: vec![1, 2, 3, 4] };
        assert!(!lambda.is_symmetric(&w.involution));
        let sym = symmetrize(&lambda, &g, &w.involution, &side).unwrap();
        assert!(sym.is_symmetric(&w.involution));
        assert!(sym.is_proper(&g));
        assert_eq!(sym.colour_count(), 2);
        // already symmetric input is unchanged up to renumbering
        assert_eq!(symmetrize(&sym, &g, &w.involution, &side).unwrap(), sym);
    }

    #[test]
    fn loops_and_duplicates_are_dropped() {
        let g = FacetGraph::new(2, &[(0, 1), (1, 1), (1, 0)]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn improper_colouring_is_rejected() {
        let g = FacetGraph::new(3, &[(0, 1), (1, 2)]);
        assert_eq!(Colouring { colours: vec![1, 2, 2] }.check(&g), Err(ColouringError::NotProper(1, 2, 2)));
        assert_eq!(Colouring { colours: vec![1, 0, 2] }.check(&g), Err(ColouringError::ZeroColour));
    }
}
