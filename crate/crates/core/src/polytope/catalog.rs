//! The built-in polytopes.
//!
//! Every entry is simple, so its faces are exactly the subsets of the facet
//! sets at its vertices. Facets keep the order of the generator; lower faces
//! are sorted lexicographically by vertex set. Generated lattices are shipped
//! as text files under `data/` and embedded at compile time; setting
//! `CORNERS_DATA` to a directory makes [`load`] read `<name>.lattice` from it
//! instead.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{parse_lattice, Polytope, PolytopeError};

pub const NAMES: [&str; 5] = ["pentagon", "hexagon", "dodecahedron", "lobell6", "120cell"];

fn expected_f_vector(name: &str) -> Option<&'static [usize]> {
    Some(match name {
        "pentagon" => &[5, 5],
        "hexagon" => &[6, 6],
        "dodecahedron" => &[20, 30, 12],
        "lobell6" => &[24, 36, 14],
        "120cell" => &[600, 1200, 720, 120],
        _ => return None,
    })
}

fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "pentagon" => include_str!("../../data/pentagon.lattice"),
        "hexagon" => include_str!("../../data/hexagon.lattice"),
        "dodecahedron" => include_str!("../../data/dodecahedron.lattice"),
        "lobell6" => include_str!("../../data/lobell6.lattice"),
        "120cell" => include_str!("../../data/120cell.lattice"),
        _ => return None,
    })
}

/// Loads a catalog polytope, caching it for the life of the process.
pub fn load(name: &str) -> Result<Arc<Polytope>, PolytopeError> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Polytope>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("catalog cache").get(name) {
        return Ok(p.clone());
    }
    let expected = expected_f_vector(name).ok_or_else(|| PolytopeError::UnknownCatalog(name.into()))?;
    let text = match std::env::var_os("CORNERS_DATA") {
        Some(dir) => {
            let path = std::path::Path::new(&dir).join(format!("{name}.lattice"));
            std::fs::read_to_string(&path).map_err(|e| PolytopeError::Io {
                path: path.display().to_string(),
                msg: e.to_string(),
            })?
        }
        None => embedded(name).expect("every catalog name is embedded").to_string(),
    };
    let p = parse_lattice(&text)?;
    if p.f_vector() != expected {
        return Err(PolytopeError::FVector {
            name: name.into(),
            found: p.f_vector(),
            expected: expected.to_vec(),
        });
    }
    let p = Arc::new(p);
    cache.lock().expect("catalog cache").insert(name.into(), p.clone());
    Ok(p)
}

/// Builds a catalog polytope from scratch.
pub fn generate(name: &str) -> Result<Polytope, PolytopeError> {
    match name {
        "pentagon" => polygon(name, 5),
        "hexagon" => polygon(name, 6),
        "dodecahedron" => dodecahedron(),
        "lobell6" => lobell(6),
        "120cell" => cell120(),
        _ => Err(PolytopeError::UnknownCatalog(name.into())),
    }
}

/// Lattice of a simple polytope given the vertex sets of its facets.
pub fn from_facets(name: &str, dim: usize, nverts: usize, facets: &[Vec<u32>]) -> Result<Polytope, PolytopeError> {
    let mut vfacets: Vec<Vec<u32>> = vec![Vec::new(); nverts];
    for (f, vs) in facets.iter().enumerate() {
        for &v in vs {
            vfacets
                .get_mut(v as usize)
                .ok_or_else(|| PolytopeError::Malformed(format!("vertex {v} out of range")))?
                .push(f as u32);
        }
    }
    let mut faces: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for (v, fs) in vfacets.iter().enumerate() {
        if fs.len() != dim {
            return Err(PolytopeError::Malformed(format!("vertex {v} lies on {} facets", fs.len())));
        }
        for mask in 0u32..(1 << dim) {
            let s: Vec<u32> = (0..dim).filter(|&k| mask >> k & 1 == 1).map(|k| fs[k]).collect();
            faces.entry(s).or_default().push(v as u32);
        }
    }
    let mut levels: Vec<Vec<(Vec<u32>, Vec<u32>)>> = vec![Vec::new(); dim + 1];
    for (s, verts) in faces {
        levels[dim - s.len()].push((verts, s));
    }
    for (d, level) in levels.iter_mut().enumerate() {
        if d + 1 == dim {
            level.sort_by_key(|(_, s)| s[0]);
        } else {
            level.sort();
        }
    }
    let index: HashMap<&[u32], u32> = levels
        .iter()
        .flat_map(|l| l.iter().enumerate().map(|(i, (_, s))| (s.as_slice(), i as u32)))
        .collect();
    let mut pairs = Vec::new();
    for (d, level) in levels.iter().enumerate().skip(1) {
        for (i, (_, s)) in level.iter().enumerate() {
            for j in 0..facets.len() as u32 {
                if s.contains(&j) {
                    continue;
                }
                let mut t = s.clone();
                t.push(j);
                t.sort_unstable();
                if let Some(&sub) = index.get(t.as_slice()) {
                    pairs.push((d, i as u32, sub));
                }
            }
        }
    }
    let counts: Vec<usize> = levels[..dim].iter().map(Vec::len).collect();
    Polytope::from_covering(name, dim, &counts, &pairs)
}

fn polygon(name: &str, n: u32) -> Result<Polytope, PolytopeError> {
    let edges: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![i, (i + 1) % n];
            e.sort_unstable();
            e
        })
        .collect();
    from_facets(name, 2, n as usize, &edges)
}

/// Löbell polyhedron R(n): two n-gons joined by two rings of n pentagons.
/// Vertices are `t_i = i`, `u_i = n + i`, `w_i = 2n + i`, `b_i = 3n + i`;
/// facets are the top n-gon, the upper pentagons, the lower pentagons and
/// the bottom n-gon, in that order.
pub fn lobell(n: u32) -> Result<Polytope, PolytopeError> {
    let t = |i: u32| i % n;
    let u = |i: u32| n + i % n;
    let w = |i: u32| 2 * n + i % n;
    let b = |i: u32| 3 * n + i % n;
    let mut facets = vec![(0..n).map(t).collect::<Vec<_>>()];
    facets.extend((0..n).map(|i| vec![t(i), t(i + 1), u(i + 1), w(i), u(i)]));
    facets.extend((0..n).map(|i| vec![b(i), b(i + 1), w(i + 1), u(i + 1), w(i)]));
    facets.push((0..n).map(b).collect());
    for f in facets.iter_mut() {
        f.sort_unstable();
    }
    from_facets(&format!("lobell{n}"), 3, 4 * n as usize, &facets)
}

const PHI: f64 = 1.618_033_988_749_895;

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn adjacency(points: &[Vec<f64>], edge2: f64) -> Vec<Vec<bool>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| (dist2(a, b) - edge2).abs() < 1e-6).collect())
        .collect()
}

/// Cliques of size `k` in increasing index order.
fn cliques(adj: &[Vec<bool>], k: usize) -> Vec<Vec<u32>> {
    fn grow(adj: &[Vec<bool>], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&l| l as usize + 1);
        for v in start..adj.len() {
            if cur.iter().all(|&c| adj[c as usize][v]) {
                cur.push(v as u32);
                grow(adj, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(adj, k, &mut Vec::new(), &mut out);
    out
}

/// Dual of a simplicial polytope whose maximal simplices are `cells`: one
/// vertex per cell, one facet per original vertex.
fn dual(name: &str, dim: usize, nverts: usize, cells: &[Vec<u32>]) -> Result<Polytope, PolytopeError> {
    let mut facets = vec![Vec::new(); nverts];
    for (c, cell) in cells.iter().enumerate() {
        for &v in cell {
            facets[v as usize].push(c as u32);
        }
    }
    from_facets(name, dim, cells.len(), &facets)
}

fn dodecahedron() -> Result<Polytope, PolytopeError> {
    let mut ico = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            let base = [0.0, s1, s2 * PHI];
            for r in 0..3 {
                ico.push((0..3).map(|k| base[(k + r) % 3]).collect::<Vec<f64>>());
            }
        }
    }
    let tris = cliques(&adjacency(&ico, 4.0), 3);
    dual("dodecahedron", 3, ico.len(), &tris)
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if distinct && inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn cell120() -> Result<Polytope, PolytopeError> {
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for i in 0..4 {
        for s in [-1.0, 1.0] {
            let mut p = vec![0.0; 4];
            p[i] = s;
            pts.push(p);
        }
    }
    for mask in 0..16 {
        pts.push((0..4).map(|k| if mask >> k & 1 == 1 { -0.5 } else { 0.5 }).collect());
    }
    for perm in even_permutations() {
        for mask in 0..8 {
            let sign = |k: usize| if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
            let base = [sign(0) * PHI / 2.0, sign(1) * 0.5, sign(2) / (2.0 * PHI), 0.0];
            pts.push(perm.iter().map(|&k| base[k]).collect());
        }
    }
    let adj = adjacency(&pts, 1.0 / (PHI * PHI));
    let tets = cliques(&adj, 4);
    dual("120cell", 4, pts.len(), &tets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{write_lattice, FaceRef};

    #[test]
    fn shipped_files_match_generators() {
        for name in NAMES {
            let generated = write_lattice(&generate(name).unwrap());
            if std::env::var_os("CORNERS_REGENERATE").is_some() {
                let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
                std::fs::write(format!("{path}/{name}.lattice"), &generated).unwrap();
                continue;
            }
            assert_eq!(generated, embedded(name).unwrap(), "{name} data file is stale");
        }
    }

    #[test]
    fn f_vectors() {
        for name in NAMES {
            let p = load(name).unwrap();
            assert_eq!(p.f_vector(), expected_f_vector(name).unwrap());
        }
    }

    #[test]
    fn facet_shapes() {
        let r6 = load("lobell6").unwrap();
        let sizes: Vec<usize> = (0..14).map(|f| r6.vertices(FaceRef::new(2, f)).len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 6).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 5).count(), 12);
        assert_eq!(r6.vertices(FaceRef::new(2, 0)), &[0, 1, 2, 3, 4, 5]);

        let dod = load("dodecahedron").unwrap();
        assert!((0..12).all(|f| dod.vertices(FaceRef::new(2, f)).len() == 5));

        let c = load("120cell").unwrap();
        for f in 0..120 {
            let facet = FaceRef::new(3, f);
            assert_eq!(c.vertices(facet).len(), 20);
            assert_eq!(c.subs(facet).len(), 12);
        }
    }

    #[test]
    fn polygon_edges_are_cyclic() {
        let p = load("pentagon").unwrap();
        for i in 0..5u32 {
            let mut e = vec![i, (i + 1) % 5];
            e.sort_unstable();
            assert_eq!(p.vertices(FaceRef::new(1, i as usize)), e.as_slice());
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(load("cube"), Err(PolytopeError::UnknownCatalog(_))));
    }
}
