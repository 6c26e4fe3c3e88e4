use std::collections::{HashMap, VecDeque};

use super::{FaceRef, OrientationTable, Polytope};

/// A complete flag `f_0 ⊂ f_1 ⊂ … ⊂ f_{d-1}` inside a `d`-face, stored as
/// face ids indexed by dimension.
pub type Flag = Vec<u32>;

/// All flags of the face `a`.
pub(crate) fn enumerate_flags(p: &Polytope, a: FaceRef) -> Vec<Flag> {
    let d = a.dim();
    let mut out = Vec::new();
    if d == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut chain = vec![0u32; d];
    descend(p, a, &mut chain, &mut out);
    out
}

fn descend(p: &Polytope, upper: FaceRef, chain: &mut Flag, out: &mut Vec<Flag>) {
    if upper.dim() == 0 {
        out.push(chain.clone());
        return;
    }
    let level = upper.dim() - 1;
    for &s in p.subs(upper) {
        chain[level] = s;
        descend(p, FaceRef::new(level, s as usize), chain, out);
    }
}

/// The flag differing from `flag` exactly at position `i`.
pub(crate) fn neighbor(p: &Polytope, a: FaceRef, flag: &[u32], i: usize) -> Flag {
    let d = a.dim();
    let upper = if i + 1 == d { a } else { FaceRef::new(i + 1, flag[i + 1] as usize) };
    let mut out = flag.to_vec();
    let other = p
        .subs(upper)
        .iter()
        .copied()
        .filter(|&c| c != flag[i])
        .find(|&c| i == 0 || p.subs(FaceRef::new(i, c as usize)).binary_search(&flag[i - 1]).is_ok())
        .expect("diamond property");
    out[i] = other;
    out
}

/// Parity of every flag of `a` relative to `reference` (true = same class).
pub(crate) fn parities(p: &Polytope, a: FaceRef, reference: &Flag) -> HashMap<Flag, bool> {
    let mut seen: HashMap<Flag, bool> = HashMap::new();
    seen.insert(reference.clone(), true);
    let mut queue = VecDeque::from([reference.clone()]);
    while let Some(flag) = queue.pop_front() {
        let par = seen[&flag];
        for i in 0..a.dim() {
            let nb = neighbor(p, a, &flag, i);
            if let Some(&q) = seen.get(&nb) {
                debug_assert_ne!(q, par, "flag graph of a polytope face is bipartite");
            } else {
                seen.insert(nb.clone(), !par);
                queue.push_back(nb);
            }
        }
    }
    seen
}

pub(crate) fn orientation_table(p: &Polytope) -> OrientationTable {
    let mut table = OrientationTable::default();
    for d in 0..=p.dim() {
        let mut refs = Vec::with_capacity(p.count(d));
        let mut pars = Vec::with_capacity(p.count(d));
        for i in 0..p.count(d) {
            let a = FaceRef::new(d, i);
            let reference = enumerate_flags(p, a).into_iter().min().expect("faces have flags");
            pars.push(parities(p, a, &reference));
            refs.push(reference);
        }
        table.reference.push(refs);
        table.parity.push(pars);
    }
    for d in 0..=p.dim() {
        let mut level = Vec::with_capacity(p.count(d));
        for i in 0..p.count(d) {
            let face = &p.faces[d][i];
            let signs = face
                .subs
                .iter()
                .map(|&s| {
                    let mut flag = table.reference[d - 1][s as usize].clone();
                    flag.push(s);
                    if table.parity[d][i][&flag] {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            level.push(signs);
        }
        table.incidence.push(level);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::catalog;

    #[test]
    fn flag_counts() {
        let dod = catalog::load("dodecahedron").unwrap();
        assert_eq!(enumerate_flags(&dod, dod.top()).len(), 120);
        let pent = catalog::load("pentagon").unwrap();
        assert_eq!(enumerate_flags(&pent, pent.top()).len(), 10);
    }

    #[test]
    fn boundary_of_boundary_vanishes_inside_each_polytope() {
        for name in catalog::NAMES {
            let p = catalog::load(name).unwrap();
            for d in 2..=p.dim() {
                for i in 0..p.count(d) {
                    let a = FaceRef::new(d, i);
                    let mut acc: HashMap<u32, i32> = HashMap::new();
                    for &s in p.subs(a) {
                        let sa = p.incidence(a, s) as i32;
                        let sf = FaceRef::new(d - 1, s as usize);
                        for &t in p.subs(sf) {
                            *acc.entry(t).or_default() += sa * p.incidence(sf, t) as i32;
                        }
                    }
                    assert!(acc.values().all(|&v| v == 0), "{name}: ∂∂ ≠ 0 at {a}");
                }
            }
        }
    }
}
