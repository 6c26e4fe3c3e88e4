use std::time::{Duration, Instant};

use super::{Colouring, FacetGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Colouring),
    /// The search space was exhausted: no colouring with the requested
    /// number of colours exists.
    None,
    /// The time budget ran out first.
    Unknown,
}

/// Greedy DSATUR colouring; the number of colours it uses bounds the
/// chromatic number from above.
pub fn dsatur_greedy(g: &FacetGraph) -> Colouring {
    let n = g.vertex_count();
    let mut colour = vec![0u32; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    for _ in 0..n {
        let v = pick(g, &colour, |v| seen[v].iter().filter(|&&b| b).count());
        let c = (1..).find(|&c| !seen[v].get(c as usize).copied().unwrap_or(false)).expect("some colour is free");
        colour[v] = c;
        for &u in g.neighbours(v) {
            let s = &mut seen[u as usize];
            if s.len() <= c as usize {
                s.resize(c as usize + 1, false);
            }
            s[c as usize] = true;
        }
    }
    Colouring { colours: colour }
}

/// Uncoloured vertex of maximal saturation, then maximal degree, then least id.
fn pick(g: &FacetGraph, colour: &[u32], saturation: impl Fn(usize) -> usize) -> usize {
    (0..g.vertex_count())
        .filter(|&v| colour[v] == 0)
        .max_by_key(|&v| (saturation(v), g.neighbours(v).len(), std::cmp::Reverse(v)))
        .expect("an uncoloured vertex remains")
}

/// A large clique found greedily from every start vertex; its size bounds
/// the chromatic number from below.
pub fn greedy_clique(g: &FacetGraph) -> Vec<u32> {
    let mut best: Vec<u32> = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        let mut clique = vec![v];
        let mut cands: Vec<u32> = g.neighbours(v as usize).to_vec();
        cands.sort_by_key(|&u| (std::cmp::Reverse(g.neighbours(u as usize).len()), u));
        for u in cands {
            if clique.iter().all(|&w| g.has_edge(w, u)) {
                clique.push(u);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

struct Search<'a> {
    g: &'a FacetGraph,
    k: usize,
    colour: Vec<u32>,
    /// `count[v * (k + 1) + c]`: neighbours of `v` coloured `c`.
    count: Vec<u16>,
    sat: Vec<u32>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: u32) {
        self.colour[v] = c;
        for &u in self.g.neighbours(v) {
            let slot = &mut self.count[u as usize * (self.k + 1) + c as usize];
            if *slot == 0 {
                self.sat[u as usize] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colour[v];
        self.colour[v] = 0;
        for &u in self.g.neighbours(v) {
            let slot = &mut self.count[u as usize * (self.k + 1) + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u as usize] -= 1;
            }
        }
    }

    fn run(&mut self, remaining: usize, used: u32) -> bool {
        if remaining == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return false;
        }
        let sat = &self.sat;
        let v = pick(self.g, &self.colour, |v| sat[v] as usize);
        if self.sat[v] as usize >= self.k {
            return false;
        }
        let limit = (used + 1).min(self.k as u32);
        for c in 1..=limit {
            if self.count[v * (self.k + 1) + c as usize] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(remaining - 1, used.max(c)) {
                return true;
            }
            self.unassign(v);
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

fn colour_component(g: &FacetGraph, k: usize, deadline: Option<Instant>) -> SearchOutcome {
    let n = g.vertex_count();
    let greedy = dsatur_greedy(g);
    if greedy.colour_count() <= k as u32 {
        return SearchOutcome::Found(greedy);
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return SearchOutcome::None;
    }
    let mut s = Search {
        g,
        k,
        colour: vec![0; n],
        count: vec![0; n * (k + 1)],
        sat: vec![0; n],
        deadline,
        nodes: 0,
        timed_out: false,
    };
    // clique members must get distinct colours; fixing them breaks the colour permutation symmetry
    for (i, &v) in clique.iter().enumerate() {
        s.assign(v as usize, i as u32 + 1);
    }
    if s.run(n - clique.len(), clique.len() as u32) {
        SearchOutcome::Found(Colouring { colours: s.colour })
    } else if s.timed_out {
        SearchOutcome::Unknown
    } else {
        SearchOutcome::None
    }
}

/// Exact search for a proper colouring with at most `k` colours, run
/// independently on each connected component.
pub fn find_colouring(g: &FacetGraph, k: usize, budget: Option<Duration>) -> SearchOutcome {
    let n = g.vertex_count();
    if n == 0 {
        return SearchOutcome::Found(Colouring { colours: Vec::new() });
    }
    if k == 0 {
        return SearchOutcome::None;
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let mut colours = vec![0u32; n];
    let mut unknown = false;
    for comp in g.components() {
        let (sub, _) = g.induced(&comp);
        match colour_component(&sub, k, deadline) {
            SearchOutcome::Found(c) => {
                for (i, &v) in comp.iter().enumerate() {
                    colours[v as usize] = c.colours[i];
                }
            }
            SearchOutcome::None => return SearchOutcome::None,
            SearchOutcome::Unknown => unknown = true,
        }
    }
    if unknown {
        return SearchOutcome::Unknown;
    }
    let found = Colouring { colours }.compacted();
    debug_assert!(found.is_proper(g));
    SearchOutcome::Found(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> FacetGraph {
        FacetGraph::new(n as usize, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: u32) -> FacetGraph {
        let edges: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        FacetGraph::new(n as usize, &edges)
    }

    #[test]
    fn triangle() {
        let g = complete(3);
        assert!(matches!(find_colouring(&g, 3, None), SearchOutcome::Found(c) if c.is_proper(&g)));
        assert_eq!(find_colouring(&g, 2, None), SearchOutcome::None);
    }

    #[test]
    fn odd_cycle_needs_three() {
        let g = cycle(7);
        assert_eq!(find_colouring(&g, 2, None), SearchOutcome::None);
        assert!(matches!(find_colouring(&g, 3, None), SearchOutcome::Found(_)));
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let mut edges: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        let g = FacetGraph::new(10, &edges);
        assert_eq!(greedy_clique(&g).len(), 2);
        assert_eq!(find_colouring(&g, 2, None), SearchOutcome::None);
        assert!(matches!(find_colouring(&g, 3, None), SearchOutcome::Found(_)));
    }

    #[test]
    fn exhausted_budget_reports_unknown() {
        // triangle-free, so the clique bound cannot settle it and the search has to run
        let g = mycielski(6);
        assert_eq!(greedy_clique(&g).len(), 2);
        assert_eq!(find_colouring(&g, 5, Some(Duration::ZERO)), SearchOutcome::Unknown);
    }

    /// Triangle-free graph with chromatic number `k`.
    fn mycielski(k: usize) -> FacetGraph {
        let mut n = 2usize;
        let mut edges = vec![(0u32, 1u32)];
        for _ in 2..k {
            let mut next = edges.clone();
            for &(a, b) in &edges {
                next.push((a, b + n as u32));
                next.push((b, a + n as u32));
            }
            for v in 0..n as u32 {
                next.push((v + n as u32, 2 * n as u32));
            }
            edges = next;
            n = 2 * n + 1;
        }
        FacetGraph::new(n, &edges)
    }

    #[test]
    fn mycielski_four() {
        let g = mycielski(4);
        assert_eq!(g.vertex_count(), 11);
        assert_eq!(find_colouring(&g, 3, None), SearchOutcome::None);
        assert!(matches!(find_colouring(&g, 4, None), SearchOutcome::Found(_)));
    }
}
