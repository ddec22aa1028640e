//! Maximum matchings, factor-criticality and deficiency decompositions.
//!
//! The core solver is the standard augmenting-path algorithm with blossom
//! contraction (O(V^3)), run over a fixed host edge list with optional edge-
//! and vertex-mask restrictions so that search engines can query thousands of
//! subgraphs without rebuilding adjacency. The public `max_matching` returns
//! the lexicographically smallest maximum matching in the global edge order,
//! obtained by greedily forcing edges and re-solving, so every downstream
//! witness is deterministic.

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Graph};
use serde::Serialize;
use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Reusable blossom solver over a fixed edge list.
pub struct MatchingSolver {
    n: usize,
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge index)
    mate: Vec<usize>,
    p: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
}

impl MatchingSolver {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> MatchingSolver {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        MatchingSolver {
            n,
            edges,
            adj,
            mate: vec![NONE; n],
            p: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
        }
    }

    pub fn for_graph(g: &Graph) -> MatchingSolver {
        MatchingSolver::new(g.vertex_count(), g.edges())
    }

    fn allowed(&self, ei: usize, emask: Option<u64>) -> bool {
        emask.map_or(true, |m| m >> ei & 1 == 1)
    }

    /// Maximum matching size using only edges in `emask` (None = all; edge
    /// indices then must be < 64) between vertices in `vmask`.
    pub fn solve(&mut self, emask: Option<u64>, vmask: u64) -> usize {
        if emask.is_some() {
            debug_assert!(self.edges.len() <= 64);
        }
        self.mate.iter_mut().for_each(|m| *m = NONE);
        // Greedy warm start.
        for v in 0..self.n {
            if vmask >> v & 1 == 0 || self.mate[v] != NONE {
                continue;
            }
            for i in 0..self.adj[v].len() {
                let (to, ei) = self.adj[v][i];
                if vmask >> to & 1 == 1 && self.mate[to] == NONE && self.allowed(ei, emask) {
                    self.mate[v] = to;
                    self.mate[to] = v;
                    break;
                }
            }
        }
        let mut size = (0..self.n)
            .filter(|&v| vmask >> v & 1 == 1 && self.mate[v] != NONE)
            .count()
            / 2;
        for v in 0..self.n {
            if vmask >> v & 1 == 1 && self.mate[v] == NONE && self.try_augment(v, emask, vmask) {
                size += 1;
            }
        }
        size
    }

    /// Matched partner of each vertex after the last `solve` (NONE if
    /// unmatched).
    pub fn mates(&self) -> &[usize] {
        &self.mate
    }

    pub fn matched_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            if self.mate[v] != NONE && v < self.mate[v] {
                out.push((v, self.mate[v]));
            }
        }
        out
    }

    fn try_augment(&mut self, root: usize, emask: Option<u64>, vmask: u64) -> bool {
        for i in 0..self.n {
            self.base[i] = i;
            self.p[i] = NONE;
            self.used[i] = false;
        }
        self.used[root] = true;
        let mut q = VecDeque::new();
        q.push_back(root);
        while let Some(v) = q.pop_front() {
            for i in 0..self.adj[v].len() {
                let (to, ei) = self.adj[v][i];
                if vmask >> to & 1 == 0 || !self.allowed(ei, emask) {
                    continue;
                }
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.p[self.mate[to]] != NONE) {
                    // An odd cycle: contract the blossom.
                    let cur_base = self.lca(v, to);
                    let mut in_blossom = vec![false; self.n];
                    self.mark_path(v, cur_base, to, &mut in_blossom);
                    self.mark_path(to, cur_base, v, &mut in_blossom);
                    for u in 0..self.n {
                        if in_blossom[self.base[u]] {
                            self.base[u] = cur_base;
                            if !self.used[u] {
                                self.used[u] = true;
                                q.push_back(u);
                            }
                        }
                    }
                } else if self.p[to] == NONE {
                    self.p[to] = v;
                    if self.mate[to] == NONE {
                        self.augment_along(to);
                        return true;
                    }
                    self.used[self.mate[to]] = true;
                    q.push_back(self.mate[to]);
                }
            }
        }
        false
    }

    fn lca(&self, a: usize, b: usize) -> usize {
        let mut on_path = vec![false; self.n];
        let mut a = a;
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break; // the tree root
            }
            a = self.p[self.mate[a]];
        }
        let mut b = b;
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.p[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, to_base: usize, mut child: usize, mark: &mut [bool]) {
        while self.base[v] != to_base {
            mark[self.base[v]] = true;
            mark[self.base[self.mate[v]]] = true;
            self.p[v] = child;
            child = self.mate[v];
            v = self.p[self.mate[v]];
        }
    }

    fn augment_along(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.p[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// A matching: vertex-disjoint edges of some host, sorted in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v)
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = 0u64;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || seen >> u & 1 == 1 || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << u | 1 << v;
        }
        true
    }
}

/// ν(G).
pub fn matching_number(g: &Graph) -> usize {
    MatchingSolver::for_graph(g).solve(None, g.vertices_mask())
}

/// The lexicographically smallest maximum matching in the global edge order.
pub fn max_matching(g: &Graph) -> Matching {
    let mut solver = MatchingSolver::for_graph(g);
    let all = g.vertices_mask();
    let nu = solver.solve(None, all);
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(nu);
    let mut used = 0u64;
    for (u, v) in g.edges() {
        if chosen.len() == nu {
            break;
        }
        if used >> u & 1 == 1 || used >> v & 1 == 1 {
            continue;
        }
        let rest = all & !used & !(1 << u) & !(1 << v);
        if chosen.len() + 1 + solver.solve(None, rest) == nu {
            chosen.push((u, v));
            used |= 1 << u | 1 << v;
        }
    }
    debug_assert_eq!(chosen.len(), nu);
    let m = Matching { edges: chosen };
    debug_assert!(m.is_valid(g));
    m
}

/// Factor-critical: odd order and every vertex-deleted subgraph has a perfect
/// matching. A single vertex qualifies.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n % 2 == 0 {
        return false;
    }
    let mut solver = MatchingSolver::for_graph(g);
    let all = g.vertices_mask();
    (0..n).all(|v| solver.solve(None, all & !(1 << v)) == (n - 1) / 2)
}

/// Deficiency-form decomposition of a graph: a set `S` realizing the matching
/// number through the count of odd components of `G - S`.
#[derive(Clone, Debug, Serialize)]
pub struct BergeTutteDecomposition {
    /// The separating set (ascending labels).
    pub s: Vec<usize>,
    /// Odd components of `G - S`, size-descending, ties by smallest label;
    /// each component lists its vertices ascending.
    pub odd_components: Vec<Vec<usize>>,
    /// Vertices in even components of `G - S`.
    pub even_vertices: Vec<usize>,
    /// Number of odd components.
    pub q: usize,
    /// Index of the first singleton odd component (== q when there is none).
    pub t: usize,
    /// One representative vertex per singleton odd component.
    pub v0: Vec<usize>,
    /// The matching number realized by the decomposition.
    pub d: usize,
    /// `q - |S|` = number of vertices missed by a maximum matching.
    pub deficiency: usize,
}

/// Construct the decomposition via the avoidable-vertex characterization:
/// `D` = vertices missed by some maximum matching (n+1 matching calls),
/// `S` = N(D) \ D. The structural invariants are asserted before returning.
pub fn berge_tutte_witness(g: &Graph) -> Result<BergeTutteDecomposition> {
    let n = g.vertex_count();
    let all = g.vertices_mask();
    let mut solver = MatchingSolver::for_graph(g);
    let nu = solver.solve(None, all);

    let mut d_mask = 0u64;
    for v in 0..n {
        if solver.solve(None, all & !(1 << v)) == nu {
            d_mask |= 1 << v;
        }
    }
    let mut s_mask = 0u64;
    for v in bits(d_mask) {
        s_mask |= g.neighbors_mask(v);
    }
    s_mask &= !d_mask;

    let comps = g.components_within(all & !s_mask);
    let mut odd: Vec<u64> = comps
        .iter()
        .copied()
        .filter(|c| c.count_ones() % 2 == 1)
        .collect();
    odd.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then(a.trailing_zeros().cmp(&b.trailing_zeros()))
    });
    let even_mask = comps
        .iter()
        .copied()
        .filter(|c| c.count_ones() % 2 == 0)
        .fold(0u64, |m, c| m | c);

    let q = odd.len();
    let s_size = s_mask.count_ones() as usize;
    let t = odd
        .iter()
        .position(|c| c.count_ones() == 1)
        .unwrap_or(q);
    let v0: Vec<usize> = odd[t..]
        .iter()
        .map(|c| c.trailing_zeros() as usize)
        .collect();

    if q < s_size || (n + s_size) < q || (n - (q - s_size)) % 2 != 0 {
        return Err(Error::InvalidArgument(
            "deficiency bookkeeping failed; graph adjacency is inconsistent".into(),
        ));
    }
    let witness = BergeTutteDecomposition {
        s: bits(s_mask).collect(),
        odd_components: odd.iter().map(|&c| bits(c).collect()).collect(),
        even_vertices: bits(even_mask).collect(),
        q,
        t,
        v0,
        d: nu,
        deficiency: q - s_size,
    };

    // The decomposition is only returned if it actually witnesses nu.
    assert_eq!(
        2 * nu,
        n - (q - s_size),
        "separating set fails the deficiency identity"
    );
    assert!(s_size <= nu, "separating set larger than the matching number");
    for comp in &witness.odd_components {
        let sub = crate::graph::induced_subgraph(g, comp)?;
        assert!(
            is_factor_critical(&sub.graph),
            "odd component {comp:?} is not factor-critical"
        );
    }
    for (i, comp) in witness.odd_components.iter().enumerate() {
        if i < witness.t {
            assert!(comp.len() >= 3);
        } else {
            assert_eq!(comp.len(), 1);
        }
    }
    Ok(witness)
}

/// Brute-force matching number over all edge subsets — test oracle, exported
/// for the verification suites. Only sensible for small hosts.
pub fn matching_number_bruteforce(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], i: usize, used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let (u, v) = edges[i];
        let skip = rec(edges, i + 1, used);
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            let take = 1 + rec(edges, i + 1, used | 1 << u | 1 << v);
            skip.max(take)
        } else {
            skip
        }
    }
    rec(&g.edges(), 0, 0)
}

/// Convenience: matching number of the spanning subgraph with the given
/// allowed-vertex mask.
pub fn matching_number_within(g: &Graph, vmask: u64) -> usize {
    MatchingSolver::for_graph(g).solve(None, vmask & full_mask(g.vertex_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_matching_numbers() {
        assert_eq!(matching_number(&named::path(4)), 2);
        assert_eq!(matching_number(&named::cycle(5)), 2);
        assert_eq!(matching_number(&named::complete(4)), 2);
        assert_eq!(matching_number(&named::star(4)), 1);
        assert_eq!(matching_number(&named::octahedron()), 3);
        assert_eq!(matching_number(&named::petersen()), 5);
        assert_eq!(matching_number(&named::wheel(5)), 3);
    }

    #[test]
    fn blossom_handles_odd_structures() {
        // Two triangles joined by a bridge: perfect matching exists.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        assert_eq!(matching_number(&g), 3);
        assert_eq!(matching_number_bruteforce(&g), 3);
    }

    #[test]
    fn lexicographically_smallest_witness() {
        assert_eq!(
            max_matching(&named::complete(4)).edges,
            vec![(0, 1), (2, 3)]
        );
        assert_eq!(
            max_matching(&named::cycle(5)).edges,
            vec![(0, 1), (2, 3)]
        );
        // Path 1-0-2: taking (0,1) first would be maximal but not maximum
        // only if it blocked a larger matching; here nu = 1 so (0,1) wins.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(max_matching(&g).edges, vec![(0, 1)]);
        // Forcing the greedy edge would be suboptimal here: star center edge
        // (0,1) blocks nothing in K4 minus an edge... use a concrete trap:
        // edges (0,1),(1,2),(2,3): taking (1,2) blocks both others.
        let trap = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(max_matching(&trap).edges, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn factor_critical_cases() {
        assert!(is_factor_critical(&named::cycle(5)));
        assert!(is_factor_critical(&named::complete(5)));
        assert!(is_factor_critical(&Graph::new(1).unwrap()));
        assert!(!is_factor_critical(&named::complete(4))); // even order
        assert!(!is_factor_critical(&named::path(3)));
        assert!(!is_factor_critical(&named::star(4)));
    }

    #[test]
    fn decomposition_star() {
        let w = berge_tutte_witness(&named::star(3)).unwrap();
        assert_eq!(w.s, vec![0]);
        assert_eq!(w.q, 3);
        assert_eq!(w.t, 0);
        assert_eq!(w.v0, vec![1, 2, 3]);
        assert_eq!(w.d, 1);
        assert_eq!(w.deficiency, 2);
        assert!(w.odd_components.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn decomposition_triangle_with_pendant() {
        // Triangle 0,1,2 with pendant 3 attached at 0: perfect matching, and
        // the empty separating set already witnesses d = 2.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let w = berge_tutte_witness(&g).unwrap();
        assert_eq!(w.d, 2);
        assert_eq!(w.deficiency, 0);
        assert_eq!(2 * w.d, 4 - (w.q as i64 - w.s.len() as i64) as usize);
        assert!(w.s.len() <= w.d);
    }

    #[test]
    fn decomposition_odd_cycle() {
        let w = berge_tutte_witness(&named::cycle(5)).unwrap();
        assert!(w.s.is_empty());
        assert_eq!(w.q, 1);
        assert_eq!(w.odd_components[0], vec![0, 1, 2, 3, 4]);
        assert_eq!(w.t, 1); // no singleton components
        assert!(w.v0.is_empty());
        assert_eq!(w.deficiency, 1);
    }

    #[test]
    fn masked_solves_match_bruteforce() {
        let g = named::octahedron();
        let mut solver = MatchingSolver::for_graph(&g);
        // Vertex-restricted: drop an antipodal pair, leaving C4.
        let vmask = g.vertices_mask() & !(1 << 0) & !(1 << 5);
        assert_eq!(solver.solve(None, vmask), 2);
        // Edge-restricted: only the first four edges of the octahedron.
        assert_eq!(solver.solve(Some(0b1111), g.vertices_mask()), 1);
    }
}
