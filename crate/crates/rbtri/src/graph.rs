//! Simple undirected graphs on at most 64 labeled vertices.
//!
//! Adjacency is one `u64` bitmask per vertex, which keeps neighborhood
//! intersections, component sweeps and subset surgery down to a few word ops.
//! All edge enumeration is in lexicographic order on `(u, v)` with `u < v`;
//! everything downstream (colorings, search engines, certificates) indexes
//! edges by position in that order, so the order is part of the contract.

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Iterate the set bits of a mask as vertex labels.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Mask with bits `0..n` set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices, labels `0..n`.
    pub fn new(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "vertex count {n} out of supported range 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    pub fn vertices_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Copy with `extra` additional isolated vertices appended.
    pub fn grown(&self, extra: usize) -> Graph {
        assert!(self.n + extra <= MAX_VERTICES);
        let mut adj = self.adj.clone();
        adj.resize(self.n + extra, 0);
        Graph {
            n: self.n + extra,
            adj,
        }
    }

    /// Copy with the highest-labeled vertex deleted (along with its edges).
    pub fn shrunk(&self) -> Graph {
        assert!(self.n > 1);
        let v = self.n - 1;
        let mut adj = self.adj.clone();
        adj.pop();
        for row in adj.iter_mut() {
            *row &= !(1 << v);
        }
        Graph { n: v, adj }
    }

    /// All edges in lexicographic order; position in this list is the edge's
    /// global index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Connected components of the subgraph induced by `within` (a vertex
    /// mask), each returned as a vertex mask. Ordered by smallest contained
    /// label.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let within = within & self.vertices_mask();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in bits(within) {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for u in bits(frontier) {
                    next |= self.adj[u] & within & !comp;
                }
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.vertices_mask()).len() == 1
    }

    /// Whether the induced subgraph on `within` is connected (empty and
    /// single-vertex sets count as connected).
    pub fn is_connected_within(&self, within: u64) -> bool {
        self.components_within(within).len() <= 1
    }

    /// True if the graph is 2-colorable.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if color[v] < 0 {
                        color[v] = 1 - color[u];
                        queue.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A set of edges of some host graph, kept sorted in the host's edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<(usize, usize)>,
}

impl EdgeSet {
    pub fn new(mut edges: Vec<(usize, usize)>) -> EdgeSet {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        EdgeSet { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let e = if u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }
}

/// An induced subgraph together with the label map back into the host:
/// new label `i` is host vertex `vertices[i]` (ascending).
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

/// `G[X]`, relabeled to `0..|X|`.
pub fn induced_subgraph(g: &Graph, x: &[usize]) -> Result<InducedSubgraph> {
    let mut vertices: Vec<usize> = x.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != x.len() {
        return Err(Error::InvalidArgument(
            "induced subgraph vertex list contains duplicates".into(),
        ));
    }
    for &v in &vertices {
        g.check_vertex(v)?;
    }
    if vertices.is_empty() {
        return Err(Error::InvalidArgument(
            "induced subgraph on the empty vertex set".into(),
        ));
    }
    let mut sub = Graph::new(vertices.len())?;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if g.has_edge(vertices[i], vertices[j]) {
                sub.add_edge(i, j)?;
            }
        }
    }
    Ok(InducedSubgraph {
        graph: sub,
        vertices,
    })
}

pub fn induced_subgraph_mask(g: &Graph, mask: u64) -> Result<InducedSubgraph> {
    induced_subgraph(g, &bits(mask).collect::<Vec<_>>())
}

fn mask_of(g: &Graph, xs: &[usize]) -> Result<u64> {
    let mut m = 0u64;
    for &v in xs {
        g.check_vertex(v)?;
        m |= 1 << v;
    }
    Ok(m)
}

/// Edges with one endpoint in `x` and the other in `y`; the two sets must be
/// disjoint. For edges inside a single set use [`edges_within`].
pub fn cross_edges(g: &Graph, x: &[usize], y: &[usize]) -> Result<EdgeSet> {
    let mx = mask_of(g, x)?;
    let my = mask_of(g, y)?;
    if mx & my != 0 {
        return Err(Error::InvalidArgument(
            "cross_edges requires disjoint vertex sets".into(),
        ));
    }
    let mut out = Vec::new();
    for u in bits(mx) {
        for v in bits(g.neighbors_mask(u) & my) {
            out.push((u, v));
        }
    }
    Ok(EdgeSet::new(out))
}

/// Edges with both endpoints in `x` (the one-set convention `E_G(X)`).
pub fn edges_within(g: &Graph, x: &[usize]) -> Result<EdgeSet> {
    let mx = mask_of(g, x)?;
    let mut out = Vec::new();
    for u in bits(mx) {
        for v in bits(g.neighbors_mask(u) & mx) {
            if u < v {
                out.push((u, v));
            }
        }
    }
    Ok(EdgeSet::new(out))
}

/// Components of `G - S` of odd order, sorted by size descending, ties by
/// smallest contained vertex label. Returns the components (as vertex masks
/// over the original labels) and their count.
pub fn odd_components(g: &Graph, s: &[usize]) -> Result<(Vec<u64>, usize)> {
    let ms = mask_of(g, s)?;
    let rest = g.vertices_mask() & !ms;
    let mut comps: Vec<u64> = g
        .components_within(rest)
        .into_iter()
        .filter(|c| c.count_ones() % 2 == 1)
        .collect();
    comps.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then(a.trailing_zeros().cmp(&b.trailing_zeros()))
    });
    let q = comps.len();
    Ok((comps, q))
}

/// Vertex connectivity, reported exactly up to 6: the result is
/// `min(true connectivity, 6)`. Brute force over all candidate cut sets of
/// size at most 5. Disconnected input reports 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    // A cut of size k leaves at least two vertices, so only k <= n - 2 makes
    // sense; complete graphs have no cut at all and get n - 1 (capped).
    let max_k = 5.min(n.saturating_sub(2));
    for k in 0..=max_k {
        if has_cut_of_size(g, k) {
            return k;
        }
    }
    (n - 1).min(6)
}

fn has_cut_of_size(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return !g.is_connected();
    }
    // Gosper's hack over k-subsets of 0..n.
    let mut s: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while s < limit {
        let rest = full_mask(n) & !s;
        if rest.count_ones() >= 2 && g.components_within(rest).len() >= 2 {
            return true;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    false
}

/// Search for a Hamiltonian cycle by backtracking with degree pruning.
/// Returns the cycle as a vertex sequence (length n, implicitly closed); the
/// witness is re-verified before being returned. Graphs on fewer than 3
/// vertices have no cycle and report `None`.
pub fn is_hamiltonian(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return None;
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut path = Vec::with_capacity(n);
    path.push(0usize);
    let mut found: Option<Vec<usize>> = None;
    hamiltonian_dfs(g, &mut path, 1u64, &mut found);
    if let Some(cycle) = &found {
        debug_assert!(verify_hamiltonian_cycle(g, cycle));
    }
    found
}

fn hamiltonian_dfs(g: &Graph, path: &mut Vec<usize>, used: u64, found: &mut Option<Vec<usize>>) {
    if found.is_some() {
        return;
    }
    let n = g.vertex_count();
    let cur = *path.last().unwrap();
    if path.len() == n {
        // Close the cycle; each undirected cycle is only accepted in one
        // direction (second vertex smaller than last).
        if g.has_edge(cur, 0) && path[1] < path[n - 1] && verify_hamiltonian_cycle(g, path) {
            *found = Some(path.clone());
        }
        return;
    }
    // Every unvisited vertex still needs two free cycle slots: neighbors that
    // are unvisited, the current path end, or the start vertex.
    let unused = g.vertices_mask() & !used;
    for w in bits(unused) {
        let mut avail = (g.neighbors_mask(w) & unused).count_ones();
        if g.has_edge(w, cur) {
            avail += 1;
        }
        if g.has_edge(w, 0) {
            avail += 1;
        }
        if avail < 2 {
            return;
        }
    }
    for v in bits(g.neighbors_mask(cur) & unused) {
        path.push(v);
        hamiltonian_dfs(g, path, used | 1 << v, found);
        path.pop();
        if found.is_some() {
            return;
        }
    }
}

/// Independent check that `cycle` really is a Hamiltonian cycle of `g`.
pub fn verify_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.vertex_count();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = 0u64;
    for &v in cycle {
        if v >= n || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    cycle
        .windows(2)
        .all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[n - 1], cycle[0])
}

/// Branch sets witnessing a K_{3,3} minor: three "left" and three "right"
/// parts, all nonempty, pairwise disjoint, each inducing a connected
/// subgraph, with an edge between every left/right pair.
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub left: [Vec<usize>; 3],
    pub right: [Vec<usize>; 3],
}

/// Validate a K_{3,3} minor witness. Ok(()) means every clause holds;
/// otherwise the error names the first violated clause.
pub fn check_minor_witness(g: &Graph, w: &MinorWitness) -> Result<()> {
    let mut masks = [0u64; 6];
    let parts: Vec<(&str, &Vec<usize>)> = w
        .left
        .iter()
        .enumerate()
        .map(|(i, p)| (["left 0", "left 1", "left 2"][i], p))
        .chain(
            w.right
                .iter()
                .enumerate()
                .map(|(i, p)| (["right 0", "right 1", "right 2"][i], p)),
        )
        .collect();
    for (idx, (name, part)) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::InvalidWitness(format!("branch set {name} is empty")));
        }
        masks[idx] = mask_of(g, part).map_err(|_| {
            Error::InvalidWitness(format!("branch set {name} contains an invalid vertex"))
        })?;
        if masks[idx].count_ones() as usize != part.len() {
            return Err(Error::InvalidWitness(format!(
                "branch set {name} contains duplicates"
            )));
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if masks[i] & masks[j] != 0 {
                return Err(Error::InvalidWitness(format!(
                    "branch sets {} and {} overlap",
                    parts[i].0, parts[j].0
                )));
            }
        }
    }
    for (idx, (name, _)) in parts.iter().enumerate() {
        if !g.is_connected_within(masks[idx]) {
            return Err(Error::InvalidWitness(format!(
                "branch set {name} does not induce a connected subgraph"
            )));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let (li, rj) = (masks[i], masks[j + 3]);
            let touches = bits(li).any(|u| g.neighbors_mask(u) & rj != 0);
            if !touches {
                return Err(Error::InvalidWitness(format!(
                    "no edge between left {i} and right {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n - 1 {
            g.add_edge(u, u + 1).unwrap();
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b).unwrap();
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Star K_{1,k} with the hub labeled 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::new(k + 1).unwrap();
        for v in 1..=k {
            g.add_edge(0, v).unwrap();
        }
        g
    }

    /// The octahedron K_{2,2,2}; antipodal (non-adjacent) pairs are
    /// {0,5}, {1,4}, {2,3}.
    pub fn octahedron() -> Graph {
        let pairs = [(0usize, 5usize), (1, 4), (2, 3)];
        let mut g = Graph::new(6).unwrap();
        for u in 0..6 {
            for v in u + 1..6 {
                if !pairs.contains(&(u, v)) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Wheel W_k: hub 0 joined to a k-cycle 1..=k.
    pub fn wheel(k: usize) -> Graph {
        let mut g = Graph::new(k + 1).unwrap();
        for i in 0..k {
            let u = 1 + i;
            let v = 1 + (i + 1) % k;
            g.add_edge(u, v).unwrap();
            g.add_edge(0, u).unwrap();
        }
        g
    }

    /// The 5-vertex double pyramid (two apexes over a triangle): the unique
    /// 5-vertex maximal planar graph, K5 minus one edge.
    pub fn bipyramid() -> Graph {
        let mut g = complete(5);
        g.remove_edge(3, 4);
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(i + 5, 5 + (i + 2) % 5).unwrap();
        }
        g
    }
}
