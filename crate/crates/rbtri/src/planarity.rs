//! Planarity testing that produces a combinatorial embedding.
//!
//! The test runs the classic face/fragment insertion algorithm per
//! biconnected block: start from a cycle with its two faces, then repeatedly
//! embed a path of some fragment into an admissible face (a face whose
//! boundary contains all of the fragment's attachment vertices), preferring
//! fragments that are forced into a single face. A planar input never gets
//! stuck; a fragment with no admissible face proves non-planarity. Block
//! rotations are concatenated at cut vertices, which is always realizable by
//! nesting blocks inside a face corner.
//!
//! Face tracing convention throughout the crate: the directed edge after
//! `(u, v)` is `(v, w)` where `w` is the cyclic successor of `u` in the
//! rotation at `v`. Under this convention every valid embedding satisfies
//! Euler's relation `V - E + F = 1 + components`, which is asserted before an
//! embedding is returned.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// A rotation system: `order[v]` lists the neighbors of `v` in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// The neighbor following `u` in the cyclic order at `v`.
    pub fn successor(&self, v: usize, u: usize) -> usize {
        let ring = &self.order[v];
        let i = ring
            .iter()
            .position(|&x| x == u)
            .expect("successor lookup for a non-neighbor");
        ring[(i + 1) % ring.len()]
    }

    /// Trace all faces. Each face is a directed closed walk, returned as the
    /// sequence of vertices visited; every directed edge lies on exactly one
    /// face.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.order.len();
        let mut seen: Vec<Vec<bool>> = self.order.iter().map(|r| vec![false; r.len()]).collect();
        let mut idx = vec![std::collections::HashMap::new(); n];
        for v in 0..n {
            for (i, &u) in self.order[v].iter().enumerate() {
                idx[v].insert(u, i);
            }
        }
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..self.order[v].len() {
                if seen[v][i] {
                    continue;
                }
                // Walk the face starting with directed edge v -> order[v][i].
                let mut face = Vec::new();
                let (mut a, mut b) = (v, self.order[v][i]);
                loop {
                    let pos = idx[a][&b];
                    if seen[a][pos] {
                        break;
                    }
                    seen[a][pos] = true;
                    face.push(a);
                    let next = {
                        let ring = &self.order[b];
                        ring[(idx[b][&a] + 1) % ring.len()]
                    };
                    a = b;
                    b = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Check that the rotation lists exactly the adjacency of `g` and that
    /// the face count satisfies Euler's relation — i.e. that this is a
    /// genus-zero embedding of `g`.
    pub fn validates_embedding(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.order.len() != n {
            return false;
        }
        for v in 0..n {
            let mut ring: Vec<usize> = self.order[v].clone();
            ring.sort_unstable();
            ring.dedup();
            let mut adj: Vec<usize> = g.neighbors(v).collect();
            adj.sort_unstable();
            if ring != adj || self.order[v].len() != adj.len() {
                return false;
            }
        }
        // Genus-zero check, component-wise: a component with n_c vertices and
        // e_c edges must trace e_c - n_c + 2 face walks. Edgeless components
        // (single vertices) trace nothing, so they are credited separately.
        let comps = g.components_within(g.vertices_mask());
        let edgeless = comps.iter().filter(|c| c.count_ones() == 1).count();
        let f = self.faces().len();
        f + edgeless + n == g.edge_count() + 2 * comps.len()
    }
}

/// Planarity test. `Some(rotation)` realizes a plane embedding; `None` means
/// the graph is not planar.
pub fn is_planar(g: &Graph) -> Option<RotationSystem> {
    let n = g.vertex_count();
    let e = g.edge_count();
    if n >= 3 && e > 3 * n - 6 {
        return None;
    }
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for comp in g.components_within(g.vertices_mask()) {
        for block in blocks(g, comp) {
            let rot = embed_block(&block)?;
            for (v, ring) in rot {
                order[v].extend(ring);
            }
        }
    }
    let rotation = RotationSystem { order };
    assert!(
        rotation.validates_embedding(g),
        "internal error: constructed embedding fails Euler validation"
    );
    Some(rotation)
}

/// Maximal planar test: planar, connected, and e = 3n - 6.
pub fn is_maximal_planar(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "maximal planarity needs n >= 3, got {n}"
        )));
    }
    Ok(g.edge_count() == 3 * n - 6 && g.is_connected() && is_planar(g).is_some())
}

/// Biconnected blocks of the component `comp`, each as an edge list.
fn blocks(g: &Graph, comp: u64) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut State, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for v in st.g.neighbors(u) {
            if v == parent {
                continue;
            }
            if st.disc[v] == 0 {
                st.stack.push((u, v));
                dfs(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    st.out.push(block);
                }
            } else if st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let n = g.vertex_count();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    let root = comp.trailing_zeros() as usize;
    dfs(&mut st, root, usize::MAX);
    st.out
}

/// Embed one biconnected block; returns the rotation of each block vertex or
/// `None` if the block is non-planar.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }
    // Local adjacency restricted to the block.
    let mut verts = 0u64;
    for &(u, v) in edges {
        verts |= 1 << u | 1 << v;
    }
    let n = 64;
    let mut adj = vec![0u64; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }

    // Seed with any cycle, found by walking from a vertex until revisiting.
    let cycle = {
        let start = verts.trailing_zeros() as usize;
        let mut path = vec![start];
        let mut on_path = 1u64 << start;
        let cycle;
        loop {
            let u = *path.last().unwrap();
            let prev = if path.len() >= 2 {
                path[path.len() - 2]
            } else {
                usize::MAX
            };
            // A block with >= 2 edges is 2-connected: every vertex has degree
            // >= 2, so the walk can always leave without backtracking.
            let choices = adj[u] & !(if prev < 64 { 1u64 << prev } else { 0 });
            let v = choices.trailing_zeros() as usize;
            if on_path >> v & 1 == 1 {
                let at = path.iter().position(|&x| x == v).unwrap();
                cycle = path[at..].to_vec();
                break;
            }
            on_path |= 1 << v;
            path.push(v);
        }
        cycle
    };

    let mut embedded = vec![0u64; n]; // adjacency of the embedded subgraph H
    let mut in_h = 0u64;
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded[u] |= 1 << v;
        embedded[v] |= 1 << u;
        in_h |= 1 << u;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut remaining: usize = edges.len() - cycle.len();

    while remaining > 0 {
        // Fragments: chords between embedded vertices, and components of the
        // unembedded vertices with their attachment edges.
        struct Fragment {
            attach: u64,
            comp: u64,        // unembedded interior vertices (empty for chords)
            chord: (usize, usize),
        }
        let mut fragments = Vec::new();
        for u in bits(verts & in_h) {
            for v in bits(adj[u] & in_h & !embedded[u]) {
                if u < v {
                    fragments.push(Fragment {
                        attach: 1 << u | 1 << v,
                        comp: 0,
                        chord: (u, v),
                    });
                }
            }
        }
        let outside = verts & !in_h;
        for comp in components_of(&adj, outside) {
            let mut attach = 0u64;
            for w in bits(comp) {
                attach |= adj[w] & in_h;
            }
            fragments.push(Fragment {
                attach,
                comp,
                chord: (0, 0),
            });
        }

        let face_masks: Vec<u64> = faces
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut chosen: Option<(usize, usize)> = None; // (fragment, face)
        for (fi, fr) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_masks
                .iter()
                .enumerate()
                .filter(|(_, m)| *m & fr.attach == fr.attach)
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen.expect("remaining edges imply a fragment");
        let fr = &fragments[fi];

        // A path through the fragment between two distinct attachments.
        let path: Vec<usize> = if fr.comp == 0 {
            vec![fr.chord.0, fr.chord.1]
        } else {
            let a = fr.attach.trailing_zeros() as usize;
            let goal = fr.attach & !(1u64 << a);
            let mut parent = vec![usize::MAX; 64];
            let mut queue = std::collections::VecDeque::new();
            let mut visited = 1u64 << a;
            queue.push_back(a);
            let mut hit = usize::MAX;
            'bfs: while let Some(u) = queue.pop_front() {
                // From the attachment only step into the component; inside the
                // component also allow stepping onto another attachment.
                let next = if u == a { adj[u] & fr.comp } else { adj[u] & (fr.comp | goal) };
                for v in bits(next & !visited) {
                    visited |= 1 << v;
                    parent[v] = u;
                    if goal >> v & 1 == 1 {
                        hit = v;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
            assert!(hit != usize::MAX, "fragment path search failed");
            let mut p = vec![hit];
            while *p.last().unwrap() != a {
                p.push(parent[*p.last().unwrap()]);
            }
            p.reverse();
            p
        };

        // Split the chosen face along the path.
        let face = faces.swap_remove(face_idx);
        let a = path[0];
        let b = *path.last().unwrap();
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let seg = |from: usize, to: usize| {
            // vertices strictly between positions from and to, walking forward
            let mut out = Vec::new();
            let mut i = (from + 1) % len;
            while i != to {
                out.push(face[i]);
                i = (i + 1) % len;
            }
            out
        };
        let mut f1 = path.clone();
        f1.extend(seg(ib, ia)); // a ..path.. b ..face.. (a)
        let mut f2: Vec<usize> = path.iter().rev().copied().collect();
        f2.extend(seg(ia, ib)); // b ..rev path.. a ..face.. (b)
        faces.push(f1);
        faces.push(f2);

        for w in path.windows(2) {
            embedded[w[0]] |= 1 << w[1];
            embedded[w[1]] |= 1 << w[0];
            remaining -= 1;
        }
        for &w in &path {
            in_h |= 1 << w;
        }
    }

    // Rebuild rotations from the face set: consecutive face edges (u -> v),
    // (v -> w) pin w as the successor of u at v.
    let mut succ: Vec<std::collections::HashMap<usize, usize>> =
        vec![std::collections::HashMap::new(); 64];
    for f in &faces {
        let len = f.len();
        for i in 0..len {
            let u = f[i];
            let v = f[(i + 1) % len];
            let w = f[(i + 2) % len];
            succ[v].insert(u, w);
        }
    }
    let mut out = Vec::new();
    for v in bits(verts) {
        let deg = adj[v].count_ones() as usize;
        let first = adj[v].trailing_zeros() as usize;
        let mut ring = vec![first];
        while ring.len() < deg {
            let nxt = succ[v][ring.last().unwrap()];
            if nxt == first {
                break;
            }
            ring.push(nxt);
        }
        assert_eq!(ring.len(), deg, "vertex rotation is not a single cycle");
        out.push((v, ring));
    }
    Some(out)
}

fn components_of(adj: &[u64], within: u64) -> Vec<u64> {
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
                next |= adj[u] & within & !comp;
            }
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn classic_verdicts() {
        assert!(is_planar(&named::complete(4)).is_some());
        assert!(is_planar(&named::complete(5)).is_none());
        assert!(is_planar(&named::complete_bipartite(3, 3)).is_none());
        assert!(is_planar(&named::petersen()).is_none());
        assert!(is_planar(&named::octahedron()).is_some());
        assert!(is_planar(&named::bipyramid()).is_some());
        assert!(is_planar(&named::cycle(8)).is_some());
        assert!(is_planar(&named::path(6)).is_some());
        assert!(is_planar(&named::star(5)).is_some());
    }

    #[test]
    fn embeddings_validate() {
        for g in [
            named::complete(4),
            named::octahedron(),
            named::bipyramid(),
            named::wheel(6),
            named::cycle(9),
            named::path(5),
            named::complete_bipartite(2, 5),
        ] {
            let rot = is_planar(&g).expect("planar");
            assert!(rot.validates_embedding(&g));
        }
    }

    #[test]
    fn triangulation_embedding_has_triangular_faces() {
        let rot = is_planar(&named::octahedron()).unwrap();
        let faces = rot.faces();
        assert_eq!(faces.len(), 8);
        assert!(faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn disconnected_and_tiny_graphs() {
        let mut g = Graph::new(5).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(2, 3).unwrap();
        let rot = is_planar(&g).expect("forest is planar");
        assert!(rot.validates_embedding(&g));
        assert!(is_planar(&Graph::new(1).unwrap()).is_some());
    }

    #[test]
    fn cut_vertex_merge() {
        // Two triangles sharing vertex 0 plus a pendant edge.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (0, 5)],
        )
        .unwrap();
        let rot = is_planar(&g).expect("planar");
        assert!(rot.validates_embedding(&g));
        assert_eq!(rot.order[0].len(), 5);
    }

    #[test]
    fn maximal_planar_checks() {
        assert!(is_maximal_planar(&named::complete(4)).unwrap());
        assert!(is_maximal_planar(&named::octahedron()).unwrap());
        assert!(is_maximal_planar(&named::bipyramid()).unwrap());
        assert!(!is_maximal_planar(&named::cycle(5)).unwrap());
        assert!(!is_maximal_planar(&named::complete(5)).unwrap());
        assert!(is_maximal_planar(&named::complete(3)).unwrap());
        assert!(is_maximal_planar(&named::complete(2)).is_err());
        // Right edge count but disconnected: 2 triangles + isolated clutter
        // cannot reach 3n-6, so fabricate via K4 plus isolated vertex riddle:
        // n=5 needs 9 edges; K4 + isolated vertex has 6. Not maximal.
        let mut g = named::complete(4);
        g = {
            let mut h = Graph::new(5).unwrap();
            for (u, v) in g.edges() {
                h.add_edge(u, v).unwrap();
            }
            h
        };
        assert!(!is_maximal_planar(&g).unwrap());
    }

    #[test]
    fn dense_planar_graph_embeds() {
        // Stacked triangulation: repeatedly insert a vertex into a face of K4.
        let mut g = named::complete(4);
        let mut faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        for step in 0..6 {
            let f = faces[step % faces.len()];
            let mut h = Graph::new(g.vertex_count() + 1).unwrap();
            for (u, v) in g.edges() {
                h.add_edge(u, v).unwrap();
            }
            let w = h.vertex_count() - 1;
            for &x in &f {
                h.add_edge(w, x).unwrap();
            }
            faces.push([f[0], f[1], w]);
            faces.push([f[0], f[2], w]);
            faces.push([f[1], f[2], w]);
            g = h;
        }
        assert_eq!(g.edge_count(), 3 * g.vertex_count() - 6);
        let rot = is_planar(&g).expect("stacked triangulation is planar");
        assert!(rot.validates_embedding(&g));
        assert!(is_maximal_planar(&g).unwrap());
    }
}
