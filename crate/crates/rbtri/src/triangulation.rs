//! Plane triangulations: validation, canonical forms, isomorph-free
//! exhaustive generation, and an independent brute-force oracle.
//!
//! Generation starts from K4 and repeatedly applies the three local
//! expansions that insert a vertex of degree 3 (inside a face), degree 4
//! (across an edge), or degree 5 (fanned over four consecutive neighbors of
//! a vertex), deduplicating levels by canonical code. The inverse
//! reductions are provided so the expansion/reduction pairs can be
//! property-tested as exact involutions.
//!
//! Canonical codes hinge on the fact that a 3-connected planar graph has a
//! unique sphere embedding up to reflection, so minimizing a rotation-aware
//! BFS encoding over every starting directed edge and both orientations
//! yields a label-independent invariant that is equal exactly on isomorphic
//! triangulations.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::planarity::{is_planar, RotationSystem};
use std::collections::BTreeMap;
use std::fmt;

/// Largest order `generate` accepts by default.
pub const DEFAULT_GENERATION_LIMIT: usize = 14;

/// A plane triangulation: a maximal planar simple graph together with one
/// of its (combinatorially unique) embeddings.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: Graph,
    pub rotation: RotationSystem,
}

/// Two triangulations are equal when they have the same graph and the same
/// cyclic order at every vertex (ring start points are representation
/// artifacts, not structure).
impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.rotation.order.len() == other.rotation.order.len()
            && self
                .rotation
                .order
                .iter()
                .zip(&other.rotation.order)
                .all(|(a, b)| cyclically_equal(a, b))
    }
}

impl Eq for Triangulation {}

fn cyclically_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match a.iter().position(|&x| x == b[0]) {
        None => false,
        Some(s) => (0..a.len()).all(|j| a[(s + j) % a.len()] == b[j]),
    }
}

/// Byte string identifying the isomorphism class of a triangulation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl serde::Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl Triangulation {
    /// Wrap a graph and embedding, validating every structural invariant.
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<Triangulation> {
        let t = Triangulation { graph, rotation };
        t.validate()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Check order >= 4, the edge count 3n-6, connectivity, that the
    /// rotation system embeds the graph at genus zero, and that every face
    /// is a triangle.
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        if n < 4 {
            return Err(Error::InvalidArgument(format!(
                "triangulations need at least 4 vertices, got {n}"
            )));
        }
        if self.graph.edge_count() != 3 * n - 6 {
            return Err(Error::InvalidArgument(format!(
                "expected {} edges for order {n}, found {}",
                3 * n - 6,
                self.graph.edge_count()
            )));
        }
        if !self.graph.is_connected() {
            return Err(Error::InvalidArgument("triangulation is disconnected".into()));
        }
        if !self.rotation.validates_embedding(&self.graph) {
            return Err(Error::InvalidArgument(
                "rotation system is not a plane embedding of the graph".into(),
            ));
        }
        if let Some(f) = self.rotation.faces().iter().find(|f| f.len() != 3) {
            return Err(Error::InvalidArgument(format!(
                "non-triangular face of length {}",
                f.len()
            )));
        }
        Ok(())
    }

    /// All children obtainable by one expansion of any kind, in a fixed
    /// deterministic order (faces, then edges, then fan positions).
    pub fn expansions(&self) -> Vec<Triangulation> {
        let mut out = Vec::new();
        for f in self.rotation.faces() {
            out.push(self.expand3([f[0], f[1], f[2]]).expect("face expansion"));
        }
        for (x, y) in self.graph.edges() {
            out.push(self.expand4(x, y).expect("edge expansion"));
        }
        for a in 0..self.order() {
            if self.graph.degree(a) >= 4 {
                for i in 0..self.graph.degree(a) {
                    out.push(self.expand5(a, i).expect("fan expansion"));
                }
            }
        }
        out
    }

    /// Insert a degree-3 vertex inside the face traced `a -> b -> c`.
    pub fn expand3(&self, face: [usize; 3]) -> Result<Triangulation> {
        let [a, b, c] = face;
        self.check_face(a, b, c)?;
        let v = self.order();
        let mut graph = self.graph.grown(1);
        graph.add_edge(v, a)?;
        graph.add_edge(v, b)?;
        graph.add_edge(v, c)?;
        let mut order = self.rotation.order.clone();
        // The new faces keep the old trace directions, so each face vertex
        // gains v immediately after its face-predecessor.
        insert_after(&mut order[a], c, v);
        insert_after(&mut order[b], a, v);
        insert_after(&mut order[c], b, v);
        order.push(vec![a, c, b]);
        let t = Triangulation {
            graph,
            rotation: RotationSystem { order },
        };
        debug_assert!(t.validate().is_ok());
        Ok(t)
    }

    /// Replace edge (x, y) by a degree-4 vertex joined to x, y and the two
    /// opposite face vertices.
    pub fn expand4(&self, x: usize, y: usize) -> Result<Triangulation> {
        if !self.graph.has_edge(x, y) {
            return Err(Error::InvalidArgument(format!("({x},{y}) is not an edge")));
        }
        let p = self.rotation.successor(y, x); // face x -> y -> p
        let q = self.rotation.successor(x, y); // face y -> x -> q
        if p == q {
            return Err(Error::InvalidArgument(
                "edge has the same opposite vertex on both sides".into(),
            ));
        }
        let v = self.order();
        let mut graph = self.graph.grown(1);
        graph.remove_edge(x, y);
        for w in [x, y, p, q] {
            graph.add_edge(v, w)?;
        }
        let mut order = self.rotation.order.clone();
        replace(&mut order[x], y, v);
        replace(&mut order[y], x, v);
        insert_after(&mut order[p], y, v);
        insert_after(&mut order[q], x, v);
        order.push(vec![q, x, p, y]);
        let t = Triangulation {
            graph,
            rotation: RotationSystem { order },
        };
        debug_assert!(t.validate().is_ok());
        Ok(t)
    }

    /// Insert a degree-5 vertex over the four consecutive neighbors of `a`
    /// starting at rotation position `i`: with (b, c, d, e) = those
    /// neighbors, edges (a,c) and (a,d) are replaced by the fan from the
    /// new vertex.
    pub fn expand5(&self, a: usize, i: usize) -> Result<Triangulation> {
        let ring = &self.rotation.order[a];
        let deg = ring.len();
        if deg < 4 {
            return Err(Error::InvalidArgument(format!(
                "fan expansion needs degree >= 4 at {a}, got {deg}"
            )));
        }
        let b = ring[i % deg];
        let c = ring[(i + 1) % deg];
        let d = ring[(i + 2) % deg];
        let e = ring[(i + 3) % deg];
        let v = self.order();
        let mut graph = self.graph.grown(1);
        graph.remove_edge(a, c);
        graph.remove_edge(a, d);
        for w in [a, b, c, d, e] {
            graph.add_edge(v, w)?;
        }
        let mut order = self.rotation.order.clone();
        remove(&mut order[a], c);
        remove(&mut order[a], d);
        insert_after(&mut order[a], b, v);
        insert_after(&mut order[b], c, v);
        replace(&mut order[c], a, v);
        replace(&mut order[d], a, v);
        insert_after(&mut order[e], a, v);
        order.push(vec![a, b, c, d, e]);
        let t = Triangulation {
            graph,
            rotation: RotationSystem { order },
        };
        debug_assert!(t.validate().is_ok());
        Ok(t)
    }

    /// Inverse of `expand3`: delete the degree-3 vertex `v`, which must be
    /// the highest-labeled vertex.
    pub fn reduce3(&self, v: usize) -> Result<Triangulation> {
        self.check_last(v, 3)?;
        let mut order = self.rotation.order.clone();
        for u in self.graph.neighbors(v) {
            remove(&mut order[u], v);
        }
        order.pop();
        let t = Triangulation {
            graph: self.graph.shrunk(),
            rotation: RotationSystem { order },
        };
        t.validate()?;
        Ok(t)
    }

    /// Inverse of `expand4`: delete the degree-4 vertex `v` (highest label)
    /// and re-insert the diagonal from `x` to the neighbor opposite it.
    pub fn reduce4(&self, v: usize, x: usize) -> Result<Triangulation> {
        self.check_last(v, 4)?;
        let ring = &self.rotation.order[v];
        let i = ring
            .iter()
            .position(|&w| w == x)
            .ok_or_else(|| Error::InvalidArgument(format!("{x} is not adjacent to {v}")))?;
        let y = ring[(i + 2) % 4];
        let p = ring[(i + 1) % 4];
        let q = ring[(i + 3) % 4];
        if self.graph.has_edge(x, y) {
            return Err(Error::InvalidArgument(format!(
                "diagonal ({x},{y}) already present; reduction would create a multi-edge"
            )));
        }
        let mut graph = self.graph.clone();
        graph.add_edge(x, y)?;
        let graph = graph.shrunk();
        let mut order = self.rotation.order.clone();
        replace(&mut order[x], v, y);
        replace(&mut order[y], v, x);
        remove(&mut order[p], v);
        remove(&mut order[q], v);
        order.pop();
        let t = Triangulation {
            graph,
            rotation: RotationSystem { order },
        };
        t.validate()?;
        Ok(t)
    }

    /// Inverse of `expand5`: delete the degree-5 vertex `v` (highest label)
    /// and re-triangulate its pentagonal hole by the fan from `a`.
    pub fn reduce5(&self, v: usize, a: usize) -> Result<Triangulation> {
        self.check_last(v, 5)?;
        let ring = &self.rotation.order[v];
        let i = ring
            .iter()
            .position(|&w| w == a)
            .ok_or_else(|| Error::InvalidArgument(format!("{a} is not adjacent to {v}")))?;
        let b = ring[(i + 1) % 5];
        let c = ring[(i + 2) % 5];
        let d = ring[(i + 3) % 5];
        let e = ring[(i + 4) % 5];
        if self.graph.has_edge(a, c) || self.graph.has_edge(a, d) {
            return Err(Error::InvalidArgument(format!(
                "fan chord from {a} already present; reduction would create a multi-edge"
            )));
        }
        let mut graph = self.graph.clone();
        graph.add_edge(a, c)?;
        graph.add_edge(a, d)?;
        let graph = graph.shrunk();
        let mut order = self.rotation.order.clone();
        remove(&mut order[a], v);
        insert_after(&mut order[a], b, c);
        insert_after(&mut order[a], c, d);
        remove(&mut order[b], v);
        replace(&mut order[c], v, a);
        replace(&mut order[d], v, a);
        remove(&mut order[e], v);
        order.pop();
        let t = Triangulation {
            graph,
            rotation: RotationSystem { order },
        };
        t.validate()?;
        Ok(t)
    }

    fn check_face(&self, a: usize, b: usize, c: usize) -> Result<()> {
        let ok = self.graph.has_edge(a, b)
            && self.graph.has_edge(b, c)
            && self.graph.has_edge(c, a)
            && self.rotation.successor(b, a) == c
            && self.rotation.successor(c, b) == a
            && self.rotation.successor(a, c) == b;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "({a},{b},{c}) is not a directed face of the embedding"
            )))
        }
    }

    fn check_last(&self, v: usize, want_deg: usize) -> Result<()> {
        if v + 1 != self.order() {
            return Err(Error::InvalidArgument(format!(
                "reductions remove the highest-labeled vertex; got {v} of {}",
                self.order()
            )));
        }
        if self.graph.degree(v) != want_deg {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} has degree {}, expected {want_deg}",
                self.graph.degree(v)
            )));
        }
        Ok(())
    }
}

fn insert_after(ring: &mut Vec<usize>, after: usize, x: usize) {
    let i = ring
        .iter()
        .position(|&w| w == after)
        .expect("rotation surgery: anchor not in ring");
    ring.insert(i + 1, x);
}

fn replace(ring: &mut [usize], old: usize, new: usize) {
    let i = ring
        .iter()
        .position(|&w| w == old)
        .expect("rotation surgery: vertex not in ring");
    ring[i] = new;
}

fn remove(ring: &mut Vec<usize>, x: usize) {
    let i = ring
        .iter()
        .position(|&w| w == x)
        .expect("rotation surgery: vertex not in ring");
    ring.remove(i);
}

/// Embed a maximal planar graph as a Triangulation.
pub fn triangulation_from_graph(g: &Graph) -> Result<Triangulation> {
    let rotation = is_planar(g)
        .ok_or_else(|| Error::InvalidArgument("graph is not planar".into()))?;
    Triangulation::new(g.clone(), rotation)
}

/// Label-independent identifier: lexicographic minimum over every starting
/// directed edge and both orientations of a breadth-first encoding of the
/// rotation system. Only meaningful for triangulations (whose embeddings
/// are unique up to reflection).
pub fn canonical_form(t: &Triangulation) -> CanonicalCode {
    let rot = &t.rotation.order;
    let n = rot.len();
    let mut best: Option<Vec<u8>> = None;
    for v in 0..n {
        for k in 0..rot[v].len() {
            for mirror in [false, true] {
                let code = bfs_code(rot, v, rot[v][k], mirror);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    CanonicalCode(best.expect("triangulations are nonempty"))
}

const UNSET: usize = usize::MAX;

/// Relabel by BFS from (root, entry) reading each vertex's rotation ring
/// from its entry neighbor in a fixed direction; emit the relabeled rings
/// with 0xFF separators. The encoding is reconstructible, so it is equal
/// for two triangulations exactly when some (root, entry, direction) pair
/// aligns their embeddings.
fn bfs_code(rot: &[Vec<usize>], root: usize, entry: usize, mirror: bool) -> Vec<u8> {
    let n = rot.len();
    let mut label = vec![UNSET; n];
    let mut entry_of = vec![UNSET; n];
    let mut queue = Vec::with_capacity(n);
    label[root] = 0;
    entry_of[root] = entry;
    queue.push(root);
    let mut code = Vec::with_capacity(1 + 7 * n);
    code.push(n as u8);
    let mut next = 1usize;
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        let ring = &rot[v];
        let deg = ring.len();
        let start = ring
            .iter()
            .position(|&w| w == entry_of[v])
            .expect("entry vertex must be a neighbor");
        for step in 0..deg {
            let u = if mirror {
                ring[(start + deg - step % deg) % deg]
            } else {
                ring[(start + step) % deg]
            };
            if label[u] == UNSET {
                label[u] = next;
                next += 1;
                entry_of[u] = v;
                queue.push(u);
            }
            code.push(label[u] as u8);
        }
        code.push(0xFF);
    }
    debug_assert_eq!(queue.len(), n, "rotation BFS must reach every vertex");
    code
}

/// Every isomorphism class of plane triangulations of order `n`, in
/// canonical-code order, generated by levelwise expansion from K4.
pub fn generate(n: usize) -> Result<Vec<Triangulation>> {
    generate_with_limit(n, DEFAULT_GENERATION_LIMIT)
}

pub fn generate_with_limit(n: usize, limit: usize) -> Result<Vec<Triangulation>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "no triangulations below order 4 (asked for {n})"
        )));
    }
    if n > limit {
        return Err(Error::BudgetExhausted {
            spent: 0,
            bounds: None,
        });
    }
    let k4 = triangulation_from_graph(&crate::graph::named::complete(4))?;
    let mut level: BTreeMap<CanonicalCode, Triangulation> = BTreeMap::new();
    level.insert(canonical_form(&k4), k4);
    for _ in 5..=n {
        let mut next: BTreeMap<CanonicalCode, Triangulation> = BTreeMap::new();
        for t in level.values() {
            for child in t.expansions() {
                let code = canonical_form(&child);
                next.entry(code).or_insert(child);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Ground-truth enumeration for small orders: every `3n-6`-edge subset of
/// the complete graph is filtered by cheap necessary conditions (minimum
/// degree 3, every edge in at least two triangles, connectivity) and then
/// by an actual planar embedding. Independent of the expansion machinery.
pub fn oracle_generate(n: usize) -> Result<Vec<Triangulation>> {
    if !(4..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "oracle enumeration supports orders 4..=8, got {n}"
        )));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let np = pairs.len();
    let target = 3 * n - 6;
    let mut found: BTreeMap<CanonicalCode, Triangulation> = BTreeMap::new();

    let mut mask: u64 = (1u64 << target) - 1;
    let end: u64 = 1u64 << np;
    while mask < end {
        if let Some(t) = oracle_candidate(n, &pairs, mask) {
            found.entry(canonical_form(&t)).or_insert(t);
        }
        // Next subset of the same popcount (Gosper's hack).
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(found.into_values().collect())
}

fn oracle_candidate(n: usize, pairs: &[(usize, usize)], mask: u64) -> Option<Triangulation> {
    let mut rows = [0u64; 8];
    for i in bits(mask) {
        let (u, v) = pairs[i];
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    if rows[..n].iter().any(|r| r.count_ones() < 3) {
        return None;
    }
    // Both sides of every edge of a triangulation are triangles.
    for i in bits(mask) {
        let (u, v) = pairs[i];
        if (rows[u] & rows[v]).count_ones() < 2 {
            return None;
        }
    }
    // Connectivity over the bitset rows.
    let all = (1u64 << n) - 1;
    let mut seen = 1u64;
    loop {
        let mut grown = seen;
        for v in bits(seen) {
            grown |= rows[v];
        }
        if grown == seen {
            break;
        }
        seen = grown;
    }
    if seen != all {
        return None;
    }
    let mut g = Graph::new(n).ok()?;
    for i in bits(mask) {
        let (u, v) = pairs[i];
        g.add_edge(u, v).ok()?;
    }
    let rot = is_planar(&g)?;
    Triangulation::new(g, rot).ok()
}
