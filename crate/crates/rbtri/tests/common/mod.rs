//! Independent oracles shared by the integration suites. Everything here
//! is deliberately naive: straight enumeration with no pruning or reuse
//! of the library's search machinery, so agreement is meaningful.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbtri::graph::Graph;
use rbtri::rainbow::EdgeColoring;

/// Maximum matching size by recursion over edges, no blossoms involved.
pub fn brute_matching_number(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], i: usize, used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = rec(edges, i + 1, used);
        let (u, v) = edges[i];
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            let take = 1 + rec(edges, i + 1, used | 1 << u | 1 << v);
            return take.max(skip);
        }
        skip
    }
    rec(&g.edges(), 0, 0)
}

/// Largest rainbow matching by exhaustive edge-subset recursion.
pub fn brute_max_rainbow(col: &EdgeColoring) -> usize {
    let edges = col.edges();
    let colors = col.colors();
    fn rec(
        edges: &[(usize, usize)],
        colors: &[u32],
        i: usize,
        used_v: u64,
        used_c: u64,
    ) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = rec(edges, colors, i + 1, used_v, used_c);
        let (u, v) = edges[i];
        let cbit = 1u64 << (colors[i] - 1);
        if used_v >> u & 1 == 0 && used_v >> v & 1 == 0 && used_c & cbit == 0 {
            let take = 1 + rec(
                edges,
                colors,
                i + 1,
                used_v | 1 << u | 1 << v,
                used_c | cbit,
            );
            return take.max(skip);
        }
        skip
    }
    rec(edges, colors, 0, 0, 0)
}

/// Exact anti-Ramsey value by full restricted-growth-string enumeration
/// of every set partition of the edges — no pruning at all. Only sane for
/// few edges.
pub fn brute_ar(g: &Graph, k: usize) -> usize {
    let e = g.edge_count();
    assert!(e <= 12, "full partition enumeration needs few edges");
    assert!(k >= 2);
    let mut cls = vec![1u32; e];
    let mut best = 0usize;
    loop {
        let c = *cls.iter().max().unwrap() as usize;
        if c > best {
            let col = EdgeColoring::new(g.clone(), cls.clone()).unwrap();
            if brute_max_rainbow(&col) < k {
                best = c;
            }
        }
        // next restricted growth string
        let mut i = e;
        loop {
            if i == 1 {
                return best;
            }
            i -= 1;
            let cap = cls[..i].iter().max().unwrap() + 1;
            if cls[i] < cap {
                cls[i] += 1;
                for x in cls[i + 1..].iter_mut() {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// Hamiltonicity by trying every cyclic vertex order.
pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    let mut order: Vec<usize> = (1..n).collect();
    loop {
        let mut prev = 0usize;
        let mut ok = true;
        for &v in &order {
            if !g.has_edge(prev, v) {
                ok = false;
                break;
            }
            prev = v;
        }
        if ok && g.has_edge(prev, 0) {
            return true;
        }
        if !next_permutation(&mut order) {
            return false;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Backtracking graph isomorphism with a degree prefilter.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    fn assign(
        a: &Graph,
        b: &Graph,
        da: &[usize],
        db: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
                continue;
            }
            map.push(w);
            used[w] = true;
            if assign(a, b, da, db, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }
    assign(a, b, &da, &db, &mut Vec::new(), &mut vec![false; n])
}

/// Seeded random connected-ish graph: each pair independently an edge.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random spanning subgraph of a host, keeping each edge with chance p.
pub fn random_subgraph(rng: &mut ChaCha8Rng, g: &Graph, p: f64) -> Graph {
    let mut out = Graph::new(g.vertex_count()).unwrap();
    for (u, v) in g.edges() {
        if rng.gen_bool(p) {
            out.add_edge(u, v).unwrap();
        }
    }
    out
}

/// Random surjective coloring with exactly c classes (c <= edge count):
/// the first c edges (in a shuffled order) seed the classes.
pub fn random_coloring(rng: &mut ChaCha8Rng, g: &Graph, c: u32) -> EdgeColoring {
    let e = g.edge_count();
    assert!(c >= 1 && (c as usize) <= e);
    let mut idx: Vec<usize> = (0..e).collect();
    for i in (1..e).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    let mut colors = vec![0u32; e];
    for (slot, &ei) in idx.iter().enumerate() {
        colors[ei] = if slot < c as usize {
            slot as u32 + 1
        } else {
            rng.gen_range(1..=c)
        };
    }
    EdgeColoring::new(g.clone(), rbtri::rainbow::rgs_canonical(&colors)).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
