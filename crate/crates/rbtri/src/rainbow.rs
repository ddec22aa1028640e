//! Edge colorings, rainbow matchings, representative subgraphs, and
//! independently checkable no-rainbow certificates.
//!
//! A coloring is stored edge-indexed in the host's global edge order with
//! colors `1..=c`, total and surjective. The rainbow matching search is an
//! exact depth-first enumeration over edges with free-vertex and
//! unused-color pruning; it is deliberately separate from the search
//! engines so that certificates are checked by code that shares nothing
//! with the code that produced them.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{from_graph6, to_graph6};
use crate::matching::matching_number;
use serde::{Deserialize, Serialize};

/// A total, surjective edge coloring of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    host: Graph,
    edges: Vec<(usize, usize)>,
    colors: Vec<u32>,
    c: u32,
}

impl EdgeColoring {
    /// `colors[i]` is the color of the host's i-th edge in global edge
    /// order; colors must be exactly 1..=c with every value used.
    pub fn new(host: Graph, colors: Vec<u32>) -> Result<EdgeColoring> {
        let edges = host.edges();
        if colors.len() != edges.len() {
            return Err(Error::InvalidArgument(format!(
                "coloring covers {} edges, host has {}",
                colors.len(),
                edges.len()
            )));
        }
        if edges.is_empty() {
            return Err(Error::InvalidArgument(
                "colorings of edgeless graphs are not supported".into(),
            ));
        }
        let c = *colors.iter().max().unwrap();
        let mut used = vec![false; c as usize + 1];
        for &col in &colors {
            if col == 0 {
                return Err(Error::InvalidArgument(
                    "colors must be 1-based contiguous".into(),
                ));
            }
            used[col as usize] = true;
        }
        if used[1..].iter().any(|u| !u) {
            return Err(Error::InvalidArgument(
                "colors must be 1-based contiguous".into(),
            ));
        }
        Ok(EdgeColoring {
            host,
            edges,
            colors,
            c,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn color_by_index(&self, ei: usize) -> u32 {
        self.colors[ei]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<u32> {
        let key = (u.min(v), u.max(v));
        self.edges
            .iter()
            .position(|&e| e == key)
            .map(|i| self.colors[i])
    }

    /// Edge indices of one color class, in global edge order.
    pub fn class(&self, color: u32) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.colors[i] == color)
            .collect()
    }

    /// Merge class `b` into class `a` and renumber canonically; the result
    /// has c - 1 colors.
    pub fn merge_classes(&self, a: u32, b: u32) -> Result<EdgeColoring> {
        if a == b || a == 0 || b == 0 || a > self.c || b > self.c {
            return Err(Error::InvalidArgument(format!(
                "cannot merge classes {a} and {b} of {}",
                self.c
            )));
        }
        let merged: Vec<u32> = self
            .colors
            .iter()
            .map(|&col| if col == b { a } else { col })
            .collect();
        EdgeColoring::new(self.host.clone(), rgs_canonical(&merged))
    }
}

/// Restricted-growth renumbering: the first occurrence of each color gets
/// the next unused index, making color names canonical.
pub fn rgs_canonical(colors: &[u32]) -> Vec<u32> {
    let mut map: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(colors.len());
    let max = colors.iter().copied().max().unwrap_or(0) as usize;
    let mut assigned = vec![0u32; max + 1];
    for &col in colors {
        let slot = &mut assigned[col as usize];
        if *slot == 0 {
            map.push(col);
            *slot = map.len() as u32;
        }
        out.push(*slot);
    }
    out
}

struct RainbowSearch<'a> {
    col: &'a EdgeColoring,
    cap: usize,
    stop_at: usize,
    color_used: Vec<bool>,
    best: usize,
    best_edges: Vec<usize>,
    current: Vec<usize>,
    n: usize,
}

impl RainbowSearch<'_> {
    fn run(&mut self, i: usize, used_v: u64) {
        if self.current.len() > self.best {
            self.best = self.current.len();
            self.best_edges = self.current.clone();
        }
        if self.best >= self.stop_at || self.best == self.cap || i == self.col.edges.len() {
            return;
        }
        let free = (self.n as u32 - used_v.count_ones()) as usize / 2;
        let colors_left = self.col.c as usize
            - self.color_used.iter().filter(|&&u| u).count();
        if self.current.len() + free.min(colors_left) <= self.best {
            return;
        }
        let (u, v) = self.col.edges[i];
        let col = self.col.colors[i] as usize;
        if used_v >> u & 1 == 0 && used_v >> v & 1 == 0 && !self.color_used[col] {
            self.color_used[col] = true;
            self.current.push(i);
            self.run(i + 1, used_v | 1 << u | 1 << v);
            self.current.pop();
            self.color_used[col] = false;
            if self.best >= self.stop_at {
                return;
            }
        }
        self.run(i + 1, used_v);
    }
}

/// Maximum size of a matching with pairwise distinct edge colors, plus a
/// witness (host edge indices). Exact.
pub fn max_rainbow_matching(col: &EdgeColoring) -> (usize, Vec<(usize, usize)>) {
    rainbow_search(col, usize::MAX)
}

/// The largest rainbow matching found (stopping early once `stop_at` is
/// reached), with its edges.
pub fn rainbow_search(col: &EdgeColoring, stop_at: usize) -> (usize, Vec<(usize, usize)>) {
    let cap = (col.c as usize).min(matching_number(&col.host));
    let mut s = RainbowSearch {
        col,
        cap,
        stop_at,
        color_used: vec![false; col.c as usize + 1],
        best: 0,
        best_edges: Vec::new(),
        current: Vec::new(),
        n: col.host.vertex_count(),
    };
    s.run(0, 0);
    let witness: Vec<(usize, usize)> = s.best_edges.iter().map(|&i| col.edges[i]).collect();
    debug_assert!(verify_rainbow_matching(col, &witness));
    (s.best, witness)
}

/// Does the coloring contain a rainbow matching of size `k`? Short-circuits
/// on the first witness.
pub fn has_rainbow_matching(col: &EdgeColoring, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k = 0 matchings are not meaningful here".into(),
        ));
    }
    Ok(rainbow_search(col, k).0 >= k)
}

/// Check that `edges` is a matching in the host using pairwise distinct
/// colors.
pub fn verify_rainbow_matching(col: &EdgeColoring, edges: &[(usize, usize)]) -> bool {
    let mut vmask = 0u64;
    let mut seen = vec![false; col.c as usize + 1];
    for &(u, v) in edges {
        let color = match col.color_of(u, v) {
            Some(c) => c as usize,
            None => return false,
        };
        if vmask >> u & 1 == 1 || vmask >> v & 1 == 1 || seen[color] {
            return false;
        }
        vmask |= 1 << u | 1 << v;
        seen[color] = true;
    }
    true
}

/// Spanning subgraph keeping exactly one edge per color class. `pick` maps
/// (color, class edge indices in global order) to a position in that list.
/// Every matching of the result is a rainbow matching of the coloring.
pub fn representative_subgraph(
    col: &EdgeColoring,
    pick: impl Fn(u32, &[usize]) -> usize,
) -> Graph {
    let mut g = Graph::new(col.host.vertex_count()).expect("host order is valid");
    for color in 1..=col.c {
        let class = col.class(color);
        let chosen = class[pick(color, &class).min(class.len() - 1)];
        let (u, v) = col.edges[chosen];
        g.add_edge(u, v).expect("host edges are valid");
    }
    g
}

/// The default representative: the smallest edge of each class in global
/// edge order.
pub fn representative_default(col: &EdgeColoring) -> Graph {
    representative_subgraph(col, |_, _| 0)
}

/// Package proving an anti-Ramsey lower bound: a coloring of a graph that
/// avoids any rainbow matching of size `k`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RainbowCertificate {
    pub graph6: String,
    pub coloring: ColoringSource,
    pub k: usize,
    pub colors: u32,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ColoringSource {
    /// Coloring file content, inline.
    Inline(String),
    /// Path to a coloring file.
    Path(String),
}

pub const VERDICT_NO_RAINBOW: &str = "no_rainbow_kK2";

impl RainbowCertificate {
    pub fn new_inline(host: &Graph, col: &EdgeColoring, k: usize) -> RainbowCertificate {
        RainbowCertificate {
            graph6: to_graph6(host),
            coloring: ColoringSource::Inline(write_coloring(col)),
            k,
            colors: col.c,
            verdict: VERDICT_NO_RAINBOW.to_string(),
        }
    }

    /// Resolve the coloring against the certificate's own graph, reading a
    /// referenced file if necessary.
    pub fn load(&self) -> Result<(Graph, EdgeColoring)> {
        let g = from_graph6(&self.graph6)?;
        let text = match &self.coloring {
            ColoringSource::Inline(s) => s.clone(),
            ColoringSource::Path(p) => std::fs::read_to_string(p)?,
        };
        let col = parse_coloring(&text, &g).map_err(certify_err)?;
        if col.num_colors() != self.colors {
            return Err(Error::InvalidCertificate(format!(
                "certificate states {} colors, coloring uses {}",
                self.colors,
                col.num_colors()
            )));
        }
        Ok((g, col))
    }
}

fn certify_err(e: Error) -> Error {
    match e {
        Error::InvalidArgument(m) | Error::Parse(m) => Error::InvalidCertificate(m),
        other => other,
    }
}

/// Re-check a certificate from scratch: parse, validate the coloring, and
/// run the exact rainbow search. True iff no rainbow matching of size `k`
/// exists. Independent of any engine that may have emitted the package.
pub fn verify_no_rainbow(cert: &RainbowCertificate) -> Result<bool> {
    if cert.k == 0 {
        return Err(Error::InvalidArgument(
            "k = 0 matchings are not meaningful here".into(),
        ));
    }
    if cert.verdict != VERDICT_NO_RAINBOW {
        return Err(Error::InvalidCertificate(format!(
            "unknown verdict {:?}",
            cert.verdict
        )));
    }
    let (_, col) = cert.load()?;
    Ok(!has_rainbow_matching(&col, cert.k)?)
}

/// Serialize a coloring in the text format: header `c <colors>`, then one
/// `u v col` line per edge in global edge order.
pub fn write_coloring(col: &EdgeColoring) -> String {
    let mut out = format!("c {}\n", col.c);
    for (i, &(u, v)) in col.edges.iter().enumerate() {
        out.push_str(&format!("{u} {v} {}\n", col.colors[i]));
    }
    out
}

/// Parse the text coloring format against a host graph. Every host edge
/// must appear exactly once; colors must be 1-based and contiguous.
pub fn parse_coloring(text: &str, host: &Graph) -> Result<EdgeColoring> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty coloring".into()))?;
    let c: u32 = header
        .strip_prefix("c ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected header `c <colors>`, got {header:?}")))?;
    let edges = host.edges();
    let mut colors: Vec<Option<u32>> = vec![None; edges.len()];
    for line in lines {
        let mut it = line.split_whitespace();
        let (u, v, col): (usize, usize, u32) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(a), Some(b), Some(c), None) => (
                a.parse().map_err(|_| Error::Parse(format!("bad line {line:?}")))?,
                b.parse().map_err(|_| Error::Parse(format!("bad line {line:?}")))?,
                c.parse().map_err(|_| Error::Parse(format!("bad line {line:?}")))?,
            ),
            _ => return Err(Error::Parse(format!("expected `u v col`, got {line:?}"))),
        };
        if col == 0 {
            return Err(Error::InvalidArgument(
                "colors must be 1-based contiguous".into(),
            ));
        }
        let key = (u.min(v), u.max(v));
        let i = edges
            .iter()
            .position(|&e| e == key)
            .ok_or_else(|| Error::Parse(format!("({u},{v}) is not an edge of the host")))?;
        if colors[i].replace(col).is_some() {
            return Err(Error::Parse(format!("edge ({u},{v}) colored twice")));
        }
    }
    let missing = colors.iter().position(|c| c.is_none());
    if let Some(i) = missing {
        return Err(Error::Parse(format!(
            "edge {:?} has no color",
            edges[i]
        )));
    }
    let colors: Vec<u32> = colors.into_iter().map(|c| c.unwrap()).collect();
    if colors.iter().max() != Some(&c) {
        return Err(Error::InvalidArgument(
            "colors must be 1-based contiguous".into(),
        ));
    }
    EdgeColoring::new(host.clone(), colors)
}
