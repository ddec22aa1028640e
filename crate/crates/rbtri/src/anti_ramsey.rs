//! Exact anti-Ramsey computations: the largest color count `ar(G, k)` for
//! which some surjective coloring of G has no rainbow k-edge matching, and
//! the class-wise rainbow numbers over all plane triangulations of an
//! order.
//!
//! Two independent engines compute `ar`:
//!
//! * `ar_partition_dfs` walks every set partition of the edge set in
//!   restricted-growth order, abandoning a branch as soon as the freshly
//!   colored edge completes a rainbow k-matching (extending a coloring can
//!   never destroy one already present) or the color budget cannot beat
//!   the best coloring found.
//! * `ar_representative_completion` decides, for a descending color count
//!   c, whether a no-rainbow coloring with exactly c classes exists. Each
//!   class is identified by its minimum-index representative edge: the
//!   representative set R is a c-edge subgraph with matching number at
//!   most k-1 that contains the globally first edge, and every other edge
//!   joins a class whose representative precedes it. Class-merging
//!   monotonicity makes \"exactly c\" sufficient for deciding \"at least c\".
//!
//! Budgets are node counts, never wall-clock, so every result is exactly
//! reproducible.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::graph6::to_graph6;
use crate::matching::{matching_number, MatchingSolver};
use crate::rainbow::{
    has_rainbow_matching, verify_no_rainbow, EdgeColoring, RainbowCertificate,
};
use crate::triangulation::{canonical_form, generate, Triangulation};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

/// Node-count budget shared by the search engines. Thread-safe so audits
/// can fan out across workers against a single allowance.
pub struct Budget {
    limit: u64,
    spent: AtomicU64,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget {
            limit,
            spent: AtomicU64::new(0),
        }
    }

    /// Account one search node; false once the allowance is gone.
    pub fn tick(&self) -> bool {
        self.spent.fetch_add(1, Ordering::Relaxed) < self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }
}

/// Result of one anti-Ramsey computation on a single host.
#[derive(Clone, Debug, Serialize)]
pub struct ArResult {
    /// Canonical code (hex) for triangulations, graph6 otherwise.
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub ar: usize,
    /// A verified coloring attaining `ar`; absent only for k = 1 (where no
    /// coloring at all avoids a rainbow single edge) or edgeless hosts.
    pub certificate: Option<RainbowCertificate>,
    pub engine: String,
    pub nodes: u64,
    /// Set when the host has no k-matching at all, making every coloring
    /// trivially rainbow-free; `ar` is then just the edge count.
    pub vacuous: bool,
}

pub const ENGINE_PARTITION: &str = "partition_dfs";
pub const ENGINE_COMPLETION: &str = "representative_completion";

fn graph_id(g: &Graph) -> String {
    crate::triangulation::triangulation_from_graph(g)
        .map(|t| canonical_form(&t).to_hex())
        .unwrap_or_else(|_| to_graph6(g))
}

fn check_host(g: &Graph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k = 0 matchings are not meaningful here".into(),
        ));
    }
    if g.edge_count() > 64 {
        return Err(Error::InvalidArgument(format!(
            "search engines handle at most 64 edges, host has {}",
            g.edge_count()
        )));
    }
    Ok(())
}

/// Shared preamble: returns Some(result) when the answer needs no search
/// (vacuous host or k = 1).
fn trivial_ar(g: &Graph, k: usize, engine: &str) -> Result<Option<ArResult>> {
    check_host(g, k)?;
    let e = g.edge_count();
    if matching_number(g) < k {
        let certificate = if e > 0 {
            let col = EdgeColoring::new(g.clone(), (1..=e as u32).collect())?;
            let cert = RainbowCertificate::new_inline(g, &col, k);
            debug_assert!(verify_no_rainbow(&cert)?);
            Some(cert)
        } else {
            None
        };
        return Ok(Some(ArResult {
            graph: graph_id(g),
            n: g.vertex_count(),
            k,
            ar: e,
            certificate,
            engine: engine.to_string(),
            nodes: 0,
            vacuous: true,
        }));
    }
    if k == 1 {
        // Any coloring gives some edge a color: a rainbow 1-matching.
        return Ok(Some(ArResult {
            graph: graph_id(g),
            n: g.vertex_count(),
            k,
            ar: 0,
            certificate: None,
            engine: engine.to_string(),
            nodes: 0,
            vacuous: false,
        }));
    }
    Ok(None)
}

/// Is there a rainbow `need`-matching among the colored edges (cls[j] > 0)
/// avoiding the vertices of `avoid_v` and the classes of `avoid_cls`?
/// Class indices are 1-based; class bits are (class - 1).
fn rainbow_completion_exists(
    edges: &[(usize, usize)],
    cls: &[u32],
    need: usize,
    avoid_v: u64,
    avoid_cls: u64,
) -> bool {
    fn rec(
        edges: &[(usize, usize)],
        cls: &[u32],
        from: usize,
        need: usize,
        vmask: u64,
        cmask: u64,
    ) -> bool {
        if need == 0 {
            return true;
        }
        for j in from..edges.len() {
            if cls[j] == 0 {
                continue;
            }
            let bit = 1u64 << (cls[j] - 1);
            if cmask & bit != 0 {
                continue;
            }
            let (u, v) = edges[j];
            if vmask >> u & 1 == 1 || vmask >> v & 1 == 1 {
                continue;
            }
            if rec(edges, cls, j + 1, need - 1, vmask | 1 << u | 1 << v, cmask | bit) {
                return true;
            }
        }
        false
    }
    rec(edges, cls, 0, need, avoid_v, avoid_cls)
}

/// Exact anti-Ramsey value by exhaustive set-partition search.
pub fn ar_partition_dfs(g: &Graph, k: usize, budget: &Budget) -> Result<ArResult> {
    if let Some(r) = trivial_ar(g, k, ENGINE_PARTITION)? {
        return Ok(r);
    }
    let start = budget.spent();
    let edges = g.edges();
    let e = edges.len();
    let mut cls = vec![0u32; e];
    let mut best = 0usize;
    let mut best_cls = vec![1u32; e];

    struct Dfs<'a> {
        edges: &'a [(usize, usize)],
        k: usize,
        budget: &'a Budget,
        best: &'a mut usize,
        best_cls: &'a mut Vec<u32>,
    }
    fn dive(d: &mut Dfs, cls: &mut [u32], i: usize, used: u32) -> Result<()> {
        let e = d.edges.len();
        if i == e {
            if (used as usize) > *d.best {
                *d.best = used as usize;
                *d.best_cls = cls.to_vec();
            }
            return Ok(());
        }
        // Even giving every remaining edge a fresh color cannot beat best.
        if used as usize + (e - i) <= *d.best {
            return Ok(());
        }
        let (u, v) = d.edges[i];
        for c in 1..=used + 1 {
            if !d.budget.tick() {
                return Err(Error::BudgetExhausted {
                    spent: d.budget.spent(),
                    bounds: Some((*d.best as u64, e as u64)),
                });
            }
            cls[i] = c;
            // Would edge i complete a rainbow k-matching in the prefix?
            let fresh = rainbow_completion_exists(
                d.edges,
                cls,
                d.k - 1,
                1 << u | 1 << v,
                1 << (c - 1),
            );
            // cls[i] participates in the check via cls, so mask it: the
            // helper must not pick edge i itself.
            if !fresh {
                dive(d, cls, i + 1, used.max(c))?;
            }
            cls[i] = 0;
        }
        Ok(())
    }

    let mut dfs = Dfs {
        edges: &edges,
        k,
        budget,
        best: &mut best,
        best_cls: &mut best_cls,
    };
    dive(&mut dfs, &mut cls, 0, 0)?;

    let col = EdgeColoring::new(g.clone(), best_cls)?;
    let cert = RainbowCertificate::new_inline(g, &col, k);
    if !verify_no_rainbow(&cert)? {
        return Err(Error::InvalidCertificate(
            "partition search produced a coloring that fails independent re-checking".into(),
        ));
    }
    Ok(ArResult {
        graph: graph_id(g),
        n: g.vertex_count(),
        k,
        ar: best,
        certificate: Some(cert),
        engine: ENGINE_PARTITION.to_string(),
        nodes: budget.spent() - start,
        vacuous: false,
    })
}

/// Maximum edges of a spanning subgraph with matching number at most `b`,
/// with a witness edge set.
#[derive(Clone, Debug, Serialize)]
pub struct BoundedEdgeMax {
    pub max_edges: usize,
    pub witness: Vec<(usize, usize)>,
    pub nodes: u64,
}

/// Branch and bound: iteratively deepen the number of deleted edges; at
/// each node, if the remaining subgraph still has a (b+1)-matching, one of
/// those b+1 edges must be deleted. Memoized per depth on the edge mask.
pub fn max_edges_matching_bounded(g: &Graph, b: usize, budget: &Budget) -> Result<BoundedEdgeMax> {
    if g.edge_count() > 64 {
        return Err(Error::InvalidArgument(format!(
            "bounded-matching search handles at most 64 edges, host has {}",
            g.edge_count()
        )));
    }
    let start = budget.spent();
    let e = g.edge_count();
    let mut solver = MatchingSolver::for_graph(g);
    let vall = g.vertices_mask();
    let full: u64 = if e == 64 { u64::MAX } else { (1 << e) - 1 };
    if solver.solve(None, vall) <= b {
        return Ok(BoundedEdgeMax {
            max_edges: e,
            witness: g.edges(),
            nodes: 0,
        });
    }

    // A greedy feasible subgraph for the lower bound reported on budget
    // exhaustion.
    let edges = solver.edges.clone();
    let mut greedy_mask = 0u64;
    let mut greedy = 0usize;
    for i in 0..e {
        let cand = greedy_mask | 1 << i;
        if solver.solve(Some(cand), vall) <= b {
            greedy_mask = cand;
            greedy += 1;
        }
    }

    struct Search<'a> {
        solver: &'a mut MatchingSolver,
        vall: u64,
        b: usize,
        budget: &'a Budget,
        memo: HashMap<u64, usize>,
        hit: Option<u64>,
    }
    fn shrink(s: &mut Search, mask: u64, rem: usize) -> Result<bool> {
        if !s.budget.tick() {
            return Err(Error::BudgetExhausted {
                spent: s.budget.spent(),
                bounds: None,
            });
        }
        let nu = s.solver.solve(Some(mask), s.vall);
        if nu <= s.b {
            s.hit = Some(mask);
            return Ok(true);
        }
        // Each deletion lowers the matching number by at most one.
        if nu - s.b > rem {
            return Ok(false);
        }
        if let Some(&seen) = s.memo.get(&mask) {
            if seen >= rem {
                return Ok(false);
            }
        }
        // Delete one edge of a (b+1)-matching of the current subgraph.
        let matched = s.solver.matched_edges();
        let branch: Vec<(usize, usize)> = matched.into_iter().take(s.b + 1).collect();
        for (u, v) in branch {
            let ei = s
                .solver
                .edges
                .iter()
                .position(|&f| f == (u.min(v), u.max(v)))
                .expect("matched edge exists");
            if shrink(s, mask & !(1 << ei), rem - 1)? {
                return Ok(true);
            }
        }
        s.memo.insert(mask, rem);
        Ok(false)
    }

    for d in 1..=e {
        let mut search = Search {
            solver: &mut solver,
            vall,
            b,
            budget,
            memo: HashMap::new(),
            hit: None,
        };
        let found = shrink(&mut search, full, d).map_err(|err| match err {
            Error::BudgetExhausted { spent, .. } => Error::BudgetExhausted {
                spent,
                bounds: Some((greedy as u64, (e - d) as u64)),
            },
            other => other,
        })?;
        if found {
            let mask = search.hit.unwrap();
            let witness: Vec<(usize, usize)> = bits(mask).map(|i| edges[i]).collect();
            debug_assert!(witness.len() == e - d);
            return Ok(BoundedEdgeMax {
                max_edges: e - d,
                witness,
                nodes: budget.spent() - start,
            });
        }
    }
    unreachable!("deleting every edge always reaches matching number zero");
}

/// Decide whether some surjective coloring of `g` with exactly `colors`
/// classes avoids any rainbow k-matching; returns such a coloring if so.
pub fn find_no_rainbow_coloring(
    g: &Graph,
    k: usize,
    colors: usize,
    budget: &Budget,
) -> Result<Option<EdgeColoring>> {
    check_host(g, k)?;
    if k < 2 {
        return Err(Error::InvalidArgument(
            "completion decisions need k >= 2; k = 1 never admits a coloring".into(),
        ));
    }
    let edges = g.edges();
    let e = edges.len();
    if e >= 64 {
        return Err(Error::InvalidArgument(
            "completion decisions handle at most 63 edges".into(),
        ));
    }
    if colors == 0 || colors > e {
        return Ok(None);
    }
    let mut solver = MatchingSolver::for_graph(g);
    let vall = g.vertices_mask();

    // Representative sets: `colors`-edge subsets containing edge 0 whose
    // matching number stays below k. Enumerated in ascending mask order.
    let want = colors - 1; // seeds among edges 1..e
    let mut seed: u64 = if want == 0 { 0 } else { (1 << want) - 1 };
    loop {
        let mask = (seed << 1) | 1;
        if mask >> e != 0 {
            break;
        }
        if !budget.tick() {
            return Err(Error::BudgetExhausted {
                spent: budget.spent(),
                bounds: None,
            });
        }
        if solver.solve(Some(mask), vall) < k {
            if let Some(col) = complete_seed(&edges, mask, k, colors, g, budget)? {
                return Ok(Some(col));
            }
        }
        if want == 0 {
            break;
        }
        let c = seed & seed.wrapping_neg();
        let r = seed + c;
        seed = (((r ^ seed) >> 2) / c) | r;
    }
    Ok(None)
}

/// Try to extend a representative set to a full no-rainbow coloring. Every
/// non-representative edge joins a class whose representative precedes it.
fn complete_seed(
    edges: &[(usize, usize)],
    seed_mask: u64,
    k: usize,
    colors: usize,
    g: &Graph,
    budget: &Budget,
) -> Result<Option<EdgeColoring>> {
    let e = edges.len();
    let reps: Vec<usize> = bits(seed_mask).collect();
    debug_assert_eq!(reps.len(), colors);
    let mut cls = vec![0u32; e];
    for (ci, &r) in reps.iter().enumerate() {
        cls[r] = ci as u32 + 1;
    }
    let free: Vec<usize> = (0..e).filter(|i| cls[*i] == 0).collect();

    fn assign(
        edges: &[(usize, usize)],
        reps: &[usize],
        cls: &mut [u32],
        free: &[usize],
        fi: usize,
        k: usize,
        budget: &Budget,
    ) -> Result<bool> {
        if fi == free.len() {
            return Ok(true);
        }
        let f = free[fi];
        let (u, v) = edges[f];
        for (ci, &r) in reps.iter().enumerate() {
            if r > f {
                break; // class representatives must precede their edges
            }
            if !budget.tick() {
                return Err(Error::BudgetExhausted {
                    spent: budget.spent(),
                    bounds: None,
                });
            }
            let c = ci as u32 + 1;
            if rainbow_completion_exists(edges, cls, k - 1, 1 << u | 1 << v, 1 << (c - 1)) {
                continue; // edge f in class c would complete a rainbow k-matching
            }
            cls[f] = c;
            if assign(edges, reps, cls, free, fi + 1, k, budget)? {
                return Ok(true);
            }
            cls[f] = 0;
        }
        Ok(false)
    }

    if assign(edges, &reps, &mut cls, &free, 0, k, budget)? {
        let col = EdgeColoring::new(g.clone(), cls)?;
        debug_assert!(!has_rainbow_matching(&col, k)?);
        Ok(Some(col))
    } else {
        Ok(None)
    }
}

/// Exact anti-Ramsey value by descending completion decisions, starting
/// from the structural upper bound min(e, max edges with matching number
/// below k).
pub fn ar_representative_completion(g: &Graph, k: usize, budget: &Budget) -> Result<ArResult> {
    if let Some(r) = trivial_ar(g, k, ENGINE_COMPLETION)? {
        return Ok(r);
    }
    let start = budget.spent();
    let bounded = max_edges_matching_bounded(g, k - 1, budget)?;
    let ub = g.edge_count().min(bounded.max_edges);
    for c in (1..=ub).rev() {
        match find_no_rainbow_coloring(g, k, c, budget) {
            Ok(Some(col)) => {
                let cert = RainbowCertificate::new_inline(g, &col, k);
                if !verify_no_rainbow(&cert)? {
                    return Err(Error::InvalidCertificate(
                        "completion search produced a coloring that fails independent re-checking"
                            .into(),
                    ));
                }
                return Ok(ArResult {
                    graph: graph_id(g),
                    n: g.vertex_count(),
                    k,
                    ar: c,
                    certificate: Some(cert),
                    engine: ENGINE_COMPLETION.to_string(),
                    nodes: budget.spent() - start,
                    vacuous: false,
                });
            }
            Ok(None) => continue,
            Err(Error::BudgetExhausted { spent, .. }) => {
                return Err(Error::BudgetExhausted {
                    spent,
                    bounds: Some((1, c as u64)),
                })
            }
            Err(other) => return Err(other),
        }
    }
    unreachable!("a single shared color always avoids rainbow matchings of size >= 2");
}

/// Which engine a class-level computation uses per triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Full per-triangulation values via partition search (small orders).
    PartitionDfs,
    /// Frontier mode: descend from the class-wide upper bound deciding
    /// completions per triangulation (scales to order 11).
    RepresentativeCompletion,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::PartitionDfs => ENGINE_PARTITION,
            Engine::RepresentativeCompletion => ENGINE_COMPLETION,
        }
    }
}

/// Class rainbow number over every triangulation of an order.
#[derive(Clone, Debug, Serialize)]
pub struct RbClassResult {
    pub n: usize,
    pub k: usize,
    pub rb: usize,
    /// Canonical code (hex) of the first triangulation (canonical order)
    /// proven to attain rb - 1 colors.
    pub extremal_graph: String,
    pub extremal_certificate: RainbowCertificate,
    /// Exactly computed anti-Ramsey values, keyed by canonical code (hex).
    /// Partition mode fills every non-vacuous triangulation; frontier mode
    /// records the triangulations whose value was pinned exactly.
    pub per_graph_ar: BTreeMap<String, usize>,
    pub engine: String,
    pub nodes: u64,
    /// Triangulations without any k-matching, excluded from the maximum.
    pub skipped_vacuous: usize,
}

/// rb over the full class: 1 + max ar(T, k) over triangulations of order n
/// containing a k-matching.
pub fn rb_class(n: usize, k: usize, engine: Engine, budget: &Budget) -> Result<RbClassResult> {
    let ts = generate(n)?;
    rb_class_over(&ts, n, k, engine, budget)
}

/// As `rb_class` but over a caller-provided (typically cached) class list,
/// which must be the complete canonical-order enumeration for order n.
pub fn rb_class_over(
    ts: &[Triangulation],
    n: usize,
    k: usize,
    engine: Engine,
    budget: &Budget,
) -> Result<RbClassResult> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "k = 0 matchings are not meaningful here".into(),
        ));
    }
    if n < 4 || n < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "class rainbow numbers need n >= max(4, 2k); got n = {n}, k = {k}"
        )));
    }
    let start = budget.spent();
    match engine {
        Engine::PartitionDfs => rb_exact_per_graph(ts, n, k, budget, start),
        Engine::RepresentativeCompletion => rb_frontier(ts, n, k, budget, start),
    }
}

fn rb_exact_per_graph(
    ts: &[Triangulation],
    n: usize,
    k: usize,
    budget: &Budget,
    start: u64,
) -> Result<RbClassResult> {
    let mut per_graph_ar = BTreeMap::new();
    let mut best: Option<(usize, String, RainbowCertificate)> = None;
    let mut skipped = 0usize;
    for t in ts {
        let code = canonical_form(t).to_hex();
        let r = match ar_partition_dfs(&t.graph, k, budget) {
            Ok(r) => r,
            Err(Error::BudgetExhausted { bounds, .. }) => {
                // The interrupted graph's own bracket bounds only that graph;
                // class-wide, the best value seen so far still counts from
                // below, and every live triangulation stays below its edge
                // count (an all-distinct coloring would exhibit a rainbow
                // k-matching), so 3n - 6 bounds from above.
                let seen = best.as_ref().map_or(0, |(b, _, _)| *b);
                let lo = seen.max(bounds.map_or(0, |(lo, _)| lo as usize)) + 1;
                return Err(Error::Inconclusive {
                    lo: lo as u64,
                    hi: (3 * n - 6) as u64,
                });
            }
            Err(other) => return Err(other),
        };
        if r.vacuous {
            skipped += 1;
            continue;
        }
        let better = best.as_ref().map_or(true, |(b, _, _)| r.ar > *b);
        if better {
            best = Some((
                r.ar,
                code.clone(),
                r.certificate.clone().expect("k >= 2 searches carry certificates"),
            ));
        }
        per_graph_ar.insert(code, r.ar);
    }
    finish_rb(n, k, best, per_graph_ar, Engine::PartitionDfs, budget, start, skipped)
}

fn rb_frontier(
    ts: &[Triangulation],
    n: usize,
    k: usize,
    budget: &Budget,
    start: u64,
) -> Result<RbClassResult> {
    // Stage 1 (parallel): per-triangulation upper bounds via the bounded
    // edge maximum, and template lower bounds from cover sets.
    let stage: Result<Vec<(usize, usize, usize)>> = ts
        .par_iter()
        .map(|t| {
            let nu = matching_number(&t.graph);
            if nu < k {
                return Ok((0, 0, 0)); // vacuous marker: ub 0 excludes it
            }
            let bounded = max_edges_matching_bounded(&t.graph, k - 1, budget)?;
            let ub = t.graph.edge_count().min(bounded.max_edges);
            let lb = cover_template_colors(&t.graph, k);
            Ok((1, ub, lb))
        })
        .collect();
    let stage = match stage {
        Ok(s) => s,
        Err(Error::BudgetExhausted { .. }) => {
            // Bounds on the bounded edge maximum say nothing about the class
            // value directly. The budget-free fallback bracket: cover
            // templates witness values from below, and every live
            // triangulation stays below its edge count.
            let lb = ts
                .iter()
                .filter(|t| matching_number(&t.graph) >= k)
                .map(|t| cover_template_colors(&t.graph, k))
                .max()
                .unwrap_or(0);
            return Err(Error::Inconclusive {
                lo: (lb + 1) as u64,
                hi: (3 * n - 6) as u64,
            });
        }
        Err(other) => return Err(other),
    };
    let skipped = stage.iter().filter(|s| s.0 == 0).count();
    let global_ub = stage.iter().map(|s| s.1).max().unwrap_or(0);
    let global_lb = stage.iter().map(|s| s.2).max().unwrap_or(0);
    if global_ub == 0 {
        return Err(Error::InvalidArgument(format!(
            "no triangulation of order {n} contains a {k}-matching"
        )));
    }

    for c in (1..=global_ub).rev() {
        for (i, t) in ts.iter().enumerate() {
            let (live, ub, lb) = stage[i];
            if live == 0 || ub < c {
                continue;
            }
            let coloring = if lb >= c {
                build_cover_template(&t.graph, k, c)?
            } else {
                find_no_rainbow_coloring(&t.graph, k, c, budget).map_err(|err| {
                    match err {
                        Error::BudgetExhausted { .. } => Error::Inconclusive {
                            lo: (global_lb + 1) as u64,
                            hi: (c + 1) as u64,
                        },
                        other => other,
                    }
                })?
            };
            if let Some(col) = coloring {
                let cert = RainbowCertificate::new_inline(&t.graph, &col, k);
                if !verify_no_rainbow(&cert)? {
                    return Err(Error::InvalidCertificate(
                        "class search produced a coloring that fails independent re-checking"
                            .into(),
                    ));
                }
                let code = canonical_form(t).to_hex();
                let mut per_graph_ar = BTreeMap::new();
                per_graph_ar.insert(code.clone(), c);
                return finish_rb(
                    n,
                    k,
                    Some((c, code, cert)),
                    per_graph_ar,
                    Engine::RepresentativeCompletion,
                    budget,
                    start,
                    skipped,
                );
            }
        }
    }
    unreachable!("the single-color coloring always succeeds at c = 1");
}

/// Per-graph budget exhaustion becomes a class-level bracket on rb.
#[allow(clippy::too_many_arguments)]
fn finish_rb(
    n: usize,
    k: usize,
    best: Option<(usize, String, RainbowCertificate)>,
    per_graph_ar: BTreeMap<String, usize>,
    engine: Engine,
    budget: &Budget,
    start: u64,
    skipped_vacuous: usize,
) -> Result<RbClassResult> {
    let (ar, extremal_graph, extremal_certificate) = best.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no triangulation of order {n} contains a {k}-matching"
        ))
    })?;
    Ok(RbClassResult {
        n,
        k,
        rb: ar + 1,
        extremal_graph,
        extremal_certificate,
        per_graph_ar,
        engine: engine.name().to_string(),
        nodes: budget.spent() - start,
        skipped_vacuous,
    })
}

/// Colors achievable by the cover template: all edges meeting a best
/// (k-2)-element vertex set rainbow, everything else in one shared class.
/// Sound because a k-matching has at most k-2 edges touching the set, so
/// two of its edges lie in the shared class.
fn cover_template_colors(g: &Graph, k: usize) -> usize {
    match best_cover_set(g, k) {
        Some((_, covered)) => covered + 1,
        None => 0,
    }
}

/// The lexicographically first (k-2)-set maximizing the number of covered
/// edges, provided the complement keeps at least one edge.
fn best_cover_set(g: &Graph, k: usize) -> Option<(Vec<usize>, usize)> {
    let n = g.vertex_count();
    let s_size = k.checked_sub(2)?;
    if s_size > n {
        return None;
    }
    let mut best: Option<(Vec<usize>, usize)> = None;
    let mut subset: Vec<usize> = (0..s_size).collect();
    loop {
        let mask: u64 = subset.iter().fold(0, |m, &v| m | 1 << v);
        let covered = g
            .edges()
            .iter()
            .filter(|&&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
            .count();
        let rest_has_edge = covered < g.edge_count();
        if rest_has_edge && best.as_ref().map_or(true, |(_, c)| covered > *c) {
            best = Some((subset.clone(), covered));
        }
        // next k-subset in lexicographic order
        if s_size == 0 {
            break;
        }
        let mut i = s_size;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] != i + n - s_size {
                break;
            }
        }
        if subset[i] == i + n - s_size {
            break;
        }
        subset[i] += 1;
        for j in i + 1..s_size {
            subset[j] = subset[j - 1] + 1;
        }
    }
    best
}

/// Materialize the cover template with exactly `colors` classes, merging
/// surplus rainbow classes into the shared one if the template covers more.
fn build_cover_template(g: &Graph, k: usize, colors: usize) -> Result<Option<EdgeColoring>> {
    let Some((subset, covered)) = best_cover_set(g, k) else {
        return Ok(None);
    };
    if covered + 1 < colors {
        return Ok(None);
    }
    let rainbow_quota = colors - 1;
    let mask: u64 = subset.iter().fold(0, |m, &v| m | 1 << v);
    let mut next = 2u32; // color 1 = the shared class
    let mut cls = Vec::with_capacity(g.edge_count());
    for (u, v) in g.edges() {
        let meets = mask >> u & 1 == 1 || mask >> v & 1 == 1;
        if meets && (next as usize) <= rainbow_quota + 1 {
            cls.push(next);
            next += 1;
        } else {
            cls.push(1);
        }
    }
    let col = EdgeColoring::new(g.clone(), crate::rainbow::rgs_canonical(&cls))?;
    Ok(Some(col))
}

/// Outcome of a lower-bound certificate search.
#[derive(Clone, Debug, Serialize)]
pub enum LowerBoundOutcome {
    Found(RainbowCertificate),
    /// Not found is not a nonexistence proof; the flag says whether the
    /// search ran out of nodes rather than finishing.
    NotFound { budget_exhausted: bool },
}

/// Try to certify ar(T, k) >= colors_target: first the cover template,
/// then the completion engine at exactly the target.
pub fn lower_bound_certificate(
    t: &Triangulation,
    k: usize,
    colors_target: usize,
    budget: &Budget,
) -> Result<LowerBoundOutcome> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "lower-bound certificates need k >= 2".into(),
        ));
    }
    if matching_number(&t.graph) < k {
        return Err(Error::InvalidArgument(format!(
            "the triangulation has no {k}-matching; the bound is vacuous"
        )));
    }
    if colors_target == 0 || colors_target > t.graph.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "a surjective coloring needs between 1 and {} classes, asked for {colors_target}",
            t.graph.edge_count()
        )));
    }
    let attempt = match build_cover_template(&t.graph, k, colors_target)? {
        Some(col) if !has_rainbow_matching(&col, k)? => Some(col),
        _ => match find_no_rainbow_coloring(&t.graph, k, colors_target, budget) {
            Ok(found) => found,
            Err(Error::BudgetExhausted { .. }) => {
                return Ok(LowerBoundOutcome::NotFound {
                    budget_exhausted: true,
                })
            }
            Err(other) => return Err(other),
        },
    };
    match attempt {
        Some(col) => {
            let cert = RainbowCertificate::new_inline(&t.graph, &col, k);
            if !verify_no_rainbow(&cert)? {
                return Err(Error::InvalidCertificate(
                    "lower-bound search produced a coloring that fails independent re-checking"
                        .into(),
                ));
            }
            Ok(LowerBoundOutcome::Found(cert))
        }
        None => Ok(LowerBoundOutcome::NotFound {
            budget_exhausted: false,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::triangulation::triangulation_from_graph;

    fn fresh() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }

    #[test]
    fn budget_accounting() {
        let b = Budget::new(3);
        assert!(b.tick() && b.tick() && b.tick());
        assert!(!b.tick());
        assert_eq!(b.spent(), 4);
    }

    #[test]
    fn k4_partition_values() {
        let b = fresh();
        let r = ar_partition_dfs(&named::complete(4), 2, &b).unwrap();
        assert_eq!(r.ar, 3);
        assert!(!r.vacuous);
        assert!(verify_no_rainbow(r.certificate.as_ref().unwrap()).unwrap());

        let r1 = ar_partition_dfs(&named::complete(4), 1, &b).unwrap();
        assert_eq!(r1.ar, 0);
        assert!(r1.certificate.is_none());
    }

    #[test]
    fn bipyramid_pair_value() {
        let b = fresh();
        let r = ar_partition_dfs(&named::bipyramid(), 2, &b).unwrap();
        assert_eq!(r.ar, 1);
    }

    #[test]
    fn vacuous_hosts_get_all_edges() {
        let b = fresh();
        let r = ar_partition_dfs(&named::path(4), 3, &b).unwrap();
        assert!(r.vacuous);
        assert_eq!(r.ar, 3);
        assert!(verify_no_rainbow(r.certificate.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn bounded_edge_maximum_examples() {
        let b = fresh();
        let r = max_edges_matching_bounded(&named::complete(4), 1, &b).unwrap();
        assert_eq!(r.max_edges, 3);
        assert_eq!(r.witness.len(), 3);
        let w = Graph::from_edges(4, &r.witness).unwrap();
        assert!(matching_number(&w) <= 1);

        let all = max_edges_matching_bounded(&named::octahedron(), 3, &b).unwrap();
        assert_eq!(all.max_edges, 12);

        let none = max_edges_matching_bounded(&named::octahedron(), 0, &b).unwrap();
        assert_eq!(none.max_edges, 0);
    }

    #[test]
    fn bounded_edge_maximum_matches_brute_force() {
        // Brute force over all edge subsets for small hosts.
        for (g, b) in [
            (named::complete(4), 1),
            (named::complete(5), 1),
            (named::octahedron(), 1),
            (named::octahedron(), 2),
            (named::wheel(5), 1),
        ] {
            let budget = fresh();
            let got = max_edges_matching_bounded(&g, b, &budget).unwrap().max_edges;
            let edges = g.edges();
            let mut best = 0;
            for mask in 0u64..(1 << edges.len()) {
                if (mask.count_ones() as usize) <= best {
                    continue;
                }
                let chosen: Vec<(usize, usize)> =
                    bits(mask).map(|i| edges[i]).collect();
                let sub = Graph::from_edges(g.vertex_count(), &chosen).unwrap();
                if matching_number(&sub) <= b {
                    best = chosen.len();
                }
            }
            assert_eq!(got, best, "host {g:?} bound {b}");
        }
    }

    #[test]
    fn engines_agree_on_small_hosts() {
        let hosts = [
            named::complete(4),
            named::bipyramid(),
            named::wheel(4),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]).unwrap(),
        ];
        for g in hosts {
            for k in [2, 3] {
                let b1 = fresh();
                let b2 = fresh();
                let a = ar_partition_dfs(&g, k, &b1).unwrap();
                let c = ar_representative_completion(&g, k, &b2).unwrap();
                assert_eq!(a.ar, c.ar, "host {g:?} k {k}");
                assert_eq!(a.vacuous, c.vacuous);
            }
        }
    }

    #[test]
    fn completion_decision_matches_known_k4() {
        let b = fresh();
        assert!(find_no_rainbow_coloring(&named::complete(4), 2, 3, &b)
            .unwrap()
            .is_some());
        assert!(find_no_rainbow_coloring(&named::complete(4), 2, 4, &b)
            .unwrap()
            .is_none());
    }

    #[test]
    fn rb_smallest_classes() {
        let b = fresh();
        let r = rb_class(4, 2, Engine::PartitionDfs, &b).unwrap();
        assert_eq!(r.rb, 4);
        assert_eq!(r.per_graph_ar.len(), 1);
        assert!(verify_no_rainbow(&r.extremal_certificate).unwrap());
        assert_eq!(r.extremal_certificate.colors as usize, r.rb - 1);

        let r2 = rb_class(5, 2, Engine::RepresentativeCompletion, &b).unwrap();
        assert_eq!(r2.rb, 2);
    }

    #[test]
    fn rb_rejects_bad_parameters() {
        let b = fresh();
        assert!(rb_class(4, 0, Engine::PartitionDfs, &b).is_err());
        assert!(rb_class(4, 3, Engine::PartitionDfs, &b).is_err()); // n < 2k
        assert!(rb_class(3, 1, Engine::PartitionDfs, &b).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let b = Budget::new(5);
        match ar_partition_dfs(&named::octahedron(), 3, &b) {
            Err(Error::BudgetExhausted { spent, bounds }) => {
                assert!(spent >= 5);
                assert!(bounds.is_some());
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn starved_class_brackets_contain_the_value() {
        // The order-6 class value for 3-matchings is 8; a bracket reported at
        // budget exhaustion must contain it, whichever engine was running.
        for engine in [Engine::RepresentativeCompletion, Engine::PartitionDfs] {
            let b = Budget::new(5);
            match rb_class(6, 3, engine, &b) {
                Err(Error::Inconclusive { lo, hi }) => {
                    assert!(lo <= 8 && 8 <= hi, "bracket [{lo}, {hi}] misses 8");
                }
                other => panic!("expected an inconclusive bracket, got {other:?}"),
            }
        }
    }

    #[test]
    fn lower_bound_certificates() {
        let b = fresh();
        let k4 = triangulation_from_graph(&named::complete(4)).unwrap();
        match lower_bound_certificate(&k4, 2, 3, &b).unwrap() {
            LowerBoundOutcome::Found(cert) => {
                assert_eq!(cert.colors, 3);
                assert!(verify_no_rainbow(&cert).unwrap());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        // Beyond ar: no 4-color certificate exists.
        match lower_bound_certificate(&k4, 2, 4, &b).unwrap() {
            LowerBoundOutcome::NotFound { budget_exhausted } => assert!(!budget_exhausted),
            other => panic!("expected not-found, got {other:?}"),
        }
        // k above the matching number is rejected.
        assert!(lower_bound_certificate(&k4, 3, 2, &b).is_err());
    }

    #[test]
    fn cover_template_on_octahedron() {
        // Any single vertex of the octahedron meets four edges: those four
        // rainbow plus one shared class for the remaining eight.
        let g = named::octahedron();
        assert_eq!(cover_template_colors(&g, 3), 5);
        let col = build_cover_template(&g, 3, 5).unwrap().unwrap();
        assert_eq!(col.num_colors(), 5);
        assert!(!has_rainbow_matching(&col, 3).unwrap());
        // k = 2 degenerates to the single shared class.
        assert_eq!(cover_template_colors(&g, 2), 1);
    }
}
