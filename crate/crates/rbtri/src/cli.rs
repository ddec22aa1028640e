//! Command-line surface: generation, single-graph and class-wide
//! computations, verification suites with closed-form expectations, and
//! certificate checking. Every executed command appends a replayable
//! record to the cache ledger.

use crate::anti_ramsey::{
    ar_partition_dfs, ar_representative_completion, rb_class_over, ArResult, Budget, Engine,
    RbClassResult, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_auto, to_graph6};
use crate::matching::berge_tutte_witness;
use crate::proof_check::{
    check_counting_bounds, check_hypohamiltonian, check_three_connected, edge_disjoint_matchings,
    AuditReport,
};
use crate::rainbow::{parse_coloring, rainbow_search, RainbowCertificate};
use crate::store::{
    append_record, class, resolve_cache_dir, save_class, sha256_hex, ResultRecord, ENGINE_VERSION,
    GENERATOR_VERSION,
};
use crate::triangulation::{generate, oracle_generate};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rbtri",
    version,
    about = "Exact rainbow-number computations for matchings in plane triangulations"
)]
pub struct Cli {
    /// Search-node allowance shared by the engines of one command.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget_nodes: u64,

    /// Worker threads for class-wide fan-out (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Cache directory (overrides the RBTRI_CACHE environment variable).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Partition,
    Completion,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Partition => Engine::PartitionDfs,
            EngineArg::Completion => Engine::RepresentativeCompletion,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Enumerate all plane triangulations of one order.
    Gen {
        #[arg(long)]
        n: usize,
        /// Use the independent brute-force enumerator (n <= 8).
        #[arg(long)]
        oracle: bool,
        /// Write graph6 lines here instead of the cache.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Anti-Ramsey value of a single host graph.
    Ar {
        /// graph6 string, or a path to a graph6/adjacency file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Completion)]
        engine: EngineArg,
    },
    /// Class rainbow number over all triangulations of an order.
    Rb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Completion)]
        engine: EngineArg,
    },
    /// Run a verification suite against the closed-form expectations.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Inclusive order range, e.g. 4..8 or a single order.
        #[arg(long)]
        n: Option<String>,
    },
    /// Maximum-matching witness decomposition of a graph.
    Decomp {
        #[arg(long)]
        graph: String,
    },
    /// Certificate operations.
    Cert {
        #[command(subcommand)]
        cmd: CertCmd,
    },
    /// Run one structural audit.
    Lemma {
        #[arg(long, value_enum)]
        check: LemmaCheck,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertCmd {
    /// Check a no-rainbow certificate given as graph + coloring files.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Th2,
    Them1,
    Lemmas,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LemmaCheck {
    Hypohamiltonian,
    ThreeConnected,
    CountingBounds,
    DisjointMatchings,
}

/// Closed-form class values the verification suites compare against.
pub fn expected_rb(n: usize, k: usize) -> Option<usize> {
    match k {
        2 if n == 4 => Some(4),
        2 if n >= 5 => Some(2),
        3 if n == 6 => Some(8),
        3 if n >= 7 => Some(n + 1),
        4 if n >= 8 => Some(2 * n - 1),
        5 if n >= 11 => Some(2 * n + 1),
        _ => None,
    }
}

/// Parse "4..8" (inclusive) or "11" into an inclusive pair.
fn parse_range(s: &str) -> Result<(usize, usize)> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad order '{t}' in range '{s}'")))
    };
    if let Some((a, b)) = s.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b)?;
        if lo > hi {
            return Err(Error::Parse(format!("empty range '{s}'")));
        }
        Ok((lo, hi))
    } else {
        let n = parse_one(s)?;
        Ok((n, n))
    }
}

/// A graph argument: a literal graph6 string, or a path whose content is
/// graph6 or adjacency text.
fn load_graph(arg: &str) -> Result<(Graph, Vec<u8>)> {
    let p = Path::new(arg);
    if p.is_file() {
        let bytes = fs::read(p)?;
        let text = String::from_utf8_lossy(&bytes).into_owned();
        Ok((parse_auto(&text)?, bytes))
    } else {
        Ok((parse_auto(arg)?, arg.as_bytes().to_vec()))
    }
}

struct Outcome {
    payload: String,
    exit: i32,
    parameters: serde_json::Value,
    inputs: Vec<u8>,
}

pub fn run(cli: Cli) -> i32 {
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let cache_dir = resolve_cache_dir(cli.cache_dir.as_deref());
    let budget = Budget::new(cli.budget_nodes);
    let command_name = command_name(&cli.cmd);
    match dispatch(&cli, &cache_dir, &budget) {
        Ok(out) => {
            print!("{}", out.payload);
            let record = ResultRecord {
                command: command_name,
                parameters: out.parameters,
                inputs_sha256: sha256_hex(&out.inputs),
                outputs: out.payload.clone(),
                generator_version: GENERATOR_VERSION,
                engine_version: ENGINE_VERSION,
                budget_nodes: cli.budget_nodes,
            };
            if let Err(e) = append_record(&cache_dir, &record) {
                eprintln!("warning: could not append to ledger: {e}");
            }
            out.exit
        }
        Err(Error::Inconclusive { lo, hi }) => {
            println!("INCONCLUSIVE: value lies in [{lo}, {hi}]; raise --budget-nodes");
            EXIT_INCONCLUSIVE
        }
        Err(Error::BudgetExhausted { spent, bounds }) => {
            match bounds {
                Some((lo, hi)) => println!(
                    "INCONCLUSIVE: budget exhausted after {spent} nodes; value lies in [{lo}, {hi}]"
                ),
                None => println!("INCONCLUSIVE: budget exhausted after {spent} nodes"),
            }
            EXIT_INCONCLUSIVE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn command_name(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Gen { .. } => "gen",
        Cmd::Ar { .. } => "ar",
        Cmd::Rb { .. } => "rb",
        Cmd::Verify { .. } => "verify",
        Cmd::Decomp { .. } => "decomp",
        Cmd::Cert { .. } => "cert check",
        Cmd::Lemma { .. } => "lemma",
    }
    .to_string()
}

fn dispatch(cli: &Cli, cache_dir: &Path, budget: &Budget) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Gen { n, oracle, out } => cmd_gen(*n, *oracle, out.as_deref(), cache_dir, cli.format),
        Cmd::Ar { graph, k, engine } => cmd_ar(graph, *k, *engine, budget, cli.format),
        Cmd::Rb { n, k, engine } => cmd_rb(*n, *k, *engine, budget, cache_dir, cli.format),
        Cmd::Verify { suite, n } => {
            cmd_verify(*suite, n.as_deref(), budget, cache_dir, cli.format)
        }
        Cmd::Decomp { graph } => cmd_decomp(graph, cli.format),
        Cmd::Cert {
            cmd: CertCmd::Check { graph, coloring, k },
        } => cmd_cert_check(graph, coloring, *k, cli.format),
        Cmd::Lemma {
            check,
            n,
            k,
            count,
            graph,
        } => cmd_lemma(*check, *n, *k, *count, graph.as_deref(), cache_dir, cli.format),
    }
}

fn render<T: Serialize>(value: &T, table: String, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value)?),
        Format::Table => table,
    })
}

fn cmd_gen(
    n: usize,
    oracle: bool,
    out: Option<&Path>,
    cache_dir: &Path,
    _format: Format,
) -> Result<Outcome> {
    if oracle && !(4..=8).contains(&n) {
        return Err(Error::InvalidArgument(
            "the brute-force enumerator handles orders 4..8".into(),
        ));
    }
    if !(4..=14).contains(&n) {
        return Err(Error::InvalidArgument(
            "generation handles orders 4..14".into(),
        ));
    }
    let ts = if oracle { oracle_generate(n)? } else { generate(n)? };
    match out {
        Some(path) => {
            let mut body = String::new();
            for t in &ts {
                body.push_str(&to_graph6(&t.graph));
                body.push('\n');
            }
            fs::write(path, &body)?;
            let meta = serde_json::json!({
                "n": n,
                "count": ts.len(),
                "generator_version": GENERATOR_VERSION,
            });
            fs::write(
                path.with_extension("meta.json"),
                format!("{}\n", serde_json::to_string_pretty(&meta)?),
            )?;
        }
        None => save_class(cache_dir, n, &ts)?,
    }
    let payload = format!("{}\n", ts.len());
    Ok(Outcome {
        payload,
        exit: EXIT_OK,
        parameters: serde_json::json!({ "n": n, "oracle": oracle }),
        inputs: format!("gen:{n}:{oracle}").into_bytes(),
    })
}

fn ar_table(r: &ArResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph    {}", r.graph);
    let _ = writeln!(s, "n        {}", r.n);
    let _ = writeln!(s, "k        {}", r.k);
    let _ = writeln!(s, "ar       {}", r.ar);
    let _ = writeln!(s, "engine   {}", r.engine);
    let _ = writeln!(s, "nodes    {}", r.nodes);
    let _ = writeln!(s, "vacuous  {}", r.vacuous);
    s
}

fn cmd_ar(
    graph: &str,
    k: usize,
    engine: EngineArg,
    budget: &Budget,
    format: Format,
) -> Result<Outcome> {
    let (g, raw) = load_graph(graph)?;
    let r = match engine {
        EngineArg::Partition => ar_partition_dfs(&g, k, budget)?,
        EngineArg::Completion => ar_representative_completion(&g, k, budget)?,
    };
    let payload = render(&r, ar_table(&r), format)?;
    Ok(Outcome {
        payload,
        exit: EXIT_OK,
        parameters: serde_json::json!({
            "graph6": to_graph6(&g),
            "k": k,
            "engine": engine_token(engine),
            "format": format_name(format),
        }),
        inputs: raw,
    })
}

fn rb_table(r: &RbClassResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n                {}", r.n);
    let _ = writeln!(s, "k                {}", r.k);
    let _ = writeln!(s, "rb               {}", r.rb);
    let _ = writeln!(s, "extremal         {}", r.extremal_graph);
    let _ = writeln!(s, "engine           {}", r.engine);
    let _ = writeln!(s, "nodes            {}", r.nodes);
    let _ = writeln!(s, "skipped_vacuous  {}", r.skipped_vacuous);
    let _ = writeln!(s, "exact_ar_entries {}", r.per_graph_ar.len());
    s
}

fn cmd_rb(
    n: usize,
    k: usize,
    engine: EngineArg,
    budget: &Budget,
    cache_dir: &Path,
    format: Format,
) -> Result<Outcome> {
    let ts = class(cache_dir, n)?;
    let r = rb_class_over(&ts, n, k, engine.into(), budget)?;
    let payload = render(&r, rb_table(&r), format)?;
    Ok(Outcome {
        payload,
        exit: EXIT_OK,
        parameters: serde_json::json!({
            "n": n,
            "k": k,
            "engine": engine_token(engine),
            "format": format_name(format),
        }),
        inputs: format!("rb:{n}:{k}").into_bytes(),
    })
}

#[derive(Serialize)]
struct SuiteCheck {
    label: String,
    got: String,
    expected: String,
    ok: bool,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: String,
    checks: Vec<SuiteCheck>,
    verdict: bool,
    certificate_path: Option<String>,
    counterexample: Option<RainbowCertificate>,
}

fn suite_payload(rep: &SuiteReport, format: Format) -> Result<String> {
    let mut table = String::new();
    for c in &rep.checks {
        let _ = writeln!(
            table,
            "{:<28} got {:<6} expected {:<6} {}",
            c.label,
            c.got,
            c.expected,
            if c.ok { "ok" } else { "FAIL" }
        );
    }
    if let Some(p) = &rep.certificate_path {
        let _ = writeln!(table, "certificate: {p}");
    }
    if !rep.verdict {
        let _ = writeln!(table, "COUNTEREXAMPLE: a computed value contradicts the expected formula");
        if let Some(c) = &rep.counterexample {
            let _ = writeln!(table, "{}", serde_json::to_string(c)?);
        }
    }
    let _ = writeln!(table, "{}", if rep.verdict { "VERIFIED" } else { "FAILED" });
    render(rep, table, format)
}

fn cmd_verify(
    suite: Suite,
    n: Option<&str>,
    budget: &Budget,
    cache_dir: &Path,
    format: Format,
) -> Result<Outcome> {
    let (lo, hi) = match n {
        Some(s) => parse_range(s)?,
        None => match suite {
            Suite::Th2 => (4, 8),
            Suite::Them1 => (11, 11),
            Suite::Lemmas => (4, 10),
        },
    };
    let mut checks = Vec::new();
    let mut certificate_path = None;
    let mut counterexample = None;

    match suite {
        Suite::Th2 => {
            if lo < 4 || hi > 8 {
                return Err(Error::InvalidArgument(
                    "this suite verifies orders 4..8".into(),
                ));
            }
            for n in lo..=hi {
                let ts = class(cache_dir, n)?;
                let mut ks = vec![2];
                if n >= 6 {
                    ks.push(3);
                }
                if n >= 8 {
                    ks.push(4);
                }
                for k in ks {
                    let r = rb_class_over(&ts, n, k, Engine::RepresentativeCompletion, budget)?;
                    let want = expected_rb(n, k).expect("covered by construction");
                    let ok = r.rb == want;
                    if !ok && counterexample.is_none() {
                        counterexample = Some(r.extremal_certificate.clone());
                    }
                    checks.push(SuiteCheck {
                        label: format!("rb(n={n}, k={k})"),
                        got: r.rb.to_string(),
                        expected: want.to_string(),
                        ok,
                    });
                }
            }
        }
        Suite::Them1 => {
            if (lo, hi) != (11, 11) {
                return Err(Error::InvalidArgument(
                    "this suite runs at order 11; pass --n 11".into(),
                ));
            }
            let ts = class(cache_dir, 11)?;
            let r = rb_class_over(&ts, 11, 5, Engine::RepresentativeCompletion, budget)?;
            let want = expected_rb(11, 5).expect("defined at order 11");
            let ok = r.rb == want;
            if !ok {
                counterexample = Some(r.extremal_certificate.clone());
            }
            let certs = cache_dir.join("certs");
            fs::create_dir_all(&certs)?;
            let path = certs.join("rb-n11-k5.json");
            fs::write(
                &path,
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&r.extremal_certificate)?
                ),
            )?;
            certificate_path = Some(path.display().to_string());
            checks.push(SuiteCheck {
                label: "rb(n=11, k=5)".into(),
                got: r.rb.to_string(),
                expected: want.to_string(),
                ok,
            });
        }
        Suite::Lemmas => {
            for n in lo..=hi {
                if (5..=7).contains(&n) {
                    let rep = check_hypohamiltonian(n)?;
                    checks.push(SuiteCheck {
                        label: format!("hypohamiltonian(n={n})"),
                        got: verdict_word(rep.verdict),
                        expected: "pass".into(),
                        ok: rep.verdict,
                    });
                }
                if n >= 4 {
                    let rep = check_three_connected(n)?;
                    checks.push(SuiteCheck {
                        label: format!("three-connected(n={n})"),
                        got: verdict_word(rep.verdict),
                        expected: "pass".into(),
                        ok: rep.verdict,
                    });
                }
            }
        }
    }

    let verdict = checks.iter().all(|c| c.ok);
    let rep = SuiteReport {
        suite: suite_name(suite).to_string(),
        checks,
        verdict,
        certificate_path,
        counterexample,
    };
    let payload = suite_payload(&rep, format)?;
    Ok(Outcome {
        payload,
        exit: if verdict { EXIT_OK } else { EXIT_ERROR },
        parameters: serde_json::json!({
            "suite": suite_name(suite),
            "n": format!("{lo}..{hi}"),
            "format": format_name(format),
        }),
        inputs: format!("verify:{}:{lo}:{hi}", suite_name(suite)).into_bytes(),
    })
}

fn verdict_word(v: bool) -> String {
    if v { "pass" } else { "fail" }.to_string()
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Th2 => "th2",
        Suite::Them1 => "them1",
        Suite::Lemmas => "lemmas",
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Table => "table",
    }
}

fn engine_token(e: EngineArg) -> &'static str {
    match e {
        EngineArg::Partition => "partition",
        EngineArg::Completion => "completion",
    }
}

fn cmd_decomp(graph: &str, format: Format) -> Result<Outcome> {
    let (g, raw) = load_graph(graph)?;
    let d = berge_tutte_witness(&g)?;
    let mut table = String::new();
    let _ = writeln!(table, "matching_size  {}", d.d);
    let _ = writeln!(table, "deficiency     {}", d.deficiency);
    let _ = writeln!(table, "separator      {:?}", d.s);
    let _ = writeln!(table, "odd_components {}", d.odd_components.len());
    let payload = render(&d, table, format)?;
    Ok(Outcome {
        payload,
        exit: EXIT_OK,
        parameters: serde_json::json!({
            "graph6": to_graph6(&g),
            "format": format_name(format),
        }),
        inputs: raw,
    })
}

fn cmd_cert_check(
    graph_path: &Path,
    coloring_path: &Path,
    k: usize,
    format: Format,
) -> Result<Outcome> {
    let graph_bytes = fs::read(graph_path)?;
    let coloring_bytes = fs::read(coloring_path)?;
    let g = parse_auto(&String::from_utf8_lossy(&graph_bytes))?;
    let col = parse_coloring(&String::from_utf8_lossy(&coloring_bytes), &g)?;
    let cert = RainbowCertificate::new_inline(&g, &col, k);
    let holds = crate::rainbow::verify_no_rainbow(&cert)?;
    let (payload, exit) = if holds {
        let table = format!(
            "no rainbow {k}-matching under {} colors: certificate holds\n",
            col.num_colors()
        );
        (render(&cert, table, format)?, EXIT_OK)
    } else {
        let (_, edges) = rainbow_search(&col, k);
        let witness: Vec<(usize, usize)> = edges.into_iter().take(k).collect();
        let body = serde_json::json!({
            "verdict": "rainbow_matching_found",
            "k": k,
            "edges": witness,
        });
        let table = format!("rainbow {k}-matching found: {witness:?}\n");
        (render(&body, table, format)?, EXIT_ERROR)
    };
    let mut inputs = graph_bytes.clone();
    inputs.extend_from_slice(&coloring_bytes);
    Ok(Outcome {
        payload,
        exit,
        parameters: serde_json::json!({
            "graph6": to_graph6(&g),
            "coloring": String::from_utf8_lossy(&coloring_bytes).into_owned(),
            "k": k,
            "format": format_name(format),
        }),
        inputs,
    })
}

fn audit_table(rep: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "claim     {}", rep.claim);
    let _ = writeln!(s, "universe  {}", rep.universe);
    let _ = writeln!(s, "checked   {}", rep.instances_checked);
    let _ = writeln!(s, "failures  {}", rep.failures.len());
    for f in &rep.failures {
        let _ = writeln!(s, "  {f}");
    }
    if let Some(n) = &rep.note {
        let _ = writeln!(s, "note      {n}");
    }
    let _ = writeln!(s, "verdict   {}", if rep.verdict { "pass" } else { "fail" });
    s
}

fn cmd_lemma(
    check: LemmaCheck,
    n: Option<usize>,
    k: Option<usize>,
    count: Option<usize>,
    graph: Option<&str>,
    cache_dir: &Path,
    format: Format,
) -> Result<Outcome> {
    let need_n = || {
        n.ok_or_else(|| Error::InvalidArgument("this check needs --n".into()))
    };
    match check {
        LemmaCheck::Hypohamiltonian => {
            let n = need_n()?;
            let rep = check_hypohamiltonian(n)?;
            let exit = if rep.verdict { EXIT_OK } else { EXIT_ERROR };
            Ok(Outcome {
                payload: render(&rep, audit_table(&rep), format)?,
                exit,
                parameters: serde_json::json!({
                    "check": "hypohamiltonian", "n": n, "format": format_name(format),
                }),
                inputs: format!("lemma:hypo:{n}").into_bytes(),
            })
        }
        LemmaCheck::ThreeConnected => {
            let n = need_n()?;
            let rep = check_three_connected(n)?;
            let exit = if rep.verdict { EXIT_OK } else { EXIT_ERROR };
            Ok(Outcome {
                payload: render(&rep, audit_table(&rep), format)?,
                exit,
                parameters: serde_json::json!({
                    "check": "three-connected", "n": n, "format": format_name(format),
                }),
                inputs: format!("lemma:conn:{n}").into_bytes(),
            })
        }
        LemmaCheck::CountingBounds => {
            let n = need_n()?;
            let k = k.ok_or_else(|| Error::InvalidArgument("counting bounds need --k".into()))?;
            let ts = class(cache_dir, n)?;
            // Merge the per-triangulation reports into one class report.
            let mut instances = 0u64;
            let mut failures = Vec::new();
            let mut notes = Vec::new();
            for t in &ts {
                let rep = check_counting_bounds(t, k)?;
                instances += rep.instances_checked;
                let code = crate::triangulation::canonical_form(t).to_hex();
                failures.extend(rep.failures.into_iter().map(|f| format!("{code} {f}")));
                if let Some(note) = rep.note {
                    if !notes.contains(&note) {
                        notes.push(note);
                    }
                }
            }
            failures.sort();
            let merged = AuditReport {
                claim: "counting-bounds".into(),
                universe: format!(
                    "matching-bounded edge subsets across all {} triangulations of order {n}",
                    ts.len()
                ),
                instances_checked: instances,
                verdict: failures.is_empty(),
                failures,
                note: (!notes.is_empty()).then(|| notes.join("; ")),
            };
            let exit = if merged.verdict { EXIT_OK } else { EXIT_ERROR };
            Ok(Outcome {
                payload: render(&merged, audit_table(&merged), format)?,
                exit,
                parameters: serde_json::json!({
                    "check": "counting-bounds", "n": n, "k": k, "format": format_name(format),
                }),
                inputs: format!("lemma:count:{n}:{k}").into_bytes(),
            })
        }
        LemmaCheck::DisjointMatchings => {
            let g_arg = graph.ok_or_else(|| {
                Error::InvalidArgument("disjoint matchings need --graph".into())
            })?;
            let k = k.ok_or_else(|| Error::InvalidArgument("disjoint matchings need --k".into()))?;
            let count = count.unwrap_or(2);
            let (g, raw) = load_graph(g_arg)?;
            let (found, witnesses) = edge_disjoint_matchings(&g, k, count);
            let body = serde_json::json!({
                "check": "disjoint-matchings",
                "k": k,
                "count": count,
                "found": found,
                "witnesses": witnesses,
            });
            let mut table = String::new();
            let _ = writeln!(
                table,
                "{count} edge-disjoint {k}-matchings: {}",
                if found { "found" } else { "not found" }
            );
            for w in &witnesses {
                let _ = writeln!(table, "  {:?}", w.edges);
            }
            Ok(Outcome {
                payload: render(&body, table, format)?,
                exit: EXIT_OK,
                parameters: serde_json::json!({
                    "check": "disjoint-matchings",
                    "graph6": to_graph6(&g),
                    "k": k,
                    "count": count,
                    "format": format_name(format),
                }),
                inputs: raw,
            })
        }
    }
}
