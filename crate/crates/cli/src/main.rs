//! snarkforge: construct, decompose, and verify hypohamiltonian snarks.
//!
//! Exit codes: 0 success/pass, 1 verification fail (or a search that could
//! not finish within budget), 2 usage error (bad flags, unreadable or
//! malformed input). Results go to stdout, diagnostics to stderr, and for a
//! fixed invocation stdout is byte-identical regardless of `--jobs` (unless
//! `--timings` is given).

mod input;
mod report;

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use snarkforge::certs::{load_autos, parse_certs, AutoFile};
use snarkforge::coloring::{bicritical_verdict, snark_verdict, BicriticalVerdict, SnarkVerdict};
use snarkforge::connectivity::cyclic_edge_connectivity;
use snarkforge::decompose::decompose_dot;
use snarkforge::factors::min_uncovered_by_three;
use snarkforge::generators::{dot_product, flower, named_graph, DotSpec};
use snarkforge::graph::CubicGraph;
use snarkforge::graph6::write_graph6;
use snarkforge::hamilton::{
    find_suitable_pairs, is_hypohamiltonian, HamiltonError, HypoVerdict, SuitableError,
};
use snarkforge::orders::{build_schedule, infeasibility_note, OrderOutcome, OrderError, OrdersConfig};

use input::{budget_for, digest_of, env_deadline, read_bytes, read_graphs, resolve_graph, GraphInput};
use report::{edge_list, outln, vertex_list, Envelope};

#[derive(Parser)]
#[command(
    name = "snarkforge",
    version,
    about = "Construct, decompose, and verify hypohamiltonian snarks",
    after_help = "Graphs travel as graph6, one per line; `-` or an omitted file means stdin.\n\
                  SNARKFORGE_BUDGET_SECS caps each verification search in wall-clock seconds."
)]
struct Cli {
    /// Output format; defaults to graph6 for gen/dot, text for certs, json otherwise
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads (default: all cores); stdout does not depend on this
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    /// Include search witnesses (paths, cycles, colorings, matchings) in JSON results
    #[arg(long, global = true)]
    witnesses: bool,

    /// Add wall-clock `elapsed_ms` to JSON reports (makes output run-dependent)
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a named graph: petersen, B2, L1, J<m>, or flower --k K
    Gen {
        /// petersen | B2 | L1 | J<m> (odd m >= 5) | flower
        name: String,
        /// Cycle parameter for `flower`: builds J_{2k+1} on 4(2k+1) vertices
        #[arg(long)]
        k: Option<u32>,
    },
    /// Test a property of every input graph; fails if any graph fails
    Check {
        #[arg(value_enum)]
        property: Property,
        /// graph6 input file; stdin if omitted
        file: Option<PathBuf>,
        /// For lambda-c: require at least this cyclic edge connectivity
        #[arg(long)]
        at_least: Option<u32>,
    },
    /// List all suitable edge pairs of every input graph
    Suitable {
        /// graph6 input file; stdin if omitted
        file: Option<PathBuf>,
    },
    /// Form one dot product G . H
    Dot {
        /// Left factor G: a graph name, a graph6 file, or `-`
        #[arg(long)]
        left: String,
        /// Right factor H: a graph name, a graph6 file, or `-`
        #[arg(long)]
        right: String,
        /// First removed G edge, as `a,b`
        #[arg(long, value_name = "A,B")]
        g_ab: String,
        /// Second removed G edge, as `c,d`; must be independent of a,b
        #[arg(long, value_name = "C,D")]
        g_cd: String,
        /// First removed H vertex
        #[arg(long, value_name = "X")]
        h_x: u32,
        /// Second removed H vertex, adjacent to X
        #[arg(long, value_name = "Y")]
        h_y: u32,
        /// Swap which neighbor of X meets which endpoint of a,b
        #[arg(long)]
        cross_x: bool,
        /// Swap which neighbor of Y meets which endpoint of c,d
        #[arg(long)]
        cross_y: bool,
    },
    /// List the verified dot-product splittings of every input graph
    Decompose {
        /// graph6 input file; stdin if omitted
        file: Option<PathBuf>,
        /// Keep only splittings whose two factors are both snarks
        #[arg(long)]
        snark_factors: bool,
        /// Keep only splittings whose two factors are both hypohamiltonian
        #[arg(long)]
        hypo_factors: bool,
    },
    /// Minimum edges left uncovered by three perfect matchings (mu3)
    Mu3 {
        /// graph6 input file; stdin if omitted
        file: Option<PathBuf>,
        /// Cap on examined matching pairs (default: exhaustive)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Certificate files for non-hamiltonicity-style path datasets
    Certs {
        #[command(subcommand)]
        action: CertsAction,
    },
    /// Build a hypohamiltonian snark of every feasible order up to --max
    Orders {
        /// Largest order to attempt
        #[arg(long, default_value_t = 52)]
        max: u32,
        /// Directory of ingested `*.g6` hypohamiltonian snark lists (orders 26-32)
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Fully re-verify built graphs up to this order; larger ones are
        /// certified by the composition theorem instead
        #[arg(long, default_value_t = 50)]
        verify_max: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Cubic, girth >= 5, cyclically 4-edge-connected, chromatic index 4
    Snark,
    /// No hamiltonian cycle, but every vertex deletion has one
    Hypo,
    /// Chromatic index 4 that every two-vertex deletion repairs
    Bicritical,
    /// Cyclic edge connectivity (a value query unless --at-least is given)
    LambdaC,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Snark => "snark",
            Property::Hypo => "hypohamiltonian",
            Property::Bicritical => "bicritical",
            Property::LambdaC => "lambda_c",
        }
    }
}

#[derive(Subcommand)]
enum CertsAction {
    /// Check every record of the given certificate files
    Verify {
        /// Certificate files (see data/ for the format)
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Symmetry closure file; default: the sibling `.autos` file if present
        #[arg(long)]
        autos: Option<PathBuf>,
        /// Ignore any sibling `.autos` file
        #[arg(long, conflicts_with = "autos")]
        no_autos: bool,
        /// graph6 file holding the certified graph; default: resolve the
        /// header name as a generator
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global()
        {
            eprintln!("snarkforge: --jobs: {e}");
            std::process::exit(2);
        }
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("snarkforge: {e:#}");
            std::process::exit(2);
        }
    }
}

/// Resolves `--format` against what the subcommand supports; the first
/// allowed entry is the default.
fn pick_format(requested: Option<Format>, allowed: &[Format], cmd: &str) -> Result<Format> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => bail!("{cmd} does not support --format {f:?}", f = f),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let (witnesses, timings) = (cli.witnesses, cli.timings);
    match cli.cmd {
        Cmd::Gen { name, k } => {
            let fmt = pick_format(cli.format, &[Format::Graph6, Format::Json], "gen")?;
            run_gen(&name, k, fmt, timings)
        }
        Cmd::Check { property, file, at_least } => {
            let fmt = pick_format(cli.format, &[Format::Json, Format::Text], "check")?;
            run_check(property, file.as_deref(), at_least, fmt, witnesses, timings)
        }
        Cmd::Suitable { file } => {
            let fmt = pick_format(cli.format, &[Format::Json, Format::Text], "suitable")?;
            run_suitable(file.as_deref(), fmt, witnesses, timings)
        }
        Cmd::Dot { left, right, g_ab, g_cd, h_x, h_y, cross_x, cross_y } => {
            let fmt = pick_format(cli.format, &[Format::Graph6, Format::Json], "dot")?;
            run_dot(&left, &right, &g_ab, &g_cd, h_x, h_y, cross_x, cross_y, fmt, timings)
        }
        Cmd::Decompose { file, snark_factors, hypo_factors } => {
            let fmt = pick_format(cli.format, &[Format::Json, Format::Graph6], "decompose")?;
            run_decompose(file.as_deref(), snark_factors, hypo_factors, fmt, timings)
        }
        Cmd::Mu3 { file, budget } => {
            let fmt = pick_format(cli.format, &[Format::Json, Format::Text], "mu3")?;
            run_mu3(file.as_deref(), budget, fmt, witnesses, timings)
        }
        Cmd::Certs { action } => {
            let CertsAction::Verify { files, autos, no_autos, graph } = action;
            let fmt = pick_format(cli.format, &[Format::Text, Format::Json], "certs")?;
            run_certs(&files, autos.as_deref(), no_autos, graph.as_deref(), fmt, timings)
        }
        Cmd::Orders { max, corpus, verify_max } => {
            let fmt =
                pick_format(cli.format, &[Format::Json, Format::Graph6, Format::Text], "orders")?;
            run_orders(max, corpus, verify_max, fmt, timings)
        }
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn run_gen(name: &str, k: Option<u32>, fmt: Format, timings: bool) -> Result<i32> {
    let (display, graph) = match (name, k) {
        ("flower", Some(k)) => {
            let f = flower(k).map_err(|e| anyhow!("gen flower: {e}"))?;
            (format!("J{}", 2 * k + 1), f.graph)
        }
        ("flower", None) => bail!("gen flower requires --k"),
        (_, Some(_)) => bail!("--k only applies to `gen flower`"),
        (other, None) => {
            // Long aliases for the two named snark generators.
            let short = match other {
                "blanusa2" => "B2",
                "loupekine1" => "L1",
                s => s,
            };
            let g = named_graph(short).with_context(|| {
                format!("unknown graph {other:?}; try petersen, B2, L1, J7, or flower --k K")
            })?;
            (short.to_string(), g)
        }
    };
    match fmt {
        Format::Graph6 => outln!("{}", write_graph6(&graph)),
        Format::Json => Envelope::new("gen", None, timings).print(vec![json!({
            "name": display,
            "order": graph.order(),
            "graph6": write_graph6(&graph),
        })]),
        Format::Text => unreachable!("validated"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

/// One graph's outcome: `pass` is `None` when the search ran out of budget.
struct Row {
    pass: Option<bool>,
    json: Value,
    text: String,
}

fn run_check(
    property: Property,
    file: Option<&Path>,
    at_least: Option<u32>,
    fmt: Format,
    witnesses: bool,
    timings: bool,
) -> Result<i32> {
    if at_least.is_some() && property != Property::LambdaC {
        bail!("--at-least only applies to `check lambda-c`");
    }
    let GraphInput { graphs, digest, .. } = read_graphs(file)?;
    let rows: Vec<Row> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| check_one(property, i + 1, g, at_least, witnesses))
        .collect::<Result<_>>()?;
    finish_rows("check", rows, digest, fmt, timings)
}

/// Prints collected per-graph rows in the chosen format and folds their
/// outcomes into an exit code.
fn finish_rows(
    command: &'static str,
    rows: Vec<Row>,
    digest: String,
    fmt: Format,
    timings: bool,
) -> Result<i32> {
    let ok = rows.iter().all(|r| r.pass == Some(true));
    match fmt {
        Format::Json => Envelope::new(command, Some(digest), timings)
            .print(rows.into_iter().map(|r| r.json).collect()),
        Format::Text => {
            for r in &rows {
                outln!("{}", r.text);
            }
        }
        Format::Graph6 => unreachable!("validated"),
    }
    Ok(if ok { 0 } else { 1 })
}

fn check_one(
    property: Property,
    index: usize,
    g: &CubicGraph,
    at_least: Option<u32>,
    witnesses: bool,
) -> Result<Row> {
    let n = g.order();
    let (pass, value, detail, witness, text_tail) = match property {
        Property::Snark => match snark_verdict(g) {
            SnarkVerdict::Snark => (Some(true), Value::Null, Value::Null, None, "pass".into()),
            SnarkVerdict::NotCubic { vertex, degree } => (
                Some(false),
                Value::Null,
                json!({"reason": "not_cubic", "vertex": vertex, "degree": degree}),
                None,
                format!("FAIL: vertex {vertex} has degree {degree}"),
            ),
            SnarkVerdict::GirthTooSmall { girth } => (
                Some(false),
                Value::Null,
                json!({"reason": "girth_too_small", "girth": girth}),
                None,
                format!("FAIL: girth {girth} < 5"),
            ),
            SnarkVerdict::NotCyclicallyFourEdgeConnected { connectivity, cut } => (
                Some(false),
                Value::Null,
                json!({
                    "reason": "not_cyclically_4_edge_connected",
                    "connectivity": connectivity,
                    "cut": edge_list(g, &cut),
                }),
                None,
                format!("FAIL: cyclic edge connectivity {connectivity} < 4"),
            ),
            SnarkVerdict::ThreeEdgeColorable { coloring } => (
                Some(false),
                Value::Null,
                json!({"reason": "three_edge_colorable"}),
                witnesses.then(|| json!({ "coloring": coloring })),
                "FAIL: 3-edge-colorable".into(),
            ),
        },
        Property::Hypo => match is_hypohamiltonian(g, budget_for(n)?) {
            Ok(HypoVerdict::Hypohamiltonian { cycles }) => (
                Some(true),
                Value::Null,
                Value::Null,
                witnesses.then(|| {
                    json!({
                        "vertex_deleted_cycles":
                            cycles.iter().map(|c| vertex_list(c)).collect::<Vec<_>>()
                    })
                }),
                "pass".into(),
            ),
            Ok(HypoVerdict::Hamiltonian { cycle }) => (
                Some(false),
                Value::Null,
                json!({"reason": "hamiltonian"}),
                witnesses.then(|| json!({ "cycle": vertex_list(&cycle) })),
                "FAIL: hamiltonian".into(),
            ),
            Ok(HypoVerdict::NotHamiltonianAt { v }) => (
                Some(false),
                Value::Null,
                json!({"reason": "not_hamiltonian_at", "vertex": v}),
                None,
                format!("FAIL: deleting vertex {v} leaves no hamiltonian cycle"),
            ),
            Err(HamiltonError::BudgetExceeded { nodes }) => (
                None,
                Value::Null,
                json!({"error": format!("budget exhausted after {nodes} search nodes")}),
                None,
                "unknown: budget exhausted".into(),
            ),
            Err(e) => return Err(e.into()),
        },
        Property::Bicritical => match bicritical_verdict(g) {
            BicriticalVerdict::Bicritical => {
                (Some(true), Value::Null, Value::Null, None, "pass".into())
            }
            BicriticalVerdict::ThreeEdgeColorable { coloring } => (
                Some(false),
                Value::Null,
                json!({"reason": "three_edge_colorable"}),
                witnesses.then(|| json!({ "coloring": coloring })),
                "FAIL: 3-edge-colorable".into(),
            ),
            BicriticalVerdict::UncolorablePair { u, v } => (
                Some(false),
                Value::Null,
                json!({"reason": "uncolorable_pair", "u": u, "v": v}),
                None,
                format!("FAIL: removing {{{u},{v}}} leaves chromatic index 4"),
            ),
        },
        Property::LambdaC => {
            let cut = cyclic_edge_connectivity(g);
            let pass = match at_least {
                None => Some(true),
                Some(t) => Some(cut.as_ref().is_some_and(|c| c.connectivity >= t)),
            };
            let (value, detail, witness, tail) = match &cut {
                None => (
                    Value::Null,
                    json!({"note": "undefined: no two vertex-disjoint cycles"}),
                    None,
                    "undefined (no two vertex-disjoint cycles)".to_string(),
                ),
                Some(c) => (
                    json!(c.connectivity),
                    json!({"cut": edge_list(g, &c.cut)}),
                    witnesses.then(|| {
                        json!({"sides": [vertex_list(&c.sides.0), vertex_list(&c.sides.1)]})
                    }),
                    match at_least {
                        None => format!("= {}", c.connectivity),
                        Some(t) if pass == Some(true) => {
                            format!("= {} (>= {t}): pass", c.connectivity)
                        }
                        Some(t) => format!("= {}: FAIL (< {t})", c.connectivity),
                    },
                ),
            };
            (pass, value, detail, witness, tail)
        }
    };
    let mut row = json!({
        "index": index,
        "order": n,
        "property": property.name(),
        "pass": pass,
        "detail": detail,
    });
    if property == Property::LambdaC {
        row["value"] = value;
    }
    if let Some(w) = witness {
        row["witness"] = w;
    }
    Ok(Row {
        pass,
        json: row,
        text: format!("graph {index}: {} {}", property.name(), text_tail),
    })
}

// ---------------------------------------------------------------------------
// suitable
// ---------------------------------------------------------------------------

fn run_suitable(
    file: Option<&Path>,
    fmt: Format,
    witnesses: bool,
    timings: bool,
) -> Result<i32> {
    let GraphInput { graphs, digest, .. } = read_graphs(file)?;
    let rows: Vec<Row> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| -> Result<Row> {
            let index = i + 1;
            let n = g.order();
            match find_suitable_pairs(g, budget_for(n)?) {
                Ok(pairs) => {
                    let entries: Vec<Value> = pairs
                        .iter()
                        .map(|p| {
                            let (a, b) = g.endpoints(p.ab);
                            let (c, d) = g.endpoints(p.cd);
                            let mut e = json!({"ab": [a, b], "cd": [c, d]});
                            if witnesses {
                                e["witness"] = json!({
                                    "cross_paths": p.cross_paths.iter()
                                        .map(|q| vertex_list(q)).collect::<Vec<_>>(),
                                    "spanning_pair": [
                                        vertex_list(&p.spanning_pair.0),
                                        vertex_list(&p.spanning_pair.1),
                                    ],
                                    "per_vertex": serde_json::to_value(&p.per_vertex)
                                        .expect("witness serializes"),
                                });
                            }
                            e
                        })
                        .collect();
                    let mut text = format!("graph {index}: {} suitable pairs", pairs.len());
                    for p in &pairs {
                        let (a, b) = g.endpoints(p.ab);
                        let (c, d) = g.endpoints(p.cd);
                        text.push_str(&format!("\n  ({a},{b}) and ({c},{d})"));
                    }
                    Ok(Row {
                        pass: Some(true),
                        json: json!({
                            "index": index,
                            "order": n,
                            "count": entries.len(),
                            "pairs": entries,
                        }),
                        text,
                    })
                }
                Err(SuitableError::HamiltonianInput) => Ok(Row {
                    pass: Some(false),
                    json: json!({
                        "index": index,
                        "order": n,
                        "error": "hamiltonian input: suitable pairs are defined for non-hamiltonian graphs",
                    }),
                    text: format!("graph {index}: FAIL: hamiltonian input"),
                }),
                Err(SuitableError::Hamilton(HamiltonError::BudgetExceeded { nodes })) => Ok(Row {
                    pass: None,
                    json: json!({
                        "index": index,
                        "order": n,
                        "error": format!("budget exhausted after {nodes} search nodes"),
                    }),
                    text: format!("graph {index}: unknown: budget exhausted"),
                }),
                Err(SuitableError::Hamilton(e)) => Err(e.into()),
            }
        })
        .collect::<Result<_>>()?;
    finish_rows("suitable", rows, digest, fmt, timings)
}

// ---------------------------------------------------------------------------
// dot
// ---------------------------------------------------------------------------

fn parse_vertex_pair(arg: &str, flag: &str) -> Result<(u32, u32)> {
    let err = || anyhow!("--{flag}: expected two vertices as `u,v`, got {arg:?}");
    let (u, v) = arg.split_once(',').ok_or_else(err)?;
    Ok((u.trim().parse().map_err(|_| err())?, v.trim().parse().map_err(|_| err())?))
}

#[allow(clippy::too_many_arguments)]
fn run_dot(
    left: &str,
    right: &str,
    g_ab: &str,
    g_cd: &str,
    h_x: u32,
    h_y: u32,
    cross_x: bool,
    cross_y: bool,
    fmt: Format,
    timings: bool,
) -> Result<i32> {
    if left == "-" && right == "-" {
        bail!("only one of --left/--right may read stdin");
    }
    let lg = resolve_graph(left)?;
    let rg = resolve_graph(right)?;
    let (a, b) = parse_vertex_pair(g_ab, "g-ab")?;
    let (c, d) = parse_vertex_pair(g_cd, "g-cd")?;
    let spec = DotSpec {
        g_ab: lg.edge_id(a, b).with_context(|| format!("--g-ab: {left} has no edge ({a},{b})"))?,
        g_cd: lg.edge_id(c, d).with_context(|| format!("--g-cd: {left} has no edge ({c},{d})"))?,
        h_x,
        h_y,
        cross_x,
        cross_y,
    };
    let prod = dot_product(&lg, &rg, &spec).map_err(|e| anyhow!("dot: {e}"))?;
    if !prod.connected {
        eprintln!("snarkforge: warning: the product is disconnected");
    }
    match fmt {
        Format::Graph6 => outln!("{}", write_graph6(&prod.graph)),
        Format::Json => Envelope::new("dot", None, timings).print(vec![json!({
            "left_order": lg.order(),
            "right_order": rg.order(),
            "order": prod.graph.order(),
            "connected": prod.connected,
            "added_edges": prod.added_edges.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
            "spec": serde_json::to_value(spec).expect("spec serializes"),
            "graph6": write_graph6(&prod.graph),
        })]),
        Format::Text => unreachable!("validated"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

fn run_decompose(
    file: Option<&Path>,
    snark_factors: bool,
    hypo_factors: bool,
    fmt: Format,
    timings: bool,
) -> Result<i32> {
    let GraphInput { graphs, digest, .. } = read_graphs(file)?;
    let per_graph: Vec<(Value, Vec<(CubicGraph, CubicGraph)>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let all = decompose_dot(g);
            let kept: Vec<_> = all
                .into_iter()
                .filter(|d| !snark_factors || (d.left_is_snark && d.right_is_snark))
                .filter(|d| {
                    !hypo_factors
                        || (d.left_is_hypohamiltonian == Some(true)
                            && d.right_is_hypohamiltonian == Some(true))
                })
                .collect();
            let entries: Vec<Value> = kept
                .iter()
                .map(|d| {
                    let (e1, e2) = d.left_edges;
                    json!({
                        "cut": edge_list(g, &d.cut),
                        "pairing": [[d.pairing[0].0, d.pairing[0].1],
                                    [d.pairing[1].0, d.pairing[1].1]],
                        "left": {
                            "order": d.left.order(),
                            "graph6": write_graph6(&d.left),
                            "snark": d.left_is_snark,
                            "hypohamiltonian": d.left_is_hypohamiltonian,
                            "reinserted_edges": edge_list(&d.left, &[e1, e2]),
                        },
                        "right": {
                            "order": d.right.order(),
                            "graph6": write_graph6(&d.right),
                            "snark": d.right_is_snark,
                            "hypohamiltonian": d.right_is_hypohamiltonian,
                            "reinserted_vertices": [d.right_vertices.0, d.right_vertices.1],
                        },
                    })
                })
                .collect();
            let row = json!({
                "index": i + 1,
                "order": g.order(),
                "count": entries.len(),
                "decompositions": entries,
            });
            (row, kept.into_iter().map(|d| (d.left, d.right)).collect())
        })
        .collect();
    match fmt {
        Format::Json => Envelope::new("decompose", Some(digest), timings)
            .print(per_graph.into_iter().map(|(row, _)| row).collect()),
        Format::Graph6 => {
            // Factors come out in pairs of lines: left, then right.
            for (_, pairs) in &per_graph {
                for (l, r) in pairs {
                    outln!("{}", write_graph6(l));
                    outln!("{}", write_graph6(r));
                }
            }
        }
        Format::Text => unreachable!("validated"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// mu3
// ---------------------------------------------------------------------------

fn run_mu3(
    file: Option<&Path>,
    budget: Option<u64>,
    fmt: Format,
    witnesses: bool,
    timings: bool,
) -> Result<i32> {
    let GraphInput { graphs, digest, .. } = read_graphs(file)?;
    let rows: Vec<Row> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| -> Result<Row> {
            let index = i + 1;
            let mut bud = budget_for(g.order())?;
            if budget.is_some() {
                bud.max_nodes = budget;
            }
            match min_uncovered_by_three(g, bud) {
                None => Ok(Row {
                    pass: Some(true),
                    json: json!({
                        "index": index,
                        "order": g.order(),
                        "mu3": Value::Null,
                        "no_perfect_matching": true,
                    }),
                    text: format!("graph {index}: no perfect matching"),
                }),
                Some(r) => {
                    let mut row = json!({
                        "index": index,
                        "order": g.order(),
                        "mu3": r.value,
                        "exact": r.exact,
                        "uncovered_edges": edge_list(g, &r.uncovered),
                    });
                    if witnesses {
                        row["witness"] = json!({
                            "matchings": r.matchings.iter()
                                .map(|m| edge_list(g, m)).collect::<Vec<_>>(),
                        });
                    }
                    Ok(Row {
                        // An inexact value is only an upper bound, so the
                        // invocation cannot count as a completed verification.
                        pass: Some(r.exact),
                        json: row,
                        text: if r.exact {
                            format!("graph {index}: mu3 = {}", r.value)
                        } else {
                            format!("graph {index}: mu3 <= {} (budget exhausted)", r.value)
                        },
                    })
                }
            }
        })
        .collect::<Result<_>>()?;
    finish_rows("mu3", rows, digest, fmt, timings)
}

// ---------------------------------------------------------------------------
// certs
// ---------------------------------------------------------------------------

fn run_certs(
    files: &[PathBuf],
    autos: Option<&Path>,
    no_autos: bool,
    graph: Option<&Path>,
    fmt: Format,
    timings: bool,
) -> Result<i32> {
    if files.len() > 1 && (autos.is_some() || graph.is_some()) {
        bail!("--autos/--graph apply to a single certificate file");
    }
    let mut all_bytes = Vec::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for path in files {
        let (bytes, source) = read_bytes(Some(path))?;
        all_bytes.extend_from_slice(&bytes);
        let text =
            String::from_utf8(bytes).with_context(|| format!("{source}: not UTF-8"))?;
        let certs = parse_certs(&text).map_err(|e| anyhow!("{source}: {e}"))?;

        let auto_file: Option<AutoFile> = if no_autos {
            None
        } else if let Some(p) = autos {
            Some(load_autos(p).map_err(|e| anyhow!("{e}"))?)
        } else {
            let sibling = path.with_extension("autos");
            if sibling.is_file() {
                Some(load_autos(&sibling).map_err(|e| anyhow!("{e}"))?)
            } else {
                None
            }
        };

        let g = match graph {
            Some(p) => {
                let input = read_graphs(Some(p))?;
                if input.graphs.len() != 1 {
                    bail!("--graph {}: expected exactly one graph", p.display());
                }
                input.graphs.into_iter().next().expect("checked length")
            }
            None => named_graph(&certs.graph_name).with_context(|| {
                format!(
                    "{source}: graph {:?} is not a built-in generator; pass --graph FILE",
                    certs.graph_name
                )
            })?,
        };
        if g.order() != certs.order {
            bail!(
                "{source}: header says n={}, but the graph has {} vertices",
                certs.order,
                g.order()
            );
        }

        let rep = snarkforge::certs::verify_dataset(&g, &certs, auto_file.as_ref());
        all_ok &= rep.ok();

        if fmt == Format::Text {
            let prefix =
                if files.len() > 1 { format!("{source}: ") } else { String::new() };
            if rep.ok() {
                outln!("{prefix}all {} certificates pass", rep.records);
            } else {
                for f in &rep.failures {
                    outln!("{prefix}line {}: {}", f.line, f.reason);
                }
                if !rep.condition_i_complete {
                    outln!("{prefix}coverage: condition (i) incomplete (cross paths or spanning pair missing)");
                }
                if !rep.condition_ii_missing.is_empty() {
                    outln!(
                        "{prefix}coverage: condition (ii) missing vertices {:?}",
                        rep.condition_ii_missing
                    );
                }
                outln!(
                    "{prefix}{} of {} certificates fail",
                    rep.failures.len(),
                    rep.records
                );
            }
        }
        rows.push(json!({
            "file": source,
            "graph": rep.graph_name,
            "records": rep.records,
            "autos_applied": rep.autos_applied,
            "failures": rep.failures.iter()
                .map(|f| json!({"line": f.line, "reason": f.reason.to_string()}))
                .collect::<Vec<_>>(),
            "condition_i_complete": rep.condition_i_complete,
            "condition_ii_missing": rep.condition_ii_missing,
            "ok": rep.ok(),
        }));
    }
    if fmt == Format::Json {
        Envelope::new("certs", Some(digest_of(&all_bytes)), timings).print(rows);
    }
    Ok(if all_ok { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// orders
// ---------------------------------------------------------------------------

fn run_orders(
    max: u32,
    corpus: Option<PathBuf>,
    verify_max: u32,
    fmt: Format,
    timings: bool,
) -> Result<i32> {
    let cfg = OrdersConfig {
        corpus,
        budget: env_deadline(snarkforge::hamilton::Budget::unlimited())?,
        verify_max,
    };
    let reports = match build_schedule(max, &cfg) {
        Ok(reports) => reports,
        Err(e @ OrderError::VerificationFailed { .. }) => {
            eprintln!("snarkforge: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let mut rows = Vec::new();
    for r in &reports {
        match &r.outcome {
            OrderOutcome::Infeasible => {
                rows.push(json!({
                    "n": r.n,
                    "status": "infeasible",
                    "note": infeasibility_note(r.n),
                }));
            }
            OrderOutcome::Uncovered { reason } => {
                rows.push(json!({"n": r.n, "status": "uncovered", "reason": reason}));
            }
            OrderOutcome::Built { plan, graph } => {
                rows.push(json!({
                    "n": r.n,
                    "status": "built",
                    "recipe": plan.to_string(),
                    "verified": serde_json::to_value(plan.verified).expect("serializes"),
                    "plan": serde_json::to_value(plan).expect("serializes"),
                    "graph6": write_graph6(graph),
                }));
            }
        }
    }
    match fmt {
        Format::Json => Envelope::new("orders", None, timings).print(rows),
        Format::Graph6 => {
            for r in &reports {
                if let OrderOutcome::Built { graph, .. } = &r.outcome {
                    outln!("{}", write_graph6(graph));
                }
            }
        }
        Format::Text => {
            for r in &reports {
                match &r.outcome {
                    OrderOutcome::Infeasible => {
                        outln!("n={}: infeasible ({})", r.n, infeasibility_note(r.n));
                    }
                    OrderOutcome::Uncovered { reason } => {
                        outln!("n={}: uncovered ({reason})", r.n);
                    }
                    OrderOutcome::Built { plan, .. } => {
                        let tag = match plan.verified {
                            snarkforge::orders::Verification::Full => "verified",
                            snarkforge::orders::Verification::Theoretical => "by construction",
                        };
                        outln!("n={}: {} ({tag})", r.n, plan);
                    }
                }
            }
        }
    }
    Ok(0)
}
