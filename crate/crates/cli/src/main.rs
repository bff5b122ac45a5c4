use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tiered_tutte::activity::{tutte_via_activities, EdgeOrder};
use tiered_tutte::duality::{dual_graph, dual_quasi_tree, host_graph, QuasiTree};
use tiered_tutte::graph::{enumerate_connected_family, interval};
use tiered_tutte::harness::{self, VerificationReport, WeightCache};
use tiered_tutte::io::{self as gio, GraphDoc};
use tiered_tutte::trees::{enumerate_tiered_trees, weight_polynomial_on};
use tiered_tutte::{
    enumerate_complete_family, EdgeId, EdgeSet, Multigraph, OrderedPartition, TieredGraph,
    TutteEngine, Vertex,
};

/// Tiered trees, weight polynomials and Tutte polynomials.
#[derive(Parser)]
#[command(name = "tiered-tutte", version)]
struct Cli {
    /// Memo-cache file for the Tutte engine; read if present, rewritten on exit.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the graphs of CT_{U,p} (or its trees) as JSON lines.
    Enumerate {
        #[arg(long)]
        partition: OrderedPartition,
        /// Vertex labels, defaults to 1..n.
        #[arg(long)]
        vertices: Option<String>,
        #[arg(long, conflicts_with = "connected_only")]
        trees_only: bool,
        #[arg(long)]
        connected_only: bool,
    },
    /// Weight polynomial P_p(q).
    Weightpoly {
        #[arg(long)]
        partition: OrderedPartition,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tutte polynomial of a graph file.
    Tutte {
        #[arg(long)]
        graph: PathBuf,
        /// Specialise x to this integer and print a polynomial in y.
        #[arg(long, allow_hyphen_values = true)]
        at_x: Option<i64>,
        #[arg(long, value_enum, default_value_t = Method::Dc)]
        method: Method,
        /// omega1, omega2 or random:<seed>; activities only.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Dual of a two-tier graph, or T* of a quasi-tree when --e0 is given.
    Dual {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        e0: Option<String>,
    },
    /// Run an identity check or sweep, one report per line.
    Verify(Box<VerifyArgs>),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dc,
    Activities,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Eq14,
    Perm,
    Thm13,
    Phi,
    Lemma71,
    Lemma72,
    Thm14,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,
    /// Largest n swept (eq14, perm: 6; lemma71: 5; lemma72: 8; thm14 bounds p1+p2: 5).
    #[arg(long)]
    max_n: Option<usize>,
    /// Check a single partition (eq14, perm, thm13, phi).
    #[arg(long)]
    partition: Option<OrderedPartition>,
    /// One-line permutation of the parts, 1-based, e.g. 3,1,2 (perm).
    #[arg(long)]
    perm: Option<String>,
    #[arg(long)]
    p1: Option<usize>,
    #[arg(long)]
    p2: Option<usize>,
    /// Host sweep bounds (thm13: 5 vertices, phi: 4 vertices; 6 edges).
    #[arg(long)]
    max_vertices: Option<u32>,
    #[arg(long, default_value_t = 6)]
    max_edges: usize,
    /// Extra random multigraph hosts added to a host sweep.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Single host graph file (thm13, phi), used with --vertices and --partition.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    vertices: Option<String>,
    /// Restrict phi to one E0.
    #[arg(long)]
    e0: Option<String>,
    /// Single lemma71 instance: r, U1 and U2.
    #[arg(long)]
    r: Option<Vertex>,
    #[arg(long)]
    u1: Option<String>,
    #[arg(long)]
    u2: Option<String>,
    /// Worker threads for the sweep.
    #[arg(long)]
    jobs: Option<usize>,
}

enum Failure {
    Invalid(String),
    Identity,
}

impl From<tiered_tutte::Error> for Failure {
    fn from(e: tiered_tutte::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn invalid<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Invalid(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = TutteEngine::new();
    let result = load_cache(&engine, cli.cache.as_deref())
        .and_then(|()| run(cli.command, &engine))
        .and_then(|()| save_cache(&engine, cli.cache.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => {
            let _ = save_cache(&engine, cli.cache.as_deref());
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_cache(engine: &TutteEngine, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) if p.exists() => {
            engine.load_cache(BufReader::new(File::open(p)?))?;
            Ok(())
        }
        _ => Ok(()),
    }
}

fn save_cache(engine: &TutteEngine, path: Option<&Path>) -> Outcome {
    if let Some(p) = path {
        let mut w = BufWriter::new(File::create(p)?);
        engine.save_cache(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn run(command: Command, engine: &TutteEngine) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Enumerate {
            partition,
            vertices,
            trees_only,
            connected_only,
        } => {
            let u = universe(vertices.as_deref(), &partition)?;
            if trees_only {
                for t in enumerate_tiered_trees(&u, &partition)? {
                    writeln!(out, "{}", gio::tree_to_json(&t))?;
                }
            } else {
                let family = if connected_only {
                    enumerate_connected_family(&u, &partition)?
                } else {
                    enumerate_complete_family(&u, &partition)?
                };
                for g in family {
                    writeln!(out, "{}", gio::tiered_to_json(&g))?;
                }
            }
        }
        Command::Weightpoly { partition, format } => {
            let poly = weight_polynomial_on(&interval(partition.total()), &partition)?;
            match format {
                Format::Text => writeln!(out, "{}", poly.render("q"))?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "partition": partition.to_string(), "poly": poly, "text": poly.render("q") })
                )?,
            }
        }
        Command::Tutte {
            graph,
            at_x,
            method,
            omega,
        } => {
            let doc = read_graph(&graph)?;
            let poly = match method {
                Method::Dc if omega.is_some() => {
                    return invalid("--omega only applies to --method activities")
                }
                Method::Dc => engine.tutte(&doc.graph),
                Method::Activities => {
                    if !doc.graph.is_connected() {
                        return invalid("the activity expansion needs a connected graph");
                    }
                    let order = edge_order(&doc, omega.as_deref().unwrap_or("id"))?;
                    tutte_via_activities(&doc.graph, &order)?
                }
            };
            match at_x {
                None => writeln!(out, "{}", poly.render())?,
                Some(k) => writeln!(out, "{}", poly.specialize_x(&k.into()).render("y"))?,
            }
        }
        Command::Dual { graph, e0 } => {
            let doc = read_graph(&graph)?;
            match e0 {
                None => {
                    let d = dual_graph(&doc.into_tiered()?)?;
                    writeln!(out, "{}", gio::tiered_to_json(&d))?;
                }
                Some(ids) => writeln!(out, "{}", quasi_dual(&doc, &gio::parse_edge_ids(&ids)?)?)?,
            }
        }
        Command::Verify(args) => {
            let reports = match args.jobs {
                Some(0) => return invalid("--jobs must be positive"),
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::Invalid(e.to_string()))?
                    .install(|| verify(&args, engine))?,
                None => verify(&args, engine)?,
            };
            let failed = reports.iter().filter(|r| !r.pass).count();
            for r in &reports {
                writeln!(out, "{}", r.to_json())?;
            }
            out.flush()?;
            eprintln!("{} reports, {failed} failed", reports.len());
            if failed > 0 {
                return Err(Failure::Identity);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn read_graph(path: &Path) -> Result<GraphDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(gio::parse_graph(&text)?)
}

fn vertex_list(s: &str) -> Result<BTreeSet<Vertex>, Failure> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: Vertex = part
            .parse()
            .map_err(|_| Failure::Invalid(format!("bad vertex {part:?}")))?;
        if v == 0 || !out.insert(v) {
            return invalid(format!("vertex {part:?} is zero or repeated"));
        }
    }
    Ok(out)
}

fn universe(vertices: Option<&str>, p: &OrderedPartition) -> Result<BTreeSet<Vertex>, Failure> {
    let u = match vertices {
        Some(s) => vertex_list(s)?,
        None => interval(p.total()),
    };
    if u.len() != p.total() {
        return invalid(format!(
            "{} vertices given for a partition of {}",
            u.len(),
            p.total()
        ));
    }
    Ok(u)
}

fn edge_order(doc: &GraphDoc, spec: &str) -> Result<EdgeOrder, Failure> {
    let (host, tiered) = gio::split_quasi(doc);
    let order = match spec {
        "id" => EdgeOrder::by_id(&doc.graph),
        "omega1" => EdgeOrder::omega_one_parts(&host, tiered)?,
        "omega2" => {
            // N = max U, the largest tiered vertex
            let n_max = doc
                .tiers
                .as_ref()
                .and_then(|t| t.keys().next_back().copied())
                .unwrap_or(0);
            EdgeOrder::omega_two_parts(&host, tiered, n_max)?
        }
        other => match other.strip_prefix("random:").map(str::parse::<u64>) {
            Some(Ok(seed)) => EdgeOrder::random(&doc.graph, seed),
            _ => return invalid(format!("unknown edge order {other:?}")),
        },
    };
    Ok(order)
}

/// Splits a document into a host multigraph and its tiered forest.
fn quasi_parts(doc: &GraphDoc) -> Result<(Multigraph, TieredGraph), Failure> {
    let Some(tiers) = doc.tiers.clone() else {
        return invalid("the graph has no \"tiers\" map");
    };
    let (host_ids, tiered) = gio::split_quasi(doc);
    let host = doc
        .graph
        .spanning_subgraph(&host_ids.into_iter().collect())?;
    let mut forest = Multigraph::with_vertices(tiers.keys().copied())?;
    for (id, u, v) in tiered {
        forest.insert_edge(tiered_tutte::Edge::new(id, u, v))?;
    }
    let m = doc.tier_count.unwrap_or(2);
    Ok((host, TieredGraph::new(forest, tiers, m)?))
}

fn quasi_dual(doc: &GraphDoc, e0: &EdgeSet) -> Result<String, Failure> {
    let (host, forest) = quasi_parts(doc)?;
    let t = QuasiTree::new(host, e0.clone(), forest)?;
    let star = dual_quasi_tree(&t)?;
    let g = host_graph(&t)?;
    let mut graph: Value =
        serde_json::from_str(&gio::graph_to_json(g.combined())).expect("graph JSON is valid");
    let tiers: serde_json::Map<String, Value> = g
        .tiered()
        .tier_map()
        .iter()
        .map(|(v, t)| (v.to_string(), json!(t)))
        .collect();
    graph["tiers"] = Value::Object(tiers);
    let forest: Value =
        serde_json::from_str(&gio::tiered_to_json(star.forest())).expect("graph JSON is valid");
    let e0: Vec<u64> = star.e0().iter().map(|id: &EdgeId| id.0).collect();
    Ok(json!({ "e0": e0, "forest": forest, "graph": graph }).to_string())
}

fn parse_perm(s: &str, len: usize) -> Result<Vec<usize>, Failure> {
    let perm: Vec<usize> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Failure::Invalid(format!("bad permutation {s:?}")))?;
    if perm.len() != len {
        return invalid(format!(
            "permutation of length {} for {len} parts",
            perm.len()
        ));
    }
    Ok(perm)
}

fn host_instance(
    args: &VerifyArgs,
) -> Result<Option<(Multigraph, BTreeSet<Vertex>, OrderedPartition)>, Failure> {
    let Some(path) = &args.graph else {
        return Ok(None);
    };
    let host = read_graph(path)?.graph;
    let Some(p) = args.partition.clone() else {
        return invalid("--graph needs --partition");
    };
    if p.len() != 2 {
        return invalid("host identities take a two-part partition");
    }
    let u = universe(args.vertices.as_deref(), &p)?;
    Ok(Some((host, u, p)))
}

fn host_corpus(args: &VerifyArgs, default_vertices: u32) -> Vec<Multigraph> {
    let max_v = args.max_vertices.unwrap_or(default_vertices);
    let mut hosts = harness::simple_hosts(max_v, args.max_edges);
    if args.random > 0 {
        hosts.extend(harness::random_hosts(args.random, max_v.max(2), args.seed));
    }
    hosts
}

fn verify(args: &VerifyArgs, engine: &TutteEngine) -> Result<Vec<VerificationReport>, Failure> {
    let cache = WeightCache::new();
    let reports = match args.identity {
        Identity::Eq14 => match &args.partition {
            Some(p) => vec![harness::verify_eq_1_4(p, engine)],
            None => (1..=args.max_n.unwrap_or(6))
                .flat_map(OrderedPartition::all_of)
                .map(|p| harness::verify_eq_1_4(&p, engine))
                .collect(),
        },
        Identity::Perm => match &args.partition {
            Some(p) => {
                let perm = match &args.perm {
                    Some(s) => parse_perm(s, p.len())?,
                    None => p
                        .len()
                        .checked_sub(1)
                        .map_or(vec![], |m| (0..=m).rev().collect()),
                };
                vec![harness::verify_perm_invariance(p, &perm, &cache)?]
            }
            None => harness::perm_sweep(args.max_n.unwrap_or(6), &cache),
        },
        Identity::Thm13 => match host_instance(args)? {
            Some((h, u, p)) => vec![harness::verify_theorem_1_3(&h, &u, &p, engine)?],
            None => harness::theorem_1_3_sweep(&host_corpus(args, 5), engine),
        },
        Identity::Phi => match host_instance(args)? {
            Some((h, u, p)) => {
                let e0 = args.e0.as_deref().map(gio::parse_edge_ids).transpose()?;
                harness::phi_reports(&h, &u, &p, e0.as_ref())?
            }
            None => harness::phi_sweep(&host_corpus(args, 4)),
        },
        Identity::Lemma71 => match (args.r, &args.u1, &args.u2) {
            (Some(r), Some(u1), Some(u2)) => {
                let (u1, u2) = (vertex_list(u1)?, vertex_list(u2)?);
                let n = u1.len() + u2.len();
                vec![harness::verify_lemma_7_1(n, r, &u1, &u2, engine)?]
            }
            (None, None, None) => harness::lemma_7_1_sweep(args.max_n.unwrap_or(5), engine),
            _ => return invalid("a single lemma71 instance needs --r, --u1 and --u2"),
        },
        Identity::Lemma72 => (0..=args.max_n.unwrap_or(8))
            .map(harness::verify_lemma_7_2)
            .collect(),
        Identity::Thm14 => match (args.p1, args.p2) {
            (Some(p1), Some(p2)) => vec![harness::verify_theorem_1_4(p1, p2, engine, &cache)?],
            (None, None) => {
                let mut out = Vec::new();
                for total in 2..=args.max_n.unwrap_or(5) {
                    for p1 in 1..total {
                        out.push(harness::verify_theorem_1_4(p1, total - p1, engine, &cache)?);
                    }
                }
                out
            }
            _ => return invalid("give both --p1 and --p2"),
        },
    };
    Ok(reports)
}
