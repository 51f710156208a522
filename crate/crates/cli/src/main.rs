use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gainarb_core::arboricity::{arb_exact, arb_oracle};
use gainarb_core::bounds::{BoundsReport, RamseyStub};
use gainarb_core::constructions::{
    blocks_construction, eta_encoding, least_multiple_clique, lower_bound_instance, ConstructionError,
};
use gainarb_core::extraction::{
    extract_a_subdivision, extract_a_subdivision_staged, extract_long_a_cycle, extract_long_a_cycle_staged,
    parse_stage, SubdivOutcome,
};
use gainarb_core::graph::format::{
    graph_hash, parse_certificate, parse_graph, parse_value_set_str, write_certificate, write_graph, Certificate,
};
use gainarb_core::graph::{find_a_cycle, verify_cycle, verify_partition, verify_subdivision};
use gainarb_core::{ArbError, Elem, ExtractError, Group, LGraph, ValueSet};

#[derive(Parser)]
#[command(name = "gainarb", version, about = "Vertex arboricity and A-cycle tools for group-labelled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact arboricity with a partition witness.
    Arb {
        graph: PathBuf,
        /// Cap on search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Arboricity by brute force over all colourings (small graphs only).
    ArbOracle { graph: PathBuf },
    /// Any A-cycle of length at least `min-len`.
    FindCycle {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        min_len: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// An A-cycle of length at least `d` via the nested-chain pipeline.
    ExtractCycle {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        staged: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// An (A, d)-subdivision of K_t.
    ExtractSubdivision {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        staged: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate an extremal instance.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph file.
    Verify { graph: PathBuf, cert: PathBuf },
    /// Evaluate the arboricity thresholds as exact integers.
    Bounds {
        #[arg(long)]
        omega: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Stub::Binomial)]
        stub: Stub,
    },
}

#[derive(Subcommand)]
enum Family {
    /// K_n labelled x, n = (t-1)(d-1)+1, for the unique d > 2 with dx in A.
    LowerBound {
        #[arg(long)]
        group: String,
        /// Value set, e.g. `finite [(3)]`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        t: usize,
    },
    /// K_n labelled x, n = (l-1)(t-1)+1, for the least l >= 3 with lx in A.
    #[command(visible_alias = "lemma31")]
    LeastMultiple {
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        t: usize,
    },
    /// K_{t²} with t blocks labelled y and 0 across blocks.
    Blocks {
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        t: usize,
    },
    /// A plain graph over Z/2 with the edges of F labelled 1 and A = {1}.
    Eta {
        #[arg(long)]
        vertices: usize,
        /// Edges as `u-v`, comma separated.
        #[arg(long, default_value = "")]
        edges: String,
        /// The marked subset F, same syntax.
        #[arg(long, default_value = "")]
        marked: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stub {
    Binomial,
    Exponential,
}

/// A message and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

const VERIFY: u8 = 1;
const PRECONDITION: u8 = 2;
const MALFORMED: u8 = 3;

fn fail(code: u8, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

impl From<ArbError> for Failure {
    fn from(e: ArbError) -> Self {
        fail(PRECONDITION, e)
    }
}

impl From<ExtractError> for Failure {
    fn from(e: ExtractError) -> Self {
        let code = match e {
            ExtractError::Certificate(_) => VERIFY,
            _ => PRECONDITION,
        };
        fail(code, e)
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        fail(PRECONDITION, e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(PRECONDITION, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<(LGraph, ValueSet), Failure> {
    parse_graph(&read(path)?).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))
}

/// Writes `body` to `out`, or to stdout when no path is given. `summary`
/// goes to stdout in the first case and stderr in the second so that
/// stdout always carries exactly one file.
fn emit(out: &Option<PathBuf>, body: &str, summary: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| fail(PRECONDITION, format!("{}: {e}", path.display())))?;
            if !summary.is_empty() {
                println!("{summary}");
            }
        }
        None => {
            print!("{body}");
            if !summary.is_empty() {
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn parse_group(text: &str) -> Result<Group, Failure> {
    text.parse().map_err(|e| fail(MALFORMED, format!("--group: {e}")))
}

fn parse_elem(group: &Group, flag: &str, text: &str) -> Result<Elem, Failure> {
    group.parse_elem(text).map_err(|e| fail(MALFORMED, format!("--{flag}: {e}")))
}

fn parse_a(group: &Group, text: &str) -> Result<ValueSet, Failure> {
    parse_value_set_str(group, text).map_err(|e| fail(MALFORMED, format!("--a: {}", e.message)))
}

fn parse_edges(flag: &str, text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (u, v) = pair
                .split_once('-')
                .ok_or_else(|| fail(MALFORMED, format!("--{flag}: expected `u-v`, got `{pair}`")))?;
            let num = |s: &str| {
                s.trim()
                    .parse()
                    .map_err(|_| fail(MALFORMED, format!("--{flag}: bad vertex `{s}`")))
            };
            Ok((num(u)?, num(v)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Arb { graph, budget, out } => {
            let (g, a) = load_graph(&graph)?;
            let result = arb_exact(&g, &a, budget)?;
            let body = write_certificate(&graph_hash(&g, &a), &Certificate::Partition(result.witness));
            emit(&out, &body, &format!("arb: {}", result.value))
        }
        Command::ArbOracle { graph } => {
            let (g, a) = load_graph(&graph)?;
            println!("arb: {}", arb_oracle(&g, &a)?);
            Ok(())
        }
        Command::FindCycle { graph, min_len, out } => {
            let (g, a) = load_graph(&graph)?;
            match find_a_cycle(&g, &a, min_len) {
                Some(cert) => {
                    let len = cert.vertices.len();
                    let body = write_certificate(&graph_hash(&g, &a), &Certificate::Cycle(cert));
                    emit(&out, &body, &format!("cycle of length {len}"))
                }
                None => {
                    println!("none");
                    Ok(())
                }
            }
        }
        Command::ExtractCycle {
            graph,
            d,
            staged,
            budget,
            out,
        } => {
            let (g, a) = load_graph(&graph)?;
            let cert = match staged {
                Some(path) => {
                    let stage = parse_stage(&read(&path)?)
                        .map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
                    extract_long_a_cycle_staged(&g, &a, d, &stage)?
                }
                None => extract_long_a_cycle(&g, &a, d, budget)?,
            };
            let len = cert.vertices.len();
            let body = write_certificate(&graph_hash(&g, &a), &Certificate::Cycle(cert));
            emit(&out, &body, &format!("cycle of length {len}"))
        }
        Command::ExtractSubdivision {
            graph,
            t,
            d,
            staged,
            budget,
            out,
        } => {
            let (g, a) = load_graph(&graph)?;
            let outcome = match staged {
                Some(path) => {
                    let stage = parse_stage(&read(&path)?)
                        .map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
                    extract_a_subdivision_staged(&g, &a, t, d, &stage)?
                }
                None => extract_a_subdivision(&g, &a, t, d, budget)?,
            };
            match outcome {
                SubdivOutcome::Found { cert, route } => {
                    let body = write_certificate(&graph_hash(&g, &a), &Certificate::Subdivision(cert));
                    emit(&out, &body, &format!("route: {route:?}"))
                }
                SubdivOutcome::Stalled(report) => Err(fail(
                    PRECONDITION,
                    format!("stalled at {}: {}", report.stage, report.reason),
                )),
            }
        }
        Command::Gen { family, out } => {
            let (g, a, summary) = generate(family)?;
            emit(&out, &write_graph(&g, &a), &summary)
        }
        Command::Verify { graph, cert } => {
            let (g, a) = load_graph(&graph)?;
            let file = parse_certificate(&read(&cert)?, g.group())
                .map_err(|e| fail(MALFORMED, format!("{}: {e}", cert.display())))?;
            let hash = graph_hash(&g, &a);
            if file.graph_sha256 != hash {
                return Err(fail(
                    VERIFY,
                    format!("FAIL rule graph-hash: certificate names {}, graph is {hash}", file.graph_sha256),
                ));
            }
            let checked = match &file.cert {
                Certificate::Partition(p) => verify_partition(&g, &a, p, None).map(|k| format!("{k} parts")),
                Certificate::Cycle(c) => verify_cycle(&g, &a, c).map(|()| format!("length {}", c.vertices.len())),
                Certificate::Subdivision(s) => {
                    verify_subdivision(&g, &a, s).map(|()| format!("{} branch vertices", s.branch.len()))
                }
            };
            match checked {
                Ok(detail) => {
                    println!("OK ({detail})");
                    Ok(())
                }
                Err(v) => Err(fail(VERIFY, format!("FAIL {v}"))),
            }
        }
        Command::Bounds { omega, t, d, stub } => {
            let stub = match stub {
                Stub::Binomial => RamseyStub::Binomial,
                Stub::Exponential => RamseyStub::Exponential,
            };
            print!("{}", BoundsReport::new(omega, t, d, stub));
            Ok(())
        }
    }
}

fn generate(family: Family) -> Result<(LGraph, ValueSet, String), Failure> {
    match family {
        Family::LowerBound { group, a, x, t } => {
            let group = parse_group(&group)?;
            let a = parse_a(&group, &a)?;
            let x = parse_elem(&group, "x", &x)?;
            let (g, d) = lower_bound_instance(&a, &x, t)?;
            let n = g.n();
            Ok((g, a, format!("d = {d}, n = {n}")))
        }
        Family::LeastMultiple { group, a, x, t } => {
            let group = parse_group(&group)?;
            let a = parse_a(&group, &a)?;
            let x = parse_elem(&group, "x", &x)?;
            let (g, ell) = least_multiple_clique(&a, &x, t)?;
            let n = g.n();
            Ok((g, a, format!("l = {ell}, n = {n}")))
        }
        Family::Blocks { group, a, y, t } => {
            let group = parse_group(&group)?;
            let a = parse_a(&group, &a)?;
            let y = parse_elem(&group, "y", &y)?;
            if !a.contains(&y) {
                return Err(fail(PRECONDITION, format!("{y} is not in A")));
            }
            let g = blocks_construction(&group, &y, t)?;
            let n = g.n();
            Ok((g, a, format!("n = {n}")))
        }
        Family::Eta { vertices, edges, marked } => {
            let edges = parse_edges("edges", &edges)?;
            let marked = parse_edges("marked", &marked)?;
            let (g, a) = eta_encoding(vertices, &edges, &marked)?;
            Ok((g, a, String::new()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
