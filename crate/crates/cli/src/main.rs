use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use twoone_core::batch::{run_batch, write_atomic, BatchConfig, Mode};
use twoone_core::certify::{check_coloring, greedy_color, oracle_nice, verify_nice, verify_plain};
use twoone_core::class_gate::{classify_report, CaseTag};
use twoone_core::decompose::{decompose_21, decompose_nice, DecomposeError, DecomposeOptions};
use twoone_core::discharge::{audit_report, discharge};
use twoone_core::generate::generate;
use twoone_core::io::{
    check_cert_vertices, emit_cert, emit_graph, parse_cert, parse_edge_list, parse_graph, parse_lists, to_dot,
};
use twoone_core::{PlaneGraph, SimpleGraph, Vertex};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_THEOREM: u8 = 3;

/// (2,1)-decompositions of plane graphs: class checks, certificates,
/// colorings and charge audits.
#[derive(Parser)]
#[command(name = "twoone", version)]
struct Cli {
    /// Print reduction statistics and per-item summaries on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Embedded,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Nice,
    Plain,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report which cases the graph satisfies.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
        /// Succeed only if this case (1, 2 or 3) holds; `auto` accepts any.
        #[arg(long, default_value = "auto")]
        case: String,
        /// Print the violated configuration or cycle for each failing case.
        #[arg(long)]
        witness: bool,
    },
    /// Compute a certificate.
    Decompose {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "nice")]
        mode: ModeArg,
        /// Boundary edge `x,y`; defaults to the file's, else the first outer edge.
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
        /// Re-verify every intermediate certificate.
        #[arg(long)]
        verify_steps: bool,
        /// Also write a Graphviz drawing of the certificate here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
    },
    /// Derive a 1-defective coloring from a certificate.
    Color {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
    },
    /// Run the discharging rules and print the charge ledger.
    Audit {
        graph: PathBuf,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        case: String,
        /// Write the JSON ledger here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
    },
    /// Search all matchings for a nice decomposition (small graphs only).
    Oracle {
        graph: PathBuf,
        /// Required for edge lists; embedded graphs default as in `decompose`.
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, value_enum, default_value = "embedded")]
        format: Format,
    },
    /// Generate a random in-class plane graph.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, short)]
        n: usize,
        #[arg(long)]
        case: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose many graph files.
    Batch {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "nice")]
        mode: ModeArg,
        #[arg(long, default_value = "auto")]
        case: String,
        #[arg(long)]
        fail_fast: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

/// An error that is the caller's fault: bad flags or unreadable input.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd, cli.verbose) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_plane(path: &Path, format: Format, command: &str) -> Result<PlaneGraph> {
    if format == Format::Edgelist {
        return Err(usage(format!("{command} needs an embedded graph; edge lists carry no rotation system")));
    }
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_simple(path: &Path, format: Format) -> Result<SimpleGraph> {
    let text = read(path)?;
    match format {
        Format::Embedded => parse_graph(&text).map(|g| g.to_simple()),
        Format::Edgelist => parse_edge_list(&text),
    }
    .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_edge(s: &str) -> Result<(Vertex, Vertex)> {
    let (a, b) = s.split_once(',').ok_or_else(|| usage(format!("--edge expects x,y, got {s:?}")))?;
    let p = |t: &str| t.trim().parse::<Vertex>().map_err(|_| usage(format!("--edge: {t:?} is not a vertex id")));
    Ok((p(a)?, p(b)?))
}

fn parse_case(s: &str) -> Result<Option<CaseTag>> {
    if s == "auto" {
        return Ok(None);
    }
    let n: u8 = s.trim_start_matches("case").parse().map_err(|_| usage(format!("--case: {s:?}")))?;
    CaseTag::from_number(n).map(Some).ok_or_else(|| usage(format!("--case must be 1, 2, 3 or auto, got {s}")))
}

/// The boundary edge: the flag, else the file's, else the first outer dart.
fn boundary(g: &PlaneGraph, flag: Option<&str>) -> Result<(Vertex, Vertex)> {
    if let Some(s) = flag {
        return parse_edge(s);
    }
    if let Some(e) = g.boundary_edge() {
        return Ok(e);
    }
    let faces = g.faces();
    faces
        .outer()
        .and_then(|o| faces.face(o).walk.first().copied())
        .ok_or_else(|| usage("graph has no edges; nothing to use as boundary edge"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd, verbose: u8) -> Result<u8> {
    match cmd {
        Cmd::Check { graph, format, case, witness } => {
            let g = load_simple(&graph, format)?;
            let want = parse_case(&case)?;
            let report = classify_report(&g);
            let names: Vec<String> = report.cases.iter().map(|c| c.to_string()).collect();
            println!("cases: [{}]", names.join(", "));
            if witness {
                for (c, w) in &report.witnesses {
                    println!("{c}: {w}");
                }
            }
            let ok = match want {
                Some(c) => report.holds(c),
                None => !report.is_none(),
            };
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Decompose { graph, mode, edge, out, format, verify_steps, dot } => {
            let g = load_plane(&graph, format, "decompose")?;
            let opts = DecomposeOptions { verify_steps, ..Default::default() };
            let result = match mode {
                ModeArg::Nice => {
                    let e = boundary(&g, edge.as_deref())?;
                    decompose_nice(&g, e, &opts)
                }
                ModeArg::Plain => decompose_21(&g, &opts),
            };
            match result {
                Ok((cert, stats)) => {
                    emit(out.as_deref(), &emit_cert(&cert))?;
                    if let Some(p) = dot {
                        write_atomic(&p, to_dot(&g, Some(&cert)).as_bytes())?;
                    }
                    if verbose > 0 {
                        let kinds: Vec<String> = stats.reductions.iter().map(|(k, n)| format!("{k:?}={n}")).collect();
                        eprintln!("reductions: {}; oracle calls: {}", kinds.join(" "), stats.oracle_calls);
                    }
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(match e {
                        DecomposeError::TheoremViolation { .. } => EXIT_THEOREM,
                        DecomposeError::Graph(_) | DecomposeError::NoBoundaryEdge => EXIT_USAGE,
                        _ => EXIT_FAIL,
                    })
                }
            }
        }
        Cmd::Verify { graph, cert, edge, format } => {
            let g = load_simple(&graph, format)?;
            let c = parse_cert(&read(&cert)?).map_err(|e| usage(format!("{}: {e}", cert.display())))?;
            if let Err(e) = check_cert_vertices(&g, &c) {
                println!("rejected: {e}");
                return Ok(EXIT_FAIL);
            }
            let e = match edge.as_deref() {
                Some(s) => Some(parse_edge(s)?),
                None => c.boundary_edge,
            };
            let verdict = match e {
                Some(e) => verify_nice(&g, e, &c),
                None => verify_plain(&g, &c),
            };
            println!("{verdict}");
            Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Color { graph, cert, lists, out, format } => {
            let g = load_simple(&graph, format)?;
            let c = parse_cert(&read(&cert)?).map_err(|e| usage(format!("{}: {e}", cert.display())))?;
            check_cert_vertices(&g, &c).map_err(|e| usage(e.to_string()))?;
            let lists = match lists {
                Some(p) => Some(parse_lists(&read(&p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?),
                None => None,
            };
            let coloring = match greedy_color(&g, &c, lists.as_ref()) {
                Ok(col) => col,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_FAIL);
                }
            };
            if let Err(e) = check_coloring(&g, &c.matching, lists.as_ref(), &coloring) {
                eprintln!("error: coloring check failed: {e}");
                return Ok(EXIT_FAIL);
            }
            emit(out.as_deref(), &(serde_json::to_string(&coloring)? + "\n"))?;
            Ok(EXIT_OK)
        }
        Cmd::Audit { graph, edge, case, out, format } => {
            let g = load_plane(&graph, format, "audit")?;
            let case = parse_case(&case)?.ok_or_else(|| usage("audit needs --case 1, 2 or 3"))?;
            let e = boundary(&g, edge.as_deref())?;
            let ledger = discharge(&g, e, case).map_err(|err| usage(err.to_string()))?;
            let report = audit_report(&ledger, case);
            println!("{report}");
            if let Some(p) = out {
                write_atomic(&p, (serde_json::to_string(&report)? + "\n").as_bytes())?;
            }
            Ok(if report.total == 0 { EXIT_OK } else { EXIT_FAIL })
        }
        Cmd::Oracle { graph, edge, format } => {
            let e = match (edge.as_deref(), format) {
                (Some(s), _) => parse_edge(s)?,
                (None, Format::Embedded) => boundary(&load_plane(&graph, format, "oracle")?, None)?,
                (None, Format::Edgelist) => bail!(usage("oracle on an edge list needs --edge")),
            };
            let g = load_simple(&graph, format)?;
            match oracle_nice(&g, e).map_err(|err| usage(err.to_string()))? {
                Some(c) => {
                    print!("{}", emit_cert(&c));
                    Ok(EXIT_OK)
                }
                None => {
                    println!("no nice decomposition");
                    Ok(EXIT_FAIL)
                }
            }
        }
        Cmd::Gen { seed, n, case, out } => {
            if n == 0 {
                bail!(usage("-n must be at least 1"));
            }
            let case = parse_case(&case)?.ok_or_else(|| usage("gen needs --case 1, 2 or 3"))?;
            let g = generate(seed, n, case);
            if g.budget_exhausted {
                eprintln!("warning: budget exhausted at {} of {n} vertices", g.graph.vertex_count());
            }
            emit(out.as_deref(), &emit_graph(&g.graph))?;
            Ok(EXIT_OK)
        }
        Cmd::Batch { inputs, out, mode, case, fail_fast, workers } => {
            let cfg = BatchConfig {
                inputs,
                out_dir: out,
                mode: match mode {
                    ModeArg::Nice => Mode::Nice,
                    ModeArg::Plain => Mode::Plain,
                },
                case: parse_case(&case)?,
                fail_fast,
                workers,
            };
            let summary = run_batch(&cfg)?;
            if verbose > 0 {
                for item in &summary.items {
                    eprintln!("{:?} {}", item.status, item.input.display());
                }
            }
            println!("{}", serde_json::to_string(&summary)?);
            Ok(summary.exit_code() as u8)
        }
    }
}
