//! Argument parsing and command dispatch. `run` returns the process exit
//! code: 0 success, 1 audit failure, 2 input error, 3 budget exhausted.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use asmgrid_core::{count_asms, enumerate_asms_limited, face::face_lattice_limited, Face, Limits};
use clap::{Parser, Subcommand};

use crate::audit::{audit, summary, AuditConfig};
use crate::config::{provenance, Format, RunConfig};
use crate::formats::{AsmJson, FaceInput, FaceReport, GridJson};
use crate::render::{dot, text_grid};
use crate::report::{classify, to_csv};

pub const EXIT_OK: u8 = 0;
pub const EXIT_AUDIT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Default face budget for `n >= 5` scans.
pub const DEFAULT_N5_BUDGET: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "asmgrid", version, about = "Faces of the alternating sign matrix polytope")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Matrix order (alternative to the positional argument).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub max_dim: Option<usize>,
    /// Most faces a scan may visit.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write the flow grid as Graphviz DOT (face command).
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Largest n for which all ASMs may be listed.
    #[arg(long, env = "ASMGRID_MAX_N", hide = true)]
    pub max_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of n x n alternating sign matrices.
    Count { order: Option<usize> },
    /// List every n x n alternating sign matrix.
    Enumerate { order: Option<usize> },
    /// Report on the smallest face containing the given ASMs (JSON list) or
    /// given by a grid (JSON object). Reads standard input without a path.
    Face { input: Option<PathBuf> },
    /// Face lattice of a face.
    Lattice { input: Option<PathBuf> },
    /// Combinatorial types of low-dimensional faces.
    Classify { order: Option<usize> },
    /// Check every theorem on every scanned face.
    Audit { order: Option<usize> },
    /// Graphviz DOT of a face's flow grid.
    ExportDot { input: Option<PathBuf> },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(m: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: m.to_string() }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Enumerate { .. } => "enumerate",
            Command::Face { .. } => "face",
            Command::Lattice { .. } => "lattice",
            Command::Classify { .. } => "classify",
            Command::Audit { .. } => "audit",
            Command::ExportDot { .. } => "export-dot",
        }
    }

    fn order(&self) -> Option<usize> {
        match self {
            Command::Count { order }
            | Command::Enumerate { order }
            | Command::Classify { order }
            | Command::Audit { order } => *order,
            _ => None,
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Face { input } | Command::Lattice { input } | Command::ExportDot { input } => input.as_ref(),
            _ => None,
        }
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let cmd = &cli.command;
    let n = match (cmd.order(), cli.n) {
        (Some(a), Some(b)) if a != b => return Err(input_error(format!("conflicting orders {a} and --n {b}"))),
        (a, b) => a.or(b),
    };
    let default_format = match cmd {
        Command::ExportDot { .. } => Format::Dot,
        Command::Classify { .. } => Format::Csv,
        Command::Audit { .. } => Format::Text,
        _ => Format::Json,
    };
    let default_dim = if matches!(cmd, Command::Lattice { .. }) { 5 } else { 4 };
    let budget = cli.budget.unwrap_or(if n.unwrap_or(0) >= 5 { DEFAULT_N5_BUDGET } else { usize::MAX });
    let cfg = RunConfig {
        command: cmd.name().into(),
        n,
        max_dim: cli.max_dim.unwrap_or(default_dim),
        budget,
        format: cli.format.unwrap_or(default_format),
        input: cmd.input().map(|p| p.display().to_string()),
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        max_n: cli.max_n.unwrap_or(Limits::default().max_enumeration_n),
    };
    cfg.validate().map_err(input_error)?;
    Ok(cfg)
}

fn need_n(cfg: &RunConfig) -> Result<usize, Failure> {
    cfg.n.ok_or_else(|| input_error(format!("{} needs an order n", cfg.command)))
}

fn read_face(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Face, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        None => {
            stdin.read_to_string(&mut text).map_err(input_error)?;
        }
    }
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| input_error(format!("bad JSON: {e}")))?;
    let parsed = if value.is_array() {
        serde_json::from_value::<Vec<AsmJson>>(value).map(FaceInput::Asms)
    } else {
        serde_json::from_value::<GridJson>(value).map(FaceInput::Grid)
    };
    let input = parsed.map_err(|e| input_error(format!("bad face input: {e}")))?;
    input.to_face().map_err(input_error)
}

fn json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn domain(e: asmgrid_core::Error) -> Failure {
    match e {
        asmgrid_core::Error::CrossCheck(c) => Failure {
            code: EXIT_AUDIT,
            message: json(&crate::formats::CrossCheckJson::from(&*c)),
        },
        e => input_error(e),
    }
}

fn execute(cli: &Cli, cfg: &RunConfig, stdin: &mut dyn Read) -> Result<(String, u8), Failure> {
    let limits = Limits::default();
    match &cli.command {
        Command::Count { .. } => Ok((format!("{}\n", count_asms(need_n(cfg)?)), EXIT_OK)),
        Command::Enumerate { .. } => {
            let all = enumerate_asms_limited(need_n(cfg)?, cfg.max_n).map_err(domain)?;
            let out = match cfg.format {
                Format::TextGrid => all
                    .iter()
                    .map(|a| text_grid(&asmgrid_core::ElementaryFlowGrid::from_simple(&asmgrid_core::asm_to_simple_flow_grid(a))))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Csv => all
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        let e: Vec<String> = a.entries().iter().map(i8::to_string).collect();
                        format!("{},{}\n", k + 1, e.join(" "))
                    })
                    .collect(),
                _ => {
                    let mut v = provenance(cfg);
                    v["asms"] = serde_json::to_value(all.iter().map(AsmJson::from).collect::<Vec<_>>()).unwrap();
                    json(&v)
                }
            };
            Ok((out, EXIT_OK))
        }
        Command::Face { input } => {
            let f = read_face(input.as_ref(), stdin)?;
            if let Some(p) = &cli.dot {
                std::fs::write(p, dot(f.grid(), "face")).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
            }
            let out = match cfg.format {
                Format::TextGrid => text_grid(f.grid()),
                Format::Dot => dot(f.grid(), "face"),
                _ => {
                    let mut v = provenance(cfg);
                    v["face"] = serde_json::to_value(FaceReport::new(&f).map_err(domain)?).unwrap();
                    json(&v)
                }
            };
            Ok((out, EXIT_OK))
        }
        Command::Lattice { input } => {
            let f = read_face(input.as_ref(), stdin)?;
            let l = face_lattice_limited(&f, cfg.max_dim).map_err(domain)?;
            let elements: Vec<serde_json::Value> = l
                .elements()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "dimension": e.dimension,
                        "num_vertices": e.face.as_ref().map_or(0, Face::num_vertices),
                        "covers": e.covers,
                    })
                })
                .collect();
            let mut v = provenance(cfg);
            v["f_vector"] = serde_json::json!(l.f_vector());
            v["elements"] = serde_json::Value::Array(elements);
            Ok((json(&v), EXIT_OK))
        }
        Command::Classify { .. } => {
            let n = need_n(cfg)?;
            if n > limits.max_classify_n {
                return Err(input_error(format!("classify supports n <= {}", limits.max_classify_n)));
            }
            let r = classify(cfg, n).map_err(domain)?;
            let out = match cfg.format {
                Format::Json => json(&r),
                _ => to_csv(&r),
            };
            Ok((out, if r.complete { EXIT_OK } else { EXIT_BUDGET }))
        }
        Command::Audit { .. } => {
            let n = need_n(cfg)?;
            if n > limits.max_classify_n {
                return Err(input_error(format!("audit supports n <= {}", limits.max_classify_n)));
            }
            let ac = AuditConfig { max_dim: cfg.max_dim, budget: cfg.budget, max_n: cfg.max_n, ..AuditConfig::new(n) };
            let r = audit(&ac).map_err(domain)?;
            let code = if !r.passed() {
                EXIT_AUDIT
            } else if !r.complete {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            let out = match cfg.format {
                Format::Json => json(&r),
                _ => summary(&r),
            };
            Ok((out, code))
        }
        Command::ExportDot { input } => {
            let f = read_face(input.as_ref(), stdin)?;
            Ok((dot(f.grid(), "face"), EXIT_OK))
        }
    }
}

/// Parses `args`, runs the command and writes its output. Diagnostics go to
/// `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = config(&cli).and_then(|cfg| execute(&cli, &cfg, stdin).map(|r| (cfg, r)));
    match result {
        Ok((cfg, (text, code))) => {
            let written = match &cfg.out {
                Some(p) => std::fs::write(p, &text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_INPUT;
            }
            if code == EXIT_BUDGET {
                let _ = writeln!(err, "warning: budget exhausted, output is incomplete");
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.trim_end());
            f.code
        }
    }
}
