use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goeritz_core::colorability::{coloring_count, is_dehn_n_colorable};
use goeritz_core::intmat::is_prime;
use goeritz_core::reconstruct::{thm2_reconstruct, Anchor, ReconstructError};
use goeritz_core::{parse_pd, DiagramAnalysis, Sign};

mod report;

use report::{Colorability, Output, Verdicts};

#[derive(Parser, Debug)]
#[command(
    name = "goeritz",
    version,
    about = "Dehn and Goeritz matrices of knot diagrams given as PD codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Faces of the diagram, the shaded class, and the primality verdict.
    Regions(Source),
    /// The Dehn coloring matrix, shaded columns first.
    Dehn(Source),
    /// The Goeritz matrix of the shaded regions.
    Goeritz(Source),
    /// Rebuild the Goeritz matrix from the Dehn matrix.
    Reconstruct {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Method::Thm1)]
        method: Method,
        /// Anchor for one shaded column: COL:ROW, COL:ROW:SIGN or COL:SIGN
        /// (0-based, SIGN is + or -). Repeatable; thm2 only.
        #[arg(long, value_parser = parse_anchor)]
        anchor: Vec<(usize, Anchor)>,
        /// Run thm2 even when the diagram fails the primality test.
        #[arg(long)]
        force: bool,
    },
    /// Knot determinant from the reduced Goeritz matrix.
    Det(Source),
    /// Whether the diagram admits a non-trivial Dehn coloring mod p.
    Colorable {
        #[command(flatten)]
        source: Source,
        /// Modulus, at least 2; composite values use the Smith form count.
        #[arg(short, long)]
        p: u64,
    },
    /// Every construction checked against the direct Goeritz matrix.
    Check(Source),
}

#[derive(Args, Debug)]
struct Source {
    /// Inline PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    pd: Option<String>,
    /// Read the PD code from a file ("-" for stdin).
    #[arg(short, long, conflicts_with = "pd")]
    input: Option<PathBuf>,
    /// Region (in discovery order) whose color class is shaded.
    #[arg(long)]
    shade: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Thm1,
    Thm2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Input(String),
    Precondition(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Invariant(m) => m,
        }
    }
}

fn parse_anchor(s: &str) -> Result<(usize, Anchor), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let col = |t: &str| t.parse::<usize>().map_err(|_| format!("bad column {t:?}"));
    let sign = |t: &str| match t {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(format!("bad sign {t:?}")),
    };
    let row = |t: &str| t.parse::<usize>().map_err(|_| format!("bad row {t:?}"));
    match parts.as_slice() {
        [c, t] if *t == "+" || *t == "-" => Ok((
            col(c)?,
            Anchor {
                row: None,
                sign: sign(t)?,
            },
        )),
        [c, r] => Ok((
            col(c)?,
            Anchor {
                row: Some(row(r)?),
                sign: Sign::Plus,
            },
        )),
        [c, r, t] => Ok((
            col(c)?,
            Anchor {
                row: Some(row(r)?),
                sign: sign(t)?,
            },
        )),
        _ => Err("expected COL:ROW, COL:ROW:SIGN or COL:SIGN".into()),
    }
}

fn load(src: &Source) -> Result<DiagramAnalysis, Failure> {
    let (text, name) = match (&src.pd, &src.input) {
        (Some(pd), _) => (pd.clone(), None),
        (None, Some(path)) if path.as_os_str() != "-" => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            (text, stem)
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            (text, None)
        }
    };
    let mut d = parse_pd(&text).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(name) = name {
        d = d.with_name(name);
    }
    DiagramAnalysis::new(d, src.shade).map_err(|e| Failure::Input(e.to_string()))
}

fn reconstruct_error(e: ReconstructError) -> Failure {
    match e {
        ReconstructError::InconsistentInputs(m) => Failure::Invariant(m),
        e => Failure::Precondition(e.to_string()),
    }
}

fn run(cli: Cli) -> Result<(Output, Format), Failure> {
    Ok(match cli.command {
        Command::Regions(src) => (Output::Regions(load(&src)?), src.format),
        Command::Dehn(src) => (Output::Dehn(load(&src)?), src.format),
        Command::Goeritz(src) => (Output::Goeritz(load(&src)?), src.format),
        Command::Det(src) => {
            let a = load(&src)?;
            let dets = a.goeritz.reduced_determinants();
            if dets.iter().any(|d| *d != a.knot_determinant()) {
                return Err(Failure::Invariant(format!(
                    "reduced determinants disagree: {dets:?}"
                )));
            }
            (Output::Det(a), src.format)
        }
        Command::Reconstruct {
            source,
            method,
            anchor,
            force,
        } => {
            let a = load(&source)?;
            let result = match method {
                Method::Thm1 => {
                    if !anchor.is_empty() {
                        return Err(Failure::Input("--anchor applies to thm2 only".into()));
                    }
                    a.thm1().map_err(reconstruct_error)?
                }
                Method::Thm2 => {
                    let anchors: BTreeMap<usize, Anchor> = anchor.into_iter().collect();
                    if force {
                        thm2_reconstruct(&a.dehn, &anchors)
                    } else {
                        a.thm2(&anchors)
                    }
                    .map_err(reconstruct_error)?
                }
            };
            let name = match method {
                Method::Thm1 => "thm1",
                Method::Thm2 => "thm2",
            };
            (Output::Reconstruct(a, name, result), source.format)
        }
        Command::Colorable { source, p } => {
            if p < 2 {
                return Err(Failure::Input(format!(
                    "modulus must be at least 2, got {p}"
                )));
            }
            let a = load(&source)?;
            let det = a.knot_determinant();
            let report = if is_prime(p) {
                let r = a
                    .divisibility(p)
                    .map_err(|e| Failure::Invariant(e.to_string()))?;
                let count = coloring_count(&a.dehn, p);
                if r.colorable != is_dehn_n_colorable(&a.dehn, p) {
                    return Err(Failure::Invariant(format!(
                        "kernel dimension {} disagrees with coloring count {count}",
                        r.kernel_dimension
                    )));
                }
                Colorability::new(p, r.colorable, count, &det, Some(r.kernel_dimension))
            } else {
                let count = coloring_count(&a.dehn, p);
                Colorability::new(p, is_dehn_n_colorable(&a.dehn, p), count, &det, None)
            };
            (Output::Colorable(report), source.format)
        }
        Command::Check(src) => {
            let a = load(&src)?;
            let verdicts = Verdicts::compute(&a).map_err(reconstruct_error)?;
            (Output::Check(a, Box::new(verdicts)), src.format)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli).and_then(|(out, format)| {
        let text = out.render(format).map_err(Failure::Invariant)?;
        print!("{text}");
        match out {
            Output::Check(_, v) if !v.all_hold() => Err(Failure::Invariant(
                "verdict failed; see report above".into(),
            )),
            _ => Ok(()),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
