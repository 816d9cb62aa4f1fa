//! `hollow`: analyse lattices, run the verification suite, enumerate small
//! lattices and export DOT drawings.
//!
//! Exit codes: 0 success, 1 usage or parse or IO error, 2 lattice validation
//! error, 3 an asserted claim failed.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hollow_core::generators::{
    enumerate_lattices, parse_spec_list, Enumeration, GeneratorError, MAX_EXHAUSTIVE,
};
use hollow_core::verify::{run_suite, CheckContext, CorpusConfig, DEFAULT_SEED};
use hollow_core::{analyze, export, Analysis, LatticeSpec};

#[derive(Parser)]
#[command(
    name = "hollow",
    version,
    about = "Strongly hollow elements, SH/W-topologies and dimensions of finite lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Drawing {
    Hasse,
    Strata,
    Topology,
    /// The lattice itself as a JSON lattice document.
    Lattice,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one lattice: zn:12, chain:4, m3, n5, b2, prod(zn:4,zn:9), file:PATH
    Analyze {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every claim over a corpus (defaults to --exhaustive 5)
    Verify {
        /// All lattices with at most N elements (N <= 7)
        #[arg(long, value_name = "N")]
        exhaustive: Option<usize>,
        /// Keep every labeling rather than one lattice per isomorphism class
        #[arg(long)]
        labeled: bool,
        /// Comma-separated specs; zn:a..b expands to a range
        #[arg(long, value_name = "SPECS")]
        rings: Option<String>,
        /// Number of seeded random lattices to add
        #[arg(long, value_name = "COUNT", default_value_t = 0)]
        random: usize,
        #[arg(long, value_name = "N", default_value_t = 12)]
        random_max_size: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write each failing witness as a JSON lattice document into DIR
        #[arg(long, value_name = "DIR")]
        witness_dir: Option<PathBuf>,
    },
    /// List every lattice with at most N elements
    Enumerate {
        #[arg(long, value_name = "N", default_value_t = 5)]
        exhaustive: usize,
        #[arg(long)]
        labeled: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a DOT drawing (or the JSON lattice document) for one lattice
    Export {
        spec: String,
        #[arg(value_enum)]
        what: Drawing,
        path: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Generator(GeneratorError),
    Io(PathBuf, std::io::Error),
    ClaimsFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(..) => 1,
            CliError::Generator(GeneratorError::Validation(_))
            | CliError::Generator(GeneratorError::RandomExhausted { .. }) => 2,
            CliError::Generator(_) => 1,
            CliError::ClaimsFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Generator(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "cannot write {}: {e}", p.display()),
            CliError::ClaimsFailed(n) => write!(f, "{n} asserted claim failures"),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        CliError::Generator(e)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            spec,
            format,
            seed,
            out,
        } => {
            let spec: LatticeSpec = spec.parse()?;
            let ctx = CheckContext { seed };
            let text = match format {
                Format::Dot => export::hasse_dot(&Analysis::new(spec.build()?)),
                Format::Json | Format::Text => {
                    let report = analyze(&spec, &ctx)?;
                    let failures = report.failed_verdicts().count();
                    let text = if format == Format::Json {
                        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                    } else {
                        report.render_text()
                    };
                    emit(out.as_deref(), &text)?;
                    return if failures > 0 {
                        Err(CliError::ClaimsFailed(failures))
                    } else {
                        Ok(())
                    };
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Verify {
            exhaustive,
            labeled,
            rings,
            random,
            random_max_size,
            seed,
            format,
            out,
            witness_dir,
        } => {
            if format == Format::Dot {
                return Err(CliError::Usage(
                    "verify supports --format text or json".into(),
                ));
            }
            if let Some(n) = exhaustive {
                if n > MAX_EXHAUSTIVE {
                    return Err(CliError::Usage(format!(
                        "--exhaustive {n} exceeds the documented bound of {MAX_EXHAUSTIVE} elements"
                    )));
                }
            }
            let rings = match rings {
                Some(r) => parse_spec_list(&r)?,
                None => Vec::new(),
            };
            let exhaustive = match exhaustive {
                None if rings.is_empty() && random == 0 => Some(5),
                e => e,
            };
            let config = CorpusConfig {
                exhaustive,
                labeled,
                rings,
                random_count: random,
                random_max_size,
                seed,
            };
            let result = run_suite(&config)?;
            let text = match format {
                Format::Json => result.to_json() + "\n",
                _ => result.render_text(),
            };
            emit(out.as_deref(), &text)?;
            if let Some(dir) = witness_dir {
                std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(dir.clone(), e))?;
                for (id, w) in &result.witnesses {
                    let doc = w.minimized.as_ref().unwrap_or(&w.lattice);
                    let path = dir.join(format!("{id}.json"));
                    let json = serde_json::to_string_pretty(doc).expect("document serializes");
                    std::fs::write(&path, json).map_err(|e| CliError::Io(path.clone(), e))?;
                }
            }
            if result.passed() {
                Ok(())
            } else {
                Err(CliError::ClaimsFailed(result.asserted_failures))
            }
        }
        Command::Enumerate {
            exhaustive,
            labeled,
            format,
            out,
        } => {
            let mode = if labeled {
                Enumeration::Labeled
            } else {
                Enumeration::Unlabeled
            };
            let lattices: Vec<_> = enumerate_lattices(exhaustive, mode)?.collect();
            let text = match format {
                Format::Json => {
                    let docs: Vec<_> = lattices.iter().map(|l| l.to_document()).collect();
                    serde_json::to_string_pretty(&docs).expect("documents serialize") + "\n"
                }
                Format::Text => {
                    let mut s = String::new();
                    for l in &lattices {
                        let covers: Vec<String> = l
                            .cover_pairs()
                            .iter()
                            .map(|(a, b)| format!("{a}<{b}"))
                            .collect();
                        s += &format!("n={} {}\n", l.size(), covers.join(" "));
                    }
                    s += &format!("{} lattices\n", lattices.len());
                    s
                }
                Format::Dot => {
                    return Err(CliError::Usage(
                        "enumerate supports --format text or json".into(),
                    ))
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Export {
            spec,
            what,
            path,
            out,
        } => {
            let spec: LatticeSpec = spec.parse()?;
            let analysis = Analysis::new(spec.build()?);
            let text = match what {
                Drawing::Hasse => export::hasse_dot(&analysis),
                Drawing::Strata => export::strata_dot(&analysis),
                Drawing::Topology => export::topology_dot(&analysis)
                    .map_err(|e| CliError::Usage(format!("SH-topology is invalid: {e}")))?,
                Drawing::Lattice => {
                    serde_json::to_string_pretty(&analysis.lattice.to_document())
                        .expect("document serializes")
                        + "\n"
                }
            };
            emit(path.or(out).as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
