use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use treescape::{MoveKind, Rootedness, Strictness};
use treescape_cli::taxa::TaxonMap;
use treescape_cli::verify::DEFAULT_MAX_M;
use treescape_cli::{
    exit, resolve_rootedness, run_bench, run_build, run_verify, BenchOptions, BuildOptions,
    CliError, Format, ReadOptions, VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "treescape",
    version,
    about = "Build SPR, NNI and TBR graphs over sets of phylogenetic trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph over the trees in a file.
    Build(BuildArgs),
    /// Compare the fast graph with the pairwise brute-force oracle.
    Verify(VerifyArgs),
    /// Time graph construction over random trees.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Spr,
    Nni,
    Tbr,
}

impl From<ModeArg> for MoveKind {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Spr => MoveKind::Spr,
            ModeArg::Nni => MoveKind::Nni,
            ModeArg::Tbr => MoveKind::Tbr,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Dot,
}

#[derive(Args)]
struct ShapeArgs {
    /// Move type.
    #[arg(long, value_enum, default_value = "spr")]
    mode: ModeArg,
    /// Trees are rooted (default except for tbr).
    #[arg(long, conflicts_with = "unrooted")]
    rooted: bool,
    /// Trees are unrooted.
    #[arg(long)]
    unrooted: bool,
}

impl ShapeArgs {
    fn resolve(&self) -> Result<(MoveKind, Rootedness), CliError> {
        let requested = match (self.rooted, self.unrooted) {
            (true, _) => Some(Rootedness::Rooted),
            (_, true) => Some(Rootedness::Unrooted),
            _ => None,
        };
        let kind = MoveKind::from(self.mode);
        Ok((kind, resolve_rootedness(kind, requested)?))
    }
}

#[derive(Args)]
struct InputArgs {
    /// Newick file, one tree per line; lines starting with '#' are skipped.
    input: PathBuf,
    #[command(flatten)]
    shape: ShapeArgs,
    /// Tab-separated name to integer map for named leaves.
    #[arg(long)]
    taxa: Option<PathBuf>,
    /// Reject branch lengths and internal labels (default).
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Ignore branch lengths and internal labels.
    #[arg(long)]
    lenient: bool,
}

impl InputArgs {
    fn read_options(&self, rootedness: Rootedness) -> Result<ReadOptions, CliError> {
        let mut opts = ReadOptions::new(rootedness);
        if self.lenient {
            opts.strictness = Strictness::Lenient;
        }
        if let Some(path) = &self.taxa {
            opts.taxa = Some(TaxonMap::load(path)?);
        }
        Ok(opts)
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Vertex table path; defaults to <out>.vertices.tsv next to --out.
    #[arg(long)]
    vertices: Option<PathBuf>,
    /// Container snapshot to extend and rewrite.
    #[arg(long)]
    append: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Refuse inputs with more trees than this.
    #[arg(long, default_value_t = DEFAULT_MAX_M)]
    max_m: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Leaf counts.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [64, 128, 256])]
    n_values: Vec<usize>,
    /// Trees per run.
    #[arg(long = "m", value_delimiter = ',', default_values_t = [200])]
    m_values: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Timed repetitions per run; the fastest counts.
    #[arg(long, default_value_t = 3)]
    reps: usize,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Build(args) => {
            let (kind, rootedness) = args.input.shape.resolve()?;
            let opts = BuildOptions {
                read: args.input.read_options(rootedness)?,
                input: args.input.input,
                kind,
                format: match args.format {
                    FormatArg::Tsv => Format::Tsv,
                    FormatArg::Dot => Format::Dot,
                },
                out: args.out,
                vertices: args.vertices,
                append: args.append,
            };
            let summary = run_build(&opts, &mut out)?;
            out.flush().map_err(CliError::io("<stdout>"))?;
            for w in &summary.warnings {
                eprintln!("warning: {w}");
            }
            Ok(exit::OK)
        }
        Command::Verify(args) => {
            let (kind, rootedness) = args.input.shape.resolve()?;
            let opts = VerifyOptions {
                read: args.input.read_options(rootedness)?,
                input: args.input.input,
                kind,
                max_m: args.max_m,
                inject_fault: args.inject_fault,
            };
            let report = run_verify(&opts)?;
            report.write(&mut out).map_err(CliError::io("<stdout>"))?;
            Ok(if report.passed() {
                exit::OK
            } else {
                exit::MISMATCH
            })
        }
        Command::Bench(args) => {
            let (kind, rootedness) = args.shape.resolve()?;
            let opts = BenchOptions {
                n_values: args.n_values,
                m_values: args.m_values,
                kind,
                rootedness,
                seed: args.seed,
                reps: args.reps,
            };
            run_bench(&opts)?
                .write(&mut out)
                .map_err(CliError::io("<stdout>"))?;
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
