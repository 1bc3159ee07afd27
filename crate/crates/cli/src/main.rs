use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use contraction_kernel::workbench::format::InstanceFile;
use contraction_kernel::workbench::generate::Family;
use contraction_kernel::workbench::run::{run, Check, Mode};
use contraction_kernel::workbench::sweep::{sweep, Source, SweepSpec};
use contraction_kernel::{oracle, Error, Execution, Instance, ProblemKind};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "ckernel", version, about = "Kernelize, solve and cross-check contraction instances")]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Path,
    Pcfe,
}

impl From<Kind> for ProblemKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cycle => ProblemKind::Cycle,
            Kind::Path => ProblemKind::Path,
            Kind::Pcfe => ProblemKind::Pcfe,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    Kernelize,
    Verify,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        /// cycle, path, complete, tree, random-2connected, blown-cycle, theta or decorated.
        family: String,
        /// Integer parameters of the family.
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Cycle)]
        kind: Kind,
        /// Budget written to the file; defaults to the planted budget when
        /// the family has one, else 0.
        #[arg(short)]
        k: Option<u64>,
        /// Anchors for pcfe instances, 1-indexed.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        anchors: Option<Vec<u32>>,
    },
    /// Kernelize an instance and print the report as JSON.
    Kernelize { file: PathBuf },
    /// Solve an instance with the exact oracle.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        oracle_cap: usize,
    },
    /// Kernelize, then check the answer against the exact oracle.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        oracle_cap: usize,
    },
    /// Run a family over a range of budgets.
    Sweep {
        /// A generator family, or `connected` for every connected graph up
        /// to `--exhaustive-n` vertices.
        #[arg(long)]
        family: String,
        /// Comma-separated family parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long)]
        k_min: u64,
        #[arg(long)]
        k_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generated graphs, each run at every budget.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        exhaustive_n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Cycle)]
        kind: Kind,
        /// Defaults to verify for `connected`, kernelize otherwise.
        #[arg(long, value_enum)]
        mode: Option<SweepMode>,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        oracle_cap: usize,
    },
}

fn read(path: &Path) -> Result<InstanceFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    InstanceFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::OracleCap { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn generate(
    family: &str,
    params: &[usize],
    seed: u64,
    kind: Kind,
    k: Option<u64>,
    anchors: Option<Vec<u32>>,
) -> Result<InstanceFile, Error> {
    let family = Family::parse(family, params)?;
    let g = family.generate(seed)?;
    let k = k.unwrap_or_else(|| family.planted_budget().unwrap_or(0) as u64);
    let n = g.order() as u32;
    let anchors = match (kind, anchors) {
        (Kind::Pcfe, Some(a)) => Some((a[0], a[1])),
        (Kind::Pcfe, None) => Some((1, n)),
        (_, Some(_)) => return Err(Error::InvalidParams("anchors are only used by pcfe".into())),
        (_, None) => None,
    };
    let base = Instance::Cycle(contraction_kernel::CycleInstance::new(g, 0));
    let (mut file, _) = InstanceFile::from_instance(&base);
    file.kind = kind.into();
    file.k = k;
    file.anchors = anchors;
    // Round-trip through the parser so generated files obey the same rules.
    InstanceFile::parse(&file.render())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Gen {
            family,
            params,
            seed,
            output,
            kind,
            k,
            anchors,
        } => {
            let file = match generate(&family, &params, seed, kind, k, anchors) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let text = format!("c {family} {params:?} seed {seed}\n{}", file.render());
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                    eprintln!("wrote {} ({} vertices, {} edges)", path.display(), file.n, file.edges.len());
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Command::Kernelize { file } => single(&file, Mode::Kernelize, oracle::DEFAULT_CAP, exec),
        Command::Solve { file, oracle_cap } => single(&file, Mode::Solve, oracle_cap, exec),
        Command::Verify { file, oracle_cap } => single(&file, Mode::Verify, oracle_cap, exec),
        Command::Sweep {
            family,
            params,
            k_min,
            k_max,
            seed,
            count,
            exhaustive_n,
            kind,
            mode,
            oracle_cap,
        } => {
            if k_min > k_max {
                eprintln!("error: --k-min exceeds --k-max");
                return ExitCode::from(EXIT_USAGE);
            }
            let source = if family == "connected" {
                if !(1..=10).contains(&exhaustive_n) {
                    eprintln!("error: --exhaustive-n must lie in 1..=10");
                    return ExitCode::from(EXIT_USAGE);
                }
                Source::Exhaustive(exhaustive_n)
            } else {
                match Family::parse(&family, &params) {
                    Ok(family) => Source::Generated { family, count, seed },
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
            };
            let mode = match mode {
                Some(SweepMode::Verify) => Mode::Verify,
                Some(SweepMode::Kernelize) => Mode::Kernelize,
                None if matches!(source, Source::Exhaustive(_)) => Mode::Verify,
                None => Mode::Kernelize,
            };
            let spec = SweepSpec {
                source,
                kind: kind.into(),
                k_min,
                k_max,
                mode,
                oracle_cap,
            };
            match sweep(&spec, exec) {
                Ok(report) => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                    eprint!("{}", report.table());
                    for row in report.rows.iter().filter(|r| r.failed()) {
                        eprintln!("FAIL {} k={}: {:?}", row.label, row.k, row);
                    }
                    if report.failures > 0 {
                        ExitCode::from(EXIT_FAIL)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_for(&e))
                }
            }
        }
    }
}

fn single(path: &Path, mode: Mode, cap: usize, exec: Execution) -> ExitCode {
    let file = match read(path) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&file, mode, cap, exec) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("{}", report.summary());
            if report.check == Some(Check::Fail) {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
