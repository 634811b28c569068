//! `paving`: construct, verify, enumerate and count paving matroids over the
//! plain-text record formats.
//!
//! Exit codes: 0 success, 1 domain violation (invalid seed, non-matroid, cap
//! refusal, failed bound check), 2 usage or parse error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use paving_core::format::{
    parse_matroid, parse_seed, write_corpus, write_count_table, write_matroid, write_matroid_with_derived, write_seed,
};
use paving_core::parallel::init_workers_from_env;
use paving_core::{
    construct_paving, count, enumerate, greedy_seed, verify_counting_inequality, BuildError, CountMode, EnumError,
    EnumerationQuery, Execution, GreedyConfig, Matroid, MatroidClass, MatroidError, SetFamily, SimpleConvention,
    Simplicity,
};

#[derive(Parser)]
#[command(name = "paving", version, about = "Paving and sparse-paving matroid toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the paving matroid of a seed file and report its class.
    Construct {
        #[arg(long)]
        seed_file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a matroid record and print its structure.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Write every matroid of a class as a corpus.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        class: MatroidClass,
        /// One representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// none, loopless, or standard (no loops and no parallel pairs).
        #[arg(long, default_value = "none")]
        simplicity: Simplicity,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a count table; all classes when --class is omitted.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        class: Option<MatroidClass>,
        #[arg(long)]
        iso: bool,
        #[arg(long, default_value = "none")]
        simplicity: Simplicity,
        /// Also compare |M(n,r)| with the product of sparse-paving counts.
        #[arg(long)]
        check_bound: bool,
    },
    /// Greedy random seed and the matroid it builds.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Random draws; defaults to 50 * C(n, r).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Skip the pass that makes the family maximal.
        #[arg(long)]
        no_complete: bool,
    },
    /// Print the dual of a matroid record.
    Dual {
        #[arg(long)]
        file: PathBuf,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
}

type CmdResult = Result<(), Failure>;

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::RankOutOfRange { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::InvalidConfig(msg) => Failure::Usage(msg),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses and validates a matroid file; exchange failures are domain errors.
fn load_matroid(path: &Path) -> Result<Matroid, Failure> {
    let text = read(path)?;
    let record = parse_matroid(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    record.into_matroid().map_err(|e| Failure::Domain(e.to_string()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn family_block(out: &mut String, name: &str, family: &SetFamily) {
    let _ = writeln!(out, "{name}:");
    for set in family {
        let _ = writeln!(out, "{set}");
    }
}

fn construct(seed_file: &Path, out: Option<&Path>) -> CmdResult {
    let text = read(seed_file)?;
    let seed = parse_seed(&text).map_err(|e| Failure::Usage(format!("{}: {e}", seed_file.display())))?;
    let built = construct_paving(&seed)?;
    let m = built.matroid;
    emit(&write_matroid_with_derived(&m), out)?;
    println!(
        "{}",
        if m.is_sparse_paving() {
            "sparse-paving"
        } else {
            "paving"
        }
    );
    Ok(())
}

fn verify(file: &Path) -> CmdResult {
    let text = read(file)?;
    let record = parse_matroid(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let m = match record.into_matroid() {
        Ok(m) => m,
        Err(e @ MatroidError::NotAMatroid(_)) => {
            println!("is_matroid: no");
            return Err(Failure::Domain(e.to_string()));
        }
        Err(e) => return Err(Failure::Domain(e.to_string())),
    };

    let r = m.rank();
    let mut out = String::new();
    let _ = writeln!(out, "rank: {r}");
    let _ = writeln!(
        out,
        "simple (no loops): {}",
        yes_no(m.is_simple(SimpleConvention::Loopless))
    );
    let _ = writeln!(
        out,
        "simple (no loops, no parallel pairs): {}",
        yes_no(m.is_simple(SimpleConvention::Standard))
    );
    let _ = writeln!(out, "is_matroid: yes");
    let _ = writeln!(out, "paving (circuit sizes): {}", yes_no(m.is_paving()));
    let by_hyperplanes = m.is_paving_by_hyperplanes().map_or("n/a", yes_no);
    let _ = writeln!(out, "paving (hyperplane intersections): {by_hyperplanes}");
    let _ = writeln!(out, "sparse-paving (dual paving): {}", yes_no(m.is_sparse_paving()));
    let by_n2 = if m.is_paving() {
        yes_no(m.is_sparse_paving_by_n2())
    } else {
        "n/a"
    };
    let _ = writeln!(out, "sparse-paving (N2 empty): {by_n2}");
    let by_sizes = match m.is_sparse_paving_by_hyperplane_sizes() {
        Ok(b) => yes_no(b),
        Err(_) => "n/a",
    };
    let _ = writeln!(out, "sparse-paving (hyperplane sizes): {by_sizes}");
    match m.hyperplanes() {
        Ok(h) => family_block(&mut out, "hyperplanes", &h),
        Err(_) => {
            let _ = writeln!(out, "hyperplanes: none (rank 0)");
        }
    }
    match m.n_partition() {
        Ok(p) => {
            let _ = writeln!(out, "|N1|: {}", p.n1.len());
            let _ = writeln!(out, "|N2|: {}", p.n2.len());
            family_block(&mut out, "N2", &p.n2);
        }
        Err(_) => {
            let _ = writeln!(out, "|N1|: n/a (not paving)");
            let _ = writeln!(out, "|N2|: n/a (not paving)");
        }
    }
    print!("{out}");
    Ok(())
}

fn query(n: usize, r: usize, class: MatroidClass, iso: bool, simplicity: Simplicity) -> EnumerationQuery {
    EnumerationQuery {
        mode: if iso {
            CountMode::IsomorphismClasses
        } else {
            CountMode::Labeled
        },
        simplicity,
        ..EnumerationQuery::labeled(n, r, class)
    }
}

fn check_rank(n: usize, r: usize) -> CmdResult {
    if r > n {
        return Err(Failure::Usage(format!("rank {r} exceeds n = {n}")));
    }
    Ok(())
}

fn run(command: Command) -> CmdResult {
    let exec = Execution::default();
    match command {
        Command::Construct { seed_file, out } => construct(&seed_file, out.as_deref()),
        Command::Verify { file } => verify(&file),
        Command::Enumerate {
            n,
            r,
            class,
            iso,
            simplicity,
            out,
        } => {
            check_rank(n, r)?;
            let found = enumerate(&query(n, r, class, iso, simplicity), exec)?;
            emit(&write_corpus(&found), out.as_deref())
        }
        Command::Count {
            n,
            r,
            class,
            iso,
            simplicity,
            check_bound,
        } => {
            check_rank(n, r)?;
            let records = match class {
                Some(class) => vec![count(&query(n, r, class, iso, simplicity), exec)?],
                None => {
                    let mut rows = Vec::new();
                    for class in [
                        MatroidClass::Paving,
                        MatroidClass::SparsePaving,
                        MatroidClass::AllMatroids,
                    ] {
                        match count(&query(n, r, class, iso, simplicity), exec) {
                            Ok(rec) => rows.push(rec),
                            // the `all` row is only shown when brute force is within its cap
                            Err(EnumError::CapExceeded { .. }) if class == MatroidClass::AllMatroids => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                    rows
                }
            };
            print!("{}", write_count_table(&records));
            if check_bound {
                let report = verify_counting_inequality(n, r, exec)?;
                println!();
                println!("{report}");
                if !report.holds() {
                    return Err(Failure::Domain(format!("bound check failed for n={n} r={r}")));
                }
            }
            Ok(())
        }
        Command::Random {
            n,
            r,
            bound,
            rng_seed,
            no_complete,
        } => {
            let defaults = GreedyConfig::new(n, r);
            let cfg = GreedyConfig {
                bound: bound.unwrap_or(defaults.bound),
                rng_seed,
                complete: !no_complete,
                ..defaults
            };
            let seed = greedy_seed(&cfg)?;
            let built = construct_paving(&seed)?;
            print!("{}\n{}", write_seed(&seed), write_matroid(&built.matroid));
            Ok(())
        }
        Command::Dual { file } => {
            let m = load_matroid(&file)?;
            emit(&write_matroid(&m.dual()), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_workers_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
