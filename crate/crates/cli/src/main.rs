use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pauli_nd::fermion_mapping::IntegralsFile;
use pauli_nd::operators::DEFAULT_SIMPLIFY_THRESHOLD;
use pauli_nd::StateVector;
use pauli_nd_cli as cli;

#[derive(Parser)]
#[command(name = "pauli", version, about = "Pauli-string arrays, fermion mappings and measurement grouping")]
struct Args {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest qubit count handled by dense backends.
    #[arg(long, global = true, env = "PAULI_DENSE_LIMIT", default_value_t = cli::DEFAULT_DENSE_LIMIT)]
    dense_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mapping {
    Jw,
    Parity,
    Bk,
}

impl Mapping {
    fn name(self) -> &'static str {
        match self {
            Mapping::Jw => "jw",
            Mapping::Parity => "parity",
            Mapping::Bk => "bk",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Map one- and two-body integrals to a qubit operator.
    Map {
        integrals: PathBuf,
        #[arg(long, value_enum, default_value = "jw")]
        mapping: Mapping,
        /// Build every index tuple by broadcasting instead of only the listed ones.
        #[arg(long, conflicts_with = "sparse")]
        dense: bool,
        #[arg(long)]
        sparse: bool,
        #[arg(long, default_value_t = DEFAULT_SIMPLIFY_THRESHOLD)]
        threshold: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Commutator of a Hamiltonian with every operator of a pool.
    Commutators {
        hamiltonian: PathBuf,
        pool: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SIMPLIFY_THRESHOLD)]
        threshold: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Mapped excitation operators, written as an operator list.
    Pool {
        #[arg(long, value_enum, default_value = "jw")]
        mapping: Mapping,
        #[arg(long)]
        modes: usize,
        /// Occupied spatial orbitals; selects the spin-conserving pool.
        #[arg(long)]
        occupied: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Split an operator's strings into commuting groups.
    Partition {
        operator: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Clifford circuit diagonalizing a commuting set of labels.
    Diagonalize {
        labels: Vec<String>,
        /// Take the labels from an operator file instead.
        #[arg(long, conflicts_with = "labels")]
        operator: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Expectation value of an operator in a state vector.
    Expect {
        operator: PathBuf,
        /// State JSON; a seeded random state when omitted.
        state: Option<PathBuf>,
    },
    /// Time the mapping and commutator kernels; CSV on stdout or to a file.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 12])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, value_enum, default_value = "jw")]
        mapping: Mapping,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(args: Args) -> Result<()> {
    match args.command {
        Command::Map {
            integrals,
            mapping,
            dense,
            sparse: _,
            threshold,
            output,
        } => {
            let file = IntegralsFile::from_json(&cli::read(&integrals)?)?;
            let start = Instant::now();
            let op = cli::map(&file, mapping.name(), dense, threshold)?;
            let elapsed = start.elapsed().as_secs_f64();
            cli::write(&output, &op.to_canonical_json())?;
            println!("{} terms in {elapsed:.6} s", op.num_terms());
        }
        Command::Commutators {
            hamiltonian,
            pool,
            threshold,
            output,
        } => {
            let h = cli::read_operator(&hamiltonian)?;
            let pool = cli::read_operators(&pool)?;
            let report = cli::commutators(&h, &pool, threshold)?;
            cli::write(&output, &cli::operators_to_json(&report.operators)?)?;
            println!("{} commutators", report.operators.len());
            println!("{} single-Pauli commutators", report.single_commutators);
            println!("{} strings through HA - AH", report.composition_strings);
            println!("{} terms after simplification", report.terms_after);
        }
        Command::Pool {
            mapping,
            modes,
            occupied,
            output,
        } => {
            let ops = cli::pool(mapping.name(), modes, occupied)?;
            cli::write(&output, &cli::operators_to_json(&ops)?)?;
            println!("{} operators", ops.len());
        }
        Command::Partition { operator, output } => {
            let op = cli::read_operator(&operator)?;
            let file = cli::partition_operator(&op)?;
            cli::write(&output, &serde_json::to_string_pretty(&file)?)?;
            println!("{} groups over {} strings", file.groups.len(), op.num_terms());
        }
        Command::Diagonalize {
            labels,
            operator,
            output,
        } => {
            let labels = match operator {
                Some(path) => cli::read_operator(&path)?.paulis().labels(),
                None => labels,
            };
            let (circuit, diag, signs) = cli::diagonalize_labels(&labels)?;
            cli::write(&output, &circuit.to_json())?;
            println!("{} gates", circuit.len());
            for (r, label) in labels.iter().enumerate() {
                let sign = if signs[[r]] < 0 { "-" } else { "+" };
                println!("{label} -> {sign}{}", diag.label(r));
            }
        }
        Command::Expect { operator, state } => {
            let op = cli::read_operator(&operator)?;
            let state = match state {
                Some(path) => StateVector::from_json(&cli::read(&path)?)?,
                None => {
                    if op.num_qubits() > args.dense_limit {
                        bail!("{} qubits exceeds the dense limit of {}", op.num_qubits(), args.dense_limit);
                    }
                    StateVector::random(op.num_qubits(), args.seed)
                }
            };
            println!("{}", cli::format_complex(cli::expect(&op, &state, args.dense_limit)?));
        }
        Command::Bench {
            sizes,
            repeat,
            mapping,
            output,
        } => {
            let rows = cli::bench::run(&sizes, repeat, args.seed, mapping.name())?;
            match output {
                Some(path) => {
                    let mut buf = Vec::new();
                    cli::bench::write_csv(&rows, &mut buf)?;
                    cli::write(&path, std::str::from_utf8(&buf)?)?;
                }
                None => cli::bench::write_csv(&rows, std::io::stdout().lock())?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
