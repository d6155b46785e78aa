use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vqe_bench::compare::{emit_comparison, ComparisonKind, Format};
use vqe_bench::molecule::{bond_key, MoleculeSpec};
use vqe_bench::record::{self, data_path, load_record, rounddata, FileLock};
use vqe_bench::sweep::{load_point, parse_ansatz_list, run_sweep, SweepConfig};
use vqe_bench::{BenchError, THREADS_ENV};
use vqe_core::hamiltonian::build_qubit_hamiltonian;

#[derive(Parser, Debug)]
#[command(name = "vqe-bench", version, about = "Benchmark VQE ansatzes on molecular fixtures")]
struct Cli {
    /// Directory holding `<molecule>.json` result files.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,
    /// Directory holding `<molecule>/<bond_length>.fcidump` inputs.
    #[arg(long, global = true, default_value = "fixtures")]
    fixtures: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Create an empty result file.
    Init {
        #[arg(long)]
        molecule: String,
        /// Defaults to every fixture geometry.
        #[arg(long, value_delimiter = ',')]
        bond_lengths: Vec<f64>,
        #[arg(long)]
        force: bool,
    },
    /// Optimize ansatzes at each geometry and store the results.
    Run {
        #[arg(long)]
        molecule: String,
        #[arg(long, required = true)]
        ansatz: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        bond_lengths: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = THREADS_ENV, default_value_t = 4)]
        threads: usize,
        /// Start from an empty file even if one exists.
        #[arg(long)]
        force: bool,
    },
    /// Store one externally obtained value (ansatz `CCSD` fills the CCSD row).
    Record {
        #[arg(long)]
        molecule: String,
        #[arg(long)]
        ansatz: String,
        #[arg(long)]
        bond_length: f64,
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[arg(long)]
        runtime: Option<f64>,
        #[arg(long)]
        n_params: Option<usize>,
    },
    /// Emit an errors/runtimes/params table.
    Compare {
        #[arg(long)]
        molecule: String,
        #[arg(long, default_value = "errors")]
        kind: String,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Round energies half-to-even before computing errors.
        #[arg(long)]
        round: Option<u32>,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print FCI and Hartree-Fock energies.
    Fci {
        #[arg(long)]
        molecule: String,
        #[arg(long, value_delimiter = ',')]
        bond_lengths: Vec<f64>,
    },
    /// Print the qubit Hamiltonian, one `<re> <im> <pauli>` term per line.
    DumpHamiltonian {
        #[arg(long)]
        molecule: String,
        #[arg(long)]
        bond_length: f64,
    },
}

fn molecule(fixtures: &Path, name: &str, bonds: &[f64]) -> Result<MoleculeSpec, BenchError> {
    let spec = MoleculeSpec::from_fixtures(fixtures, name)?;
    if bonds.is_empty() {
        Ok(spec)
    } else {
        spec.select(bonds)
    }
}

fn run(cli: Cli) -> Result<ExitCode, BenchError> {
    match cli.command {
        Command::Init {
            molecule: name,
            bond_lengths,
            force,
        } => {
            let bonds = if bond_lengths.is_empty() {
                MoleculeSpec::from_fixtures(&cli.fixtures, &name)?.bond_lengths
            } else {
                bond_lengths
            };
            let path = record::initdata(&cli.data_dir, &name, &bonds, force)?;
            println!("{}", path.display());
        }
        Command::Run {
            molecule: name,
            ansatz,
            bond_lengths,
            seed,
            threads,
            force,
        } => {
            let kinds = parse_ansatz_list(&ansatz)?;
            let spec = molecule(&cli.fixtures, &name, &bond_lengths)?;
            let path = data_path(&cli.data_dir, &name);
            std::fs::create_dir_all(&cli.data_dir).map_err(|e| BenchError::io(&cli.data_dir, e))?;
            let _lock = FileLock::acquire(&path)?;
            let mut stored = if path.exists() && !force {
                load_record(&path)?
            } else {
                vqe_bench::BenchRecord::new(&name, &spec.bond_lengths)
            };
            for b in &spec.bond_lengths {
                stored.point_index(*b)?;
            }
            let cfg = SweepConfig {
                threads,
                ..Default::default()
            };
            let outcome = run_sweep(&spec, &kinds, &cfg, seed)?;
            stored.merge_from(&outcome.record)?;
            record::store_record(&path, &stored)?;
            for line in &outcome.diagnostics {
                eprintln!("warning: {line}");
            }
            println!("{}", path.display());
            if !outcome.diagnostics.is_empty() {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Record {
            molecule: name,
            ansatz,
            bond_length,
            energy,
            runtime,
            n_params,
        } => {
            let path = data_path(&cli.data_dir, &name);
            record::savedata(&path, &ansatz, bond_length, energy, runtime, n_params)?;
        }
        Command::Compare {
            molecule: name,
            kind,
            format,
            round,
            output,
        } => {
            let kind: ComparisonKind = kind.parse()?;
            let format: Format = format.parse()?;
            let mut rec = load_record(&data_path(&cli.data_dir, &name))?;
            if let Some(d) = round {
                rec = rounddata(&rec, d);
            }
            let text = emit_comparison(&rec, kind, format)?;
            match output {
                Some(p) => record::write_atomic(&p, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Fci {
            molecule: name,
            bond_lengths,
        } => {
            let spec = molecule(&cli.fixtures, &name, &bond_lengths)?;
            println!("bond_length,fci,hf");
            for &b in &spec.bond_lengths {
                let p = load_point(&spec, b)?;
                println!("{},{},{}", bond_key(b), p.fci, p.hf);
            }
        }
        Command::DumpHamiltonian {
            molecule: name,
            bond_length,
        } => {
            let spec = molecule(&cli.fixtures, &name, &[bond_length])?;
            let path = spec.path(bond_length).ok_or(BenchError::UnknownBondLength(bond_length))?;
            let h = build_qubit_hamiltonian(&vqe_bench::load_fcidump(path)?)?;
            print!("{h}");
        }
    }
    Ok(ExitCode::SUCCESS)
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
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
