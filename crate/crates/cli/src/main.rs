use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::error;

use mascot::align::GapParams;
use mascot::pipeline::{exit_code_for, run_pipeline, ReportFormat, RunConfig};
use mascot::structure::{default_cache_dir, CACHE_DIR_ENV};
use mascot::superpose::{DEFAULT_REFINE_ROUNDS, DEFAULT_THRESHOLD};

#[derive(Parser)]
#[command(name = "mascot", version, about = "Multiple protein structure alignment around a center protein")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Align two or more structures and write superposed coordinates
    Align(AlignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Json,
    Text,
    Both,
}

#[derive(Args)]
struct AlignArgs {
    /// PDB codes with optional chain (1TTQ:B) or paths to PDB files
    #[arg(value_name = "ID", required = true, num_args = 2..)]
    inputs: Vec<String>,

    /// Directory searched for local PDB files before the cache
    #[arg(long, value_name = "P")]
    pdb_dir: Option<PathBuf>,

    /// Directory holding {CODE}.dssp or {CODE}_{CHAIN}.dssp files
    #[arg(long, value_name = "P")]
    dssp_dir: Option<PathBuf>,

    /// Download cache
    #[arg(long, value_name = "P", env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    #[arg(long, value_name = "P", default_value = ".")]
    out_dir: PathBuf,

    /// Download structures missing from the cache
    #[arg(long)]
    fetch: bool,

    #[arg(long, value_name = "F", default_value_t = GapParams::DEFAULT_OPEN)]
    gap_open: f64,

    #[arg(long, value_name = "F", default_value_t = GapParams::DEFAULT_EXTEND)]
    gap_extend: f64,

    /// CA distance cutoff for refined equivalences, in Angstrom
    #[arg(long, value_name = "F", default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,

    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINE_ROUNDS)]
    refine_rounds: usize,

    /// 8x8 similarity matrix file
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,

    /// Also write the correspondence matrix as msa.fasta
    #[arg(long)]
    dump_msa: bool,

    #[arg(long, value_enum, default_value = "both")]
    report: ReportArg,

    /// Worker threads (0 = all cores)
    #[arg(long, value_name = "N", default_value_t = 0)]
    jobs: usize,
}

impl AlignArgs {
    fn into_config(self) -> RunConfig {
        let mut cfg = RunConfig::new(self.inputs);
        cfg.pdb_dir = self.pdb_dir;
        cfg.dssp_dir = self.dssp_dir;
        cfg.cache_dir = self.cache_dir.unwrap_or_else(default_cache_dir);
        cfg.out_dir = self.out_dir;
        cfg.allow_remote = self.fetch;
        cfg.gap_open = self.gap_open;
        cfg.gap_extend = self.gap_extend;
        cfg.threshold = self.threshold;
        cfg.refine_rounds = self.refine_rounds;
        cfg.matrix = self.matrix;
        cfg.dump_msa = self.dump_msa;
        cfg.jobs = self.jobs;
        cfg.report_format = match self.report {
            ReportArg::Json => ReportFormat::Json,
            ReportArg::Text => ReportFormat::Text,
            ReportArg::Both => ReportFormat::Both,
        };
        cfg
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match cli.command {
        Command::Align(args) => {
            let cfg = args.into_config();
            match run_pipeline(&cfg) {
                Ok(outcome) => {
                    let r = &outcome.report;
                    match r.center_rmsd {
                        Some(v) => println!("center {}  centerRMSD {v:.3} A  ({:.2} s)", r.center_id, r.elapsed_seconds),
                        None => println!("center {}  centerRMSD n/a  ({:.2} s)", r.center_id, r.elapsed_seconds),
                    }
                    for path in &outcome.written {
                        println!("wrote {}", path.display());
                    }
                    for fit in r.per_protein.iter().filter(|f| !f.succeeded()) {
                        error!("{}: {}", fit.id, fit.error.as_deref().unwrap_or("failed"));
                    }
                    for d in &r.dropped {
                        error!("{} ({}): {}", d.token, d.stage, d.error);
                    }
                    ExitCode::from(outcome.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code_for(&e) as u8)
                }
            }
        }
    }
}
