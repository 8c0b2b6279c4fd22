use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superkoszul::berezinian::SuperMatrix;
use superkoszul::coeff::RingSpec;
use superkoszul::commands::{
    cmd_ber_verify, cmd_ber_verify_matrix, cmd_charp_demo, cmd_classical, cmd_dual_verify,
    cmd_koszul_verify, CommandReport, RunConfig,
};

/// Exact verification of super Koszul homology and the Berezinian action.
#[derive(Parser)]
#[command(name = "superkoszul", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exactness of the super Koszul complex K(p,q) over all strands with m1 + m2 <= W.
    KoszulVerify(Common),
    /// Concentration of the dual complex in degree p, generated by D.
    DualVerify(Common),
    /// The classical Koszul complex on A^{N|N}.
    Classical(Common),
    /// The induced action on D equals the inverse Berezinian.
    BerVerify {
        #[command(flatten)]
        common: Common,
        /// Verify a single supermatrix given as a JSON literal file.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// The positive-characteristic counterexample to exactness.
    CharpDemo(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    /// Q, F<prime>, or Grassmann(<field>,<m>).
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 6)]
    window: i64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Common {
    fn config(&self, default_ring: &str) -> Result<RunConfig, String> {
        let text = self.ring.as_deref().unwrap_or(default_ring);
        let ring: RingSpec = text.parse().map_err(|e| format!("--ring {text}: {e}"))?;
        if self.window < 0 {
            return Err("--window must be nonnegative".into());
        }
        Ok(RunConfig {
            p: self.p,
            q: self.q,
            n: self.n,
            ring,
            window: self.window,
            trials: self.trials,
            seed: self.seed,
        })
    }
}

fn emit(report: &CommandReport, common: &Common) -> Result<(), String> {
    let mut body = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &common.out {
        Some(path) => fs::write(path, body).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<CommandReport, String> {
    let (report, common) = match &cli.command {
        Command::KoszulVerify(c) => (cmd_koszul_verify(&c.config("Q")?), c),
        Command::DualVerify(c) => (cmd_dual_verify(&c.config("Q")?), c),
        Command::Classical(c) => (cmd_classical(&c.config("Q")?), c),
        Command::CharpDemo(c) => (cmd_charp_demo(&c.config("F3")?), c),
        Command::BerVerify { common, matrix } => {
            let report = match matrix {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| format!("reading {}: {e}", path.display()))?;
                    let m = SuperMatrix::from_json(&text).map_err(|e| e.to_string())?;
                    cmd_ber_verify_matrix(&m)
                }
                None => cmd_ber_verify(&common.config("Grassmann(Q,4)")?),
            };
            (report, common)
        }
    };
    emit(&report, common)?;
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => ExitCode::from(report.exit_code() as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
