use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dgk::checks::Settings;
use dgk::format::ProfileJson;
use dgk::io::{read_document, write_atomic};
use dgk::{CliError, Report};
use dgk_core::exactlin::FieldSpec;

/// Exact top-degree Kunneth checks for DG modules over nonpositive DG algebras.
#[derive(Parser, Debug)]
#[command(name = "dgk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient field: Q or F<p>. Files carry their own field; this must
    /// match it, and it overrides the profile's fields for suite and gen.
    #[arg(long, global = true, env = "DGK_FIELD")]
    field: Option<String>,

    /// Seed for sampled checks and, with a profile, for corpus generation.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Base resolution depth (default: width of N plus 2).
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Corpus profile in JSON (default: the built-in profile).
    #[arg(long, global = true)]
    profile: Option<PathBuf>,

    /// Where to write the JSON report (for gen: the corpus file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of every structure in a file.
    Validate { path: PathBuf },
    /// Build and certify theta for an instance, a corpus, or two module files.
    Kunneth {
        #[arg(num_args = 1..=2, required = true)]
        paths: Vec<PathBuf>,
    },
    /// Build and certify theta_der through a semi-free resolution.
    DerivedKunneth {
        #[arg(num_args = 1..=2, required = true)]
        paths: Vec<PathBuf>,
        /// Also write the resolution of the first M here.
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Generate the corpus of a profile and run every check on it.
    Suite,
    /// Write the corpus of a profile as a JSON file.
    Gen,
}

fn profile(cli: &Cli) -> Result<ProfileJson, CliError> {
    let mut p = match &cli.profile {
        None => ProfileJson::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::structural(
                    format!("{}: line {}, column {}", path.display(), e.line(), e.column()),
                    e.to_string(),
                )
            })?
        }
    };
    if let Some(f) = field(cli)? {
        p.fields = vec![f.to_string()];
    }
    if let Some(s) = cli.seed {
        p.seed = s;
    }
    Ok(p)
}

fn field(cli: &Cli) -> Result<Option<FieldSpec>, CliError> {
    cli.field
        .as_deref()
        .map(|s| s.parse().map_err(|e| CliError::structural("--field", format!("{e}"))))
        .transpose()
}

fn settings(cli: &Cli) -> Settings {
    let mut s = Settings {
        depth: cli.depth,
        ..Settings::default()
    };
    if let Some(seed) = cli.seed {
        s.seed = seed;
    }
    s
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let report = match &cli.command {
        Command::Validate { path } => dgk::cmd_validate(path, field(cli)?)?,
        Command::Kunneth { paths } => dgk::cmd_kunneth(paths, field(cli)?, &settings(cli))?,
        Command::DerivedKunneth { paths, resolution } => {
            if cli.depth == Some(0) {
                return Err(CliError::structural("--depth", "must be at least 1"));
            }
            dgk::cmd_derived_kunneth(paths, field(cli)?, &settings(cli), resolution.as_deref())?
        }
        Command::Suite => dgk::cmd_suite(&profile(cli)?)?,
        Command::Gen => {
            let (report, doc) = dgk::cmd_gen(&profile(cli)?)?;
            match &cli.out {
                Some(path) => {
                    write_atomic(path, &doc.to_json())?;
                    // the written file must read back as the same document
                    if read_document(path)? != doc {
                        return Err(CliError::structural(
                            path.display().to_string(),
                            "corpus did not round-trip",
                        ));
                    }
                }
                None => print!("{}", doc.to_json()),
            }
            return Ok(report);
        }
    };
    if let Some(path) = &cli.out {
        write_atomic(path, &report.to_json())?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if matches!(cli.command, Command::Gen) && cli.out.is_none() {
                eprint!("{}", report.summary());
            } else {
                print!("{}", report.summary());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
