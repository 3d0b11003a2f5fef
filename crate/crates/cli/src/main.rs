use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use menulearn::audit::Axiom;
use menulearn_cli::commands::{self, AuditArgs, ComparativeArgs, CriterionKind, Format, Outcome};
use menulearn_cli::error::CliError;
use menulearn_cli::file::Document;

/// Exact evaluation, comparison and auditing of menu preferences under
/// ambiguous learning.
#[derive(Parser)]
#[command(name = "menulearn", version)]
struct Cli {
    /// Output layout: aligned table or one JSON record per line.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Benefit of information of a menu under an information structure.
    Evaluate {
        file: PathBuf,
        #[arg(long)]
        menu: String,
        #[arg(long)]
        info: String,
    },
    /// Compare two menus under a criterion.
    Compare {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionKind,
        /// Information structure (sl), credal set (bml, jml) or collection (hml).
        #[arg(long)]
        param: String,
        a: String,
        b: String,
    },
    /// Audit a preference against the axioms over a menu corpus.
    Audit {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionKind,
        #[arg(long)]
        param: String,
        /// Comma-separated axiom names; all by default.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<String>>,
        /// Overridden by MENULEARN_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generated menus added to the file's menus.
        #[arg(long, default_value_t = 8)]
        corpus_size: usize,
        /// Mixture weights, e.g. 1/3,1/2.
        #[arg(long)]
        alpha_grid: Option<String>,
        #[arg(long)]
        mixture_cap: Option<usize>,
    },
    /// Comparative-learning checks between two credal sets.
    Comparative {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionKind,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        corpus_size: usize,
    },
    /// Rank menus by the alpha-maxmin rationalization of a collection.
    Rationalize {
        file: PathBuf,
        #[arg(long)]
        collection: String,
        /// cautious, optimistic or const=<p/q>.
        #[arg(long, default_value = "cautious")]
        policy: String,
        /// Menus to rank; all menus in the file by default.
        menus: Vec<String>,
    },
    /// Reproduce the bundled worked examples and check every value.
    Examples {
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("MENULEARN_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::BadArgument(format!("MENULEARN_SEED={v:?} is not a u64"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Evaluate { file, menu, info } => {
            commands::cmd_evaluate(&Document::load(&file)?, &menu, &info, format)
        }
        Command::Compare {
            file,
            criterion,
            param,
            a,
            b,
        } => commands::cmd_compare(&Document::load(&file)?, criterion, &param, &a, &b, format),
        Command::Audit {
            file,
            criterion,
            param,
            axioms,
            seed: flag,
            corpus_size,
            alpha_grid,
            mixture_cap,
        } => {
            let doc = Document::load(&file)?;
            let axioms = axioms
                .map(|names| {
                    names
                        .iter()
                        .map(|n| {
                            Axiom::parse(n)
                                .ok_or_else(|| CliError::BadArgument(format!("unknown axiom {n:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            let args = AuditArgs {
                kind: criterion,
                param: &param,
                axioms,
                corpus_size,
                alpha_grid: alpha_grid.as_deref().map(commands::parse_alpha_grid).transpose()?,
                seed: seed(flag)?,
                mixture_cap,
            };
            commands::cmd_audit(&doc, &args, format)
        }
        Command::Comparative {
            file,
            criterion,
            first,
            second,
            seed: flag,
            corpus_size,
        } => {
            let args = ComparativeArgs {
                kind: criterion,
                first: &first,
                second: &second,
                corpus_size,
                seed: seed(flag)?,
            };
            commands::cmd_comparative(&Document::load(&file)?, &args, format)
        }
        Command::Rationalize {
            file,
            collection,
            policy,
            menus,
        } => {
            let doc = Document::load(&file)?;
            let policy = commands::parse_policy(&policy)?;
            commands::cmd_rationalize(&doc, &collection, &policy, &menus, format)
        }
        Command::Examples { data_dir } => commands::cmd_examples(data_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
