use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pwcheck_core::catalog::Engine;
use pwcheck_core::{
    kummer_report, render_diamond, resolution_diamond, run_case, CaseCatalog, CaseError, CheckValue, Report,
};

#[derive(Parser)]
#[command(name = "pwcheck", version, about = "Exact checks of perverse and weight filtrations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Markdown)]
    format: Format,
    /// Case file or directory of case files; defaults to the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a named case.
    Case {
        name: String,
        /// Only run checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
    /// List the cases in the catalog.
    List,
    /// Betti numbers of the Kummer-type fibre K^[n].
    Kummer {
        #[arg(long)]
        n: u32,
        /// Also compare the perverse and weight tables.
        #[arg(long)]
        check_pw: bool,
    },
    /// Intersection-form checks of an og6 case.
    Chow {
        #[arg(long, default_value = "og6")]
        case: String,
    },
    /// The perverse diamond of the resolution of an og6 case.
    Diamond {
        /// Print the diamond grid instead of the (d, k, dim) records.
        #[arg(long)]
        render: bool,
        #[arg(long, default_value = "og6")]
        case: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CaseError> {
    let catalog = match &cli.catalog {
        Some(path) => CaseCatalog::load(path)?,
        None => CaseCatalog::builtin()?,
    };
    match &cli.command {
        Command::Case { name, filter } => Ok(emit(&run_case(&catalog, name, filter.as_deref())?, cli.format)),
        Command::List => {
            for name in catalog.names() {
                println!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kummer { n, check_pw } => Ok(emit(&kummer_report(*n, *check_pw), cli.format)),
        Command::Chow { case } => {
            let name = resolve_og6(&catalog, case)?;
            Ok(emit(&run_case(&catalog, &name, Some("chow"))?, cli.format))
        }
        Command::Diamond { render, case } => {
            let name = resolve_og6(&catalog, case)?;
            let table = resolution_diamond(&catalog, &name)?;
            match (cli.format, render) {
                (Format::Json, _) => println!(
                    "{}",
                    serde_json::to_string_pretty(&CheckValue::table(&table)).expect("serializable")
                ),
                (Format::Markdown, true) => print!("{}", render_diamond(&table)),
                (Format::Markdown, false) => {
                    for ((d, k), n) in table.iter() {
                        println!("{d} {k} {n}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// An exact case name, or the single og6 case whose name starts with `name`.
fn resolve_og6(catalog: &CaseCatalog, name: &str) -> Result<String, CaseError> {
    if catalog.get(name).is_some() {
        return Ok(name.to_string());
    }
    let mut hits = catalog
        .names()
        .filter(|n| n.starts_with(name) && catalog.get(n).is_some_and(|c| c.engine == Engine::Og6));
    match (hits.next(), hits.next()) {
        (Some(n), None) => Ok(n.to_string()),
        _ => Err(CaseError::UnknownCase(name.to_string())),
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Markdown => print!("{}", report.to_markdown()),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
