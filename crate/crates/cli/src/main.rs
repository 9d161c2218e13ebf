use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use qhopf::models::MODEL_NAMES;
use qhopf::report::{emit_report, ReportFormat};
use qhopf::suite::{run_suite, ModelSource, Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Presentation,
    Hopf,
    Embedding,
    Quotient,
    Actions,
    Galois,
    Iso,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Presentation => Suite::Presentation,
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::Embedding => Suite::Embedding,
            SuiteArg::Quotient => Suite::Quotient,
            SuiteArg::Actions => Suite::Actions,
            SuiteArg::Galois => Suite::Galois,
            SuiteArg::Iso => Suite::Iso,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Verify quantum group presentations, quotient coalgebras and
/// coalgebra bundle identities at a fixed truncation degree.
#[derive(Debug, Parser)]
#[command(name = "qhopf", version)]
#[command(group(ArgGroup::new("source").required(true).args(["model", "file"])))]
struct Args {
    /// Built-in model.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(MODEL_NAMES))]
    model: Option<String>,
    /// Presentation file (only the presentation and hopf suites apply).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Truncation degree.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    /// Degree up to which ideal elements are generated (default degree+2).
    #[arg(long)]
    budget: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    specializations: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let source = match (args.model, args.file) {
        (Some(m), _) => ModelSource::Builtin(m),
        (None, Some(f)) => ModelSource::File(f),
        (None, None) => unreachable!("clap enforces one source"),
    };
    let config = SuiteConfig {
        source,
        suite: args.suite.into(),
        degree: args.degree,
        budget: args.budget.unwrap_or(args.degree + 2),
        seed: args.seed,
        specializations: args.specializations as usize,
    };
    let doc = match run_suite(&config) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Json => ReportFormat::Json,
    };
    print!("{}", emit_report(&doc, format));
    if doc.any_budget_instability() {
        ExitCode::from(3)
    } else if doc.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
