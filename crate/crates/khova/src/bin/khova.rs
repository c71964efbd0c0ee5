use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use khova::cli::{self, Algorithm, CliError, CoeffSpec, Input, JobSpec, OutputFormat, Task};

/// Khovanov-type invariants of link diagrams, batched.
#[derive(Parser)]
#[command(name = "khova", version, about)]
struct Args {
    /// PD code, e.g. "X[1,4,2,3];X[3,2,4,1]" ("U" adds a free unknot).
    #[arg(long)]
    pd: Option<String>,

    /// Braid word whose closure to take ('a'..='y' are generators,
    /// 'A'..='Y' their inverses).
    #[arg(long)]
    braid: Option<String>,

    /// Strand count for --braid.
    #[arg(long)]
    strands: Option<usize>,

    /// Named corpus to run every task over.
    #[arg(long)]
    corpus: Option<String>,

    /// Comma-separated tasks: jones, kh, reduced, odd, lee, s, tb, delta.
    #[arg(long, value_delimiter = ',', required = true)]
    tasks: Vec<String>,

    /// Coefficients: Z, Q, F2, or F<p> for an odd prime p.
    #[arg(long, default_value = "Z")]
    coeff: String,

    /// Complex construction: naive (full cube) or scan.
    #[arg(long, default_value = "naive")]
    algorithm: String,

    /// Output format: json, tsv, or pretty.
    #[arg(long, default_value = "json")]
    output: String,

    /// Result cache directory (KHOVA_CACHE overrides this flag).
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for corpus runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn job_from_args(args: Args) -> Result<JobSpec, CliError> {
    let input = match (&args.pd, &args.braid, &args.corpus) {
        (Some(pd), None, None) => Input::Pd(pd.clone()),
        (None, Some(word), None) => {
            let strands = args
                .strands
                .ok_or_else(|| CliError::Input("--braid requires --strands".into()))?;
            Input::Braid {
                word: word.clone(),
                strands,
            }
        }
        (None, None, Some(name)) => Input::Corpus(name.clone()),
        _ => {
            return Err(CliError::Input(
                "give exactly one of --pd, --braid, --corpus".into(),
            ))
        }
    };
    if args.strands.is_some() && args.braid.is_none() {
        return Err(CliError::Input("--strands only applies to --braid".into()));
    }
    let tasks = args
        .tasks
        .iter()
        .map(|t| Task::parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(JobSpec {
        input,
        tasks,
        coeff: CoeffSpec::parse(&args.coeff)?,
        algorithm: Algorithm::parse(&args.algorithm)?,
        output: OutputFormat::parse(&args.output)?,
        cache_dir: cli::effective_cache_dir(args.cache_dir),
        jobs: args.jobs,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = job_from_args(args).and_then(|job| cli::run(&job));
    match result {
        Ok(doc) => {
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("khova: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
