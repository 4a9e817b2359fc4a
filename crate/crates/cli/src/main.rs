use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilspace::FormKind;
use nilspace_cli::{run, sweep, table, Command, JobSpec, OutputFormat, Status};

#[derive(Parser)]
#[command(name = "nilspace", version, about = "Maximal nilpotent spaces of structured endomorphisms over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the maximal nilpotent space for a form and kind
    Construct(JobArgs),
    /// Run every invariant check on one instance
    Verify(JobArgs),
    /// Exhaustive bound and classification census
    Census(JobArgs),
    /// Census for the open pairings, reported without assertion
    Probe(JobArgs),
    /// The desk-scale acceptance suite
    Selftest(JobArgs),
    /// CSV table over a list of jobs
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct JobArgs {
    /// Field order q, or "p,deg"
    #[arg(long, default_value = "3")]
    field: String,
    /// Form name: hyperbolic:n, Kn:n, diag:a,b,.., hyperbolic-hermitian:n, hdiag:.., gram:ROWS
    #[arg(long)]
    form: Option<String>,
    /// symmetric, alternating or hermitian (defaults to the form's own kind)
    #[arg(long)]
    kind: Option<String>,
    /// Census only: enumerate this one dimension
    #[arg(long)]
    dim: Option<usize>,
    /// Maximum point evaluations
    #[arg(long, env = "NILSPACE_BUDGET")]
    budget: Option<u64>,
    /// Maximum number of candidate subspaces
    #[arg(long)]
    subspace_budget: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// JSON array of jobs; "-" reads standard input
    #[arg(long)]
    jobs: Option<String>,
    /// Built-in job list: diag or degenerate
    #[arg(long)]
    sweep: Option<String>,
    /// Run the census for every job
    #[arg(long)]
    census: bool,
}

fn format_of(f: Format) -> OutputFormat {
    match f {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
        Format::Text => OutputFormat::Text,
    }
}

fn job_of(command: Command, a: JobArgs) -> Result<JobSpec, String> {
    let kind = a.kind.map(|k| k.parse::<FormKind>()).transpose().map_err(|e| e.to_string())?;
    Ok(JobSpec {
        command,
        field: a.field,
        form: a.form,
        kind,
        dim: a.dim,
        format: format_of(a.format),
        budget: a.budget,
        subspace_budget: a.subspace_budget,
        workers: a.workers,
    })
}

fn load_jobs(args: &TableArgs) -> Result<Vec<JobSpec>, String> {
    let mut jobs = Vec::new();
    if let Some(path) = &args.jobs {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
        };
        jobs.extend(serde_json::from_str::<Vec<JobSpec>>(&text).map_err(|e| format!("bad job list: {e}"))?);
    }
    if let Some(name) = &args.sweep {
        jobs.extend(sweep(name).map_err(|e| e.to_string())?);
    }
    if args.census {
        for j in &mut jobs {
            j.command = Command::Census;
        }
    }
    Ok(jobs)
}

fn exit(status: Status) -> ExitCode {
    ExitCode::from(status.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Construct(a) => (Command::Construct, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Census(a) => (Command::Census, a),
        Cmd::Probe(a) => (Command::Probe, a),
        Cmd::Selftest(a) => (Command::Selftest, a),
        Cmd::Table(t) => {
            return match load_jobs(&t) {
                Ok(jobs) => {
                    let (status, csv) = table(&jobs);
                    print!("{csv}");
                    exit(status)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit(Status::BadInput)
                }
            };
        }
    };
    let job = match job_of(command, args) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return exit(Status::BadInput);
        }
    };
    let outcome = run(&job);
    print!("{}", outcome.render(job.format));
    if let (Some(e), false) = (outcome.report.get("error"), job.format == OutputFormat::Text) {
        eprintln!("error: {}", e.as_str().unwrap_or_default());
    }
    exit(outcome.status)
}
