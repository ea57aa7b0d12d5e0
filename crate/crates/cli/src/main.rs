use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use torsion_cli::claims::{parse_manifest, DEFAULT_MANIFEST};
use torsion_cli::commands::{self, Output};
use torsion_cli::harness::{self, Options, DEFAULT_BUDGET};
use torsion_cli::{load_db, CliError, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

/// Exact torsion of rational elliptic curves over number fields.
#[derive(Parser)]
#[command(name = "torsion", version, about)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Curve database file (overrides the TORSION_CURVE_DB environment variable).
    #[arg(long, global = true, value_name = "PATH")]
    db: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion subgroup of a rational curve over a number field.
    Torsion {
        /// Curve literal [a1,a2,a3,a4,a6] or [A,B], or a database label.
        #[arg(long)]
        curve: String,
        /// Defining polynomial of the field in x; "x" means Q.
        #[arg(long, default_value = "x")]
        field: String,
    },
    /// Division polynomial psi_n of a curve's short model (odd n).
    Psi {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        n: u64,
    },
    /// Factor a polynomial over Q.
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// A member of a parametrized family (tate5, tate7, isog9_j, isog13_j).
    Family {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Square classes d for which the twist E^d has a point of order n.
    TwistSearch {
        #[arg(long, conflicts_with = "j", required_unless_present = "j")]
        curve: Option<String>,
        /// Use a curve with this j-invariant instead of --curve.
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
        #[arg(long, default_value = "x")]
        field: String,
        #[arg(long)]
        n: u64,
    },
    /// Division polynomial method: fields of degree dividing d with points of order n.
    Growth {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
    },
    /// Run the claim verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these claim ids or groups (repeatable, comma-separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Number of claims run concurrently.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Lift the per-claim wall-clock budget.
    #[arg(long)]
    slow: bool,
    /// Per-claim budget in seconds.
    #[arg(long, default_value_t = DEFAULT_BUDGET.as_secs(), conflicts_with = "slow")]
    budget: u64,
    /// Claims manifest (defaults to the one built into the binary).
    #[arg(long, value_name = "PATH")]
    manifest: Option<PathBuf>,
    /// Directory for per-claim witness dumps.
    #[arg(long, value_name = "DIR")]
    dump_dir: Option<PathBuf>,
    /// List the selected claims without running them.
    #[arg(long)]
    list: bool,
}

/// Write a line to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", s.trim_end()).and_then(|()| out.flush());
}

fn print(out: &Output, json: bool) {
    if json {
        emit(&serde_json::to_string_pretty(&out.json).expect("values serialize"));
    } else {
        emit(&out.text);
    }
}

fn verify(args: VerifyArgs, db_path: Option<PathBuf>, json: bool) -> Result<i32, CliError> {
    let text = match &args.manifest {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read manifest {}: {e}", p.display())))?,
        None => DEFAULT_MANIFEST.to_string(),
    };
    let manifest = parse_manifest(&text).map_err(|e| CliError::Usage(format!("invalid manifest: {e}")))?;
    let (selected, unmatched) = harness::select(&manifest.claims, &args.only);
    if !unmatched.is_empty() {
        return Err(CliError::Usage(format!("no claim or group named {}", unmatched.join(", "))));
    }
    if args.list {
        for c in &selected {
            emit(&format!("{:<32} {:<14} {}", c.id, c.group, c.description));
        }
        return Ok(EXIT_OK);
    }
    let db = Arc::new(load_db(db_path.as_deref())?);
    let opts = Options {
        jobs: args.jobs as usize,
        budget: (!args.slow).then(|| Duration::from_secs(args.budget)),
        dump_dir: args.dump_dir,
    };
    let results = harness::run_claims(&selected, db, &opts, |r| {
        if !json {
            emit(&r.to_string());
        }
    });
    let (verified, failed, skipped) = harness::tally(&results);
    if json {
        let v = json!({ "results": results, "verified": verified, "failed": failed, "skipped": skipped });
        emit(&serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        emit(&format!("{verified} verified, {failed} failed, {skipped} skipped"));
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let json = cli.json;
    let out = match cli.command {
        Command::Verify(args) => return verify(args, cli.db, json),
        Command::Factor { poly } => commands::factor(&poly)?,
        Command::Family { name, t } => commands::family(&name, &t)?,
        Command::Torsion { curve, field } => commands::torsion(&load_db(cli.db.as_deref())?, &curve, &field)?,
        Command::Psi { curve, n } => commands::psi_cmd(&load_db(cli.db.as_deref())?, &curve, n)?,
        Command::TwistSearch { curve, j, field, n } => {
            commands::twist_search_cmd(&load_db(cli.db.as_deref())?, curve.as_deref(), j.as_deref(), &field, n)?
        }
        Command::Growth { curve, n, d } => commands::growth(&load_db(cli.db.as_deref())?, &curve, n, d)?,
    };
    print(&out, json);
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let json = cli.json;
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if json {
                emit(&json!({ "error": e.to_string(), "exit_code": e.exit_code() }).to_string());
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
