use std::io::Read;
use std::process::ExitCode;

use bunpic::{input_error_report, parse_computations, parse_int_list, render, resolve_text, run_batch, run_report, CliError, Format, RunConfig};
use clap::Parser;
use serde_json::Value;

/// Picard groups, Neron-Severi groups and gerbe obstructions for moduli of G-bundles over
/// families of curves.
///
/// Exit status: 0 on success, 2 when the hypotheses of a requested theorem fail (the other
/// results are still printed), 1 on input errors.
#[derive(Parser, Debug)]
#[command(name = "bunpic", version)]
struct Args {
    /// Group: a product of factors such as `GL(3)*T(1)`, `Spin(7)`, `E6sc`, or `@datum.json`
    /// for a raw root datum.
    #[arg(long)]
    group: Option<String>,

    /// Coordinates of delta in the canonical generators of pi_1(G): free generators first,
    /// then torsion generators in increasing order. Example: `--delta 1,0`.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,

    /// Curve family: a preset (`universal:2,1`, `hyperelliptic(3)`), `raw:genus=2,delta=2,...`,
    /// inline JSON, or `@family.json`.
    #[arg(long)]
    family: Option<String>,

    /// Explicit cocharacter lifting delta (default: a generic lift).
    #[arg(long, allow_hyphen_values = true)]
    lift_d: Option<String>,

    /// Comma separated computations: pi1, forms, ns, picard, rigidified, gerbe, poincare.
    #[arg(long, default_value = "pi1")]
    compute: String,

    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,

    /// File with one JSON run configuration per line (`-` for stdin); prints JSON lines.
    #[arg(long, conflicts_with_all = ["group", "delta", "family", "lift_d"])]
    batch: Option<String>,
}

fn config(args: &Args) -> Result<RunConfig, CliError> {
    let group = args.group.clone().ok_or_else(|| CliError::Input("--group is required".into()))?;
    Ok(RunConfig {
        group: Value::String(group),
        delta: args.delta.as_deref().map(parse_int_list).transpose()?,
        family: args.family.clone().map(Value::String),
        lift_d: args.lift_d.as_deref().map(parse_int_list).transpose()?,
        compute: parse_computations(&args.compute)?,
        format: args.format.parse()?,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(path) = &args.batch {
        let text = if path == "-" {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(1);
            }
            Ok(s)
        } else {
            resolve_text(&format!("@{path}"))
        };
        return match text {
            Ok(t) => {
                let (lines, code) = run_batch(&t);
                for l in lines {
                    println!("{l}");
                }
                ExitCode::from(code as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    let format = args.format.parse().unwrap_or(Format::Text);
    match config(&args).and_then(|cfg| run_report(&cfg)) {
        Ok(out) => {
            print!("{}", render(&out.report, format));
            if format == Format::Json {
                println!();
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            if format == Format::Json {
                println!("{}", render(&input_error_report(&e), Format::Json));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
