//! `qident`: verify sum-product identities, print coefficient tables, replay
//! constant-term proofs and expand Nahm sums.
//!
//! Exit codes: 0 success, 1 mismatch or failing replay step, 2 bad input,
//! 3 internal invariant violation.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qident_core::exec::Exec;
use qident_core::lang::{eval_product, eval_sum_with, parse_file, verify_with, IdentitySpec, Status};
use qident_core::replay::{all_pass, replay, Theorem};
use qident_core::serial::parse_rat;
use qident_core::series::Rat;
use qident_core::special::{nahm_series, NahmData};

#[derive(Parser)]
#[command(name = "qident", version, about = "Exact verification of q-series sum-product identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check identity files (or directories of `.id` files) through an order.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Truncation order in powers of q; fractions such as 9/4 are allowed.
        #[arg(long, default_value = "100", value_parser = parse_order)]
        order: Rat,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Comma-separated summation bounds overriding the file's.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<Bounds>,
    },
    /// Print both sides' coefficients aligned by exponent.
    Table {
        path: PathBuf,
        /// Identity to print when the file holds several.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value = "20", value_parser = parse_order)]
        order: Rat,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<Bounds>,
    },
    /// Replay a constant-term proof step by step (name, alias such as 1.5, or `all`).
    Replay {
        theorem: String,
        #[arg(long, default_value = "80", value_parser = parse_order)]
        order: Rat,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand the Nahm sum for a positive definite A, vector B and constant C.
    Nahm {
        /// Rows separated by `;`, entries by `,`, e.g. "2,1;1,2".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Comma-separated; zeros by default.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "30", value_parser = parse_order)]
        order: Rat,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Debug)]
struct Bounds(Vec<i64>);

fn parse_order(s: &str) -> Result<Rat, String> {
    match parse_rat(s) {
        Some(r) if r > Rat::from_integer(0) => Ok(r),
        Some(_) => Err("order must be positive".into()),
        None => Err(format!("`{s}` is not a rational number")),
    }
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().ok().filter(|&b| b >= 0).ok_or(format!("bad bound `{t}`")))
        .collect::<Result<_, _>>()
        .map(Bounds)
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { paths, order, format, bounds } => cmd_verify(&paths, order, format, bounds),
        Command::Table { path, name, order, format, bounds } => {
            cmd_table(&path, name.as_deref(), order, format, bounds)
        }
        Command::Replay { theorem, order, format } => cmd_replay(&theorem, order, format),
        Command::Nahm { a, b, c, order, format } => cmd_nahm(&a, b.as_deref(), &c, order, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qident: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Files named on the command line plus every `.id` file in named
/// directories, in sorted order.
fn collect_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| input_error(format!("{}: {e}", p.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "id"))
                .collect();
            found.sort();
            files.extend(found);
        } else if p.exists() {
            files.push(p.clone());
        } else {
            return Err(input_error(format!("{}: no such file or directory", p.display())));
        }
    }
    Ok(files)
}

fn load_specs(paths: &[PathBuf]) -> Result<Vec<IdentitySpec>, Failure> {
    let mut specs = Vec::new();
    for f in collect_files(paths)? {
        specs.extend(parse_file(&f).map_err(|e| input_error(format!("{}: {e}", f.display())))?);
    }
    Ok(specs)
}

fn cmd_verify(paths: &[PathBuf], order: Rat, format: Format, bounds: Option<Bounds>) -> Result<u8, Failure> {
    let specs = load_specs(paths)?;
    let exec = Exec::default();
    let bounds = bounds.map(|b| b.0);
    let reports = exec.map(specs.iter().collect(), |s| verify_with(s, order, bounds.as_deref(), exec));
    output::verify_reports(&reports, format).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    Ok(if reports.iter().any(|r| !r.is_consistent()) {
        3
    } else if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Mismatch) {
        1
    } else {
        0
    })
}

fn cmd_table(
    path: &Path,
    name: Option<&str>,
    order: Rat,
    format: Format,
    bounds: Option<Bounds>,
) -> Result<u8, Failure> {
    let specs = load_specs(&[path.to_path_buf()])?;
    let spec = match name {
        Some(n) => specs.iter().find(|s| s.name == n).ok_or_else(|| input_error(format!("no identity `{n}`")))?,
        None if specs.len() == 1 => &specs[0],
        None => return Err(input_error("the file holds several identities; pick one with --name")),
    };
    let bounds = bounds.map(|b| b.0);
    let sum = eval_sum_with(spec, order, bounds.as_deref(), Exec::default()).map_err(|e| input_error(e.to_string()))?;
    let product = eval_product(spec, order).map_err(|e| input_error(e.to_string()))?;
    output::table(&spec.name, order, &sum, &product, format)
        .map_err(|e| Failure { code: 3, message: e.to_string() })?;
    Ok(0)
}

fn cmd_replay(theorem: &str, order: Rat, format: Format) -> Result<u8, Failure> {
    let theorems = if theorem == "all" {
        Theorem::ALL.to_vec()
    } else {
        let names: Vec<String> = Theorem::ALL.iter().map(|t| format!("{} ({})", t.name(), t.alias())).collect();
        vec![Theorem::parse(theorem)
            .ok_or_else(|| input_error(format!("unknown theorem `{theorem}`; known: {}", names.join(", "))))?]
    };
    let reports: Vec<_> = Exec::default().map(theorems, |t| replay(t, order)).into_iter().flatten().collect();
    output::replay_reports(&reports, format).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    Ok(if all_pass(&reports) { 0 } else { 1 })
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Failure> {
    s.split(',').map(|t| parse_rat(t).ok_or_else(|| input_error(format!("`{t}` is not a rational number")))).collect()
}

fn cmd_nahm(a: &str, b: Option<&str>, c: &str, order: Rat, format: Format) -> Result<u8, Failure> {
    let a: Vec<Vec<Rat>> = a.split(';').map(parse_rats).collect::<Result<_, _>>()?;
    let b = match b {
        Some(b) => parse_rats(b)?,
        None => vec![Rat::from_integer(0); a.len()],
    };
    let c = parse_rat(c).ok_or_else(|| input_error(format!("`{c}` is not a rational number")))?;
    let data = NahmData::new(a, b, c).map_err(|e| input_error(format!("invalid Nahm data: {e}")))?;
    let series = nahm_series(&data, order).map_err(|e| input_error(e.to_string()))?;
    output::nahm(&series, order, format).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    Ok(0)
}
