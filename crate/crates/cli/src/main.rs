use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use solvcert_cli::doc::CertificateDoc;
use solvcert_cli::spec::{load, read_spec, KnotSpec};
use solvcert_cli::table::{batch, ingest, BatchReport};
use solvcert_cli::render;
use solvcert_core::exterior::{compound, Grade};
use solvcert_core::gate::{certify, CriterionChoice, Verdict};
use solvcert_core::infection::plan_moves;
use solvcert_core::int_serde::Int;
use solvcert_core::linalg::{smith_normal_form, F2Matrix, IntMatrix};
use solvcert_core::seifert::MetabolizerSearch;

const CERTIFIED: u8 = 0;
const FAILURE: u8 = 1;
const UNDETERMINED: u8 = 2;
const WARNINGS: u8 = 3;

#[derive(Parser)]
#[command(name = "solvcert", version, about = "Exact 1-solvability certificates for algebraically slice knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Auto,
    Genus1,
    Genus2,
    Genus3,
    General,
    Alexander,
}

impl From<CriterionArg> for CriterionChoice {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Auto => CriterionChoice::Auto,
            CriterionArg::Genus1 => CriterionChoice::Genus1,
            CriterionArg::Genus2 => CriterionChoice::Genus2,
            CriterionArg::Genus3 => CriterionChoice::Genus3,
            CriterionArg::General => CriterionChoice::General,
            CriterionArg::Alexander => CriterionChoice::Alexander,
        }
    }
}

#[derive(clap::Args, Clone, Copy)]
struct SearchArgs {
    /// Largest absolute entry tried when searching for a metabolizer
    #[arg(long, default_value_t = 3)]
    search_bound: u32,
    /// Node budget for the metabolizer search
    #[arg(long, default_value_t = 2_000_000)]
    search_nodes: u64,
}

impl From<SearchArgs> for MetabolizerSearch {
    fn from(a: SearchArgs) -> Self {
        MetabolizerSearch { bound: a.search_bound, node_cap: a.search_nodes }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the 1-solvability criteria on a knot description
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        criterion: CriterionArg,
        /// Print a certificate document instead of a summary
        #[arg(long)]
        json: bool,
        /// RFC 3339 timestamp to record instead of the current time
        #[arg(long)]
        issued_at: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Plan the infections that make the derivative 0-solvable
    Plan {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Read a CSV knot table into knot descriptions
    Ingest {
        csv: PathBuf,
        /// Write the table here instead of standard output
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Certify every knot in a table (CSV, JSON array or directory of descriptions)
    Batch {
        table: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the k-th compound of a square matrix
    Wedge {
        /// Matrix as JSON, e.g. [[1,2],[3,4]]
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 2)]
        grade: usize,
        #[arg(long)]
        mod2: bool,
    },
    /// Print the Smith normal form U·M·V = D of a matrix
    Snf {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate document
    Verify { path: PathBuf },
}

fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<Int>> = serde_json::from_str(s).context("matrix must be a JSON array of integer rows")?;
    let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    Ok(IntMatrix::try_from_rows(&rows)?)
}

fn issued_at(arg: Option<String>) -> Result<String> {
    match arg {
        Some(s) => {
            chrono::DateTime::parse_from_rfc3339(&s).with_context(|| format!("--issued-at {s:?} is not RFC 3339"))?;
            Ok(s)
        }
        None => Ok(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
    }
}

fn cmd_check(path: &Path, criterion: CriterionArg, json: bool, stamp: Option<String>, search: MetabolizerSearch) -> Result<u8> {
    let spec = read_spec(path)?;
    let loaded = load(&spec, None, search)?;
    let cert = certify(&loaded.input, criterion.into())?;
    let code = if cert.verdict == Verdict::OneSolvable { CERTIFIED } else { UNDETERMINED };
    if json {
        let doc = CertificateDoc::new(loaded.spec, loaded.derived, loaded.notes, cert, issued_at(stamp)?);
        print!("{}", doc.to_json());
    } else {
        print!("{}", render::certificate(&spec.name, &cert, &loaded.notes));
    }
    Ok(code)
}

fn cmd_plan(path: &Path, json: bool) -> Result<u8> {
    let spec = read_spec(path)?;
    let loaded = load(&spec, None, MetabolizerSearch::default())?;
    let Some(block) = &loaded.input.block else { bail!("planning needs a Seifert matrix with a derivative") };
    let Some(profile) = &loaded.input.profile else { bail!("planning needs a Milnor profile of the derivative") };
    match plan_moves(block, profile) {
        Ok(plan) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "name": spec.name, "statuses": plan.statuses(), "plan": plan }))?);
            } else {
                println!("{}: {}", spec.name, if plan.is_empty() { "already 0-solvable, nothing to do" } else { "move plan" });
                print!("{plan}");
            }
            Ok(CERTIFIED)
        }
        Err(fail) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "name": spec.name, "failed_stage": fail.stage(), "failure": fail }))?);
            } else {
                println!("{}: planning failed at {}: {fail}", spec.name, fail.stage());
            }
            Ok(UNDETERMINED)
        }
    }
}

fn cmd_ingest(csv: &Path, out: Option<&Path>) -> Result<u8> {
    let file = fs::File::open(csv).with_context(|| format!("cannot read {}", csv.display()))?;
    let table = ingest(file)?;
    log::info!("{} knots ingested from {}", table.knots.len(), csv.display());
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    let text = serde_json::to_string_pretty(&table.knots)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(if table.warnings.is_empty() { CERTIFIED } else { WARNINGS })
}

fn load_table(path: &Path) -> Result<(Vec<KnotSpec>, Vec<String>)> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut knots = Vec::new();
        let mut warnings = Vec::new();
        for f in files {
            match read_spec(&f) {
                Ok(s) => knots.push(s),
                Err(e) => warnings.push(format!("{e:#}")),
            }
        }
        return Ok((knots, warnings));
    }
    if path.extension().is_some_and(|x| x == "csv") {
        let t = ingest(fs::File::open(path).with_context(|| format!("cannot read {}", path.display()))?)?;
        return Ok((t.knots, t.warnings));
    }
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let knots: Vec<KnotSpec> = serde_json::from_str(&text).with_context(|| format!("{}: expected a JSON array of knots", path.display()))?;
    Ok((knots, Vec::new()))
}

fn cmd_batch(table: &Path, json: bool, search: MetabolizerSearch) -> Result<u8> {
    let (knots, warnings) = load_table(table)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report: BatchReport = batch(&knots, search);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", render::report(&report));
    }
    Ok(if warnings.is_empty() && report.errors == 0 { CERTIFIED } else { WARNINGS })
}

fn cmd_wedge(matrix: &str, grade: usize, mod2: bool) -> Result<u8> {
    let m = parse_matrix(matrix)?;
    let op = compound(&m, Grade::from_k(grade)?)?;
    if mod2 {
        println!("{}", F2Matrix::from_int(&op.matrix));
    } else {
        println!("{}", op.matrix);
    }
    Ok(CERTIFIED)
}

fn cmd_snf(matrix: &str, json: bool) -> Result<u8> {
    let m = parse_matrix(matrix)?;
    let s = smith_normal_form(&m);
    if json {
        println!("{}", serde_json::to_string_pretty(&s)?);
    } else {
        println!("D = {}", s.d);
        println!("U = {}", s.u);
        println!("V = {}", s.v);
        let factors: Vec<String> = s.invariant_factors().iter().map(BigInt::to_string).collect();
        println!("invariant factors: {}", factors.join(", "));
    }
    Ok(CERTIFIED)
}

fn cmd_verify(path: &Path) -> Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = CertificateDoc::from_json(&text).with_context(|| format!("{}", path.display()))?;
    match doc.verify() {
        Ok(()) => {
            let what = match doc.certificate.criterion {
                Some(c) => format!("1-solvable by {c}"),
                None => "not determined".into(),
            };
            println!("{}: certificate valid ({what})", doc.input.name);
            Ok(CERTIFIED)
        }
        Err(e) => {
            println!("{}: certificate rejected: {e:#}", doc.input.name);
            Ok(UNDETERMINED)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { path, criterion, json, issued_at, search } => cmd_check(&path, criterion, json, issued_at, search.into()),
        Command::Plan { path, json } => cmd_plan(&path, json),
        Command::Ingest { csv, out } => cmd_ingest(&csv, out.as_deref()),
        Command::Batch { table, json, search } => cmd_batch(&table, json, search.into()),
        Command::Wedge { matrix, grade, mod2 } => cmd_wedge(&matrix, grade, mod2),
        Command::Snf { matrix, json } => cmd_snf(&matrix, json),
        Command::Verify { path } => cmd_verify(&path),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SOLVCERT_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}
