//! `germinv` command line.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use germinv::corpus::{corpus, run_corpus};
use germinv::exactpoly::Rat;
use germinv::germfile::GermFile;
use germinv::invariants::ReportOptions;
use germinv::report::{build_report, compare_report, family_report, render_compare, render_corpus, render_family, render_text};

#[derive(Parser, Debug)]
#[command(name = "germinv", version, about = "Exact invariants of map germs (C²,0) → (C³,0)")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generic projections and planes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation bound for local colength computations.
    #[arg(long = "max-colength", global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..=512))]
    max_colength: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one germ file.
    Report { file: PathBuf },
    /// Compare the invariant profiles of two germs.
    Compare { first: PathBuf, second: PathBuf },
    /// Evaluate a one-parameter family at sample values.
    Family {
        file: PathBuf,
        /// Comma-separated rationals, e.g. `0,1,-2,1/3`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        samples: Vec<String>,
    },
    /// Run the built-in corpus.
    Corpus,
}

enum Outcome {
    Clean,
    Findings,
}

fn emit<T: Serialize>(json: bool, doc: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    let out = if json {
        serde_json::to_string_pretty(doc)? + "\n"
    } else {
        text(doc)
    };
    let mut stdout = io::stdout().lock();
    match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn read(path: &Path) -> Result<GermFile> {
    GermFile::read(path).with_context(|| format!("{}", path.display()))
}

fn parse_samples(raw: &[String]) -> Result<Vec<Rat>> {
    raw.iter()
        .map(|s| {
            let s = s.trim();
            s.parse::<Rat>().map_err(|_| anyhow::anyhow!("invalid rational sample '{s}'"))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = ReportOptions {
        max_order: cli.max_colength,
        seed: cli.seed,
    };
    let findings = |bad: bool| if bad { Outcome::Findings } else { Outcome::Clean };
    match &cli.command {
        Command::Report { file } => {
            let gf = read(file)?;
            let f = gf.germ().with_context(|| format!("{}", file.display()))?;
            let doc = build_report(&f, gf.label.as_deref(), &opts);
            emit(cli.json, &doc, render_text)?;
            Ok(findings(doc.has_inconsistencies()))
        }
        Command::Compare { first, second } => {
            let (a, b) = (read(first)?, read(second)?);
            let (f, g) = (a.germ()?, b.germ()?);
            let doc = compare_report(&f, &g, [a.label.as_deref(), b.label.as_deref()], &opts)
                .context("comparison needs two finitely determined quasihomogeneous corank-1 germs")?;
            emit(cli.json, &doc, render_compare)?;
            Ok(findings(!doc.inconsistencies.is_empty()))
        }
        Command::Family { file, samples } => {
            let gf = read(file)?;
            let fam = gf.family().with_context(|| format!("{}", file.display()))?;
            let samples = parse_samples(samples)?;
            if samples.is_empty() {
                bail!("no samples given");
            }
            let doc = family_report(&fam, gf.label.as_deref(), &samples, &opts);
            emit(cli.json, &doc, render_family)?;
            Ok(Outcome::Clean)
        }
        Command::Corpus => {
            let rows = run_corpus(&corpus(), &opts);
            emit(cli.json, &rows, |r| render_corpus(r))?;
            Ok(findings(rows.iter().any(|r| !r.pass)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Findings) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
