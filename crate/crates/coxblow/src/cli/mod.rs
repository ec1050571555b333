//! Command-line front end.
//!
//! Every subcommand reads one JSON document (`"schema": 1`), writes a JSON
//! report to stdout or `--out`, and optionally a DOT graph with `--dot`.
//! Exit codes: 0 success, 2 a verdict named by `--assert` is false or
//! undecided, 3 input error, 4 a cap was exceeded, 1 internal error.

pub mod doc;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use doc::{parse_document, Problem, SystemSource};
use report::{Config, Report};

use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_ASSERT: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "coxblow", version, about = "Blow-ups of Coxeter cell complexes and their gluing data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nested complex, M_#, mock presentation and framing of a blow-up.
    Blowup(CommonArgs),
    /// Conditions (1)-(4), (P), (C) and framing of explicit gluing data.
    CheckGluing(CommonArgs),
    /// Classify a family of associahedral tilings by Schläfli symbol.
    ClassifyAssoc(CommonArgs),
    /// Permutohedral structure of a maximal blow-up.
    Permutohedron(CommonArgs),
    /// The forms B_t and reflections rho_v of a gluing system.
    Represent(CommonArgs),
    /// Coset enumeration of a presentation or of a system's group.
    Enumerate(CommonArgs),
    /// Reflections of R^{3,1} and their integrality.
    Minkowski(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input document; `-` reads stdin.
    pub input: PathBuf,
    /// Fail with exit code 2 unless this verdict is true (repeatable).
    #[arg(long = "assert", value_name = "VERDICT")]
    pub asserts: Vec<String>,
    #[arg(long, default_value_t = crate::groups::DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    #[arg(long, default_value_t = crate::linrep::DEFAULT_T_SCAN_CAP)]
    pub t_scan_cap: i64,
    #[arg(long, default_value_t = crate::linrep::DEFAULT_FLOAT_TOLERANCE)]
    pub float_tolerance: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the named graph of the report as DOT, to `--dot-out` or stdout.
    #[arg(long, value_name = "GRAPH")]
    pub dot: Option<String>,
    #[arg(long, requires = "dot")]
    pub dot_out: Option<PathBuf>,
}

impl CommonArgs {
    fn config(&self) -> Config {
        Config { max_cosets: self.max_cosets, t_scan_cap: self.t_scan_cap, float_tolerance: self.float_tolerance }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Blowup(_) => "blowup",
            Command::CheckGluing(_) => "check-gluing",
            Command::ClassifyAssoc(_) => "classify-assoc",
            Command::Permutohedron(_) => "permutohedron",
            Command::Represent(_) => "represent",
            Command::Enumerate(_) => "enumerate",
            Command::Minkowski(_) => "minkowski",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Blowup(a)
            | Command::CheckGluing(a)
            | Command::ClassifyAssoc(a)
            | Command::Permutohedron(a)
            | Command::Represent(a)
            | Command::Enumerate(a)
            | Command::Minkowski(a) => a,
        }
    }
}

fn mismatch<T>(cmd: &str, kind: &str) -> Result<T> {
    Err(Error::Input(format!("{cmd} cannot read a document of kind {kind:?}")))
}

/// Builds the report for a subcommand name and document text.
pub fn build_report(command: &str, text: &str, cfg: &Config) -> Result<Report> {
    let doc = parse_document(text)?;
    let kind = doc.problem.kind();
    match (command, doc.problem) {
        ("blowup", Problem::Blowup(d)) => report::blowup_report(&d),
        ("check-gluing", Problem::GluingSystem(d)) => report::gluing_report(&SystemSource::GluingSystem(d), cfg),
        ("check-gluing", Problem::Blowup(d)) => report::gluing_report(&SystemSource::Blowup(d), cfg),
        ("classify-assoc", Problem::ClassifyAssoc(d)) => report::classify_report(&d),
        ("permutohedron", Problem::Permutohedron(d)) => report::permutohedron_report(&d),
        ("permutohedron", Problem::Blowup(d)) => report::permutohedron_report(&d.coxeter),
        ("represent", Problem::Represent(d)) => report::represent_report(&d, cfg),
        ("represent", Problem::GluingSystem(d)) => {
            report::represent_report(&doc::RepresentDoc { system: SystemSource::GluingSystem(d), t: Vec::new() }, cfg)
        }
        ("enumerate", Problem::Enumerate(d)) => report::enumerate_report(&d, cfg),
        ("enumerate", Problem::GluingSystem(d)) => report::enumerate_report(
            &doc::EnumerateDoc { system: Some(SystemSource::GluingSystem(d)), ..Default::default() },
            cfg,
        ),
        ("minkowski", Problem::Minkowski(d)) => report::minkowski_report(&d),
        (cmd, _) => mismatch(cmd, kind),
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_INPUT,
        Error::Cap(_) => EXIT_CAP,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

fn execute(cmd: &Command) -> Result<i32> {
    let a = cmd.args();
    let text = read_input(&a.input)?;
    let report = build_report(cmd.name(), &text, &a.config())?;
    write_output(a.out.as_ref(), &report.to_pretty())?;
    if let Some(target) = &a.dot {
        let dot = report::emit_dot(&report.value, target)?;
        write_output(a.dot_out.as_ref(), &dot)?;
    }
    let mut code = if report.cap_exceeded { EXIT_CAP } else { EXIT_OK };
    for name in &a.asserts {
        match report.verdict(name) {
            None => {
                return Err(Error::Input(format!(
                    "no verdict {name:?}; available: {}",
                    report.verdict_names().join(", ")
                )))
            }
            Some(Some(true)) => {}
            Some(_) => {
                eprintln!("assertion failed: {name}");
                code = EXIT_ASSERT;
            }
        }
    }
    Ok(code)
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
