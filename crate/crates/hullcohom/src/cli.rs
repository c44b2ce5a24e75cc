//! Command-line front end. `run` does everything except touching the real
//! stdout, so it can be tested in-process.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze_entry, analyze_file, compare, Analysis, Failure};
use crate::catalog;
use crate::format::parse;
use crate::report::{betti_section, equivariant_sections, poset_section, spectral_section, verify_section, Report};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Cohomology of torus-arrangement complements for quasiperiodic tilings.
#[derive(Debug, Parser)]
#[command(name = "hullcohom", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Print only failures.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the bundled arrangements.
    List,
    /// Betti numbers of the arrangement and of its complement.
    Betti { target: String },
    /// The intersection poset.
    Poset { target: String },
    /// E1, d1 and E2 of the Mayer-Vietoris spectral sequence.
    Spectral { target: String },
    /// Irrep decompositions under the arrangement's symmetry group.
    Equivariant { target: String },
    /// Compare bundled entries against their recorded results.
    Verify {
        target: Option<String>,
        #[arg(long, conflicts_with = "target")]
        all: bool,
    },
}

/// What a run printed and its exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load(target: &str, with_group: bool) -> Result<(String, Analysis), Failure> {
    if let Some(entry) = catalog::get(target) {
        return Ok((entry.name.to_string(), analyze_entry(&entry, with_group)?));
    }
    let path = Path::new(target);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{target}: {e}")))?;
        let file = parse(&text)?;
        let name = file.name.clone();
        return Ok((name, Analysis::Geometric(Box::new(analyze_file(file, with_group)?))));
    }
    Err(Failure::Unknown(target.to_string()))
}

fn exit_code(f: &Failure) -> i32 {
    match f {
        Failure::Parse(_) | Failure::Unknown(_) | Failure::Usage(_) => EXIT_USAGE,
        Failure::Inconsistent(_) => EXIT_INCONSISTENT,
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Structured => report.structured(),
    }
}

fn execute(cli: &Cli) -> Result<(i32, Report), Failure> {
    let mut report = Report::default();
    let code = match &cli.command {
        Command::List => {
            let mut s = crate::report::Section::new("list", "Catalog");
            for name in catalog::list() {
                let e = catalog::get(name).expect("listed");
                let kind = if e.is_geometric() { "geometric" } else { "combinatorial" };
                s.value(name, format!("{name:<26}"), vec![kind.to_string(), e.title.to_string()]);
            }
            report.sections.push(s);
            0
        }
        Command::Betti { target } => {
            let (name, a) = load(target, true)?;
            report.sections.push(betti_section(&name, &a));
            0
        }
        Command::Poset { target } => {
            let (name, a) = load(target, false)?;
            report.sections.push(poset_section(&name, &a));
            0
        }
        Command::Spectral { target } => {
            let (name, a) = load(target, true)?;
            report.sections.push(spectral_section(&name, &a));
            0
        }
        Command::Equivariant { target } => {
            let (name, a) = load(target, true)?;
            let Analysis::Geometric(g) = &a else {
                return Err(Failure::Usage(format!("{name} has no torus data")));
            };
            if g.equivariant.is_none() {
                return Err(Failure::Usage(format!("{name} declares no symmetry group")));
            }
            report.sections.extend(equivariant_sections(&name, g));
            report.sections.push(betti_section(&name, &a));
            0
        }
        Command::Verify { target, all } => {
            let names: Vec<String> = match (target, all) {
                (Some(t), _) => vec![t.clone()],
                (None, true) => catalog::list().iter().map(|s| s.to_string()).collect(),
                (None, false) => return Err(Failure::Usage("verify needs an entry or --all".into())),
            };
            let mut code = 0;
            for name in names {
                let entry = catalog::get(&name).ok_or_else(|| Failure::Unknown(name.clone()))?;
                let analysis = analyze_entry(&entry, true)?;
                let diff = compare(&analysis, &entry.fixtures);
                if !diff.is_empty() {
                    code = EXIT_MISMATCH;
                }
                if !cli.quiet || !diff.is_empty() {
                    report.sections.push(verify_section(&name, &diff));
                }
            }
            code
        }
    };
    Ok((code, report))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, report)) => {
            let quiet_ok = cli.quiet && code == 0;
            let stdout = if quiet_ok { String::new() } else { render(&report, cli.format) };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: exit_code(&f), stdout: String::new(), stderr: format!("hullcohom: {f}\n") },
    }
}
