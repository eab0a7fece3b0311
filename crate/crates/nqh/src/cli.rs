//! Argument parsing and dispatch; returns the exit code and both output streams so the
//! whole surface can be tested in-process.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nqh_core::knorrer::CaseChoice;

use crate::commands::{self, CommandError, CommandResult, Options};
use crate::report::Report;
use crate::scenario::{run_all, Registry};

#[derive(Parser, Debug)]
#[command(name = "nqh", version, about = "Exact Clifford deformations, twisted matrix algebras and skew Knorrer periodicity checks")]
pub struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for scenario runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include the completed rewriting system in Clifford reports.
    #[arg(long, global = true)]
    pub dump_rules: bool,
    /// Top degree for Hilbert series (at most 8).
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CaseArg {
    Auto,
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a presentation, print its relations and Hilbert series.
    CheckPresentation { file: PathBuf },
    /// The Koszul dual of a presentation.
    KoszulDual { file: PathBuf },
    /// Build the Clifford deformation of a presentation or of a double Ore extension.
    Clifford { file: PathBuf },
    /// Validate double Ore extension data.
    DoubleOre { file: PathBuf },
    /// Verify a twisting system of M2 and run its property suite.
    VerifyTwist { file: PathBuf },
    /// Run the plus or minus pipeline on double Ore data.
    Knorrer {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CaseArg::Auto)]
        case: CaseArg,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reproduce a registered scenario, or all of them.
    Reproduce {
        id: String,
        /// Read scenarios from this JSON file instead of the embedded registry.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: &str) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn render(reports: &[Report], json: bool) -> String {
    if json {
        let v = if reports.len() == 1 { reports[0].to_json() } else { serde_json::Value::Array(reports.iter().map(Report::to_json).collect()) };
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    } else {
        reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n")
    }
}

fn finish(result: CommandResult, json: bool, copy_to: Option<&Path>) -> Outcome {
    match result {
        Ok(rep) => {
            let stdout = render(std::slice::from_ref(&rep), json);
            if let Some(path) = copy_to {
                if let Err(e) = std::fs::write(path, &stdout) {
                    return Outcome::input_error(&format!("cannot write {}: {e}", path.display()));
                }
            }
            let (code, stderr) = match rep.first_failure() {
                None => (0, String::new()),
                Some(c) => (1, format!("check failed: {}{}\n", c.name, c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default())),
            };
            Outcome { code, stdout, stderr }
        }
        Err(CommandError::Input(e)) => Outcome::input_error(&e),
        Err(CommandError::Math(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("check failed: {e}\n") },
    }
}

fn reproduce(id: &str, registry: Option<&Path>, jobs: usize, json: bool) -> Outcome {
    let reg = match registry {
        None => Registry::embedded(),
        Some(p) => match std::fs::read_to_string(p) {
            Ok(text) => Registry::from_json(&text),
            Err(e) => return Outcome::input_error(&format!("cannot read {}: {e}", p.display())),
        },
    };
    let reg = match reg {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(&e.0),
    };
    let selected: Vec<_> = if id == "all" {
        reg.scenarios.iter().collect()
    } else {
        match reg.get(id) {
            Some(s) => vec![s],
            None => {
                let ids: Vec<&str> = reg.scenarios.iter().map(|s| s.id.as_str()).collect();
                return Outcome::input_error(&format!("unknown scenario {id:?}; known: {}", ids.join(", ")));
            }
        }
    };
    if selected.is_empty() {
        return Outcome { code: 0, stdout: String::from("scenarios: 0\n"), stderr: String::from("warning: the scenario registry is empty\n") };
    }
    let mut reports = Vec::new();
    for r in run_all(&selected, jobs) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(CommandError::Input(e)) | Err(CommandError::Math(e)) => return Outcome::input_error(&e),
        }
    }
    let failed: Vec<&Report> = reports.iter().filter(|r| !r.passed()).collect();
    let mut stdout = render(&reports, json);
    let mut stderr = String::new();
    if !json {
        stdout.push_str(&format!("\nscenarios: {}, passed: {}, failed: {}\n", reports.len(), reports.len() - failed.len(), failed.len()));
    }
    for r in &failed {
        let c = r.first_failure().expect("failed report has a failing check");
        stderr.push_str(&format!("FAILED {}: {}{}\n", r.subject, c.name, c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()));
    }
    Outcome { code: if failed.is_empty() { 0 } else { 1 }, stdout, stderr }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome { code: 2, stdout: String::new(), stderr: text } } else { Outcome { code: 0, stdout: text, stderr: String::new() } };
        }
    };
    let opts = Options { max_degree: cli.max_degree, dump_rules: cli.dump_rules };
    match &cli.command {
        Command::CheckPresentation { file } => finish(commands::check_presentation(file, &opts), cli.json, None),
        Command::KoszulDual { file } => finish(commands::koszul_dual_cmd(file, &opts), cli.json, None),
        Command::Clifford { file } => finish(commands::clifford(file, &opts), cli.json, None),
        Command::DoubleOre { file } => finish(commands::double_ore(file, &opts), cli.json, None),
        Command::VerifyTwist { file } => finish(commands::verify_twist(file, &opts), cli.json, None),
        Command::Knorrer { file, case, report } => {
            let choice = match case {
                CaseArg::Auto => CaseChoice::Auto,
                CaseArg::Plus => CaseChoice::Plus,
                CaseArg::Minus => CaseChoice::Minus,
            };
            finish(commands::knorrer(file, choice, &opts), cli.json, report.as_deref())
        }
        Command::Reproduce { id, registry } => reproduce(id, registry.as_deref(), cli.jobs, cli.json),
    }
}
