//! The `gausslab` command line: job descriptors, exact reports and the bundled corpus.
//!
//! Every subcommand reads one JSON (or TOML) document, runs the matching
//! library operation and prints a [`Report`]. Exit codes: 0 when every check
//! passes, 1 when a check fails, 2 on invalid input, 3 when a scale cap is hit.
//!
//! ```
//! use gausslab::cli::{dispatch, fixture, JobDescriptor};
//! let f = fixture("exeasy_z2").unwrap();
//! let rep = dispatch(&JobDescriptor::from_fixture(&f, 0)).unwrap();
//! assert!(rep.passed());
//! assert_eq!(rep.result["tau"]["order"], 4);
//! ```

mod commands;
mod corpus;
mod report;
mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

pub use corpus::{corpus, fixture, Fixture};
pub use report::{Check, Format, Report, Timing};
pub use suite::BATTERY_FORMS;

use crate::limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Field,
    Witt,
    GaussSum,
    GaussVerify,
    CharSum,
    HasseDavenport,
    Kernel,
    ClbNormalize,
    Heisenberg,
    CountPoints,
    Zeta,
    Supersingular,
    Endw2Verify,
    Invariance,
    Suite,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Field => "field",
            CommandName::Witt => "witt",
            CommandName::GaussSum => "gauss-sum",
            CommandName::GaussVerify => "gauss-verify",
            CommandName::CharSum => "char-sum",
            CommandName::HasseDavenport => "hasse-davenport",
            CommandName::Kernel => "kernel",
            CommandName::ClbNormalize => "clb-normalize",
            CommandName::Heisenberg => "heisenberg",
            CommandName::CountPoints => "count-points",
            CommandName::Zeta => "zeta",
            CommandName::Supersingular => "supersingular",
            CommandName::Endw2Verify => "endw2-verify",
            CommandName::Invariance => "invariance",
            CommandName::Suite => "suite",
        }
    }
}

#[derive(clap::Parser, Debug)]
#[command(name = "gausslab", version, about = "Exact Gauss sums, character sums, Heisenberg groups and supersingular varieties")]
pub struct Cli {
    pub command: CommandName,
    /// Job input, JSON or (by extension) TOML.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Extension degree or level bound, command dependent.
    #[arg(long)]
    pub ext: Option<u32>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Lift the scale caps.
    #[arg(long)]
    pub cap_override: bool,
}

/// Options that can change a report; the worker count cannot and is not recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JobOptions {
    pub ext: Option<u32>,
    pub seed: u64,
    pub cap_override: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobDescriptor {
    pub command: CommandName,
    /// The input document; `suite` takes none.
    pub input: Option<String>,
    pub toml: bool,
    pub options: JobOptions,
}

impl JobDescriptor {
    pub fn from_fixture(f: &Fixture, seed: u64) -> Self {
        JobDescriptor {
            command: f.command,
            input: Some(f.input.to_string()),
            toml: false,
            options: JobOptions { ext: f.ext, seed, cap_override: false },
        }
    }
}

pub(crate) struct Input<'a> {
    pub text: &'a str,
    pub toml: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub(crate) fn classify(msg: String) -> Self {
        if msg.contains("cap exceeded") || msg.contains("exceeds the cap") {
            CliError::Cap(msg)
        } else {
            CliError::Invalid(msg)
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

pub fn dispatch(job: &JobDescriptor) -> Result<Report, CliError> {
    let start = Instant::now();
    let o = &job.options;
    let (result, checks) = if job.command == CommandName::Suite {
        suite::suite(o)?
    } else {
        let text = job.input.as_deref().ok_or_else(|| CliError::Invalid("--input is required".into()))?;
        let input = Input { text, toml: job.toml };
        let run = match job.command {
            CommandName::Field => commands::field,
            CommandName::Witt => commands::witt,
            CommandName::GaussSum => commands::gauss_sum_cmd,
            CommandName::GaussVerify => commands::gauss_verify,
            CommandName::CharSum => commands::char_sum_cmd,
            CommandName::HasseDavenport => commands::hasse_davenport,
            CommandName::Kernel => commands::kernel,
            CommandName::ClbNormalize => commands::clb_normalize,
            CommandName::Heisenberg => commands::heisenberg,
            CommandName::CountPoints => commands::count_points_cmd,
            CommandName::Zeta => commands::zeta,
            CommandName::Supersingular => commands::supersingular,
            CommandName::Endw2Verify => commands::endw2_verify,
            CommandName::Invariance => commands::invariance,
            CommandName::Suite => unreachable!(),
        };
        run(&input, o)?
    };
    Ok(Report {
        command: job.command.as_str().to_string(),
        options: json!(o),
        result,
        checks,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64 },
    })
}

/// Runs `job` on a pool of `workers` threads (0 for the default).
pub fn dispatch_with_workers(job: &JobDescriptor, workers: usize) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot start workers: {e}")))?;
    pool.install(|| dispatch(job))
}

/// The whole command: caps, input, dispatch, output. Returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match std::env::var("GAUSSLAB_CAP") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(cap) => limits::set_scale_cap(Some(cap)),
            Err(_) => {
                eprintln!("error: GAUSSLAB_CAP={v:?} is not an integer");
                return 2;
            }
        },
        Err(_) => limits::set_scale_cap(Some(limits::DEFAULT_SCALE_CAP)),
    }
    if cli.cap_override {
        limits::set_scale_cap(None);
    }
    let input = match &cli.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 2;
            }
        },
        None => None,
    };
    let toml = cli.input.as_ref().and_then(|p| p.extension()).is_some_and(|e| e == "toml");
    let job = JobDescriptor {
        command: cli.command,
        input,
        toml,
        options: JobOptions { ext: cli.ext, seed: cli.seed, cap_override: cli.cap_override },
    };
    match dispatch_with_workers(&job, cli.workers.unwrap_or(0)) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("check failed: {}{}", c.name, c.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default());
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(cmd: CommandName, text: &str) -> JobDescriptor {
        JobDescriptor { command: cmd, input: Some(text.into()), toml: false, options: JobOptions::default() }
    }

    #[test]
    fn every_fixture_passes() {
        for f in corpus() {
            let rep = dispatch(&JobDescriptor::from_fixture(&f, 0)).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{}: {failed:?}", f.name);
        }
    }

    #[test]
    fn malformed_json_is_exit_two_with_position() {
        let e = dispatch(&job(CommandName::GaussSum, "{\"invariant_factors\": [2],\n oops}")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = dispatch(&job(CommandName::Field, r#"{"p": 2, "colour": 1}"#)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn cap_is_exit_three() {
        let e = dispatch(&job(CommandName::Field, r#"{"p": 2, "m": 30}"#)).unwrap_err();
        assert_eq!(e.exit_code(), 3, "{e}");
    }

    #[test]
    fn zeta_report_shape() {
        let rep = dispatch(&JobDescriptor::from_fixture(&fixture("vdgv_f2").unwrap(), 0)).unwrap();
        assert_eq!(rep.result["counts"], json!(["2", "8"]));
        assert_eq!(rep.result["power_sums"], json!(["0", "-4"]));
        assert_eq!(rep.result["l_poly"], json!(["2", "0", "1"]));
        assert_eq!(rep.result["certificate"]["m"], 2);
    }

    #[test]
    fn mathematical_failure_is_a_failed_check() {
        // x^5 over F_4 is not preserved by scaling with ω.
        let text = r#"{"datum": {"field": {"p": 2, "m": 2}, "d": 1, "terms": [{"kind": "diag", "j": 0, "i": 2, "a": 1}]},
                       "generators": [[[[0, 1]]]]}"#;
        let rep = dispatch(&job(CommandName::Invariance, text)).unwrap();
        assert!(!rep.passed());
        assert!(rep.checks[0].witness.is_some());
    }
}
