//! Batch front end: one input file per invocation, one report on stdout.
//!
//! Exit codes: 0 on success, 1 when the analysis itself fails (a point
//! outside the orbit, a grid mismatch, a horizon that is too short, a
//! `check` that finds a disagreement), 2 for usage and parse errors.

use std::path::{Path, PathBuf};

use binsig::oracle::agree;
use binsig::periodicity::characterization_report;
use binsig::{bridge, flowgen, perturb, report, text, Error, Point, Rat, Signal};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "binsig", version, about = "Periodicity analysis of binary signals")]
struct Cli {
    /// Report encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full signal analysis with one block per orbit point.
    Analyze { file: PathBuf },
    /// Analysis of a single point.
    Point {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Embed a discrete signal on the grid t0 + k*h.
    Embed {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        #[arg(long)]
        h: String,
    },
    /// Sample a real signal at the grid times t0 + k*h.
    Sample {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        #[arg(long)]
        h: String,
        /// Sample even when changes fall between grid times.
        #[arg(long)]
        no_phase_check: bool,
    },
    /// Apply an edit script; the argument is a script file or inline script text.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        script: String,
    },
    /// Generate the flow of a flow file.
    Flow {
        file: PathBuf,
        #[arg(long)]
        analyze: bool,
    },
    /// Characterization groups and brute-force agreement at bounded candidates.
    Check {
        file: PathBuf,
        #[arg(long = "p-bound", default_value_t = 12)]
        p_bound: u64,
        /// Comma-separated real-time candidate periods.
        #[arg(long = "T", value_delimiter = ',')]
        t: Vec<String>,
        #[arg(long)]
        horizon: String,
    },
}

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: String) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Failure {
        Failure { code: 2, message }
    }

    /// Wraps a library error with the input it came from.
    fn from_lib(source: &str, e: Error) -> Failure {
        let code = if e.is_parse() { 2 } else { 1 };
        Failure {
            code,
            message: format!("{source}: {e}"),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: cannot read: {e}", path.display())))
}

fn load(path: &Path) -> Run<Signal> {
    text::parse_signal(&read(path)?).map_err(|e| Failure::from_lib(&path.display().to_string(), e))
}

fn arg<T: std::str::FromStr<Err = Error>>(flag: &str, value: &str) -> Run<T> {
    value.parse().map_err(|e| Failure::usage(format!("{flag} {value:?}: {e}")))
}

fn render(format: Format, text: String, json: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn signal_out(format: Format, sig: &Signal) -> String {
    render(format, text::format_signal(sig), report::signal_json(sig))
}

fn run(cli: Cli) -> Run<String> {
    let f = cli.format;
    match cli.command {
        Command::Analyze { file } => {
            let sig = load(&file)?;
            let a = sig.as_ref().analyze();
            Ok(render(
                f,
                report::analysis_text(sig.as_ref(), &a),
                report::analysis_json(sig.as_ref(), &a),
            ))
        }
        Command::Point { file, mu } => {
            let sig = load(&file)?;
            let mu: Point = arg("--mu", &mu)?;
            let src = file.display().to_string();
            let a = sig
                .as_ref()
                .analyze_point(mu)
                .map_err(|e| Failure::from_lib(&src, e))?;
            Ok(render(
                f,
                report::point_text(sig.as_ref(), &a),
                report::point_json(sig.as_ref(), &a),
            ))
        }
        Command::Embed { file, t0, h } => {
            let src = file.display().to_string();
            let Signal::Discrete(d) = load(&file)? else {
                return Err(Failure::usage(format!("{src}: embed needs a dsignal file")));
            };
            let (t0, h): (Rat, Rat) = (arg("--t0", &t0)?, arg("--h", &h)?);
            let y = bridge::embed(&d, t0, h).map_err(|e| Failure::from_lib(&src, e))?;
            Ok(signal_out(f, &Signal::Real(y)))
        }
        Command::Sample {
            file,
            t0,
            h,
            no_phase_check,
        } => {
            let src = file.display().to_string();
            let Signal::Real(r) = load(&file)? else {
                return Err(Failure::usage(format!("{src}: sample needs an rsignal file")));
            };
            let (t0, h): (Rat, Rat) = (arg("--t0", &t0)?, arg("--h", &h)?);
            let x = bridge::sample(&r, t0, h, !no_phase_check)
                .map_err(|e| Failure::from_lib(&src, e))?;
            Ok(signal_out(f, &Signal::Discrete(x)))
        }
        Command::Perturb { file, script } => {
            let sig = load(&file)?;
            let script_path = Path::new(&script);
            let (script_src, script_text) = if script_path.is_file() {
                (script_path.display().to_string(), read(script_path)?)
            } else {
                ("--script".to_string(), script)
            };
            let edits =
                perturb::parse_script(&script_text).map_err(|e| Failure::from_lib(&script_src, e))?;
            let out = match &sig {
                Signal::Discrete(d) => perturb::apply_script_d(d, &edits).map(Signal::Discrete),
                Signal::Real(r) => perturb::apply_script_r(r, &edits).map(Signal::Real),
            }
            .map_err(|e| Failure::from_lib(&script_src, e))?;
            Ok(signal_out(f, &out))
        }
        Command::Flow { file, analyze } => {
            let src = file.display().to_string();
            let spec = flowgen::parse_flow(&read(&file)?).map_err(|e| Failure::from_lib(&src, e))?;
            let x = spec.run().map_err(|e| Failure::from_lib(&src, e))?;
            let sig = Signal::Discrete(x);
            if !analyze {
                return Ok(signal_out(f, &sig));
            }
            let a = sig.as_ref().analyze();
            let summary = format!(
                "classification: {}, prime_period: {}",
                a.classification.as_str(),
                a.prime_period.map_or("none".to_string(), |p| p.to_string())
            );
            Ok(render(
                f,
                format!(
                    "{}\nsummary: {summary}\n\n{}",
                    text::format_signal(&sig),
                    report::analysis_text(sig.as_ref(), &a)
                ),
                json!({
                    "signal": report::signal_json(&sig),
                    "analysis": report::analysis_json(sig.as_ref(), &a),
                }),
            ))
        }
        Command::Check {
            file,
            p_bound,
            t,
            horizon,
        } => {
            let src = file.display().to_string();
            let sig = load(&file)?;
            let candidates = t
                .iter()
                .map(|v| arg::<Rat>("--T", v.trim()))
                .collect::<Run<Vec<Rat>>>()?;
            if matches!(sig, Signal::Real(_)) && candidates.is_empty() {
                return Err(Failure::usage(format!("{src}: real signals need --T candidates")));
            }
            let horizon: Rat = arg("--horizon", &horizon)?;
            let ch = characterization_report(sig.as_ref(), p_bound, &candidates, horizon)
                .map_err(|e| Failure::from_lib(&src, e))?;
            let ag = agree(sig.as_ref(), horizon, p_bound, &candidates)
                .map_err(|e| Failure::from_lib(&src, e))?;
            let out = render(
                f,
                format!(
                    "{}{}",
                    report::characterization_text(&ch),
                    report::agreement_text(&ag)
                ),
                json!({ "characterization": ch, "oracle": ag }),
            );
            if ch.all_agree() && ag.agrees() {
                Ok(out)
            } else {
                Err(Failure {
                    code: 1,
                    message: format!("{src}: check failed\n{out}"),
                })
            }
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match run(cli) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(Failure { code, message }) => Outcome::fail(code, message),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_subcommand_is_a_usage_error() {
        assert_eq!(execute(["binsig"]).code, 2);
        assert_eq!(execute(["binsig", "analyze"]).code, 2);
        assert_eq!(execute(["binsig", "--help"]).code, 0);
    }

    #[test]
    fn unreadable_file_names_the_path() {
        let out = execute(["binsig", "analyze", "/nonexistent/x.dsig"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("/nonexistent/x.dsig"));
    }
}
