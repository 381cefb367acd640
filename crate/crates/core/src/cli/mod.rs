//! Fixture library, input documents, commands and reports behind the `hhsq` binary.

pub mod config;
pub mod fixtures;
pub mod report;
pub mod session;
pub mod verify;

use crate::error::Error;
use crate::steenrod::{ha_table, steenrod_table, HaClasses};
use config::{Command, Format, SessionConfig};
use session::{Session, SetupError};

pub const EXIT_OK: i32 = 0;
/// An invariant suite of `verify` failed.
pub const EXIT_SUITE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PIPELINE: i32 = 4;
pub const EXIT_GOLDEN: i32 = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        RunOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, e: &Error) -> Self {
        RunOutput {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Exit code of an error raised while building or validating inputs.
fn setup_code(e: &Error) -> i32 {
    match e {
        Error::ParseError(_) => EXIT_PARSE,
        Error::UnsupportedDifferential(_)
        | Error::UnsupportedPrime(..)
        | Error::TruncationExceeded { .. } => EXIT_PIPELINE,
        _ => EXIT_VALIDATION,
    }
}

fn render<T>(
    format: Format,
    value: &T,
    text: impl Fn(&T) -> String,
    json: impl Fn(&T) -> String,
) -> String {
    match format {
        Format::Table => text(value),
        Format::Json => json(value) + "\n",
    }
}

pub fn run(config: SessionConfig) -> RunOutput {
    let format = config.format;
    let Some(command) = config.command else {
        return RunOutput::fail(EXIT_PARSE, &Error::ParseError("no command given".into()));
    };
    if command == Command::Fixtures {
        return RunOutput::ok(fixture_list(format));
    }
    let session = match Session::new(config) {
        Ok(s) => s,
        Err(SetupError::Parse(e)) => return RunOutput::fail(EXIT_PARSE, &e),
        Err(SetupError::Invalid(e)) => return RunOutput::fail(setup_code(&e), &e),
    };
    match command {
        Command::Fixtures => unreachable!(),
        Command::Hh => match session.hh() {
            Ok(d) => RunOutput::ok(render(
                format,
                &d,
                |d| report::hh_text(d),
                |d| report::hh_json(d),
            )),
            Err(e) => RunOutput::fail(EXIT_PIPELINE, &e),
        },
        Command::Steenrod => {
            let (pipeline, classes) = match session.hh_pipeline() {
                Ok(p) => p,
                Err(e) => return RunOutput::fail(setup_code(&e), &e),
            };
            match steenrod_table(
                &pipeline,
                &classes,
                session.max_degree(),
                session.config.direct_bound(),
            ) {
                Ok(t) => {
                    let mut out = RunOutput::ok(render(
                        format,
                        &t,
                        report::steenrod_text,
                        report::steenrod_json,
                    ));
                    if let Some(m) = t.mismatches.first() {
                        out.code = EXIT_PIPELINE;
                        for m in std::iter::once(m).chain(t.mismatches.iter().skip(1)) {
                            out.stderr.push_str(&format!("error: {}\n", m.to_error()));
                        }
                    }
                    out
                }
                Err(e) => RunOutput::fail(EXIT_PIPELINE, &e),
            }
        }
        Command::SqHa => {
            let kappa = match session.structural_map(session.max_degree()) {
                Ok(k) => k,
                Err(e) => return RunOutput::fail(setup_code(&e), &e),
            };
            let tv = kappa.base().clone();
            match ha_table(
                &kappa,
                &HaClasses::new(tv, session.config.names.clone()),
                session.max_degree(),
            ) {
                Ok(t) => RunOutput::ok(render(
                    format,
                    &t,
                    report::steenrod_text,
                    report::steenrod_json,
                )),
                Err(e) => RunOutput::fail(EXIT_PIPELINE, &e),
            }
        }
        Command::Verify => {
            let v = verify::verify(
                &session,
                session.config.seed.unwrap_or(verify::DEFAULT_SEED),
            );
            let all = v.all();
            let stdout = render(
                format,
                &all,
                |r| report::suites_text(r),
                |r| report::suites_json(r),
            );
            let code = if !v.goldens_passed() {
                EXIT_GOLDEN
            } else if !v.suites_passed() {
                EXIT_SUITE
            } else {
                EXIT_OK
            };
            RunOutput {
                code,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn fixture_list(format: Format) -> String {
    match format {
        Format::Table => fixtures::FIXTURE_NAMES
            .iter()
            .map(|(n, d)| format!("{n:<18}{d}\n"))
            .collect(),
        Format::Json => {
            let v: Vec<serde_json::Value> = fixtures::FIXTURE_NAMES
                .iter()
                .map(|(n, d)| serde_json::json!({"name": n, "description": d}))
                .collect();
            serde_json::to_string_pretty(&v).expect("fixture list serializes") + "\n"
        }
    }
}
