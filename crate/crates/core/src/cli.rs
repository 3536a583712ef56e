//! Command-line driver.
//!
//! Exit codes: 0 when every check passes, 1 when at least one fails,
//! 2 for parse and usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, CommandFactory, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde::Serialize;

use crate::catalog::builtin;
use crate::equivalence::{internal_to_xmod, roundtrip_internal, roundtrip_xmod, xmod_to_internal};
use crate::report::CheckReport;
use crate::spec_io::{
    check_document, internal_document, parse_spec, resolve, serialize_spec, xmod_document, DeclKind, SpecDocument,
    TargetReport,
};
use crate::suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "catgrp", version, about = "Check finite groups, crossed modules and internal categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every applicable check on every declaration.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the corresponding structure and print it as a document.
    Construct {
        #[arg(value_enum)]
        direction: Direction,
        file: PathBuf,
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Go there and back again and verify the canonical isomorphism.
    Roundtrip {
        file: PathBuf,
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a builtin group as a document.
    Builtin { kind: String, k: Option<usize> },
    /// Print a document in canonical form.
    Fmt { file: PathBuf },
    /// Run the acceptance suite.
    Suite,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    XmodToInternal,
    InternalToXmod,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: u32,
    results: &'a [TargetReport],
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let text = e.render().to_string();
                    let _ = write!(err, "{text}");
                    if !text.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                    }
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Check { file, json } => with_file(&file, err, |text, origin, err| check_source(text, origin, json, out, err)),
        Command::Construct { direction, file, name, output } => with_file(&file, err, |text, origin, err| {
            construct_source(text, origin, direction, &name, output.as_deref(), out, err)
        }),
        Command::Roundtrip { file, name, json } => {
            with_file(&file, err, |text, origin, err| roundtrip_source(text, origin, &name, json, out, err))
        }
        Command::Fmt { file } => with_file(&file, err, |text, origin, err| match parse_or_report(text, origin, err) {
            Some(doc) => {
                let _ = write!(out, "{}", serialize_spec(&doc));
                EXIT_OK
            }
            None => EXIT_USAGE,
        }),
        Command::Builtin { kind, k } => match builtin(&kind, k) {
            Ok(g) => {
                let mut doc = SpecDocument::default();
                doc.push(g.name(), DeclKind::Group { rows: g.rows() });
                let _ = write!(out, "{}", serialize_spec(&doc));
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Command::Suite => {
            let outcomes = suite::run_all();
            for o in &outcomes {
                let _ = writeln!(out, "{o}");
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(out, "{passed}/{} criteria passed", outcomes.len());
            if passed == outcomes.len() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn with_file(path: &Path, err: &mut dyn Write, f: impl FnOnce(&str, &str, &mut dyn Write) -> i32) -> i32 {
    match std::fs::read_to_string(path) {
        Ok(text) => f(&text, &path.display().to_string(), err),
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            EXIT_USAGE
        }
    }
}

fn parse_or_report(text: &str, origin: &str, err: &mut dyn Write) -> Option<SpecDocument> {
    match parse_spec(text) {
        Ok(doc) => Some(doc),
        Err(diags) => {
            for d in diags {
                let _ = writeln!(err, "{origin}:{d}");
            }
            None
        }
    }
}

fn emit(results: &[TargetReport], json: bool, out: &mut dyn Write) -> i32 {
    if json {
        let report = JsonReport { version: 1, results };
        let text = serde_json::to_string(&report).expect("reports serialize");
        let _ = writeln!(out, "{text}");
    } else {
        for r in results {
            let _ = writeln!(out, "{}: {}", r.target, r.report);
        }
    }
    if results.iter().all(|r| r.report.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// `check` on document text; `origin` prefixes diagnostics.
pub fn check_source(text: &str, origin: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(doc) = parse_or_report(text, origin, err) else {
        return EXIT_USAGE;
    };
    emit(&check_document(&doc), json, out)
}

fn declaration_kind<'a>(doc: &'a SpecDocument, name: &str, err: &mut dyn Write) -> Option<&'a DeclKind> {
    let found = doc.get(name).map(|d| &d.kind);
    if found.is_none() {
        let _ = writeln!(err, "error: no declaration named `{name}`");
    }
    found
}

/// `roundtrip` on document text, for an `xmod` or `internalcat` declaration.
pub fn roundtrip_source(text: &str, origin: &str, name: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(doc) = parse_or_report(text, origin, err) else {
        return EXIT_USAGE;
    };
    let Some(kind) = declaration_kind(&doc, name, err) else {
        return EXIT_USAGE;
    };
    let ws = resolve(&doc);
    let mut maps = Vec::new();
    let report = match kind {
        DeclKind::Xmod { .. } => {
            let outcome = ws.xmod(name).and_then(|xm| roundtrip_xmod(xm).map_err(|e| e.to_string()));
            match outcome {
                Ok((iso, report)) => {
                    maps.push(("alpha", iso.alpha.map().iter().join(" ")));
                    maps.push(("beta", iso.beta.map().iter().join(" ")));
                    report_with_fallback(report, iso.fallback_used)
                }
                Err(e) => failed("roundtrip_xmod", e),
            }
        }
        DeclKind::InternalCat { .. } => {
            let outcome = ws
                .internal_category(name)
                .and_then(|ic| roundtrip_internal(ic).map_err(|e| e.to_string()));
            match outcome {
                Ok((iso, report)) => {
                    maps.push(("arrows", iso.arrow_iso.map().iter().join(" ")));
                    maps.push(("objects", iso.object_iso.map().iter().join(" ")));
                    report_with_fallback(report, iso.fallback_used)
                }
                Err(e) => failed("roundtrip_internal", e),
            }
        }
        other => {
            let _ = writeln!(err, "error: `{name}` is a {}, expected an xmod or internalcat", other.keyword());
            return EXIT_USAGE;
        }
    };
    let results = [TargetReport { target: name.to_string(), report }];
    let code = emit(&results, json, out);
    if !json {
        for (label, map) in maps {
            let _ = writeln!(out, "  {label}: {map}");
        }
    }
    code
}

fn report_with_fallback(report: CheckReport, fallback_used: bool) -> CheckReport {
    if fallback_used && report.passed {
        // A fallback hit means the canonical map was wrong: never a pass.
        CheckReport::fail(report.check, vec![], "canonical isomorphism failed; fallback search was used")
    } else {
        report
    }
}

fn failed(check: &str, why: String) -> CheckReport {
    CheckReport {
        check: check.into(),
        passed: false,
        witness: None,
        detail: why,
    }
}

fn construct_source(
    text: &str,
    origin: &str,
    direction: Direction,
    name: &str,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(doc) = parse_or_report(text, origin, err) else {
        return EXIT_USAGE;
    };
    let Some(kind) = declaration_kind(&doc, name, err) else {
        return EXIT_USAGE;
    };
    let ws = resolve(&doc);
    let built = match (direction, kind) {
        (Direction::XmodToInternal, DeclKind::Xmod { .. }) => ws
            .xmod(name)
            .and_then(|xm| xmod_to_internal(xm).map_err(|e| e.to_string()))
            .map(|ic| internal_document(name, &ic)),
        (Direction::InternalToXmod, DeclKind::InternalCat { .. }) => ws
            .internal_category(name)
            .and_then(|ic| internal_to_xmod(ic).map_err(|e| e.to_string()))
            .map(|xm| xmod_document(name, &xm)),
        (d, other) => {
            let want = match d {
                Direction::XmodToInternal => "xmod",
                Direction::InternalToXmod => "internalcat",
            };
            let _ = writeln!(err, "error: `{name}` is a {}, expected an {want}", other.keyword());
            return EXIT_USAGE;
        }
    };
    let doc = match built {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: cannot construct from `{name}`: {e}");
            return EXIT_FAILED;
        }
    };
    let text = serialize_spec(&doc);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    EXIT_OK
}
