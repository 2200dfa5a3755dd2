//! Library side of the `solvops` command-line tool: argument grammar, the
//! output row schema and the subcommands themselves.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;

use args::{Command, Format, OutputArgs};
use commands::Report;
use error::CliError;
use std::io::Write;

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Eval(a) => &a.out,
        Command::Kernel(a) => &a.out,
        Command::Spectrum(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Transmute(a) => &a.out,
        Command::Scan(a) => &a.out,
    }
}

/// Render a report in the requested format; tables default to CSV, records
/// to JSON.
pub fn render(report: &Report, format: Option<Format>) -> Result<Vec<u8>, CliError> {
    let format = format.unwrap_or(if report.rows.is_some() { Format::Csv } else { Format::Json });
    let mut buf = Vec::new();
    match format {
        Format::Csv => {
            let rows = report
                .rows
                .as_ref()
                .ok_or_else(|| CliError::Validation("this command emits JSON only".into()))?;
            table::write_csv(rows, &mut buf)?;
        }
        Format::Json => {
            match &report.record {
                Some(r) => buf.extend_from_slice(r.as_bytes()),
                None => serde_json::to_writer_pretty(&mut buf, report.rows.as_deref().unwrap_or(&[]))?,
            }
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

/// Run one command and write its output. Returns whether every check passed.
pub fn execute(command: &Command) -> Result<bool, CliError> {
    let out = output_args(command);
    let report = commands::run(command)?;
    let bytes = render(&report, out.format)?;
    match &out.output {
        Some(path) => std::fs::write(path, &bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    Ok(report.passed)
}
