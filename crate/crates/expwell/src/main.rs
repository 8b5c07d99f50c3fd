use clap::Parser;
use expwell::cli::Cli;
use expwell::report::{render_csv, render_table, Format, RunReport};
use expwell::{commands, CliError};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let inputs = {
        let mut v = serde_json::to_value(&cli.command).unwrap_or_default();
        v["format"] = json!(cli.format);
        v
    };
    let start = Instant::now();
    let result = commands::run(&cli.command);
    let wall_time_ms = start.elapsed().as_millis() as u64;

    let mut out = std::io::stdout().lock();
    match result {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Table => render_table(&outcome.tables),
                Format::Csv => render_csv(&outcome.tables),
                Format::Json => {
                    let report = RunReport::new(name, inputs, outcome.results, wall_time_ms);
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            };
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            if let Some(m) = outcome.message {
                eprintln!("{name}: {m}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => fail(name, cli.format, inputs, wall_time_ms, &e),
    }
}

fn fail(
    name: &str,
    format: Format,
    inputs: serde_json::Value,
    wall_time_ms: u64,
    e: &CliError,
) -> ExitCode {
    let code = e.exit_code();
    if format == Format::Json {
        let results = json!({ "error": { "code": code, "message": e.to_string() } });
        let report = RunReport::new(name, inputs, results, wall_time_ms);
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    eprintln!("{name}: error: {e}");
    ExitCode::from(code as u8)
}
