mod args;
mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use dpcover::{Error, Limits};
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::{num, Report};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::Overflow(_) => 3,
        Error::ResourceLimit(_) => 4,
        Error::Internal(_) => 1,
    }
}

fn params(command: &Command) -> Value {
    let value = match command {
        Command::VerifyThm3(a) => serde_json::to_value(a),
        Command::Search(a) => serde_json::to_value(a),
        Command::Count(a) => serde_json::to_value(a),
        Command::Signed(a) => serde_json::to_value(a),
        Command::Bounds(a) => serde_json::to_value(a),
        Command::Construct(a) => serde_json::to_value(a),
    };
    value.expect("arguments serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(limit) = cli.subset_limit {
        limits = limits.with_subset_limit(limit);
    }

    let start = Instant::now();
    let result: dpcover::Result<Report> = match &cli.command {
        Command::VerifyThm3(a) => commands::verify(a, &limits, cli.format),
        Command::Search(a) => commands::search(a, &limits),
        Command::Count(a) => commands::count(a, &limits),
        Command::Signed(a) => commands::signed(a, &limits),
        Command::Bounds(a) => commands::bounds(a, &limits),
        Command::Construct(a) => commands::construct(a),
    };
    let elapsed_ms = start.elapsed().as_millis();

    let mut outcome = json!({
        "command": cli.command.name(),
        "params": params(&cli.command),
        "payload": Value::Null,
        "elapsed_ms": num(elapsed_ms),
        "status": "ok",
    });
    let code = match &result {
        Ok(report) => {
            outcome["payload"] = report.payload.clone();
            match &report.failure {
                Some(why) => {
                    outcome["status"] = json!("failed");
                    outcome["error"] = json!({"code": "check-failed", "message": why});
                    eprintln!("check failed: {why}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            outcome["status"] = json!("failed");
            outcome["error"] = json!({"code": e.code(), "message": e.to_string()});
            eprintln!("error: {e}");
            exit_code(e)
        }
    };

    match (cli.format, &result) {
        (Format::Json, _) => {
            println!("{}", serde_json::to_string_pretty(&outcome).expect("outcome serializes"));
        }
        (Format::Table, Ok(report)) => print!("{}", report.table),
        (Format::Csv, Ok(report)) => print!("{}", report.csv),
        (_, Err(_)) => {}
    }
    ExitCode::from(code)
}
