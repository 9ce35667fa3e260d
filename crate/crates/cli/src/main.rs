use clap::Parser;
use std::process::ExitCode;
use zpf_cli::config::{resolve, Flags};

fn main() -> ExitCode {
    let flags = match Flags::try_parse() {
        Ok(f) => f,
        Err(e) => {
            // help and version land here too, with exit code 0
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = resolve(flags).and_then(|cfg| zpf_cli::run(&cfg));
    match result {
        Ok(report) => {
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            if report.criteria.is_empty() {
                for c in &report.checks {
                    eprintln!("[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.summary());
                }
            }
            eprintln!(
                "{}: {} in {:.2} s",
                report.command.as_str(),
                if report.passed { "pass" } else { "FAIL" },
                report.wall_time_s
            );
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("zpf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
