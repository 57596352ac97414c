mod args;
mod commands;
mod expr;
mod model;
mod output;
mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use output::CommandResult;

/// Parses `argv` (program name first) and runs it.
pub fn invoke<I, T>(argv: I) -> Result<(CommandResult, bool), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok((commands::run(&cli.command, &cli.global), cli.global.json))
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let (result, json) = match invoke(argv) {
        Ok(r) => r,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            let _ = e.print();
            let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            return ExitCode::from(code);
        }
        Err(e) => {
            if !wants_json {
                let _ = e.print();
                return ExitCode::from(2);
            }
            (CommandResult::error("usage", e.render().to_string().trim_end()), true)
        }
    };
    let text =
        if json { serde_json::to_string_pretty(&result.to_json()).expect("JSON values serialize") + "\n" } else { result.render_table() };
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(result.status.exit_code() as u8)
}
