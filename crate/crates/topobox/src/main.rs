use std::process::ExitCode;

fn main() -> ExitCode {
    match topobox::cli::run(std::env::args_os()) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
